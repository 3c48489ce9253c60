"""Synthesis of one computable block of phase terms.

A block becomes three stages: a {CNOT, X} stage that brings every term of
the block onto its own wire, one layer of diagonal phase gates, and a
{CNOT, X} stage to the requested output states, optionally followed by a
Hadamard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import gf2
from .gf2 import ADD, XorFunction
from .ir import CNOT, H, P, PDG, T, TDG, X, Z, Gate, gate
from .phasepoly import PhaseTerm

_PHASE_GATES = {
    1: (T,), 2: (P,), 3: (P, T), 4: (Z,), 5: (Z, T), 6: (PDG,), 7: (TDG,),
}


class SynthesisError(ValueError):
    pass


def extend_to_basis(block: Sequence[PhaseTerm], q_in: Sequence[XorFunction]) -> list[XorFunction]:
    """Choose a target state for every wire so the block's functions all sit
    on wires and the wire states still span ``span(q_in)``.

    Wires whose current function lies outside ``span(block)`` keep it (these
    complete the basis); terms take the remaining wires, preferring a wire
    already holding the same function; leftover wires are set to 0.
    """
    masks = [t.func.mask for t in block]
    source = gf2.SpanBasis(q_in)
    if any(m not in source for m in masks):
        raise SynthesisError("block contains a function outside the input span")
    span = gf2.SpanBasis(masks)
    needed = len(masks) + source.rank - span.rank
    if needed > len(q_in):
        raise SynthesisError(
            f"block of {len(masks)} terms (rank {span.rank}) needs {needed} wires, have {len(q_in)}"
        )
    target: list[Optional[XorFunction]] = [None] * len(q_in)
    for w, f in enumerate(q_in):
        if f.mask and span.add(f):
            target[w] = f
    free = [w for w in range(len(q_in)) if target[w] is None]
    pending = []
    for m in masks:
        w = next((w for w in free if q_in[w].mask == m), None)
        if w is None:
            pending.append(m)
        else:
            target[w] = XorFunction(m)
            free.remove(w)
    for m, w in zip(pending, free):
        target[w] = XorFunction(m)
    return [f if f is not None else XorFunction() for f in target]


def _ops_to_gates(ops) -> list[Gate]:
    return [gate(CNOT, op.source, op.target) if op.kind == ADD else gate(X, op.target) for op in ops]


def linear_stage(src: Sequence[XorFunction], dst: Sequence[XorFunction]) -> list[Gate]:
    """{CNOT, X} gates taking wire states ``src`` to ``dst``.

    Both lists are reduced to the same echelon form; the reduction of
    ``src`` runs forwards and that of ``dst`` backwards.
    """
    if len(src) != len(dst):
        raise SynthesisError("state lists differ in length")
    if list(src) == list(dst):
        return []
    b_src, ops_src = gf2.eliminate_with_ops(src)
    b_dst, ops_dst = gf2.eliminate_with_ops(dst)
    if b_src != b_dst:
        raise SynthesisError("target states do not span the same space as the source states")
    return _ops_to_gates(ops_src) + _ops_to_gates(reversed(ops_dst))


def phase_gates(coeff: int, wire: int) -> list[Gate]:
    """At most one T-type gate per coefficient: 3 = P.T, 5 = Z.T."""
    return [gate(kind, wire) for kind in _PHASE_GATES[coeff % 8]] if coeff % 8 else []


def phase_stage(block: Sequence[PhaseTerm], placement: Sequence[XorFunction]) -> list[Gate]:
    wire_of = {f.mask: w for w, f in enumerate(placement) if f.mask and f.parity == 0}
    out: list[Gate] = []
    for term in block:
        w = wire_of.get(term.func.mask)
        if w is None:
            raise SynthesisError(f"no wire holds {term.func}")
        out.extend(phase_gates(term.coeff, w))
    return out


@dataclass
class SynthesisRequest:
    """``q_out`` is the state required after the block and before the
    optional Hadamard on wire ``hadamard``; it defaults to ``q_in``."""

    block: Sequence[PhaseTerm]
    q_in: Sequence[XorFunction]
    q_out: Optional[Sequence[XorFunction]] = None
    hadamard: Optional[int] = None


def synthesize_block(req: SynthesisRequest) -> list[Gate]:
    q_out = req.q_in if req.q_out is None else req.q_out
    if req.block:
        placement = extend_to_basis(req.block, req.q_in)
        gates = linear_stage(req.q_in, placement)
        gates += phase_stage(req.block, placement)
        gates += linear_stage(placement, q_out)
    else:
        gates = linear_stage(req.q_in, q_out)
    if req.hadamard is not None:
        gates.append(gate(H, req.hadamard))
    return gates


def replay_states(states: Sequence[XorFunction], gates: Sequence[Gate]) -> list[XorFunction]:
    """Push wire states through {CNOT, X} gates; other gates leave them alone."""
    out = list(states)
    for g in gates:
        if g.kind == CNOT:
            c, t = g.wires
            out[t] = out[t] ^ out[c]
        elif g.kind == X:
            out[g.wires[0]] = out[g.wires[0]].flip()
        elif g.kind == H:
            raise SynthesisError("replay_states does not model Hadamard gates")
    return out
