"""The T-parallelization driver.

The input circuit is expanded to Clifford+T, summarized, and rebuilt one
Hadamard segment at a time. Phase terms enter a matroid partition as soon as
their function becomes computable and are synthesized (one T layer per
block) only when the next Hadamard would destroy one of their functions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from . import gf2
from .gf2 import XorFunction
from .ir import H, Circuit, Gate, Metrics, expand, gate, metrics, remove_identities
from .matroid import (
    Oracle, Partition, is_independent, partition_add, partition_all, repair_on_dim_increase,
)
from .phasepoly import CircuitSummary, PhaseTerm, initial_state, summarize
from .synth import extend_to_basis, linear_stage, phase_stage

log = logging.getLogger(__name__)

FIXED = "fixed"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class AncillaPolicy:
    """How many clean ancilla wires the optimizer may add."""

    kind: str = FIXED
    count: int = 0

    def __post_init__(self):
        if self.kind not in (FIXED, UNBOUNDED):
            raise ValueError(f"unknown ancilla policy {self.kind!r}")
        if self.count < 0:
            raise ValueError("ancilla count must be non-negative")

    @classmethod
    def fixed(cls, count: int) -> "AncillaPolicy":
        return cls(FIXED, count)

    @classmethod
    def unbounded(cls) -> "AncillaPolicy":
        return cls(UNBOUNDED)

    @classmethod
    def parse(cls, text: str, n: int) -> "AncillaPolicy":
        """``"unbounded"``, ``"n"`` (as many as the circuit has wires) or an integer."""
        text = text.strip()
        if text == "unbounded":
            return cls.unbounded()
        if text == "n":
            return cls.fixed(n)
        try:
            return cls.fixed(int(text))
        except ValueError:
            raise ValueError(f"bad ancilla policy {text!r}; expected an integer, 'n' or 'unbounded'") from None

    def __str__(self) -> str:
        return UNBOUNDED if self.kind == UNBOUNDED else str(self.count)


def plan_ancillae(summary: CircuitSummary, policy: AncillaPolicy) -> Optional[int]:
    """Wire count handed to the independence oracle; ``None`` when unbounded.

    Under an unbounded policy wires are added on demand during synthesis, so
    the oracle accepts every block.
    """
    if policy.kind == UNBOUNDED:
        return None
    return summary.n + policy.count


@dataclass
class OptimizeResult:
    circuit: Circuit
    before: Metrics
    after: Metrics
    reduced: Circuit
    summary: CircuitSummary
    blocks: int = 0


class _Builder:
    """Accumulates output gates while tracking every wire's state."""

    def __init__(self, start: Sequence[XorFunction], width: Optional[int]):
        self.gates: list[Gate] = []
        self.width = width
        self.current = list(start) + [XorFunction()] * ((width or 0) - len(start))

    def pad(self, states: Sequence[XorFunction]) -> list[XorFunction]:
        return list(states) + [XorFunction()] * (len(self.current) - len(states))

    def reserve(self, block: Sequence[PhaseTerm]) -> None:
        """Grow the register so ``block`` fits (unbounded policy only)."""
        need = len(block) + gf2.rank(self.current) - gf2.rank(t.func for t in block)
        if need > len(self.current):
            if self.width is not None:
                raise RuntimeError(f"block needs {need} wires but only {self.width} exist")
            self.current.extend([XorFunction()] * (need - len(self.current)))

    def phases(self, block: Sequence[PhaseTerm]) -> None:
        """Place the block's functions on wires and apply its phases.

        The wires are left in the placement; the next linear stage starts
        from there rather than first restoring the previous states.
        """
        self.reserve(block)
        placement = extend_to_basis(block, self.current)
        self.gates += linear_stage(self.current, placement)
        self.gates += phase_stage(block, placement)
        self.current = placement

    def move_to(self, states: Sequence[XorFunction]) -> None:
        target = self.pad(states)
        self.gates += linear_stage(self.current, target)
        self.current = target


def _computable(pending: list[PhaseTerm], span: gf2.SpanBasis) -> tuple[list, list]:
    now, later = [], []
    for t in pending:
        (now if t.func in span else later).append(t)
    return now, later


def _plan_flush(part: Partition, span_out: gf2.SpanBasis, oracle: Oracle) -> list[list]:
    """Split ``part`` into blocks to synthesize now and blocks to carry on.

    Terms outside ``span_out`` are partitioned on their own, so they occupy
    as few blocks (T layers) as possible. Surviving terms then ride along
    in those blocks wherever they fit; the rest are re-partitioned and kept.
    """
    doomed, survivors = [], []
    for t in part.elements():
        (survivors if t.func in span_out else doomed).append(t)
    if not doomed:
        return []
    flush = partition_all(doomed, oracle).blocks
    rest = []
    for t in survivors:
        for block in flush:
            if is_independent(block + [t], oracle):
                block.append(t)
                break
        else:
            rest.append(t)
    part.blocks = partition_all(rest, oracle).blocks
    return flush


def _route(term: PhaseTerm, partitions: list[Partition]) -> Partition:
    return partitions[0] if len(partitions) == 1 or term.is_odd else partitions[1]


def optimize(
    circuit: Circuit,
    policy: AncillaPolicy = AncillaPolicy(),
    split_even: bool = False,
    plan_flushes: bool = True,
) -> OptimizeResult:
    """Re-synthesize ``circuit`` with its T gates parallelized.

    Args:
        circuit: Input over X, Y, Z, H, P, P*, T, T*, CNOT and Toffoli.
        policy: Ancilla budget.
        split_even: Partition odd- and even-coefficient terms separately, so
            Clifford phases never occupy room in T-carrying blocks.
        plan_flushes: Before each Hadamard, regroup the partition so the
            terms it destroys fill as few blocks as possible. When False,
            every block holding such a term is synthesized as it stands.

    Returns:
        The optimized circuit, metrics before and after, the Clifford+T form
        that was summarized and the summary itself.
    """
    before = metrics(circuit)
    reduced = remove_identities(expand(circuit))
    summary = summarize(reduced)
    width = plan_ancillae(summary, policy)
    out = _Builder(initial_state(reduced), width)
    partitions = [Partition(), Partition()] if split_even else [Partition()]
    pending = summary.phase_terms()
    blocks = 0

    def oracle(rank: int) -> Oracle:
        return Oracle(rank, width)

    def absorb(span: gf2.SpanBasis) -> None:
        nonlocal pending
        now, pending = _computable(pending, span)
        o = oracle(span.rank)
        for t in now:
            partition_add(t, _route(t, partitions), o)

    for ev in summary.events:
        span_in = gf2.SpanBasis(ev.q_in)
        span_out = gf2.SpanBasis(ev.q_out)
        absorb(span_in)
        for part in partitions:
            if plan_flushes:
                flush = _plan_flush(part, span_out, oracle(span_in.rank))
            else:
                flush = [b for b in part.blocks if any(t.func not in span_out for t in b)]
                part.blocks = [b for b in part.blocks if all(t.func in span_out for t in b)]
            for block in flush:
                out.phases(block)
                blocks += 1
        out.move_to(ev.q_in)
        out.gates.append(gate(H, ev.target))
        out.current[ev.target] = XorFunction.var(ev.path_var)
        if span_out.rank > span_in.rank:
            for part in partitions:
                _, evicted = repair_on_dim_increase(part, oracle(span_out.rank))
                pending = evicted + pending

    absorb(gf2.SpanBasis(summary.q))
    if pending:
        raise RuntimeError(f"{len(pending)} phase terms never became computable")
    for part in partitions:
        for block in part.blocks:
            out.phases(block)
            blocks += 1
    out.move_to(summary.q)

    result = reduced.with_wires(len(out.current))
    result.gates = out.gates
    log.debug("optimized %d gates into %d blocks on %d wires", len(reduced.gates), blocks, result.n)
    return OptimizeResult(result, before, metrics(result), reduced, summary, blocks)
