"""Phase-polynomial summaries of Clifford+T circuits.

Folding a circuit gate by gate yields the triple (terms, wire states,
Hadamard events). Wire ``i`` of an ``n``-wire circuit owns variable bit
``i``; the ``j``-th Hadamard introduces path variable bit ``n + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gf2 import XorFunction
from .ir import CNOT, H, PHASE_POWER, TOFFOLI, X, Y, Circuit

TermSet = dict  # normalized mask -> coefficient in 1..7, insertion ordered


@dataclass(frozen=True)
class PhaseTerm:
    """``omega ** (coeff * func(x))`` with ``func`` parity-normalized."""

    coeff: int
    func: XorFunction

    @property
    def mask(self) -> int:
        return self.func.mask

    @property
    def is_odd(self) -> bool:
        return self.coeff % 2 == 1


@dataclass(frozen=True)
class HadamardEvent:
    target: int
    path_var: int
    q_in: tuple[XorFunction, ...]
    q_out: tuple[XorFunction, ...]


@dataclass
class CircuitSummary:
    n: int
    m: int
    terms: TermSet = field(default_factory=dict)
    q: list[XorFunction] = field(default_factory=list)
    events: list[HadamardEvent] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.events)

    def phase_terms(self) -> list[PhaseTerm]:
        return [PhaseTerm(c, XorFunction(f)) for f, c in self.terms.items()]

    def odd_count(self) -> int:
        return sum(1 for c in self.terms.values() if c % 2)


def initial_state(circuit: Circuit) -> list[XorFunction]:
    data = set(circuit.input_indices)
    return [XorFunction.var(i) if i in data else XorFunction() for i in range(circuit.n)]


def merge_term(terms: TermSet, coeff: int, func: XorFunction) -> TermSet:
    """Add ``coeff * func`` to ``terms`` in place, mod 8.

    A term on ``1 XOR f`` is stored as ``-coeff`` on ``f``; the constant
    part is a global phase and is dropped, as are constant functions.
    """
    if func.mask == 0:
        return terms
    if func.parity:
        coeff = -coeff
    c = (terms.get(func.mask, 0) + coeff) % 8
    if c:
        terms[func.mask] = c
    else:
        terms.pop(func.mask, None)
    return terms


def summarize(circuit: Circuit) -> CircuitSummary:
    q = initial_state(circuit)
    terms: TermSet = {}
    events: list[HadamardEvent] = []
    n = circuit.n
    for g in circuit.gates:
        kind = g.kind
        if kind in PHASE_POWER:
            merge_term(terms, PHASE_POWER[kind], q[g.wires[0]])
        elif kind == X:
            w = g.wires[0]
            q[w] = q[w].flip()
        elif kind == Y:
            w = g.wires[0]
            merge_term(terms, 4, q[w])
            q[w] = q[w].flip()
        elif kind == CNOT:
            c, t = g.wires
            q[t] = q[t] ^ q[c]
        elif kind == H:
            w = g.wires[0]
            var = n + len(events)
            q_in = tuple(q)
            q[w] = XorFunction.var(var)
            events.append(HadamardEvent(w, var, q_in, tuple(q)))
        elif kind == TOFFOLI:
            raise ValueError("summarize needs an expanded circuit (Toffoli found)")
        else:  # pragma: no cover - Gate validates kinds
            raise ValueError(f"unsupported gate {kind}")
    return CircuitSummary(n, circuit.num_inputs, terms, q, events)


def phase_exponent(terms: TermSet, x: int) -> int:
    """Value of the phase polynomial at assignment ``x`` (bitset), mod 8."""
    total = 0
    for mask, c in terms.items():
        if bin(mask & x).count("1") & 1:
            total += c
    return total % 8


def simulate_cnot_t(circuit: Circuit, bits: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Classically run a Hadamard-free circuit on a basis state.

    Returns the exponent of omega picked up (global phases of Y included)
    and the output basis state. Toffolis act as reversible permutations.
    """
    state = list(bits)
    if len(state) != circuit.n:
        raise ValueError(f"expected {circuit.n} input bits, got {len(state)}")
    phase = 0
    for g in circuit.gates:
        kind, w = g.kind, g.wires
        if kind in PHASE_POWER:
            phase += PHASE_POWER[kind] * state[w[0]]
        elif kind == X:
            state[w[0]] ^= 1
        elif kind == Y:
            # Y|b> = i (-1)^b |1-b>
            phase += 2 + 4 * state[w[0]]
            state[w[0]] ^= 1
        elif kind == CNOT:
            state[w[1]] ^= state[w[0]]
        elif kind == TOFFOLI:
            state[w[2]] ^= state[w[0]] & state[w[1]]
        else:
            raise ValueError("simulate_cnot_t cannot run Hadamard gates")
    return phase % 8, tuple(state)


def evaluate_state(q: Iterable[XorFunction], x: int) -> tuple[int, ...]:
    return tuple(f(x) for f in q)
