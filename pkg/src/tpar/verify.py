"""Equivalence checks and a brute-force partition oracle."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence, Union

import numpy as np

from .gf2 import XorFunction
from .ir import (
    CNOT, H, PHASE_POWER, TOFFOLI, X, Y, Circuit, expand, remove_identities,
)
from .matroid import Oracle, is_independent
from .phasepoly import CircuitSummary, phase_exponent, summarize

EQUAL = "equal"
EQUAL_UP_TO_PHASE = "equal-up-to-global-phase"
DIFFERENT = "different"

TOLERANCE = 1e-9
_SEARCH_BITS = 16


@dataclass
class EquivalenceReport:
    """Outcome of an equivalence check.

    ``witness`` is a basis input (bit ``i`` = wire or variable ``i``) on
    which the two sides differ; it is set exactly when the verdict is
    ``different``.
    """

    verdict: str
    witness: Optional[int] = None
    max_amplitude_error: float = 0.0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict != DIFFERENT

    def __str__(self) -> str:
        return self.verdict


# --------------------------------------------------------- summary check


def _rename(f: XorFunction, n_a: int, shift: int) -> XorFunction:
    """Move path-variable bits (``>= n_a``) up by ``shift`` positions."""
    low = f.mask & ((1 << n_a) - 1)
    return XorFunction(low | (f.mask >> n_a << (n_a + shift)), f.parity)


def _state_witness(fa: XorFunction, fb: XorFunction) -> int:
    diff = fa ^ fb
    if diff.mask == 0 or diff.parity:
        return 0
    return diff.mask & -diff.mask


def _phase_witness(ta: dict, tb: dict) -> tuple[Optional[int], bool]:
    """Look for an input where the phase polynomials differ by more than a
    constant. Returns ``(witness, exhaustive)``."""
    support = 0
    for mask in set(ta) | set(tb):
        if ta.get(mask) != tb.get(mask):
            support |= mask
    bits = [i for i in range(support.bit_length()) if support >> i & 1]
    base = (phase_exponent(ta, 0) - phase_exponent(tb, 0)) % 8
    exhaustive = len(bits) <= _SEARCH_BITS
    if exhaustive:
        candidates = (sum(1 << b for b, on in zip(bits, pick) if on)
                      for pick in product((0, 1), repeat=len(bits)))
    else:
        rng = np.random.default_rng(0)
        candidates = (sum(1 << b for b in bits if rng.integers(2)) for _ in range(1 << _SEARCH_BITS))
    for x in candidates:
        if (phase_exponent(ta, x) - phase_exponent(tb, x)) % 8 != base:
            return x, exhaustive
    return None, exhaustive


def _compare(sa: CircuitSummary, sb: CircuitSummary) -> EquivalenceReport:
    if sa.n > sb.n:
        return EquivalenceReport(DIFFERENT, 0, note="second circuit has fewer wires")
    if sa.k != sb.k or any(ea.target != eb.target for ea, eb in zip(sa.events, sb.events)):
        return EquivalenceReport(DIFFERENT, 0, note="Hadamard skeletons differ")
    shift = sb.n - sa.n
    zero = XorFunction()

    def states(q: Sequence[XorFunction]) -> list[XorFunction]:
        return [_rename(f, sa.n, shift) for f in q] + [zero] * shift

    for i, (ea, eb) in enumerate(zip(sa.events, sb.events)):
        for label, qa, qb in (("input", ea.q_in, eb.q_in), ("output", ea.q_out, eb.q_out)):
            for fa, fb in zip(states(qa), qb):
                if fa != fb:
                    return EquivalenceReport(
                        DIFFERENT, _state_witness(fa, fb),
                        note=f"wire states differ at the {label} of Hadamard {i}",
                    )
    for w, (fa, fb) in enumerate(zip(states(sa.q), sb.q)):
        if fa != fb:
            return EquivalenceReport(DIFFERENT, _state_witness(fa, fb), note=f"final state of wire {w} differs")
    ta: dict = {}
    for mask, c in sa.terms.items():
        ta[_rename(XorFunction(mask), sa.n, shift).mask] = c
    if ta == sb.terms:
        return EquivalenceReport(EQUAL)
    witness, exhaustive = _phase_witness(ta, sb.terms)
    if witness is not None:
        return EquivalenceReport(DIFFERENT, witness, note="phase polynomials differ")
    if exhaustive:
        return EquivalenceReport(EQUAL_UP_TO_PHASE, note="phase polynomials differ by a constant")
    diff = next(m for m in set(ta) | set(sb.terms) if ta.get(m) != sb.terms.get(m))
    return EquivalenceReport(DIFFERENT, diff & -diff, note="phase polynomials differ (unconfirmed witness)")


def check_summary(a: Circuit, b: Circuit) -> EquivalenceReport:
    """Compare the phase-polynomial summaries of two circuits.

    ``b`` may carry extra ancilla wires after those of ``a``; they must
    start and end in 0. Path variables are matched by Hadamard order. If
    the summaries disagree, adjacent self-inverse pairs are cancelled
    (first in ``a``, then in both) and the comparison is retried, since the
    optimizer summarizes the cancelled form. Equal summaries imply equal
    unitaries up to global phase, but different summaries can hide equal
    circuits; the first mismatch is reported.
    """
    if list(a.inputs) != list(b.inputs):
        return EquivalenceReport(DIFFERENT, 0, note="input declarations differ")
    ea, eb = expand(a), expand(b)
    sb = summarize(eb)
    report = _compare(summarize(ea), sb)
    if report.ok:
        return report
    ra = remove_identities(ea)
    retry = _compare(summarize(ra), sb)
    if retry.ok:
        return retry
    retry = _compare(summarize(ra), summarize(remove_identities(eb)))
    return retry if retry.ok else report


# --------------------------------------------------------- unitary check

_OMEGA = np.exp(1j * np.pi / 4)


def _index(n: int, fixed: dict[int, int]) -> tuple:
    idx = [slice(None)] * (n + 1)
    for w, v in fixed.items():
        idx[w] = v
    return tuple(idx)


def simulate(circuit: Circuit, states: np.ndarray, n: Optional[int] = None) -> np.ndarray:
    """Apply ``circuit`` to a batch of statevectors.

    Args:
        circuit: Circuit to run; wire 0 is the most significant qubit.
        states: Complex array of shape ``(2**n, batch)``.
        n: Register size, at least ``circuit.n`` (extra wires stay idle).
    """
    n = circuit.n if n is None else n
    psi = np.array(states, dtype=complex).reshape((2,) * n + (-1,))
    r2 = 1 / np.sqrt(2)
    for g in circuit.gates:
        w = g.wires
        if g.kind in PHASE_POWER:
            psi[_index(n, {w[0]: 1})] *= _OMEGA ** PHASE_POWER[g.kind]
        elif g.kind == H:
            i0, i1 = _index(n, {w[0]: 0}), _index(n, {w[0]: 1})
            a0, a1 = psi[i0].copy(), psi[i1].copy()
            psi[i0] = (a0 + a1) * r2
            psi[i1] = (a0 - a1) * r2
        elif g.kind == Y:
            i0, i1 = _index(n, {w[0]: 0}), _index(n, {w[0]: 1})
            a0, a1 = psi[i0].copy(), psi[i1].copy()
            psi[i0] = -1j * a1
            psi[i1] = 1j * a0
        else:  # X, CNOT, Toffoli: swap the target's halves where controls are 1
            ctrl = {c: 1 for c in w[:-1]}
            i0, i1 = _index(n, {**ctrl, w[-1]: 0}), _index(n, {**ctrl, w[-1]: 1})
            a0 = psi[i0].copy()
            psi[i0] = psi[i1]
            psi[i1] = a0
    return psi.reshape(2 ** n, -1)


def _input_basis(circuit: Circuit, n: int) -> tuple[list[int], np.ndarray]:
    """Basis states with data wires free and every other wire at 0."""
    data = circuit.input_indices
    cols = []
    for bits in product((0, 1), repeat=len(data)):
        cols.append(sum(b << (n - 1 - w) for w, b in zip(data, bits)))
    basis = np.zeros((2 ** n, len(cols)), dtype=complex)
    basis[cols, np.arange(len(cols))] = 1
    return cols, basis


def check_unitary(
    a: Circuit,
    b: Union[Circuit, np.ndarray],
    max_wires: int = 10,
    tol: float = TOLERANCE,
) -> EquivalenceReport:
    """Dense statevector comparison on every data-input basis state.

    ``b`` is either a circuit (possibly with extra trailing ancilla wires)
    or a ``2**n x 2**n`` matrix over ``a``'s wires. Ancilla wires start in
    0, so only the columns for those inputs are compared. The outputs must
    agree up to a single global phase within ``tol``.
    """
    n = a.n if isinstance(b, np.ndarray) else max(a.n, b.n)
    if n > max_wires:
        raise ValueError(f"{n} wires exceeds the dense-simulation limit of {max_wires}")
    cols, basis = _input_basis(a, n)
    out_a = simulate(a, basis, n)
    if isinstance(b, np.ndarray):
        if b.shape != (2 ** n, 2 ** n):
            raise ValueError(f"matrix shape {b.shape} does not match {n} wires")
        out_b = b[:, cols]
    else:
        out_b = simulate(b, basis, n)
    ref = np.unravel_index(np.argmax(np.abs(out_a)), out_a.shape)
    phase = out_b[ref] / out_a[ref] if abs(out_a[ref]) > tol else 1.0
    if abs(abs(phase) - 1) > tol:
        phase = 1.0
    err = np.abs(out_b - phase * out_a)
    worst = float(err.max(initial=0.0))
    if worst > tol:
        column = int(np.argmax(err.max(axis=0)))
        return EquivalenceReport(DIFFERENT, cols[column], worst, note="statevectors differ")
    verdict = EQUAL if abs(phase - 1) <= tol else EQUAL_UP_TO_PHASE
    return EquivalenceReport(verdict, None, worst)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    n = circuit.n
    return simulate(circuit, np.eye(2 ** n, dtype=complex), n)


def default_verdict(original: Circuit, optimized: Circuit, max_wires: int = 10) -> str:
    """Summary check always; the unitary check too when the circuit is small."""
    report = check_summary(original, optimized)
    if report.ok and max(original.n, optimized.n) <= max_wires:
        unitary = check_unitary(original, optimized, max_wires)
        if not unitary.ok:
            return unitary.verdict
    return report.verdict


# ---------------------------------------------------- partition minimality


def brute_force_min_partition(elements: Sequence, oracle: Oracle, cap: int = 9) -> int:
    """Fewest independent blocks covering ``elements``, by exhaustive search.

    Depth-first over restricted-growth assignments, pruning any branch that
    cannot beat the best count found so far.
    """
    items = list(elements)
    if len(items) > cap:
        raise ValueError(f"{len(items)} elements exceeds the brute-force cap of {cap}")
    if not items:
        return 0
    best = len(items) + 1
    blocks: list[list] = []

    def search(i: int) -> None:
        nonlocal best
        if len(blocks) >= best:
            return
        if i == len(items):
            best = len(blocks)
            return
        e = items[i]
        for block in blocks:
            block.append(e)
            if is_independent(block, oracle):
                search(i + 1)
            block.pop()
        if len(blocks) + 1 < best and is_independent([e], oracle):
            blocks.append([e])
            search(i + 1)
            blocks.pop()

    search(0)
    if best > len(items):
        raise ValueError("some element is not independent on its own")
    return best
