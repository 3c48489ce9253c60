"""Benchmark circuit families, small fixtures and the table runner."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .gf2 import XorFunction
from .ir import CNOT, TDG, T, TOFFOLI, Circuit, ccz_gates, gate
from .driver import AncillaPolicy, optimize
from .synth import linear_stage

MCT_BARENCO = "mct-barenco"
MCT_NC = "mct-nc"
GF_MULT = "gf-mult"
FIXTURE = "fixture"
FAMILIES = (MCT_BARENCO, MCT_NC, GF_MULT, FIXTURE)

# Least irreducible trinomial/pentanomial per degree, bit i = coefficient of x^i.
DEFAULT_MODULI = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000010001,
    10: 0b10000001001,
    16: 0b10000000000101011,
}


# ---------------------------------------------------------------- fixtures


def ccz_fixture() -> Circuit:
    """Doubly-controlled Z from seven T gates and six CNOTs."""
    return Circuit(["a", "b", "c"], ["a", "b", "c"], ccz_gates(0, 1, 2))


def toffoli_circuit() -> Circuit:
    return Circuit(["a", "b", "c"], ["a", "b", "c"], [gate(TOFFOLI, 0, 1, 2)])


def example_cancellation() -> Circuit:
    """Four-wire {CNOT, T} circuit whose T gates pairwise cancel or merge."""
    gates = [
        gate(CNOT, 2, 3),
        gate(T, 0), gate(T, 3),
        gate(CNOT, 0, 1), gate(CNOT, 2, 3),
        gate(CNOT, 1, 2),
        gate(CNOT, 1, 0), gate(CNOT, 3, 2),
        gate(CNOT, 1, 2),
        gate(CNOT, 0, 1), gate(T, 2),
        gate(TDG, 1),
    ]
    wires = ["x1", "x2", "x3", "x4"]
    return Circuit(wires, list(wires), gates)


def double_toffoli() -> Circuit:
    """``Tof(x1, x2, x3)`` followed by ``Tof(x2, x3, x4)``."""
    wires = ["x1", "x2", "x3", "x4"]
    return Circuit(wires, list(wires), [gate(TOFFOLI, 0, 1, 2), gate(TOFFOLI, 1, 2, 3)])


# ---------------------------------------------------- multiply-controlled X


def gen_mct_barenco(k: int) -> Circuit:
    """k-controlled X using ``k - 2`` ancillae in arbitrary states (restored).

    Wires: controls ``c1..ck``, work wires ``a1..a(k-2)`` (declared inputs),
    target ``t``. Uses ``4k - 8`` Toffolis.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    c = list(range(k))
    a = list(range(k, 2 * k - 2))
    t = 2 * k - 2
    ladder = [gate(TOFFOLI, c[j + 2], a[j], a[j + 1]) for j in range(k - 3)]
    bottom = gate(TOFFOLI, c[0], c[1], a[0])
    top = gate(TOFFOLI, c[k - 1], a[k - 3], t)
    half = list(reversed(ladder)) + [bottom] + ladder
    gates = [top] + half + [top] + half
    wires = [f"c{i + 1}" for i in range(k)] + [f"a{i + 1}" for i in range(k - 2)] + ["t"]
    return Circuit(wires, list(wires), gates)


def gen_mct_nc(k: int) -> Circuit:
    """k-controlled X computing the control conjunction into ``k - 2`` clean
    ancillae and uncomputing it afterwards; ``2k - 3`` Toffolis."""
    if k < 3:
        raise ValueError("k must be at least 3")
    c = list(range(k))
    t = k
    a = list(range(k + 1, 2 * k - 1))
    compute = [gate(TOFFOLI, c[0], c[1], a[0])]
    compute += [gate(TOFFOLI, c[j + 1], a[j - 1], a[j]) for j in range(1, k - 2)]
    gates = compute + [gate(TOFFOLI, c[k - 1], a[k - 3], t)] + list(reversed(compute))
    inputs = [f"c{i + 1}" for i in range(k)] + ["t"]
    return Circuit(inputs + [f"a{i + 1}" for i in range(k - 2)], inputs, gates)


# ------------------------------------------------------------ GF(2^m) maths


def poly_mod(a: int, m: int) -> int:
    """Remainder of polynomial ``a`` modulo ``m`` over GF(2)."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(poly: int) -> bool:
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(poly, d) == 0:
            return False
    return True


def gf_mul(a: int, b: int, modulus: int) -> int:
    prod = 0
    for i in range(b.bit_length()):
        if b >> i & 1:
            prod ^= a << i
    return poly_mod(prod, modulus)


def _stage_order(by_target: dict[int, list]) -> list:
    """Interleave per-target Toffoli lists round by round, fullest targets
    first in each round."""
    targets = sorted(by_target, key=lambda t: (-len(by_target[t]), t))
    longest = max((len(v) for v in by_target.values()), default=0)
    return [by_target[t][r] for r in range(longest) for t in targets if r < len(by_target[t])]


def gen_gf_mult(m: int, modulus: Optional[int] = None) -> Circuit:
    """Multiplier over GF(2^m) on ``3m`` wires: ``c ^= a * b``, with ``c`` clean.

    High-degree partial products are accumulated into ``c`` first, then
    ``c`` is multiplied in place by ``x^m`` (a CNOT-only map that folds the
    reduction modulo the field polynomial in), and finally the low-degree
    products are added. ``m^2`` Toffolis in total.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    modulus = DEFAULT_MODULI.get(m) if modulus is None else modulus
    if modulus is None or modulus.bit_length() != m + 1 or not is_irreducible(modulus):
        raise ValueError(f"modulus must be an irreducible polynomial of degree {m}")
    a = list(range(m))
    b = list(range(m, 2 * m))
    c = list(range(2 * m, 3 * m))

    high: dict[int, list] = {}
    for j in range(m - 1):
        deg = m + j
        high[j] = [gate(TOFFOLI, a[i], b[deg - i], c[j]) for i in range(deg - m + 1, m)]
    low: dict[int, list] = {}
    for deg in range(m):
        low[deg] = [gate(TOFFOLI, a[i], b[deg - i], c[deg]) for i in range(deg + 1)]

    ident = [XorFunction.var(i) for i in range(m)]
    shifted = [poly_mod(1 << (m + j), modulus) for j in range(m)]
    image = [XorFunction(sum(1 << j for j in range(m) if shifted[j] >> i & 1)) for i in range(m)]
    reduce = [gate(g.kind, *(c[w] for w in g.wires)) for g in linear_stage(ident, image)]

    gates = _stage_order(high) + reduce + _stage_order(low)
    wires = [f"a{i}" for i in range(m)] + [f"b{i}" for i in range(m)] + [f"c{i}" for i in range(m)]
    return Circuit(wires, wires[: 2 * m], gates, outputs=None)


# ----------------------------------------------------------------- runner


@dataclass(frozen=True)
class BenchSpec:
    family: str
    size: int
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def name(self) -> str:
        if self.family == MCT_BARENCO:
            return f"barenco-{self.size}"
        if self.family == MCT_NC:
            return f"nc-{self.size}"
        if self.family == GF_MULT:
            return f"gf2^{self.size}-mult"
        return ("ccz", "toffoli", "example", "double-toffoli")[self.size]

    def build(self) -> Circuit:
        if self.family == MCT_BARENCO:
            return gen_mct_barenco(self.size)
        if self.family == MCT_NC:
            return gen_mct_nc(self.size)
        if self.family == GF_MULT:
            return gen_gf_mult(self.size, self.modulus)
        return (ccz_fixture, toffoli_circuit, example_cancellation, double_toffoli)[self.size]()


COLUMNS = (
    "name", "n", "ancillae_policy", "tc_before", "tc_after", "td_before", "td_after",
    "cnot_before", "cnot_after", "h_count", "verify_verdict", "seconds",
)


@dataclass
class BenchReport:
    rows: list[dict] = field(default_factory=list)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
        for row in self.rows:
            lines.append("| " + " | ".join(str(row[c]) for c in COLUMNS) + " |")
        return "\n".join(lines) + "\n"


def run_benchmarks(
    specs: Iterable[BenchSpec],
    policies: Sequence[str] = ("0",),
    verify: Optional[Callable] = None,
) -> BenchReport:
    """Optimize every spec under every policy and tabulate the metrics.

    ``policies`` are strings accepted by :meth:`AncillaPolicy.parse`.
    ``verify(original, optimized)`` returns a verdict string; by default the
    summary check runs, plus the unitary check on small instances. A failing
    row is recorded with its error and the run continues.
    """
    if verify is None:
        from .verify import default_verdict as verify
    report = BenchReport()
    for spec in specs:
        for pol in policies:
            row = dict.fromkeys(COLUMNS, "")
            row.update(name=spec.name, ancillae_policy=pol)
            try:
                circ = spec.build()
                policy = AncillaPolicy.parse(pol, circ.n)
                start = time.perf_counter()
                res = optimize(circ, policy)
                row["seconds"] = f"{time.perf_counter() - start:.4f}"
                row.update(
                    n=circ.n,
                    tc_before=res.before.t_count, tc_after=res.after.t_count,
                    td_before=res.before.t_depth, td_after=res.after.t_depth,
                    cnot_before=res.before.cnot_count, cnot_after=res.after.cnot_count,
                    h_count=res.after.h_count,
                    verify_verdict=verify(res.reduced, res.circuit),
                )
            except Exception as exc:  # recorded in the table, run continues
                row["verify_verdict"] = f"error: {exc}"
            report.rows.append(row)
    return report
