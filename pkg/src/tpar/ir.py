"""Circuit data model, the ``.qc`` text format, Toffoli expansion and metrics."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterable, Optional, Sequence

X, Y, Z, H, P, PDG, T, TDG, CNOT, TOFFOLI = (
    "X", "Y", "Z", "H", "P", "Pdg", "T", "Tdg", "CNOT", "Toffoli",
)

SINGLE_QUBIT = (X, Y, Z, H, P, PDG, T, TDG)
ARITY = {**{k: 1 for k in SINGLE_QUBIT}, CNOT: 2, TOFFOLI: 3}
T_KINDS = (T, TDG)
# Exponent of omega = exp(i*pi/4) that each diagonal gate applies to |1>.
PHASE_POWER = {T: 1, P: 2, Z: 4, PDG: 6, TDG: 7}
SELF_INVERSE = (X, Y, Z, H, CNOT, TOFFOLI)

_MNEMONIC = {X: "X", Y: "Y", Z: "Z", H: "H", P: "P", PDG: "P*", T: "T", TDG: "T*"}
_FROM_MNEMONIC = {v: k for k, v in _MNEMONIC.items()}


@dataclass(frozen=True)
class Gate:
    kind: str
    wires: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.wires) != ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {ARITY[self.kind]} wire(s), got {len(self.wires)}")
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"{self.kind} on repeated wires {self.wires}")

    @property
    def target(self) -> int:
        return self.wires[-1]


def gate(kind: str, *wires: int) -> Gate:
    return Gate(kind, tuple(wires))


@dataclass
class Circuit:
    """Gate list over named wires.

    Wires named in ``inputs`` carry data; every other wire is an ancilla
    that starts (and is expected to end) in ``|0>``.
    """

    wires: list[str]
    inputs: list[str]
    gates: list[Gate] = field(default_factory=list)
    outputs: Optional[list[str]] = None

    def __post_init__(self):
        if len(set(self.wires)) != len(self.wires):
            raise ValueError("duplicate wire names")
        known = set(self.wires)
        for name in list(self.inputs) + list(self.outputs or []):
            if name not in known:
                raise ValueError(f"undeclared wire {name!r}")
        for g in self.gates:
            if max(g.wires) >= len(self.wires) or min(g.wires) < 0:
                raise ValueError(f"gate {g} outside the {len(self.wires)} declared wires")

    @property
    def n(self) -> int:
        return len(self.wires)

    @property
    def num_inputs(self) -> int:
        return len(self.inputs)

    @property
    def input_indices(self) -> list[int]:
        return [self.wires.index(w) for w in self.inputs]

    @property
    def ancilla_indices(self) -> list[int]:
        data = set(self.inputs)
        return [i for i, w in enumerate(self.wires) if w not in data]

    def copy(self, gates: Optional[Iterable[Gate]] = None) -> "Circuit":
        return Circuit(
            list(self.wires),
            list(self.inputs),
            list(self.gates if gates is None else gates),
            None if self.outputs is None else list(self.outputs),
        )

    def append(self, kind: str, *wires: int) -> None:
        self.gates.append(Gate(kind, tuple(wires)))

    def extend(self, gates: Iterable[Gate]) -> None:
        self.gates.extend(gates)

    def with_wires(self, count: int, prefix: str = "anc") -> "Circuit":
        """Copy padded with fresh ancilla wires up to ``count`` wires total."""
        wires = list(self.wires)
        i = 0
        while len(wires) < count:
            name = f"{prefix}{i}"
            i += 1
            if name not in wires:
                wires.append(name)
        return Circuit(wires, list(self.inputs), list(self.gates),
                       None if self.outputs is None else list(self.outputs))


class QcParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_qc(text: str) -> Circuit:
    """Parse the ``.qc`` dialect.

    Header lines ``.v``/``.i``/``.o`` declare all wires, the data inputs and
    (optionally) the outputs; gates sit between ``BEGIN`` and ``END``. ``tof``
    with two wires is a CNOT (control first), with three a Toffoli.
    """
    wires: list[str] | None = None
    inputs: list[str] | None = None
    outputs: list[str] | None = None
    gates: list[Gate] = []
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head, args = tokens[0], tokens[1:]
        if state == "header":
            if head == ".v":
                wires = args
            elif head == ".i":
                inputs = args
            elif head == ".o":
                outputs = args
            elif head == "BEGIN":
                if wires is None:
                    raise QcParseError("BEGIN before .v declaration", lineno)
                index = {w: i for i, w in enumerate(wires)}
                if len(index) != len(wires):
                    raise QcParseError("duplicate wire in .v", lineno)
                for name in (inputs or []) + (outputs or []):
                    if name not in index:
                        raise QcParseError(f"undeclared wire {name!r}", lineno)
                state = "body"
            else:
                raise QcParseError(f"unexpected header line {head!r}", lineno)
            continue
        if state == "done":
            raise QcParseError("content after END", lineno)
        if head == "END":
            state = "done"
            continue
        try:
            idx = tuple(index[a] for a in args)
        except KeyError as exc:
            raise QcParseError(f"undeclared wire {exc.args[0]!r}", lineno) from None
        if head == "tof":
            if len(args) not in (2, 3):
                raise QcParseError(f"tof takes 2 or 3 wires, got {len(args)}", lineno)
            kind = CNOT if len(args) == 2 else TOFFOLI
        elif head in _FROM_MNEMONIC:
            kind = _FROM_MNEMONIC[head]
        else:
            raise QcParseError(f"unknown gate {head!r}", lineno)
        try:
            gates.append(Gate(kind, idx))
        except ValueError as exc:
            raise QcParseError(str(exc), lineno) from None
    if state == "header":
        raise QcParseError("missing BEGIN")
    if state != "done":
        raise QcParseError("missing END")
    return Circuit(list(wires), list(inputs if inputs is not None else wires), gates, outputs)


def write_qc(circuit: Circuit) -> str:
    lines = [".v " + " ".join(circuit.wires), ".i " + " ".join(circuit.inputs)]
    if circuit.outputs is not None:
        lines.append(".o " + " ".join(circuit.outputs))
    lines.append("BEGIN")
    for g in circuit.gates:
        names = " ".join(circuit.wires[w] for w in g.wires)
        mnemonic = "tof" if g.kind in (CNOT, TOFFOLI) else _MNEMONIC[g.kind]
        lines.append(f"{mnemonic} {names}")
    lines.append("END")
    return "\n".join(lines) + "\n"


def ccz_gates(a: int, b: int, c: int) -> list[Gate]:
    """Seven-T doubly-controlled Z on wires ``a, b, c`` (T-depth 4 as listed)."""
    return [
        gate(TDG, a), gate(TDG, b),
        gate(CNOT, c, a), gate(CNOT, b, c),
        gate(T, a), gate(T, c),
        gate(CNOT, b, a), gate(CNOT, b, c),
        gate(TDG, a),
        gate(CNOT, c, a),
        gate(T, a), gate(TDG, c),
        gate(CNOT, b, a),
    ]


def expand(circuit: Circuit) -> Circuit:
    """Replace each Toffoli by ``H(t) ccZ(c1, c2, t) H(t)``."""
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind == TOFFOLI:
            c1, c2, t = g.wires
            out.append(gate(H, t))
            out.extend(ccz_gates(c1, c2, t))
            out.append(gate(H, t))
        else:
            out.append(g)
    return circuit.copy(out)


def remove_identities(circuit: Circuit) -> Circuit:
    """Cancel pairs of identical self-inverse gates with nothing between them.

    Two gates are adjacent when no gate in between touches any of their
    wires, so ``H t; CNOT a b; H t`` collapses to ``CNOT a b``. Cancellations
    cascade (``H H H H`` vanishes).
    """
    alive = [True] * len(circuit.gates)
    stacks: list[list[int]] = [[] for _ in range(circuit.n)]
    for i, g in enumerate(circuit.gates):
        if g.kind in SELF_INVERSE:
            tops = {stacks[w][-1] if stacks[w] else None for w in g.wires}
            if len(tops) == 1:
                j = tops.pop()
                if j is not None and circuit.gates[j] == g:
                    alive[i] = alive[j] = False
                    for w in g.wires:
                        stacks[w].pop()
                    continue
        for w in g.wires:
            stacks[w].append(i)
    return circuit.copy(g for g, keep in zip(circuit.gates, alive) if keep)


def t_depth(circuit: Circuit) -> int:
    """Length of the longest chain of T/T-dagger gates through shared wires.

    Non-T gates are free; a T gate sits one level above every earlier gate
    on its wire. An unexpanded Toffoli counts as three T levels.
    """
    level = [0] * circuit.n
    for g in circuit.gates:
        cost = 1 if g.kind in T_KINDS else 3 if g.kind == TOFFOLI else 0
        top = max(level[w] for w in g.wires) + cost
        for w in g.wires:
            level[w] = top
    return max(level, default=0)


def total_depth(circuit: Circuit) -> int:
    level = [0] * circuit.n
    for g in circuit.gates:
        top = max(level[w] for w in g.wires) + 1
        for w in g.wires:
            level[w] = top
    return max(level, default=0)


@dataclass(frozen=True)
class Metrics:
    t_count: int = 0
    t_depth: int = 0
    cnot_count: int = 0
    h_count: int = 0
    other_count: int = 0
    total_depth: int = 0
    qubits: int = 0
    ancillae: int = 0

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def metrics(circuit: Circuit) -> Metrics:
    """Gate counts and depths. An unexpanded Toffoli contributes 7 to the
    T-count (its standard decomposition) and is tallied under ``other``."""
    t = cx = h = other = 0
    for g in circuit.gates:
        if g.kind in T_KINDS:
            t += 1
        elif g.kind == CNOT:
            cx += 1
        elif g.kind == H:
            h += 1
        else:
            other += 1
            if g.kind == TOFFOLI:
                t += 7
    return Metrics(
        t_count=t,
        t_depth=t_depth(circuit),
        cnot_count=cx,
        h_count=h,
        other_count=other,
        total_depth=total_depth(circuit),
        qubits=circuit.n,
        ancillae=circuit.n - circuit.num_inputs,
    )


def count_kinds(gates: Sequence[Gate]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for g in gates:
        counts[g.kind] = counts.get(g.kind, 0) + 1
    return counts
