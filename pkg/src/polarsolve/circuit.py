"""Division-free arithmetic circuits over Q.

Text format, one statement per line (``;`` also separates statements)::

    # circle
    %1 = mul X1 X1
    %2 = mul X2 X2
    %3 = add %1 %2
    %4 = sub %3 1
    out %4

Operands are ``Xj``, an earlier label ``%i``, or a rational literal ``a`` /
``a/b``.  Inputs and constants become their own nodes the first time they are
referenced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ratpoly import MultiPoly, as_rational

OPS = ("add", "sub", "mul")


class CircuitError(ValueError):
    pass


class CircuitParseError(CircuitError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DegreeCapExceeded(CircuitError):
    pass


@dataclass(frozen=True)
class Node:
    """One dag node.  ``kind`` is ``input``, ``const`` or an op in ``OPS``."""
    kind: str
    var: int = 0
    value: Fraction = Fraction(0)
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class CircuitMetrics:
    size_L: int
    nonscalar_depth_ell: int
    nonscalar_size: int = 0


@dataclass(frozen=True)
class Circuit:
    nvars: int
    nodes: tuple[Node, ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        for idx, node in enumerate(self.nodes):
            if node.kind == "input":
                if not 1 <= node.var <= self.nvars:
                    raise CircuitError(f"node {idx}: input X{node.var} out of range")
            elif node.kind in OPS:
                if len(node.args) != 2 or any(not 0 <= a < idx for a in node.args):
                    raise CircuitError(f"node {idx}: operands must reference earlier nodes")
            elif node.kind != "const":
                raise CircuitError(f"node {idx}: unsupported kind {node.kind!r}")
        for o in self.outputs:
            if not 0 <= o < len(self.nodes):
                raise CircuitError(f"output index {o} out of range")


class CircuitBuilder:
    """Appends nodes, reusing input and constant nodes and folding trivial operations."""

    def __init__(self, nvars: int, fold: bool = True):
        self.nvars = nvars
        self.nodes: list[Node] = []
        self.fold = fold
        self._inputs: dict[int, int] = {}
        self._consts: dict[Fraction, int] = {}

    def input(self, j: int) -> int:
        if j not in self._inputs:
            self._inputs[j] = self._push(Node("input", var=j))
        return self._inputs[j]

    def const(self, c) -> int:
        c = as_rational(c)
        if c not in self._consts:
            self._consts[c] = self._push(Node("const", value=c))
        return self._consts[c]

    def _push(self, node: Node) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def _value(self, i: int):
        n = self.nodes[i]
        return n.value if n.kind == "const" else None

    def op(self, kind: str, a: int, b: int) -> int:
        if self.fold:
            va, vb = self._value(a), self._value(b)
            if va is not None and vb is not None:
                return self.const(_apply(kind, va, vb))
            if kind == "add":
                if va == 0:
                    return b
                if vb == 0:
                    return a
            elif kind == "sub":
                if vb == 0:
                    return a
                if a == b:
                    return self.const(0)
            elif kind == "mul":
                if va == 0 or vb == 0:
                    return self.const(0)
                if va == 1:
                    return b
                if vb == 1:
                    return a
        return self._push(Node(kind, args=(a, b)))

    def build(self, outputs: Sequence[int]) -> Circuit:
        return Circuit(self.nvars, tuple(self.nodes), tuple(outputs))


def _apply(kind, a, b):
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


_STMT = re.compile(r"^%(\d+)\s*=\s*(\w+)\s+(\S+)\s+(\S+)$")
_OUT = re.compile(r"^out\s+(\S+)$")
_LITERAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_circuit(text: str, nvars: int | None = None) -> Circuit:
    """Parse circuit source.  ``nvars`` defaults to the largest ``Xj`` referenced."""
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        offset = 0
        for piece in line.split(";"):
            stripped = piece.strip()
            if stripped:
                col = offset + piece.index(stripped[0]) + 1
                statements.append((lineno, col, stripped))
            offset += len(piece) + 1

    labels_defined_anywhere = {
        int(m.group(1)) for _, _, s in statements if (m := _STMT.match(s))}
    if nvars is None:
        nvars = max((int(j) for _, _, s in statements for j in re.findall(r"\bX(\d+)\b", s)),
                    default=0)

    b = CircuitBuilder(nvars, fold=False)
    labels: dict[int, int] = {}
    outputs: list[int] = []

    def operand(tok: str, lineno: int, col: int) -> int:
        if tok.startswith("%"):
            if not tok[1:].isdigit():
                raise CircuitParseError(f"malformed label {tok!r}", lineno, col)
            k = int(tok[1:])
            if k in labels:
                return labels[k]
            if k in labels_defined_anywhere:
                raise CircuitParseError(f"forward reference to {tok}", lineno, col)
            raise CircuitParseError(f"unknown identifier {tok}", lineno, col)
        if re.fullmatch(r"X\d+", tok):
            j = int(tok[1:])
            if not 1 <= j <= nvars:
                raise CircuitParseError(f"unknown identifier {tok} (nvars={nvars})", lineno, col)
            return b.input(j)
        if _LITERAL.match(tok):
            num, _, den = tok.partition("/")
            if den and int(den) == 0:
                raise CircuitParseError(f"malformed constant {tok!r}", lineno, col)
            return b.const(Fraction(int(num), int(den) if den else 1))
        if re.fullmatch(r"[+-]?[\d/.]+", tok):
            raise CircuitParseError(f"malformed constant {tok!r}", lineno, col)
        raise CircuitParseError(f"unknown identifier {tok!r}", lineno, col)

    for lineno, col, stmt in statements:
        m = _STMT.match(stmt)
        if m:
            label, op, lhs, rhs = int(m.group(1)), m.group(2), m.group(3), m.group(4)
            if op == "div" or "/" == op:
                raise CircuitParseError("division is not allowed in a division-free circuit",
                                        lineno, col)
            if op not in OPS:
                raise CircuitParseError(f"unknown operation {op!r}", lineno, col)
            if label in labels:
                raise CircuitParseError(f"label %{label} defined twice", lineno, col)
            a = operand(lhs, lineno, col + stmt.index(lhs, stmt.index(op) + len(op)))
            c = operand(rhs, lineno, col + stmt.rindex(rhs))
            labels[label] = b.op(op, a, c)
            continue
        m = _OUT.match(stmt)
        if m:
            outputs.append(operand(m.group(1), lineno, col + 4))
            continue
        if re.search(r"\bdiv\b|%\d+\s*=.*\s/\s", stmt):
            raise CircuitParseError("division is not allowed in a division-free circuit",
                                    lineno, col)
        raise CircuitParseError(f"cannot parse statement {stmt!r}", lineno, col)

    if not outputs:
        raise CircuitParseError("circuit declares no outputs", len(text.splitlines()) or 1)
    return b.build(outputs)


def _ref(c: Circuit, idx: int, names: dict[int, str]) -> str:
    node = c.nodes[idx]
    if node.kind == "input":
        return f"X{node.var}"
    if node.kind == "const":
        return str(node.value)
    return names[idx]


def print_circuit(c: Circuit) -> str:
    names: dict[int, str] = {}
    lines = []
    for idx, node in enumerate(c.nodes):
        if node.kind in OPS:
            names[idx] = f"%{len(names) + 1}"
            a, b = (_ref(c, i, names) for i in node.args)
            lines.append(f"{names[idx]} = {node.kind} {a} {b}")
    lines.extend(f"out {_ref(c, o, names)}" for o in c.outputs)
    return "\n".join(lines) + "\n"


def eval_circuit(c: Circuit, x: Sequence) -> list[Fraction]:
    if len(x) != c.nvars:
        raise ValueError(f"point has {len(x)} coordinates, circuit has {c.nvars} inputs")
    x = [as_rational(v) for v in x]
    vals: list[Fraction] = []
    for node in c.nodes:
        if node.kind == "input":
            vals.append(x[node.var - 1])
        elif node.kind == "const":
            vals.append(node.value)
        else:
            vals.append(_apply(node.kind, vals[node.args[0]], vals[node.args[1]]))
    return [vals[o] for o in c.outputs]


def expand_circuit(c: Circuit, degree_cap: int = 64) -> list[MultiPoly]:
    """Expand every output to a MultiPoly; raises ``DegreeCapExceeded`` past ``degree_cap``."""
    polys: list[MultiPoly] = []
    for idx, node in enumerate(c.nodes):
        if node.kind == "input":
            p = MultiPoly.variable(c.nvars, node.var)
        elif node.kind == "const":
            p = MultiPoly.constant(c.nvars, node.value)
        else:
            a, b = (polys[i] for i in node.args)
            if node.kind == "mul" and a and b and a.degree() + b.degree() > degree_cap:
                raise DegreeCapExceeded(
                    f"node {idx} has degree {a.degree() + b.degree()} > cap {degree_cap}")
            p = _apply(node.kind, a, b)
        polys.append(p)
    return [polys[o] for o in c.outputs]


def differentiate_circuit(c: Circuit) -> Circuit:
    """Reverse-mode gradient circuit.

    Outputs are ``d f_k / d X_j`` in row-major order (k outer).  The forward
    nodes are shared; each output row adds at most four nodes per operation.
    """
    b = CircuitBuilder(c.nvars)
    remap: list[int] = []
    for node in c.nodes:
        if node.kind == "input":
            remap.append(b.input(node.var))
        elif node.kind == "const":
            remap.append(b.const(node.value))
        else:
            remap.append(b.op(node.kind, remap[node.args[0]], remap[node.args[1]]))

    reachable_cache: dict[int, list[bool]] = {}
    outputs: list[int] = []
    for out in c.outputs:
        if out not in reachable_cache:
            live = [False] * len(c.nodes)
            live[out] = True
            for idx in range(out, -1, -1):
                if live[idx] and c.nodes[idx].kind in OPS:
                    for a in c.nodes[idx].args:
                        live[a] = True
            reachable_cache[out] = live
        live = reachable_cache[out]

        adj: dict[int, int] = {out: b.const(1)}

        def accumulate(target: int, contrib: int, negate: bool = False):
            if target in adj:
                adj[target] = b.op("sub" if negate else "add", adj[target], contrib)
            elif negate:
                adj[target] = b.op("sub", b.const(0), contrib)
            else:
                adj[target] = contrib

        for idx in range(out, -1, -1):
            node = c.nodes[idx]
            if not live[idx] or node.kind not in OPS or idx not in adj:
                continue
            g = adj[idx]
            l, r = node.args
            if node.kind == "add":
                accumulate(l, g)
                accumulate(r, g)
            elif node.kind == "sub":
                accumulate(l, g)
                accumulate(r, g, negate=True)
            else:
                accumulate(l, b.op("mul", g, remap[r]))
                accumulate(r, b.op("mul", g, remap[l]))

        by_var: dict[int, int] = {}
        for idx, node in enumerate(c.nodes):
            if node.kind == "input" and idx in adj:
                by_var[node.var] = adj[idx] if node.var not in by_var else b.op(
                    "add", by_var[node.var], adj[idx])
        outputs.extend(by_var.get(j, b.const(0)) for j in range(1, c.nvars + 1))
    return b.build(outputs)


def _scalar_flags(c: Circuit) -> list[bool]:
    scalar = []
    for node in c.nodes:
        if node.kind == "input":
            scalar.append(False)
        elif node.kind == "const":
            scalar.append(True)
        else:
            scalar.append(all(scalar[a] for a in node.args))
    return scalar


def metrics(c: Circuit) -> CircuitMetrics:
    """Size L (all non-input nodes) and nonscalar depth.

    A multiplication is nonscalar when neither operand is a constant
    expression; additions, subtractions and scalings are free.
    """
    scalar = _scalar_flags(c)
    depth: list[int] = []
    nonscalar = 0
    for idx, node in enumerate(c.nodes):
        if node.kind in OPS:
            d = max(depth[a] for a in node.args)
            if node.kind == "mul" and not any(scalar[a] for a in node.args):
                d += 1
                nonscalar += 1
            depth.append(d)
        else:
            depth.append(0)
    size = sum(1 for n in c.nodes if n.kind != "input")
    ell = max((depth[o] for o in c.outputs), default=0)
    return CircuitMetrics(size_L=size, nonscalar_depth_ell=ell, nonscalar_size=nonscalar)


def circuit_from_polys(polys: Sequence[MultiPoly]) -> Circuit:
    """Straightforward term-by-term circuit for a list of polynomials."""
    nvars = polys[0].nvars if polys else 0
    b = CircuitBuilder(nvars)
    powers: dict[tuple[int, int], int] = {}

    def power(j, e):
        if e == 1:
            return b.input(j)
        if (j, e) not in powers:
            powers[(j, e)] = b.op("mul", power(j, e - 1), b.input(j))
        return powers[(j, e)]

    outs = []
    for f in polys:
        acc = b.const(0)
        for exp, coef in f.items_grlex():
            term = b.const(coef)
            for k, e in enumerate(exp):
                if e:
                    term = b.op("mul", term, power(k + 1, e))
            acc = b.op("add", acc, term)
        outs.append(acc)
    return b.build(outs)
