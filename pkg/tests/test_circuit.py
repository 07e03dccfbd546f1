import random
from fractions import Fraction

import pytest

from polarsolve.circuit import (
    Circuit,
    CircuitBuilder,
    CircuitError,
    CircuitParseError,
    DegreeCapExceeded,
    Node,
    circuit_from_polys,
    differentiate_circuit,
    eval_circuit,
    expand_circuit,
    metrics,
    parse_circuit,
    print_circuit,
)
from polarsolve.ratpoly import MultiPoly, eval_poly, parse_poly

CIRCLE = """
# unit circle
%1 = mul X1 X1
%2 = mul X2 X2
%3 = add %1 %2
%4 = sub %3 1
out %4
"""


def random_circuit(rng: random.Random, nvars=3, size=60, outputs=2, max_deg=8) -> Circuit:
    b = CircuitBuilder(nvars, fold=False)
    pool = [b.input(j) for j in range(1, nvars + 1)]
    deg = {i: 1 for i in pool}
    for _ in range(rng.randint(1, 4)):
        k = b.const(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        pool.append(k)
        deg[k] = 0
    ops = 0
    while ops < size - (len(pool) - nvars):
        a, c = rng.choice(pool), rng.choice(pool)
        kind = rng.choice(["add", "sub", "mul", "mul"])
        if kind == "mul" and deg[a] + deg[c] > max_deg:
            kind = "add"
        idx = b.op(kind, a, c)
        deg[idx] = deg[a] + deg[c] if kind == "mul" else max(deg[a], deg[c])
        pool.append(idx)
        ops += 1
    outs = [pool[-1 - k] for k in range(outputs)]
    return b.build(outs)


def rand_point(rng, n):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]


class TestParse:
    def test_square(self):
        c = parse_circuit("%1 = mul X1 X1; out %1")
        assert eval_circuit(c, [3]) == [9]
        assert expand_circuit(c, 4) == [parse_poly("X1^2", 1)]

    def test_forward_reference(self):
        with pytest.raises(CircuitParseError, match="forward reference"):
            parse_circuit("%1 = add %5 X1\n%5 = mul X1 X1\nout %1")

    def test_unknown_label(self):
        with pytest.raises(CircuitParseError, match="unknown identifier"):
            parse_circuit("%1 = add %7 X1\nout %1")

    def test_unknown_identifier(self):
        with pytest.raises(CircuitParseError, match="unknown identifier"):
            parse_circuit("%1 = add Y1 X1\nout %1")

    def test_division_rejected(self):
        with pytest.raises(CircuitParseError, match="division"):
            parse_circuit("%1 = div X1 X2\nout %1")

    def test_malformed_constant(self):
        with pytest.raises(CircuitParseError, match="malformed constant"):
            parse_circuit("%1 = add X1 3/0\nout %1")
        with pytest.raises(CircuitParseError, match="malformed constant"):
            parse_circuit("%1 = add X1 1.5\nout %1")

    def test_error_line_number(self):
        with pytest.raises(CircuitParseError) as err:
            parse_circuit("%1 = mul X1 X1\n%2 = add %1 Z\nout %2")
        assert err.value.line == 2

    def test_pythagorean_point(self):
        c = parse_circuit(CIRCLE)
        assert eval_circuit(c, [Fraction(3, 5), Fraction(4, 5)]) == [0]

    def test_round_trip(self, rng):
        for _ in range(20):
            c = parse_circuit(print_circuit(random_circuit(rng, size=20)))
            assert parse_circuit(print_circuit(c)) == c

    def test_no_division_nodes_possible(self):
        with pytest.raises(CircuitError):
            Circuit(1, (Node("input", var=1), Node("div", args=(0, 0))), (1,))

    def test_topological_order_enforced(self):
        with pytest.raises(CircuitError):
            Circuit(1, (Node("input", var=1), Node("add", args=(0, 2)),
                        Node("const", value=Fraction(1))), (1,))


class TestEvaluate:
    def test_constant_only(self):
        c = parse_circuit("%1 = add 2 3/2\nout %1\nout 7", nvars=2)
        assert eval_circuit(c, [11, -4]) == [Fraction(7, 2), 7]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            eval_circuit(parse_circuit(CIRCLE), [1])

    def test_random_against_expansion(self, rng):
        for _ in range(30):
            c = random_circuit(rng)
            polys = expand_circuit(c, 64)
            x = rand_point(rng, c.nvars)
            assert eval_circuit(c, x) == [eval_poly(f, x) for f in polys]


class TestExpand:
    def test_circle(self):
        assert expand_circuit(parse_circuit(CIRCLE), 4) == [parse_poly("X1^2+X2^2-1", 2)]

    def test_degree_cap(self):
        src = "\n".join(f"%{k} = mul {'X1' if k == 1 else f'%{k - 1}'} "
                        f"{'X1' if k == 1 else f'%{k - 1}'}" for k in range(1, 6)) + "\nout %5"
        c = parse_circuit(src)
        with pytest.raises(DegreeCapExceeded):
            expand_circuit(c, 16)
        assert expand_circuit(c, 32)[0].degree() == 32

    def test_from_polys(self, rng):
        f = parse_poly("(X1^2+X2^2+X3^2+3)^2-16*(X1^2+X2^2)", 3)
        assert expand_circuit(circuit_from_polys([f]), 8) == [f]


class TestDifferentiate:
    def test_square(self, rng):
        d = differentiate_circuit(parse_circuit("%1 = mul X1 X1\nout %1"))
        for _ in range(10):
            x = rand_point(rng, 1)
            assert eval_circuit(d, x) == [2 * x[0]]

    def test_constant_gradient(self):
        d = differentiate_circuit(parse_circuit("%1 = mul 3 5\nout %1", nvars=2))
        assert eval_circuit(d, [1, 2]) == [0, 0]

    def test_circle(self):
        d = differentiate_circuit(parse_circuit(CIRCLE))
        assert expand_circuit(d) == [parse_poly("2*X1", 2), parse_poly("2*X2", 2)]

    def test_random_against_symbolic(self, rng):
        for _ in range(25):
            c = random_circuit(rng, size=rng.randint(5, 60))
            polys = expand_circuit(c, 64)
            d = differentiate_circuit(c)
            expected = [f.diff(j) for f in polys for j in range(1, c.nvars + 1)]
            assert expand_circuit(d, 64) == expected
            rows = len(c.outputs)
            assert metrics(d).size_L <= rows * (5 * metrics(c).size_L + c.nvars + 2)


class TestMetrics:
    def test_single_mul(self):
        m = metrics(parse_circuit("%1 = mul X1 X1\nout %1"))
        assert (m.size_L, m.nonscalar_depth_ell) == (1, 1)

    @pytest.mark.parametrize("k", [1, 3, 7])
    def test_addition_chain(self, k):
        lines = ["%1 = add X1 X2"] + [f"%{i} = add %{i - 1} X{1 + i % 2}" for i in range(2, k + 1)]
        m = metrics(parse_circuit("\n".join(lines) + f"\nout %{k}"))
        assert (m.size_L, m.nonscalar_depth_ell) == (k, 0)

    def test_balanced_product(self):
        m = metrics(parse_circuit("%1 = mul X1 X2\n%2 = mul X3 X4\n%3 = mul %1 %2\nout %3"))
        assert (m.size_L, m.nonscalar_depth_ell) == (3, 2)

    def test_scalar_multiplication_is_free(self):
        m = metrics(parse_circuit("%1 = add 2 3\n%2 = mul %1 X1\n%3 = mul %2 X1\nout %3"))
        assert m.nonscalar_depth_ell == 1

    def test_output_order_invariance(self, rng):
        for _ in range(10):
            c = random_circuit(rng, outputs=3)
            flipped = Circuit(c.nvars, c.nodes, tuple(reversed(c.outputs)))
            assert metrics(c) == metrics(flipped)

    def test_depth_bounded_by_size(self, rng):
        for _ in range(10):
            m = metrics(random_circuit(rng))
            assert 0 <= m.nonscalar_depth_ell <= m.size_L
