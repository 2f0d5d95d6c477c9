import pytest

from qhkit.algebra import check_algebra
from qhkit.corpus import E1
from qhkit.linalg import GF, QQ, ZZ
from qhkit.quiver import Quiver, QuiverError, compile_quiver, parse_relation, representation


def test_parse_relation():
    assert parse_relation("b*a - 2*d*c", ["a", "b", "c", "d"]) == [
        (1, ("b", "a")), (-2, ("d", "c"))]
    assert parse_relation("1/2 b a", ["a", "b"])[0][0] == 0.5
    with pytest.raises(QuiverError):
        parse_relation("b*z", ["a", "b"])


def test_single_arrow_is_e1():
    A, _ = compile_quiver(Quiver(["1", "2"], [("a", "1", "2")]), [], QQ)
    B = E1(QQ).algebra
    assert A.dim == 3
    assert A.c == B.c and A.idempotents == B.idempotents


def test_two_arrows_with_zero_relation():
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    A, basis = compile_quiver(Q, ["b*a"], ZZ)
    assert A.dim == 5
    free, _ = compile_quiver(Q, [], ZZ)
    assert free.dim == 6
    check_algebra(A)


def test_commutative_square():
    Q = Quiver(["1", "2", "3", "4"],
               [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
    A, _ = compile_quiver(Q, ["b*a - d*c"], GF(3))
    assert A.dim == 4 + 4 + 1
    A, _ = compile_quiver(Q, ["b*a - d*c"], ZZ)
    assert A.dim == 9


def test_loop_does_not_stabilize():
    Q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(QuiverError, match="did not stabilize by L = 10"):
        compile_quiver(Q, [], QQ, max_length=10)
    A, _ = compile_quiver(Q, ["x*x"], QQ)
    assert A.dim == 2


def test_non_composable_relation():
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    with pytest.raises(QuiverError, match="non-composable"):
        compile_quiver(Q, ["a*b"], QQ)


def test_inhomogeneous_relation():
    Q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(QuiverError, match="homogeneous"):
        compile_quiver(Q, ["x*x*x - x"], QQ)


def test_impure_integral_relation():
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    with pytest.raises(QuiverError, match="not pure"):
        compile_quiver(Q, ["2 b*a"], ZZ)


def test_representation_checks_relations():
    Q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    A, _ = compile_quiver(Q, ["b*a"], GF(2))
    M = representation(A, [1, 1, 1], {"a": [[1]], "b": [[0]]})
    assert M.dimension_vector() == (1, 1, 1)
    with pytest.raises(ValueError):
        representation(A, [1, 1, 1], {"a": [[1]], "b": [[1]]})
