import pytest

from qhkit.poset import Poset, PosetError


def test_chain_order():
    P = Poset.chain(["a", "b", "c"])
    assert P.less("a", "c") and not P.less("c", "a")
    assert P.decreasing() == ("c", "b", "a")
    assert P.above("a") == ("b", "c")
    assert P.below("c") == ("a", "b")


def test_default_enumeration_is_linear_extension():
    P = Poset(["top", "left", "right", "bottom"],
              [("bottom", "left"), ("bottom", "right"), ("left", "top"), ("right", "top")])
    for a in P.elements:
        for b in P.elements:
            if P.less(a, b):
                assert P.index(a) < P.index(b)
    assert not P.less("left", "right") and not P.less("right", "left")


def test_cycle_rejected():
    with pytest.raises(PosetError):
        Poset(["a", "b"], [("a", "b"), ("b", "a")])


def test_bad_enumeration_rejected():
    with pytest.raises(PosetError):
        Poset(["a", "b"], [("a", "b")], ["b", "a"])


def test_reversed_and_equality():
    P = Poset.chain([1, 2, 3])
    R = P.reversed()
    assert R.less(3, 1)
    assert R.reversed() == P
    assert R != P


def test_product():
    P = Poset.chain([1, 2])
    Q = P.product(P)
    assert len(Q) == 4
    assert Q.less((1, 1), (2, 2))
    assert not Q.less((1, 2), (2, 1))
