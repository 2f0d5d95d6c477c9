import pytest
from hypothesis import given, settings, strategies as st

from qhkit.algebra import projective_module
from qhkit.corpus import (
    E1, E1_wrong_order, E1xE1, E2, corpus, dual_number_candidates, dual_numbers, quiver_item,
    random_triangular, trivial,
)
from qhkit.homological import find_isomorphism, hom_rank
from qhkit.linalg import GF, QQ, ZZ
from qhkit.poset import Poset
from qhkit.qh import (
    NotQuasiHereditary, ext_orthogonality_table, verify_costandard_axioms,
    verify_split_qh,
)

RINGS = [GF(2), GF(5), QQ, ZZ]


@pytest.mark.parametrize("ring", RINGS)
def test_chain_ranks(ring):
    want = {"R": (1,), "E1": (2, 1), "E2": (2, 2, 1), "E1xE1": (4, 2, 2, 1)}
    for item in corpus(ring):
        qh = item.verify()
        assert sum(qh.chain_ranks()) == item.algebra.dim
        if item.name in want:
            assert qh.chain_ranks() == want[item.name]


def test_e1_standards():
    qh = E1(ZZ).verify()
    assert qh.standards["1"].rank == 2 and qh.standards["2"].rank == 1
    assert find_isomorphism(qh.standards["1"], qh.projective("1")) is not None
    assert qh.costandard("1").rank == 1 and qh.costandard("2").rank == 1


def test_e2_standards_are_simple():
    qh = E2(QQ).verify()
    assert [qh.standards[l].rank for l in qh.labels] == [1, 1, 1]
    assert [qh.costandard(l).rank for l in qh.labels] == [1, 2, 2]


@pytest.mark.parametrize("ring", [GF(3), ZZ])
def test_costandards_pair_with_standards(ring):
    for item in corpus(ring):
        qh = item.verify()
        for lam in qh.labels:
            for mu in qh.labels:
                assert hom_rank(qh.standards[lam], qh.costandard(mu)) == int(lam == mu)
        assert verify_costandard_axioms(qh)


def test_opposite_structure():
    qh = E2(ZZ).verify()
    op = qh.opposite()
    assert op.algebra is qh.algebra.opposite()
    assert op.chain_ranks() == qh.chain_ranks()
    assert ext_orthogonality_table(op, 1).passed


def test_standard_modules_of_minimal_label_are_projective():
    item = E2(QQ)
    P = projective_module(item.algebra, 2)
    assert find_isomorphism(item.standards["3"], P) is not None


def test_wrong_order_rejected_by_axiom_ii():
    with pytest.raises(NotQuasiHereditary) as info:
        E1_wrong_order(ZZ).verify()
    assert info.value.axiom == "ii"
    lam, mu, f = info.value.witness
    assert (lam, mu) == ("2", "1") and not f.is_zero()


@pytest.mark.parametrize("ring", RINGS)
def test_dual_numbers_rejected(ring):
    A = dual_numbers(ring)
    reg, simple = dual_number_candidates(ring)
    with pytest.raises(NotQuasiHereditary) as info:
        verify_split_qh(A, Poset(["1"]), {"1": reg})
    assert info.value.axiom == "iii"
    with pytest.raises(NotQuasiHereditary) as info:
        verify_split_qh(A, Poset(["1"]), {"1": simple})
    assert info.value.axiom == "iv"


def test_standard_not_projective_modulo_higher_is_axiom_iv():
    e2 = E2(QQ)
    with pytest.raises(NotQuasiHereditary) as info:
        verify_split_qh(e2.algebra, Poset.chain(["3", "2", "1"]), e2.standards)
    assert info.value.axiom == "iv"


def test_incomplete_chain_is_axiom_v():
    A = E1(QQ).algebra
    with pytest.raises(NotQuasiHereditary) as info:
        verify_split_qh(A, Poset(["2"]), {"2": projective_module(A, 1)})
    assert info.value.axiom == "v"


def test_label_mismatch_is_input_error():
    e1 = E1(QQ)
    with pytest.raises(ValueError):
        verify_split_qh(e1.algebra, Poset(["1"]), e1.standards)


def test_standard_modules_reversed_order():
    item = quiver_item("E2r", QQ, ["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], ["b*a"],
                       Poset.chain(["3", "2", "1"]))
    qh = item.verify()
    assert [qh.standards[l].rank for l in ("1", "2", "3")] == [2, 2, 1]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 200), st.sampled_from([GF(2), ZZ]))
def test_random_hereditary_algebras_verify(seed, ring):
    item = random_triangular(ring, seed=seed)
    qh = item.verify()
    assert sum(qh.chain_ranks()) == item.algebra.dim
    assert ext_orthogonality_table(qh, 1).passed


def test_trivial_algebra():
    qh = trivial(ZZ).verify()
    assert qh.chain_ranks() == (1,)


def test_product_labels():
    qh = E1xE1(GF(2)).verify()
    assert set(qh.labels) == {"11", "12", "21", "22"}
    assert qh.poset.less("22", "11")
