import pytest

from qhkit.corpus import E1, E2, E1xE1, corpus, trivial
from qhkit.homological import hom_rank
from qhkit.linalg import GF, QQ, ZZ
from qhkit.ringel import (
    cartan_delta_matrix, double_dual_invariants, hom_delta_nabla_table, ringel_dual,
    self_duality_probe,
)


def test_ringel_dual_of_e2():
    qh = E2(ZZ).verify()
    R = ringel_dual(qh)
    assert R.algebra.dim == sum(hom_rank(R.tilting.summand(l), R.tilting.summand(m))
                                for l in qh.labels for m in qh.labels)
    assert R.qh.poset == qh.poset.reversed()
    assert [R.standards[l].rank for l in ("1", "2", "3")] == [2, 2, 1]


def test_functor_sends_costandards_to_standards():
    qh = E1xE1(GF(2)).verify()
    R = ringel_dual(qh)
    for lam in qh.labels:
        assert R.qh.standards[lam].rank == sum(hom_rank(R.tilting.summand(m), qh.costandard(lam))
                                              for m in qh.labels)


def test_functor_map_composes():
    qh = E2(QQ).verify()
    R = ringel_dual(qh)
    T = R.tilting
    from qhkit.homological import hom_space
    X, Y = T.summand("2"), T.summand("3")
    for f in hom_space(X, Y):
        Gf = R.functor_map(f)
        assert Gf.is_intertwiner()


@pytest.mark.parametrize("ring", [GF(2), ZZ])
def test_double_dual(ring):
    for item in corpus(ring):
        rep = double_dual_invariants(item.verify())
        assert rep.all_equal, (item.name, rep.equal)


def test_matrices_of_e2():
    qh = E2(ZZ).verify()
    assert cartan_delta_matrix(qh) == ((1, 1, 0), (0, 1, 1), (0, 0, 1))
    assert hom_delta_nabla_table(qh) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_self_duality_probe():
    e1 = self_duality_probe(E1(ZZ).verify())
    assert e1.verdict == "not-self-dual"
    assert e1.delta_ranks == ((1, 2), (1, 1))
    r = self_duality_probe(trivial(ZZ).verify())
    assert r.verdict == "possibly-self-dual" and r.witness is None


def test_ringel_dual_is_quasi_hereditary_over_fields():
    for ring in (GF(5), QQ):
        for item in corpus(ring):
            qh = item.verify()
            R = ringel_dual(qh)
            assert sum(R.qh.chain_ranks()) == R.algebra.dim
