"""Ringel duals B = End_A(T)^op, double duals and a self-duality probe."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Optional

from .algebra import Algebra, AModule, Morphism
from .filtrations import InconsistencyError
from .homological import hom_coordinates, hom_rank, hom_space
from .linalg import Matrix
from .qh import NotQuasiHereditary, QHStructure, ext_orthogonality_table, verify_split_qh
from .tilting import CharacteristicTilting, build_characteristic_tilting


@dataclass
class RingelDualData:
    """B with basis the union of Hom_A(T(l), T(m)); b * b' = b' o b.

    `basis[i]` is (l, m, h) with h : T(l) -> T(m); idempotent f_l is the
    identity of T(l) and sits at index labels.index(l).
    """

    algebra: Algebra
    tilting: CharacteristicTilting
    basis: list
    labels: tuple
    standards: Dict
    qh: QHStructure
    source: QHStructure = field(repr=False)
    _hom_cache: dict = field(default_factory=dict, repr=False)

    def _homs(self, l, X: AModule):
        key = (l, id(X))
        if key not in self._hom_cache:
            self._hom_cache[key] = (X, hom_space(self.tilting.summand(l), X))
        return self._hom_cache[key][1]

    def functor(self, X: AModule, name: str = "") -> AModule:
        """G X = Hom_A(T, X) as a left B-module, b . g = g o b."""
        blocks = [(l, self._homs(l, X)) for l in self.labels]
        weights = [self.labels.index(l) for l, H in blocks for _ in H]
        n = len(weights)
        ring = self.algebra.ring
        offsets, off = {}, 0
        for l, H in blocks:
            offsets[l] = off
            off += len(H)
        action = []
        for (src, tgt, h) in self.basis:
            # b : T(src) -> T(tgt) sends g in Hom(T(tgt), X) to g o b in Hom(T(src), X)
            cols = [[0] * n for _ in range(n)]
            Htgt = dict(blocks)[tgt]
            Hsrc = dict(blocks)[src]
            if Htgt and Hsrc:
                C = hom_coordinates(Hsrc, [g @ h for g in Htgt])
                if C is None:
                    raise InconsistencyError("composite left the Hom lattice")
                for jj in range(len(Htgt)):
                    for ii in range(len(Hsrc)):
                        cols[offsets[src] + ii][offsets[tgt] + jj] = C.rows[ii][jj]
            action.append(Matrix(ring, (tuple(r) for r in cols), n))
        return AModule(self.algebra, action, weights, name=name, check=False)

    def functor_map(self, f: Morphism, GX: Optional[AModule] = None,
                    GY: Optional[AModule] = None) -> Morphism:
        """G f : g -> f o g."""
        GX = GX or self.functor(f.source)
        GY = GY or self.functor(f.target)
        ring = self.algebra.ring
        rows = [[0] * GX.rank for _ in range(GY.rank)]
        ox = oy = 0
        for l in self.labels:
            HX = self._homs(l, f.source)
            HY = self._homs(l, f.target)
            if HX and HY:
                C = hom_coordinates(HY, [f @ g for g in HX])
                if C is None:
                    raise InconsistencyError("composite left the Hom lattice")
                for i in range(len(HY)):
                    for j in range(len(HX)):
                        rows[oy + i][ox + j] = C.rows[i][j]
            ox += len(HX)
            oy += len(HY)
        return Morphism(GX, GY, Matrix(ring, (tuple(r) for r in rows), GX.rank))


def ringel_dual(qh: QHStructure, tilting: Optional[CharacteristicTilting] = None,
                name: str = "") -> RingelDualData:
    """End_A(T)^op with standards Hom_A(T, nabla(l)) and the reversed order, verified."""
    T = tilting or build_characteristic_tilting(qh)
    labels = tuple(qh.labels)
    ring = qh.ring
    basis = []
    homs = {}
    for l in labels:
        for m in labels:
            H = hom_space(T.summand(l), T.summand(m))
            homs[(l, m)] = H
            for h in H:
                basis.append((l, m, h))
    d = len(basis)
    index = {}
    for i, (l, m, h) in enumerate(basis):
        index.setdefault((l, m), []).append(i)
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i, (l1, m1, h1) in enumerate(basis):
        for j, (l2, m2, h2) in enumerate(basis):
            # b_i * b_j = h2 o h1, defined when T(m1) = T(l2)
            if m1 != l2:
                continue
            comp = h2 @ h1
            C = hom_coordinates(homs[(l1, m2)], [comp])
            if C is None:
                raise InconsistencyError("composite of tilting maps left the Hom lattice")
            for k, x in zip(index.get((l1, m2), []), C.column(0)):
                c[i][j][k] = x
    idems = []
    for l in labels:
        D = T.summand(l)
        from .algebra import identity_morphism
        C = hom_coordinates(homs[(l, l)], [identity_morphism(D)])
        vec = [0] * d
        for k, x in zip(index[(l, l)], C.column(0)):
            vec[k] = x
        idems.append(vec)
    unit = [sum(e[k] for e in idems) for k in range(d)]
    names = [f"{l}>{m}:{k}" for k, (l, m, _) in enumerate(basis)]
    B = Algebra(ring, c, unit, idems, names, check=d <= 40,
                name=name or (f"R({qh.algebra.name})" if qh.algebra.name else "R(A)"))
    data = RingelDualData(B, T, basis, labels, {}, None, qh)
    for l in labels:
        data.standards[l] = data.functor(qh.costandard(l), name=f"DeltaB({l})")
    try:
        data.qh = verify_split_qh(B, qh.poset.reversed(), data.standards)
    except NotQuasiHereditary as exc:
        raise InconsistencyError(f"Ringel dual failed verification: {exc}") from exc
    return data


def cartan_delta_matrix(qh: QHStructure) -> tuple:
    """[P(l) : Delta(m)] = rank Hom(P(l), nabla(m)), rows and columns in enumeration order."""
    return tuple(tuple(hom_rank(qh.projective(l), qh.costandard(m)) for m in qh.labels)
                 for l in qh.labels)


def hom_delta_nabla_table(qh: QHStructure) -> tuple:
    return tuple(tuple(hom_rank(qh.standards[l], qh.costandard(m)) for m in qh.labels)
                 for l in qh.labels)


@dataclass
class DoubleDualReport:
    multiplicities: tuple       # (A, R(R(A)))
    hom_tables: tuple
    orthogonality: tuple
    label_counts: tuple
    double_dual: RingelDualData = field(repr=False)

    @property
    def equal(self) -> dict:
        return {
            "multiplicities": self.multiplicities[0] == self.multiplicities[1],
            "hom_table": self.hom_tables[0] == self.hom_tables[1],
            "orthogonality": self.orthogonality[0] == self.orthogonality[1],
            "labels": self.label_counts[0] == self.label_counts[1],
        }

    @property
    def all_equal(self) -> bool:
        return all(self.equal.values())


def double_dual_invariants(qh: QHStructure, max_degree: int = 1) -> DoubleDualReport:
    """Compare Morita-invariant tables of A and R(R(A)) under the identity label matching."""
    first = ringel_dual(qh)
    second = ringel_dual(first.qh)
    rr = second.qh
    rr_fixed = _same_order(rr, qh)
    return DoubleDualReport(
        (cartan_delta_matrix(qh), cartan_delta_matrix(rr_fixed)),
        (hom_delta_nabla_table(qh), hom_delta_nabla_table(rr_fixed)),
        (ext_orthogonality_table(qh, max_degree).passed,
         ext_orthogonality_table(rr_fixed, max_degree).passed),
        (len(qh.labels), len(rr.labels)),
        second,
    )


def _same_order(rr: QHStructure, qh: QHStructure) -> QHStructure:
    if rr.labels != qh.labels:
        raise InconsistencyError("double dual changed the label enumeration")
    return rr


@dataclass
class SelfDualityReport:
    verdict: str                 # "possibly-self-dual" or "not-self-dual"
    witness: Optional[str]
    delta_ranks: tuple           # (A, R(A)) sorted multisets
    cartan_entries: tuple
    total_ranks: tuple


def self_duality_probe(qh: QHStructure, dual: Optional[RingelDualData] = None) -> SelfDualityReport:
    """Necessary conditions for A to be its own Ringel dual; never certifies self-duality."""
    dual = dual or ringel_dual(qh)
    B = dual.qh
    da = tuple(sorted(qh.standards[l].rank for l in qh.labels))
    db = tuple(sorted(B.standards[l].rank for l in B.labels))

    def cartan(s):
        return tuple(sorted(Counter(hom_rank(s.projective(l), s.projective(m))
                                    for l in s.labels for m in s.labels).items()))
    ca, cb = cartan(qh), cartan(B)
    ta, tb = qh.algebra.dim, B.algebra.dim
    witness = None
    if da != db:
        witness = f"standard ranks {list(da)} versus {list(db)}"
    elif ta != tb:
        witness = f"algebra ranks {ta} versus {tb}"
    elif ca != cb:
        witness = "Cartan entries differ"
    verdict = "possibly-self-dual" if witness is None else "not-self-dual"
    return SelfDualityReport(verdict, witness, (da, db), (ca, cb), (ta, tb))
