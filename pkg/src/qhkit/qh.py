"""Split quasi-hereditary structures: verification, heredity chains and costandard modules.

The verifier walks the labels from the top of the enumeration downwards.  At
label l it works over A_cur = A / J where J is the ideal generated by the
higher standards, and checks that

* J annihilates Delta(l),
* Delta(l) is isomorphic to A_cur e_a for one of the designated idempotents,
* the trace of Delta(l) in A_cur is an (A, R)-monomorphism with saturated
  image, giving the next (two-sided) ideal of the heredity chain.

Passing these together with the Hom conditions is equivalent to the module
axioms, and the run produces the projectives P(l) = A e_a, the kernels C(l)
with their standard filtrations, and the chain itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Optional

from .algebra import (
    AModule, Algebra, Morphism, check_module, dual_module, identity_morphism, kernel,
    projective_module, quotient, regular_module, submodule,
)
from .filtrations import InconsistencyError, peel_standards
from .homological import ext, hom_coordinates, hom_rank, hom_space, trace_map
from .linalg import Matrix, cokernel_invariants, rank, solve
from .poset import Poset


class NotQuasiHereditary(Exception):
    """Refutation of one axiom; `axiom` is one of 'i'..'v', `witness` is optional data."""

    def __init__(self, axiom: str, message: str, witness=None):
        super().__init__(f"axiom ({axiom}) fails: {message}")
        self.axiom = axiom
        self.message = message
        self.witness = witness


@dataclass
class HeredityLayer:
    label: object
    idempotent: int
    generator: tuple
    epimorphism: Morphism
    ideal_above: Matrix      # J_{>label}, columns in algebra coordinates
    ideal: Matrix            # J_{>=label}
    hom_rank: int            # rank Hom(Delta(label), A / J_{>label})

    @property
    def layer_rank(self) -> int:
        return self.ideal.ncols - self.ideal_above.ncols


@dataclass
class QHStructure:
    algebra: Algebra
    poset: Poset
    standards: Dict
    layers: Dict = field(default_factory=dict)
    kernels: Dict = field(default_factory=dict)          # label -> (C, inclusion, certificate)
    costandards: Dict = field(default_factory=dict)
    op_standards: Dict = field(default_factory=dict)
    _opposite: Optional["QHStructure"] = field(default=None, repr=False)

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def labels(self) -> tuple:
        return self.poset.enumeration

    def projective(self, lam) -> AModule:
        return self.layers[lam].epimorphism.source

    def costandard(self, lam) -> AModule:
        if lam not in self.costandards:
            compute_costandards(self)
        return self.costandards[lam]

    def chain_ranks(self) -> tuple:
        """Layer ranks of the heredity chain from the top label down."""
        return tuple(self.layers[lam].layer_rank for lam in self.poset.decreasing())

    def opposite(self) -> "QHStructure":
        """The structure on A^op with standards D costandard(l)."""
        if self._opposite is None:
            compute_costandards(self)
            op = verify_split_qh(self.algebra.opposite(), self.poset, dict(self.op_standards))
            op._opposite = self
            op.op_standards = dict(self.standards)
            op.costandards = {lam: dual_module(self.standards[lam]) for lam in self.labels}
            self._opposite = op
        return self._opposite


def _candidate_generators(D: AModule, a: int, rng: random.Random):
    idx = D.weight_indices(a)
    n = D.rank
    k = len(idx)

    def vec(coeffs):
        v = [0] * n
        for i, c in zip(idx, coeffs):
            v[i] = c
        return tuple(v)

    for j in range(k):
        yield vec([1 if t == j else 0 for t in range(k)])
    if k == 1:
        return
    ring = D.ring
    if ring.kind == "GF" and ring.p ** k <= 256:
        for coeffs in product(range(ring.p), repeat=k):
            yield vec(coeffs)
        return
    if ring.kind == "ZZ" and 3 ** k <= 729:
        for coeffs in product((-1, 0, 1), repeat=k):
            yield vec(coeffs)
    for _ in range(32):
        yield vec([rng.randint(-3, 3) for _ in range(k)])


def _cyclic_cover(A: Algebra, D: AModule, J: Matrix, seed: int = 0):
    """(a, v, epimorphism A e_a -> D) exhibiting D ~ (A/J) e_a, or None."""
    rng = random.Random(seed)
    for a in range(A.num_idempotents):
        P = projective_module(A, a)
        e = A.idempotents[a]
        Je = A.right_mult(e) @ J if J.ncols else J
        cur_rank = P.rank - (rank(Je) if J.ncols else 0)
        if cur_rank != D.rank or not D.weight_indices(a):
            continue
        for v in _candidate_generators(D, a, rng):
            if not any(v):
                continue
            F = Matrix.from_columns(D.ring, [D.action[i].apply(v) for i in P.basis_indices], D.rank)
            if rank(F) != D.rank:
                continue
            if cokernel_invariants(F) != (0, ()):
                continue
            return a, v, Morphism(P, D, F)
    return None


def verify_split_qh(A: Algebra, poset: Poset, standards: Dict, seed: int = 0) -> QHStructure:
    """Decide whether (A, standards) is split quasi-hereditary for `poset`.

    Returns a QHStructure or raises NotQuasiHereditary naming the failing axiom.
    """
    labels = poset.enumeration
    if set(standards) != set(labels):
        raise ValueError("standard modules must be given for exactly the poset labels")
    for lam in labels:
        D = standards[lam]
        if not D.algebra.same_as(A):
            raise NotQuasiHereditary("i", f"standard {lam} is not a module over this algebra")
        try:
            check_module(D)
        except ValueError as exc:
            raise NotQuasiHereditary("i", f"standard {lam}: {exc}") from exc
    # (ii): pairwise homomorphisms respect the order
    for lam in labels:
        for mu in labels:
            if lam == mu:
                continue
            H = hom_space(standards[lam], standards[mu])
            if H and not poset.leq(lam, mu):
                raise NotQuasiHereditary(
                    "ii", f"Hom(Delta({lam}), Delta({mu})) has rank {len(H)} but {lam} is not "
                    f"below {mu}", witness=(lam, mu, H[0]))
    # (iii): End = R, generated by the identity
    for lam in labels:
        D = standards[lam]
        H = hom_space(D, D)
        if len(H) != 1 or hom_coordinates(H, [identity_morphism(D)]) is None:
            raise NotQuasiHereditary(
                "iii", f"End(Delta({lam})) has rank {len(H)}, expected the ground ring",
                witness=(lam, len(H)))
    qh = QHStructure(A, poset, dict(standards))
    reg = regular_module(A)
    ring = A.ring
    J = Matrix.zeros(ring, A.dim, 0)
    for lam in poset.decreasing():
        D = standards[lam]
        for col in J.columns():
            if not D.act(col).is_zero():
                raise NotQuasiHereditary(
                    "iv", f"Delta({lam}) is not annihilated by the ideal of higher standards",
                    witness=(lam, col))
        cover = _cyclic_cover(A, D, J, seed)
        if cover is None:
            raise NotQuasiHereditary(
                "iv", f"Delta({lam}) is not projective over A modulo the higher standards",
                witness=lam)
        a, v, epi = cover
        Q, proj, C = quotient(reg, J)
        tr = trace_map(D, Q)
        if not tr.injective or not tr.saturated:
            raise NotQuasiHereditary(
                "iv", f"trace of Delta({lam}) in A/J is not an (A,R)-monomorphism", witness=lam)
        Jnew = J.hstack(C @ tr.image) if tr.image.ncols else J
        for Rj in A.right_matrices:
            if solve(Jnew, Rj @ Jnew) is None:
                raise InconsistencyError(f"trace ideal at {lam} is not two-sided")
        qh.layers[lam] = HeredityLayer(lam, a, v, epi, J, Jnew, tr.multiplicity)
        J = Jnew
    if J.ncols != A.dim:
        raise NotQuasiHereditary(
            "v", f"the heredity chain stops at rank {J.ncols} < {A.dim}", witness=J.ncols)
    _check_generator(A, [qh.layers[lam].idempotent for lam in labels])
    # (iv) certificates for C(l) = ker(P(l) -> Delta(l))
    for lam in labels:
        epi = qh.layers[lam].epimorphism
        Cmod, inc = kernel(epi)
        higher = [mu for mu in poset.decreasing() if poset.index(mu) > poset.index(lam)]
        cert, reason = peel_standards(Cmod, [(mu, standards[mu]) for mu in higher])
        if cert is None:
            raise InconsistencyError(f"kernel of the cover of Delta({lam}): {reason}")
        for mu, m in zip(cert.labels, cert.multiplicities):
            if not poset.less(lam, mu):
                raise NotQuasiHereditary(
                    "iv", f"C({lam}) has Delta({mu}) as a layer but {mu} is not above {lam}",
                    witness=(lam, mu))
        qh.kernels[lam] = (Cmod, inc, cert)
    return qh


def _check_generator(A: Algebra, idems):
    """(v): the two-sided ideal generated by the chosen idempotents is A."""
    cols = []
    for a in set(idems):
        e = A.idempotents[a]
        for i in range(A.dim):
            x = A.mul(A.basis_vector(i), e)
            if not any(x):
                continue
            for j in range(A.dim):
                y = A.mul(x, A.basis_vector(j))
                if any(y):
                    cols.append(y)
    S = Matrix.from_columns(A.ring, cols, A.dim)
    if rank(S) != A.dim or cokernel_invariants(S) != (0, ()):
        raise NotQuasiHereditary("v", "the chosen projectives do not generate A-proj")


def compute_costandards(qh: QHStructure) -> Dict:
    """costandard(l) = D Hom_A(Delta(l), A / J_{>l}) with the right A-action on A / J_{>l}."""
    A = qh.algebra
    Aop = A.opposite()
    reg = regular_module(A)
    for lam in qh.poset.decreasing():
        if lam in qh.costandards:
            continue
        D = qh.standards[lam]
        J = qh.layers[lam].ideal_above
        Q, proj, C = quotient(reg, J)
        P = proj.matrix
        H = hom_space(D, Q)
        mats = []
        for Rj in A.right_matrices:
            Rq = P @ Rj @ C
            X = hom_coordinates(H, [Morphism(D, Q, Rq @ h.matrix) for h in H])
            if X is None:
                raise InconsistencyError("right multiplication leaves Hom(Delta, A/J)")
            mats.append(X)
        Dop = AModule.from_action(Aop, mats, name=f"Dop({lam})", check=True)
        nabla = dual_module(Dop, name=f"nabla({lam})")
        if hom_rank(D, nabla) != 1:
            raise InconsistencyError(f"rank Hom(Delta({lam}), nabla({lam})) != 1")
        qh.op_standards[lam] = Dop
        qh.costandards[lam] = nabla
    total = sum(qh.standards[l].rank * qh.op_standards[l].rank for l in qh.labels)
    if total != A.dim:
        raise InconsistencyError(f"sum of rank Delta * rank Delta_op is {total}, not {A.dim}")
    return qh.costandards


@dataclass
class OrthogonalityTable:
    cells: list      # (lam, beta, degree, free rank, torsion, ok)

    @property
    def passed(self) -> bool:
        return all(c[5] for c in self.cells)

    @property
    def offending(self) -> list:
        return [c for c in self.cells if not c[5]]


def ext_orthogonality_table(qh: QHStructure, max_degree: int = 2) -> OrthogonalityTable:
    """Ext^i(Delta(l), nabla(b)) for i <= max_degree: rank one exactly when i = 0 and l = b."""
    cells = []
    for lam in qh.labels:
        D = qh.standards[lam]
        for beta in qh.labels:
            N = qh.costandard(beta)
            for i in range(max_degree + 1):
                if i == 0:
                    free, tors = hom_rank(D, N), ()
                else:
                    E = ext(D, N, i)
                    free, tors = E.free_rank, E.torsion
                want = 1 if (i == 0 and lam == beta) else 0
                cells.append((lam, beta, i, free, tors, free == want and not tors))
    return OrthogonalityTable(cells)


def verify_costandard_axioms(qh: QHStructure) -> bool:
    """Dual axiomatization: the op structure with standards D nabla verifies, and the
    costandards are Ext-orthogonal to the standards."""
    qh.opposite()
    return ext_orthogonality_table(qh, 1).passed


def standard_modules(A: Algebra, poset: Poset, vertex: Optional[Dict] = None) -> Dict:
    """Delta(l) = A e_l modulo the trace of all A e_m with m not below or equal to l.

    `vertex` maps labels to idempotent indices (default: position in poset.elements).
    """
    vertex = vertex or {lam: i for i, lam in enumerate(poset.elements)}
    out = {}
    for lam in poset.elements:
        P = projective_module(A, vertex[lam])
        bad = {vertex[mu] for mu in poset.elements if not poset.leq(mu, lam)}
        idx = [k for k, w in enumerate(P.weights) if w in bad]
        gens = Matrix.from_columns(A.ring, [tuple(1 if t == k else 0 for t in range(P.rank))
                                            for k in idx], P.rank)
        U, inc = submodule(P, gens)
        D, _, _ = quotient(P, inc.matrix, name=f"Delta({lam})")
        out[lam] = D
    return out
