"""Standard and costandard filtrations: certificates, extraction and Ext criteria."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AModule, dual_module, quotient, tensor_with_free
from .homological import ext, hom_rank, is_projective, tor1_and_tensor, trace_map
from .linalg import Matrix, is_saturated, kernel_basis, rank, solve


class InconsistencyError(RuntimeError):
    """A computed result contradicts a theorem the computation relies on (a bug or bad input)."""


@dataclass
class FiltrationCertificate:
    """A chain 0 = L_0 < L_1 < ... < L_t = M of pure submodule lattices.

    Layer k is L_k / L_{k-1} ~ X(labels[k-1])^m with m = multiplicities[k-1];
    `witnesses[k-1]` lifts the basis of X^m into M so that [L_{k-1} | W] is a
    basis of L_k and W intertwines modulo L_{k-1}.  For standard filtrations the
    bottom layer carries the largest label; for costandard ones the top does.
    """

    module: AModule
    kind: str
    labels: tuple
    multiplicities: tuple
    chain: tuple
    witnesses: tuple
    layer_modules: tuple = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.labels)

    def multiplicity(self, label) -> int:
        return sum(m for l, m in zip(self.labels, self.multiplicities) if l == label)

    def replay(self) -> bool:
        """Re-check every layer from scratch: invariance, purity, spanning and intertwining."""
        M = self.module
        ring = M.ring
        n = M.rank
        if len(self.chain) != self.length + 1:
            return False
        if self.chain[0].ncols != 0 or rank(self.chain[-1]) != n:
            return False
        if not ring.is_field and self.chain[-1].ncols and not is_saturated(self.chain[-1]):
            return False
        for k in range(1, self.length + 1):
            lo, hi, W = self.chain[k - 1], self.chain[k], self.witnesses[k - 1]
            X = tensor_with_free(self.layer_modules[k - 1], self.multiplicities[k - 1])
            if W.shape != (n, X.rank):
                return False
            B = lo.hstack(W)
            if rank(B) != B.ncols or B.ncols != hi.ncols:
                return False
            if solve(B, hi) is None or solve(hi, B) is None:
                return False
            if hi.ncols and not is_saturated(hi):
                return False
            for rho_m, rho_x in zip(M.action, X.action):
                if hi.ncols and solve(hi, rho_m @ hi) is None:
                    return False
                diff = rho_m @ W - W @ rho_x
                if diff.is_zero():
                    continue
                if lo.ncols == 0 or solve(lo, diff) is None:
                    return False
        return True


def peel_standards(M: AModule, standards: Sequence) -> tuple:
    """Peel traces of (label, Delta) pairs, listed in decreasing order, off M.

    Returns (certificate, None) on success or (None, reason).
    """
    ring = M.ring
    n = M.rank
    cur = M
    lift = Matrix.identity(ring, n)
    S = Matrix.zeros(ring, n, 0)
    chain, labels, mults, wits, mods = [S], [], [], [], []
    for lam, D in standards:
        if cur.rank == 0:
            break
        tr = trace_map(D, cur)
        m = tr.multiplicity
        if m == 0:
            continue
        if not tr.injective:
            return None, f"trace of standard {lam} is not injective"
        if not tr.saturated:
            return None, f"trace of standard {lam} is not a pure sublattice"
        W = lift @ tr.morphism.matrix
        S = S.hstack(W)
        chain.append(S)
        labels.append(lam)
        mults.append(m)
        wits.append(W)
        mods.append(D)
        cur, _, C = quotient(cur, tr.image)
        lift = lift @ C
    if cur.rank:
        return None, f"a remainder of rank {cur.rank} has no standard in its trace"
    cert = FiltrationCertificate(M, "delta", tuple(labels), tuple(mults), tuple(chain),
                                 tuple(wits), tuple(mods))
    return cert, None


def _decreasing_standards(qh, labels=None):
    labels = qh.poset.decreasing() if labels is None else labels
    return [(lam, qh.standards[lam]) for lam in labels]


def try_delta_filtration(M: AModule, qh) -> tuple:
    """(certificate, None) or (None, reason); an exact decision of membership in F(Delta)."""
    return peel_standards(M, _decreasing_standards(qh))


def extract_delta_filtration(M: AModule, qh) -> FiltrationCertificate:
    cert, reason = try_delta_filtration(M, qh)
    if cert is None:
        raise ValueError(f"module has no standard filtration: {reason}")
    return cert


def has_delta_filtration(M: AModule, qh) -> bool:
    """Ext^1(M, costandard(l)) = 0 for every label (free rank and torsion)."""
    return all(ext(M, qh.costandard(lam), 1).is_zero() for lam in qh.poset)


def has_nabla_filtration(N: AModule, qh) -> bool:
    """Ext^1(standard(l), N) = 0 for every label."""
    return all(ext(qh.standards[lam], N, 1).is_zero() for lam in qh.poset)


def _annihilator(K: Matrix) -> Matrix:
    n = K.nrows
    if K.ncols == 0:
        return Matrix.identity(K.ring, n)
    return kernel_basis(K.T)


def try_nabla_filtration(N: AModule, qh) -> tuple:
    """Costandard filtration of N obtained by peeling D N over the opposite algebra."""
    op = qh.opposite()
    DN = dual_module(N)
    cert, reason = try_delta_filtration(DN, op)
    if cert is None:
        return None, reason
    ring = N.ring
    t = cert.length
    K = cert.chain
    chain = [_annihilator(K[t - j]) if j else Matrix.zeros(ring, N.rank, 0) for j in range(t + 1)]
    chain[-1] = Matrix.identity(ring, N.rank)
    labels, mults, wits, mods = [], [], [], []
    for k in range(1, t + 1):
        i = t - k + 1
        Wop = cert.witnesses[i - 1]
        lo = K[i - 1]
        lhs = lo.T.vstack(Wop.T) if lo.ncols else Wop.T
        rhs = Matrix.zeros(ring, lo.ncols, Wop.ncols).vstack(Matrix.identity(ring, Wop.ncols))
        V = solve(lhs, rhs)
        if V is None:
            raise InconsistencyError("dual basis of a costandard layer does not exist")
        labels.append(cert.labels[i - 1])
        mults.append(cert.multiplicities[i - 1])
        wits.append(V)
        mods.append(qh.costandard(cert.labels[i - 1]))
    out = FiltrationCertificate(N, "nabla", tuple(labels), tuple(mults), tuple(chain),
                                tuple(wits), tuple(mods))
    return out, None


def extract_nabla_filtration(N: AModule, qh) -> FiltrationCertificate:
    cert, reason = try_nabla_filtration(N, qh)
    if cert is None:
        raise ValueError(f"module has no costandard filtration: {reason}")
    return cert


def ext_projective_check(M: AModule, qh) -> bool:
    """For M with a standard filtration: Ext^1(M, Delta) = 0 for all standards, cross-checked
    against a direct split-surjection test for projectivity."""
    by_ext = all(ext(M, qh.standards[lam], 1).is_zero() for lam in qh.poset)
    direct = is_projective(M)
    if by_ext != direct:
        raise InconsistencyError(
            f"Ext criterion says projective={by_ext} but the direct test says {direct}")
    return by_ext


def delta_multiplicity(M: AModule, qh, lam, check: bool = True) -> int:
    """Multiplicity of standard(lam) in M, read off as rank Hom(M, costandard(lam))."""
    if check and not has_delta_filtration(M, qh):
        raise ValueError("module has no standard filtration")
    return hom_rank(M, qh.costandard(lam))


def nabla_multiplicity(N: AModule, qh, lam, check: bool = True) -> int:
    if check and not has_nabla_filtration(N, qh):
        raise ValueError("module has no costandard filtration")
    return hom_rank(qh.standards[lam], N)


@dataclass
class HomLayerTable:
    rows: list          # (label, m_label(M), m_label(N), product)
    total: int
    hom_rank: int

    @property
    def consistent(self) -> bool:
        return self.total == self.hom_rank


def hom_filtration_ranks(M: AModule, N: AModule, qh, check: bool = True) -> HomLayerTable:
    """rank Hom(M, N) against the layer sum of m(M) * m(N) over labels."""
    if check:
        if not has_delta_filtration(M, qh):
            raise ValueError("first module has no standard filtration")
        if not has_nabla_filtration(N, qh):
            raise ValueError("second module has no costandard filtration")
    rows = []
    for lam in qh.poset:
        a = hom_rank(M, qh.costandard(lam))
        b = hom_rank(qh.standards[lam], N)
        rows.append((lam, a, b, a * b))
    total = sum(r[3] for r in rows)
    return HomLayerTable(rows, total, hom_rank(M, N))


def tor_flatness_check(N: AModule, M: AModule, qh=None, check: bool = False) -> bool:
    """Tor_1(D N, M) = 0 and D N (x) M torsion-free."""
    if check and qh is not None:
        if not (has_nabla_filtration(N, qh) and has_delta_filtration(M, qh)):
            raise ValueError("membership precondition violated")
    res = tor1_and_tensor(dual_module(N), M)
    return res.tor1_zero and not res.tensor_torsion
