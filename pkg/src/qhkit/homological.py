"""Hom, projective presentations, Ext, pushout extensions, Tor_1 and tensor."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from .algebra import (
    AlgebraError, AModule, Morphism, direct_sum, projective_module, quotient,
    kernel as kernel_module,
)
from .linalg import (
    Matrix, cokernel_invariants, determinant, kernel_basis, linear_combination, smith_form,
    solve, sparse_kernel, rank,
)


def _same_algebra(M: AModule, N: AModule):
    if not M.algebra.same_as(N.algebra):
        raise AlgebraError("modules live over different algebras")


def _hom_layout(M: AModule, N: AModule):
    """Variable offsets for the weight blocks F_a : e_a M -> e_a N."""
    layout = {}
    off = 0
    for a in range(M.algebra.num_idempotents):
        mi, ni = M.weight_indices(a), N.weight_indices(a)
        layout[a] = (off, mi, ni)
        off += len(mi) * len(ni)
    return layout, off


def hom_space(M: AModule, N: AModule) -> list:
    """Basis of Hom_A(M, N); over ZZ a basis of the lattice of integral intertwiners."""
    _same_algebra(M, N)
    ring = M.ring
    layout, nvars = _hom_layout(M, N)
    if nvars == 0:
        return []
    nblocks = {g: blk for g, _, _, blk in N.generator_blocks}
    rows = []
    for g, r, l, GM in M.generator_blocks:
        GN = nblocks[g]
        off_l, _, nl = layout[l]
        off_r, mr, _ = layout[r]
        ml = len(layout[l][1])
        nr = len(layout[r][2])
        # F_l GM - GN F_r = 0, F_l is |nl| x |ml|, F_r is |nr| x |mr|
        gm_cols = [[(k, GM.rows[k][j]) for k in range(ml) if GM.rows[k][j]] for j in range(len(mr))]
        gn_rows = [[(k, x) for k, x in enumerate(GN.rows[i]) if x] for i in range(len(nl))]
        for i in range(len(nl)):
            for j in range(len(mr)):
                eq = {}
                for k, x in gm_cols[j]:
                    v = off_l + i * ml + k
                    eq[v] = eq.get(v, 0) + x
                for k, x in gn_rows[i]:
                    v = off_r + k * len(mr) + j
                    eq[v] = eq.get(v, 0) - x
                if eq:
                    rows.append(eq)
    K = sparse_kernel(ring, rows, nvars)
    out = []
    for vec in K.columns():
        F = [[0] * M.rank for _ in range(N.rank)]
        for a, (off, mi, ni) in layout.items():
            w = len(mi)
            for i, ti in enumerate(ni):
                for j, sj in enumerate(mi):
                    x = vec[off + i * w + j]
                    if x:
                        F[ti][sj] = x
        out.append(Morphism(M, N, Matrix(ring, (tuple(r) for r in F), M.rank, _trusted=True)))
    return out


def hom_rank(M: AModule, N: AModule) -> int:
    return len(hom_space(M, N))


def _flatten_positions(M: AModule, N: AModule):
    return [(i, j) for a in range(M.algebra.num_idempotents)
            for i in N.weight_indices(a) for j in M.weight_indices(a)]


def hom_coordinates(basis: Sequence[Morphism], maps: Sequence[Morphism]) -> Optional[Matrix]:
    """Coordinates (as columns) of `maps` in the Hom basis; None if some map is outside."""
    if not maps:
        return Matrix.zeros(basis[0].matrix.ring if basis else None, len(basis), 0)
    M, N = maps[0].source, maps[0].target
    ring = M.ring
    pos = _flatten_positions(M, N)
    if not basis:
        if all(f.is_zero() for f in maps):
            return Matrix.zeros(ring, 0, len(maps))
        return None
    H = Matrix.from_columns(ring, [[h.matrix.rows[i][j] for i, j in pos] for h in basis], len(pos))
    G = Matrix.from_columns(ring, [[f.matrix.rows[i][j] for i, j in pos] for f in maps], len(pos))
    return solve(H, G)


# ---------------------------------------------------------------------------
# Projective covers and presentations


class ProjectiveSum:
    """P = direct sum of A e_{a_s}; summand s is generated by its idempotent."""

    def __init__(self, algebra, summands: Sequence[int]):
        self.algebra = algebra
        self.summands = tuple(summands)
        parts = [projective_module(algebra, a) for a in self.summands]
        self.parts = parts
        self.offsets = []
        off = 0
        for P in parts:
            self.offsets.append(off)
            off += P.rank
        self.module = direct_sum(*parts) if parts else _zero(algebra)

    def map_from_images(self, N: AModule, images: Sequence[Sequence]) -> Morphism:
        """The map sending the generator of summand s to images[s] (which lies in e_a N)."""
        cols = []
        for P, y in zip(self.parts, images):
            for i in P.basis_indices:
                cols.append(N.action[i].apply(y))
        return Morphism(self.module, N, Matrix.from_columns(N.ring, cols, N.rank))

    def hom_basis(self, N: AModule) -> list:
        out = []
        zero = (0,) * N.rank
        for s, a in enumerate(self.summands):
            for k in N.weight_indices(a):
                y = tuple(1 if t == k else 0 for t in range(N.rank))
                images = [zero] * len(self.summands)
                images[s] = y
                out.append(self.map_from_images(N, images))
        return out

    def generator_image(self, f: Morphism, s: int) -> tuple:
        P = self.parts[s]
        g = P.generator
        off = self.offsets[s]
        vec = [0] * self.module.rank
        for k, x in enumerate(g):
            vec[off + k] = x
        return f.matrix.apply(vec)

    def component(self, vec, s: int) -> tuple:
        """Algebra-coordinate element of the summand-s component of a vector of P."""
        P = self.parts[s]
        off = self.offsets[s]
        out = [0] * self.algebra.dim
        for k, i in enumerate(P.basis_indices):
            out[i] = vec[off + k]
        return tuple(out)


def _zero(A):
    from .algebra import zero_module
    return zero_module(A)


@dataclass
class Presentation:
    """0 -> omega --iota--> P0 --pi--> module -> 0 with P0 a sum of A e_a."""

    module: AModule
    cover: ProjectiveSum
    pi: Morphism
    omega: AModule
    iota: Morphism

    @property
    def P0(self) -> AModule:
        return self.cover.module


def presentation(M: AModule) -> Presentation:
    """Cover by one copy of A e_a per generating basis vector of weight a; kernel is saturated."""
    cached = getattr(M, "_presentation", None)
    if cached is not None:
        return cached
    A = M.algebra
    gens = generating_basis_vectors(M)
    cover = ProjectiveSum(A, [M.weights[k] for k in gens])
    images = [tuple(1 if t == k else 0 for t in range(M.rank)) for k in gens]
    pi = cover.map_from_images(M, images)
    omega, iota = kernel_module(pi, name=f"Omega({M.name})" if M.name else "")
    pres = Presentation(M, cover, pi, omega, iota)
    M._presentation = pres
    return pres


def generating_basis_vectors(M: AModule) -> list:
    """Basis indices whose A-span is M, chosen greedily (largest cyclic span first)."""
    from .linalg import column_space
    ring = M.ring
    n = M.rank
    spans = []
    for k in range(n):
        e = tuple(1 if t == k else 0 for t in range(n))
        cols = [rho.apply(e) for rho in M.action]
        spans.append(Matrix.from_columns(ring, [c for c in cols if any(c)], n))
    order = sorted(range(n), key=lambda k: -rank(spans[k]) if spans[k].ncols else 0)
    chosen = []
    span = Matrix.zeros(ring, n, 0)
    for k in order:
        e = Matrix.from_columns(ring, [tuple(1 if t == k else 0 for t in range(n))], n)
        if span.ncols and solve(span, e) is not None:
            continue
        chosen.append(k)
        span = column_space(span.hstack(spans[k]))
    return sorted(chosen)


def syzygy(M: AModule, i: int = 1) -> AModule:
    for _ in range(i):
        M = presentation(M).omega
    return M


@dataclass
class ExtGroup:
    """Ext^i(M, N) = Hom(Omega^i M, N) / restrictions of Hom(P_{i-1}, N).

    `orders[k]` is the order of the k-th generator (0 = infinite); `cocycles[k]`
    is a representing map Omega^i M -> N.
    """

    degree: int
    free_rank: int
    torsion: tuple
    cocycles: list
    orders: tuple
    presentation: Presentation = field(repr=False)
    target: AModule = field(repr=False)
    _hom: list = field(repr=False, default_factory=list)
    _U: Optional[Matrix] = field(repr=False, default=None)
    _gen_index: tuple = field(repr=False, default=())

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def num_generators(self) -> int:
        return len(self.cocycles)

    def class_of(self, cocycle: Morphism) -> tuple:
        """Coordinates of a cocycle's class on the generators (torsion parts reduced)."""
        if not self.cocycles:
            return ()
        c = hom_coordinates(self._hom, [cocycle])
        if c is None:
            raise AlgebraError("map is not a homomorphism Omega M -> N")
        y = self._U.apply(c.column(0))
        out = []
        for k, idx in enumerate(self._gen_index):
            v = y[idx]
            d = self.orders[k]
            out.append(v % d if d else v)
        return tuple(out)

    def combination(self, coeffs) -> Morphism:
        P = self.presentation
        mats = [f.matrix for f in self.cocycles]
        F = linear_combination(self.target.ring, coeffs, mats, (self.target.rank, P.omega.rank))
        return Morphism(P.omega, self.target, F)


def ext(M: AModule, N: AModule, i: int = 1) -> ExtGroup:
    """Ext^i_A(M, N) for i >= 1, with free rank, torsion divisors and cocycles."""
    if i < 1:
        raise ValueError("ext degree must be positive; degree 0 is hom_space")
    _same_algebra(M, N)
    K = syzygy(M, i - 1)
    pres = presentation(K)
    ring = M.ring
    H = hom_space(pres.omega, N)
    if not H:
        return ExtGroup(i, 0, (), [], (), pres, N)
    restricted = [g @ pres.iota for g in pres.cover.hom_basis(N)]
    C = hom_coordinates(H, restricted)
    if C is None:
        raise AlgebraError("restriction left the Hom lattice")
    r = len(H)
    if C.ncols == 0:
        C = Matrix.zeros(ring, r, 0)
    sd = smith_form(C, want_inverse=True)
    q = len(sd.d)
    gens, orders, idx = [], [], []
    for k in range(r):
        if k < q and sd.d[k] in (1, -1):
            continue
        coeffs = sd.Uinv.column(k)
        F = linear_combination(ring, coeffs, [h.matrix for h in H], (N.rank, pres.omega.rank))
        gens.append(Morphism(pres.omega, N, F))
        orders.append(sd.d[k] if k < q else 0)
        idx.append(k)
    torsion = tuple(d for d in orders if d)
    return ExtGroup(i, r - q, torsion, gens, tuple(orders), pres, N, H, sd.U, tuple(idx))


def ext_dims(M: AModule, N: AModule, i: int = 1):
    E = ext(M, N, i)
    return E.free_rank, E.torsion


# ---------------------------------------------------------------------------
# Extensions


@dataclass
class ShortExactSequence:
    """0 -> left.source --left--> middle --right--> right.target -> 0."""

    left: Morphism
    right: Morphism

    @property
    def middle(self) -> AModule:
        return self.left.target

    def is_exact(self) -> bool:
        f, g = self.left.matrix, self.right.matrix
        if not (g @ f).is_zero():
            return False
        if rank(f) != f.ncols:
            return False
        K = kernel_basis(g)
        if K.ncols != f.ncols:
            return False
        # image of f equals kernel of g as lattices
        return solve(f, K) is not None and rank(g) == g.nrows and \
            cokernel_invariants(g)[1] == ()


def pushout_extension(pres: Presentation, N: AModule, cocycles: Sequence[Morphism]):
    """Simultaneous pushout of k copies of 0 -> Omega -> P0 -> M -> 0 along cocycles.

    Returns a ShortExactSequence 0 -> N -> Y -> M^k -> 0.
    """
    ring = N.ring
    k = len(cocycles)
    M = pres.module
    if k == 0:
        from .algebra import identity_morphism, zero_module
        Z = zero_module(N.algebra)
        return ShortExactSequence(identity_morphism(N), Morphism(N, Z, Matrix.zeros(ring, 0, N.rank)))
    omega_k = pres.omega.rank * k
    p_k = pres.P0.rank * k
    Pk = direct_sum(*([pres.P0] * k))
    Mk = direct_sum(*([M] * k)) if k > 1 else M
    Z = direct_sum(N, Pk)
    phi = cocycles[0].matrix.hstack(*[c.matrix for c in cocycles[1:]]) if k > 1 else cocycles[0].matrix
    iota_k = Matrix.block_diagonal(ring, [pres.iota.matrix] * k)
    S = phi.vstack(-iota_k)
    if S.ncols != omega_k:
        raise AlgebraError("cocycle shapes do not match the presentation")
    Y, proj, C = quotient(Z, S)
    inj_N = Matrix.identity(ring, N.rank).vstack(Matrix.zeros(ring, p_k, N.rank))
    j = Morphism(N, Y, proj.matrix @ inj_N)
    pi_k = Matrix.block_diagonal(ring, [pres.pi.matrix] * k)
    q_full = Matrix.zeros(ring, Mk.rank, N.rank).hstack(pi_k)
    q = Morphism(Y, Mk, q_full @ C)
    return ShortExactSequence(j, q)


def extension_from_cocycle(E: ExtGroup, cocycle: Morphism) -> ShortExactSequence:
    """0 -> N -> Y -> M -> 0 whose class is the class of `cocycle` in E (degree 1)."""
    if E.degree != 1:
        raise AlgebraError("extensions are built from degree-1 classes")
    if hom_coordinates(E._hom, [cocycle]) is None and not cocycle.is_zero():
        raise AlgebraError("cocycle is not drawn from the stated Ext group")
    if not E._hom and not cocycle.is_zero():
        raise AlgebraError("cocycle is not drawn from the stated Ext group")
    return pushout_extension(E.presentation, E.target, [cocycle])


def connecting_cocycle(ses: ShortExactSequence, pres: Presentation) -> Morphism:
    """Cocycle Omega M -> N representing the class of 0 -> N -> Y -> M -> 0."""
    j, q = ses.left, ses.right
    Y = ses.middle
    ring = Y.ring
    images = []
    for s, a in enumerate(pres.cover.summands):
        m = pres.cover.generator_image(pres.pi, s)
        idx = Y.weight_indices(a)
        Q = q.matrix.select_columns(idx)
        x = solve(Q, Matrix(ring, ((v,) for v in m), 1, _trusted=True))
        if x is None:
            raise AlgebraError("right map is not surjective")
        y = [0] * Y.rank
        for t, v in zip(idx, x.column(0)):
            y[t] = v
        images.append(tuple(y))
    g = pres.cover.map_from_images(Y, images)
    gi = (g @ pres.iota).matrix
    phi = solve(j.matrix, gi)
    if phi is None:
        raise AlgebraError("lift does not restrict into the left term")
    return Morphism(pres.omega, j.source, phi)


# ---------------------------------------------------------------------------
# Tor and tensor


@dataclass
class TensorTor:
    tensor_rank: int
    tensor_torsion: tuple
    tor1_rank: int
    tor1_torsion: tuple

    @property
    def tor1_zero(self) -> bool:
        return self.tor1_rank == 0 and not self.tor1_torsion


def _tensor_map(X: AModule, src: ProjectiveSum, dst: ProjectiveSum, d: Morphism) -> Matrix:
    """Matrix of X (x)_A d : X (x) src -> X (x) dst, with X (x) A e_a = e_a X."""
    ring = X.ring
    src_idx = [X.weight_indices(a) for a in src.summands]
    dst_idx = [X.weight_indices(a) for a in dst.summands]
    ncols = sum(len(i) for i in src_idx)
    nrows = sum(len(i) for i in dst_idx)
    out = [[0] * ncols for _ in range(nrows)]
    col_off = 0
    for s in range(len(src.summands)):
        img = src.generator_image(d, s)
        row_off = 0
        for t in range(len(dst.summands)):
            c = dst.component(img, t)
            if any(c):
                act = X.act(c)
                for ii, r in enumerate(dst_idx[t]):
                    row = act.rows[r]
                    for jj, cidx in enumerate(src_idx[s]):
                        x = row[cidx]
                        if x:
                            out[row_off + ii][col_off + jj] += x
            row_off += len(dst_idx[t])
        col_off += len(src_idx[s])
    return Matrix(ring, (tuple(ring.normalize(x) for x in r) for r in out), ncols, _trusted=True)


def tor1_and_tensor(X: AModule, M: AModule) -> TensorTor:
    """X (x)_A M and Tor_1^A(X, M) for X over A^op and M over A."""
    A = M.algebra
    if not X.algebra.same_as(A.opposite()):
        raise AlgebraError("first argument must be a module over the opposite algebra")
    ring = M.ring
    p0 = presentation(M)
    p1 = presentation(p0.omega)
    p2 = presentation(p1.omega)
    d1 = p0.iota @ p1.pi
    d2 = p1.iota @ p2.pi
    T1 = _tensor_map(X, p1.cover, p0.cover, d1)
    T2 = _tensor_map(X, p2.cover, p1.cover, d2)
    if T1.nrows == 0:
        return TensorTor(0, (), 0, ())
    free, tors = cokernel_invariants(T1) if T1.ncols else (T1.nrows, ())
    K = kernel_basis(T1) if T1.ncols else Matrix.zeros(ring, 0, 0)
    if K.ncols == 0:
        return TensorTor(free, tors, 0, ())
    C = solve(K, T2) if T2.ncols else Matrix.zeros(ring, K.ncols, 0)
    if C is None:
        raise AlgebraError("complex X (x) P is not a complex")
    tfree, ttors = cokernel_invariants(C) if C.ncols else (K.ncols, ())
    return TensorTor(free, tors, tfree, ttors)


# ---------------------------------------------------------------------------
# Isomorphism search


def _is_iso_matrix(F: Matrix) -> bool:
    return F.nrows == F.ncols and F.ring.is_unit(determinant(F))


def find_isomorphism(M: AModule, N: AModule, seed: int = 0, tries: int = 64,
                     box: int = 2, limit: int = 20000) -> Optional[Morphism]:
    """An invertible intertwiner M -> N, or None.

    Exact whenever rank Hom(M, N) <= 1 or the field is GF(2)/GF(3) with few
    Hom generators; otherwise a randomized / bounded search (a semi-decision,
    notably over ZZ).
    """
    _same_algebra(M, N)
    if M.rank != N.rank or M.dimension_vector() != N.dimension_vector():
        return None
    if M.rank == 0:
        return Morphism(M, N, Matrix.zeros(M.ring, 0, 0))
    H = hom_space(M, N)
    if not H:
        return None
    ring = M.ring
    mats = [h.matrix for h in H]
    for h in H:
        if _is_iso_matrix(h.matrix):
            return h
    if len(H) == 1:
        return None
    rng = random.Random(seed)
    shape = (N.rank, M.rank)

    def coeff():
        if ring.kind == "GF":
            return rng.randrange(ring.p)
        return rng.randint(-box, box)

    for _ in range(tries):
        F = linear_combination(ring, [coeff() for _ in H], mats, shape)
        if _is_iso_matrix(F):
            return Morphism(M, N, F)
    if ring.kind == "GF" and ring.p ** len(H) <= 4096:
        for coeffs in product(range(ring.p), repeat=len(H)):
            F = linear_combination(ring, coeffs, mats, shape)
            if _is_iso_matrix(F):
                return Morphism(M, N, F)
        return None
    if ring.kind == "ZZ":
        count = 0
        for coeffs in product(range(-box, box + 1), repeat=len(H)):
            count += 1
            if count > limit:
                break
            F = linear_combination(ring, coeffs, mats, shape)
            if _is_iso_matrix(F):
                return Morphism(M, N, F)
    return None


def is_projective(M: AModule) -> bool:
    """Direct check: the cover P0 -> M splits (solve pi o s = id over the ring)."""
    pres = presentation(M)
    if M.rank == 0:
        return True
    H = hom_space(M, pres.P0)
    if not H:
        return False
    ring = M.ring
    composed = [(pres.pi @ h).matrix for h in H]
    pos = [(i, j) for i in range(M.rank) for j in range(M.rank)]
    C = Matrix.from_columns(ring, [[F.rows[i][j] for i, j in pos] for F in composed], len(pos))
    ident = Matrix(ring, [[1 if i == j else 0] for i, j in pos], 1)
    return solve(C, ident) is not None


# ---------------------------------------------------------------------------
# Trace maps


@dataclass
class TraceData:
    """tau_{L,M} : L (x) Hom(L, M) -> M with the Hom basis fixing L (x) Hom = L^h."""

    morphism: Morphism
    hom: list
    image: Matrix
    injective: bool
    saturated: bool

    @property
    def multiplicity(self) -> int:
        return len(self.hom)


def trace_map(L: AModule, M: AModule) -> TraceData:
    """Evaluation map l (x) f -> f(l); image reported as a lattice with purity flags."""
    from .algebra import tensor_with_free
    from .linalg import column_space, is_saturated
    H = hom_space(L, M)
    src = tensor_with_free(L, len(H))
    ring = M.ring
    if not H:
        Z = Matrix.zeros(ring, M.rank, 0)
        return TraceData(Morphism(src, M, Z), H, Z, True, True)
    F = H[0].matrix.hstack(*[h.matrix for h in H[1:]]) if len(H) > 1 else H[0].matrix
    img = column_space(F)
    injective = img.ncols == F.ncols
    return TraceData(Morphism(src, M, F), H, img, injective, is_saturated(img))
