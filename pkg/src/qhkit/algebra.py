"""Algebras given by structure constants, and R-free modules over them.

Every algebra carries a complete set of orthogonal idempotents e_1..e_t and a
*homogeneous* basis: each basis element b satisfies e_l b e_r = b for some
pair (l, r).  Every module is stored in an idempotent-adapted basis, so
rho(e_a) is the diagonal projection onto the coordinates of weight a.  Both
conventions keep intertwiner systems block diagonal and small.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from .linalg import (
    GroundRing, Matrix, column_space, complement_basis, inverse,
    is_saturated, kernel_basis, linear_combination, rank, saturation, solve,
)


class AlgebraError(ValueError):
    """An algebra or module fails one of its structural axioms."""


def _vec_add(ring, acc, c, v):
    for k, x in enumerate(v):
        if x:
            acc[k] = acc[k] + c * x


class Algebra:
    """Rank-d algebra, free over its ground ring, b_i b_j = sum_k c[i][j][k] b_k."""

    def __init__(self, ring: GroundRing, structure, unit, idempotents, names=None,
                 check: bool = True, name: str = ""):
        self.ring = ring
        conv = ring.convert
        self.c = tuple(tuple(tuple(conv(x) for x in v) for v in row) for row in structure)
        self.dim = len(self.c)
        self.unit = tuple(conv(x) for x in unit)
        self.idempotents = tuple(tuple(conv(x) for x in e) for e in idempotents)
        self.names = tuple(names) if names is not None else tuple(f"b{i}" for i in range(self.dim))
        self.name = name
        if len(self.names) != self.dim:
            raise AlgebraError("basis label count differs from rank")
        for row in self.c:
            if len(row) != self.dim or any(len(v) != self.dim for v in row):
                raise AlgebraError("structure constants must be d x d x d")
        self._opposite = None
        self.left_weight, self.right_weight = self._weights()
        if check:
            check_algebra(self)

    @property
    def num_idempotents(self) -> int:
        return len(self.idempotents)

    def basis_vector(self, i):
        return tuple(1 if k == i else 0 for k in range(self.dim))

    def mul(self, x, y) -> tuple:
        ring = self.ring
        acc = [0] * self.dim
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            ci = self.c[i]
            for j, b in ys:
                _vec_add(ring, acc, a * b, ci[j])
        return tuple(ring.normalize(v) for v in acc)

    def _weights(self):
        """Left and right idempotent index of each basis element, or AlgebraError."""
        lw, rw = [], []
        for i in range(self.dim):
            b = self.basis_vector(i)
            ls = [a for a, e in enumerate(self.idempotents) if self.mul(e, b) == b]
            rs = [a for a, e in enumerate(self.idempotents) if self.mul(b, e) == b]
            if len(ls) != 1 or len(rs) != 1:
                raise AlgebraError(
                    f"basis element {self.names[i]} is not homogeneous for the idempotents "
                    "(use homogenize_structure)")
            lw.append(ls[0])
            rw.append(rs[0])
        return tuple(lw), tuple(rw)

    @cached_property
    def left_matrices(self) -> tuple:
        """L_i: matrix of y -> b_i y."""
        d = self.dim
        return tuple(Matrix(self.ring, (tuple(self.c[i][j][k] for j in range(d)) for k in range(d)),
                            d, _trusted=True) for i in range(d))

    @cached_property
    def right_matrices(self) -> tuple:
        """R_j: matrix of x -> x b_j."""
        d = self.dim
        return tuple(Matrix(self.ring, (tuple(self.c[i][j][k] for i in range(d)) for k in range(d)),
                            d, _trusted=True) for j in range(d))

    def left_mult(self, x) -> Matrix:
        return linear_combination(self.ring, x, self.left_matrices, (self.dim, self.dim))

    def right_mult(self, x) -> Matrix:
        return linear_combination(self.ring, x, self.right_matrices, (self.dim, self.dim))

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            d = self.dim
            c = [[self.c[j][i] for j in range(d)] for i in range(d)]
            op = Algebra(self.ring, c, self.unit, self.idempotents, self.names, check=False,
                         name=f"{self.name}^op" if self.name else "")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def same_as(self, other: "Algebra") -> bool:
        return self is other or (self.ring == other.ring and self.c == other.c
                                 and self.idempotents == other.idempotents)

    @cached_property
    def generators(self) -> tuple:
        """Basis indices of homogeneous elements that, with the idempotents, generate A.

        Generation is tested over the fraction field; intertwining relations are
        linear, so this suffices over ZZ as well.
        """
        field = self.ring.fraction_field
        basis = [self.basis_vector(i) for i in range(self.dim)]
        gens: list = []

        def closure(gs):
            rows = Matrix(field, list(self.idempotents) + [basis[g] for g in gs], self.dim)
            span = column_space(rows.T)
            while True:
                vecs = span.columns()
                prods = [self.mul(v, basis[g]) for v in vecs for g in gs]
                new = column_space(Matrix.from_columns(field, vecs + prods, self.dim)) if prods else span
                if new.ncols == span.ncols:
                    return span
                span = new

        span = closure(gens)
        for i in range(self.dim):
            if span.ncols == self.dim:
                break
            if rank(span.hstack(Matrix.from_columns(field, [basis[i]], self.dim))) > span.ncols:
                gens.append(i)
                span = closure(gens)
        return tuple(gens)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Algebra<{self.ring} rank {self.dim}{label}>"


def check_algebra(A: Algebra):
    """Associativity, unit, and orthogonal complete idempotents; raises AlgebraError."""
    d = A.dim
    ring = A.ring
    for i in range(d):
        b = A.basis_vector(i)
        if A.mul(A.unit, b) != b or A.mul(b, A.unit) != b:
            raise AlgebraError(f"unit fails on basis {i}")
    for a, e in enumerate(A.idempotents):
        for b, f in enumerate(A.idempotents):
            want = e if a == b else (0,) * d
            if A.mul(e, f) != tuple(want):
                raise AlgebraError(f"idempotents e{a}, e{b} are not orthogonal idempotents")
    total = [0] * d
    for e in A.idempotents:
        _vec_add(ring, total, 1, e)
    if tuple(ring.normalize(x) for x in total) != A.unit:
        raise AlgebraError("idempotents do not sum to the unit")
    L = A.left_matrices
    for i in range(d):
        for j in range(d):
            if A.right_weight[i] != A.left_weight[j]:
                if any(A.c[i][j]):
                    raise AlgebraError(f"b{i} b{j} must vanish by homogeneity")
                continue
            lhs = L[i] @ L[j]
            rhs = linear_combination(ring, A.c[i][j], L, (d, d))
            if lhs != rhs:
                raise AlgebraError(f"associativity fails at basis ({i}, {j}, -)")


def homogenize_structure(ring: GroundRing, structure, unit, idempotents):
    """Change basis so every basis element lies in some e_l A e_r.

    Returns (structure', unit', idempotents', W) where the columns of W are the
    new basis vectors written in the old basis.
    """
    tmp = _RawAlgebra(ring, structure)
    d = tmp.dim
    cols = []
    names = []
    for l, el in enumerate(idempotents):
        for r, er in enumerate(idempotents):
            proj = [tmp.mul(tmp.mul(el, tuple(1 if k == i else 0 for k in range(d))), er)
                    for i in range(d)]
            P = Matrix.from_columns(ring, proj, d)
            basis = saturation(column_space(P)) if not ring.is_field else column_space(P)
            for v in basis.columns():
                cols.append(v)
                names.append((l, r))
    W = Matrix.from_columns(ring, cols, d)
    if W.ncols != d:
        raise AlgebraError("idempotents do not decompose the algebra")
    Winv = inverse(W)
    new = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(Winv.apply(tmp.mul(cols[i], cols[j])))
        new.append(row)
    conv = lambda v: Winv.apply(tuple(ring.convert(x) for x in v))
    return new, conv(unit), [conv(e) for e in idempotents], W


class _RawAlgebra:
    def __init__(self, ring, structure):
        self.ring = ring
        self.c = tuple(tuple(tuple(ring.convert(x) for x in v) for v in row) for row in structure)
        self.dim = len(self.c)

    mul = Algebra.mul


# ---------------------------------------------------------------------------
# Modules


class AModule:
    """A left A-module that is free of finite rank over the ground ring.

    `action[i]` is the matrix of b_i; `weights[k]` is the idempotent index whose
    image contains basis vector k.
    """

    def __init__(self, algebra: Algebra, action: Sequence[Matrix], weights: Sequence[int],
                 name: str = "", check: bool = True):
        self.algebra = algebra
        self.action = tuple(action)
        self.weights = tuple(weights)
        self.rank = len(self.weights)
        self.name = name
        if len(self.action) != algebra.dim:
            raise AlgebraError("need one action matrix per algebra basis element")
        for M in self.action:
            if M.shape != (self.rank, self.rank):
                raise AlgebraError("action matrices must be rank x rank")
        if check:
            check_module(self)

    @property
    def ring(self) -> GroundRing:
        return self.algebra.ring

    @classmethod
    def from_action(cls, algebra: Algebra, matrices: Sequence[Matrix], name: str = "",
                    check: bool = True) -> "AModule":
        """Build a module from action matrices in any basis; the basis is re-adapted."""
        ring = algebra.ring
        n = matrices[0].nrows if matrices else 0
        cols, weights = [], []
        for a, e in enumerate(algebra.idempotents):
            E = linear_combination(ring, e, matrices, (n, n))
            img = column_space(E)
            if not ring.is_field:
                img = saturation(img) if img.ncols else img
            cols.extend(img.columns())
            weights.extend([a] * img.ncols)
        if len(cols) != n:
            raise AlgebraError("idempotents do not decompose the module (unit fails)")
        W = Matrix.from_columns(ring, cols, n) if n else Matrix.identity(ring, 0)
        Winv = inverse(W)
        action = [Winv @ M @ W for M in matrices]
        mod = cls(algebra, action, weights, name=name, check=check)
        mod.basis_change = W
        return mod

    def weight_indices(self, a: int) -> list:
        return [k for k, w in enumerate(self.weights) if w == a]

    def act(self, x) -> Matrix:
        return linear_combination(self.ring, x, self.action, (self.rank, self.rank))

    @cached_property
    def generator_blocks(self) -> tuple:
        """(gen index, source weight, target weight, block) for algebra generators."""
        A = self.algebra
        out = []
        for g in A.generators:
            r, l = A.right_weight[g], A.left_weight[g]
            rows = self.weight_indices(l)
            cols = self.weight_indices(r)
            out.append((g, r, l, self.action[g].submatrix(rows, cols)))
        return tuple(out)

    def dimension_vector(self) -> tuple:
        t = self.algebra.num_idempotents
        return tuple(sum(1 for w in self.weights if w == a) for a in range(t))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"AModule<rank {self.rank}{label} dims {self.dimension_vector()}>"


def check_module(M: AModule):
    """Unit, idempotent adaptation and the representation relations."""
    A = M.algebra
    ring = A.ring
    n = M.rank
    I = Matrix.identity(ring, n)
    if M.act(A.unit) != I:
        raise AlgebraError("unit does not act as the identity")
    for a, e in enumerate(A.idempotents):
        want = Matrix.diagonal(ring, [1 if w == a else 0 for w in M.weights])
        if M.act(e) != want:
            raise AlgebraError(f"basis is not adapted to idempotent {a}")
    for i in range(A.dim):
        l, r = A.left_weight[i], A.right_weight[i]
        rows = [k for k in range(n) if M.weights[k] != l]
        cols = [k for k in range(n) if M.weights[k] != r]
        Mi = M.action[i]
        if any(Mi.rows[k][j] for k in rows for j in range(n)) or \
                any(Mi.rows[k][j] for k in range(n) for j in cols):
            raise AlgebraError(f"basis element {i} does not respect idempotent weights")
    for i in range(A.dim):
        for j in range(A.dim):
            if A.right_weight[i] != A.left_weight[j]:
                continue
            lhs = M.action[i] @ M.action[j]
            rhs = linear_combination(ring, A.c[i][j], M.action, (n, n))
            if lhs != rhs:
                raise AlgebraError(f"representation relation fails at ({i}, {j})")


class Morphism:
    """A-linear map; `matrix` is target.rank x source.rank."""

    def __init__(self, source: AModule, target: AModule, matrix: Matrix, check: bool = False):
        if matrix.shape != (target.rank, source.rank):
            raise AlgebraError(f"morphism matrix has shape {matrix.shape}, expected "
                               f"{(target.rank, source.rank)}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not self.is_intertwiner():
            raise AlgebraError("matrix does not intertwine the actions")

    def is_intertwiner(self) -> bool:
        F = self.matrix
        return all(F @ a == b @ F for a, b in zip(self.source.action, self.target.action))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return Morphism(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other):
        return Morphism(self.source, self.target, self.matrix + other.matrix)

    def scale(self, c):
        return Morphism(self.source, self.target, self.matrix.scale(c))

    def is_zero(self):
        return self.matrix.is_zero()

    def __repr__(self):
        return f"Morphism<{self.source.rank} -> {self.target.rank}>"


def identity_morphism(M: AModule) -> Morphism:
    return Morphism(M, M, Matrix.identity(M.ring, M.rank))


def zero_morphism(M: AModule, N: AModule) -> Morphism:
    return Morphism(M, N, Matrix.zeros(M.ring, N.rank, M.rank))


# ---------------------------------------------------------------------------
# Constructions


def regular_module(A: Algebra) -> AModule:
    mod = getattr(A, "_regular", None)
    if mod is None:
        mod = AModule(A, A.left_matrices, A.left_weight, name="A", check=False)
        A._regular = mod
    return mod


def projective_module(A: Algebra, a: int) -> AModule:
    """A e_a, spanned by the basis elements whose right idempotent is e_a."""
    cache = A.__dict__.setdefault("_projectives", {})
    if a not in cache:
        idx = [i for i in range(A.dim) if A.right_weight[i] == a]
        action = [L.submatrix(idx, idx) for L in A.left_matrices]
        mod = AModule(A, action, [A.left_weight[i] for i in idx], name=f"P{a}", check=False)
        mod.basis_indices = tuple(idx)
        mod.generator = tuple(A.idempotents[a][i] for i in idx)
        cache[a] = mod
    return cache[a]


def zero_module(A: Algebra) -> AModule:
    z = Matrix.zeros(A.ring, 0, 0)
    return AModule(A, [z] * A.dim, [], name="0", check=False)


def direct_sum(*mods: AModule, name: str = "") -> AModule:
    if not mods:
        raise AlgebraError("direct_sum needs at least one summand")
    A = mods[0].algebra
    ring = A.ring
    for M in mods:
        if not M.algebra.same_as(A):
            raise AlgebraError("direct_sum over different algebras")
    action = [Matrix.block_diagonal(ring, [M.action[i] for M in mods]) for i in range(A.dim)]
    weights = [w for M in mods for w in M.weights]
    return AModule(A, action, weights, name=name, check=False)


def direct_sum_injection(mods: Sequence[AModule], k: int, total: AModule) -> Morphism:
    off = sum(M.rank for M in mods[:k])
    n = mods[k].rank
    rows = [tuple(1 if i == off + j else 0 for j in range(n)) for i in range(total.rank)]
    return Morphism(mods[k], total, Matrix(total.ring, rows, n, _trusted=True))


def direct_sum_projection(mods: Sequence[AModule], k: int, total: AModule) -> Morphism:
    off = sum(M.rank for M in mods[:k])
    n = mods[k].rank
    rows = [tuple(1 if j == off + i else 0 for j in range(total.rank)) for i in range(n)]
    return Morphism(total, mods[k], Matrix(total.ring, rows, total.rank, _trusted=True))


def tensor_with_free(M: AModule, m: int) -> AModule:
    """M tensored with R^m, i.e. m copies of M."""
    if m == 0:
        return zero_module(M.algebra)
    if m == 1:
        return M
    return direct_sum(*([M] * m), name=f"{M.name}^{m}" if M.name else "")


def _split_by_weight(M: AModule, S: Matrix):
    """Restrict an invariant lattice to each weight block: {a: (indices, block columns)}."""
    out = {}
    for a in range(M.algebra.num_idempotents):
        idx = M.weight_indices(a)
        if not idx:
            continue
        block = S.select_rows(idx)
        out[a] = (idx, column_space(block) if S.ncols else Matrix.zeros(M.ring, len(idx), 0))
    return out


def _assemble(M: AModule, blocks: dict):
    """Full-coordinate basis matrix and weights from per-weight block bases."""
    cols, weights = [], []
    for a in sorted(blocks):
        idx, B = blocks[a]
        for c in B.columns():
            v = [0] * M.rank
            for k, x in zip(idx, c):
                v[k] = x
            cols.append(tuple(v))
            weights.append(a)
    return Matrix.from_columns(M.ring, cols, M.rank), weights


def _restrict_action(M: AModule, B: Matrix, weights, check_invariant=True):
    """Action on the lattice spanned by the independent columns of B."""
    action = []
    for rho in M.action:
        X = solve(B, rho @ B) if B.ncols else Matrix.zeros(M.ring, 0, 0)
        if X is None:
            raise AlgebraError("subspace is not invariant under the algebra action")
        action.append(X)
    return action


def submodule(M: AModule, gens: Matrix, saturate: bool = False, name: str = ""):
    """A-submodule generated by the columns of `gens`; returns (S, inclusion)."""
    A = M.algebra
    vecs = []
    for g in gens.columns():
        for rho in M.action:
            v = rho.apply(g)
            if any(v):
                vecs.append(v)
    S = Matrix.from_columns(M.ring, vecs, M.rank)
    return sub_from_lattice(M, S, saturate=saturate, name=name)


def sub_from_lattice(M: AModule, S: Matrix, saturate: bool = False, name: str = "",
                     check_invariant: bool = True):
    """Submodule whose underlying lattice is spanned by the columns of S.

    The span must be A-invariant; with `saturate` the saturation is taken.
    """
    blocks = _split_by_weight(M, S)
    if saturate and not M.ring.is_field:
        blocks = {a: (idx, saturation(B) if B.ncols else B) for a, (idx, B) in blocks.items()}
    B, weights = _assemble(M, blocks)
    if check_invariant and S.ncols and not saturate:
        # the weight components of S must already lie in span(S)
        if solve(S, B) is None:
            raise AlgebraError("lattice is not compatible with the idempotent decomposition")
    action = _restrict_action(M, B, weights)
    sub = AModule(M.algebra, action, weights, name=name, check=False)
    return sub, Morphism(sub, M, B)


def quotient(M: AModule, S: Matrix, name: str = ""):
    """M / span(S) for an invariant saturated sublattice.

    Returns (Q, projection M -> Q, section matrix C) where C maps quotient
    coordinates to a complement in M.
    """
    ring = M.ring
    blocks = _split_by_weight(M, S)
    qcols, qweights = [], []
    prow = {}
    for a in range(M.algebra.num_idempotents):
        idx = M.weight_indices(a)
        if not idx:
            continue
        _, Sa = blocks[a]
        if not ring.is_field and Sa.ncols and not is_saturated(Sa):
            raise AlgebraError("quotient by a non-saturated sublattice would have torsion")
        Ca = complement_basis(Sa)
        full = Sa.hstack(Ca)
        inv = inverse(full)
        for jj, c in enumerate(Ca.columns()):
            v = [0] * M.rank
            for k, x in zip(idx, c):
                v[k] = x
            qcols.append(tuple(v))
            qweights.append(a)
            prow[len(qcols) - 1] = (idx, inv.rows[Sa.ncols + jj])
    C = Matrix.from_columns(ring, qcols, M.rank)
    P_rows = []
    for q in range(len(qcols)):
        idx, r = prow[q]
        row = [0] * M.rank
        for k, x in zip(idx, r):
            row[k] = x
        P_rows.append(tuple(row))
    P = Matrix(ring, P_rows, M.rank, _trusted=True)
    if S.ncols and not (P @ S).is_zero():
        raise AlgebraError("sublattice is not compatible with the idempotent decomposition")
    action = []
    for rho in M.action:
        if S.ncols and solve(S, rho @ S) is None:
            raise AlgebraError("quotient by a non-invariant subspace")
        action.append(P @ rho @ C)
    Q = AModule(M.algebra, action, qweights, name=name, check=False)
    proj = Morphism(M, Q, P)
    proj.section = C
    return Q, proj, C


def kernel(f: Morphism, name: str = ""):
    K = kernel_basis(f.matrix)
    return sub_from_lattice(f.source, K, name=name)


def image(f: Morphism, name: str = ""):
    return sub_from_lattice(f.target, f.matrix, name=name)


def cokernel(f: Morphism, name: str = ""):
    S = column_space(f.matrix) if f.matrix.ncols else f.matrix
    return quotient(f.target, S, name=name)


def dual_module(M: AModule, name: str = "") -> AModule:
    """D M = Hom_R(M, R) as a left module over the opposite algebra."""
    Aop = M.algebra.opposite()
    return AModule(Aop, [rho.T for rho in M.action], M.weights,
                   name=name or (f"D({M.name})" if M.name else ""), check=False)


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual_module(f.target), dual_module(f.source), f.matrix.T)


def tensor_algebra(A: Algebra, B: Algebra, name: str = "") -> Algebra:
    """A (x)_R B with basis pairs (i, j) at index i * dim B + j."""
    if A.ring != B.ring:
        raise AlgebraError("tensor of algebras over different rings")
    da, db = A.dim, B.dim
    d = da * db

    def kron(u, v):
        return [x * y for x in u for y in v]

    c = [[kron(A.c[i][k], B.c[j][l]) for k in range(da) for l in range(db)]
         for i in range(da) for j in range(db)]
    idem = [kron(e, f) for e in A.idempotents for f in B.idempotents]
    names = [f"{x}*{y}" for x in A.names for y in B.names]
    return Algebra(A.ring, c, kron(A.unit, B.unit), idem, names, check=d <= 16, name=name)


def _kron(P: Matrix, Q: Matrix) -> Matrix:
    rows = []
    for r in P.rows:
        for s in Q.rows:
            rows.append(tuple(x * y for x in r for y in s))
    return Matrix(P.ring, (tuple(P.ring.normalize(x) for x in r) for r in rows),
                  P.ncols * Q.ncols, _trusted=True)


def outer_tensor(M: AModule, N: AModule, AB: Algebra, name: str = "") -> AModule:
    """M (x)_R N over A (x)_R B, where AB = tensor_algebra(M.algebra, N.algebra)."""
    tb = N.algebra.num_idempotents
    action = [_kron(P, Q) for P in M.action for Q in N.action]
    weights = [a * tb + b for a in M.weights for b in N.weights]
    return AModule(AB, action, weights, name=name, check=False)


def quotient_algebra(A: Algebra, J: Matrix):
    """A / J for a saturated two-sided ideal J (columns in algebra coordinates).

    Returns (Abar, projection matrix A -> Abar, section matrix).
    """
    reg = regular_module(A)
    Q, proj, C = quotient(reg, J)
    ring = A.ring
    d = Q.rank
    P = proj.matrix
    cols = C.columns()
    c = [[P.apply(A.mul(cols[i], cols[j])) for j in range(d)] for i in range(d)]
    bar = Algebra(ring, c, P.apply(A.unit), [P.apply(e) for e in A.idempotents],
                  [f"[{i}]" for i in range(d)], check=False)
    return bar, P, C


def inflate(M: AModule, A: Algebra, projection: Matrix, name: str = "") -> AModule:
    """Pull a module over A/J back along A -> A/J."""
    action = [M.act(projection.column(i)) for i in range(A.dim)]
    return AModule(A, action, M.weights, name=name or M.name, check=False)


def change_ring_module(M: AModule, algebra: Algebra, conv) -> AModule:
    return AModule(algebra, [Matrix(algebra.ring, (tuple(conv(x) for x in r) for r in rho.rows),
                                    rho.ncols, _trusted=True) for rho in M.action],
                   M.weights, name=M.name, check=False)
