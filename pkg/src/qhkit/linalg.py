"""Exact dense linear algebra over QQ, GF(p) and ZZ.

Matrices are immutable row tuples.  Elimination runs on sparse row
dictionaries internally because the systems produced by intertwiner
equations are mostly zero; the public surface is dense.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Optional, Sequence

from sympy import isprime


class LinalgError(ValueError):
    pass


@dataclass(frozen=True)
class GroundRing:
    """One of QQ, GF(p), ZZ.  All three are PIDs with trivial Picard group."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("QQ", "GF", "ZZ"):
            raise LinalgError(f"unknown ring kind {self.kind!r}")
        if self.kind == "GF" and not (self.p > 1 and isprime(self.p)):
            raise LinalgError(f"GF({self.p}): characteristic must be prime")
        if self.kind != "GF" and self.p:
            raise LinalgError("only GF carries a characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    @property
    def fraction_field(self) -> "GroundRing":
        return QQ if self.kind == "ZZ" else self

    def __str__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "GroundRing":
        t = text.strip().replace(" ", "")
        if t in ("QQ", "Q", "Rationals"):
            return QQ
        if t in ("ZZ", "Z", "Integers"):
            return ZZ
        for prefix in ("GF(", "F(", "PrimeField("):
            if t.startswith(prefix) and t.endswith(")"):
                return GF(int(t[len(prefix):-1]))
        raise LinalgError(f"cannot parse ring descriptor {text!r}")

    def convert(self, x):
        """Coerce an int, Fraction or string like '-3/4' into the ring."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, bool):
            x = int(x)
        if self.kind == "QQ":
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                if self.kind == "ZZ":
                    raise LinalgError(f"{x} is not an integer")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            x = x.numerator
        if not isinstance(x, int):
            raise LinalgError(f"cannot convert {x!r} into {self}")
        return x % self.p if self.kind == "GF" else x

    def normalize(self, x):
        if self.kind == "GF":
            return x % self.p
        if self.kind == "QQ" and isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if self.kind == "GF":
            return pow(x, -1, self.p)
        if self.kind == "QQ":
            return Fraction(1) / x
        if x in (1, -1):
            return x
        raise LinalgError(f"{x} is not a unit in ZZ")

    def is_unit(self, x) -> bool:
        if self.kind == "ZZ":
            return x in (1, -1)
        return self.normalize(x) != 0


QQ = GroundRing("QQ")
ZZ = GroundRing("ZZ")


def GF(p: int) -> GroundRing:
    return GroundRing("GF", p)


class Matrix:
    """Dense matrix over a GroundRing; entries are stored normalized."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: GroundRing, rows: Iterable[Sequence], ncols: Optional[int] = None,
                 _trusted: bool = False):
        self.ring = ring
        if _trusted:
            rows = tuple(rows)
        else:
            conv = ring.convert
            rows = tuple(tuple(conv(x) for x in r) for r in rows)
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise LinalgError("ncols required for a matrix without rows")
            ncols = len(rows[0])
        self.ncols = ncols
        for r in rows:
            if len(r) != ncols:
                raise LinalgError("ragged matrix rows")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, ring, m, n):
        row = (0,) * n
        return cls(ring, (row,) * m, n, _trusted=True)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, (tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n,
                   _trusted=True)

    @classmethod
    def from_columns(cls, ring, columns: Sequence[Sequence], nrows: int):
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls.zeros(ring, nrows, 0)
        return cls(ring, zip(*columns), len(columns))

    @classmethod
    def diagonal(cls, ring, entries, m=None, n=None):
        entries = list(entries)
        m = len(entries) if m is None else m
        n = len(entries) if n is None else n
        rows = [[0] * n for _ in range(m)]
        for i, d in enumerate(entries):
            rows[i][i] = d
        return cls(ring, rows, n)

    @classmethod
    def block_diagonal(cls, ring, blocks: Sequence["Matrix"]):
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        rows = []
        off = 0
        for b in blocks:
            for r in b.rows:
                rows.append((0,) * off + r + (0,) * (n - off - b.ncols))
            off += b.ncols
        return cls(ring, rows, n, _trusted=True)

    # -- access -------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list:
        if self.nrows == 0:
            return [()] * self.ncols
        return [tuple(c) for c in zip(*self.rows)]

    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix.zeros(self.ring, self.ncols, 0)
        return Matrix(self.ring, zip(*self.rows), self.nrows, _trusted=True)

    def select_rows(self, idx) -> "Matrix":
        return Matrix(self.ring, (self.rows[i] for i in idx), self.ncols, _trusted=True)

    def select_columns(self, idx) -> "Matrix":
        idx = list(idx)
        return Matrix(self.ring, (tuple(r[j] for j in idx) for r in self.rows), len(idx),
                      _trusted=True)

    def submatrix(self, rows, cols) -> "Matrix":
        return self.select_rows(rows).select_columns(cols)

    def hstack(self, *others) -> "Matrix":
        mats = (self,) + others
        for o in others:
            if o.nrows != self.nrows:
                raise LinalgError("hstack: row counts differ")
        return Matrix(self.ring, (sum((m.rows[i] for m in mats), ()) for i in range(self.nrows)),
                      sum(m.ncols for m in mats), _trusted=True)

    def vstack(self, *others) -> "Matrix":
        for o in others:
            if o.ncols != self.ncols:
                raise LinalgError("vstack: column counts differ")
        return Matrix(self.ring, self.rows + sum((o.rows for o in others), ()), self.ncols,
                      _trusted=True)

    def to_lists(self):
        return [list(r) for r in self.rows]

    # -- arithmetic ---------------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            norm = self.ring.normalize
            out = []
            for r in self.rows:
                nz = [(k, x) for k, x in enumerate(r) if x]
                out.append(tuple(norm(sum(x * c[k] for k, x in nz)) if nz else 0 for c in cols))
            return Matrix(self.ring, out, other.ncols, _trusted=True)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise LinalgError("vector length mismatch")
        norm = self.ring.normalize
        nz = [(k, x) for k, x in enumerate(v) if x]
        return tuple(norm(sum(r[k] * x for k, x in nz)) for r in self.rows)

    def _zip(self, other, op):
        if self.shape != other.shape:
            raise LinalgError("shape mismatch")
        norm = self.ring.normalize
        return Matrix(self.ring, (tuple(norm(op(a, b)) for a, b in zip(r, s))
                                  for r, s in zip(self.rows, other.rows)), self.ncols,
                      _trusted=True)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = self.ring.convert(c)
        norm = self.ring.normalize
        return Matrix(self.ring, (tuple(norm(c * x) for x in r) for r in self.rows), self.ncols,
                      _trusted=True)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, self.rows))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def change_ring(self, ring: GroundRing) -> "Matrix":
        return Matrix(ring, self.rows, self.ncols)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix<{self.ring} {self.nrows}x{self.ncols}>[{body}]"


def linear_combination(ring, coeffs, mats: Sequence[Matrix], shape) -> Matrix:
    """Sum of c_i * M_i; all M_i share `shape`."""
    m, n = shape
    acc = [[0] * n for _ in range(m)]
    for c, M in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(M.rows):
            ai = acc[i]
            for j, x in enumerate(r):
                if x:
                    ai[j] += c * x
    return Matrix(ring, (tuple(ring.normalize(x) for x in r) for r in acc), n, _trusted=True)


# ---------------------------------------------------------------------------
# Field elimination on sparse rows


class _Echelon:
    """Incremental reduced row echelon form over a field.

    Rows are dicts col -> nonzero value; every stored row has pivot 1 and is
    zero in the other pivot columns.
    """

    def __init__(self, ring: GroundRing):
        self.ring = ring
        self.pivots: dict = {}

    def reduce(self, row: dict) -> dict:
        ring = self.ring
        row = dict(row)
        for pc in [c for c in row if c in self.pivots]:
            f = row.get(pc)
            if not f:
                continue
            for c, x in self.pivots[pc].items():
                v = ring.normalize(row.get(c, 0) - f * x)
                if v:
                    row[c] = v
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict):
        """Insert a row; returns the new pivot column or None if dependent."""
        ring = self.ring
        row = self.reduce(row)
        if not row:
            return None
        pc = min(row)
        inv = ring.inv(row[pc])
        row = {c: ring.normalize(x * inv) for c, x in row.items()}
        for other in self.pivots.values():
            f = other.get(pc)
            if f:
                for c, x in row.items():
                    v = ring.normalize(other.get(c, 0) - f * x)
                    if v:
                        other[c] = v
                    else:
                        other.pop(c, None)
        self.pivots[pc] = row
        return pc

    @property
    def rank(self):
        return len(self.pivots)


def _sparse_rows(A: Matrix, ring: GroundRing):
    conv = ring.convert if ring != A.ring else (lambda x: x)
    for r in A.rows:
        d = {}
        for j, x in enumerate(r):
            if x:
                y = conv(x)
                if y:
                    d[j] = y
        yield d


def _echelon(A: Matrix, ring=None) -> _Echelon:
    ring = ring or A.ring.fraction_field
    E = _Echelon(ring)
    for d in _sparse_rows(A, ring):
        if d:
            E.add(d)
    return E


def rref(A: Matrix):
    """Reduced row echelon form over the fraction field; returns (R, pivots)."""
    E = _echelon(A)
    pivots = sorted(E.pivots)
    rows = [tuple(E.pivots[p].get(j, 0) for j in range(A.ncols)) for p in pivots]
    return Matrix(E.ring, rows, A.ncols, _trusted=True), tuple(pivots)


def rank(A: Matrix) -> int:
    if A.nrows == 0 or A.ncols == 0:
        return 0
    if A.nrows < A.ncols:
        return _echelon(A.T).rank
    return _echelon(A).rank


def _field_kernel(A: Matrix, ring: GroundRing) -> list:
    E = _echelon(A, ring)
    free = [j for j in range(A.ncols) if j not in E.pivots]
    vecs = []
    for f in free:
        v = [0] * A.ncols
        v[f] = 1
        for pc, row in E.pivots.items():
            x = row.get(f)
            if x:
                v[pc] = ring.normalize(-x)
        vecs.append(v)
    return vecs


def _clear_denominators(v) -> list:
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    out = [int(x * den) for x in v]
    g = 0
    for x in out:
        g = gcd(g, x)
    return [x // g for x in out] if g > 1 else out


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form a basis of {x : A x = 0}; over ZZ a basis of the full kernel lattice."""
    ring = A.ring
    if A.ncols == 0:
        return Matrix.zeros(ring, 0, 0)
    if ring.kind == "ZZ":
        vecs = [_clear_denominators(v) for v in _field_kernel(A, QQ)]
        K = Matrix.from_columns(ZZ, vecs, A.ncols)
        return saturation(K) if vecs else K
    vecs = _field_kernel(A, ring)
    return Matrix.from_columns(ring, vecs, A.ncols)


def column_space(S: Matrix) -> Matrix:
    """A basis (as columns) of the span of the columns of S.

    Over ZZ the result is a basis of the lattice spanned, not its saturation.
    """
    if S.ring.kind == "ZZ":
        H = hermite_rows(S.T)
        return Matrix.from_columns(ZZ, H, S.nrows)
    E = _echelon(S.T)
    cols = [tuple(E.pivots[p].get(j, 0) for j in range(S.nrows)) for p in sorted(E.pivots)]
    return Matrix.from_columns(S.ring, cols, S.nrows)


def hermite_rows(A: Matrix) -> list:
    """Row-style Hermite normal form over ZZ: the nonzero rows, in echelon order."""
    rows = [list(r) for r in A.rows if any(r)]
    n = A.ncols
    out = []
    col = 0
    while rows and col < n:
        live = [r for r in rows if r[col]]
        if not live:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for k, r in enumerate(out):
            q = r[col] // piv[col]
            if q:
                out[k] = [a - q * b for a, b in zip(r, piv)]
        out.append(piv)
        rows = rest
        col += 1
    return [tuple(r) for r in out]


# ---------------------------------------------------------------------------
# Smith normal form


class SmithData(NamedTuple):
    U: Matrix
    V: Matrix
    d: tuple
    Uinv: Optional[Matrix] = None


def smith_form(A: Matrix, want_inverse: bool = False) -> SmithData:
    """U A V = diag(d, 0, ...) with d_1 | d_2 | ...; U, V invertible over the ring.

    Over a field every d_i is 1.
    """
    ring = A.ring
    m, n = A.shape
    M = [list(r) for r in A.rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_inverse else None
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    field = ring.is_field
    norm = ring.normalize

    def row_add(i, k, q):  # row_i += q row_k
        if not q:
            return
        Mi, Mk = M[i], M[k]
        for j in range(n):
            if Mk[j]:
                Mi[j] = norm(Mi[j] + q * Mk[j])
        Ui_, Uk = U[i], U[k]
        for j in range(m):
            if Uk[j]:
                Ui_[j] = norm(Ui_[j] + q * Uk[j])
        if Ui is not None:
            for r in Ui:
                if r[i]:
                    r[k] = norm(r[k] - q * r[i])

    def row_swap(i, k):
        M[i], M[k] = M[k], M[i]
        U[i], U[k] = U[k], U[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[k] = r[k], r[i]

    def row_scale(i, c, cinv):
        M[i] = [norm(c * x) for x in M[i]]
        U[i] = [norm(c * x) for x in U[i]]
        if Ui is not None:
            for r in Ui:
                r[i] = norm(r[i] * cinv)

    def col_add(j, k, q):  # col_j += q col_k
        if not q:
            return
        for r in M:
            if r[k]:
                r[j] = norm(r[j] + q * r[k])
        for r in V:
            if r[k]:
                r[j] = norm(r[j] + q * r[k])

    def col_swap(j, k):
        for r in M:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    d = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                x = Mi[j]
                if x:
                    key = 0 if field else abs(x)
                    if best is None or key < best[0]:
                        best = (key, i, j)
                        if key <= 1:
                            break
            if best is not None and best[0] <= 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            if field:
                p = M[t][t]
                pinv = ring.inv(p)
                if p != 1:
                    row_scale(t, pinv, p)
                for i in range(t + 1, m):
                    if M[i][t]:
                        row_add(i, t, norm(-M[i][t]))
                for j in range(t + 1, n):
                    if M[t][j]:
                        col_add(j, t, norm(-M[t][j]))
                break
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    row_add(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        row_swap(i, t)
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    col_add(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        col_swap(j, t)
                        dirty = True
            if dirty:
                continue
            p = M[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if M[t][t] < 0 and not field:
            row_scale(t, -1, -1)
        d.append(M[t][t])
        t += 1
    mk = lambda rows, k: Matrix(ring, (tuple(r) for r in rows), k, _trusted=True)
    return SmithData(mk(U, m), mk(V, n), tuple(d), mk(Ui, m) if Ui is not None else None)


def elementary_divisors(A: Matrix) -> tuple:
    if A.ring.is_field:
        return (1,) * rank(A)
    return smith_form(A).d


def cokernel_invariants(A: Matrix):
    """(free rank, torsion divisors > 1) of R^m / column span of A."""
    d = elementary_divisors(A)
    return A.nrows - len(d), tuple(x for x in d if x not in (1, -1))


def saturation(S: Matrix) -> Matrix:
    """Basis of {v : k v in span(S) for some k != 0}; identity map over fields."""
    if S.ncols == 0:
        return S
    if S.ring.is_field:
        return column_space(S)
    sd = smith_form(S, want_inverse=True)
    r = len(sd.d)
    return sd.Uinv.select_columns(range(r))


def is_saturated(S: Matrix) -> bool:
    if S.ring.is_field or S.ncols == 0:
        return True
    return all(x == 1 for x in smith_form(S).d)


def complement_basis(S: Matrix) -> Matrix:
    """Columns C with [S | C] invertible; S must have independent, saturated columns."""
    ring = S.ring
    n = S.nrows
    if S.ncols == 0:
        return Matrix.identity(ring, n)
    if ring.is_field:
        E = _echelon(S.T)
        if E.rank != S.ncols:
            raise LinalgError("columns are dependent")
        cols = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n) if j not in E.pivots]
        return Matrix.from_columns(ring, cols, n)
    sd = smith_form(S, want_inverse=True)
    if len(sd.d) != S.ncols or any(x != 1 for x in sd.d):
        raise LinalgError("sublattice is not saturated or columns dependent")
    return sd.Uinv.select_columns(range(S.ncols, n))


def solve(A: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some x with A x = b over the ring, or None."""
    if A.nrows != b.nrows:
        raise LinalgError("solve: shape mismatch")
    ring = A.ring
    if ring.kind != "ZZ":
        return _solve_field(A, b, ring)
    x = _solve_field(A, b, QQ)
    if x is None:
        return None
    if all(not isinstance(v, Fraction) for r in x.rows for v in r):
        return Matrix(ZZ, x.rows, x.ncols, _trusted=True)
    if rank(A) == A.ncols:
        return None  # unique rational solution, not integral
    sd = smith_form(A)
    y = sd.U @ b
    r = len(sd.d)
    rows = []
    for i in range(A.ncols):
        if i < r:
            row = []
            for v in y.rows[i]:
                if v % sd.d[i]:
                    return None
                row.append(v // sd.d[i])
            rows.append(tuple(row))
        else:
            rows.append((0,) * b.ncols)
    for i in range(r, A.nrows):
        if any(y.rows[i]):
            return None
    return sd.V @ Matrix(ZZ, rows, b.ncols, _trusted=True)


def _solve_field(A: Matrix, b: Matrix, ring: GroundRing) -> Optional[Matrix]:
    n = A.ncols
    aug = A.hstack(b) if A.ring == ring else Matrix(ring, A.hstack(b).rows)
    E = _echelon(aug, ring)
    if any(p >= n for p in E.pivots):
        return None
    out = [[0] * b.ncols for _ in range(n)]
    for pc, row in E.pivots.items():
        for k in range(b.ncols):
            out[pc][k] = row.get(n + k, 0)
    return Matrix(ring, (tuple(r) for r in out), b.ncols, _trusted=True)


def solve_vector(A: Matrix, v: Sequence) -> Optional[tuple]:
    x = solve(A, Matrix(A.ring, ((a,) for a in v), 1, _trusted=True))
    return None if x is None else x.column(0)


def determinant(A: Matrix):
    if A.nrows != A.ncols:
        raise LinalgError("determinant of non-square matrix")
    n = A.nrows
    if n == 0:
        return 1
    ring = A.ring
    if ring.kind == "GF":
        M = [list(r) for r in A.rows]
        det = 1
        p = ring.p
        for c in range(n):
            piv = next((i for i in range(c, n) if M[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                det = -det
            det = det * M[c][c] % p
            inv = pow(M[c][c], -1, p)
            for i in range(c + 1, n):
                f = M[i][c] * inv % p
                if f:
                    M[i] = [(a - f * b) % p for a, b in zip(M[i], M[c])]
        return det % p
    # Bareiss over ZZ; over QQ clear denominators first
    scale = Fraction(1)
    rows = []
    for r in A.rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        scale /= den
        rows.append([int(x * den) for x in r])
    M = rows
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    det = sign * M[n - 1][n - 1] * scale
    return ring.convert(det)


def inverse(A: Matrix) -> Matrix:
    x = solve(A, Matrix.identity(A.ring, A.nrows))
    if x is None or A.nrows != A.ncols:
        raise LinalgError("matrix is not invertible over its ring")
    return x


def is_invertible(A: Matrix) -> bool:
    if A.nrows != A.ncols:
        return False
    return A.ring.is_unit(determinant(A))


def reduce_mod(A: Matrix, p: int) -> Matrix:
    if A.ring.kind != "ZZ":
        raise LinalgError("reduction mod p needs an integer matrix")
    F = GF(p)
    return Matrix(F, (tuple(x % p for x in r) for r in A.rows), A.ncols, _trusted=True)


def sparse_kernel(ring: GroundRing, rows: Sequence[dict], ncols: int) -> Matrix:
    """Kernel (as columns) of the system given by sparse rows {col: coefficient}.

    Over ZZ the basis spans the full integral solution lattice.
    """
    field = ring.fraction_field
    E = _Echelon(field)
    for r in rows:
        r = {c: x for c, x in r.items() if x}
        if field.kind == "GF":
            r = {c: x % field.p for c, x in r.items() if x % field.p}
        if r:
            E.add(r)
    vecs = []
    for f in range(ncols):
        if f in E.pivots:
            continue
        v = [0] * ncols
        v[f] = 1
        for pc, row in E.pivots.items():
            x = row.get(f)
            if x:
                v[pc] = field.normalize(-x)
        vecs.append(v)
    if ring.kind == "ZZ":
        vecs = [_clear_denominators(v) for v in vecs]
        K = Matrix.from_columns(ZZ, vecs, ncols)
        return saturation(K) if vecs else K
    return Matrix.from_columns(ring, vecs, ncols)
