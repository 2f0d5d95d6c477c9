"""Path algebras of finite quivers modulo homogeneous relations.

Composition follows the usual convention for left modules: the word ``b*a``
means "first a, then b", so A e_i is spanned by the paths starting at i.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .algebra import Algebra
from .linalg import GroundRing, Matrix, _Echelon, hermite_rows


class QuiverError(ValueError):
    pass


_TERM = re.compile(r"\s*([+-])?\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*([A-Za-z_][\w*\s]*)")


def parse_relation(text: str, arrows: Sequence[str]) -> List[Tuple[Fraction, Tuple[str, ...]]]:
    """'b*a - 2*d*c' -> [(1, ('b', 'a')), (-2, ('d', 'c'))]."""
    known = set(arrows)
    out = []
    pos = 0
    s = text.strip()
    if not s:
        raise QuiverError("empty relation")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise QuiverError(f"cannot parse relation {text!r} at offset {pos}")
        sign, coef, word = m.groups()
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        elif sign is None and out:
            raise QuiverError(f"missing operator in relation {text!r}")
        names = tuple(w for w in re.split(r"[\s*]+", word.strip()) if w)
        for nm in names:
            if nm not in known:
                raise QuiverError(f"unknown arrow {nm!r} in relation {text!r}")
        out.append((c, names))
        pos = m.end()
    return out


class Quiver:
    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]]):
        """arrows: (name, source, target)."""
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        self.arrows = tuple(arrows)
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        for nm, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise QuiverError(f"arrow {nm} has an unknown endpoint")
        self.source = {a[0]: a[1] for a in self.arrows}
        self.target = {a[0]: a[2] for a in self.arrows}

    def word_endpoints(self, word: Tuple[str, ...]):
        """(source, target) of a composable word written leftmost-last, or None."""
        for left, right in zip(word, word[1:]):
            if self.source[left] != self.target[right]:
                return None
        return self.source[word[-1]], self.target[word[0]]

    def paths(self, length: int) -> list:
        """Paths of the given positive length as words, in deterministic order."""
        out = [(a[0],) for a in self.arrows]
        for _ in range(length - 1):
            out = [(a[0],) + w for w in out for a in self.arrows
                   if self.source[a[0]] == self.target[w[0]]]
        return out


class _Pivots:
    def __init__(self, pivots):
        self.pivots = pivots


def _reduce_span(gens, n, ring):
    """Reduced echelon rows {pivot: {col: coeff}} of the span; over ZZ the lattice must be pure."""
    if ring.kind == "ZZ":
        rows = []
        for g in gens:
            r = [0] * n
            for k, v in g.items():
                v = Fraction(v)
                if v.denominator != 1:
                    raise QuiverError("integral relations need integer coefficients")
                r[k] += int(v)
            rows.append(r)
        H = hermite_rows(Matrix(ring, rows, n)) if rows else []
        piv = {}
        for r in H:
            p = next(k for k, v in enumerate(r) if v)
            if r[p] != 1:
                raise QuiverError("relation ideal is not pure over ZZ (non-unit pivot)")
            piv[p] = {k: v for k, v in enumerate(r) if v}
        return _Pivots(piv)
    E = _Echelon(ring)
    for g in gens:
        row = {k: ring.convert(v) for k, v in g.items()}
        row = {k: v for k, v in row.items() if v}
        if row:
            E.add(row)
    return E


def compile_quiver(quiver: Quiver, relations: Sequence[str], ring: GroundRing,
                   max_length: int = 10, name: str = ""):
    """Basis, structure constants and vertex idempotents of kQ / (relations).

    Returns (Algebra, basis words) where words are () for trivial paths tagged
    by vertex.  Raises QuiverError when the quotient does not vanish by max_length.
    """
    rels = [parse_relation(r, [a[0] for a in quiver.arrows]) for r in relations]
    by_len: Dict[int, list] = {}
    for text, rel in zip(relations, rels):
        lengths = {len(w) for _, w in rel}
        if len(lengths) != 1:
            raise QuiverError(f"relation {text!r} is not homogeneous in path length")
        ends = {quiver.word_endpoints(w) for _, w in rel}
        if None in ends:
            raise QuiverError(f"relation {text!r} contains a non-composable word")
        if len(ends) != 1:
            raise QuiverError(f"relation {text!r} mixes paths with different endpoints")
        by_len.setdefault(lengths.pop(), []).append(rel)
    levels = []          # per length n >= 1: (paths, index, reduction)
    stop = None
    ideal_prev: list = []  # relation-ideal spanning elements of previous length, as dicts
    for n in range(1, max_length + 1):
        paths = quiver.paths(n)
        if not paths:
            stop = n
            break
        index = {w: i for i, w in enumerate(paths)}
        gens = []
        for rel in by_len.get(n, []):
            gens.append({index[w]: c for c, w in rel})
        # ideal elements of length n: arrows times ideal elements of length n-1, on both sides
        for elem in ideal_prev:
            for a in quiver.arrows:
                left, right = {}, {}
                for w, c in elem.items():
                    if quiver.source[a[0]] == quiver.target[w[0]]:
                        left[(a[0],) + w] = left.get((a[0],) + w, 0) + c
                    if quiver.target[a[0]] == quiver.source[w[-1]]:
                        right[w + (a[0],)] = right.get(w + (a[0],), 0) + c
                for d in (left, right):
                    if d:
                        gens.append({index[w]: c for w, c in d.items()})
        E = _reduce_span(gens, len(paths), ring)
        free = [i for i in range(len(paths)) if i not in E.pivots]
        levels.append((paths, index, E, free))
        ideal_prev = [{paths[k]: v for k, v in row.items()} for row in E.pivots.values()]
        if not free:
            stop = n
            break
    if stop is None:
        raise QuiverError(f"path algebra did not stabilize by L = {max_length}")
    # basis: trivial paths, then surviving paths by length
    basis = [("e", v) for v in quiver.vertices]
    for paths, _, _, free in levels:
        basis += [("p", paths[i]) for i in free]
    pos = {b: i for i, b in enumerate(basis)}
    d = len(basis)

    def reduce_word(word) -> Dict[int, object]:
        n = len(word)
        if n >= stop:
            return {}
        paths, index, E, free = levels[n - 1]
        i = index[word]
        if i not in E.pivots:
            return {pos[("p", word)]: 1}
        out = {}
        for k, v in E.pivots[i].items():
            if k != i and v:
                out[pos[("p", paths[k])]] = ring.normalize(-v)
        return out

    def src(b):
        return b[1] if b[0] == "e" else quiver.source[b[1][-1]]

    def tgt(b):
        return b[1] if b[0] == "e" else quiver.target[b[1][0]]

    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if src(x) != tgt(y):
                continue
            if x[0] == "e":
                c[i][j][j] = 1
            elif y[0] == "e":
                c[i][j][i] = 1
            else:
                for k, v in reduce_word(x[1] + y[1]).items():
                    c[i][j][k] = v
    if ring.kind == "ZZ":
        c = [[[int(v) for v in vec] for vec in row] for row in c]
    nv = len(quiver.vertices)
    unit = [1] * nv + [0] * (d - nv)
    idems = [[1 if k == a else 0 for k in range(d)] for a in range(nv)]
    names = [f"e{b[1]}" if b[0] == "e" else "*".join(b[1]) for b in basis]
    A = Algebra(ring, c, unit, idems, names, check=True, name=name)
    return A, basis


def representation(A: Algebra, dims: Sequence[int], maps: Dict[str, Sequence[Sequence]],
                   name: str = ""):
    """The module of a quiver representation over an algebra from `compile_quiver`.

    `dims[a]` is the dimension at the vertex with idempotent index a and
    `maps[arrow]` is the (target dim x source dim) matrix of the arrow.  The
    relations are checked through the module axioms.
    """
    from .algebra import AModule

    ring = A.ring
    offsets = [sum(dims[:a]) for a in range(len(dims))]
    n = sum(dims)
    weights = [a for a, d in enumerate(dims) for _ in range(d)]

    def embed(block, src, tgt):
        rows = [[0] * n for _ in range(n)]
        for i, r in enumerate(block):
            for j, x in enumerate(r):
                rows[offsets[tgt] + i][offsets[src] + j] = ring.convert(x)
        return Matrix(ring, rows, n)

    action = []
    for i, label in enumerate(A.names):
        src, tgt = A.right_weight[i], A.left_weight[i]
        if A.basis_vector(i) in A.idempotents:
            action.append(embed([[1 if r == c else 0 for c in range(dims[src])]
                                 for r in range(dims[src])], src, src))
            continue
        M = Matrix.identity(ring, n)
        for arrow in reversed(label.split("*")):
            if arrow not in maps:
                raise QuiverError(f"no matrix given for arrow {arrow!r}")
            a = A.names.index(arrow)
            M = embed(maps[arrow], A.right_weight[a], A.left_weight[a]) @ M
        action.append(M)
    return AModule(A, action, weights, name=name)
