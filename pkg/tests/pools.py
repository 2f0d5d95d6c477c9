"""Module pools shared by the unit and acceptance tests."""

import random

from qhkit.algebra import direct_sum, dual_module, regular_module
from qhkit.homological import ext, extension_from_cocycle
from qhkit.quiver import QuiverError, representation
from qhkit.algebra import AlgebraError


def injective_cogenerator(A):
    return dual_module(regular_module(A.opposite()), name="DA")


def structural_pool(qh, tilting=None):
    """A, DA, projectives, standards, costandards and tilting summands."""
    A = qh.algebra
    mods = [regular_module(A), injective_cogenerator(A)]
    for lam in qh.labels:
        mods += [qh.projective(lam), qh.standards[lam], qh.costandard(lam)]
        if tilting is not None:
            mods.append(tilting.summand(lam))
    return mods


def _coefficients(ring, k, rng):
    choices = [1] if ring.kind == "GF" and ring.p == 2 else [-1, 1, 2]
    while True:
        c = [rng.choice([0] + choices) for _ in range(k)]
        if any(c):
            return c


def extension_pool(mods, rng, max_rank=6, limit=12):
    """Middle terms of random nonsplit extensions between members of `mods`."""
    out = []
    pairs = [(X, Y) for X in mods for Y in mods if X.rank + Y.rank <= max_rank]
    rng.shuffle(pairs)
    for X, Y in pairs:
        if len(out) >= limit:
            break
        E = ext(X, Y, 1)
        if E.is_zero():
            continue
        coeffs = _coefficients(X.ring, E.num_generators, rng)
        ses = extension_from_cocycle(E, E.combination(coeffs))
        ses.middle.name = f"ext({X.name or '?'},{Y.name or '?'})"
        out.append(ses.middle)
    return out


def sum_pool(mods, max_rank=6, limit=8):
    out = []
    for i, X in enumerate(mods):
        for Y in mods[i:]:
            if X.rank + Y.rank <= max_rank and len(out) < limit:
                out.append(direct_sum(X, Y, name=f"{X.name}+{Y.name}"))
    return out


def random_representations(A, rng, count, max_rank=6, tries=400):
    """Random quiver representations (rejection sampling against the relations)."""
    t = A.num_idempotents
    arrows = [A.names[i] for i in range(A.dim)
              if A.basis_vector(i) not in A.idempotents and "*" not in A.names[i]]
    p = A.ring.p if A.ring.kind == "GF" else 3
    out = []
    for _ in range(tries):
        if len(out) >= count:
            break
        n = rng.randint(1, max_rank)
        dims = [0] * t
        for _ in range(n):
            dims[rng.randrange(t)] += 1
        maps = {}
        for a in arrows:
            i = A.names.index(a)
            s, tg = A.right_weight[i], A.left_weight[i]
            maps[a] = [[rng.randrange(p) for _ in range(dims[s])] for _ in range(dims[tg])]
        try:
            out.append(representation(A, dims, maps, name=f"rep{len(out)}"))
        except (AlgebraError, QuiverError):
            continue
    return out


def full_pool(qh, tilting=None, seed=0, max_rank=6, extensions=12, sums=8):
    rng = random.Random(seed)
    base = [M for M in structural_pool(qh, tilting) if M.rank <= max_rank]
    return base + extension_pool(base, rng, max_rank, extensions) + sum_pool(base, max_rank, sums)
