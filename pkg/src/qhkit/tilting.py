"""Characteristic tilting modules built from universal extensions."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import (
    AModule, Morphism, cokernel, direct_sum, direct_sum_injection, direct_sum_projection,
    identity_morphism, sub_from_lattice,
)
from .filtrations import (
    FiltrationCertificate, InconsistencyError, has_delta_filtration, has_nabla_filtration,
    peel_standards, try_delta_filtration, try_nabla_filtration,
)
from .homological import ext, hom_coordinates, hom_space, pushout_extension, ShortExactSequence
from .linalg import Matrix, cokernel_invariants, inverse, linear_combination, solve


@dataclass
class UniversalExtension:
    """0 -> X -> Y -> Delta^k -> 0 with Ext^1(Delta, Y) = 0."""

    module: AModule
    sequence: Optional[ShortExactSequence]
    k: int
    group_free_rank: int
    group_torsion: tuple


def _shuffle_generators(cocycles, ring, seed: int):
    """A different generating set of the same group: a unimodular recombination plus one
    redundant generator."""
    k = len(cocycles)
    if k == 0:
        return []
    rng = random.Random(seed)
    U = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for _ in range(3 * k):
        i, j = rng.randrange(k), rng.randrange(k)
        if i != j:
            c = rng.choice((-1, 1))
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    shape = cocycles[0].matrix.shape
    mats = [c.matrix for c in cocycles]
    out = []
    for row in reversed(U):
        F = linear_combination(ring, row, mats, shape)
        out.append(Morphism(cocycles[0].source, cocycles[0].target, F))
    redundant = linear_combination(ring, [1] * k, mats, shape)
    out.append(Morphism(cocycles[0].source, cocycles[0].target, redundant))
    return out


def universal_extension(X: AModule, D: AModule, seed: Optional[int] = None) -> UniversalExtension:
    """Pushout along a generating set of Ext^1(D, X), so Ext^1(D, Y) vanishes.

    With `seed` set, a different (redundant) generating set is used.
    """
    E = ext(D, X, 1)
    if E.is_zero():
        return UniversalExtension(X, None, 0, 0, ())
    gens = E.cocycles if seed is None else _shuffle_generators(E.cocycles, X.ring, seed)
    ses = pushout_extension(E.presentation, X, gens)
    Y = ses.middle
    if not ext(D, Y, 1).is_zero():
        raise InconsistencyError("universal extension left a nonzero Ext^1")
    return UniversalExtension(Y, ses, len(gens), E.free_rank, E.torsion)


@dataclass
class PartialTiltingData:
    label: object
    module: AModule
    embedding: Morphism            # Delta(label) -> T
    cokernel: AModule              # X(label)
    cokernel_certificate: FiltrationCertificate
    surjection: Morphism           # T -> nabla(label)
    kernel: AModule                # Y(label)
    kernel_inclusion: Morphism
    kernel_certificate: FiltrationCertificate
    construction: FiltrationCertificate = field(repr=False)
    steps: tuple = ()              # (label, k) per universal extension


def build_partial_tilting(lam, qh, seed: Optional[int] = None) -> PartialTiltingData:
    """T(lam): start at Delta(lam) and kill Ext^1(Delta(mu), -) for mu below in the enumeration."""
    poset = qh.poset
    D = qh.standards[lam]
    ring = D.ring
    T = D
    emb = identity_morphism(D).matrix
    layers = []      # (label, k, lift matrix into current T)
    layers.append((lam, 1, identity_morphism(D).matrix))
    steps = []
    lower = [mu for mu in poset.decreasing() if poset.index(mu) < poset.index(lam)]
    cap = 10 * len(poset)
    rounds = 0
    while True:
        changed = False
        for mu in lower:
            Dm = qh.standards[mu]
            step_seed = None if seed is None else seed * 1009 + poset.index(mu) + 31 * rounds
            ue = universal_extension(T, Dm, step_seed)
            if ue.k == 0:
                continue
            j, q = ue.sequence.left, ue.sequence.right
            emb = j.matrix @ emb
            layers = [(l, m, j.matrix @ W) for l, m, W in layers]
            sec = solve(q.matrix, Matrix.identity(ring, q.target.rank))
            if sec is None:
                raise InconsistencyError("extension map is not split over the ground ring")
            layers.append((mu, ue.k, sec))
            T = ue.module
            steps.append((mu, ue.k))
            changed = True
        rounds += 1
        if not changed:
            break
        if rounds * max(1, len(lower)) > cap:
            raise InconsistencyError("tilting construction did not terminate within its cap")
    for mu in poset:
        if not ext(qh.standards[mu], T, 1).is_zero():
            raise InconsistencyError(f"Ext^1(Delta({mu}), T({lam})) is nonzero after construction")
    T.name = f"T({lam})"
    chain = [Matrix.zeros(ring, T.rank, 0)]
    wits, labels, mults, mods = [], [], [], []
    for l, m, W in layers:
        chain.append(chain[-1].hstack(W))
        wits.append(W)
        labels.append(l)
        mults.append(m)
        mods.append(qh.standards[l])
    construction = FiltrationCertificate(T, "delta", tuple(labels), tuple(mults), tuple(chain),
                                         tuple(wits), tuple(mods))
    embedding = Morphism(D, T, emb)
    X, _, _ = cokernel(embedding, name=f"X({lam})")
    xcert, reason = peel_standards(X, [(mu, qh.standards[mu]) for mu in lower])
    if xcert is None:
        raise InconsistencyError(f"cokernel of Delta({lam}) -> T({lam}): {reason}")
    ncert, reason = try_nabla_filtration(T, qh)
    if ncert is None:
        raise InconsistencyError(f"T({lam}) has no costandard filtration: {reason}")
    if ncert.labels[-1] != lam or ncert.multiplicities[-1] != 1:
        raise InconsistencyError(f"top costandard layer of T({lam}) is not nabla({lam})")
    lo, W = ncert.chain[-2], ncert.witnesses[-1]
    basis = lo.hstack(W)
    inv = inverse(basis)
    nabla = qh.costandard(lam)
    p = inv.select_rows(range(lo.ncols, T.rank))
    surj = Morphism(T, nabla, p)
    if not surj.is_intertwiner():
        raise InconsistencyError(f"T({lam}) -> nabla({lam}) is not a homomorphism")
    Y, yinc = sub_from_lattice(T, lo, name=f"Y({lam})")
    ycert, reason = try_nabla_filtration(Y, qh)
    if ycert is None:
        raise InconsistencyError(f"kernel of T({lam}) -> nabla({lam}): {reason}")
    return PartialTiltingData(lam, T, embedding, X, xcert, surj, Y, yinc, ycert, construction,
                              tuple(steps))


@dataclass
class CharacteristicTilting:
    module: AModule
    parts: list                    # PartialTiltingData in enumeration order

    @property
    def labels(self) -> tuple:
        return tuple(d.label for d in self.parts)

    def summand(self, lam) -> AModule:
        return self.part(lam).module

    def part(self, lam) -> PartialTiltingData:
        for d in self.parts:
            if d.label == lam:
                return d
        raise KeyError(lam)

    def injection(self, lam) -> Morphism:
        mods = [d.module for d in self.parts]
        return direct_sum_injection(mods, self.labels.index(lam), self.module)

    def projection(self, lam) -> Morphism:
        mods = [d.module for d in self.parts]
        return direct_sum_projection(mods, self.labels.index(lam), self.module)


def build_characteristic_tilting(qh, seed: Optional[int] = None) -> CharacteristicTilting:
    parts = [build_partial_tilting(lam, qh, seed) for lam in qh.poset]
    T = direct_sum(*[d.module for d in parts], name="T")
    return CharacteristicTilting(T, parts)


def _sequence_exact(left: Morphism, right: Morphism) -> bool:
    return ShortExactSequence(left, right).is_exact()


def verify_tilting(data, qh) -> bool:
    """Replay certificates and check Ext^1 = Ext^2 = 0 for T against itself.

    Accepts a PartialTiltingData, a CharacteristicTilting or a bare module.
    """
    if isinstance(data, CharacteristicTilting):
        if sorted(map(repr, data.labels)) != sorted(map(repr, qh.labels)):
            return False
        if not all(verify_tilting(d, qh) for d in data.parts):
            return False
        return verify_tilting(data.module, qh)
    if isinstance(data, PartialTiltingData):
        T = data.module
        proj = cokernel(data.embedding)[1]
        if not _sequence_exact(data.embedding, proj):
            return False
        if not _sequence_exact(data.kernel_inclusion, data.surjection):
            return False
        for cert in (data.cokernel_certificate, data.kernel_certificate, data.construction):
            if not cert.replay():
                return False
        if any(not qh.poset.less(l, data.label) for l in data.cokernel_certificate.labels):
            return False
        if any(not qh.poset.less(l, data.label) for l in data.kernel_certificate.labels):
            return False
        if any(not ext(qh.standards[mu], T, 1).is_zero() for mu in qh.poset):
            return False
        return verify_tilting(T, qh)
    T = data
    dcert, _ = try_delta_filtration(T, qh)
    ncert, _ = try_nabla_filtration(T, qh)
    if dcert is None or ncert is None or not dcert.replay() or not ncert.replay():
        return False
    return ext(T, T, 1).is_zero() and ext(T, T, 2).is_zero()


def _surjective(basis_src, composed, target_basis) -> bool:
    if not target_basis:
        return True
    if not composed:
        return False
    C = hom_coordinates(target_basis, composed)
    if C is None:
        raise InconsistencyError("composite left the target Hom lattice")
    return cokernel_invariants(C) == (0, ())


def approximation_check(data: PartialTiltingData, qh, probes: Sequence[AModule]) -> bool:
    """Delta(l) -> T(l) is a left F(nabla)-approximation and T(l) -> nabla(l) a right
    F(Delta)-approximation, tested on each probe in the matching category."""
    D = qh.standards[data.label]
    nabla = qh.costandard(data.label)
    for X in probes:
        if X.rank == 0:
            continue
        used = False
        if has_nabla_filtration(X, qh):
            used = True
            src = hom_space(data.module, X)
            comp = [f @ data.embedding for f in src]
            if not _surjective(src, comp, hom_space(D, X)):
                return False
        if has_delta_filtration(X, qh):
            used = True
            src = hom_space(X, data.module)
            comp = [data.surjection @ f for f in src]
            if not _surjective(src, comp, hom_space(X, nabla)):
                return False
        if not used:
            raise ValueError("probe lies in neither filtered category")
    return True


def add_t_membership(X: AModule, qh, T=None) -> bool:
    """X in add T, decided through add T = F(Delta) meet F(nabla)."""
    return has_delta_filtration(X, qh) and has_nabla_filtration(X, qh)


def in_additive_closure(X: AModule, Q: AModule) -> bool:
    """Direct test that X is a summand of some Q^n: id_X is a sum of maps factoring through Q."""
    if X.rank == 0:
        return True
    to_q = hom_space(X, Q)
    from_q = hom_space(Q, X)
    comps = [g @ f for f in to_q for g in from_q]
    ident = identity_morphism(X)
    if not comps:
        return False
    basis = hom_space(X, X)
    C = hom_coordinates(basis, comps)
    target = hom_coordinates(basis, [ident])
    return solve(C, target) is not None
