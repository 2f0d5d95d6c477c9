"""Reduction from ZZ to GF(p) and checks of the integral base-change statements."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence

from sympy import factorint, isprime

from .algebra import Algebra, AModule, change_ring_module
from .filtrations import InconsistencyError, has_delta_filtration
from .homological import ext, find_isomorphism, hom_rank, hom_space
from .linalg import GF, is_invertible
from .qh import QHStructure, verify_split_qh

DEFAULT_PRIMES = (2, 3, 5, 7)


@dataclass
class PrimeSample:
    primes: tuple
    provenance: Dict[int, str]       # prime -> "user" | "automatic"

    def __iter__(self):
        return iter(self.primes)


def _prime_divisors(divisors: Iterable[int]) -> set:
    out = set()
    for d in divisors:
        d = abs(int(d))
        if d > 1:
            out.update(factorint(d))
    return out


def bad_primes(qh: QHStructure, modules: Sequence[AModule] = ()) -> set:
    """Primes dividing a nonunit elementary divisor in the Ext groups of the structure
    and of the supplied modules against standards and costandards."""
    if qh.ring.kind != "ZZ":
        return set()
    divisors = []
    probes = list(qh.standards.values()) + list(modules)
    for lam in qh.labels:
        nabla = qh.costandard(lam)
        D = qh.standards[lam]
        for X in probes:
            divisors += ext(X, nabla, 1).torsion
            divisors += ext(D, X, 1).torsion
    return _prime_divisors(divisors)


def prime_sample(qh: Optional[QHStructure] = None, user: Sequence[int] = (),
                 modules: Sequence[AModule] = (), defaults: Sequence[int] = DEFAULT_PRIMES
                 ) -> PrimeSample:
    prov = {}
    for p in user:
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        prov[int(p)] = "user"
    auto = set(defaults)
    if qh is not None:
        auto |= bad_primes(qh, modules)
    for p in auto:
        prov.setdefault(int(p), "automatic")
    return PrimeSample(tuple(sorted(prov)), prov)


def _reduce_algebra(A: Algebra, p: int) -> Algebra:
    cache = A.__dict__.setdefault("_reductions", {})
    if p not in cache:
        if A.ring.kind != "ZZ":
            raise ValueError("reduction mod p needs an integral algebra")
        F = GF(p)
        B = Algebra(F, [[[x % p for x in v] for v in row] for row in A.c],
                    [x % p for x in A.unit], [[x % p for x in e] for e in A.idempotents],
                    A.names, check=False, name=f"{A.name}(mod {p})" if A.name else "")
        if (B.left_weight, B.right_weight) != (A.left_weight, A.right_weight):
            raise InconsistencyError("reduction changed the idempotent weights")
        cache[p] = B
    return cache[p]


def reduce_mod_p(obj, p: int):
    """Entrywise reduction of an Algebra, AModule or QHStructure over ZZ.

    For a QHStructure the axioms are re-verified over GF(p) and the reduced
    costandards are matched against the fiber's own costandards by explicit
    isomorphisms (stored as `costandard_witnesses`).
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(obj, Algebra):
        return _reduce_algebra(obj, p)
    if isinstance(obj, AModule):
        if obj.ring.kind != "ZZ":
            raise ValueError("reduction mod p needs an integral module")
        B = _reduce_algebra(obj.algebra, p)
        return change_ring_module(obj, B, lambda x: x % p)
    if isinstance(obj, QHStructure):
        cache = obj.__dict__.setdefault("_fibers", {})
        if p in cache:
            return cache[p]
        B = _reduce_algebra(obj.algebra, p)
        st = {l: reduce_mod_p(D, p) for l, D in obj.standards.items()}
        fiber = verify_split_qh(B, obj.poset, st)
        wit = {}
        for l in obj.labels:
            red = reduce_mod_p(obj.costandard(l), p)
            f = find_isomorphism(red, fiber.costandard(l))
            if f is None:
                raise InconsistencyError(f"reduced costandard {l} differs from the fiber's at p={p}")
            wit[l] = f
        fiber.costandard_witnesses = wit
        cache[p] = fiber
        return fiber
    raise TypeError(f"cannot reduce {type(obj).__name__}")


@dataclass
class HomBaseChangeReport:
    integral_rank: int
    fiber_ranks: Dict[int, int]

    @property
    def failing_primes(self) -> tuple:
        return tuple(p for p, r in self.fiber_ranks.items() if r != self.integral_rank)

    @property
    def ok(self) -> bool:
        return not self.failing_primes


def hom_base_change_check(M: AModule, N: AModule, sample: Iterable[int]) -> HomBaseChangeReport:
    """rank_ZZ Hom(M, N) against dim Hom(M(p), N(p)) at every sampled prime."""
    r = hom_rank(M, N)
    fibers = {p: hom_rank(reduce_mod_p(M, p), reduce_mod_p(N, p)) for p in sample}
    return HomBaseChangeReport(r, fibers)


@dataclass
class FiberReport:
    ext_criterion: bool
    fibers: Dict[int, bool]
    note: str = "fiber agreement is sampled evidence for the converse direction"

    @property
    def contract_holds(self) -> bool:
        return not self.ext_criterion or all(self.fibers.values())

    @property
    def failing_primes(self) -> tuple:
        return tuple(p for p, ok in self.fibers.items() if not ok)


def fiberwise_filtration_check(M: AModule, qh: QHStructure, sample: Iterable[int]) -> FiberReport:
    """The integral Ext criterion for a standard filtration, and the same test on each fiber."""
    crit = has_delta_filtration(M, qh)
    fibers = {}
    for p in sample:
        fq = reduce_mod_p(qh, p)
        fibers[p] = has_delta_filtration(reduce_mod_p(M, p), fq)
    return FiberReport(crit, fibers)


@dataclass
class Recognition:
    witness: Optional[object]
    multiplicities: Dict
    diagnostic: str = ""


def standard_recognition(M: AModule, lam, qh: QHStructure) -> Recognition:
    """An explicit isomorphism Delta(lam) -> M, or None with the reason."""
    mult = {mu: hom_rank(M, qh.costandard(mu)) for mu in qh.labels}
    want = {mu: int(mu == lam) for mu in qh.labels}
    if mult != want:
        return Recognition(None, mult, "multiplicities differ from those of the standard")
    D = qh.standards[lam]
    H = hom_space(D, M)
    if len(H) == 1 and H[0].matrix.shape[0] == H[0].matrix.shape[1] and \
            is_invertible(H[0].matrix):
        return Recognition(H[0], mult)
    f = find_isomorphism(D, M)
    if f is None:
        return Recognition(None, mult, "no invertible homomorphism found")
    return Recognition(f, mult)


def reduce_tilting_check(tilting, qh: QHStructure, p: int) -> bool:
    """The reduction of each integral T(l) is a tilting summand for the fiber structure."""
    from .tilting import verify_tilting
    fq = reduce_mod_p(qh, p)
    return all(verify_tilting(reduce_mod_p(d.module, p), fq) for d in tilting.parts)
