"""Small named algebras used throughout the tests, demos and CLI fixtures.

* ``trivial``: the ground ring itself, one label.
* ``E1``: lower triangular 2 x 2 matrices, i.e. the path algebra of 1 -> 2,
  with 2 < 1; Delta(1) = P(1) of rank 2 and Delta(2) = P(2) of rank 1.
* ``E2``: the Nakayama algebra of 1 -> 2 -> 3 with the composite of the two
  arrows set to zero, order 1 < 2 < 3; the standards are the simples.
* ``E1xE1``: the tensor square of E1 with the product order.
* ``random_triangular(seed)``: a random acyclic quiver without relations
  (hereditary, so every total order works) with a random total order.
* ``dual_numbers``: k[x]/(x^2), which has no quasi-hereditary structure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict

from .algebra import Algebra, AModule, outer_tensor, tensor_algebra
from .linalg import GroundRing, Matrix
from .poset import Poset
from .qh import QHStructure, standard_modules, verify_split_qh
from .quiver import Quiver, compile_quiver


@dataclass
class CorpusItem:
    name: str
    algebra: Algebra
    poset: Poset
    standards: Dict

    def verify(self) -> QHStructure:
        return verify_split_qh(self.algebra, self.poset, self.standards)


_CACHE: dict = {}


def _cached(key, build):
    if key not in _CACHE:
        _CACHE[key] = build()
    return _CACHE[key]


def quiver_item(name, ring, vertices, arrows, relations, poset, max_length=10) -> CorpusItem:
    Q = Quiver(vertices, arrows)
    A, _ = compile_quiver(Q, relations, ring, max_length=max_length, name=name)
    vertex = {v: i for i, v in enumerate(vertices)}
    return CorpusItem(name, A, poset, standard_modules(A, poset, vertex))


def trivial(ring: GroundRing) -> CorpusItem:
    def build():
        A = Algebra(ring, [[[1]]], [1], [[1]], ["1"], name="R")
        st = {"1": AModule(A, [Matrix.identity(ring, 1)], [0], name="Delta(1)")}
        return CorpusItem("R", A, Poset(["1"]), st)
    return _cached(("R", ring), build)


def E1(ring: GroundRing) -> CorpusItem:
    return _cached(("E1", ring), lambda: quiver_item(
        "E1", ring, ["1", "2"], [("a", "1", "2")], [], Poset(["1", "2"], [("2", "1")])))


def E1_wrong_order(ring: GroundRing) -> CorpusItem:
    """E1 with the same standards but the order 1 < 2."""
    good = E1(ring)
    return CorpusItem("E1-wrong", good.algebra, Poset(["1", "2"], [("1", "2")]), good.standards)


def E2(ring: GroundRing) -> CorpusItem:
    return _cached(("E2", ring), lambda: quiver_item(
        "E2", ring, ["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")], ["b*a"],
        Poset.chain(["1", "2", "3"])))


def E1xE1(ring: GroundRing) -> CorpusItem:
    def build():
        e = E1(ring)
        AB = tensor_algebra(e.algebra, e.algebra, name="E1xE1")
        prod = e.poset.product(e.poset)
        name = lambda t: f"{t[0]}{t[1]}"
        poset = Poset([name(x) for x in prod.elements],
                      [(name(a), name(b)) for a, b in prod.covers],
                      [name(x) for x in prod.enumeration])
        st = {name((l, m)): outer_tensor(e.standards[l], e.standards[m], AB,
                                         name=f"Delta({l}{m})")
              for l in e.poset.elements for m in e.poset.elements}
        return CorpusItem("E1xE1", AB, poset, st)
    return _cached(("E1xE1", ring), build)


def random_triangular(ring: GroundRing, seed: int = 7, vertices: int = 3,
                      max_arrows: int = 3) -> CorpusItem:
    """A random acyclic quiver (arrows go from lower to higher vertex number) and a random
    total order on its vertices; hereditary, hence quasi-hereditary for any order."""
    def build():
        rng = random.Random(seed)
        names = [str(i + 1) for i in range(vertices)]
        pairs = [(i, j) for i in range(vertices) for j in range(i + 1, vertices)]
        chosen = []
        for i, j in pairs:
            if rng.random() < 0.6:
                chosen.append((i, j))
        if not chosen:
            chosen.append(pairs[0])
        chosen = chosen[:max_arrows]
        arrows = [(f"x{k}", names[i], names[j]) for k, (i, j) in enumerate(chosen)]
        order = names[:]
        rng.shuffle(order)
        return quiver_item(f"rand{seed}", ring, names, arrows, [], Poset.chain(order))
    return _cached(("rand", ring, seed, vertices, max_arrows), build)


def dual_numbers(ring: GroundRing) -> Algebra:
    """k[x]/(x^2) with basis 1, x."""
    return _cached(("dual", ring), lambda: Algebra(
        ring, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [1, 0], [[1, 0]], ["1", "x"],
        name="dual-numbers"))


def dual_number_candidates(ring: GroundRing) -> list:
    """Every quotient type of the regular module: A itself and A / (x)."""
    A = dual_numbers(ring)
    reg = AModule(A, A.left_matrices, A.left_weight, name="A")
    simple = AModule(A, [Matrix.identity(ring, 1), Matrix.zeros(ring, 1, 1)], [0], name="k")
    return [reg, simple]


def corpus(ring: GroundRing, seed: int = 7) -> list:
    """The acceptance corpus over one ground ring."""
    return [trivial(ring), E1(ring), E2(ring), E1xE1(ring), random_triangular(ring, seed)]
