"""Finite posets with a fixed increasing enumeration."""

from __future__ import annotations

from itertools import product as _product
from typing import Hashable, Iterable, Optional, Sequence


class PosetError(ValueError):
    pass


class Poset:
    """A finite poset given by covering pairs (lower, upper).

    `enumeration` lists the elements so that lambda < mu implies lambda comes
    first.  When omitted, a stable topological sort of `elements` is used.
    """

    def __init__(self, elements: Sequence[Hashable], covers: Iterable = (),
                 enumeration: Optional[Sequence[Hashable]] = None):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate poset elements")
        eset = set(self.elements)
        self.covers = tuple((a, b) for a, b in covers)
        for a, b in self.covers:
            if a not in eset or b not in eset:
                raise PosetError(f"cover ({a}, {b}) mentions an unknown element")
        self._below = self._closure()
        for a in self.elements:
            if a in self._below[a]:
                raise PosetError(f"order has a cycle through {a}")
        if enumeration is None:
            enumeration = self._toposort()
        self.enumeration = tuple(enumeration)
        if sorted(map(repr, self.enumeration)) != sorted(map(repr, self.elements)):
            raise PosetError("enumeration must list every element exactly once")
        self._index = {x: i for i, x in enumerate(self.enumeration)}
        for a in self.elements:
            for b in self._below[a]:
                if self._index[b] >= self._index[a]:
                    raise PosetError(f"enumeration puts {a} before {b} although {b} < {a}")

    def _closure(self):
        below = {x: set() for x in self.elements}
        up = {x: [] for x in self.elements}
        for a, b in self.covers:
            up[a].append(b)
        for x in self.elements:
            stack = list(up[x])
            seen = set()
            while stack:
                y = stack.pop()
                if y in seen:
                    continue
                seen.add(y)
                below[y].add(x)
                stack.extend(up[y])
        return below

    def _toposort(self):
        out, placed = [], set()
        while len(out) < len(self.elements):
            for x in self.elements:
                if x not in placed and self._below[x] <= placed:
                    out.append(x)
                    placed.add(x)
                    break
        return out

    def less(self, a, b) -> bool:
        return a in self._below[b]

    def leq(self, a, b) -> bool:
        return a == b or self.less(a, b)

    def index(self, a) -> int:
        return self._index[a]

    def decreasing(self) -> tuple:
        return tuple(reversed(self.enumeration))

    def above(self, a) -> tuple:
        """Elements strictly greater than a, in enumeration order."""
        return tuple(x for x in self.enumeration if self.less(a, x))

    def below(self, a) -> tuple:
        return tuple(x for x in self.enumeration if self.less(x, a))

    def reversed(self) -> "Poset":
        return Poset(self.elements, [(b, a) for a, b in self.covers], self.decreasing())

    def product(self, other: "Poset") -> "Poset":
        """Componentwise order on pairs; labels are (a, b) tuples."""
        elems = [(a, b) for a in self.enumeration for b in other.enumeration]
        covers = [((a, b), (c, b)) for (a, c) in self.covers for b in other.elements]
        covers += [((a, b), (a, d)) for (b, d) in other.covers for a in self.elements]
        return Poset(elems, covers)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.enumeration)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and all(
            self.less(a, b) == other.less(a, b) for a, b in _product(self.elements, repeat=2))

    def __repr__(self):
        return f"Poset({list(self.enumeration)}, covers={list(self.covers)})"

    @classmethod
    def chain(cls, labels: Sequence[Hashable]) -> "Poset":
        """Total order labels[0] < labels[1] < ..."""
        labels = list(labels)
        return cls(labels, list(zip(labels, labels[1:])), labels)
