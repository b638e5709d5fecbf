"""Finite preorders, maximal/minimal elements and rank layers."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np


class Comparison(str, enum.Enum):
    STRICTLY_PREFERRED = "strictly_preferred"
    STRICTLY_DISPREFERRED = "strictly_dispreferred"
    INDIFFERENT = "indifferent"
    INCOMPARABLE = "incomparable"


def transitive_closure(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    for k in range(m.shape[0]):
        m |= np.outer(m[:, k], m[k, :])
    return m


class Preorder:
    """A reflexive, transitive relation over an ordered finite carrier.

    ``r.geq(a, b)`` reads "a is weakly preferred to b". The carrier order fixes
    the order of every returned set.
    """

    def __init__(self, elements: Sequence[Hashable], matrix, check: bool = True):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("carrier elements must be distinct")
        self.matrix = np.array(matrix, dtype=bool).reshape(len(self.elements), len(self.elements))
        self.matrix.setflags(write=False)
        if check:
            if not self.matrix.diagonal().all():
                raise ValueError("relation is not reflexive")
            if not is_transitive(self.matrix):
                raise ValueError("relation is not transitive")

    @classmethod
    def from_pairs(cls, elements, pairs: Iterable, close: bool = True) -> "Preorder":
        """Build from ``(better, worse)`` pairs, closing reflexively and transitively."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        m = np.eye(len(elements), dtype=bool)
        for a, b in pairs:
            m[index[a], index[b]] = True
        if close:
            m = transitive_closure(m)
        return cls(elements, m)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, Preorder) and self.elements == other.elements
                and np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.elements, self.matrix.tobytes()))

    def __repr__(self):
        return f"Preorder({len(self.elements)} elements, {int(self.matrix.sum())} pairs)"

    def geq(self, a, b) -> bool:
        return bool(self.matrix[self.index[a], self.index[b]])

    def strictly(self, a, b) -> bool:
        i, j = self.index[a], self.index[b]
        return bool(self.matrix[i, j] and not self.matrix[j, i])

    def indifferent(self, a, b) -> bool:
        i, j = self.index[a], self.index[b]
        return bool(self.matrix[i, j] and self.matrix[j, i])

    def incomparable(self, a, b) -> bool:
        i, j = self.index[a], self.index[b]
        return not (self.matrix[i, j] or self.matrix[j, i])

    def compare(self, a, b) -> Comparison:
        i, j = self.index[a], self.index[b]
        fwd, bwd = self.matrix[i, j], self.matrix[j, i]
        if fwd and not bwd:
            return Comparison.STRICTLY_PREFERRED
        if bwd and not fwd:
            return Comparison.STRICTLY_DISPREFERRED
        if fwd:
            return Comparison.INDIFFERENT
        return Comparison.INCOMPARABLE

    def pairs(self) -> set:
        ii, jj = np.nonzero(self.matrix)
        return {(self.elements[i], self.elements[j]) for i, j in zip(ii, jj)}

    def strict_matrix(self) -> np.ndarray:
        return self.matrix & ~self.matrix.T

    def restrict(self, subset) -> "Preorder":
        keep = sorted(self.index[e] for e in set(subset))
        return Preorder([self.elements[i] for i in keep],
                        self.matrix[np.ix_(keep, keep)], check=False)

    def inverse(self) -> "Preorder":
        return Preorder(self.elements, self.matrix.T, check=False)

    def is_total(self) -> bool:
        return bool((self.matrix | self.matrix.T).all())

    def classes(self) -> list:
        """Indifference classes (mutual weak preference), in carrier order of their first member."""
        sym = self.matrix & self.matrix.T
        seen = set()
        out = []
        for i in range(len(self.elements)):
            if i in seen:
                continue
            members = [j for j in np.nonzero(sym[i])[0]]
            seen.update(members)
            out.append([self.elements[j] for j in members])
        return out


def is_transitive(m: np.ndarray) -> bool:
    m = np.asarray(m, dtype=bool)
    composed = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    return bool(not (composed & ~m).any())


def _indices(r, subset):
    return sorted(r.index[u] for u in set(subset))


def maximal(subset, r: Preorder) -> list:
    """Elements of ``subset`` not strictly dominated by another element of ``subset``."""
    idx = _indices(r, subset)
    if not idx:
        return []
    strict = r.strict_matrix()[np.ix_(idx, idx)]
    dominated = strict.any(axis=0)
    return [r.elements[i] for i, d in zip(idx, dominated) if not d]


def minimal(subset, r: Preorder) -> list:
    idx = _indices(r, subset)
    if not idx:
        return []
    strict = r.strict_matrix()[np.ix_(idx, idx)]
    dominating = strict.any(axis=1)
    return [r.elements[i] for i, d in zip(idx, dominating) if not d]


@dataclass
class RankMap:
    ranks: dict
    kmax: int
    layers: list = field(default_factory=list)

    def __getitem__(self, element):
        return self.ranks[element]


def rank_map(r: Preorder) -> RankMap:
    """Peel maximal layers: rank 0 is ``maximal(carrier)``, rank 1 the maximal rest, and so on."""
    if not len(r):
        raise ValueError("rank map of an empty carrier")
    strict = r.strict_matrix()
    remaining = np.ones(len(r), dtype=bool)
    ranks = {}
    layers = []
    k = 0
    while remaining.any():
        # an element is maximal when no remaining element strictly beats it
        dominated = (strict & remaining[:, None]).any(axis=0)
        layer = remaining & ~dominated
        members = [r.elements[i] for i in np.nonzero(layer)[0]]
        for e in members:
            ranks[e] = k
        layers.append(members)
        remaining &= ~layer
        k += 1
    return RankMap(ranks, k - 1, layers)
