"""Partitions of lex-positive weights and the orders that drive reduction.

A Partition is a finite multiset of lex-positive rank-two weights, stored
as a non-decreasing tuple (tuple comparison is the lex order, so plain
sorting does the right thing).  Entries like (1, -2) are legal: positivity
is lexicographic, not coordinatewise.

Two strict partial orders on partitions are provided.  partition_lt
compares multiplicities at the lex-least weight where they differ;
partition_prec does the same but looks first only at weights whose first
coordinate is positive, falling back to partition_lt when the partitions
agree on all of those.  Basis triples (lambda, mu, k) are ordered by total
weight, then k, then mu under partition_lt, then lambda under
partition_prec.
"""

from __future__ import annotations

from typing import NamedTuple

from .liecore import Weight, is_positive, weight_add, zero_weight


class Partition:
    __slots__ = ("_entries",)

    def __init__(self, entries=()):
        clean = []
        for entry in entries:
            entry = (int(entry[0]), int(entry[1]))
            if not is_positive(entry):
                raise ValueError("partition entries must be lex-positive, got %r" % (entry,))
            clean.append(entry)
        clean.sort()
        object.__setattr__(self, "_entries", tuple(clean))

    @property
    def entries(self):
        return self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __bool__(self):
        return bool(self._entries)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(self._entries)

    def weight_sum(self) -> Weight:
        total = zero_weight(2)
        for entry in self._entries:
            total = weight_add(total, entry)
        return total

    def multiplicity(self, alpha) -> int:
        return self._entries.count(tuple(alpha))

    def support(self):
        """Distinct entries, lex-ascending."""
        return tuple(sorted(set(self._entries)))

    def positive_support(self):
        """Distinct entries whose first coordinate is positive."""
        return tuple(sorted(e for e in set(self._entries) if e[0] > 0))

    def stats(self):
        """(length, weight sum, support, positive support) in one call."""
        return (len(self._entries), self.weight_sum(), self.support(), self.positive_support())

    def remove_one(self, alpha) -> "Partition":
        """Partition with one copy of alpha removed; alpha must occur."""
        alpha = tuple(alpha)
        entries = list(self._entries)
        try:
            entries.remove(alpha)
        except ValueError:
            raise ValueError("%r does not occur in %s" % (alpha, self)) from None
        return Partition(entries)

    def add_one(self, alpha) -> "Partition":
        return Partition(self._entries + (tuple(alpha),))

    def __str__(self):
        if not self._entries:
            return "[]"
        return "[" + ", ".join("(%d,%d)" % e for e in self._entries) + "]"

    def __repr__(self):
        return "Partition(%s)" % self

    def to_json(self) -> list:
        return [list(e) for e in self._entries]

    @staticmethod
    def from_json(data) -> "Partition":
        return Partition(tuple(e) for e in data)


EMPTY = Partition()


def diff_support(lam: Partition, mu: Partition):
    """Weights where the two multiplicities differ, lex-ascending."""
    weights = set(lam.support()) | set(mu.support())
    return tuple(sorted(a for a in weights if lam.multiplicity(a) != mu.multiplicity(a)))


def diff_support_positive(lam: Partition, mu: Partition):
    return tuple(a for a in diff_support(lam, mu) if a[0] > 0)


def partition_lt(lam: Partition, mu: Partition) -> bool:
    """Strictly smaller multiplicity at the lex-least disagreement weight."""
    diff = diff_support(lam, mu)
    if not diff:
        return False
    alpha = diff[0]
    return lam.multiplicity(alpha) < mu.multiplicity(alpha)


def partition_prec(lam: Partition, mu: Partition) -> bool:
    """Like partition_lt but positive-first-coordinate weights take priority."""
    diff = diff_support_positive(lam, mu)
    if diff:
        alpha = diff[0]
        return lam.multiplicity(alpha) < mu.multiplicity(alpha)
    return partition_lt(lam, mu)


class Triple(NamedTuple):
    lam: Partition
    mu: Partition
    k: int

    def weight_sum(self) -> Weight:
        return weight_add(self.lam.weight_sum(), self.mu.weight_sum())

    def __str__(self):
        return "(%s, %s, %d)" % (self.lam, self.mu, self.k)

    def to_json(self) -> dict:
        return {"lambda": self.lam.to_json(), "mu": self.mu.to_json(), "k": self.k}

    @staticmethod
    def from_json(data) -> "Triple":
        return Triple(Partition.from_json(data["lambda"]), Partition.from_json(data["mu"]), int(data["k"]))


TRIPLE_MIN = Triple(EMPTY, EMPTY, 0)


def triple_prec(t: Triple, u: Triple) -> bool:
    """Strict order on basis triples: weight sum, then k, then mu, then lambda."""
    if t.k < 0 or u.k < 0:
        raise ValueError("k must be non-negative")
    a, b = t.weight_sum(), u.weight_sum()
    if a != b:
        return a < b
    if t.k != u.k:
        return t.k < u.k
    if t.mu != u.mu:
        return partition_lt(t.mu, u.mu)
    return partition_prec(t.lam, u.lam)


def triple_preceq(t: Triple, u: Triple) -> bool:
    return t == u or triple_prec(t, u)


def triple_max(triples) -> Triple:
    """Maximum under triple_prec; the triples must be pairwise comparable-or-equal."""
    best = None
    for t in triples:
        if best is None or triple_prec(best, t):
            best = t
    if best is None:
        raise ValueError("triple_max of an empty collection")
    return best
