"""Exact arithmetic of numerical semigroups.

A numerical semigroup here is the set of nonnegative integer combinations of
a finite generator set.  When the generators are coprime the complement in
the positive integers is finite; its size is the *genus* (gap count) and its
maximum the *Frobenius number*.  When the gcd exceeds 1 membership is still
meaningful but the gap set is infinite, and gap-counting operations raise
:class:`InfiniteGaps`.

Generator counts in this package are tiny (a handful of path products) but
magnitudes can be huge, so three exact membership strategies are combined:

* the Apery set modulo the smallest generator (cached; O(1) per query once
  built, O(m log m) to build via Dijkstra over residues),
* a boolean sieve up to the query value, for small queries, and
* a pruned coefficient search with suffix-gcd reduction and a two-generator
  Frobenius shortcut, for queries too large to sieve.

All three agree everywhere; the test suite cross-checks them.
"""

from __future__ import annotations

import heapq
import math
from functools import lru_cache
from typing import Iterable, Optional, Tuple

__all__ = ["NumericalSemigroup", "InfiniteGaps"]

# Build the Apery table eagerly on first membership query when the smallest
# generator is at most this; sieve single queries up to this value.
_APERY_CUTOFF = 1 << 12
_SIEVE_CUTOFF = 1 << 20
# Refuse gap enumeration when the residue table would not fit comfortably.
_APERY_HARD_LIMIT = 1 << 25


class InfiniteGaps(ArithmeticError):
    """Gap count requested for a semigroup whose generators share a factor."""


def _sieve_member(gens: Tuple[int, ...], n: int) -> bool:
    reachable = bytearray(n + 1)
    reachable[0] = 1
    for g in gens:
        if g > n:
            continue
        for i in range(g, n + 1):
            if reachable[i - g]:
                reachable[i] = 1
    return bool(reachable[n])


class NumericalSemigroup:
    """Finitely generated sub-semigroup of the nonnegative integers."""

    __slots__ = ("generators", "gcd", "_apery", "_pair_bound", "_reduced")

    def __init__(self, generators: Iterable[int]):
        gens = sorted({int(g) for g in generators})
        if not gens:
            raise ValueError("a numerical semigroup needs at least one generator")
        if gens[0] < 1:
            raise ValueError("generators must be positive integers")
        self.generators: Tuple[int, ...] = tuple(gens)
        self.gcd: int = math.gcd(*gens)
        self._apery: Optional[Tuple[int, ...]] = None
        self._reduced: Optional["NumericalSemigroup"] = None
        # Smallest pq - p - q over coprime generator pairs: everything above
        # it is certainly contained (None when no coprime pair exists).
        bound = None
        for i, p in enumerate(gens):
            for q in gens[i + 1 :]:
                if math.gcd(p, q) == 1:
                    f = p * q - p - q
                    bound = f if bound is None else min(bound, f)
        if len(gens) == 1 and gens[0] == 1:
            bound = -1
        self._pair_bound = bound

    def __repr__(self) -> str:
        return f"NumericalSemigroup({', '.join(map(str, self.generators))})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    # -- membership -----------------------------------------------------------

    def contains(self, n: int) -> bool:
        """True iff n is a nonnegative integer combination of the generators."""
        n = int(n)
        if n < 0:
            return False
        if n == 0:
            return True
        if n % self.gcd:
            return False
        if n in self.generators:
            return True
        if self._pair_bound is not None and n > self._pair_bound:
            return True
        if self.gcd > 1:
            # Membership is inherited from the gcd-reduced semigroup.
            if self._reduced is None:
                self._reduced = NumericalSemigroup(g // self.gcd for g in self.generators)
            return self._reduced.contains(n // self.gcd)
        if self._apery is None and self.generators[0] <= _APERY_CUTOFF:
            self._ensure_apery()
        if self._apery is not None:
            return self._apery[n % self.generators[0]] <= n
        if n <= _SIEVE_CUTOFF:
            return _sieve_member(self.generators, n)
        return _search_member(self.generators, n)

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    # -- gap structure ----------------------------------------------------------

    def _require_coprime(self) -> None:
        if self.gcd != 1:
            raise InfiniteGaps(
                f"generators {self.generators} share the factor {self.gcd}; "
                "the gap set is infinite"
            )

    def _ensure_apery(self) -> Tuple[int, ...]:
        self._require_coprime()
        if self._apery is None:
            m = self.generators[0]
            if m > _APERY_HARD_LIMIT:
                raise ValueError(
                    f"smallest generator {m} is too large for exact gap enumeration"
                )
            dist = [0] + [-1] * (m - 1)
            heap = [(0, 0)]
            others = [g for g in self.generators if g % m]
            while heap:
                val, r = heapq.heappop(heap)
                if dist[r] != -1 and dist[r] < val:
                    continue
                for g in others:
                    nv = val + g
                    nr = nv % m
                    if dist[nr] == -1 or nv < dist[nr]:
                        dist[nr] = nv
                        heapq.heappush(heap, (nv, nr))
            self._apery = tuple(dist)
        return self._apery

    def apery_set(self, m: Optional[int] = None) -> Tuple[int, ...]:
        """Entry i is the least element of the semigroup congruent to i mod m.

        ``m`` must be a generator; it defaults to the smallest one.
        """
        self._require_coprime()
        if m is None or m == self.generators[0]:
            return self._ensure_apery()
        if m not in self.generators:
            raise ValueError(f"{m} is not a generator of {self!r}")
        base = self._ensure_apery()
        m0 = self.generators[0]
        # Least element per residue class mod m, derived from the mod-m0 table.
        best = [None] * m
        for r0, least in enumerate(base):
            val = least
            # Elements of the class are least + k*m0; classes mod m repeat
            # with period m, so scanning k in [0, m) covers every residue.
            for _ in range(m):
                rm = val % m
                if best[rm] is None or val < best[rm]:
                    best[rm] = val
                val += m0
        return tuple(best)

    def frobenius(self) -> int:
        """Largest integer not in the semigroup (-1 when it is all of N)."""
        ap = self._ensure_apery()
        return max(ap) - self.generators[0]

    def genus(self) -> int:
        """Number of positive integers missing from the semigroup."""
        ap = self._ensure_apery()
        m = self.generators[0]
        return sum(e // m for e in ap)

    def gaps(self) -> Tuple[int, ...]:
        """The missing positive integers, ascending."""
        self._require_coprime()
        f = self.frobenius()
        return tuple(n for n in range(1, f + 1) if not self.contains(n))


def _search_member(gens: Tuple[int, ...], n: int) -> bool:
    """Exhaustive coefficient search, exact for arbitrary magnitudes.

    Generators are scanned largest-first; the suffix gcd prunes residues and
    a coprime-pair Frobenius bound on each suffix accepts large remainders
    without recursion.
    """
    desc = tuple(sorted(gens, reverse=True))
    k = len(desc)
    suffix_gcd = [0] * k
    g = 0
    for i in range(k - 1, -1, -1):
        g = math.gcd(g, desc[i])
        suffix_gcd[i] = g
    pair_bound = [None] * k
    best = None
    for i in range(k - 1, -1, -1):
        for j in range(i + 1, k):
            if math.gcd(desc[i], desc[j]) == 1:
                f = desc[i] * desc[j] - desc[i] - desc[j]
                best = f if best is None else min(best, f)
        pair_bound[i] = best

    @lru_cache(maxsize=None)
    def reach(i: int, m: int) -> bool:
        if m == 0:
            return True
        if i == k:
            return False
        if m % suffix_gcd[i]:
            return False
        if i == k - 1:
            return True  # m is a positive multiple of the last generator
        if pair_bound[i] is not None and m > pair_bound[i]:
            return True
        top = desc[i]
        for c in range(m // top, -1, -1):
            if reach(i + 1, m - c * top):
                return True
        return False

    try:
        return reach(0, n)
    finally:
        reach.cache_clear()
