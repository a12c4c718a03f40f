"""Brute-force reference computations.

Nothing here imports the package: pairings come from exhaustive matching
generation, loops from union-find, free Poisson moments from counting
non-crossing partitions.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def fuss_catalan(n: int) -> int:
    """(1/(2n+1)) binom(3n, n)."""
    return comb(3 * n, n) // (2 * n + 1)


def perfect_matchings(n: int):
    """Every fixed-point-free involution on range(n), as tuples."""
    def rec(free):
        if not free:
            yield {}
            return
        first = free[0]
        for k in range(1, len(free)):
            partner = free[k]
            rest = free[1:k] + free[k + 1:]
            for m in rec(rest):
                m = dict(m)
                m[first] = partner
                m[partner] = first
                yield m
    if n % 2:
        return
    for m in rec(list(range(n))):
        yield tuple(m[i] for i in range(n))


def crosses(match) -> bool:
    arcs = [(i, j) for i, j in enumerate(match) if i < j]
    for (a, b), (c, d) in combinations(arcs, 2):
        if a < c < b < d or c < a < d < b:
            return True
    return False


def brute_pairings(word: str) -> list[tuple]:
    out = []
    for m in perfect_matchings(len(word)):
        if all(word[i] == word[j] for i, j in enumerate(m)) and not crosses(m):
            out.append(m)
    return sorted(out)


def loop_colors(word: str, *matches) -> dict[str, int]:
    """Closed loops formed by overlaying matchings on the same points."""
    parent = list(range(len(word)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in matches:
        for i, j in enumerate(m):
            parent[find(i)] = find(j)
    roots = {find(i) for i in range(len(word))}
    counts: dict[str, int] = {}
    for r in roots:
        counts[word[r]] = counts.get(word[r], 0) + 1
    return counts


def weight(counts: dict[str, int], deltas: dict[str, Fraction]):
    value = Fraction(1)
    for c, k in counts.items():
        value *= Fraction(deltas[c]) ** k
    return value


def brute_gram(word: str, deltas: dict[str, Fraction]) -> list[list[Fraction]]:
    basis = brute_pairings(word)
    return [[weight(loop_colors(word, d, e), deltas) for e in basis] for d in basis]


def set_partitions(n: int):
    def rec(i, blocks):
        if i == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()
    yield from rec(0, [])


def noncrossing(partition) -> bool:
    owner = {}
    for k, b in enumerate(partition):
        for x in b:
            owner[x] = k
    n = len(owner)
    for a, b, c, d in combinations(range(n), 4):
        if owner[a] == owner[c] and owner[b] == owner[d] and owner[a] != owner[b]:
            return False
    return True


def free_poisson_moment(alpha, n: int):
    """sum over non-crossing partitions of alpha^(number of blocks)."""
    if n == 0:
        return Fraction(1)
    alpha = Fraction(alpha)
    return sum((alpha ** len(p) for p in set_partitions(n) if noncrossing(p)), Fraction(0))


def fc_cup_trace(n: int, deltas: dict[str, Fraction]):
    """Closure sum for n side-by-side a-over-b double cups, by brute force."""
    word = "abba" * n
    cup = [0] * (4 * n)
    for k in range(n):
        o = 4 * k
        cup[o], cup[o + 3] = o + 3, o
        cup[o + 1], cup[o + 2] = o + 2, o + 1
    total = Fraction(0)
    for closure in brute_pairings(word):
        total += weight(loop_colors(word, cup, closure), deltas)
    return total


def brute_epi_count(bottom: str, top: str) -> int:
    """Partial non-crossing matchings of *bottom* with through points spelling *top*
    and no arc enclosing a through point."""
    n = len(bottom)
    count = 0
    for k in range(n + 1):
        for through in combinations(range(n), k):
            if "".join(bottom[t] for t in through) != top:
                continue
            rest = [i for i in range(n) if i not in through]
            sub = "".join(bottom[i] for i in rest)
            for m in brute_pairings(sub):
                ok = True
                for a, b in enumerate(m):
                    lo, hi = rest[a], rest[b]
                    if lo < hi and any(lo < t < hi for t in through):
                        ok = False
                if ok:
                    count += 1
    return count
