"""Colored non-crossing string diagrams.

Boundary points of a diagram sit on a disk and are read clockwise starting
at the top-left corner. A box ``alpha -> beta`` (bottom ``alpha``, top
``beta``) therefore has boundary word ``beta + reversed(alpha)``: top points
left to right, then bottom points right to left. Elements without a box
structure ("disk elements") put every point on top.

A diagram is stored as its match array, an involution on ``0..n-1``.
All composition goes through :func:`glue`, which follows strands across
identified points and counts the closed loops by color.
"""

from __future__ import annotations

import ast
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import tolerance
from .errors import BoundaryMismatch, DegenerateDelta, InvalidWord, NotAnInsertion, NumericFailure
from .scalars import ONE, ZERO, ScalarPoly, as_coeff

SHADES = ("N", "P", "M")
_STEP = {("N", "a"): "P", ("P", "a"): "N", ("P", "b"): "M", ("M", "b"): "P"}


@dataclass(frozen=True)
class ColorSpec:
    """Color labels and their loop parameters (``None`` keeps a color symbolic)."""

    colors: tuple[str, ...]
    delta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.colors)) != len(self.colors):
            raise ValueError("color labels must be distinct")
        for c, d in self.delta.items():
            if c not in self.colors:
                raise ValueError(f"loop parameter for unknown color {c!r}")
            if d is not None and not d > 0:
                raise ValueError(f"loop parameter for {c!r} must be positive")

    def numeric(self) -> dict[str, object]:
        return {c: d for c, d in self.delta.items() if d is not None}


@dataclass(frozen=True)
class ShadedWord:
    """A boundary word; ``shading`` is N, P or M in N-P-M mode and None otherwise."""

    letters: str
    shading: str | None = None

    def __post_init__(self):
        if self.shading is not None and self.shading not in SHADES:
            raise ValueError(f"unknown shading {self.shading!r}")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return f"{self.shading}|{self.letters}" if self.shading else self.letters

    def walk(self) -> list[str] | None:
        """Shades of the regions before each letter and after the last, or None."""
        if self.shading is None:
            return None
        shades = [self.shading]
        for ch in self.letters:
            nxt = _STEP.get((shades[-1], ch))
            if nxt is None:
                return None
            shades.append(nxt)
        return shades

    def reversed(self) -> "ShadedWord":
        return ShadedWord(self.letters[::-1], self.shading)


def as_word(word) -> ShadedWord:
    if isinstance(word, ShadedWord):
        return word
    return ShadedWord(str(word))


def validate_word(word) -> bool:
    word = as_word(word)
    if word.shading is None:
        return True
    shades = word.walk()
    return shades is not None and shades[-1] == word.shading


def _require_valid(word: ShadedWord) -> None:
    if not validate_word(word):
        raise InvalidWord(f"inconsistent shading for word {word}")


# ---------------------------------------------------------------- pairings

@lru_cache(maxsize=None)
def _matches(letters: str) -> tuple[tuple[int, ...], ...]:
    """All color-matched non-crossing involutions of *letters*, lexicographic."""
    n = len(letters)
    if n == 0:
        return ((),)
    if n % 2:
        return ()
    out = []
    first = letters[0]
    for j in range(1, n, 2):
        if letters[j] != first:
            continue
        inner = _matches(letters[1:j])
        if not inner:
            continue
        outer = _matches(letters[j + 1:])
        if not outer:
            continue
        for a in inner:
            for b in outer:
                m = [j] + [x + 1 for x in a] + [0] + [x + j + 1 for x in b]
                out.append(tuple(m))
    out.sort()
    return tuple(out)


@lru_cache(maxsize=None)
def _count(letters: str) -> int:
    n = len(letters)
    if n == 0:
        return 1
    if n % 2:
        return 0
    total = 0
    for j in range(1, n, 2):
        if letters[j] == letters[0]:
            inner = _count(letters[1:j])
            if inner:
                total += inner * _count(letters[j + 1:])
    return total


@dataclass(frozen=True)
class PlanarPairing:
    word: ShadedWord
    match: tuple[int, ...]

    def __post_init__(self):
        if not is_planar_pairing(self.word.letters, self.match):
            raise ValueError(f"not a color-matched non-crossing pairing: {self.match}")

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.match) if i < j]

    def __str__(self):
        return format_pairing(self.word, self.match)


def is_planar_pairing(letters: str, match: Sequence[int]) -> bool:
    n = len(letters)
    if len(match) != n or n % 2:
        return False
    for i, j in enumerate(match):
        if not 0 <= j < n or j == i or match[j] != i or letters[i] != letters[j]:
            return False
    stack = []
    for i, j in enumerate(match):
        if j > i:
            stack.append(i)
        elif not stack or stack.pop() != j:
            return False
    return True


def enumerate_pairings(word) -> list[PlanarPairing]:
    word = as_word(word)
    _require_valid(word)
    return [PlanarPairing(word, m) for m in _matches(word.letters)]


def count_pairings(word) -> int:
    word = as_word(word)
    _require_valid(word)
    return _count(word.letters)


# ---------------------------------------------------------------- literals

_LITERAL = re.compile(r"^\s*(?:([NPM])\|)?([^:\s]*)\s*:\s*(\[.*\])\s*$")


def parse_pairing(text: str) -> PlanarPairing:
    """Parse ``aabb:[(0,1),(2,3)]`` or ``P|aabb:[(0,1),(2,3)]``."""
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"bad diagram literal {text!r}")
    word = ShadedWord(m.group(2), m.group(1))
    _require_valid(word)
    pairs = ast.literal_eval(m.group(3))
    match = [-1] * len(word)
    for i, j in pairs:
        if not (0 <= i < len(word) and 0 <= j < len(word)) or match[i] != -1 or match[j] != -1:
            raise ValueError(f"bad pair ({i}, {j}) in {text!r}")
        match[i], match[j] = j, i
    if -1 in match:
        raise ValueError(f"unpaired point in {text!r}")
    return PlanarPairing(word, tuple(match))


def format_pairing(word: ShadedWord, match: Sequence[int]) -> str:
    pairs = ",".join(f"({i},{j})" for i, j in enumerate(match) if i < j)
    return f"{word}:[{pairs}]"


# ---------------------------------------------------------------- gluing

Node = tuple  # (part index, point index)


def glue(parts: Sequence[tuple[str, Sequence[int]]],
         joins: Iterable[tuple[Node, Node]],
         outputs: Sequence[Node]):
    """Glue several diagrams along identified boundary points.

    ``parts`` are ``(letters, match)`` pairs, ``joins`` identify two points
    and ``outputs`` lists the free points in the order of the result's
    boundary. Returns ``(match, loops)`` with ``loops`` a Counter of closed
    loops per color, or ``None`` if a join connects different colors.
    """
    link: dict[Node, Node] = {}
    for p, q in joins:
        if parts[p[0]][0][p[1]] != parts[q[0]][0][q[1]]:
            return None
        link[p] = q
        link[q] = p
    where = {node: k for k, node in enumerate(outputs)}
    result = [-1] * len(outputs)
    seen: set[Node] = set()
    for k, start in enumerate(outputs):
        if result[k] != -1:
            continue
        node = start
        while True:
            seen.add(node)
            nxt = (node[0], parts[node[0]][1][node[1]])
            seen.add(nxt)
            if nxt in where:
                break
            node = link[nxt]
        j = where[nxt]
        result[k] = j
        result[j] = k
    loops: Counter = Counter()
    for start in link:
        if start in seen:
            continue
        loops[parts[start[0]][0][start[1]]] += 1
        node = start
        while True:
            seen.add(node)
            nxt = (node[0], parts[node[0]][1][node[1]])
            seen.add(nxt)
            node = link[nxt]
            if node == start:
                break
    return tuple(result), loops


# ---------------------------------------------------------------- elements

class DiagramElement:
    """A ScalarPoly-combination of pairings over one boundary word.

    ``n_top`` is None for disk elements; for a box it is the number of top
    points, the rest of the word being the bottom read right to left.
    """

    __slots__ = ("word", "n_top", "_terms")

    def __init__(self, word, terms: Mapping[tuple, object] | None = None, n_top: int | None = None):
        self.word = as_word(word)
        self.n_top = n_top
        clean: dict[tuple, ScalarPoly] = {}
        for match, coeff in (terms or {}).items():
            coeff = ScalarPoly.coerce(coeff)
            if coeff.is_zero():
                continue
            match = tuple(match)
            clean[match] = clean.get(match, ZERO) + coeff
            if clean[match].is_zero():
                del clean[match]
        self._terms = clean

    # constructors
    @classmethod
    def basis(cls, pairing: PlanarPairing, n_top: int | None = None) -> "DiagramElement":
        return cls(pairing.word, {pairing.match: ONE}, n_top)

    @classmethod
    def from_literal(cls, text: str) -> "DiagramElement":
        return cls.basis(parse_pairing(text))

    @classmethod
    def empty(cls, shading: str | None = None, coeff=1) -> "DiagramElement":
        return cls(ShadedWord("", shading), {(): coeff}, n_top=0)

    @classmethod
    def identity(cls, word) -> "DiagramElement":
        """Identity box on *word* (through strands)."""
        word = as_word(word)
        n = len(word)
        match = tuple(2 * n - 1 - i for i in range(2 * n))
        return cls(ShadedWord(word.letters + word.letters[::-1], word.shading), {match: ONE}, n_top=n)

    @classmethod
    def from_box(cls, bottom, top, match: Sequence[int], coeff=1) -> "DiagramElement":
        top = as_word(top)
        bottom = as_word(bottom)
        if top.shading != bottom.shading:
            raise BoundaryMismatch("top and bottom shading differ")
        word = ShadedWord(top.letters + bottom.letters[::-1], top.shading)
        PlanarPairing(word, tuple(match))
        return cls(word, {tuple(match): coeff}, n_top=len(top))

    # structure
    @property
    def combo(self) -> dict[PlanarPairing, ScalarPoly]:
        return {PlanarPairing(self.word, m): c for m, c in self._terms.items()}

    @property
    def terms(self) -> dict[tuple, ScalarPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def top(self) -> str:
        if self.n_top is None:
            return self.word.letters
        return self.word.letters[:self.n_top]

    def bottom(self) -> str:
        """Bottom word read left to right."""
        if self.n_top is None:
            return ""
        return self.word.letters[self.n_top:][::-1]

    def coefficient(self, match) -> ScalarPoly:
        if isinstance(match, PlanarPairing):
            match = match.match
        return self._terms.get(tuple(match), ZERO)

    # linear structure
    def _same_space(self, other: "DiagramElement") -> None:
        if self.word != other.word or self.n_top != other.n_top:
            raise BoundaryMismatch(f"{self.word} vs {other.word}")

    def __add__(self, other: "DiagramElement") -> "DiagramElement":
        self._same_space(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return DiagramElement(self.word, terms, self.n_top)

    def __neg__(self):
        return DiagramElement(self.word, {m: -c for m, c in self._terms.items()}, self.n_top)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiagramElement":
        c = ScalarPoly.coerce(c)
        return DiagramElement(self.word, {m: v * c for m, v in self._terms.items()}, self.n_top)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, DiagramElement):
            return NotImplemented
        return self.word == other.word and self.n_top == other.n_top and self._terms == other._terms

    def __hash__(self):
        return hash((self.word, self.n_top, frozenset(self._terms.items())))

    def adjoint(self) -> "DiagramElement":
        """Mirror image: the clockwise word is reversed.

        For a box this is the up-down reflection ``beta -> alpha``.
        """
        n = len(self.word)
        terms = {tuple(n - 1 - m[n - 1 - i] for i in range(n)): c for m, c in self._terms.items()}
        n_top = None if self.n_top is None else n - self.n_top
        return DiagramElement(self.word.reversed(), terms, n_top)

    def mirror(self) -> "DiagramElement":
        """Left-right reflection of a box (top and bottom each reversed)."""
        if self.n_top is None:
            return self.adjoint()
        q = self.n_top
        n = len(self.word)
        p = n - q
        perm = list(range(q - 1, -1, -1)) + list(range(n - 1, q - 1, -1))
        inv = {old: new for new, old in enumerate(perm)}
        terms = {tuple(inv[m[perm[k]]] for k in range(n)): c for m, c in self._terms.items()}
        word = ShadedWord(self.top()[::-1] + self.bottom(), self._mirror_shading(p))
        return DiagramElement(word, terms, q)

    def _mirror_shading(self, p: int) -> str | None:
        shades = self.word.walk()
        if shades is None:
            return self.word.shading
        # region right of the top row becomes the new top-left region
        return shades[self.n_top]

    def evaluate(self, deltas: Mapping[str, object]) -> "DiagramElement":
        terms = {m: ScalarPoly.coerce(c.evaluate(deltas)) for m, c in self._terms.items()}
        return DiagramElement(self.word, terms, self.n_top)

    def max_abs_coefficient(self) -> float:
        best = 0.0
        for _, c in self._terms.items():
            for _, v in c.items():
                best = max(best, abs(float(v)))
        return best

    def __repr__(self):
        return f"DiagramElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms):
            parts.append(f"({self._terms[m]})*{format_pairing(self.word, m)}")
        return " + ".join(parts)


# ---------------------------------------------------------------- algebra

def _require_box(x: DiagramElement) -> int:
    if x.n_top is None:
        raise BoundaryMismatch("operation needs a box (set n_top)")
    return x.n_top


def stack_multiply(x: DiagramElement, y: DiagramElement) -> DiagramElement:
    """Put ``y`` (beta -> gamma) on top of ``x`` (alpha -> beta)."""
    qx = _require_box(x)
    qy = _require_box(y)
    beta = x.top()
    if y.bottom() != beta or x.word.shading != y.word.shading:
        raise BoundaryMismatch(f"cannot stack: top {beta!r} vs bottom {y.bottom()!r}")
    p = len(x.word) - qx
    nb = len(beta)
    joins = [((0, i), (1, qy + nb - 1 - i)) for i in range(nb)]
    outputs = [(1, i) for i in range(qy)] + [(0, qx + k) for k in range(p)]
    letters = y.top() + x.word.letters[qx:]
    terms: dict[tuple, ScalarPoly] = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            glued = glue([(x.word.letters, mx), (y.word.letters, my)], joins, outputs)
            match, loops = glued
            coeff = cx * cy * ScalarPoly.loops(loops) if loops else cx * cy
            terms[match] = terms.get(match, ZERO) + coeff
    return DiagramElement(ShadedWord(letters, x.word.shading), terms, qy)


def compose(y: DiagramElement, x: DiagramElement) -> DiagramElement:
    """``y o x``: apply ``x`` first."""
    return stack_multiply(x, y)


def tensor(x: DiagramElement, y: DiagramElement) -> DiagramElement:
    """Side-by-side juxtaposition of two boxes (x on the left)."""
    qx = _require_box(x)
    qy = _require_box(y)
    nx, ny = len(x.word), len(y.word)
    outputs = ([(0, i) for i in range(qx)] + [(1, i) for i in range(qy)]
               + [(1, i) for i in range(qy, ny)] + [(0, i) for i in range(qx, nx)])
    letters = "".join(x.word.letters[i] if p == 0 else y.word.letters[i] for p, i in outputs)
    terms: dict[tuple, ScalarPoly] = {}
    for mx, cx in x.items():
        for my, cy in y.items():
            match, _ = glue([(x.word.letters, mx), (y.word.letters, my)], [], outputs)
            terms[match] = terms.get(match, ZERO) + cx * cy
    return DiagramElement(ShadedWord(letters, x.word.shading), terms, qx + qy)


def close_trace(x: DiagramElement) -> ScalarPoly:
    """Right closure: bottom point i is joined to top point i."""
    q = _require_box(x)
    n = len(x.word)
    if n != 2 * q or x.top() != x.bottom():
        raise BoundaryMismatch("trace needs a box alpha -> alpha")
    joins = [((0, i), (0, n - 1 - i)) for i in range(q)]
    total = ZERO
    for m, c in x.items():
        _, loops = glue([(x.word.letters, m)], joins, [])
        total = total + c * ScalarPoly.loops(loops)
    return total


def close_trace_left(x: DiagramElement) -> ScalarPoly:
    """Left closure, computed as the right closure of the mirror image."""
    return close_trace(x.mirror())


def tl_generator(n: int, k: int, color: str = "c", shading: str | None = None) -> DiagramElement:
    """The cup-cap generator E_k (1 <= k < n) on n strands of one color."""
    if not 1 <= k < n:
        raise ValueError("generator index out of range")
    match = list(2 * n - 1 - i for i in range(2 * n))
    a, b = k - 1, k
    match[a], match[b] = b, a
    ba, bb = 2 * n - 1 - a, 2 * n - 1 - b
    match[ba], match[bb] = bb, ba
    word = ShadedWord(color * (2 * n), shading)
    return DiagramElement(word, {tuple(match): ONE}, n_top=n)


# ---------------------------------------------------------------- gram

def gram_matrix(word) -> list[list[ScalarPoly]]:
    """Inner products of the basis pairings: loops formed by gluing D onto E's mirror."""
    word = as_word(word)
    _require_valid(word)
    basis = _matches(word.letters)
    n = len(word)
    joins = [((0, i), (1, i)) for i in range(n)]
    size = len(basis)
    g = [[ZERO] * size for _ in range(size)]
    for a in range(size):
        for b in range(a, size):
            _, loops = glue([(word.letters, basis[a]), (word.letters, basis[b])], joins, [])
            g[a][b] = g[b][a] = ScalarPoly.loops(loops)
    return g


def determinant(matrix: Sequence[Sequence[ScalarPoly]]) -> ScalarPoly:
    """Exact determinant by dynamic programming over column subsets."""
    n = len(matrix)
    if n == 0:
        return ONE
    dp: dict[int, ScalarPoly] = {0: ONE}
    for row in range(n):
        nxt: dict[int, ScalarPoly] = {}
        for mask, acc in dp.items():
            for col in range(n):
                if mask >> col & 1:
                    continue
                entry = matrix[row][col]
                if entry.is_zero():
                    continue
                higher = bin(mask >> (col + 1)).count("1")
                term = acc * entry
                if higher % 2:
                    term = -term
                key = mask | (1 << col)
                nxt[key] = nxt.get(key, ZERO) + term
        dp = nxt
    return dp.get((1 << n) - 1, ZERO)


def psd_check(word, deltas: Mapping[str, object], tol: float | None = None) -> tuple[bool, float]:
    """Smallest Gram eigenvalue at numeric loop parameters.

    Words without any pairing have an empty Gram matrix; they are reported
    as PSD with minimum ``inf``.
    """
    word = as_word(word)
    tol = tolerance(1e-10) if tol is None else tol
    g = gram_matrix(word)
    if not g:
        return True, float("inf")
    for c in set(word.letters):
        if c not in deltas or deltas[c] is None or not deltas[c] > 0:
            raise ValueError(f"positive numeric loop parameter needed for color {c!r}")
    values = np.array([[float(e.evaluate(deltas)) for e in row] for row in g], dtype=float)
    try:
        eig = np.linalg.eigvalsh(values)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"eigenvalue solver did not converge: {exc}") from exc
    lowest = float(eig[0])
    return lowest >= -tol, lowest


# ---------------------------------------------------------------- Jones-Wenzl

def quantum_integers(delta, n: int) -> list:
    """[0], [1], ..., [n] with [k+1] = delta*[k] - [k-1]."""
    q = [as_coeff(0), as_coeff(1)]
    while len(q) <= n:
        q.append(delta * q[-1] - q[-2])
    return q[: n + 1]


def _is_zero_number(x) -> bool:
    return x == 0 if isinstance(x, Fraction) else abs(x) < 1e-12


def jones_wenzl(n: int, color: str = "c", delta=2) -> DiagramElement:
    """The Jones-Wenzl idempotent on n strands at a numeric loop parameter."""
    if n < 1:
        raise ValueError("n must be positive")
    delta = as_coeff(delta)
    q = quantum_integers(delta, n + 1)
    for k in range(1, n + 1):
        if _is_zero_number(q[k]):
            raise DegenerateDelta(f"quantum integer [{k}] vanishes at delta={delta}")
    deltas = {color: delta}
    f = DiagramElement.identity(color)
    strand = DiagramElement.identity(color)
    for m in range(1, n):
        g = tensor(f, strand)
        e = tl_generator(m + 1, m, color)
        middle = stack_multiply(stack_multiply(g, e), g).evaluate(deltas)
        f = g - middle.scale(q[m] / q[m + 1])
    return f


# ---------------------------------------------------------------- cup embedding

def _cup_runs(letters: str, kept: Sequence[int]):
    """Pair the non-kept points into cups that enclose no kept point."""
    kept_set = set(kept)
    n = len(letters)
    cups = []
    run: list[int] = []
    for i in range(n + 1):
        if i == n or i in kept_set:
            if run:
                sub = "".join(letters[j] for j in run)
                options = _matches(sub)
                if not options:
                    return None
                cups.extend((run[a], run[b]) for a, b in enumerate(options[0]) if a < b)
                run = []
        else:
            run.append(i)
    return cups


def _embeddings(source: str, target: str):
    """Yield increasing index tuples placing *source* inside *target*."""
    def rec(i, start, acc):
        if i == len(source):
            yield tuple(acc)
            return
        for j in range(start, len(target) - (len(source) - i) + 1):
            if target[j] == source[i]:
                acc.append(j)
                yield from rec(i + 1, j + 1, acc)
                acc.pop()
    yield from rec(0, 0, [])


def embed_with_cups(x: DiagramElement, target, cups: Sequence[tuple[int, int]] | None = None) -> DiagramElement:
    """Insert a cup at each insertion site and divide by the inserted loop weights.

    ``cups`` lists the inserted arcs as pairs of target positions. When it
    is omitted the first placement of the old word (in lexicographic order
    of kept positions) that leaves pairable gaps is used; insertions are
    usually ambiguous, so pass ``cups`` when the placement matters.
    """
    target = as_word(target)
    _require_valid(target)
    if x.n_top not in (None, len(x.word)):
        raise BoundaryMismatch("embedding acts on disk elements")
    src = x.word.letters
    tgt = target.letters
    if cups is None:
        chosen = None
        for kept in _embeddings(src, tgt):
            found = _cup_runs(tgt, kept)
            if found is not None:
                chosen = (kept, found)
                break
        if chosen is None:
            raise NotAnInsertion(f"{tgt!r} is not obtained from {src!r} by inserting cups")
        kept, cups = chosen
    else:
        cups = [tuple(sorted(c)) for c in cups]
        used = {i for c in cups for i in c}
        if len(used) != 2 * len(cups) or any(not 0 <= i < len(tgt) for i in used):
            raise NotAnInsertion("cup positions overlap or fall outside the target")
        kept = [i for i in range(len(tgt)) if i not in used]
        ok = len(kept) == len(src) and all(tgt[k] == s for k, s in zip(kept, src))
        for a, b in cups:
            ok = ok and tgt[a] == tgt[b] and not any(a < k < b for k in kept)
        ok = ok and is_planar_pairing("".join(tgt[i] for i in sorted(used)),
                                      _relabel(cups, sorted(used)))
        if not ok:
            raise NotAnInsertion(f"cups {cups} do not turn {src!r} into {tgt!r}")
    scale = ScalarPoly.loops(_neg_counts(tgt, cups))
    terms = {}
    for m, c in x.items():
        new = [0] * len(tgt)
        for i, j in enumerate(m):
            new[kept[i]] = kept[j]
        for a, b in cups:
            new[a], new[b] = b, a
        terms[tuple(new)] = c * scale
    if x.word.shading != target.shading and x.word.shading is not None:
        raise NotAnInsertion("shading changes under insertion")
    return DiagramElement(target, terms, None if x.n_top is None else len(tgt))


def _neg_counts(letters: str, cups) -> dict[str, int]:
    counts: Counter = Counter()
    for a, _ in cups:
        counts[letters[a]] -= 1
    return dict(counts)


def _relabel(cups, positions) -> list[int]:
    where = {p: k for k, p in enumerate(positions)}
    out = [0] * len(positions)
    for a, b in cups:
        out[where[a]], out[where[b]] = where[b], where[a]
    return out


def inner_product(x: DiagramElement, y: DiagramElement) -> ScalarPoly:
    """Bilinear Gram pairing of two disk elements on the same word."""
    if x.word != y.word:
        raise BoundaryMismatch("inner product needs equal words")
    n = len(x.word)
    joins = [((0, i), (1, i)) for i in range(n)]
    total = ZERO
    for mx, cx in x.items():
        for my, cy in y.items():
            _, loops = glue([(x.word.letters, mx), (y.word.letters, my)], joins, [])
            total = total + cx * cy * ScalarPoly.loops(loops)
    return total
