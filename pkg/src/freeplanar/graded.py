"""Graded diagram algebras with the wedge and star products.

An element of ``Gr_alpha`` is a combination of diagrams whose boundary is
``reversed(alpha) + beta + alpha``: the left side band read bottom to top,
the top word ``beta`` left to right, the right side band read top to
bottom. ``alpha`` is fixed; ``beta`` varies from term to term.

Products are left-to-right concatenation: in ``x ^ y`` the element ``x``
sits on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .diagrams import (DiagramElement, ShadedWord, _matches, as_word, glue,
                       is_planar_pairing, validate_word)
from .errors import InvalidWord, SideWordMismatch
from .scalars import ZERO, ScalarPoly

Key = tuple  # (beta, full match)


class GradedElement:
    __slots__ = ("side", "_terms")

    def __init__(self, side="", terms: Mapping[Key, object] | None = None):
        self.side = as_word(side)
        clean: dict[Key, ScalarPoly] = {}
        for (beta, match), c in (terms or {}).items():
            c = ScalarPoly.coerce(c)
            key = (beta, tuple(match))
            total = clean.get(key, ZERO) + c
            if total.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = total
        self._terms = clean

    # constructors
    @classmethod
    def identity(cls, side="", coeff=1) -> "GradedElement":
        side = as_word(side)
        a = len(side)
        match = tuple(2 * a - 1 - j for j in range(2 * a))
        return cls(side, {("", match): coeff})

    @classmethod
    def from_top(cls, beta: str, top_match: Sequence[int], side="", coeff=1) -> "GradedElement":
        """Diagram with through strands on the side band and *top_match* on beta."""
        side = as_word(side)
        a = len(side)
        b = len(beta)
        if not is_planar_pairing(beta, top_match):
            raise ValueError(f"{top_match} is not a pairing of {beta!r}")
        full = [0] * (2 * a + b)
        for j in range(a):
            full[j] = 2 * a + b - 1 - j
            full[2 * a + b - 1 - j] = j
        for i, k in enumerate(top_match):
            full[a + i] = a + k
        return cls(side, {(beta, tuple(full)): coeff})

    @classmethod
    def cup(cls, color: str = "c", side="") -> "GradedElement":
        return cls.from_top(color * 2, (1, 0), side)

    @classmethod
    def from_literal(cls, text: str, side="") -> "GradedElement":
        """Top diagram from a literal such as ``abba:[(0,3),(1,2)]``."""
        el = DiagramElement.from_literal(text)
        return cls.from_top(el.word.letters, next(iter(el.terms)), side)

    # structure
    def full_word(self, beta: str) -> ShadedWord:
        return ShadedWord(self.side.letters[::-1] + beta + self.side.letters, self.side.shading)

    @property
    def components(self) -> dict[str, DiagramElement]:
        grouped: dict[str, dict] = {}
        for (beta, m), c in self._terms.items():
            grouped.setdefault(beta, {})[m] = c
        return {beta: DiagramElement(self.full_word(beta), t) for beta, t in sorted(grouped.items())}

    @property
    def terms(self) -> dict[Key, ScalarPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def component(self, beta: str) -> dict[tuple, ScalarPoly]:
        return {m: c for (b, m), c in self._terms.items() if b == beta}

    def empty_component(self) -> ScalarPoly:
        """Coefficient of the identity (the only diagram with empty top word)."""
        comp = self.component("")
        return sum(comp.values(), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def validate(self) -> None:
        for beta in {b for b, _ in self._terms}:
            if not validate_word(self.full_word(beta)):
                raise InvalidWord(f"component {beta!r} has inconsistent shading")

    # linear structure
    def _check(self, other: "GradedElement") -> None:
        if self.side != other.side:
            raise SideWordMismatch(f"{self.side} vs {other.side}")

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return GradedElement(self.side, terms)

    def __neg__(self):
        return GradedElement(self.side, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedElement":
        c = ScalarPoly.coerce(c)
        return GradedElement(self.side, {k: v * c for k, v in self._terms.items()})

    __rmul__ = scale

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.side == other.side and self._terms == other._terms

    def __hash__(self):
        return hash((self.side, frozenset(self._terms.items())))

    def adjoint(self) -> "GradedElement":
        terms = {}
        for (beta, m), c in self._terms.items():
            n = len(m)
            terms[(beta[::-1], tuple(n - 1 - m[n - 1 - i] for i in range(n)))] = c
        return GradedElement(self.side, terms)

    def evaluate(self, deltas: Mapping[str, object]) -> "GradedElement":
        return GradedElement(self.side, {k: ScalarPoly.coerce(c.evaluate(deltas))
                                         for k, c in self._terms.items()})

    def __repr__(self):
        return f"GradedElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*{self.full_word(b)}:{list(m)}" for (b, m), c in sorted(self._terms.items()))


def _same_side(x: GradedElement, y: GradedElement) -> int:
    if x.side != y.side:
        raise SideWordMismatch(f"{x.side} vs {y.side}")
    return len(x.side)


def _add(acc: dict, key, coeff: ScalarPoly) -> None:
    acc[key] = acc.get(key, ZERO) + coeff


def wedge(x: GradedElement, y: GradedElement) -> GradedElement:
    """Horizontal concatenation over the shared side band."""
    a = _same_side(x, y)
    out: dict = {}
    for (bx, mx), cx in x.items():
        wx = x.full_word(bx).letters
        for (by, my), cy in y.items():
            wy = y.full_word(by).letters
            joins = [((0, a + len(bx) + i), (1, a - 1 - i)) for i in range(a)]
            outputs = ([(0, j) for j in range(a + len(bx))]
                       + [(1, j) for j in range(a, 2 * a + len(by))])
            match, loops = glue([(wx, mx), (wy, my)], joins, outputs)
            _add(out, (bx + by, match), cx * cy * ScalarPoly.loops(loops))
    return GradedElement(x.side, out)


def _side_weight_inverse(side: ShadedWord) -> ScalarPoly:
    counts: dict[str, int] = {}
    for ch in side.letters:
        counts[ch] = counts.get(ch, 0) - 1
    return ScalarPoly.loops(counts)


def graded_trace(x: GradedElement) -> ScalarPoly:
    """Close the side band around and sum over every planar capping of the top.

    The result is divided by the loop weight of the side word so that the
    identity has trace 1.
    """
    a = len(x.side)
    total = ZERO
    for (beta, m), c in x.items():
        w = x.full_word(beta).letters
        b = len(beta)
        side_joins = [((0, a + b + i), (0, a - 1 - i)) for i in range(a)]
        for cap in _matches(beta):
            joins = side_joins + [((0, a + k), (1, k)) for k in range(b)]
            _, loops = glue([(w, m), (beta, cap)], joins, [])
            total = total + c * ScalarPoly.loops(loops)
    return total * _side_weight_inverse(x.side)


def star(x: GradedElement, y: GradedElement) -> GradedElement:
    """Sum over cappings of a suffix of x's top against a prefix of y's top."""
    a = _same_side(x, y)
    out: dict = {}
    for (bx, mx), cx in x.items():
        wx = x.full_word(bx).letters
        for (by, my), cy in y.items():
            wy = y.full_word(by).letters
            side = [((0, a + len(bx) + i), (1, a - 1 - i)) for i in range(a)]
            for k in range(min(len(bx), len(by)) + 1):
                caps = [((0, a + len(bx) - 1 - j), (1, a + j)) for j in range(k)]
                outputs = ([(0, j) for j in range(a + len(bx) - k)]
                           + [(1, j) for j in range(a + k, 2 * a + len(by))])
                glued = glue([(wx, mx), (wy, my)], side + caps, outputs)
                if glued is None:
                    continue
                match, loops = glued
                beta = bx[: len(bx) - k] + by[k:]
                _add(out, (beta, match), cx * cy * ScalarPoly.loops(loops))
    return GradedElement(x.side, out)


# ---------------------------------------------------------------- Epi

@dataclass(frozen=True)
class EpiDiagram:
    """Box from *bottom* to *top* in which every top point is a through strand.

    ``match`` uses box coordinates: top points first, then bottom points
    right to left.
    """

    bottom: ShadedWord
    top: ShadedWord
    match: tuple[int, ...]

    def as_element(self) -> DiagramElement:
        return DiagramElement.from_box(self.bottom, self.top, self.match)


@lru_cache(maxsize=None)
def _epi_matches(bottom: str) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Every epi diagram on *bottom* as ``(top word, box match)``."""
    n = len(bottom)
    out = []

    def rec(pos: int, through: list[int], segs: list[tuple[int, tuple]]):
        # choose the next through point (or none) after pos
        rest_options = []
        tail = _matches(bottom[pos:])
        for t in tail:
            rest_options.append((None, t))
        for nxt in range(pos, n):
            seg = _matches(bottom[pos:nxt])
            if not seg:
                continue
            for s in seg:
                rec(nxt + 1, through + [nxt], segs + [(pos, s)])
        for _, t in rest_options:
            out.append(_assemble(bottom, through, segs + [(pos, t)]))

    rec(0, [], [])
    out.sort()
    return tuple(out)


def _assemble(bottom: str, through: list[int], segs) -> tuple[str, tuple[int, ...]]:
    n = len(bottom)
    k = len(through)
    top = "".join(bottom[t] for t in through)
    size = k + n
    match = [0] * size

    def bpos(j: int) -> int:  # bottom point j (left to right) in box coordinates
        return k + (n - 1 - j)

    for i, t in enumerate(through):
        match[i] = bpos(t)
        match[bpos(t)] = i
    for start, seg in segs:
        for i, j in enumerate(seg):
            match[bpos(start + i)] = bpos(start + j)
    return top, tuple(match)


def enumerate_epi(bottom, top=None) -> list[EpiDiagram]:
    """Epi diagrams from *bottom*; restricted to one top word when given."""
    bottom = as_word(bottom)
    if not validate_word(bottom):
        raise InvalidWord(f"inconsistent shading for word {bottom}")
    want = None if top is None else as_word(top).letters
    if top is not None and not validate_word(ShadedWord(want, bottom.shading)):
        raise InvalidWord(f"inconsistent shading for word {top}")
    out = []
    for t, m in _epi_matches(bottom.letters):
        if want is None or t == want:
            out.append(EpiDiagram(bottom, ShadedWord(t, bottom.shading), m))
    return out


def phi(x: GradedElement) -> GradedElement:
    """Sum of every epi diagram stacked on top of x."""
    a = len(x.side)
    out: dict = {}
    for (beta, m), c in x.items():
        w = x.full_word(beta).letters
        b = len(beta)
        for top, em in _epi_matches(beta):
            t = len(top)
            ew = top + beta[::-1]
            joins = [((0, a + j), (1, t + b - 1 - j)) for j in range(b)]
            outputs = ([(0, j) for j in range(a)] + [(1, j) for j in range(t)]
                       + [(0, j) for j in range(a + b, 2 * a + b)])
            match, loops = glue([(w, m), (ew, em)], joins, outputs)
            _add(out, (top, match), c * ScalarPoly.loops(loops))
    return GradedElement(x.side, out)


def power(x: GradedElement, n: int) -> GradedElement:
    result = GradedElement.identity(x.side)
    for _ in range(n):
        result = wedge(result, x)
    return result


def moments(x: GradedElement, N: int) -> list[ScalarPoly]:
    """Traces of the wedge powers ``x^0 .. x^N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    out = []
    p = GradedElement.identity(x.side)
    for n in range(N + 1):
        if n:
            p = wedge(p, x)
        out.append(graded_trace(p))
    return out


def centered(x: GradedElement) -> GradedElement:
    return x - GradedElement.identity(x.side, graded_trace(x))


def basis_elements(beta: str, side="") -> list[GradedElement]:
    return [GradedElement.from_top(beta, m, side) for m in _matches(beta)]


def double_cup(outer: str = "a", inner: str = "b") -> GradedElement:
    """An ``outer`` arc enclosing an ``inner`` arc, top word ``outer inner inner outer``."""
    return GradedElement.from_top(outer + inner + inner + outer, (3, 2, 1, 0))


def iter_words(alphabet: str, max_len: int) -> Iterator[str]:
    words = [""]
    for _ in range(max_len + 1):
        nxt = []
        for w in words:
            yield w
            nxt.extend(w + ch for ch in alphabet)
        words = nxt
