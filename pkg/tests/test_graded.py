import random
from fractions import Fraction

import numpy as np
import pytest

from freeplanar.diagrams import _matches
from freeplanar.errors import InvalidWord, SideWordMismatch
from freeplanar.graded import (GradedElement, basis_elements, centered, double_cup, enumerate_epi,
                               graded_trace, moments, phi, star, wedge)
from freeplanar.laws import fp_moments
from freeplanar.scalars import ScalarPoly

import oracles

d = ScalarPoly.delta
cup = GradedElement.cup("c")


def random_element(rng, alphabet, max_len, side=""):
    el = GradedElement(side)
    for _ in range(rng.randint(1, 3)):
        length = rng.choice(range(0, max_len + 1, 2))
        word = "".join(rng.choice(alphabet) for _ in range(length))
        options = _matches(word)
        if options:
            el = el + GradedElement.from_top(word, rng.choice(options), side, Fraction(rng.randint(-3, 3)))
    return el


def test_wedge_examples():
    one = GradedElement.identity()
    assert wedge(one, cup) == cup
    assert wedge(cup, one) == cup
    assert wedge(cup, cup) == GradedElement.from_literal("cccc:[(0,1),(2,3)]")


def test_trace_examples():
    assert graded_trace(GradedElement.identity()) == 1
    assert graded_trace(cup) == d("c")
    assert graded_trace(wedge(cup, cup)) == d("c", 2) + d("c")
    assert graded_trace(wedge(wedge(cup, cup), cup)) == d("c", 3) + 3 * d("c", 2) + d("c")


def test_trace_with_side_band_is_normalized():
    for side in ["a", "ab", "abba"]:
        assert graded_trace(GradedElement.identity(side)) == 1


def test_star_examples():
    assert star(GradedElement.identity(coeff=3), cup) == cup.scale(3)
    expected = (GradedElement.from_literal("cccc:[(0,1),(2,3)]")
                + GradedElement.from_literal("cc:[(0,1)]")
                + GradedElement.identity(coeff=d("c")))
    assert star(cup, cup) == expected


def test_star_drops_color_mismatch():
    a, b = GradedElement.cup("a"), GradedElement.cup("b")
    assert star(a, b) == wedge(a, b)


def test_epi_counts():
    assert len(enumerate_epi("cc", "cc")) == 1
    assert len(enumerate_epi("cc", "")) == 1
    # cap at (1,2), cap at (2,3), or cap at (0,1): three diagrams, brute force agrees
    assert len(enumerate_epi("cccc", "cc")) == 3 == oracles.brute_epi_count("cccc", "cc")
    with pytest.raises(InvalidWord):
        enumerate_epi(__import__("freeplanar").ShadedWord("aabb", "N"))


@pytest.mark.parametrize("bottom", ["cccccc", "aabbaa", "abba", "abab", "aaaa"])
def test_epi_counts_brute_force(bottom):
    tops = {e.top.letters for e in enumerate_epi(bottom)}
    for top in tops | {""}:
        assert len(enumerate_epi(bottom, top)) == oracles.brute_epi_count(bottom, top)


def test_epi_diagrams_have_through_tops():
    for e in enumerate_epi("aabbaabb"):
        k = len(e.top)
        assert all(m >= k for m in e.match[:k])


def test_phi_examples():
    assert phi(GradedElement.identity()) == GradedElement.identity()
    assert phi(cup) == cup + GradedElement.identity(coeff=d("c"))


def test_phi_homomorphism_random():
    rng = random.Random(11)
    for i in range(60):
        side = ["", "a", "ab"][i % 3]
        x = random_element(rng, "ab", 4, side)
        y = random_element(rng, "ab", 2, side)
        assert phi(wedge(x, y)) == star(phi(x), phi(y))
        assert graded_trace(x) == phi(x).empty_component()


def test_associativity_random():
    rng = random.Random(5)
    for _ in range(25):
        x, y, z = (random_element(rng, "abc", 2) for _ in range(3))
        assert wedge(wedge(x, y), z) == wedge(x, wedge(y, z))
        assert star(star(x, y), z) == star(x, star(y, z))


def test_side_word_mismatch():
    with pytest.raises(SideWordMismatch):
        wedge(GradedElement.identity("a"), GradedElement.identity("b"))
    with pytest.raises(SideWordMismatch):
        star(GradedElement.identity("a"), GradedElement.identity())


def test_moments_examples():
    assert moments(cup, 2) == [1, d("c"), d("c", 2) + d("c")]
    assert moments(GradedElement.identity(), 4) == [1] * 5
    m = moments(double_cup("a", "b"), 2)
    da, db = d("a"), d("b")
    assert m[1] == da * db
    assert m[2] == da * da * db * db + da * db * db + da * db


def test_fc_double_cup_matches_brute_force():
    deltas = {"a": Fraction(3), "b": Fraction(2)}
    m = moments(double_cup("a", "b"), 3)
    assert [p.evaluate(deltas) for p in m] == [oracles.fc_cup_trace(n, deltas) for n in range(4)]


@pytest.mark.parametrize("delta", [Fraction(1), Fraction(2), Fraction(7, 2)])
def test_cup_moments_are_free_poisson(delta):
    m = moments(cup, 8)
    assert [p.evaluate({"c": delta}) for p in m] == list(fp_moments(delta, 8))


def test_adjoint_reverses_top():
    x = GradedElement.from_literal("aabb:[(0,1),(2,3)]")
    assert set(x.adjoint().components) == {"bbaa"}
    assert x.adjoint().adjoint() == x


def test_positivity_of_trace_form():
    for word in ["cccc", "cccccc", "aabb", "abba", "aabbaa"]:
        basis = basis_elements(word)
        gram = np.array([[float(graded_trace(wedge(bi, bj.adjoint())).evaluate({"a": 2, "b": 2, "c": 2}))
                          for bj in basis] for bi in basis])
        assert np.linalg.eigvalsh(gram)[0] >= -1e-10


def test_freeness_by_color():
    rng = random.Random(2)
    for _ in range(15):
        xs = [centered(random_element(rng, "a", 4)) for _ in range(2)]
        ys = [centered(random_element(rng, "b", 4)) for _ in range(2)]
        chain = [xs[0], ys[0], xs[1], ys[1]]
        prod = chain[0]
        for nxt in chain[1:]:
            prod = wedge(prod, nxt)
            assert graded_trace(prod).is_zero()
