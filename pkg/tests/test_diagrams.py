import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freeplanar.diagrams import (DiagramElement, ShadedWord, close_trace, close_trace_left,
                                 count_pairings, determinant, embed_with_cups, enumerate_pairings,
                                 gram_matrix, inner_product, jones_wenzl, parse_pairing, psd_check,
                                 quantum_integers, stack_multiply, tensor, tl_generator,
                                 validate_word, PlanarPairing, ColorSpec)
from freeplanar.errors import BoundaryMismatch, DegenerateDelta, InvalidWord, NotAnInsertion
from freeplanar.scalars import ScalarPoly

import oracles

d = ScalarPoly.delta


def test_shading_walk():
    assert validate_word(ShadedWord("", "N"))
    assert validate_word(ShadedWord("abba", "N"))
    assert not validate_word(ShadedWord("aabb", "N"))
    assert validate_word(ShadedWord("aabb", "P"))
    assert not validate_word(ShadedWord("ab", "P"))   # walk ends at M
    assert validate_word("anything goes")


def test_small_enumerations():
    assert len(enumerate_pairings("cc")) == 1
    assert len(enumerate_pairings("cccc")) == 2
    assert [p.match for p in enumerate_pairings("aabb")] == [(1, 0, 3, 2)]
    assert enumerate_pairings("aab") == []
    with pytest.raises(InvalidWord):
        enumerate_pairings(ShadedWord("aabb", "N"))


@pytest.mark.parametrize("n", range(1, 11))
def test_catalan(n):
    assert count_pairings("c" * (2 * n)) == oracles.catalan(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_fuss_catalan(n):
    assert count_pairings(ShadedWord("aabb" * n, "P")) == oracles.fuss_catalan(n)


@pytest.mark.parametrize("word", ["cccccc", "aabbaabb", "abba", "abab", "aabbbbaa", "abbaabba", "ccddcd"])
def test_enumeration_matches_brute_force(word):
    assert [p.match for p in enumerate_pairings(word)] == oracles.brute_pairings(word)


def test_literal_round_trip():
    p = parse_pairing("P|aabb:[(0,1),(2,3)]")
    assert p.word == ShadedWord("aabb", "P")
    assert str(p) == "P|aabb:[(0,1),(2,3)]"
    with pytest.raises(ValueError):
        parse_pairing("abab:[(0,2),(1,3)]")
    with pytest.raises(InvalidWord):
        parse_pairing("N|aabb:[(0,1),(2,3)]")


def test_colorspec_rejects_bad_values():
    ColorSpec(("a", "b"), {"a": 2, "b": None})
    with pytest.raises(ValueError):
        ColorSpec(("a", "a"))
    with pytest.raises(ValueError):
        ColorSpec(("a",), {"a": 0})


def test_stack_multiply_examples():
    E = tl_generator(2, 1)
    assert stack_multiply(E, E) == E.scale(d("c"))
    x = DiagramElement.from_box("cc", "cc", (3, 2, 1, 0), 5)
    assert stack_multiply(x, DiagramElement.identity("cc")) == x
    assert stack_multiply(DiagramElement.identity("cc"), x) == x
    cup = DiagramElement.from_box("", "cc", (1, 0))
    cap = DiagramElement.from_box("cc", "", (1, 0))
    loop = stack_multiply(cup, cap)
    assert loop == DiagramElement.empty(coeff=d("c"))
    with pytest.raises(BoundaryMismatch):
        stack_multiply(E, DiagramElement.identity("ccc"))


def test_close_trace_examples():
    assert close_trace(DiagramElement.empty()) == 1
    assert close_trace(DiagramElement.identity("ccc")) == d("c", 3)
    assert close_trace(tl_generator(2, 1)) == d("c")
    assert close_trace(DiagramElement.identity("ab")) == d("a") * d("b")


def _boxes(word):
    n = len(word) // 2
    return [DiagramElement.basis(p, n) for p in enumerate_pairings(word)]


@pytest.mark.parametrize("half", ["c", "cc", "ccc", "cccc", "ab", "aab", "abab", "abba"])
def test_sphericality(half):
    word = half + half[::-1]
    boxes = _boxes(word)
    assert boxes
    for b in boxes:
        assert close_trace(b) == close_trace_left(b)


def test_gram_examples():
    assert gram_matrix("cc") == [[d("c")]]
    assert gram_matrix("cccc") == [[d("c", 2), d("c")], [d("c"), d("c", 2)]]
    assert gram_matrix("aabb") == [[d("a") * d("b")]]
    det = determinant(gram_matrix("cccc"))
    assert det == d("c", 4) - d("c", 2)
    assert det.evaluate({"c": 1}) == 0


@pytest.mark.parametrize("word", ["cccccc", "aabbaa", "abbaab", "aabbbbaa", "abab"])
def test_gram_matches_brute_force(word):
    deltas = {"a": Fraction(2), "b": Fraction(3), "c": Fraction(5, 2)}
    g = [[e.evaluate(deltas) for e in row] for row in gram_matrix(word)]
    assert g == oracles.brute_gram(word, deltas)


def test_gram_symmetric():
    for word in ["cccccccc", "aabbaabb", "abbaabba"]:
        g = gram_matrix(word)
        assert all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))


def test_psd_examples():
    ok, low = psd_check("cccc", {"c": 2})
    assert ok and low == pytest.approx(2)
    ok, low = psd_check("cccc", {"c": 1})
    assert ok and abs(low) <= 1e-10
    ok, low = psd_check("cc", {"c": 3})
    assert ok and low == pytest.approx(3)
    ok, low = psd_check("cccccc", {"c": Fraction(1, 2)})
    assert not ok


def _random_box(rng, n, color="c", terms=3):
    word = color * (2 * n)
    basis = enumerate_pairings(word)
    el = DiagramElement(word, {}, n)
    for _ in range(terms):
        el = el + DiagramElement.basis(rng.choice(basis), n).scale(rng.randint(-3, 3))
    return el


def test_associativity_random():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 4)
        x, y, z = (_random_box(rng, n) for _ in range(3))
        assert stack_multiply(stack_multiply(x, y), z) == stack_multiply(x, stack_multiply(y, z))


def test_tensor_and_adjoint():
    E = tl_generator(2, 1)
    assert tensor(E, DiagramElement.identity("c")) == tl_generator(3, 1)
    assert tensor(DiagramElement.identity("c"), E) == tl_generator(3, 2)
    x = DiagramElement.from_box("ccc", "c", (3, 2, 1, 0))
    assert x.adjoint().adjoint() == x
    assert x.adjoint().top() == "ccc" and x.adjoint().bottom() == "c"


def test_quantum_integers():
    assert quantum_integers(Fraction(2), 4) == [0, 1, 2, 3, 4]
    assert quantum_integers(Fraction(3), 3) == [0, 1, 3, 8]


def test_jones_wenzl_small():
    assert jones_wenzl(1, "c", 3) == DiagramElement.identity("c")
    f2 = jones_wenzl(2, "c", Fraction(3))
    assert f2 == DiagramElement.identity("cc") - tl_generator(2, 1).scale(Fraction(1, 3))
    assert close_trace(f2).evaluate({"c": 3}) == 8


@pytest.mark.parametrize("delta", [Fraction(5, 2), 2.7, 3.0])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_jones_wenzl_properties(n, delta):
    f = jones_wenzl(n, "c", delta)
    ev = {"c": delta}
    square = stack_multiply(f, f).evaluate(ev)
    assert (square - f).max_abs_coefficient() <= 1e-10
    for k in range(1, n):
        assert stack_multiply(f, tl_generator(n, k)).evaluate(ev).max_abs_coefficient() <= 1e-10
        assert stack_multiply(tl_generator(n, k), f).evaluate(ev).max_abs_coefficient() <= 1e-10
    tr = close_trace(f).evaluate(ev)
    assert abs(tr - quantum_integers(delta, n + 1)[n + 1]) <= 1e-10


def test_jones_wenzl_degenerate():
    with pytest.raises(DegenerateDelta):
        jones_wenzl(3, "c", 1)   # [3] = delta^2 - 1 = 0
    with pytest.raises(DegenerateDelta):
        jones_wenzl(2, "c", 0)


def test_embed_examples():
    arc = DiagramElement.from_literal("cc:[(0,1)]")
    assert embed_with_cups(arc, "cc") == arc
    nested = embed_with_cups(arc, "cccc", cups=[(1, 2)])
    assert nested == DiagramElement.from_literal("cccc:[(0,3),(1,2)]").scale(d("c", -1))
    with pytest.raises(NotAnInsertion):
        embed_with_cups(arc, "ccc")
    with pytest.raises(NotAnInsertion):
        embed_with_cups(arc, "cccc", cups=[(0, 2)])
    two = embed_with_cups(arc, "aacc", cups=[(0, 1)])
    assert two == DiagramElement.from_literal("aacc:[(0,1),(2,3)]").scale(d("a", -1))


def test_embed_scales_inner_products():
    # Inserting m cups scales every Gram pairing by the inverse loop weight of those cups.
    rng = random.Random(3)
    word = "abba"
    basis = enumerate_pairings(word)
    for target, cups, factor in [("abbaaa", [(4, 5)], d("a", -1)),
                                 ("abbbba", [(2, 3)], d("b", -1)),
                                 ("aaabbbba", [(0, 1), (4, 5)], d("a", -1) * d("b", -1))]:
        for _ in range(5):
            x = sum((DiagramElement.basis(rng.choice(basis)).scale(rng.randint(1, 4)) for _ in range(2)),
                    DiagramElement(word))
            y = DiagramElement.basis(rng.choice(basis)).scale(rng.randint(1, 4))
            before = inner_product(x, y)
            after = inner_product(embed_with_cups(x, target, cups), embed_with_cups(y, target, cups))
            assert after == before * factor


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from("ab"), min_size=0, max_size=8))
def test_pairings_are_valid(letters):
    word = "".join(letters)
    for p in enumerate_pairings(word):
        assert isinstance(p, PlanarPairing)
    assert count_pairings(word) == len(enumerate_pairings(word))
