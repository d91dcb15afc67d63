"""Permutations, roots, canonical words and inversion enumerations."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from heckezeta.weyl import (Composition, ReducedWord, WeylElement,
                            admissible_elements, all_elements,
                            beta_enumeration, canonical_reduced_word,
                            compositions, inversion_set,
                            length_and_inversions, positive_roots,
                            random_reduced_word, reduced_word_of, root_coords,
                            simple_root)

perms = st.integers(2, 5).flatmap(
    lambda n: st.permutations(list(range(n))).map(
        lambda p: WeylElement(n, tuple(p))))


@given(w=perms)
@settings(max_examples=80, deadline=None)
def test_group_axioms(w):
    assert w.inverse().inverse() == w
    assert (w * w.inverse()).is_identity()
    assert w.length() == w.inverse().length()


@given(w=perms)
@settings(max_examples=60, deadline=None)
def test_length_equals_inversion_count(w):
    length, roots = length_and_inversions(w)
    assert length == w.length() == len(roots)
    assert roots == inversion_set(w.inverse())


def test_identity_has_no_inversions():
    assert length_and_inversions(WeylElement.identity(4)) == (0, frozenset())


def test_hook_element_length():
    # the (1, n-2, 1) element of rank 4 has length 5
    w = Composition((1, 2, 1)).weyl_element()
    assert w.length() == 5
    assert canonical_reduced_word(Composition((1, 2, 1))).letters == (3, 2, 1, 2, 3)


def test_hook_inversions_are_initial_column():
    for n in (3, 4, 5):
        w = Composition((1, n - 1)).weyl_element()
        _, roots = length_and_inversions(w)
        expected = {tuple(1 if m <= j else 0 for m in range(1, n))
                    for j in range(1, n)}
        assert roots == expected


def test_canonical_words():
    assert canonical_reduced_word(Composition((1, 1, 1))).letters == (2, 1, 2)
    assert canonical_reduced_word(Composition((3,))).letters == ()
    assert canonical_reduced_word(Composition((2, 1))).letters == (2, 1)
    assert canonical_reduced_word(Composition((1, 2))).letters == (1, 2)
    # rank-n staircase: one run per row, lengths n-1, n-2, ..., 1
    word = canonical_reduced_word(Composition((1, 1, 1, 1)))
    assert word.letters == (3, 2, 3, 1, 2, 3)


def test_canonical_word_is_reduced_and_evaluates():
    for n in range(2, 8):
        for d in compositions(n):
            word = canonical_reduced_word(d)
            assert word.is_reduced()
            assert word.evaluate() == d.weyl_element()
            assert len(word) == d.weyl_element().length()


def test_beta_enumeration_examples():
    # increasing hook: beta_j = alpha_1 + ... + alpha_j
    for n in (3, 4, 5):
        word = canonical_reduced_word(Composition((1, n - 1)))
        betas = beta_enumeration(word)
        assert betas == [tuple(1 if m <= j else 0 for m in range(1, n))
                         for j in range(1, n)]
    # decreasing hook: beta_j = alpha_{n-1} + ... + alpha_{n-j}
    for n in (3, 4, 5):
        word = canonical_reduced_word(Composition((n - 1, 1)))
        betas = beta_enumeration(word)
        assert betas == [tuple(1 if m >= n - j else 0 for m in range(1, n))
                         for j in range(1, n)]


def test_beta_enumeration_rank3_long():
    betas = beta_enumeration(ReducedWord(3, (2, 1, 2)))
    assert betas == [(0, 1), (1, 1), (1, 0)]
    assert set(betas) == set(length_and_inversions(WeylElement.longest(3))[1])


def test_beta_enumeration_matches_inversions():
    for n in (3, 4):
        for w in all_elements(n):
            word = reduced_word_of(w)
            betas = beta_enumeration(word)
            assert len(set(betas)) == len(betas)
            assert set(betas) == set(length_and_inversions(w)[1])


def test_beta_enumeration_rejects_non_reduced():
    with pytest.raises(ValueError):
        beta_enumeration(ReducedWord(3, (1, 1)))


def test_admissible_elements_counts():
    assert len(admissible_elements(2)) == 2
    assert len(admissible_elements(4)) == 8
    ds = {d.parts for d, _ in admissible_elements(3)}
    assert ds == {(3,), (2, 1), (1, 2), (1, 1, 1)}
    lookup = dict((d.parts, w) for d, w in admissible_elements(3))
    assert lookup[(1, 1, 1)] == WeylElement.longest(3)


def test_block_element_matrix():
    w = Composition((1, 2)).weyl_element()
    assert w.matrix() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def test_simple_roots_inside_inversions_are_boundaries():
    for n in range(2, 9):
        for d in compositions(n):
            _, roots = length_and_inversions(d.weyl_element())
            simples = {i for i in range(1, n)
                       if simple_root(n, i) in roots}
            assert simples == set(d.boundaries())


def test_random_reduced_words_are_reduced():
    rng = random.Random(7)
    for w in all_elements(4):
        word = random_reduced_word(w, rng)
        assert word.is_reduced()
        assert word.evaluate() == w


@given(w=perms, data=st.data())
@settings(max_examples=50, deadline=None)
def test_root_action_preserves_positive_root_structure(w, data):
    n = w.n
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n))
    if i == j:
        return
    image = w.act_on_weight(root_coords(n, i, j))
    assert image == root_coords(n, w.apply(i), w.apply(j))


def test_positive_root_coordinates_contiguous():
    for n in (3, 4, 5):
        for r in positive_roots(n):
            support = [m for m, c in enumerate(r) if c]
            assert all(c in (0, 1) for c in r)
            assert support == list(range(support[0], support[-1] + 1))
