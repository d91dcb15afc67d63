"""Weyl group of GL(n) as permutations, with root and word combinatorics.

A :class:`WeylElement` stores the permutation ``sigma`` whose matrix sends
``e_j`` to ``e_{sigma(j)}``; products compose as functions, so the matrix of
``v * w`` is the matrix product of the matrices of ``v`` and ``w``.  Weights
are integer vectors ``(k_1, ..., k_{n-1})`` in the simple-root basis; the
positive root ``alpha_{i,j} = e_i - e_j`` (``i < j``) has ones in positions
``i..j-1``.

>>> s1 = WeylElement.simple(3, 1)
>>> s2 = WeylElement.simple(3, 2)
>>> (s1 * s2).length()
2
>>> canonical_reduced_word(Composition((1, 1, 1))).letters
(2, 1, 2)
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class WeylElement:
    """A permutation of {1..n}, identified with its permutation matrix."""

    n: int
    perm: tuple[int, ...]  # 0-indexed images: column j maps to row perm[j]

    def __post_init__(self):
        if sorted(self.perm) != list(range(self.n)):
            raise ValueError(f"not a permutation of 0..{self.n - 1}: {self.perm}")

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(n, tuple(range(n)))

    @classmethod
    def simple(cls, n: int, i: int) -> "WeylElement":
        """The simple reflection swapping i and i+1 (1-indexed)."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"simple reflection index {i} out of range for n={n}")
        p = list(range(n))
        p[i - 1], p[i] = p[i], p[i - 1]
        return cls(n, tuple(p))

    @classmethod
    def longest(cls, n: int) -> "WeylElement":
        return cls(n, tuple(range(n - 1, -1, -1)))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return WeylElement(self.n, tuple(self.perm[j] for j in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * self.n
        for j, i in enumerate(self.perm):
            inv[i] = j
        return WeylElement(self.n, tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for j, i in enumerate(self.perm))

    def length(self) -> int:
        """Number of inversions."""
        p = self.perm
        return sum(1 for a, b in itertools.combinations(range(self.n), 2)
                   if p[a] > p[b])

    def apply(self, j: int) -> int:
        """Image of j under the permutation, 1-indexed."""
        return self.perm[j - 1] + 1

    def act_on_weight(self, gamma: tuple[int, ...]) -> tuple[int, ...]:
        """Action on a weight in simple-root coordinates.

        Writes the weight in the e-basis, permutes coordinates and converts
        back; defined whenever the permuted vector lies in the root lattice
        (always the case for integer simple-root combinations).
        """
        n = self.n
        # e-coordinates: v_i = k_i - k_{i-1} with k_0 = k_n = 0
        k = (0,) + tuple(gamma) + (0,)
        v = [k[i + 1] - k[i] for i in range(n)]
        vp = [0] * n
        for j in range(n):
            vp[self.perm[j]] = v[j]
        out = []
        run = 0
        for i in range(n - 1):
            run += vp[i]
            out.append(run)
        return tuple(out)

    def matrix(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for j, i in enumerate(self.perm):
            m[i][j] = 1
        return m

    def __repr__(self):
        one_line = " ".join(str(i + 1) for i in self.perm)
        return f"WeylElement({self.n}; {one_line})"


def root_coords(n: int, i: int, j: int) -> tuple[int, ...]:
    """Simple-root coordinates of ``alpha_{i,j} = e_i - e_j`` (1-indexed)."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"bad root indices ({i},{j}) for n={n}")
    sign = 1
    if i > j:
        i, j, sign = j, i, -1
    return tuple(sign if i <= m < j else 0 for m in range(1, n))


def simple_root(n: int, i: int) -> tuple[int, ...]:
    return root_coords(n, i, i + 1)


def positive_roots(n: int) -> list[tuple[int, ...]]:
    return [root_coords(n, i, j)
            for i in range(1, n) for j in range(i + 1, n + 1)]


def inversion_set(w: WeylElement) -> frozenset[tuple[int, ...]]:
    """R(w) = positive roots sent to negative roots by w."""
    p = w.perm
    return frozenset(root_coords(w.n, i + 1, j + 1)
                     for i, j in itertools.combinations(range(w.n), 2)
                     if p[i] > p[j])


def length_and_inversions(w: WeylElement):
    """Length of ``w`` together with the inversion set of its inverse.

    The set ``R(w^{-1})`` indexes the free coordinates of the unipotent
    subgroup attached to ``w``; its cardinality equals the length.
    """
    roots = inversion_set(w.inverse())
    return len(roots), roots


@dataclass(frozen=True)
class ReducedWord:
    """A word in simple reflections, letters in 1..n-1, read left to right.

    The element it spells is the product of the letters as functions, the
    leftmost letter acting last on {1..n} (i.e. matrix product in the order
    written).
    """

    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for a in self.letters:
            if not 1 <= a <= self.n - 1:
                raise ValueError(f"letter {a} out of range for n={self.n}")

    def evaluate(self) -> WeylElement:
        w = WeylElement.identity(self.n)
        for a in self.letters:
            w = w * WeylElement.simple(self.n, a)
        return w

    def is_reduced(self) -> bool:
        return self.evaluate().length() == len(self.letters)

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class Composition:
    """An ordered tuple of positive integers; its sum is the rank."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(d < 1 for d in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    def boundaries(self) -> tuple[int, ...]:
        """Partial sums d_1, d_1+d_2, ..., excluding n itself."""
        out, run = [], 0
        for d in self.parts[:-1]:
            run += d
            out.append(run)
        return tuple(out)

    def weyl_element(self) -> WeylElement:
        """Block anti-diagonal permutation: identity blocks stacked from the
        top-right corner down to the bottom-left."""
        n = self.n
        perm = [0] * n
        row_start = 0
        col_start = n
        for d in self.parts:
            col_start -= d
            for t in range(d):
                perm[col_start + t] = row_start + t
            row_start += d
        return WeylElement(n, tuple(perm))

    def __repr__(self):
        return f"Composition{self.parts}"


def compositions(n: int):
    """All 2^(n-1) compositions of n, in lexicographic cut order."""
    for bits in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for b in bits:
            if b:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(tuple(parts))


def admissible_elements(n: int) -> list[tuple[Composition, WeylElement]]:
    """Every composition of n paired with its block anti-diagonal element."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    return [(d, d.weyl_element()) for d in compositions(n)]


def canonical_reduced_word(d: Composition) -> ReducedWord:
    """Row-by-row reduced word for the block anti-diagonal element.

    Rows of the upper uni-triangular group attached to ``d`` are processed
    from the bottom non-trivial one upward; the row at height ``m`` (with
    ``f`` free entries) contributes the run ``s_m s_{m+1} ... s_{m+f-1}``.

    >>> canonical_reduced_word(Composition((1, 2, 1))).letters
    (3, 2, 1, 2, 3)
    """
    n = d.n
    bounds = d.boundaries()
    letters: list[int] = []
    last = d.parts[-1]
    for m in range(n - last, 0, -1):
        block_end = next(b for b in bounds + (n,) if b >= m)
        free = n - block_end
        letters.extend(range(m, m + free))
    word = ReducedWord(n, tuple(letters))
    assert word.evaluate() == d.weyl_element(), "canonical word mismatch"
    return word


def beta_enumeration(word: ReducedWord) -> list[tuple[int, ...]]:
    """Positive roots attached to the letters of a reduced word.

    The k-th root is the image of the k-th letter's simple root under the
    product of the earlier letters; this is the order in which the
    intertwining recursion meets the roots, and as a set it equals
    ``R(w^{-1})`` for the element ``w`` the word spells.
    """
    if not word.is_reduced():
        raise ValueError(f"word {word.letters} is not reduced")
    n = word.n
    prefix = WeylElement.identity(n)
    betas = []
    for a in word.letters:
        betas.append(prefix.act_on_weight(simple_root(n, a)))
        prefix = prefix * WeylElement.simple(n, a)
    return betas


def reduced_word_of(w: WeylElement) -> ReducedWord:
    """Some reduced word for ``w`` (first-descent algorithm)."""
    letters = []
    cur = w
    inv = cur.inverse().perm
    while True:
        for i in range(w.n - 1):
            if inv[i] > inv[i + 1]:
                letters.append(i + 1)
                s = WeylElement.simple(w.n, i + 1)
                cur = s * cur
                inv = cur.inverse().perm
                break
        else:
            break
    return ReducedWord(w.n, tuple(letters))


def random_reduced_word(w: WeylElement, rng: random.Random) -> ReducedWord:
    """A uniformly randomized (not uniformly distributed) reduced word."""
    letters = []
    cur = w
    while not cur.is_identity():
        inv = cur.inverse().perm
        descents = [i + 1 for i in range(w.n - 1) if inv[i] > inv[i + 1]]
        a = rng.choice(descents)
        letters.append(a)
        cur = WeylElement.simple(w.n, a) * cur
    return ReducedWord(w.n, tuple(letters))


def all_elements(n: int) -> list[WeylElement]:
    return [WeylElement(n, p) for p in itertools.permutations(range(n))]


def count_compositions(n: int) -> int:
    return sum(comb(n - 1, k) for k in range(n))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
