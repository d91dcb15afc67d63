"""Intertwining operators on Iwahori-fixed vectors.

The simple-reflection operator attached to ``alpha`` acts by

    A_s phi_w = alpha(chi) c_alpha(chi) phi_w + (1/l) phi_{sw}   if sw > w,
    A_s phi_w = c_alpha(chi) phi_w + phi_{sw}                    if sw < w,

with ``c_alpha(chi) = (1 - 1/l) / (1 - alpha(chi))``, and sends vectors with
character ``chi`` to vectors with character ``s.chi``.  Words of simple
operators compose through the cocycle rule ``A_{uv} = A_v^{u.chi} A_u^{chi}``
for length-additive products, so a reduced word is consumed left to right and
the root met at step k is the k-th entry of the word's root enumeration.

Expanding the recursion over all keep/apply choices yields a closed sum over
subsets of the inversion enumeration; the subset bookkeeping (deleted-word
element, ascent/descent split) lives in :mod:`heckezeta.crucial`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .characters import UnramifiedCharacter, eval_weight, weyl_act_char
from .crucial import RootSubset, subset_structure
from .hecke import PrincipalSeriesVector
from .scalars import Scalar
from .weyl import (Composition, ReducedWord, WeylElement, beta_enumeration,
                   canonical_reduced_word, length_and_inversions,
                   reduced_word_of)


class SingularCharacterError(ValueError):
    """The character takes value 1 on a root whose factor must be inverted."""


def a_simple(i: int, v: PrincipalSeriesVector) -> PrincipalSeriesVector:
    """Apply the simple intertwiner for the i-th simple root."""
    chi = v.char
    n = chi.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple index {i} out of range")
    z = chi.value(i)
    if z.is_one():
        raise SingularCharacterError(
            f"character is trivial on simple root {i}; c-factor undefined")
    field = chi.field
    t = field.var("t")
    c = (field.one - t) / (field.one - z)
    zc = z * c
    s = WeylElement.simple(n, i)
    out: dict[WeylElement, Scalar] = {}
    cache: dict[tuple[int, int], tuple[Scalar, Scalar]] = {}
    seen: set[WeylElement] = set()

    for u in list(v.coeffs):
        if u in seen:
            continue
        su = s * u
        seen.add(u)
        seen.add(su)
        inv = u.inverse().perm
        lo, hi = (u, su) if inv[i - 1] < inv[i] else (su, u)
        v_lo = v.coeffs.get(lo)
        v_hi = v.coeffs.get(hi)
        key = (id(v_lo), id(v_hi))
        hit = cache.get(key)
        if hit is None:
            # A phi_lo = zc phi_lo + t phi_hi ; A phi_hi = c phi_hi + phi_lo
            if v_hi is None:
                hit = (zc * v_lo, t * v_lo)
            elif v_lo is None:
                hit = (v_hi, c * v_hi)
            else:
                hit = (zc * v_lo + v_hi, t * v_lo + c * v_hi)
            cache[key] = hit
        out_lo, out_hi = hit
        out[lo] = out_lo
        out[hi] = out_hi
    return PrincipalSeriesVector(weyl_act_char(s, chi), out)


def a_word(w: WeylElement, v: PrincipalSeriesVector,
           word: ReducedWord | None = None) -> PrincipalSeriesVector:
    """Apply the intertwiner of ``w`` along a reduced word.

    The result does not depend on the word chosen; the output carries the
    twisted character ``w.chi``.
    """
    if word is None:
        word = reduced_word_of(w)
    elif word.evaluate() != w:
        raise ValueError("word does not spell the requested element")
    for a in word.letters:
        v = a_simple(a, v)
    return v


def gk_coefficient(w: WeylElement, chi: UnramifiedCharacter) -> Scalar:
    """Spherical eigenvalue: product of ``(1 - t b(chi)) / (1 - b(chi))``
    over the inversion set of the inverse element."""
    field = chi.field
    t = field.var("t")
    out = field.one
    _, roots = length_and_inversions(w)
    for beta in sorted(roots):
        zb = eval_weight(beta, chi)
        out = out * (field.one - t * zb) / (field.one - zb)
    return out


def value_at_identity(v: PrincipalSeriesVector) -> Scalar:
    """Coefficient of the identity basis vector (the only standard basis
    function not vanishing at the group identity)."""
    return v.coefficient(WeylElement.identity(v.char.n))


@dataclass
class ExpansionTerm:
    subset: RootSubset
    exponent: Fraction          # half-integer power of l
    d_S: Scalar
    beta_S: tuple[int, ...]
    target: WeylElement
    value: Scalar               # full scalar multiplying phi_target


def subset_expansion(w: WeylElement | Composition, chi: UnramifiedCharacter,
                     max_subsets: int = 2**20,
                     word: ReducedWord | None = None
                     ) -> tuple[list[ExpansionTerm], Scalar]:
    """Closed-form expansion of the intertwiner applied to ``phi_1``.

    Each subset S of word positions contributes

        l**((#S - l(w) - l(w_S))/2) * d_S * chi(beta_S) * phi_{w_S}

    where ``w_S`` multiplies the letters outside S in consumption order,
    ``d_S`` is the product of ``(1-t)/(1-beta(chi))`` over S, and ``beta_S``
    sums the ascending members.  Returns the term list and the sum of the
    terms landing on the identity (the value at the group identity).
    """
    if isinstance(w, Composition):
        word = canonical_reduced_word(w)
        w = w.weyl_element()
    elif word is None:
        word = canonical_reduced_word_for(w)
    elif word.evaluate() != w:
        raise ValueError("word does not spell the requested element")
    L = len(word.letters)
    if 2**L > max_subsets:
        raise ValueError(f"2^{L} subsets exceed the cap {max_subsets}")
    field = chi.field
    betas = beta_enumeration(word)
    zb = [eval_weight(b, chi) for b in betas]
    one_minus_t = field.one - field.var("t")
    identity = WeylElement.identity(chi.n)
    target_char = weyl_act_char(w, chi)

    terms: list[ExpansionTerm] = []
    identity_value = field.zero
    for mask in range(2**L):
        members = frozenset(k + 1 for k in range(L) if mask >> k & 1)
        sub = subset_structure(word, members)
        m = len(members)
        lw_s = sub.w_S.length()
        exponent = Fraction(m - L - lw_s, 2)
        assert exponent.denominator == 1, "parity violated"
        d_S = field.one
        for k in sorted(members):
            d_S = d_S * one_minus_t / (field.one - zb[k - 1])
        beta_S = tuple(sum(cs) for cs in zip(*(betas[k - 1] for k in sub.up))) \
            if sub.up else (0,) * (chi.n - 1)
        value = field.var("t", -int(exponent)) * d_S * eval_weight(beta_S, chi)
        terms.append(ExpansionTerm(sub, exponent, d_S, beta_S, sub.w_S, value))
        if sub.w_S == identity:
            identity_value = identity_value + value
    del target_char
    return terms, identity_value


def canonical_reduced_word_for(w: WeylElement) -> ReducedWord:
    """Canonical word when ``w`` is a block anti-diagonal element, else any
    reduced word."""
    from .weyl import compositions

    for d in compositions(w.n):
        if d.weyl_element() == w:
            return canonical_reduced_word(d)
    return reduced_word_of(w)


def expansion_vector(terms: Iterable[ExpansionTerm], w: WeylElement,
                     chi: UnramifiedCharacter) -> PrincipalSeriesVector:
    """Collect expansion terms into a vector in the ``w.chi`` twist."""
    coeffs: dict[WeylElement, Scalar] = {}
    for term in terms:
        prev = coeffs.get(term.target)
        coeffs[term.target] = term.value if prev is None else prev + term.value
    return PrincipalSeriesVector(weyl_act_char(w, chi), coeffs)
