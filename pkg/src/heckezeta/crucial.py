"""Subset combinatorics of reduced words and the exponent inequality.

For a reduced word with root enumeration ``beta_1..beta_L`` and a subset S of
positions, the deleted-word element ``w_S`` multiplies the letters outside S
in consumption order; members split into ascents and descents according to
whether their letter would lengthen the partial product at that moment.  The
critical set picks one position for every letter of odd multiplicity, and the
inequality

    #S_cri - l(w) - 2 * sum_{beta in S_cri} v_ad(beta)  <=  -(r-1) n

is the exponent bound behind the decay of the identity value of the
intertwiner under block characters.  (The displayed direction is the one the
numeric suprema corroborate; reports also record the opposite orientation.)
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .characters import admissible_character, v_ad
from .weyl import (Composition, ReducedWord, WeylElement, beta_enumeration,
                   canonical_reduced_word)


@dataclass(frozen=True)
class RootSubset:
    """A subset of word positions with its derived combinatorial data."""

    word: ReducedWord
    members: frozenset[int]          # positions 1..L
    w_S: WeylElement
    up: frozenset[int]               # ascending members
    down: frozenset[int]             # descending members


def subset_structure(word: ReducedWord, members: frozenset[int] | set[int]
                     ) -> RootSubset:
    """Walk the word once, deleting member letters and classifying them."""
    n = word.n
    L = len(word.letters)
    members = frozenset(members)
    for k in members:
        if not 1 <= k <= L:
            raise ValueError(f"position {k} outside 1..{L}")
    perm = list(range(n))       # w_S built by left multiplication
    inv = list(range(n))        # its inverse, kept in step
    up, down = set(), set()
    for k, a in enumerate(word.letters, start=1):
        i = a - 1
        ascending = inv[i] < inv[i + 1]
        if k in members:
            (up if ascending else down).add(k)
        else:
            # left-multiply by the simple reflection: swap values i, i+1
            pi, pj = inv[i], inv[i + 1]
            perm[pi], perm[pj] = perm[pj], perm[pi]
            inv[i], inv[i + 1] = pj, pi
    w_s = WeylElement(n, tuple(perm))
    assert (L - len(members) - w_s.length()) % 2 == 0, "parity violated"
    return RootSubset(word, members, w_s, frozenset(up), frozenset(down))


def letter_multiplicities(word: ReducedWord) -> dict[int, int]:
    out: dict[int, int] = {}
    for a in word.letters:
        out[a] = out.get(a, 0) + 1
    return out


def critical_set(d: Composition) -> RootSubset:
    """One position per odd-multiplicity letter of the canonical word.

    Among the positions carrying a given letter the one with the smallest
    boundary weight is chosen (the conservative pick for the exponent
    inequality); the weight is in fact constant along a letter, so the choice
    only fixes a representative.
    """
    word = canonical_reduced_word(d)
    betas = beta_enumeration(word)
    mult = letter_multiplicities(word)
    members = set()
    for a, m in mult.items():
        if m % 2 == 0:
            continue
        positions = [k for k, b in enumerate(word.letters, 1) if b == a]
        members.add(min(positions, key=lambda k: (v_ad(betas[k - 1], d), k)))
    return subset_structure(word, members)


def admissible_pair_check(k: Sequence[int], d: Composition) -> bool:
    """Valuation form of the quadratic modulus constraints away from the
    block boundaries (with the outer valuations set to zero)."""
    n = d.n
    if len(k) != n - 1:
        raise ValueError(f"expected {n - 1} valuations")
    bounds = set(d.boundaries())

    def kk(j: int) -> int:
        return k[j - 1] if 1 <= j <= n - 1 else 0

    return all(kk(n - i + 1) + kk(n - i - 1) == 2 * kk(n - i)
               for i in range(1, n) if i not in bounds)


@dataclass
class InequalityReport:
    d: Composition
    length: int
    critical_size: int
    vad_sum: int
    lhs: int
    rhs: int
    holds: bool
    equality: bool
    reversed_orientation_holds: bool

    def as_dict(self):
        return {
            "composition": list(self.d.parts),
            "length": self.length,
            "critical_size": self.critical_size,
            "vad_sum": self.vad_sum,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "holds": self.holds,
            "equality": self.equality,
            "reversed_orientation_holds": self.reversed_orientation_holds,
        }


def verify_exponent_inequality(d: Composition) -> InequalityReport:
    word = canonical_reduced_word(d)
    betas = beta_enumeration(word)
    scri = critical_set(d)
    vad_sum = sum(v_ad(betas[k - 1], d) for k in scri.members)
    lhs = len(scri.members) - len(word.letters) - 2 * vad_sum
    rhs = -(d.r - 1) * d.n
    return InequalityReport(
        d=d, length=len(word.letters), critical_size=len(scri.members),
        vad_sum=vad_sum, lhs=lhs, rhs=rhs, holds=lhs <= rhs,
        equality=lhs == rhs, reversed_orientation_holds=lhs >= rhs)


# ---------------------------------------------------------------------------
# numeric evaluation of the identity value under block characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityTerm:
    """One identity-landing term of the expansion, ready for evaluation.

    The scalar is ``l**lpow * (1-1/l)**nfactors * y**num_exps /
    prod_i (1 - y**den_exps[i])`` in the block variables ``y_j = l**(-s_j)``.
    """

    lpow: int
    nfactors: int
    num_exps: tuple[int, ...]
    den_exps: tuple[tuple[int, ...], ...]


def identity_terms(d: Composition) -> list[IdentityTerm]:
    """All identity-landing subset terms of the block element of ``d``."""
    word = canonical_reduced_word(d)
    betas = beta_enumeration(word)
    bounds = d.boundaries()
    evecs = [tuple(b[i - 1] for i in bounds) for b in betas]
    L = len(word.letters)
    identity = WeylElement.identity(d.n)
    out = []
    for mask in range(2**L):
        members = frozenset(k + 1 for k in range(L) if mask >> k & 1)
        sub = subset_structure(word, members)
        if sub.w_S != identity:
            continue
        m = len(members)
        lpow = (m - L) // 2
        assert (m - L) % 2 == 0
        num = tuple(sum(e) for e in zip(*(evecs[k - 1] for k in sub.up))) \
            if sub.up else (0,) * (d.r - 1)
        dens = tuple(evecs[k - 1] for k in sorted(members))
        out.append(IdentityTerm(lpow, m, num, dens))
    return out


def evaluate_identity_terms(terms: Sequence[IdentityTerm], ell: int,
                            y: np.ndarray) -> np.ndarray:
    """Vectorised sum of the terms at an array of y-points.

    ``y`` has shape (npoints, nvars); returns shape (npoints,).
    """
    npts = y.shape[0]
    total = np.zeros(npts, dtype=complex)
    one_minus = 1.0 - 1.0 / ell
    for term in terms:
        vals = np.full(npts, float(ell) ** term.lpow * one_minus ** term.nfactors,
                       dtype=complex)
        for j, e in enumerate(term.num_exps):
            if e:
                vals = vals * y[:, j] ** e
        for exps in term.den_exps:
            mono = np.ones(npts, dtype=complex)
            for j, e in enumerate(exps):
                if e:
                    mono = mono * y[:, j] ** e
            vals = vals / (1.0 - mono)
        total += vals
    return total


def _grid_points(nvars: int, points: int, period: float, cap: int,
                 seed: int) -> np.ndarray:
    """Imaginary parts: full Cartesian grid if affordable, else seeded draws
    (always including the origin, where the magnitudes peak)."""
    if nvars == 0:
        return np.zeros((1, 0))
    if points**nvars <= cap:
        axes = [np.linspace(0.0, period, points, endpoint=False)] * nvars
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)
    rng = np.random.default_rng(seed)
    draws = rng.uniform(0.0, period, size=(cap - 1, nvars))
    return np.vstack([np.zeros((1, nvars)), draws])


@dataclass
class SupReport:
    d: Composition
    ell: int
    eps: float
    sup: float
    bound: float
    ratio: float
    argmax_im: tuple[float, ...]
    points: int

    def as_dict(self):
        return {
            "composition": list(self.d.parts), "ell": self.ell,
            "eps": self.eps, "sup": self.sup, "bound": self.bound,
            "ratio": self.ratio, "argmax_im": list(self.argmax_im),
            "points": self.points,
        }


def numeric_sup(d: Composition, ell: int, eps: float,
                points_per_variable: int = 1000, cap: int = 2_000_000,
                seed: int = 0) -> SupReport:
    """Sampled supremum of the identity value on the line Re(s) = 1 + eps.

    The magnitude is periodic in each Im(s_j) with period ``2 pi / log l``,
    so one period per variable is swept.  The reference decay is
    ``l**(-n(r-1)/2)``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    nvars = d.r - 1
    terms = identity_terms(d)
    period = 2.0 * math.pi / math.log(ell)
    ims = _grid_points(nvars, points_per_variable, period, cap, seed)
    if nvars:
        s = (1.0 + eps) + 1j * ims
        y = np.power(float(ell), -s)
        values = evaluate_identity_terms(terms, ell, y)
    else:
        values = evaluate_identity_terms(terms, ell, np.zeros((1, 0)))
    mags = np.abs(values)
    imax = int(np.argmax(mags))
    sup = float(mags[imax])
    bound = float(ell) ** (-d.n * (d.r - 1) / 2.0)
    return SupReport(d=d, ell=ell, eps=eps, sup=sup, bound=bound,
                     ratio=sup / bound, argmax_im=tuple(ims[imax]),
                     points=ims.shape[0])


def voronoi_closed_form(n: int, ell: int, s1: complex) -> complex:
    """Identity value for a single-boundary hook composition (1, n-1) or
    (n-1, 1): ``(y (1-1/l) / (1-y))**(n-1)`` with ``y = l**(-s1)``."""
    y = complex(ell) ** (-s1)
    return (y * (1.0 - 1.0 / ell) / (1.0 - y)) ** (n - 1)


@dataclass
class NoPoleReport:
    d: Composition
    ell: int
    min_abs: float
    bound: float
    max_d_subset: float
    min_vad: int
    exact_edge_ok: bool
    ok: bool

    def as_dict(self):
        return {
            "composition": list(self.d.parts), "ell": self.ell,
            "min_abs": self.min_abs, "bound": self.bound,
            "max_d_subset": self.max_d_subset, "min_vad": self.min_vad,
            "exact_edge_ok": self.exact_edge_ok, "ok": self.ok,
        }


def no_pole_check(d: Composition, ell: int, eps: float = 0.01,
                  points_per_variable: int = 201, cap: int = 200_000,
                  seed: int = 0) -> NoPoleReport:
    """Certify ``|1 - beta(chi)| >= 1 - 1/l`` on the block-character lines.

    Sweeps both Re(s) = 1 (the unitary edge of the zeta normalisation) and
    Re(s) = 1 + eps.  ``max_d_subset`` maximises the subset product
    ``prod (1-1/l)/|1-beta(chi)|`` over all subsets, which equals the product
    of the factors exceeding one.  The boundary case (all Im = 0, Re = 1) is
    also checked in exact rational arithmetic.
    """
    word = canonical_reduced_word(d)
    betas = beta_enumeration(word)
    bounds = d.boundaries()
    evecs = [tuple(b[i - 1] for i in bounds) for b in betas]
    vads = [v_ad(b, d) for b in betas]
    min_vad = min(vads) if vads else 0
    bound = 1.0 - 1.0 / ell
    nvars = d.r - 1
    period = 2.0 * math.pi / math.log(ell)
    ims = _grid_points(nvars, points_per_variable, period, cap, seed)
    min_abs = math.inf
    max_ds = 1.0
    for re in (1.0, 1.0 + eps):
        if nvars == 0:
            continue
        y = np.power(float(ell), -(re + 1j * ims))
        for exps in evecs:
            mono = np.ones(ims.shape[0], dtype=complex)
            for j, e in enumerate(exps):
                if e:
                    mono = mono * y[:, j] ** e
            f = np.abs(1.0 - mono)
            min_abs = min(min_abs, float(f.min()))
        # subset-product maximum per point = product of factors > 1
        factors = np.ones(ims.shape[0])
        for exps in evecs:
            mono = np.ones(ims.shape[0], dtype=complex)
            for j, e in enumerate(exps):
                if e:
                    mono = mono * y[:, j] ** e
            g = bound / np.abs(1.0 - mono)
            factors = factors * np.maximum(1.0, g)
        max_ds = max(max_ds, float(factors.max()))
    if nvars == 0:
        min_abs = 1.0
    # exact check at the real edge: beta(chi) = l**(-v_ad(beta))
    exact_ok = all(
        1 - Fraction(1, ell**v) >= 1 - Fraction(1, ell) for v in vads)
    ok = exact_ok and min_abs >= bound - 1e-9 and max_ds <= 1.0 + 1e-9
    return NoPoleReport(d=d, ell=ell, min_abs=min_abs, bound=bound,
                        max_d_subset=max_ds, min_vad=min_vad,
                        exact_edge_ok=exact_ok, ok=ok)


def dominance_check(d: Composition, ell: int) -> tuple[bool, float, float]:
    """Compare, at the real point s = 1, every identity-landing term's
    magnitude with the critical set's nominal magnitude
    ``l**((#S_cri - l(w))/2) * prod (1-1/l)/(1-l**-v) * l**(-sum v)``.

    Returns (holds, worst term magnitude, critical magnitude).
    """
    word = canonical_reduced_word(d)
    betas = beta_enumeration(word)
    vads = [v_ad(b, d) for b in betas]
    scri = critical_set(d)
    L = len(word.letters)
    crit = float(ell) ** ((len(scri.members) - L) / 2.0)
    for k in scri.members:
        v = vads[k - 1]
        crit *= (1.0 - 1.0 / ell) / (1.0 - float(ell) ** (-v))
        crit *= float(ell) ** (-v)
    worst = 0.0
    y = np.array([[float(ell) ** (-1.0)] * (d.r - 1)]) if d.r > 1 else \
        np.zeros((1, 0))
    for term in identity_terms(d):
        val = abs(evaluate_identity_terms([term], ell, y)[0])
        worst = max(worst, val)
    return worst <= crit * (1 + 1e-9), worst, crit


def generic_sup_probe(d: Composition, ell: int, eps: float,
                      points_per_variable: int = 60,
                      seed: int = 0) -> dict:
    """Exploratory sweep of the identity value under the generic character,
    compared against ``l**(-l(w))`` (a conjectural decay, reported only)."""
    from .characters import generic_assignment, generic_character
    from .hecke import PrincipalSeriesVector
    from .intertwine import a_word, value_at_identity
    from .weyl import WeylElement as _W

    n = d.n
    chi = generic_character(n)
    w = d.weyl_element()
    vec = PrincipalSeriesVector.basis_vector(chi, _W.identity(n))
    val = value_at_identity(a_word(w, vec))
    rng = np.random.default_rng(seed)
    period = 2.0 * math.pi / math.log(ell)
    sup = 0.0
    for _ in range(points_per_variable):
        s = [(1.0 + eps) + 1j * rng.uniform(0, period) for _ in range(n - 1)]
        assignment = generic_assignment(n, ell, s)
        sup = max(sup, abs(val.eval(assignment)))
    bound = float(ell) ** (-w.length())
    return {"composition": list(d.parts), "ell": ell, "sup": sup,
            "conjectural_bound": bound,
            "ratio": sup / bound if bound else math.inf}
