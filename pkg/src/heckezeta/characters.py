"""Unramified torus characters and torus bookkeeping.

A character is determined by its (monomial) value on each simple coroot
direction; evaluation extends multiplicatively to the weight lattice.  Two
symbolic families are provided:

* the generic character, with value ``x_i`` on the i-th simple root, over
  the field in ``t, x_1, ..., x_{n-1}`` (``t`` plays the role of ``1/l``);
* the block character of a composition ``d``, whose value is ``y_j`` on the
  j-th block-boundary simple root and ``1`` elsewhere, over
  ``t, y_1, ..., y_{r-1}``.

Numeric specialisations plug complex values into the symbolic variables:
``x_i = p**s[n-i]`` for the generic family and ``y_j = l**(-s_j)`` for the
block family, matching the pairing with the torus coordinates below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .scalars import Scalar, ScalarField
from .weyl import Composition, WeylElement, root_coords


@dataclass(frozen=True)
class UnramifiedCharacter:
    """Assignment of a nonzero monomial to each simple root (1-indexed)."""

    field: ScalarField
    n: int
    values: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.values) != self.n - 1:
            raise ValueError("need one value per simple root")
        for v in self.values:
            if not v.is_monomial():
                raise ValueError("character values must be monomials")

    def value(self, i: int) -> Scalar:
        """Value on the i-th simple root, 1-indexed."""
        return self.values[i - 1]


def eval_weight(gamma: Sequence[int], chi: UnramifiedCharacter) -> Scalar:
    """Multiplicative extension of the character to a weight vector."""
    out = chi.field.one
    for k, v in zip(gamma, chi.values):
        if k:
            out = out * v**k
    return out


def weyl_act_char(w: WeylElement, chi: UnramifiedCharacter) -> UnramifiedCharacter:
    """Twisted character ``w.chi``; satisfies (w.alpha)(chi) = alpha(w.chi)."""
    if w.n != chi.n:
        raise ValueError("rank mismatch")
    vals = []
    for i in range(1, chi.n):
        a, b = w.apply(i), w.apply(i + 1)
        vals.append(eval_weight(root_coords(chi.n, a, b), chi))
    return UnramifiedCharacter(chi.field, chi.n, tuple(vals))


def generic_field(n: int) -> ScalarField:
    return ScalarField(("t",) + tuple(f"x{i}" for i in range(1, n)))


def generic_character(n: int, field: ScalarField | None = None) -> UnramifiedCharacter:
    """Character with value ``x_i`` on the i-th simple root."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    field = field or generic_field(n)
    return UnramifiedCharacter(field, n, tuple(field.var(f"x{i}")
                                               for i in range(1, n)))


def admissible_field(d: Composition) -> ScalarField:
    return ScalarField(("t",) + tuple(f"y{j}" for j in range(1, d.r)))


def admissible_character(d: Composition,
                         field: ScalarField | None = None) -> UnramifiedCharacter:
    """Block character of ``d``: value ``y_j`` on the j-th boundary simple
    root, trivial on all others.

    Numerically ``y_j`` stands for ``l**(-s_j)``, so each positive root of
    the block element picks up one factor of ``l**(-s_j)`` per boundary
    coordinate it contains.
    """
    field = field or admissible_field(d)
    n = d.n
    vals = [field.one] * (n - 1)
    for j, b in enumerate(d.boundaries(), start=1):
        vals[b - 1] = field.var(f"y{j}")
    return UnramifiedCharacter(field, n, tuple(vals))


def make_char(mode: str, *, n: int | None = None,
              d: Composition | None = None,
              s: Sequence[complex] | None = None) -> UnramifiedCharacter:
    """Build a symbolic character of the requested family.

    ``s`` is validated against the family's parameter count (``n-1`` generic,
    ``r-1`` for a composition); pass it to the ``*_assignment`` helpers to
    evaluate at numeric exponents.
    """
    if mode == "generic":
        if n is None:
            raise ValueError("generic mode needs the rank n")
        if s is not None and len(s) != n - 1:
            raise ValueError(f"expected {n - 1} exponents, got {len(s)}")
        return generic_character(n)
    if mode == "admissible":
        if d is None:
            raise ValueError("admissible mode needs a composition")
        if s is not None and len(s) != d.r - 1:
            raise ValueError(f"expected {d.r - 1} exponents, got {len(s)}")
        return admissible_character(d)
    raise ValueError(f"unknown mode {mode!r}")


def generic_assignment(n: int, p: float, s: Sequence[complex]) -> dict[str, complex]:
    """Numeric values for the generic variables: ``x_i -> p**s_{n-i}``."""
    if len(s) != n - 1:
        raise ValueError(f"expected {n - 1} exponents, got {len(s)}")
    out: dict[str, complex] = {"t": 1.0 / p}
    for i in range(1, n):
        out[f"x{i}"] = complex(p) ** s[n - 1 - i]
    return out


def admissible_assignment(d: Composition, ell: float,
                          s: Sequence[complex]) -> dict[str, complex]:
    """Numeric values for the block variables: ``y_j -> l**(-s_j)``."""
    if len(s) != d.r - 1:
        raise ValueError(f"expected {d.r - 1} exponents, got {len(s)}")
    out: dict[str, complex] = {"t": 1.0 / ell}
    for j in range(1, d.r):
        out[f"y{j}"] = complex(ell) ** (-s[j - 1])
    return out


def v_ad(gamma: Sequence[int], d: Composition) -> int:
    """Sum of the weight's coordinates at the block-boundary indices."""
    return sum(gamma[b - 1] for b in d.boundaries())


def cstar_weight(n: int, k: Sequence[int]) -> tuple[int, ...]:
    """Weight ``gamma`` with ``c*(k) = h_gamma(p)`` for the anti-diagonal
    torus parametrisation ``c* = diag(1/c_{n-1}, c_{n-1}/c_{n-2}, ..., c_1)``
    with ``c_i = p**k_i``; the coordinates come out index-reversed and
    negated: ``gamma_i = -k_{n-i}``.
    """
    if len(k) != n - 1:
        raise ValueError(f"expected {n - 1} valuations, got {len(k)}")
    return tuple(-k[n - 1 - i] for i in range(1, n))


def cstar_value(k: Sequence[int], chi: UnramifiedCharacter) -> Scalar:
    """Character value on the torus point with valuation vector ``k``."""
    return eval_weight(cstar_weight(chi.n, k), chi)


def delta_half_on_cstar(k: Sequence[int], p: int) -> Fraction:
    """Normalisation weight ``prod c_i**(-1) = p**(-sum k_i)``.

    This is the square root of the Borel modular character on ``c*(k)``,
    written so that multiplying the untwisted orbital value of modulus
    ``c = (p**k_1, ..., p**k_{n-1})`` by it produces the Dirichlet-series
    coefficient of the corresponding zeta function (the rank-one value is
    then ``1 - 1/p``).  It is multiplicative in ``k``.
    """
    total = sum(k)
    return Fraction(1, p**total) if total >= 0 else Fraction(p**(-total))
