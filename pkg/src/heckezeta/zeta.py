"""Kloosterman-set zeta functions and their Dirichlet coefficients.

For the spherical test function the zeta function of a Weyl element equals
the Gindikin-Karpelevich product, so its coefficients (normalised untwisted
orbital volumes indexed by modulus valuations) fall out of the geometric
expansion of that product.  The monomial attached to the valuation vector
``k`` is index-reversed: the torus point ``c*(k)`` pairs with the character
as ``prod x_i**(-k_{n-i})``, so the series runs over ``prod x_i**(k_{n-i})``.

The archimedean analogue is a ratio of Gamma factors; two conventions are
implemented (see :func:`archimedean_gk`).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from scipy.integrate import quad
from scipy.special import loggamma

from .characters import UnramifiedCharacter
from .hecke import PrincipalSeriesVector
from .intertwine import a_word, gk_coefficient, value_at_identity
from .scalars import Scalar
from .weyl import Composition, WeylElement, length_and_inversions

TestFunction = Union[str, WeylElement]  # "spherical" or an Iwahori double coset

PolyT = dict[int, int]  # polynomial in t, exponent -> integer coefficient


def flag_index(n: int, ell: int) -> int:
    """Number of complete flags over the field with ``ell`` elements:
    the index of the Iwahori subgroup in the maximal compact.

    >>> flag_index(3, 2)
    21
    >>> flag_index(2, 3)
    4
    """
    out = 1
    for k in range(1, n + 1):
        out *= (ell**k - 1) // (ell - 1)
    return out


def build_phi(T: TestFunction, ell: int | None,
              chi: UnramifiedCharacter) -> tuple[int, PrincipalSeriesVector]:
    """Iwahori-fixed vector attached to a test function, with its exact
    normalising constant.

    The spherical function gives ``(1, phi_+)``; the double coset of ``u``
    gives ``(flag_index(n, l), phi_u)`` (the exact index, of size
    ``l**(n(n-1)/2)`` up to bounded factors).
    """
    if isinstance(T, str):
        if T != "spherical":
            raise ValueError(f"unknown test function {T!r}")
        return 1, PrincipalSeriesVector.spherical(chi)
    if ell is None:
        raise ValueError("the double-coset normalisation needs the prime l")
    return flag_index(chi.n, ell), PrincipalSeriesVector.basis_vector(chi, T)


def kloosterman_zeta(T: TestFunction, w: WeylElement,
                     chi: UnramifiedCharacter, ell: int | None = None) -> Scalar:
    """Zeta value as an intertwiner evaluation at the identity."""
    constant, vec = build_phi(T, ell, chi)
    value = value_at_identity(a_word(w, vec))
    return chi.field.const(constant) * value


@dataclass
class CoefficientTable:
    """Dirichlet coefficients of the spherical zeta function of ``w``.

    ``entries[k]`` is a polynomial in ``t = 1/p`` whose value at ``t = 1/p``
    is the untwisted orbital volume at modulus ``(p**k_1, ..., p**k_{n-1})``
    multiplied by the normalisation weight ``p**(-sum k)``.
    """

    n: int
    d: Composition | None
    kmax: int
    entries: dict[tuple[int, ...], PolyT]

    def value_at(self, k: Sequence[int], p: int) -> Fraction:
        poly = self.entries.get(tuple(k))
        if poly is None:
            return Fraction(0)
        t = Fraction(1, p)
        return sum((Fraction(c) * t**e for e, c in poly.items()), Fraction(0))

    def poly(self, k: Sequence[int]) -> PolyT:
        return dict(self.entries.get(tuple(k), {}))

    def to_json(self, p: int) -> str:
        coeffs = []
        for k in sorted(self.entries):
            poly = self.entries[k]
            deg = max(poly) if poly else 0
            dense = [poly.get(e, 0) for e in range(deg + 1)]
            val = self.value_at(k, p)
            coeffs.append({"k": list(k), "value_poly_t": dense,
                           "value_at_p": f"{val.numerator}/{val.denominator}"})
        return json.dumps({
            "n": self.n,
            "w": list(self.d.parts) if self.d else None,
            "p": p,
            "coeffs": coeffs,
        }, indent=2)


def _polyt_mul(a: PolyT, b: PolyT) -> PolyT:
    out: PolyT = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def series_coefficients(w: WeylElement | Composition, kmax: int) -> CoefficientTable:
    """Expand the Gindikin-Karpelevich product as a geometric series.

    Each inversion root ``beta`` contributes ``1 + (1-t)(m + m^2 + ...)`` in
    its monomial ``m``; the resulting exponent vectors are reversed into
    modulus valuations.
    """
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    d = None
    if isinstance(w, Composition):
        d = w
        w = w.weyl_element()
    n = w.n
    _, roots = length_and_inversions(w)
    one_minus_t: PolyT = {0: 1, 1: -1}
    table: dict[tuple[int, ...], PolyT] = {(0,) * (n - 1): {0: 1}}
    for beta in sorted(roots):
        new: dict[tuple[int, ...], PolyT] = {}
        reach = min((kmax // b for b in beta if b), default=0)
        for e, poly in table.items():
            for j in range(reach + 1):
                shifted = tuple(a + j * b for a, b in zip(e, beta))
                if any(x > kmax for x in shifted):
                    break
                contrib = poly if j == 0 else _polyt_mul(poly, one_minus_t)
                prev = new.get(shifted)
                if prev is None:
                    new[shifted] = dict(contrib)
                else:
                    for deg, c in contrib.items():
                        s = prev.get(deg, 0) + c
                        if s:
                            prev[deg] = s
                        else:
                            del prev[deg]
        table = {e: p for e, p in new.items() if p}
    entries = {tuple(reversed(e)): poly for e, poly in table.items()}
    return CoefficientTable(n=n, d=d, kmax=kmax, entries=entries)


def support_check(T: TestFunction, c: Sequence[Fraction | int],
                  p: int | None = None) -> bool:
    """True when the modulus can support a nonzero orbital value.

    Vanishing holds for non-integral moduli regardless of the test function.
    """
    del T
    for ci in c:
        q = Fraction(ci)
        if p is None:
            if q.denominator != 1:
                return False
        elif q.denominator % p == 0:
            return False
    return True


class GammaPoleError(ValueError):
    """An argument of the Gamma factors is too close to a pole."""


def _gamma_ratio(z: complex, half: bool) -> complex:
    """``Gamma_R(z) / Gamma_R(z+1)`` for ``Gamma_R(z) = pi**(-z) G(z/2)``
    (``half=False``) or the conventional ``pi**(-z/2) G(z/2)`` (``half=True``)."""
    for arg in (z / 2, (z + 1) / 2):
        nearest = round(arg.real)
        if nearest <= 0 and abs(arg - nearest) < 1e-8:
            raise GammaPoleError(f"Gamma argument {arg} near a pole")
    scale = math.sqrt(math.pi) if half else math.pi
    return scale * complex(
        *_cexp(loggamma(z / 2) - loggamma((z + 1) / 2)))


def _cexp(z: complex) -> tuple[float, float]:
    e = math.exp(z.real)
    return e * math.cos(z.imag), e * math.sin(z.imag)


def archimedean_gk(w: WeylElement | Composition, s: Sequence[complex],
                   convention: str = "paper") -> complex:
    """Archimedean spherical value attached to ``w`` at the exponents ``s``.

    ``convention="paper"`` uses the literal constants
    ``prod 1/(s_i - 1)`` and ``Gamma_R(z) = pi**(-z) Gamma(z/2)`` with the
    root pairing ``alpha_i -> s_i``.  ``convention="calibrated"`` uses
    ``prod 1/(s_i + 1)``, the conventional ``Gamma_R(z) = pi**(-z/2)
    Gamma(z/2)`` and the pairing ``alpha_i -> s_{n-i}``; this is the variant
    that agrees with direct quadrature of the defining unipotent integral
    (see :func:`archimedean_gk_quadrature_rank2`).
    """
    if isinstance(w, Composition):
        w = w.weyl_element()
    n = w.n
    s = tuple(complex(v) for v in s)
    if len(s) != n - 1:
        raise ValueError(f"expected {n - 1} exponents")
    if convention not in ("paper", "calibrated"):
        raise ValueError(f"unknown convention {convention!r}")
    paper = convention == "paper"
    shift = -1.0 if paper else 1.0
    c = 1.0 + 0.0j
    for si in s:
        denom = si + shift
        if denom == 0:
            raise GammaPoleError(f"pole of the Mellin constant at s_i = {-shift}")
        c /= denom
    _, roots = length_and_inversions(w)
    out = c
    for beta in sorted(roots):
        if paper:
            val = sum(k * si for k, si in zip(beta, s))
        else:
            val = sum(k * s[n - 1 - i] for i, k in enumerate(beta, start=1))
        out *= _gamma_ratio(val, half=not paper)
    return out


def archimedean_gk_quadrature_rank2(s: float, u_span: float = math.inf,
                                    tol: float = 1e-10) -> float:
    """Direct two-dimensional quadrature of the rank-one unipotent integral

        int_R int_0^inf [ c sqrt(1+u^2) <= 1 ] c**(s+1) dc/c du,

    which the calibrated convention of :func:`archimedean_gk` evaluates in
    closed form.  Needs Re(s) > 0; real ``s`` only.
    """
    if s <= 0:
        raise ValueError("quadrature requires s > 0")

    def inner(u: float) -> float:
        top = 1.0 / math.sqrt(1.0 + u * u)
        val, _ = quad(lambda c: c**s, 0.0, top, epsabs=tol, epsrel=tol)
        return val

    val, _ = quad(inner, -u_span, u_span, epsabs=tol, epsrel=1e-8, limit=200)
    return val


if __name__ == "__main__":
    import doctest

    doctest.testmod()
