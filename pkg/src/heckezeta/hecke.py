"""The finite Iwahori-Hecke algebra acting on Iwahori-fixed vectors.

Vectors live in the span of the standard basis ``phi_w`` indexed by Weyl
elements; the generator ``T_i`` acts by the two-case rule

    T_i phi_w = phi_{w s_i}                  if  l(w s_i) > l(w),
    T_i phi_w = l phi_{w s_i} + (l-1) phi_w  otherwise,

with ``l = 1/t`` in the scalar field.  The action does not depend on the
inducing character, which tags vectors only so intertwining operators can
twist it.  Products of algebra elements are recovered from the action, which
is faithful already on ``phi_1`` (``T_w phi_1 = phi_{w^{-1}}``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import UnramifiedCharacter
from .scalars import Scalar
from .weyl import WeylElement, all_elements, reduced_word_of


@dataclass
class PrincipalSeriesVector:
    """Finite linear combination of standard basis vectors ``phi_w``."""

    char: UnramifiedCharacter
    coeffs: dict[WeylElement, Scalar]

    def __post_init__(self):
        self.coeffs = {w: c for w, c in self.coeffs.items() if not c.is_zero()}

    @classmethod
    def basis_vector(cls, chi: UnramifiedCharacter, w: WeylElement):
        return cls(chi, {w: chi.field.one})

    @classmethod
    def spherical(cls, chi: UnramifiedCharacter):
        one = chi.field.one  # one shared object: keeps the action cache hot
        return cls(chi, {w: one for w in all_elements(chi.n)})

    def coefficient(self, w: WeylElement) -> Scalar:
        return self.coeffs.get(w, self.char.field.zero)

    def __add__(self, other: "PrincipalSeriesVector"):
        if other.char != self.char:
            raise ValueError("cannot add vectors with different characters")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return PrincipalSeriesVector(self.char, out)

    def scale(self, a: Scalar) -> "PrincipalSeriesVector":
        return PrincipalSeriesVector(self.char,
                                     {w: a * c for w, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, PrincipalSeriesVector):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(w) == other.coefficient(w) for w in keys)


def standard_basis(chi: UnramifiedCharacter) -> list[PrincipalSeriesVector]:
    """The full standard basis; its length is n! (the fixed-space dimension)."""
    return [PrincipalSeriesVector.basis_vector(chi, w)
            for w in all_elements(chi.n)]


def t_simple_action(i: int, v: PrincipalSeriesVector) -> PrincipalSeriesVector:
    """Action of the generator attached to the i-th simple reflection."""
    n = v.char.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple index {i} out of range")
    field = v.char.field
    ell = field.var("t", -1)
    ell_minus_1 = ell - field.one
    s = WeylElement.simple(n, i)
    out: dict[WeylElement, Scalar] = {}

    def bump(w, c):
        prev = out.get(w)
        out[w] = c if prev is None else prev + c

    for w, c in v.coeffs.items():
        ws = w * s
        if w.perm[i - 1] < w.perm[i]:  # l(ws) > l(w)
            bump(ws, c)
        else:
            bump(ws, ell * c)
            bump(w, ell_minus_1 * c)
    return PrincipalSeriesVector(v.char, out)


def t_word_action(w: WeylElement, v: PrincipalSeriesVector) -> PrincipalSeriesVector:
    """Action of ``T_w``; built from any reduced word, rightmost factor first.

    With this orientation length-additive products factor as operators:
    ``T_{uv} = T_u T_v`` whenever ``l(uv) = l(u) + l(v)``.
    """
    for a in reversed(reduced_word_of(w).letters):
        v = t_simple_action(a, v)
    return v


@dataclass
class HeckeElement:
    """Finite linear combination of the basis elements ``T_w``."""

    n: int
    field_coeffs: dict[WeylElement, Scalar]

    def __post_init__(self):
        self.field_coeffs = {w: c for w, c in self.field_coeffs.items()
                             if not c.is_zero()}

    @classmethod
    def basis(cls, field, w: WeylElement) -> "HeckeElement":
        return cls(w.n, {w: field.one})

    @classmethod
    def unit(cls, field, n: int) -> "HeckeElement":
        return cls.basis(field, WeylElement.identity(n))

    def apply(self, v: PrincipalSeriesVector) -> PrincipalSeriesVector:
        out = PrincipalSeriesVector(v.char, {})
        for w, c in self.field_coeffs.items():
            out = out + t_word_action(w, v).scale(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        keys = set(self.field_coeffs) | set(other.field_coeffs)
        zero = None
        for w in keys:
            a = self.field_coeffs.get(w)
            b = other.field_coeffs.get(w)
            if a is None:
                a = b.field.zero
            if b is None:
                b = a.field.zero
            if a != b:
                return False
        return True


def hecke_mul(a: HeckeElement, b: HeckeElement,
              chi: UnramifiedCharacter) -> HeckeElement:
    """Product read off from the faithful action on ``phi_1``.

    ``T_w phi_1 = phi_{w^{-1}}``, so the coefficient of ``T_w`` in the
    product is the ``phi_{w^{-1}}`` coefficient of ``a(b(phi_1))``.
    """
    phi1 = PrincipalSeriesVector.basis_vector(chi, WeylElement.identity(a.n))
    image = a.apply(b.apply(phi1))
    return HeckeElement(a.n, {u.inverse(): c for u, c in image.coeffs.items()})


def involution(a: HeckeElement) -> HeckeElement:
    """The anti-involution induced by ``g -> g^{-1}``: ``T_w -> T_{w^{-1}}``.

    Coefficient conjugation is the identity on the exact scalars used here.
    """
    return HeckeElement(a.n, {w.inverse(): c for w, c in a.field_coeffs.items()})
