"""Exact multivariate Laurent rational functions over the rationals.

Elements are quotients ``num / prod(factors)`` where ``num`` is a sparse
Laurent polynomial with integer or Fraction coefficients and the denominator
is kept as a multiset of polynomial factors.  The factors produced by the
intertwining recursion are always binomials ``1 - m`` for a monomial ``m``,
and keeping them un-expanded means no polynomial gcd is ever needed: equality
is decided by cross multiplication, and pole analysis can inspect the factors
directly.

>>> F = ScalarField(("t", "x"))
>>> t, x = F.var("t"), F.var("x")
>>> c = (F.one - t) / (F.one - x)
>>> (x * c + F.one) == (F.one - t * x) / (F.one - x)
True
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple[int, ...]
Coeff = Union[int, Fraction]
Poly = dict[Monomial, Coeff]
# Frozen, hashable form of a Poly used as a denominator-factor key.
PolyKey = tuple[tuple[Monomial, Coeff], ...]


class SingularEvaluationError(ZeroDivisionError):
    """A denominator factor vanished at the requested point."""


def _pkey(p: Poly) -> PolyKey:
    return tuple(sorted(p.items()))


def _punkey(key: PolyKey) -> Poly:
    return dict(key)


def _padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _pneg(a: Poly) -> Poly:
    return {m: -c for m, c in a.items()}


def _pmul(a: Poly, b: Poly) -> Poly:
    if len(a) > len(b):
        a, b = b, a
    out: Poly = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _pscale(a: Poly, c: Coeff) -> Poly:
    if not c:
        return {}
    return {m: c * v for m, v in a.items()}


def _pprod(polys: Iterable[Poly], nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: 1}
    for p in polys:
        out = _pmul(out, p)
    return out


def _peval(p: Poly, values: tuple[complex, ...]) -> complex:
    total: complex = 0
    for m, c in p.items():
        term: complex = complex(c) if isinstance(c, Fraction) else c
        for v, e in zip(values, m):
            if e:
                term *= v**e
        total += term
    return total


def _peval_exact(p: Poly, values: tuple[Fraction, ...]) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        term = Fraction(c)
        for v, e in zip(values, m):
            if e:
                term *= v**e
        total += term
    return total


def _pdivide_exact(p: Poly, f: Poly) -> Poly | None:
    """Exact quotient p / f over the Laurent ring, or None if not divisible."""
    if not f:
        raise ZeroDivisionError("division by zero polynomial")
    if not p:
        return {}
    nvars = len(next(iter(f)))
    # Shift both to ordinary polynomials (nonnegative exponents).
    shift_p = tuple(min(m[i] for m in p) for i in range(nvars))
    shift_f = tuple(min(m[i] for m in f) for i in range(nvars))
    pp = {tuple(a - b for a, b in zip(m, shift_p)): c for m, c in p.items()}
    ff = {tuple(a - b for a, b in zip(m, shift_f)): c for m, c in f.items()}
    lead_f = max(ff)
    cf = ff[lead_f]
    quot: Poly = {}
    rem = dict(pp)
    while rem:
        lead_r = max(rem)
        qm = tuple(a - b for a, b in zip(lead_r, lead_f))
        if any(e < 0 for e in qm):
            return None
        qc = Fraction(rem[lead_r]) / cf
        if qc.denominator == 1:
            qc = int(qc)
        quot[qm] = qc
        for m, c in ff.items():
            mm = tuple(a + b for a, b in zip(m, qm))
            s = rem.get(mm, 0) - qc * c
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    shift_q = tuple(a - b for a, b in zip(shift_p, shift_f))
    return {tuple(a + b for a, b in zip(m, shift_q)): c for m, c in quot.items()}


class ScalarField:
    """Field of Laurent rational functions in a fixed tuple of variables."""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        if len(self._index) != self.nvars:
            raise ValueError("duplicate variable names")
        self._zero_mono = (0,) * self.nvars
        self.zero = Scalar(self, {}, ())
        self.one = Scalar(self, {self._zero_mono: 1}, ())

    def __repr__(self):
        return f"ScalarField({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def const(self, c: Coeff) -> "Scalar":
        c = c if isinstance(c, (int, Fraction)) else Fraction(c)
        if not c:
            return self.zero
        return Scalar(self, {self._zero_mono: c}, ())

    def var(self, name: str, power: int = 1) -> "Scalar":
        mono = [0] * self.nvars
        mono[self._index[name]] = power
        return Scalar(self, {tuple(mono): 1}, ())

    def monomial(self, exponents: Mapping[str, int] | tuple[int, ...],
                 coeff: Coeff = 1) -> "Scalar":
        if isinstance(exponents, tuple):
            mono = exponents
        else:
            m = [0] * self.nvars
            for nm, e in exponents.items():
                m[self._index[nm]] = e
            mono = tuple(m)
        if not coeff:
            return self.zero
        return Scalar(self, {mono: coeff}, ())

    def from_poly(self, num: Poly, den: Iterable[Poly] = ()) -> "Scalar":
        return Scalar(self, num, tuple((_pkey(f), 1) for f in den))


class Scalar:
    """One element of a :class:`ScalarField`.  Immutable."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: ScalarField, num: Poly,
                 den: tuple[tuple[PolyKey, int], ...]):
        self.field = field
        if not num:
            self.num = {}
            self.den = ()
            return
        kept = []
        for key, mult in den:
            if mult <= 0:
                continue
            if len(key) == 1 and not any(key[0][0]):
                c = key[0][1]  # constant factor: fold into the numerator
                scale = Fraction(1, 1) / Fraction(c) ** mult
                if scale.denominator == 1:
                    scale = int(scale)
                num = _pscale(num, scale)
                continue
            kept.append((key, mult))
        self.num = num
        self.den = tuple(sorted(kept))

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self == self.field.one

    def is_monomial(self) -> bool:
        return not self.den and len(self.num) == 1

    # -- arithmetic ------------------------------------------------------

    def _den_counter(self) -> dict[PolyKey, int]:
        return {k: m for k, m in self.den}

    def _den_poly(self, skip: Mapping[PolyKey, int] | None = None) -> Poly:
        """Expanded product of denominator factors, minus ``skip``."""
        polys = []
        for key, mult in self.den:
            drop = skip.get(key, 0) if skip else 0
            for _ in range(mult - drop):
                polys.append(_punkey(key))
        return _pprod(polys, self.field.nvars)

    def __add__(self, other: "Scalar") -> "Scalar":
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return Scalar(self.field, _padd(self.num, other.num), self.den)
        da, db = self._den_counter(), other._den_counter()
        union = dict(da)
        for k, m in db.items():
            union[k] = max(union.get(k, 0), m)
        # multiply each numerator by the factors of the union it lacks
        na = self.num
        for k, m in union.items():
            for _ in range(m - da.get(k, 0)):
                na = _pmul(na, _punkey(k))
        nb = other.num
        for k, m in union.items():
            for _ in range(m - db.get(k, 0)):
                nb = _pmul(nb, _punkey(k))
        return Scalar(self.field, _padd(na, nb), tuple(sorted(union.items())))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, _pneg(self.num), self.den)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self.__add__(-self._coerce(other))

    def __rsub__(self, other):
        return (-self).__add__(self._coerce(other))

    def __mul__(self, other: "Scalar") -> "Scalar":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return self.field.zero
        den = self._den_counter()
        for k, m in other.den:
            den[k] = den.get(k, 0) + m
        return Scalar(self.field, _pmul(self.num, other.num),
                      tuple(sorted(den.items())))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if len(other.num) == 1:
            (mono, coeff), = other.num.items()
            inv_c = Fraction(1, 1) / coeff
            if inv_c.denominator == 1:
                inv_c = int(inv_c)
            num = {tuple(a - b for a, b in zip(m, mono)): c * inv_c
                   for m, c in self.num.items()}
            for k, m in other.den:  # factors below the bar come back up
                for _ in range(m):
                    num = _pmul(num, _punkey(k))
            return Scalar(self.field, num, self.den)
        return self.__mul__(other.inverse())

    def __rtruediv__(self, other):
        return self._coerce(other).__mul__(self.inverse())

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num = self._den_poly()
        if len(self.num) == 1:
            (mono, coeff), = self.num.items()
            inv_c = Fraction(1, 1) / coeff
            if inv_c.denominator == 1:
                inv_c = int(inv_c)
            neg = tuple(-e for e in mono)
            num = {tuple(a + b for a, b in zip(m, neg)): c * inv_c
                   for m, c in num.items()}
            return Scalar(self.field, num, ())
        # generic inverse: old numerator becomes a denominator factor
        lead = _pkey(self.num)
        return Scalar(self.field, num, ((lead, 1),))

    def __pow__(self, e: int) -> "Scalar":
        if e == 0:
            return self.field.one
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.const(other)
        return NotImplemented

    # -- comparison ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = self.field.const(other)
            else:
                return NotImplemented
        if self.field != other.field:
            return False
        if self.num is other.num and self.den == other.den:
            return True
        da, db = self._den_counter(), other._den_counter()
        common = {k: min(m, db.get(k, 0)) for k, m in da.items() if k in db}
        left = _pmul(self.num, other._den_poly(skip=common))
        right = _pmul(other.num, self._den_poly(skip=common))
        return left == right

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    # -- evaluation and substitution --------------------------------------

    def eval(self, assignment: Mapping[str, complex]) -> complex:
        values = tuple(complex(assignment[nm]) for nm in self.field.names)
        total = _peval(self.num, values)
        for key, mult in self.den:
            dv = _peval(_punkey(key), values)
            if dv == 0:
                raise SingularEvaluationError(
                    f"denominator factor vanished at {assignment!r}")
            total /= dv**mult
        return total

    def eval_exact(self, assignment: Mapping[str, Fraction]) -> Fraction:
        values = tuple(Fraction(assignment[nm]) for nm in self.field.names)
        total = _peval_exact(self.num, values)
        for key, mult in self.den:
            dv = _peval_exact(_punkey(key), values)
            if dv == 0:
                raise SingularEvaluationError(
                    f"denominator factor vanished at {assignment!r}")
            total /= dv**mult
        return total

    def subs(self, target: ScalarField,
             mapping: Mapping[str, "Scalar"]) -> "Scalar":
        """Substitute each variable by a Scalar of ``target``."""
        values = []
        for nm in self.field.names:
            v = mapping.get(nm)
            if v is None:
                raise KeyError(f"no substitution for variable {nm!r}")
            values.append(v)
        num = target.zero
        for mono, coeff in self.num.items():
            term = target.const(coeff)
            for v, e in zip(values, mono):
                if e:
                    term = term * v**e
            num = num + term
        out = num
        for key, mult in self.den:
            fpoly = _punkey(key)
            fsub = target.zero
            for mono, coeff in fpoly.items():
                term = target.const(coeff)
                for v, e in zip(values, mono):
                    if e:
                        term = term * v**e
                fsub = fsub + term
            for _ in range(mult):
                out = out / fsub
        return out

    def reduced(self) -> "Scalar":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.num
        den: list[tuple[PolyKey, int]] = []
        for key, mult in self.den:
            f = _punkey(key)
            left = mult
            while left:
                q = _pdivide_exact(num, f)
                if q is None:
                    break
                num = q
                left -= 1
            if left:
                den.append((key, left))
        return Scalar(self.field, num, tuple(den))

    # -- introspection ----------------------------------------------------

    def numerator_terms(self) -> Poly:
        return dict(self.num)

    def denominator_factors(self) -> list[tuple[Poly, int]]:
        return [(_punkey(k), m) for k, m in self.den]

    def as_univariate(self, name: str) -> dict[int, Coeff]:
        """Numerator as a univariate polynomial in ``name`` (den must be 1)."""
        if self.den:
            raise ValueError("not a polynomial: denominator present")
        i = self.field._index[name]
        out: dict[int, Coeff] = {}
        for mono, c in self.num.items():
            if any(e and j != i for j, e in enumerate(mono)):
                raise ValueError("other variables present")
            out[mono[i]] = out.get(mono[i], 0) + c
        return {e: c for e, c in out.items() if c}

    def __repr__(self):
        def fmt_poly(p: Poly) -> str:
            if not p:
                return "0"
            bits = []
            for mono, c in sorted(p.items()):
                factors = [f"{nm}^{e}" for nm, e in zip(self.field.names, mono) if e]
                body = "*".join(factors)
                if body:
                    bits.append(f"{c}*{body}" if c != 1 else body)
                else:
                    bits.append(str(c))
            return " + ".join(bits)

        s = fmt_poly(self.num)
        if self.den:
            dens = " * ".join(
                f"({fmt_poly(_punkey(k))})^{m}" if m > 1 else f"({fmt_poly(_punkey(k))})"
                for k, m in self.den)
            s = f"({s}) / [{dens}]"
        return s


if __name__ == "__main__":
    import doctest

    doctest.testmod()
