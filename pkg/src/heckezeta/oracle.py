"""Brute-force p-adic orbital integrals for small rank, in exact arithmetic.

The untwisted value at a torus point is the volume of the unipotent cell

    { u in U_w(Q_p) : c* w u in U(Q_p) Z(Q_p) T(Z_p) K_p },

computed by enumerating coordinate cells at a finite depth; the twisted value
additionally weights each cell by the standard character of the superdiagonal
coordinates, both of the integration variable and of the Iwasawa
decomposition of ``c* w u``, and is returned as an exact sum of roots of
unity.

Membership is decided through valuations alone: with determinant valuation
zero, the point lies in the cell above if and only if, for every ``j``, the
minimal valuation over the ``j x j`` minors of the last ``j`` rows vanishes.
Coordinate ranges follow from the minor constraints (a coordinate in the
matrix row landing at height ``h`` is bounded below by ``-k_{n-h+1}``);
enumeration runs one shell deeper and raises if anything appears on the
extra shell.  Cells of size ``p**-b`` with ``b`` at least the largest
coordinate denominator depth are exact: perturbing one coordinate inside
such a cell multiplies the group element on the right by an integral
unipotent, which changes neither membership nor the character weights.
Every value is recomputed at depth ``b+1`` and compared before being
returned.

Counting is vectorised over integer numerator grids; the integer magnitudes
stay far below 2**63 for the supported caps.
"""

from __future__ import annotations

import itertools
from cmath import exp, pi
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .characters import delta_half_on_cstar
from .weyl import Composition, compositions
from .zeta import series_coefficients

_CHUNK = 1 << 21


class DepthError(RuntimeError):
    """Enumeration depth too shallow: boundary occupied or refinement moved."""


class OracleMismatchError(AssertionError):
    """A brute-force value disagreed with a series coefficient."""


def val_p(x: Union[int, Fraction], p: int) -> int | None:
    """p-adic valuation; None stands for +infinity (x = 0)."""
    if x == 0:
        return None
    num, den = (x.numerator, x.denominator) if isinstance(x, Fraction) else (x, 1)
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _np_val(arr: np.ndarray, p: int, inf: int) -> np.ndarray:
    """Vectorised valuation of an integer array; zeros get ``inf``."""
    out = np.full(arr.shape, inf, dtype=np.int64)
    work = np.abs(arr.copy())
    mask = work != 0
    out[mask] = 0
    while True:
        div = mask & (work % p == 0)
        if not div.any():
            break
        out[div] += 1
        work[div] //= p
        mask = div
    return out


def frac_part(q: Fraction, p: int) -> Fraction:
    """p-adic fractional part: the unique a / p**e in [0,1) with
    q - a/p**e integral at p."""
    den = q.denominator
    e = 0
    while den % p == 0:
        den //= p
        e += 1
    if e == 0:
        return Fraction(0)
    pe = p**e
    inv = pow(den, -1, pe)
    return Fraction((q.numerator * inv) % pe, pe)


@dataclass
class CyclotomicSum:
    """Exact value ``scale * sum_r counts[r] e(r / modulus)``."""

    modulus: int                # a prime power
    counts: dict[int, int]
    scale: Fraction

    def normalized(self) -> "CyclotomicSum":
        out: dict[int, int] = {}
        for r, c in self.counts.items():
            if c:
                out[r % self.modulus] = out.get(r % self.modulus, 0) + c
        return CyclotomicSum(self.modulus, {r: c for r, c in out.items() if c},
                             self.scale)

    def rebased(self, modulus: int) -> "CyclotomicSum":
        if modulus % self.modulus:
            raise ValueError("modulus must be a multiple")
        f = modulus // self.modulus
        return CyclotomicSum(modulus,
                             {r * f: c for r, c in self.counts.items()},
                             self.scale).normalized()

    def same_value(self, other: "CyclotomicSum") -> bool:
        m = max(self.modulus, other.modulus)
        a, b = self.rebased(m), other.rebased(m)
        ca = {r: a.scale * c for r, c in a.counts.items()}
        for r, c in b.counts.items():
            ca[r] = ca.get(r, Fraction(0)) - b.scale * c
        if not any(ca.values()):
            return True
        # p-power roots of unity satisfy rational relations; fall back to a
        # numeric comparison when the formal difference is nonzero
        return abs(a.to_complex() - b.to_complex()) < 1e-12

    def to_complex(self) -> complex:
        tau = 2j * pi
        total = sum(c * exp(tau * r / self.modulus)
                    for r, c in self.counts.items())
        return complex(self.scale) * total


OrbitalValue = Union[Fraction, CyclotomicSum]


@dataclass
class PadicSample:
    """One member cell: the unipotent representative and its measure."""

    coordinates: dict[tuple[int, int], Fraction]
    weight: Fraction


def _det(rows, cols: Sequence[int]):
    j = len(rows)
    if j == 1:
        return rows[0][cols[0]]
    if j == 2:
        return (rows[0][cols[0]] * rows[1][cols[1]]
                - rows[0][cols[1]] * rows[1][cols[0]])
    total = 0
    sign = 1
    for i in range(j):
        minor = _det(rows[1:], cols[:i] + cols[i + 1:])
        total += sign * rows[0][cols[i]] * minor
        sign = -sign
    return total


def iwasawa_data(g: Sequence[Sequence[Union[int, Fraction]]], p: int):
    """Torus valuations and superdiagonal unipotent coordinates of ``g``.

    Returns ``(torus_valuations, u_superdiagonal)``: the j-th valuation is
    the minimal valuation over the j x j minors of the last j rows (the
    valuation of the product of the last j Iwasawa torus entries), and the
    superdiagonal entries of the unipotent part are returned as p-adic
    fractional parts.  The two routes (minors vs exact column reduction) are
    computed independently and cross-checked.
    """
    n = len(g)
    G = [[Fraction(x) for x in row] for row in g]
    vals = []
    for j in range(1, n + 1):
        best = None
        rows = G[n - j:]
        for cols in itertools.combinations(range(n), j):
            v = val_p(_det(rows, cols), p)
            if v is not None and (best is None or v < best):
                best = v
        if best is None:
            raise ValueError("matrix is singular")
        vals.append(best)
    B = _column_reduce(G, p)
    diag_vals = [val_p(B[i][i], p) for i in range(n)]
    for j in range(1, n + 1):
        if sum(diag_vals[n - j:]) != vals[j - 1]:
            raise AssertionError("minor and reduction valuations disagree")
    superdiag = tuple(frac_part(B[i][i + 1] / B[i + 1][i + 1], p)
                      for i in range(n - 1))
    return tuple(vals), superdiag


def _column_reduce(g: list[list[Fraction]], p: int) -> list[list[Fraction]]:
    """Right-reduce to upper triangular form by integral column operations
    (swaps and transvections with p-integral coefficients)."""
    n = len(g)
    B = [list(row) for row in g]
    for r in range(n - 1, -1, -1):
        pivot, pivot_val = None, None
        for c in range(r + 1):
            v = val_p(B[r][c], p)
            if v is not None and (pivot_val is None or v < pivot_val):
                pivot, pivot_val = c, v
        if pivot is None:
            raise ValueError("matrix is singular")
        if pivot != r:
            for row in B:
                row[pivot], row[r] = row[r], row[pivot]
        for c in range(r):
            if B[r][c] == 0:
                continue
            f = B[r][c] / B[r][r]  # p-integral by pivot minimality
            for row in B:
                row[c] -= f * row[r]
    return B


def _coordinate_layout(d: Composition, k: Sequence[int]):
    """Free coordinates of the unipotent factor with their range exponents."""
    n = d.n
    w = d.weyl_element()
    sigma = w.perm  # 0-indexed images
    coords = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
              if sigma[i - 1] > sigma[j - 1]]
    ranges = {}
    for (i, j) in coords:
        h = sigma[i - 1] + 1        # row of the product this coordinate scales
        idx = n - h + 1             # modulus index bounding the row
        if not 1 <= idx <= n - 1:
            raise ValueError("coordinate row lands on the top torus row")
        ranges[(i, j)] = max(k[idx - 1], 0)
    return w, coords, ranges


def _cstar_exponents(n: int, k: Sequence[int]) -> list[int]:
    """Valuations of the anti-diagonal torus entries, top-left to bottom."""
    kk = [0] + list(k) + [0]
    return [kk[n - m + 1] - kk[n - m] for m in range(1, n + 1)]


class _RowGrid:
    """All coordinate assignments of one row of the unipotent factor.

    Entries are integers after scaling the row by ``p**(depth - e)`` where
    ``e`` is the torus valuation multiplying the row: the unit diagonal entry
    becomes ``p**depth`` and each coordinate contributes its numerator.
    """

    def __init__(self, n: int, i: int, coords: list[tuple[int, int]],
                 depth: int, e: int, p: int, b: int):
        self.i = i
        self.coords = coords
        self.depth = depth
        self.scale = depth - e
        count = p**(depth + b) if coords else 1
        self.numerators = [np.arange(count, dtype=np.int64) for _ in coords]
        if coords:
            grids = np.meshgrid(*self.numerators, indexing="ij")
            self.cols = {ij: g.ravel() for ij, g in zip(coords, grids)}
            self.size = grids[0].size
        else:
            self.cols = {}
            self.size = 1
        # integer row entries per column of the matrix
        self.entries = []
        for col in range(1, n + 1):
            if col == i:
                self.entries.append(np.full(self.size, p**depth, dtype=np.int64))
            elif (i, col) in self.cols:
                self.entries.append(self.cols[(i, col)])
            else:
                self.entries.append(np.zeros(self.size, dtype=np.int64))

    def coordinate_value(self, ij: tuple[int, int], idx: int, p: int) -> Fraction:
        return Fraction(int(self.cols[ij][idx]), p**self.depth)


def _row_depths(d: Composition, ranges: dict) -> tuple[dict, dict]:
    """Denominator depth and cell depth per unipotent row.

    The cell depth of a row must dominate the denominator depths of the
    coordinates sitting above it in its own column: perturbing an entry by
    ``p**b Z_p`` then multiplies on the right by an integral unipotent, so
    the integrand is constant on the cells.
    """
    rows = sorted({ij[0] for ij in ranges})
    depth = {i: max(ranges[ij] for ij in ranges if ij[0] == i) + 1
             for i in rows}
    cell = {}
    for i in rows:
        feeders = [depth[kk] for (kk, col) in ranges if col == i and kk in depth]
        cell[i] = max([1] + feeders)
    return depth, cell


def _enumerate(d: Composition, k: Sequence[int], p: int, twisted: bool,
               ranges: dict, extra: int):
    """Exact cell sum; ``extra`` refines every cell depth (for the stability
    pass).  Returns (untwisted value, phase counter, cell weight)."""
    n = d.n
    if n > 3:
        raise ValueError("the enumeration engine supports rank <= 3")
    w = d.weyl_element()
    sigma = w.perm
    e_row = _cstar_exponents(n, k)
    depth, cell = _row_depths(d, ranges)
    cell_weight = Fraction(1)
    for i, bi in cell.items():
        ncoords_row = sum(1 for ij in ranges if ij[0] == i)
        cell_weight /= Fraction(p) ** ((bi + extra) * ncoords_row)
    inf = 1 << 30

    row_order = sorted(range(1, n + 1), key=lambda i: -sigma[i - 1])
    grids = []
    for i in row_order:
        row_coords = sorted(ij for ij in ranges if ij[0] == i)
        grids.append(_RowGrid(n, i, row_coords, depth.get(i, 0),
                              e_row[sigma[i - 1]], p,
                              cell.get(i, 1) + extra))

    # level 0: minimal valuation over the bottom row's entries must vanish
    g0 = grids[0]
    vals = np.full(g0.size, g0.depth - g0.scale, dtype=np.int64)  # diagonal
    for ij in g0.coords:
        vals = np.minimum(vals, _np_val(g0.cols[ij], p, inf) - g0.scale)
    survivors = [np.nonzero(vals == 0)[0]]

    # later levels: cross-row minors, chunked to bound memory
    for level in range(1, n):
        gl = grids[level]
        prev_idx = survivors  # list of index arrays per earlier grid
        base = prev_idx[0].size
        total = base * gl.size
        keep_parts = []
        j0 = level + 1
        for start in range(0, total, _CHUNK):
            stop = min(start + _CHUNK, total)
            flat = np.arange(start, stop, dtype=np.int64)
            sel_prev = flat // gl.size
            sel_new = flat % gl.size
            if j0 <= n - 1:
                rows = []
                shift = gl.scale
                for lv in range(level):
                    g_prev = grids[lv]
                    idx = prev_idx[lv][sel_prev]
                    rows.append([g_prev.entries[c][idx] for c in range(n)])
                    shift += g_prev.scale
                rows.append([gl.entries[c][sel_new] for c in range(n)])
                best = np.full(flat.size, inf, dtype=np.int64)
                for colset in itertools.combinations(range(n), j0):
                    dets = _det(rows, colset)
                    best = np.minimum(best, _np_val(dets, p, inf))
                mask = best == shift
            else:
                mask = np.ones(flat.size, dtype=bool)
            keep_parts.append(flat[mask])
        kept = np.concatenate(keep_parts) if keep_parts else \
            np.zeros(0, dtype=np.int64)
        survivors = [prev_idx[lv][kept // gl.size] for lv in range(level)]
        survivors.append(kept % gl.size)

    nmembers = survivors[0].size
    # boundary tripwire: no member may touch the extra shell of any coordinate
    for lv, grid in enumerate(grids):
        idx = survivors[lv]
        for ij in grid.coords:
            v = _np_val(grid.cols[ij][idx], p, inf) - grid.depth
            if (v < -ranges[ij]).any():
                raise DepthError("support reached the safety shell; range "
                                 "analysis violated")
    untwisted = nmembers * cell_weight
    phases: dict[Fraction, int] = {}
    if twisted:
        for m in range(nmembers):
            values = {}
            for lv, grid in enumerate(grids):
                idx = int(survivors[lv][m])
                for ij in grid.coords:
                    values[ij] = grid.coordinate_value(ij, idx, p)
            full = [[Fraction(0)] * n for _ in range(n)]
            for i in range(1, n + 1):
                e = e_row[sigma[i - 1]]
                scale = Fraction(p**e) if e >= 0 else Fraction(1, p**(-e))
                row = [Fraction(0)] * n
                row[i - 1] = scale
                for (a_, j) in values:
                    if a_ == i:
                        row[j - 1] = scale * values[(a_, j)]
                full[sigma[i - 1]] = row
            _, superdiag = iwasawa_data(full, p)
            theta = sum(superdiag, Fraction(0))
            for (i, j), q in values.items():
                if j == i + 1:
                    theta -= frac_part(q, p)
            theta = frac_part(theta, p)
            phases[theta] = phases.get(theta, 0) + 1
    return untwisted, phases, cell_weight


def brute_orbital(k: Sequence[int], d: Composition, p: int,
                  twisted: bool = False, *, max_rank: int = 3,
                  max_total_valuation: int = 3,
                  cell_depth: int | None = None,
                  check_stability: bool = True) -> OrbitalValue:
    """Exact orbital value at modulus valuations ``k`` for the block element
    of ``d``: a rational volume (untwisted) or a cyclotomic sum (twisted).

    The caps guard combinatorial blow-up and can be raised explicitly.
    ``cell_depth`` refines every derived cell depth by that many extra
    levels (the stability pass always refines by one more and compares).
    """
    n = d.n
    if n > max_rank:
        raise ValueError(f"rank {n} exceeds cap {max_rank}")
    if sum(abs(x) for x in k) > max_total_valuation:
        raise ValueError("total modulus valuation exceeds cap")
    if len(k) != n - 1:
        raise ValueError(f"expected {n - 1} valuations")
    if any(x < 0 for x in k):
        # non-integral modulus: vanishing (enumeration over the integral
        # superset confirms this support statement in the tests)
        return _zero_value(twisted, p)
    _, coords, ranges = _coordinate_layout(d, k)
    m = len(coords)
    if m == 0:
        hit = all(x == 0 for x in k)
        if not twisted:
            return Fraction(1 if hit else 0)
        return CyclotomicSum(p, {0: 1} if hit else {}, Fraction(1))
    extra = 0 if cell_depth is None else cell_depth
    result = _assemble(d, k, p, twisted, ranges, extra)
    if check_stability:
        refined = _assemble(d, k, p, twisted, ranges, extra + 1)
        if not _values_equal(result, refined):
            raise DepthError("cell refinement changed the value")
    return result


def _zero_value(twisted: bool, p: int) -> OrbitalValue:
    return CyclotomicSum(p, {}, Fraction(1)) if twisted else Fraction(0)


def _assemble(d, k, p, twisted, ranges, extra) -> OrbitalValue:
    untwisted, phases, cell_weight = _enumerate(d, k, p, twisted, ranges, extra)
    if not twisted:
        return untwisted
    max_e = 1
    for theta in phases:
        den = theta.denominator
        e = 0
        while den % p == 0:
            den //= p
            e += 1
        max_e = max(max_e, e)
    modulus = p**max_e
    counts: dict[int, int] = {}
    for theta, c in phases.items():
        r = int(theta * modulus)
        counts[r] = counts.get(r, 0) + c
    return CyclotomicSum(modulus, counts, cell_weight).normalized()


def _values_equal(a: OrbitalValue, b: OrbitalValue) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    if isinstance(a, CyclotomicSum) and isinstance(b, CyclotomicSum):
        return a.same_value(b)
    return False


@dataclass
class OracleReport:
    n: int
    p: int
    kmax: int
    checked: int
    mismatches: list

    def ok(self) -> bool:
        return not self.mismatches


def oracle_vs_zeta(n: int, p: int, kmax: int, *,
                   max_total_valuation: int | None = None,
                   strict: bool = True) -> OracleReport:
    """Compare normalised brute-force volumes against series coefficients.

    For every composition of ``n`` and every valuation vector up to ``kmax``
    per coordinate, the untwisted value times ``p**(-sum k)`` must equal the
    coefficient of the spherical zeta function, exactly.
    """
    cap = max_total_valuation if max_total_valuation is not None \
        else kmax * (n - 1)
    checked = 0
    mismatches = []
    for d in compositions(n):
        table = series_coefficients(d, kmax)
        for k in itertools.product(range(kmax + 1), repeat=n - 1):
            brute = brute_orbital(k, d, p, twisted=False,
                                  max_total_valuation=cap)
            lhs = brute * delta_half_on_cstar(k, p)
            rhs = table.value_at(k, p)
            checked += 1
            if lhs != rhs:
                mismatches.append({"composition": list(d.parts),
                                   "k": list(k), "brute_normalised": str(lhs),
                                   "series": str(rhs)})
                if strict:
                    raise OracleMismatchError(
                        f"mismatch at w={d.parts}, k={k}: {lhs} != {rhs}")
    return OracleReport(n=n, p=p, kmax=kmax, checked=checked,
                        mismatches=mismatches)


def orbital_json(n: int, p: int, kmax: int, twisted: bool,
                 max_total_valuation: int) -> str:
    """Export brute-force values in the coefficient-table JSON shape."""
    import json

    blocks = []
    for d in compositions(n):
        coeffs = []
        for k in itertools.product(range(kmax + 1), repeat=n - 1):
            value = brute_orbital(k, d, p, twisted=twisted,
                                  max_total_valuation=max_total_valuation)
            if twisted:
                assert isinstance(value, CyclotomicSum)
                coeffs.append({
                    "k": list(k),
                    "twisted": {
                        "modulus": value.modulus,
                        "counts": {str(r): c
                                   for r, c in sorted(value.counts.items())},
                        "scale": f"{value.scale.numerator}/{value.scale.denominator}",
                    },
                    "abs": abs(value.to_complex()),
                })
            else:
                norm = value * delta_half_on_cstar(k, p)
                coeffs.append({"k": list(k),
                               "value_at_p": f"{norm.numerator}/{norm.denominator}"})
        blocks.append({"w": list(d.parts), "coeffs": coeffs})
    return json.dumps({"n": n, "p": p, "kmax": kmax, "twisted": twisted,
                       "tables": blocks}, indent=2)
