"""Monomial bases for graded/bigraded pieces, polynomial arithmetic, and the
differentiation (apolarity) action.

The monomial order is graded lexicographic with x1 > x2 > x3 > x4 (and
x0 > x1 > y0 > y1 in the bigraded ring), fixed once and used for every basis,
so matrices and serialized reports are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

import numpy as np


class GradingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Grading:
    """'total' in nvars variables, or 'bi' for the (1,1)+(1,1)-graded ring."""

    kind: str
    nvars: int

    def __post_init__(self):
        if self.kind not in ("total", "bi"):
            raise ValueError(f"unknown grading kind {self.kind!r}")
        if self.kind == "bi" and self.nvars != 4:
            raise ValueError("bigraded ring has exactly 4 variables")


TOTAL4 = Grading("total", 4)
TOTAL3 = Grading("total", 3)
BIGRADED = Grading("bi", 4)


def dim_total(nvars: int, t: int) -> int:
    """dim of the degree-t piece of a polynomial ring; 0 for t < 0."""
    if t < 0:
        return 0
    return comb(t + nvars - 1, nvars - 1)


def dim_bigraded(u: int, v: int) -> int:
    if u < 0 or v < 0:
        return 0
    return (u + 1) * (v + 1)


def basis_size(grading: Grading, degree) -> int:
    if grading.kind == "total":
        return dim_total(grading.nvars, degree)
    return dim_bigraded(*degree)


@lru_cache(maxsize=None)
def graded_basis(grading: Grading, degree) -> tuple:
    """Ordered tuple of exponent tuples for one graded piece."""
    if grading.kind == "total":
        t = degree
        if t < 0:
            return ()
        return tuple(_total_exponents(grading.nvars, t))
    u, v = degree
    if u < 0 or v < 0:
        return ()
    return tuple(
        (u - i, i, v - j, j) for i in range(u + 1) for j in range(v + 1)
    )


def _total_exponents(nvars: int, t: int):
    if nvars == 1:
        yield (t,)
        return
    for e in range(t, -1, -1):
        for rest in _total_exponents(nvars - 1, t - e):
            yield (e,) + rest


@lru_cache(maxsize=None)
def basis_index(grading: Grading, degree) -> dict:
    return {mono: i for i, mono in enumerate(graded_basis(grading, degree))}


@dataclass
class PolyVector:
    """A homogeneous polynomial as coefficients over the ordered basis."""

    grading: Grading
    degree: object  # int, or (u, v) for the bigraded ring
    coeffs: np.ndarray
    field: object

    def __post_init__(self):
        expected = basis_size(self.grading, self.degree)
        if len(self.coeffs) != expected:
            raise ValueError(
                f"coefficient length {len(self.coeffs)} != basis size {expected}"
            )

    def is_zero(self) -> bool:
        return not any(c != 0 for c in self.coeffs)

    def coeff_of(self, mono: tuple):
        return self.coeffs[basis_index(self.grading, self.degree)[mono]]

    def terms(self):
        basis = graded_basis(self.grading, self.degree)
        return [(basis[i], c) for i, c in enumerate(self.coeffs) if c != 0]


def zero_poly(grading: Grading, degree, field) -> PolyVector:
    return PolyVector(grading, degree, field.zeros(basis_size(grading, degree)), field)


def poly_from_terms(grading: Grading, degree, terms, field) -> PolyVector:
    p = zero_poly(grading, degree, field)
    idx = basis_index(grading, degree)
    for mono, c in terms.items() if isinstance(terms, dict) else terms:
        p.coeffs[idx[tuple(mono)]] = field.add(p.coeffs[idx[tuple(mono)]], field.normalize(c))
    return p


def linear_form(coeffs, field, grading: Grading = TOTAL4) -> PolyVector:
    if grading.kind != "total" or len(coeffs) != grading.nvars:
        raise GradingMismatchError("linear_form expects one coefficient per variable")
    vec = field.array([field.normalize(c) for c in coeffs])
    if not any(v != 0 for v in vec):
        raise ValueError("zero linear form")
    return PolyVector(grading, 1, vec, field)


def _add_degrees(grading: Grading, d1, d2):
    if grading.kind == "total":
        return d1 + d2
    return (d1[0] + d2[0], d1[1] + d2[1])


def poly_mul(f: PolyVector, g: PolyVector) -> PolyVector:
    """Product; degree adds, coefficients are the convolution."""
    if f.grading != g.grading:
        raise GradingMismatchError("poly_mul: grading mismatch")
    field = f.field
    deg = _add_degrees(f.grading, f.degree, g.degree)
    out = zero_poly(f.grading, deg, field)
    idx = basis_index(f.grading, deg)
    for mono_f, cf in f.terms():
        for mono_g, cg in g.terms():
            target = tuple(a + b for a, b in zip(mono_f, mono_g))
            j = idx[target]
            out.coeffs[j] = field.add(out.coeffs[j], field.mul(cf, cg))
    return out


def linear_power(coeffs, d: int, field, grading: Grading = TOTAL4) -> PolyVector:
    """Multinomial expansion of (sum_i coeffs_i x_i)^d."""
    if d <= 0:
        raise ValueError("linear_power needs d >= 1")
    vals = [field.normalize(c) for c in coeffs]
    if not any(v != 0 for v in vals):
        raise ValueError("zero linear form")
    n = len(vals)
    out = zero_poly(grading, d, field)
    basis = graded_basis(grading, d)
    fact = [factorial(i) for i in range(d + 1)]
    for j, mono in enumerate(basis):
        coef = fact[d]
        for e in mono:
            coef //= fact[e]
        term = field.normalize(coef)
        for i in range(n):
            e = mono[i]
            if e:
                if vals[i] == 0:
                    term = field.zero
                    break
                term = field.mul(term, _pow(field, vals[i], e))
        out.coeffs[j] = term
    return out


def _pow(field, x, e: int):
    if not field.rational:
        return pow(int(x), e, field.p)
    return x**e


def _falling(e: int, b: int) -> int:
    if b > e:
        return 0
    out = 1
    for i in range(b):
        out *= e - i
    return out


def diff_action(f: PolyVector, g: PolyVector) -> PolyVector:
    """Apply g as a constant-coefficient differential operator to f.

    Each variable of g acts as the corresponding partial derivative (true
    derivations, not contraction), so results match the classical apolarity
    pairing up to nonzero multinomial scalars, with identical kernels.
    """
    if f.grading != g.grading:
        raise GradingMismatchError("diff_action: grading mismatch")
    field = f.field
    if f.grading.kind == "total":
        deg = f.degree - g.degree
        if deg < 0:
            raise GradingMismatchError("diff_action: deg G > deg F")
    else:
        deg = (f.degree[0] - g.degree[0], f.degree[1] - g.degree[1])
        if deg[0] < 0 or deg[1] < 0:
            raise GradingMismatchError("diff_action: deg G > deg F")
    out = zero_poly(f.grading, deg, field)
    idx = basis_index(f.grading, deg)
    for mono_g, cg in g.terms():
        for mono_f, cf in f.terms():
            if all(a >= b for a, b in zip(mono_f, mono_g)):
                scal = 1
                for a, b in zip(mono_f, mono_g):
                    scal *= _falling(a, b)
                target = tuple(a - b for a, b in zip(mono_f, mono_g))
                j = idx[target]
                out.coeffs[j] = field.add(
                    out.coeffs[j], field.mul(field.mul(cf, cg), field.normalize(scal))
                )
    return out


def evaluate(f: PolyVector, point) -> object:
    field = f.field
    pt = [field.normalize(c) for c in point]
    total = field.zero
    for mono, c in f.terms():
        term = c
        for i, e in enumerate(mono):
            if e:
                if pt[i] == 0:
                    term = field.zero
                    break
                term = field.mul(term, _pow(field, pt[i], e))
        total = field.add(total, term)
    return total


def _pivot_coordinate(point) -> int:
    for i, c in enumerate(point):
        if c != 0:
            return i
    raise ValueError("zero point")


def condition_multiindices(nvars_active: int, m: int) -> tuple:
    """Multi-indices of order < m over the active (chart) coordinates,
    ordered by total order then graded lex."""
    out = []
    for order in range(m):
        out.extend(_total_exponents(nvars_active, order))
    return tuple(out)


def vanishing_rows(grading: Grading, degree, point, m: int, field) -> np.ndarray:
    """Evaluation-of-partials rows for one point: row beta applied to a
    coefficient vector gives the order-beta partial of the polynomial at the
    point, in an affine chart at the point.

    For total gradings the chart drops the first nonzero coordinate of the
    point; the bigraded chart drops one coordinate per factor.
    """
    basis = graded_basis(grading, degree)
    exps = np.array(basis, dtype=np.int64)
    n = len(basis)
    pt = [field.normalize(c) for c in point]

    if grading.kind == "total":
        nv = grading.nvars
        piv = _pivot_coordinate(pt)
        active = [i for i in range(nv) if i != piv]
        betas = condition_multiindices(nv - 1, m)
        maxdeg = degree
        tables = []
        for i in range(nv):
            bmax = 0 if i == piv else m - 1
            tab = _fall_pow_table(pt[i], maxdeg, bmax, field)
            tables.append(tab)
        rows = field.zeros((len(betas), n))
        for r, beta in enumerate(betas):
            full = [0] * nv
            for k, i in enumerate(active):
                full[i] = beta[k]
            row = None
            for i in range(nv):
                col = tables[i][exps[:, i], full[i]]
                row = col if row is None else _vec_mul(row, col, field)
            rows[r] = row
        return rows

    # bigraded: point given as a parameter pair (u, v) for ((1:u),(1:v))
    u, v = [field.normalize(c) for c in point]
    du, dv = degree
    betas = [(i, j) for s in range(m) for i in range(s + 1) for j in [s - i]]
    tab_x0 = _fall_pow_table(field.one, du, 0, field)
    tab_x1 = _fall_pow_table(u, du, m - 1, field)
    tab_y0 = _fall_pow_table(field.one, dv, 0, field)
    tab_y1 = _fall_pow_table(v, dv, m - 1, field)
    rows = field.zeros((len(betas), n))
    for r, (bi, bj) in enumerate(betas):
        row = tab_x0[exps[:, 0], 0]
        row = _vec_mul(row, tab_x1[exps[:, 1], bi], field)
        row = _vec_mul(row, tab_y0[exps[:, 2], 0], field)
        row = _vec_mul(row, tab_y1[exps[:, 3], bj], field)
        rows[r] = row
    return rows


def _vec_mul(a, b, field):
    if field.rational:
        return a * b
    return a * b % field.p


def _fall_pow_table(value, emax: int, bmax: int, field):
    """table[e, b] = falling(e, b) * value^(e-b), zero when b > e."""
    if field.rational:
        tab = field.zeros((emax + 1, bmax + 1))
        for e in range(emax + 1):
            for b in range(min(e, bmax) + 1):
                tab[e, b] = field.normalize(_falling(e, b)) * value ** (e - b)
        return tab
    p = field.p
    tab = np.zeros((emax + 1, bmax + 1), dtype=np.int64)
    powers = [1] * (emax + 1)
    for e in range(1, emax + 1):
        powers[e] = powers[e - 1] * value % p
    for e in range(emax + 1):
        for b in range(min(e, bmax) + 1):
            tab[e, b] = _falling(e, b) % p * powers[e - b] % p
    return tab


def partials_at_point(f: PolyVector, point, m: int):
    """Values at the point of all chart partials of order < m, in the fixed
    operator order."""
    if m < 1:
        raise ValueError("order m must be >= 1")
    rows = vanishing_rows(f.grading, f.degree, point, m, f.field)
    if f.field.rational:
        return [sum((rows[r, i] * f.coeffs[i] for i in range(rows.shape[1])), f.field.zero)
                for r in range(rows.shape[0])]
    # object dtype avoids int64 overflow in the dot products
    prod = rows.astype(object) @ np.asarray(f.coeffs, dtype=object)
    return [int(x) % f.field.p for x in prod]
