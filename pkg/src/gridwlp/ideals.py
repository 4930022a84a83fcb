"""Graded pieces of the ideals under study: spans of shifted powers of linear
forms, fat-point vanishing conditions (P^3 and bigraded), powers of a plane
complete intersection, perp ideals of a form, Hilbert tables, socle dimensions.

Symbolic powers are always computed via vanishing conditions (kernel of an
evaluation-of-partials matrix), never via ideal powers plus saturation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from .geometry import GridConfig
from .linalg import (
    SubspaceBasis,
    _matmul_modp,
    kernel_basis,
    rank,
    rref,
    subspace_from_rows,
)
from .polyspace import (
    BIGRADED,
    TOTAL3,
    TOTAL4,
    PolyVector,
    basis_index,
    basis_size,
    dim_total,
    graded_basis,
    linear_power,
    poly_mul,
    vanishing_rows,
    _falling,
)


class DegenerateSequenceError(ValueError):
    pass


@dataclass(frozen=True)
class PowersIdealSpec:
    """The ideal generated by the d-th powers of the grid's dual forms."""

    grid: GridConfig
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("power d must be >= 1")


@dataclass(frozen=True)
class FatPointsSpec:
    """Points with a uniform multiplicity; bigraded=True means the points are
    (u, v) parameter pairs on P^1 x P^1."""

    points: tuple
    multiplicity: int
    bigraded: bool = False

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be distinct")


@dataclass(frozen=True)
class PerpSpec:
    """The ideal of operators annihilating a fixed form F."""

    form: PolyVector


def grid_fat_spec(grid: GridConfig, m: int) -> FatPointsSpec:
    return FatPointsSpec(points=tuple(grid.points()), multiplicity=m)


def grid_bigraded_spec(grid: GridConfig, m: int) -> FatPointsSpec:
    return FatPointsSpec(points=tuple(grid.param_pairs()), multiplicity=m, bigraded=True)


# ---------------------------------------------------------------------------
# spans of shifted products


@lru_cache(maxsize=256)
def _shift_column_map(grading, src_deg, t) -> np.ndarray:
    """Column indices of monomial * basis(src_deg) inside basis(t), one row
    per shift monomial of degree t - src_deg."""
    if grading.kind == "total":
        shift_deg = t - src_deg
    else:
        shift_deg = (t[0] - src_deg[0], t[1] - src_deg[1])
    shifts = graded_basis(grading, shift_deg)
    src_basis = graded_basis(grading, src_deg)
    idx_t = basis_index(grading, t)
    out = np.empty((len(shifts), len(src_basis)), dtype=np.int64)
    for s_i, gamma in enumerate(shifts):
        out[s_i] = [idx_t[tuple(a + g for a, g in zip(alpha, gamma))] for alpha in src_basis]
    return out


def shifted_products_matrix(polys, t, field) -> np.ndarray:
    """Rows spanning { m * f : f in polys, m a monomial of degree t - deg f }
    inside the degree-t piece. Row order: poly-major, then shift monomial."""
    if not polys:
        raise ValueError("no polynomials given")
    grading = polys[0].grading
    n_t = basis_size(grading, t)
    blocks = []
    for f in polys:
        if f.grading != grading:
            raise ValueError("mixed gradings")
        if grading.kind == "total":
            negative = t - f.degree < 0
        else:
            negative = t[0] < f.degree[0] or t[1] < f.degree[1]
        if negative:
            continue
        colmap = _shift_column_map(grading, f.degree, t)
        block = field.zeros((colmap.shape[0], n_t))
        rows = np.arange(colmap.shape[0])[:, None]
        block[rows, colmap] = np.asarray(f.coeffs)[None, :]
        blocks.append(block)
    if not blocks:
        return field.zeros((0, n_t))
    return np.vstack(blocks)


def power_generators(grid: GridConfig, d: int) -> list:
    """The ab generators: d-th powers of the dual forms, point-major order."""
    f = grid.field
    return [
        linear_power(grid.dual_form_coeffs(i, j), d, f)
        for i in range(grid.a)
        for j in range(grid.b)
    ]


@lru_cache(maxsize=None)
def _powers_dim_cached(grid_key, d: int, t: int) -> int:
    grid = _GRIDS[grid_key]
    if t < d:
        return 0
    mat = shifted_products_matrix(power_generators(grid, d), t, grid.field)
    return rank(mat, grid.field)


# frozen GridConfig instances are registered here so the dim cache can key on
# the cheap tuple key instead of the object
_GRIDS: dict = {}


def powers_ideal_dim(grid: GridConfig, d: int, t: int) -> int:
    """dim of the degree-t piece of the powers ideal (fast, cached)."""
    key = grid.key()
    _GRIDS.setdefault(key, grid)
    return _powers_dim_cached(key, d, t)


def powers_ideal_piece(spec: PowersIdealSpec, t: int) -> SubspaceBasis:
    grid, d = spec.grid, spec.d
    ambient = (TOTAL4, t)
    if t < d:
        return SubspaceBasis(ambient, grid.field.zeros((0, basis_size(TOTAL4, t))), 0)
    mat = shifted_products_matrix(power_generators(grid, d), t, grid.field)
    return subspace_from_rows(mat, ambient, grid.field)


# ---------------------------------------------------------------------------
# fat points


def fat_points_matrix(spec: FatPointsSpec, degree, field) -> np.ndarray:
    grading = BIGRADED if spec.bigraded else (
        TOTAL4 if len(spec.points[0]) == 4 else TOTAL3
    )
    return np.vstack(
        [vanishing_rows(grading, degree, pt, spec.multiplicity, field) for pt in spec.points]
    )


def fat_points_piece(spec: FatPointsSpec, degree, field) -> SubspaceBasis:
    """Kernel of the evaluation-of-partials matrix on the graded piece."""
    grading = BIGRADED if spec.bigraded else (
        TOTAL4 if len(spec.points[0]) == 4 else TOTAL3
    )
    mat = fat_points_matrix(spec, degree, field)
    ker = kernel_basis(mat, field)
    return SubspaceBasis((grading, degree), ker, ker.shape[0])


def fat_points_dim(spec: FatPointsSpec, degree, field) -> int:
    mat = fat_points_matrix(spec, degree, field)
    return mat.shape[1] - rank(mat, field)


def fat_points_hf(spec: FatPointsSpec, degree, field) -> int:
    """Hilbert function of the fat-point scheme: conditions actually imposed."""
    return rank(fat_points_matrix(spec, degree, field), field)


def bigraded_fat_points_piece(spec: FatPointsSpec, bidegree, field) -> SubspaceBasis:
    if not spec.bigraded:
        raise ValueError("spec is not bigraded")
    return fat_points_piece(spec, bidegree, field)


# ---------------------------------------------------------------------------
# powers of a plane complete intersection


def _dim_s(e: int) -> int:
    return dim_total(3, e) if e >= 0 else 0


def ci_power_dim_formula(a: int, b: int, m: int, t: int) -> int:
    """Dimension of [(f,g)^m]_t for a regular sequence of degrees (a, b),
    from the resolution of the m-th power; negative dimensions clamp to 0."""
    if a < 1 or b < 1 or m < 1:
        raise ValueError("a, b, m must be >= 1")
    gens = sum(_dim_s(t - a * (m - i) - b * i) for i in range(m + 1))
    syz = sum(
        _dim_s(t - (a + b) - a * (m - 1 - i) - b * i) for i in range(m)
    )
    return gens - syz


def check_regular_sequence(f: PolyVector, g: PolyVector, field):
    """Koszul dimension check in degrees <= a+b; cheap and sufficient here."""
    a, b = f.degree, g.degree
    for t in range(min(a, b), a + b + 1):
        mat = shifted_products_matrix([f, g], t, field)
        expected = _dim_s(t - a) + _dim_s(t - b) - _dim_s(t - a - b)
        if rank(mat, field) != expected:
            raise DegenerateSequenceError(
                f"(f,g) is not a regular sequence: degree {t} dimension mismatch"
            )


def ci_power_piece(f: PolyVector, g: PolyVector, m: int, t: int, check=True) -> SubspaceBasis:
    """Span of { f^(m-i) g^i * monomials } in degree t, for plane forms f, g."""
    field = f.field
    if f.grading != TOTAL3 or g.grading != TOTAL3:
        raise ValueError("ci_power_piece expects 3-variable forms")
    if m < 1:
        raise ValueError("m must be >= 1")
    if check:
        check_regular_sequence(f, g, field)
    powers_f = _power_chain(f, m)
    powers_g = _power_chain(g, m)
    prods = []
    for i in range(m + 1):
        if i == 0:
            prods.append(powers_f[m])
        elif i == m:
            prods.append(powers_g[m])
        else:
            prods.append(poly_mul(powers_f[m - i], powers_g[i]))
    mat = shifted_products_matrix(prods, t, field)
    return subspace_from_rows(mat, (TOTAL3, t), field)


def _power_chain(f: PolyVector, m: int) -> dict:
    out = {1: f}
    for i in range(2, m + 1):
        out[i] = poly_mul(out[i - 1], f)
    return out


# ---------------------------------------------------------------------------
# perp ideals


def contraction_matrix(f: PolyVector, s: int) -> np.ndarray:
    """Matrix of G |-> dF/dG from degree s to degree deg F - s."""
    field = f.field
    degf = f.degree
    if f.grading.kind != "total":
        raise ValueError("contraction_matrix expects a total grading")
    src = graded_basis(f.grading, s)
    dst = graded_basis(f.grading, degf - s)
    dst_idx = basis_index(f.grading, degf - s)
    coeffs = np.asarray(f.coeffs)
    f_idx = basis_index(f.grading, degf)
    mat = field.zeros((len(dst), len(src)))
    for c, beta in enumerate(src):
        for alpha_p in dst:
            alpha = tuple(x + y for x, y in zip(alpha_p, beta))
            fa = coeffs[f_idx[alpha]]
            if fa != 0:
                scal = 1
                for x, y in zip(alpha, beta):
                    scal *= _falling(x, y)
                mat[dst_idx[alpha_p], c] = field.mul(fa, field.normalize(scal))
    return mat


def perp_piece(f: PolyVector, s: int) -> SubspaceBasis:
    """Degree-s piece of F-perp: kernel of the contraction map R_s -> R_(degF-s);
    the full space once s exceeds deg F."""
    field = f.field
    if s < 0:
        raise ValueError("degree must be >= 0")
    n_s = basis_size(f.grading, s)
    if s > f.degree:
        from .linalg import _identity

        return SubspaceBasis((f.grading, s), _identity(n_s, field), n_s)
    ker = kernel_basis(contraction_matrix(f, s), field)
    return SubspaceBasis((f.grading, s), ker, ker.shape[0])


def perp_quotient_hf(f: PolyVector, s: int) -> int:
    """h of R/F-perp in degree s = rank of the contraction map."""
    if s < 0:
        return 0
    if s > f.degree:
        return 0
    return rank(contraction_matrix(f, s), f.field)


# ---------------------------------------------------------------------------
# Hilbert tables, socle, duality


@dataclass
class HilbertTable:
    """Map degree -> dimension, tagged with what is stored (quotient or ideal)."""

    kind: str  # "quotient" or "ideal"
    dims: dict = dc_field(default_factory=dict)

    def delta(self) -> dict:
        if not all(isinstance(t, int) for t in self.dims):
            return {}  # first differences only make sense for a single grading
        out = {}
        for t in sorted(self.dims):
            prev = self.dims.get(t - 1, 0)
            out[t] = self.dims[t] - prev
        return out

    def as_list(self) -> list:
        if not self.dims:
            return []
        return [self.dims.get(t, 0) for t in range(0, max(self.dims) + 1)]

    def to_csv(self) -> str:
        delta = self.delta()
        lines = ["t,dim,delta"]
        for t in sorted(self.dims):
            lines.append(f"{t},{self.dims[t]},{delta[t]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        delta = self.delta()
        return json.dumps(
            {
                "kind": self.kind,
                "rows": [
                    {"t": t, "dim": self.dims[t], "delta": delta[t]}
                    for t in sorted(self.dims)
                ],
            }
        )


def quotient_socle_cap(d: int) -> int:
    # the ideal contains d-th powers of 4 independent linear forms, so the
    # socle degree is at most that of the monomial complete intersection
    return 4 * (d - 1)


def hilbert_table(spec, t_range=None, field=None) -> HilbertTable:
    """Hilbert table for a quotient by a powers ideal, a fat-points ideal, or
    a quotient by a perp ideal."""
    if isinstance(spec, PowersIdealSpec):
        grid, d = spec.grid, spec.d
        if t_range is None:
            t_range = range(0, quotient_socle_cap(d) + 1)
        table = HilbertTable(kind="quotient")
        for t in t_range:
            n_t = dim_total(4, t)
            table.dims[t] = n_t - powers_ideal_dim(grid, d, t)
            if table.dims[t] == 0 and t > d:
                break
        return table
    if isinstance(spec, FatPointsSpec):
        if t_range is None:
            raise ValueError("fat-points table needs an explicit degree range")
        table = HilbertTable(kind="ideal")
        for t in t_range:
            table.dims[t] = fat_points_dim(spec, t, field)
        return table
    if isinstance(spec, PerpSpec):
        f = spec.form
        if t_range is None:
            t_range = range(0, f.degree + 2)
        table = HilbertTable(kind="quotient")
        for t in t_range:
            table.dims[t] = perp_quotient_hf(f, t)
        return table
    raise TypeError(f"unsupported spec {type(spec).__name__}")


def _shift_matrix(grading, t: int, var: int, field) -> np.ndarray:
    """Multiplication by x_var from degree t to t+1 on monomial bases."""
    src = graded_basis(grading, t)
    idx = basis_index(grading, t + 1)
    mat = field.zeros((basis_size(grading, t + 1), len(src)))
    for c, mono in enumerate(src):
        target = list(mono)
        target[var] += 1
        mat[idx[tuple(target)], c] = field.one
    return mat


def socle_dims(spec: PowersIdealSpec, t_range) -> dict:
    """Dimension of ker(A_t -> A_{t+1}^4) under multiplication by each
    variable, for A the quotient by the powers ideal."""
    grid, d = spec.grid, spec.d
    field = grid.field
    out = {}
    for t in t_range:
        basis_t1 = powers_ideal_piece(spec, t + 1)
        lam_t = powers_ideal_dim(grid, d, t)
        n_t1 = basis_size(TOTAL4, t + 1)
        if basis_t1.dim == n_t1:
            # everything multiplies into the ideal
            out[t] = dim_total(4, t) - lam_t
            continue
        stacked = []
        red, piv = basis_t1.rref, _pivots_of_rref(basis_t1.rref, field)
        for var in range(4):
            shift = _shift_matrix(TOTAL4, t, var, field)
            stacked.append(_reduce_columns_against(shift, red, piv, field))
        big = np.vstack(stacked)
        w = big.shape[1] - rank(big, field)
        out[t] = w - lam_t
    return out


def _pivots_of_rref(r: np.ndarray, field) -> list:
    piv = []
    for i in range(r.shape[0]):
        nz = [j for j in range(r.shape[1]) if r[i, j] != 0]
        piv.append(nz[0])
    return piv


def _reduce_columns_against(mat: np.ndarray, rref_rows: np.ndarray, piv: list, field) -> np.ndarray:
    """Reduce every column of mat modulo the row space of rref_rows."""
    if rref_rows.shape[0] == 0:
        return mat
    sel = mat[piv, :] if not field.rational else mat[piv, :]
    if field.rational:
        return mat - rref_rows.T @ sel
    corr = _matmul_modp(rref_rows.T % field.p, sel % field.p, field.p)
    return (mat - corr) % field.p


def macaulay_dual_check(grid: GridConfig, d: int, t: int):
    """Both sides of the duality dim[R/powers]_t = dim[fat points]_t, computed
    by independent routes (product span rank vs vanishing-condition kernel)."""
    if t < d:
        raise ValueError("duality check needs t >= d")
    field = grid.field
    lhs = dim_total(4, t) - powers_ideal_dim(grid, d, t)
    m = t - d + 1
    rhs = fat_points_dim(grid_fat_spec(grid, m), t, field)
    return lhs, rhs, lhs == rhs
