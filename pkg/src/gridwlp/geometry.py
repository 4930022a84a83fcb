"""Grids on the Segre quadric x1*x4 - x2*x3: points, dual forms, ruling lines,
tangent planes, projections to a plane, and sampling of special linear forms.

Coordinates are normalized so the grid point with parameters (u_i, v_j) is
(1, v_j, u_i, u_i*v_j); every smooth quadric with an a x b grid is projectively
equivalent to this, and it makes ruling lines and tangent planes closed-form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import PrimeTooSmallError, SeedStream
from .linalg import rank
from .polyspace import (
    TOTAL3,
    TOTAL4,
    PolyVector,
    dim_total,
    poly_from_terms,
    vanishing_rows,
)


class GridError(ValueError):
    pass


class InvalidLocusError(ValueError):
    pass


@dataclass(frozen=True)
class GridConfig:
    """An a x b grid on the quadric, a <= b, with distinct P^1 parameters."""

    a: int
    b: int
    u: tuple
    v: tuple
    field: object

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise GridError("grid needs a, b >= 2")
        if self.a > self.b:
            raise GridError("grid stores a <= b; use make_grid to normalize")
        if len(set(self.u)) != self.a or len(set(self.v)) != self.b:
            raise GridError("grid parameters must be distinct")

    def key(self):
        return (self.a, self.b, self.u, self.v, getattr(self.field, "p", "QQ"))

    def point(self, i: int, j: int) -> tuple:
        f = self.field
        return (f.one, self.v[j], self.u[i], f.mul(self.u[i], self.v[j]))

    def points(self) -> list:
        return [self.point(i, j) for i in range(self.a) for j in range(self.b)]

    def dual_form_coeffs(self, i: int, j: int) -> tuple:
        # the linear form dual to a point has the same coordinate 4-tuple
        return self.point(i, j)

    def tangent_plane_coeffs(self, i: int, j: int) -> tuple:
        f = self.field
        return (
            f.mul(self.u[i], self.v[j]),
            f.neg(self.u[i]),
            f.neg(self.v[j]),
            f.one,
        )

    def quadric(self) -> PolyVector:
        f = self.field
        return poly_from_terms(
            TOTAL4, 2, {(1, 0, 0, 1): f.one, (0, 1, 1, 0): f.neg(f.one)}, f
        )

    def on_lambda(self, i: int, point) -> bool:
        """The ruling line with u fixed at u_i: x3 = u_i x1 and x4 = u_i x2."""
        f = self.field
        x1, x2, x3, x4 = [f.normalize(c) for c in point]
        return x3 == f.mul(self.u[i], x1) and x4 == f.mul(self.u[i], x2)

    def on_mu(self, j: int, point) -> bool:
        """The ruling line with v fixed at v_j: x2 = v_j x1 and x4 = v_j x3."""
        f = self.field
        x1, x2, x3, x4 = [f.normalize(c) for c in point]
        return x2 == f.mul(self.v[j], x1) and x4 == f.mul(self.v[j], x3)

    def on_tangent_plane(self, i: int, j: int, point) -> bool:
        f = self.field
        coeffs = self.tangent_plane_coeffs(i, j)
        acc = f.zero
        for c, x in zip(coeffs, point):
            acc = f.add(acc, f.mul(c, f.normalize(x)))
        return acc == f.zero

    def is_grid_point(self, point) -> bool:
        return self._grid_point_index(point) is not None

    def _grid_point_index(self, point):
        f = self.field
        pt = [f.normalize(c) for c in point]
        for i in range(self.a):
            for j in range(self.b):
                if _proportional(pt, list(self.point(i, j)), f):
                    return (i, j)
        return None

    def param_pairs(self) -> list:
        """The (u_i, v_j) parameter pairs: the grid as points of P^1 x P^1."""
        return [(self.u[i], self.v[j]) for i in range(self.a) for j in range(self.b)]

    def to_json(self) -> str:
        p = getattr(self.field, "p", None)
        return json.dumps(
            {
                "a": self.a,
                "b": self.b,
                "u": [str(x) if p is None else int(x) for x in self.u],
                "v": [str(x) if p is None else int(x) for x in self.v],
                "prime": p,
            }
        )


def _proportional(x, y, field) -> bool:
    n = len(x)
    for i in range(n):
        if (x[i] == 0) != (y[i] == 0):
            return False
    try:
        k = next(i for i in range(n) if x[i] != 0)
    except StopIteration:
        return True
    ratio = field.div(y[k], x[k])
    return all(field.mul(ratio, x[i]) == y[i] for i in range(n))


def make_grid(a: int, b: int, field, seed=None, u=None, v=None) -> GridConfig:
    """Build a grid from a seed (random distinct parameters) or explicit ones.

    Explicit integer parameters are checked against the modulus: distinct
    small grids must stay distinct mod p, which needs p > 2 * max(param)^4.
    """
    if (u is None) != (v is None):
        raise GridError("give both u and v, or neither")
    if a > b:
        a, b = b, a
        if u is not None:
            u, v = v, u
    if u is not None:
        # small published-table parameters must stay nondegenerate mod p
        ints = [x for x in list(u) + list(v) if isinstance(x, int) and abs(x) <= 10**6]
        p = getattr(field, "p", None)
        if p is not None and ints:
            bound = 2 * max(abs(x) for x in ints) ** 4
            if p <= bound:
                raise PrimeTooSmallError(
                    f"prime {p} too small for explicit parameters (needs > {bound})"
                )
        uu = tuple(field.normalize(x) for x in u)
        vv = tuple(field.normalize(x) for x in v)
    else:
        if seed is None:
            raise GridError("need a seed or explicit parameters")
        stream = seed if isinstance(seed, SeedStream) else SeedStream(seed)
        gs = stream.child("grid")
        uu = tuple(gs.child("u").distinct_scalars(field, a))
        vv = tuple(gs.child("v").distinct_scalars(field, b))
    if len(uu) != a or len(vv) != b:
        raise GridError("parameter count does not match grid dimensions")
    return GridConfig(a=a, b=b, u=uu, v=vv, field=field)


def subgrid(grid: GridConfig, a: int, b: int) -> GridConfig:
    """The subgrid on the first a u-parameters and first b v-parameters."""
    if a > grid.a or b > grid.b:
        raise GridError("subgrid dimensions exceed the grid")
    if a > b:
        raise GridError("subgrid needs a <= b")
    return GridConfig(a=a, b=b, u=grid.u[:a], v=grid.v[:b], field=grid.field)


def sample_form(grid: GridConfig, locus, stream: SeedStream) -> tuple:
    """Linear form dual to a random point of the requested locus.

    locus: "generic" | ("plane", i, j) | ("ruling", "lambda", i) |
           ("ruling", "mu", j) | ("chord", (i1, j1), (i2, j2))
    """
    f = grid.field
    if locus == "generic" or locus == ("generic",):
        return tuple(stream.scalar(f) for _ in range(4))
    if not isinstance(locus, tuple) or not locus:
        raise InvalidLocusError(f"bad locus {locus!r}")
    kind = locus[0]
    if kind == "plane":
        _, i, j = locus
        _check_indices(grid, i, j)
        for _ in range(64):
            # random point of Lambda_ij: x4 = u_i x2 + v_j x3 - u_i v_j x1
            x1, x2, x3 = (stream.scalar(f) for _ in range(3))
            x4 = f.sub(
                f.add(f.mul(grid.u[i], x2), f.mul(grid.v[j], x3)),
                f.mul(f.mul(grid.u[i], grid.v[j]), x1),
            )
            pt = (x1, x2, x3, x4)
            if _off_configuration_lines(grid, pt):
                return pt
        raise InvalidLocusError("could not sample a plane point off the lines")
    if kind == "ruling":
        _, which, i = locus
        if which == "lambda":
            if not 0 <= i < grid.a:
                raise InvalidLocusError("lambda index out of range")
            for _ in range(64):
                t = stream.scalar(f)
                if t not in grid.v:
                    return (f.one, t, grid.u[i], f.mul(grid.u[i], t))
        elif which == "mu":
            if not 0 <= i < grid.b:
                raise InvalidLocusError("mu index out of range")
            for _ in range(64):
                t = stream.scalar(f)
                if t not in grid.u:
                    return (f.one, grid.v[i], t, f.mul(t, grid.v[i]))
        raise InvalidLocusError(f"bad ruling locus {locus!r}")
    if kind == "chord":
        _, pij, pkl = locus
        if pij == pkl:
            raise InvalidLocusError("chord endpoints must be distinct grid points")
        _check_indices(grid, *pij)
        _check_indices(grid, *pkl)
        p1 = grid.point(*pij)
        p2 = grid.point(*pkl)
        c = stream.scalar(f)
        return tuple(f.add(x, f.mul(c, y)) for x, y in zip(p1, p2))
    raise InvalidLocusError(f"bad locus {locus!r}")


def _check_indices(grid, i, j):
    if not (0 <= i < grid.a and 0 <= j < grid.b):
        raise InvalidLocusError(f"grid index ({i},{j}) out of range")


def _off_configuration_lines(grid: GridConfig, pt) -> bool:
    if grid.is_grid_point(pt):
        return False
    for i in range(grid.a):
        if grid.on_lambda(i, pt):
            return False
    for j in range(grid.b):
        if grid.on_mu(j, pt):
            return False
    pts = grid.points()
    f = grid.field
    for s in range(len(pts)):
        for t in range(s + 1, len(pts)):
            if _on_line(pt, pts[s], pts[t], f):
                return False
    return True


def _on_line(x, p, q, field) -> bool:
    mat = np.array(
        [[field.normalize(c) for c in x], list(p), list(q)], dtype=object
    )
    if not field.rational:
        mat = mat.astype(np.int64)
    return rank(mat, field) <= 2


@dataclass
class PlanePointSet:
    """Distinct projected points in 3 coordinates, plus the collision report."""

    points: tuple
    collisions: tuple  # pairs of grid indices mapped to the same image


def project_from_point(grid: GridConfig, p, h=None, stream: SeedStream = None) -> PlanePointSet:
    """Project the grid from p to the plane h (coeffs), in 3 coordinates.

    h defaults to a seeded random plane not through p. Distinct grid points
    with equal images are recorded multiplicity-free in the collision report.
    """
    f = grid.field
    p = tuple(f.normalize(c) for c in p)
    if grid.is_grid_point(p):
        raise GridError("projection center must not be a grid point")
    if h is None:
        if stream is None:
            raise GridError("need a target plane or a stream to draw one")
        while True:
            h = tuple(stream.scalar(f) for _ in range(4))
            if _form_value(h, p, f) != 0:
                break
    else:
        h = tuple(f.normalize(c) for c in h)
        if _form_value(h, p, f) == 0:
            raise GridError("target plane passes through the projection center")
    hp = _form_value(h, p, f)
    piv = next(i for i in range(4) if h[i] != 0)
    keep = [i for i in range(4) if i != piv]
    images = []
    for i in range(grid.a):
        for j in range(grid.b):
            x = grid.point(i, j)
            hx = _form_value(h, x, f)
            y = tuple(f.sub(f.mul(hp, xc), f.mul(hx, pc)) for xc, pc in zip(x, p))
            images.append(((i, j), tuple(y[k] for k in keep)))
    distinct = []
    collisions = []
    for idx, img in images:
        hit = None
        for d_idx, d_img in distinct:
            if _proportional(list(img), list(d_img), f):
                hit = d_idx
                break
        if hit is None:
            distinct.append((idx, img))
        else:
            collisions.append((hit, idx))
    return PlanePointSet(
        points=tuple(img for _, img in distinct), collisions=tuple(collisions)
    )


def _form_value(coeffs, point, field):
    acc = field.zero
    for c, x in zip(coeffs, point):
        acc = field.add(acc, field.mul(field.normalize(c), field.normalize(x)))
    return acc


def plane_points_hf(points, t: int, field) -> int:
    """Hilbert function of a reduced plane point set in degree t."""
    if t < 0:
        return 0
    if not points:
        return 0
    rows = np.vstack([vanishing_rows(TOTAL3, t, pt, 1, field) for pt in points])
    return rank(rows, field)


@lru_cache(maxsize=None)
def ci_plane_hf(a: int, b: int, t: int) -> int:
    """Hilbert function of a complete intersection of type (a,b) in P^2."""
    if t < 0:
        return 0
    def s(e):
        return dim_total(3, e)
    return s(t) - (s(t - a) + s(t - b) - s(t - a - b))


def is_ci_hilbert(pts: PlanePointSet, a: int, b: int, field) -> bool:
    """True iff the reduced image has the Hilbert function of a CI(a,b)
    through degree a+b-2 and the point count is a*b."""
    if len(pts.points) != a * b:
        return False
    for t in range(a + b - 1):
        if plane_points_hf(pts.points, t, field) != ci_plane_hf(a, b, t):
            return False
    return True
