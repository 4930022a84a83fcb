"""Dense exact linear algebra: rank, kernels, row-reduced spans.

Two engines share one interface. Over F_p, rank uses blocked Gaussian
elimination whose trailing updates are float64 BLAS matmuls on 16-bit limbs
(exact because every partial product stays below 2^53). Over the rationals,
a plain fraction elimination handles the small cross-check instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Guards against accidental runaway degrees: exceeding the cap is an explicit
# error, never an OOM.
COLUMN_CAP = 20000

_PANEL = 256
_CHUNK_COLS = 8192
_MERSENNE31 = 2**31 - 1


class DimensionCapError(RuntimeError):
    pass


class AmbientMismatchError(ValueError):
    pass


def _check_cap(ncols: int):
    if ncols > COLUMN_CAP:
        raise DimensionCapError(
            f"ambient dimension {ncols} exceeds cap {COLUMN_CAP}"
        )


def _matmul_modp(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Exact (x @ y) % p via 16-bit limb splitting and float64 BLAS."""
    if x.shape[1] != y.shape[0]:
        raise ValueError("inner dimensions disagree")
    k = x.shape[1]
    if k == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    # partial products bounded by k * 2^16 * 2^16 < 2^53 for k < 2^21
    assert k < (1 << 21)
    x1 = (x >> 16).astype(np.float64)
    x0 = (x & 0xFFFF).astype(np.float64)
    y1 = (y >> 16).astype(np.float64)
    y0 = (y & 0xFFFF).astype(np.float64)
    hi = (x1 @ y1).astype(np.int64)
    mid = (x1 @ y0).astype(np.int64) + (x0 @ y1).astype(np.int64)
    lo = (x0 @ y0).astype(np.int64)
    if p == _MERSENNE31 and k <= (1 << 12):
        # 2^32 = 2 and 2^16 stays 2^16 mod the Mersenne prime; the combined
        # value is < 2^57 for k <= 4096, so a single final reduction suffices
        return (hi * 2 + (mid << 16) + lo) % p
    hi %= p
    mid %= p
    lo %= p
    out = (hi * ((1 << 32) % p)) % p
    out += (mid * ((1 << 16) % p)) % p
    out += lo
    return out % p


def _rref_small(block: np.ndarray, p: int):
    """In-place RREF of a small int64 block; returns (#pivots, pivot cols,
    original row index of each pivot row)."""
    s, k = block.shape
    pos = np.arange(s)
    piv_cols = []
    rr = 0
    for col in range(k):
        if rr == s:
            break
        nz = np.nonzero(block[rr:, col])[0]
        if nz.size == 0:
            continue
        i = rr + int(nz[0])
        if i != rr:
            block[[rr, i]] = block[[i, rr]]
            pos[[rr, i]] = pos[[i, rr]]
        block[rr] = block[rr] * pow(int(block[rr, col]), -1, p) % p
        others = np.nonzero(block[:, col])[0]
        others = others[others != rr]
        if others.size:
            block[others] = (
                block[others] - np.outer(block[others, col], block[rr])
            ) % p
        piv_cols.append(col)
        rr += 1
    return rr, piv_cols, pos[:rr]


def _find_panel_pivots(a: np.ndarray, r: int, c: int, k: int, p: int):
    """Scan rows r.. of a over columns [c, c+k) in windows, keeping a small
    RREF; returns (absolute pivot row indices, sorted pivot columns).

    The scan touches each row once: new windows are matmul-reduced against
    the pivots found so far, so dense matrices finish after one window.
    """
    m = a.shape[0]
    window = max(2 * k, 512)
    basis = np.zeros((0, k), dtype=np.int64)
    piv_cols: list = []
    piv_rows: list = []
    w = r
    while w < m and len(piv_cols) < k:
        hi = min(w + window, m)
        block = a[w:hi, c : c + k].copy()
        if piv_cols:
            mult = block[:, piv_cols]
            if np.any(mult):
                block = (block - _matmul_modp(mult, basis, p)) % p
        nz_rows = np.nonzero(np.any(block, axis=1))[0]
        if nz_rows.size:
            sub = block[nz_rows]
            t, new_cols, orig = _rref_small(sub, p)
            if t:
                merged = np.vstack([basis, sub[:t]])
                tt, merged_cols, _ = _rref_small(merged, p)
                basis = merged[:tt]
                piv_cols = merged_cols
                piv_rows.extend(int(w + nz_rows[o]) for o in orig)
        w = hi
    return piv_rows, piv_cols


def _rank_modp_blocked(a: np.ndarray, p: int) -> int:
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    m, n = a.shape
    if m == 0 or n == 0:
        return 0
    if n > m:
        a = np.ascontiguousarray(a.T)
        m, n = n, m
    rank = 0
    c = 0
    while rank < m and c < n:
        k = min(_PANEL, n - c)
        piv_rows, piv_cols = _find_panel_pivots(a, rank, c, k, p)
        if not piv_rows:
            c += k
            continue
        t = len(piv_rows)
        _swap_rows_to_front(a, piv_rows, rank)
        # Gauss-Jordan on the t pivot rows over the panel columns, tracking
        # the t x t transform to replay on the trailing columns.
        pb = a[rank : rank + t, c : c + k].copy()
        tr = np.eye(t, dtype=np.int64)
        rr = 0
        for col in piv_cols:
            nz = np.nonzero(pb[rr:, col])[0]
            i = rr + int(nz[0])
            if i != rr:
                pb[[rr, i]] = pb[[i, rr]]
                tr[[rr, i]] = tr[[i, rr]]
            inv = pow(int(pb[rr, col]), -1, p)
            pb[rr] = pb[rr] * inv % p
            tr[rr] = tr[rr] * inv % p
            others = np.nonzero(pb[:, col])[0]
            others = others[others != rr]
            if others.size:
                f = pb[others, col].copy()
                pb[others] = (pb[others] - np.outer(f, pb[rr])) % p
                tr[others] = (tr[others] - np.outer(f, tr[rr])) % p
            rr += 1
        a[rank : rank + t, c : c + k] = pb
        if c + k < n:
            a[rank : rank + t, c + k :] = _matmul_modp(tr, a[rank : rank + t, c + k :], p)
        # clear the panel columns of all remaining rows with chunked matmuls
        rest = a[rank + t :]
        if rest.shape[0]:
            mult = rest[:, [c + pc for pc in piv_cols]].copy()
            if np.any(mult):
                src = a[rank : rank + t, c:]
                for lo in range(0, src.shape[1], _CHUNK_COLS):
                    hi = min(lo + _CHUNK_COLS, src.shape[1])
                    upd = _matmul_modp(mult, src[:, lo:hi], p)
                    rest[:, c + lo : c + hi] = (rest[:, c + lo : c + hi] - upd) % p
        rank += t
        c += k
    return rank


def _swap_rows_to_front(a: np.ndarray, piv_rows: list, base: int):
    """Swap the given absolute rows into positions base..base+len-1."""
    cur_pos = {}
    occupant = {}
    for i, orig in enumerate(piv_rows):
        tgt = base + i
        src = cur_pos.get(orig, orig)
        if src == tgt:
            continue
        a[[src, tgt]] = a[[tgt, src]]
        other = occupant.get(tgt, tgt)
        cur_pos[orig] = tgt
        occupant[tgt] = orig
        cur_pos[other] = src
        occupant[src] = other


def _echelon_modp(a: np.ndarray, p: int, reduced: bool):
    """Plain row echelon over F_p; returns (nonzero rows, pivot columns)."""
    a = np.asarray(a, dtype=np.int64).copy() % p
    m, n = a.shape
    piv_cols = []
    rr = 0
    for col in range(n):
        if rr == m:
            break
        nz = np.nonzero(a[rr:, col])[0]
        if nz.size == 0:
            continue
        i = rr + int(nz[0])
        if i != rr:
            a[[rr, i]] = a[[i, rr]]
        a[rr] = a[rr] * pow(int(a[rr, col]), -1, p) % p
        if reduced:
            others = np.nonzero(a[:, col])[0]
            others = others[others != rr]
        else:
            others = rr + 1 + np.nonzero(a[rr + 1 :, col])[0]
        if len(others):
            a[others] = (a[others] - np.outer(a[others, col], a[rr])) % p
        piv_cols.append(col)
        rr += 1
    return a[:rr], piv_cols


def _echelon_frac(a: np.ndarray, reduced: bool):
    from fractions import Fraction

    rows = [list(map(Fraction, row)) for row in np.asarray(a, dtype=object)]
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv_cols = []
    rr = 0
    for col in range(n):
        if rr == m:
            break
        sel = None
        for i in range(rr, m):
            if rows[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[rr], rows[sel] = rows[sel], rows[rr]
        inv = 1 / rows[rr][col]
        rows[rr] = [v * inv for v in rows[rr]]
        rng = range(m) if reduced else range(rr + 1, m)
        for i in rng:
            if i != rr and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[rr])]
        piv_cols.append(col)
        rr += 1
    out = np.empty((rr, n), dtype=object)
    for i in range(rr):
        out[i, :] = rows[i]
    return out, piv_cols


def rank(matrix, field) -> int:
    """Row rank over the active field; deterministic."""
    a = np.asarray(matrix)
    if a.ndim != 2:
        raise ValueError("rank expects a 2-D matrix")
    _check_cap(a.shape[1])
    if a.size == 0:
        return 0
    if field.rational:
        return _echelon_frac(a, reduced=False)[0].shape[0]
    if min(a.shape) <= 48:
        return _echelon_modp(a, field.p, reduced=False)[0].shape[0]
    return _rank_modp_blocked(a, field.p)


def kernel_dim(matrix, field) -> int:
    a = np.asarray(matrix)
    if a.size == 0:
        return a.shape[1] if a.ndim == 2 else 0
    return a.shape[1] - rank(a, field)


def rref(matrix, field):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = np.asarray(matrix)
    if a.size == 0:
        return a.reshape(0, a.shape[1] if a.ndim == 2 else 0), []
    _check_cap(a.shape[1])
    if field.rational:
        return _echelon_frac(a, reduced=True)
    return _echelon_modp(a, field.p, reduced=True)


def kernel_basis(matrix, field) -> np.ndarray:
    """RREF basis of the right kernel (rows are kernel vectors)."""
    a = np.asarray(matrix)
    n = a.shape[1]
    if a.size == 0 or not np.any(a != 0):
        return _identity(n, field)
    r, piv = rref(a, field)
    free = [j for j in range(n) if j not in piv]
    out = field.zeros((len(free), n))
    for row_idx, f in enumerate(free):
        out[row_idx, f] = field.one
        for i, pc in enumerate(piv):
            out[row_idx, pc] = field.neg(r[i, f])
    return out


def _identity(n, field):
    out = field.zeros((n, n))
    for i in range(n):
        out[i, i] = field.one
    return out


@dataclass
class SubspaceBasis:
    """Row-reduced spanning set of a subspace of a graded piece."""

    ambient: tuple
    rref: np.ndarray
    dim: int

    @property
    def ambient_dim(self) -> int:
        return self.rref.shape[1]


def subspace_from_rows(rows, ambient, field) -> SubspaceBasis:
    a = np.asarray(rows)
    if a.ndim != 2:
        a = a.reshape(0, 0)
    r, _ = rref(a, field) if a.size else (a.reshape(0, a.shape[1] if a.ndim == 2 else 0), [])
    return SubspaceBasis(ambient=ambient, rref=r, dim=r.shape[0])


def span_dim(polys, field=None) -> int:
    """Dimension of the linear span of a family of coefficient vectors."""
    if not polys:
        return 0
    first = polys[0]
    if hasattr(first, "coeffs"):
        fld = first.field
        key = (first.grading, first.degree)
        for q in polys:
            if (q.grading, q.degree) != key:
                raise AmbientMismatchError("span_dim: mixed gradings or degrees")
        mat = np.stack([np.asarray(q.coeffs) for q in polys])
        return rank(mat, fld)
    mat = np.stack([np.asarray(v) for v in polys])
    return rank(mat, field)


def union_dim(a: SubspaceBasis, b: SubspaceBasis, field) -> int:
    """dim(A + B) for two subspaces of the same ambient graded piece."""
    if a.ambient != b.ambient:
        raise AmbientMismatchError(f"ambient mismatch: {a.ambient} vs {b.ambient}")
    if a.dim == 0:
        return b.dim
    if b.dim == 0:
        return a.dim
    return rank(np.vstack([a.rref, b.rref]), field)


def intersection_dim(a: SubspaceBasis, b: SubspaceBasis, field) -> int:
    return a.dim + b.dim - union_dim(a, b, field)
