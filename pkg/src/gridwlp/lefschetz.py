"""Multiplication-map analysis for quotients by powers ideals: per-degree
rank/kernel/cokernel reports, WLP verdicts with a genericity protocol,
non-Lefschetz locus probes, strong-Lefschetz probes, and B_X bit sequences.

The cokernel of x ell : A_(t-1) -> A_t is measured as the codimension of the
image of the ideal in the 3-variable quotient ring R/(ell); that codimension
equals dim R_t - dim([I]_t + ell*R_(t-1)) for every nonzero ell by rank
counting, and the package cross-checks the two routes in its test suite.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import SeedStream
from .geometry import GridConfig, sample_form
from .ideals import powers_ideal_dim, power_generators, shifted_products_matrix
from .linalg import rank
from .polyspace import TOTAL3, basis_size, dim_total, linear_power


class LefschetzError(ValueError):
    pass


@dataclass
class MultMapReport:
    """Rank data for x ell : A_(t-1) -> A_t."""

    t: int
    dim_from: int
    dim_to: int
    rank: int
    kernel_dim: int
    coker_dim: int

    @property
    def expected_kernel(self) -> int:
        return max(0, self.dim_from - self.dim_to)

    @property
    def expected_coker(self) -> int:
        return max(0, self.dim_to - self.dim_from)

    @property
    def maximal(self) -> bool:
        return self.kernel_dim == self.expected_kernel

    def validate(self):
        assert self.rank == self.dim_from - self.kernel_dim
        assert self.rank == self.dim_to - self.coker_dim
        assert min(self.rank, self.kernel_dim, self.coker_dim) >= 0
        assert self.maximal == (self.coker_dim == self.expected_coker)

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "dimFrom": self.dim_from,
            "dimTo": self.dim_to,
            "rank": self.rank,
            "ker": self.kernel_dim,
            "coker": self.coker_dim,
            "maximal": self.maximal,
        }


@dataclass
class WlpReport:
    grid: GridConfig
    d: int
    trials: int
    degrees: list
    verdict: bool
    failing: list

    def validate(self):
        for rep in self.degrees:
            rep.validate()
        assert self.verdict == (not self.failing)
        # surjectivity propagates: once coker hits 0 past the generator
        # degree it must stay 0 (the ideal has no generators above d)
        first_surj = None
        for rep in self.degrees:
            if rep.t >= self.d and rep.coker_dim == 0:
                first_surj = rep.t
                break
        if first_surj is not None:
            for rep in self.degrees:
                if rep.t > first_surj:
                    assert rep.coker_dim == 0, (
                        f"surjectivity not an up-set: coker {rep.coker_dim} at t={rep.t}"
                    )

    def to_json(self) -> str:
        p = getattr(self.grid.field, "p", None)
        return json.dumps(
            {
                "grid": {
                    "a": self.grid.a,
                    "b": self.grid.b,
                    "u": [int(x) if p else str(x) for x in self.grid.u],
                    "v": [int(x) if p else str(x) for x in self.grid.v],
                },
                "d": self.d,
                "prime": p,
                "trials": self.trials,
                "degrees": [rep.as_dict() for rep in self.degrees],
                "verdict": self.verdict,
                "failing": self.failing,
            }
        )


def _reduce_form_mod_ell(coeffs, ell, field):
    """Image of a linear form in the 3-variable ring R/(ell)."""
    piv = next(i for i in range(4) if ell[i] != 0)
    factor = field.div(coeffs[piv], ell[piv])
    return [
        field.sub(coeffs[i], field.mul(factor, ell[i])) for i in range(4) if i != piv
    ]


class _QuotientPowers:
    """Powers of the dual forms reduced mod ell, with per-degree span ranks."""

    def __init__(self, grid: GridConfig, d: int, ell):
        field = grid.field
        ell = [field.normalize(c) for c in ell]
        if all(c == 0 for c in ell):
            raise LefschetzError("ell must be nonzero")
        self.field = field
        self.d = d
        reduced = []
        for i in range(grid.a):
            for j in range(grid.b):
                bar = _reduce_form_mod_ell(grid.dual_form_coeffs(i, j), ell, field)
                if all(c == 0 for c in bar):
                    # the sampled point coincides with a grid point
                    raise LefschetzError("ell is dual to a grid point")
                reduced.append(bar)
        self.powers = [linear_power(c, d, field, TOTAL3) for c in reduced]

    def ideal_dim(self, t: int) -> int:
        if t < self.d:
            return 0
        mat = shifted_products_matrix(self.powers, t, self.field)
        return rank(mat, self.field)


def quotient_dim(grid: GridConfig, d: int, t: int) -> int:
    """dim [R/I]_t for the powers ideal."""
    if t < 0:
        return 0
    return dim_total(4, t) - powers_ideal_dim(grid, d, t)


def mult_map_analysis(grid: GridConfig, d: int, ell, t: int) -> MultMapReport:
    """Measure x ell : A_(t-1) -> A_t by exact rank computations."""
    if t < 1:
        raise LefschetzError("degree t must be >= 1")
    qp = _QuotientPowers(grid, d, ell)
    return _mult_map_from_quotient(grid, d, qp, t)


def _mult_map_from_quotient(grid, d, qp: _QuotientPowers, t: int) -> MultMapReport:
    dim_from = quotient_dim(grid, d, t - 1)
    dim_to = quotient_dim(grid, d, t)
    coker = basis_size(TOTAL3, t) - qp.ideal_dim(t)
    rank_map = dim_to - coker
    ker = dim_from - rank_map
    rep = MultMapReport(
        t=t,
        dim_from=dim_from,
        dim_to=dim_to,
        rank=rank_map,
        kernel_dim=ker,
        coker_dim=coker,
    )
    rep.validate()
    return rep


def sweep_degrees(grid: GridConfig, d: int) -> list:
    """All degrees t >= 1 with dim A_t > 0, up to the socle cap."""
    cap = 4 * (d - 1) + 1
    out = []
    for t in range(1, cap + 1):
        if quotient_dim(grid, d, t) == 0:
            break
        out.append(t)
    return out


def wlp_test(grid: GridConfig, d: int, trials: int = 3, seed=0xC0FFEE) -> WlpReport:
    """Sweep every degree to the socle; per degree keep the best rank over
    `trials` independent generic forms. Maximal rank certified by any single
    trial; failure requires all trials to agree."""
    if trials < 1:
        raise LefschetzError("trials must be >= 1")
    stream = seed if isinstance(seed, SeedStream) else SeedStream(seed)
    degrees = sweep_degrees(grid, d)
    quotients = []
    for trial in range(trials):
        ell = sample_form(grid, "generic", stream.child("form", trial))
        quotients.append(_QuotientPowers(grid, d, ell))
    reports = []
    for t in degrees:
        best = None
        for qp in quotients:
            rep = _mult_map_from_quotient(grid, d, qp, t)
            if best is None or rep.rank > best.rank:
                best = rep
            if best.maximal:
                break
        reports.append(best)
    failing = [rep.t for rep in reports if not rep.maximal]
    out = WlpReport(
        grid=grid,
        d=d,
        trials=trials,
        degrees=reports,
        verdict=not failing,
        failing=failing,
    )
    out.validate()
    return out


@dataclass
class ProbeEntry:
    t: int
    generic: MultMapReport
    specialized: MultMapReport

    @property
    def achieves_generic(self) -> bool:
        return self.specialized.rank >= self.generic.rank

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "generic": self.generic.as_dict(),
            "specialized": self.specialized.as_dict(),
            "pass": self.achieves_generic,
        }


@dataclass
class NonLefschetzReport:
    grid: GridConfig
    d: int
    locus: object
    entries: list
    member_of_locus: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "locus": str(self.locus),
                "entries": [e.as_dict() for e in self.entries],
                "member_of_locus": self.member_of_locus,
            }
        )


def critical_degrees(a: int, d: int) -> list:
    """Degrees probed for the WLP cases: the full sweep range for d <= a-1,
    else the critical pair (aq-2, aq-1) for d = q(a-1)."""
    if d <= a - 1:
        return None  # caller sweeps everything
    if d % (a - 1) != 0:
        raise LefschetzError("probe degrees are defined for d <= a-1 or (a-1) | d")
    q = d // (a - 1)
    return [a * q - 2, a * q - 1]


def non_lefschetz_probe(
    grid: GridConfig, d: int, locus, trials: int = 3, seed=0xC0FFEE
) -> NonLefschetzReport:
    """Compare ranks of x ell for ell sampled from a special locus against the
    generic ranks, at the degrees that decide the WLP."""
    a = grid.a
    stream = seed if isinstance(seed, SeedStream) else SeedStream(seed)
    degs = critical_degrees(a, d)
    if degs is None:
        degs = sweep_degrees(grid, d)
    else:
        degs = [t for t in degs if quotient_dim(grid, d, t) > 0 and t >= 1]
    gen_quotients = [
        _QuotientPowers(grid, d, sample_form(grid, "generic", stream.child("form", k)))
        for k in range(trials)
    ]
    spec_quotients = [
        _QuotientPowers(grid, d, sample_form(grid, locus, stream.child("locus-form", k)))
        for k in range(trials)
    ]
    entries = []
    for t in degs:
        gen = _best_rank(grid, d, gen_quotients, t)
        spe = _best_rank(grid, d, spec_quotients, t)
        entries.append(ProbeEntry(t=t, generic=gen, specialized=spe))
    member = any(not e.achieves_generic for e in entries)
    return NonLefschetzReport(
        grid=grid, d=d, locus=locus, entries=entries, member_of_locus=member
    )


def _best_rank(grid, d, quotients, t) -> MultMapReport:
    best = None
    for qp in quotients:
        rep = _mult_map_from_quotient(grid, d, qp, t)
        if best is None or rep.rank > best.rank:
            best = rep
        if best.maximal:
            break
    return best


def slp_power_map_report(grid: GridConfig, d: int, ell, k: int, t: int) -> MultMapReport:
    """Measure x ell^k : A_(t-k) -> A_t via the union of the ideal piece with
    ell^k * R_(t-k) inside R_t (exploratory; no closed-form reference)."""
    field = grid.field
    dim_from = quotient_dim(grid, d, t - k)
    dim_to = quotient_dim(grid, d, t)
    n_t = dim_total(4, t)
    gens = power_generators(grid, d)
    rows = [shifted_products_matrix(gens, t, field)] if t >= d else []
    if t - k >= 0:
        ellk = linear_power(ell, k, field)
        rows.append(shifted_products_matrix([ellk], t, field))
    union = rank(np.vstack(rows), field) if rows else 0
    coker = n_t - union
    rank_map = dim_to - coker
    rep = MultMapReport(
        t=t,
        dim_from=dim_from,
        dim_to=dim_to,
        rank=rank_map,
        kernel_dim=dim_from - rank_map,
        coker_dim=coker,
    )
    rep.validate()
    return rep


def slp_probe(grid: GridConfig, d: int, k: int, trials: int = 3, seed=0xC0FFEE):
    """Maximal-rank report for multiplication by the k-th power of a generic
    form, degree by degree; purely exploratory output."""
    if k < 1:
        raise LefschetzError("k must be >= 1")
    if k == 1:
        return wlp_test(grid, d, trials, seed)
    stream = seed if isinstance(seed, SeedStream) else SeedStream(seed)
    tmax = 0
    for t in sweep_degrees(grid, d):
        tmax = t
    reports = []
    for t in range(k, tmax + 1):
        best = None
        for trial in range(trials):
            ell = sample_form(grid, "generic", stream.child("slp-form", trial))
            rep = slp_power_map_report(grid, d, ell, k, t)
            if best is None or rep.rank > best.rank:
                best = rep
            if best.maximal:
                break
        reports.append(best)
    return reports


@dataclass
class BxSequence:
    """WLP bits b_d for d = 1..dmax; for a < b the bits with d >= a live in
    the conjectural region (computed verdicts, no theorem)."""

    a: int
    b: int
    dmax: int
    bits: list
    conjectural: list = dc_field(default_factory=list)

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    def to_json(self) -> str:
        return json.dumps(
            {
                "a": self.a,
                "b": self.b,
                "dmax": self.dmax,
                "bits": self.bitstring(),
                "conjectural_d": self.conjectural,
            }
        )


def bx_sequence(grid: GridConfig, dmax: int, trials: int = 3, seed=0xC0FFEE) -> BxSequence:
    if dmax < 1:
        raise LefschetzError("dmax must be >= 1")
    stream = seed if isinstance(seed, SeedStream) else SeedStream(seed)
    bits = []
    for d in range(1, dmax + 1):
        rep = wlp_test(grid, d, trials, stream.child("bx", d))
        bits.append(1 if rep.verdict else 0)
    conjectural = (
        [d for d in range(1, dmax + 1) if d >= grid.a] if grid.a < grid.b else []
    )
    return BxSequence(a=grid.a, b=grid.b, dmax=dmax, bits=bits, conjectural=conjectural)
