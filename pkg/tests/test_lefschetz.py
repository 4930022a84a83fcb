import json

import pytest

from gridwlp import (
    SeedStream,
    bx_sequence,
    make_grid,
    mult_map_analysis,
    non_lefschetz_probe,
    powers_ideal_piece,
    sample_form,
    slp_probe,
    union_dim,
    wlp_test,
)
from gridwlp.ideals import PowersIdealSpec, shifted_products_matrix
from gridwlp.lefschetz import LefschetzError, quotient_dim, sweep_degrees
from gridwlp.linalg import subspace_from_rows
from gridwlp.polyspace import TOTAL4, dim_total, linear_form


def _generic(grid, seed):
    return sample_form(grid, "generic", SeedStream(seed).child("f"))


def test_mult_map_3x3_d3_critical(fp, grid33):
    rep = mult_map_analysis(grid33, 3, _generic(grid33, 1), 3)
    assert (rep.dim_from, rep.dim_to) == (10, 11)
    assert rep.coker_dim == 2 and rep.kernel_dim == 1
    assert not rep.maximal


def test_mult_map_3x3_d4_surjective(fp, grid33):
    rep = mult_map_analysis(grid33, 4, _generic(grid33, 2), 5)
    assert rep.coker_dim == 0 and rep.maximal


def test_mult_map_3x6_d5(fp, grid36):
    rep = mult_map_analysis(grid36, 5, _generic(grid36, 3), 6)
    assert rep.dim_to - rep.dim_from == -11
    assert rep.coker_dim == 1
    assert not rep.maximal


def test_coker_agrees_with_union_dim_route(fp, grid33):
    # the quotient-ring measurement equals ambient minus the union of the
    # ideal piece with ell * R_(t-1)
    ell = _generic(grid33, 4)
    for d, t in ((3, 3), (4, 5), (2, 2)):
        rep = mult_map_analysis(grid33, d, ell, t)
        piece = powers_ideal_piece(PowersIdealSpec(grid33, d), t)
        ell_rows = shifted_products_matrix([linear_form(ell, fp)], t, fp)
        ell_span = subspace_from_rows(ell_rows, (TOTAL4, t), fp)
        assert rep.coker_dim == dim_total(4, t) - union_dim(piece, ell_span, fp)


def test_wlp_verdicts_small(fp, grid33):
    rep = wlp_test(grid33, 3, trials=3, seed=7)
    assert not rep.verdict and rep.failing == [3]
    rep = wlp_test(grid33, 4, trials=3, seed=7)
    assert rep.verdict and rep.failing == []
    grid44 = make_grid(4, 4, fp, seed=SeedStream(8))
    rep = wlp_test(grid44, 2, trials=3, seed=7)
    assert rep.verdict


def test_wlp_3x6_d5_failing_degrees(fp, grid36):
    # maximal rank fails at both degrees 5 and 6: the eighteen fifth powers
    # are independent, so A_4 -> A_5 already has a kernel
    rep = wlp_test(grid36, 5, trials=3, seed=7)
    assert not rep.verdict
    assert rep.failing == [5, 6]


def test_wlp_report_invariants_and_json(fp, grid33):
    rep = wlp_test(grid33, 3, trials=2, seed=9)
    rep.validate()
    for r in rep.degrees:
        assert r.rank == r.dim_from - r.kernel_dim == r.dim_to - r.coker_dim
    data = json.loads(rep.to_json())
    assert list(data.keys()) == ["grid", "d", "prime", "trials", "degrees", "verdict", "failing"]
    assert data["failing"] == [3]
    assert data["degrees"][2]["maximal"] is False


def test_wlp_deterministic_given_seed(fp, grid33):
    a = wlp_test(grid33, 3, trials=2, seed=11).to_json()
    b = wlp_test(grid33, 3, trials=2, seed=11).to_json()
    assert a == b


def test_wlp_seed_stability(fp, grid33):
    for d in (2, 3, 4):
        r1 = wlp_test(grid33, d, trials=3, seed=101)
        r2 = wlp_test(grid33, d, trials=3, seed=202)
        assert r1.verdict == r2.verdict and r1.failing == r2.failing


def test_injectivity_downset_for_multiple_of_a_minus_1(fp, grid33):
    # square grid with d = q(a-1): below the first surjective degree every
    # map is injective, so injective degrees form a down-set
    rep = wlp_test(grid33, 4, trials=3, seed=13)
    kernels = [r.kernel_dim for r in rep.degrees]
    first_surj = next(i for i, r in enumerate(rep.degrees) if r.coker_dim == 0)
    assert all(k == 0 for k in kernels[:first_surj])


def test_sweep_covers_socle(fp, grid33):
    degs = sweep_degrees(grid33, 4)
    assert degs == [1, 2, 3, 4, 5, 6]
    assert quotient_dim(grid33, 4, 6) > 0
    assert quotient_dim(grid33, 4, 7) == 0


def test_probe_plane_passes_chord_and_ruling_fail(fp, grid33):
    rep = non_lefschetz_probe(grid33, 4, ("plane", 0, 0), trials=2, seed=15)
    assert not rep.member_of_locus
    assert [e.t for e in rep.entries] == [4, 5]
    rep = non_lefschetz_probe(grid33, 4, ("chord", (0, 1), (1, 0)), trials=2, seed=15)
    assert rep.member_of_locus
    by_t = {e.t: e for e in rep.entries}
    assert by_t[5].specialized.coker_dim == 1  # measured; the five-line quintic
    rep = non_lefschetz_probe(grid33, 4, ("ruling", "lambda", 0), trials=2, seed=15)
    assert rep.member_of_locus


def test_probe_empty_locus_for_small_powers(fp, grid33):
    for locus in ("generic", ("plane", 0, 0), ("chord", (0, 1), (1, 0))):
        rep = non_lefschetz_probe(grid33, 2, locus, trials=2, seed=16)
        assert not rep.member_of_locus


def test_probe_plane_fails_for_higher_multiple(fp, grid33):
    rep = non_lefschetz_probe(grid33, 6, ("plane", 0, 0), trials=2, seed=17)
    by_t = {e.t: e for e in rep.entries}
    assert not by_t[8].achieves_generic
    assert rep.member_of_locus


def test_probe_rejects_wrong_powers(fp, grid33):
    with pytest.raises(LefschetzError):
        non_lefschetz_probe(grid33, 3, ("plane", 0, 0), trials=1, seed=18)


def test_slp_k1_reduces_to_wlp(fp, grid33):
    rep = slp_probe(grid33, 3, 1, trials=2, seed=19)
    assert rep.failing == [3]


def test_slp_2x2_maximal_everywhere(fp):
    grid = make_grid(2, 2, fp, seed=SeedStream(20))
    for d in (2, 3, 4):
        for k in (2, 3):
            reports = slp_probe(grid, d, k, trials=2, seed=21)
            assert all(r.maximal for r in reports)


def test_slp_exploratory_output_shape(fp, grid33):
    reports = slp_probe(grid33, 4, 2, trials=2, seed=22)
    assert [r.t for r in reports] == list(range(2, 7))
    for r in reports:
        r.validate()


def test_bx_sequences(fp, grid33):
    seq = bx_sequence(grid33, 6, trials=2, seed=23)
    assert seq.bitstring() == "110101"
    assert seq.conjectural == []
    grid22 = make_grid(2, 2, fp, seed=SeedStream(24))
    assert bx_sequence(grid22, 5, trials=2, seed=25).bitstring() == "11111"


def test_bx_nonsquare_flags_conjectural_region(fp):
    grid = make_grid(3, 4, fp, seed=SeedStream(26))
    seq = bx_sequence(grid, 4, trials=2, seed=27)
    assert seq.bitstring() == "1100"
    assert seq.conjectural == [3, 4]
    data = json.loads(seq.to_json())
    assert data["conjectural_d"] == [3, 4]
