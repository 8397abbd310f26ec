"""Tests for the benchmark figure definitions and their curve values."""

from fractions import Fraction

import pytest

from ftqec_limits.codes import UnsupportedCodeError, build_code
from ftqec_limits.figures import (
    FIGURE_IDS,
    FIGURES,
    GRID_EXTENDED,
    GRID_RES_UB,
    GRID_STANDARD,
    GRID_SURFACE_REFINED,
    figure_rows,
    plotted_beta,
    reference_series,
)

# Frozen values of every curve the figure stack reproduces exactly.  Any
# change to the bound implementations or their default parameters that
# moves these outputs is a regression, not a cleanup.
EXACT_CURVES = {
    ("bd_compare", "ub_bd"): (
        7.74301398605697e-05, 0.000307458155811804, 0.00187982467076163,
        0.00724894367793521, 0.026951262568848, 0.135423859739781,
        0.3786550197418, 0.766353779097601),
    ("bd_compare", "ub_beta"): (
        1.87989692222347e-05, 7.55029411617094e-05, 0.00047732718347811,
        0.00194137850668953, 0.0079643207798688, 0.0511276860644095,
        0.192628098379648, 0.562669250052097),
    ("bd_compare", "ub_enum"): (
        1.87989612820191e-05, 7.550281506794e-05, 0.000477322367636324,
        0.00194130429491231, 0.00796321948915221, 0.051093373643265,
        0.192249484028548, 0.559410664144896),
    ("steane_p100", "ub_ideal"): (
        1.62867249626382e-05, 6.49609321393961e-05, 0.000402536341848863,
        0.00158724627832006, 0.00616921461162673, 0.0353530979166668,
        0.1221382, 0.362116266666666, 0.7833088),
    ("surface_p10", "ub_refined"): (
        0.000244144478034891, 0.000536320928245959, 0.00119865359950311,
        0.00271938560667151, 0.00622693911156402, 0.0142501961406782,
        0.0321251018165061, 0.069988851246986, 0.143898740089091,
        0.271626599270101, 0.457441283621461, 0.671375725343787,
        0.852609022271593, 0.95644443326499, 0.992753731486066,
        0.999465167259568, 0.999988189656288, 0.999999961716939,
        0.999999999995713, 1.0),
    ("surface_p10", "ub_ideal"): (
        1.87989692221665e-05, 7.55029411616956e-05, 0.000477327183478119,
        0.00194137850668971, 0.007964320779869, 0.0511276860644098,
        0.192628098379648, 0.562669250052096),
    ("surface_res_p100", "ub_res_asympt"): (
        0.000423333333333333, 0.000846666666666667, 0.00211666666666667,
        0.00423333333333333),
    ("surface_res_p100", "lb_res"): (
        0.000173319178481203, 0.000346610050071849, 0.000866312865668099,
        0.00173191848080032, 0.0034610100667621, 0.00863136553856527,
        0.0171924786938582, 0.0341060331148166),
}


def _series_values(figure_id):
    by_series = {}
    for _, series, p, value, lo, hi in figure_rows(figure_id):
        by_series.setdefault(series, []).append((p, value, lo, hi))
    return by_series


# ---------------------------------------------------------------------------
# structure

def test_figure_catalog():
    assert FIGURE_IDS == ("bd_compare", "steane_p100", "surface_p10",
                          "surface_res_p100")
    assert len(GRID_STANDARD) == 8
    assert GRID_STANDARD[0] == 0.001 and GRID_STANDARD[-1] == 0.2
    assert GRID_EXTENDED == GRID_STANDARD + (0.4,)
    assert GRID_RES_UB == GRID_STANDARD[:4]
    assert len(GRID_SURFACE_REFINED) == 20
    assert GRID_SURFACE_REFINED[0] == 0.001
    assert GRID_SURFACE_REFINED[-1] == pytest.approx(0.794328234724281)


def test_series_recipes():
    assert [s.name for s in FIGURES["bd_compare"].series] == [
        "sim", "ub_bd", "ub_beta", "ub_enum"]
    assert [s.name for s in FIGURES["steane_p100"].series] == [
        "sim", "sim_ideal", "ub_simple", "ub_refined", "ub_ideal"]
    assert [s.name for s in FIGURES["surface_p10"].series] == [
        "sim", "sim_ideal", "ub_simple", "ub_refined", "ub_ideal"]
    assert [s.name for s in FIGURES["surface_res_p100"].series] == [
        "sim_res", "sim_fail_dec", "sim_fail", "ub_fail_dec", "ub_fail",
        "ub_res_asympt", "lb_res"]
    for spec in FIGURES.values():
        for s in spec.series:
            assert s.source in ("bound", "sim", "reference")
            assert (s.source == "bound") == (s.bound_id is not None)
            assert (s.source == "sim") == (s.metric is not None)


def test_plotted_beta():
    assert plotted_beta(build_code("steane", 3)) == Fraction(2, 9)
    assert plotted_beta(build_code("surface", 3)) == Fraction(19, 25)
    assert plotted_beta(build_code("rotated_surface", 3)) == Fraction(5, 9)
    with pytest.raises(UnsupportedCodeError):
        plotted_beta(build_code("surface", 5))


# ---------------------------------------------------------------------------
# reference data

def test_reference_series_spot_values():
    assert reference_series("bd_compare", "sim")[0] == (0.001, 1.763877e-05)
    assert reference_series("steane_p100", "sim_ideal")[0] == (0.001, 1.565e-05)
    assert reference_series("surface_res_p100", "ub_fail")[0] == (
        0.001, 0.00056410430286013)
    with pytest.raises(KeyError):
        reference_series("bd_compare", "ub_bd")
    with pytest.raises(KeyError):
        reference_series("nope", "sim")


def test_reference_series_cover_every_sim_curve():
    for figure_id, spec in FIGURES.items():
        for s in spec.series:
            if s.source in ("sim", "reference"):
                points = reference_series(figure_id, s.name)
                assert tuple(p for p, _ in points) == s.grid


# ---------------------------------------------------------------------------
# curve values

def test_exact_bound_curves():
    for (figure_id, series), expected in EXACT_CURVES.items():
        got = [v for _, v, _, _ in _series_values(figure_id)[series]]
        assert got == pytest.approx(list(expected), rel=1e-9), (
            figure_id, series)


def test_enum_refinement_tightens_beta_curve():
    values = _series_values("bd_compare")
    beta = [v for _, v, _, _ in values["ub_beta"]]
    enum = [v for _, v, _, _ in values["ub_enum"]]
    assert all(e <= b for e, b in zip(enum, beta))


def test_extraction_bound_curves_are_sane():
    # These curves carry the conservative bookkeeping tolerances; pin the
    # shape only, the value contract lives in the acceptance suite.
    for figure_id, series in (("steane_p100", "ub_simple"),
                              ("steane_p100", "ub_refined"),
                              ("surface_p10", "ub_simple"),
                              ("surface_res_p100", "ub_fail_dec")):
        points = _series_values(figure_id)[series]
        values = [v for _, v, _, _ in points]
        assert all(0 < v <= 1 for v in values)
        assert values == sorted(values)
        assert all(lo == "" and hi == "" for _, _, lo, hi in points)


def test_rows_default_to_reference_points():
    values = _series_values("surface_res_p100")
    assert [v for _, v, _, _ in values["sim_res"]] == [
        p[1] for p in reference_series("surface_res_p100", "sim_res")]
    assert [v for _, v, _, _ in values["ub_fail"]] == [
        p[1] for p in reference_series("surface_res_p100", "ub_fail")]


def test_resimulated_rows():
    rows = figure_rows("bd_compare", trials=400, seed=2)
    again = figure_rows("bd_compare", trials=400, seed=2)
    assert rows == again
    by_series = {}
    for _, series, p, value, lo, hi in rows:
        by_series.setdefault(series, []).append((p, value, lo, hi))
    for p, value, lo, hi in by_series["sim"]:
        assert isinstance(lo, float) and isinstance(hi, float)
        assert lo <= value <= hi or value != value
    # Bound curves are identical whether or not simulations reran.
    frozen = _series_values("bd_compare")
    for name in ("ub_bd", "ub_beta", "ub_enum"):
        assert by_series[name] == frozen[name]
