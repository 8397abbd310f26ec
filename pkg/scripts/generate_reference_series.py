"""Regenerate the frozen reference-series data file.

``src/ftqec_limits/data/reference_series.csv`` holds the benchmark
figures' simulation points and the one bound series that is only
available as frozen data; the arrays below are the canonical values.
Run from the repo root:

    python scripts/generate_reference_series.py
"""

from __future__ import annotations

import pathlib

OUT = pathlib.Path(__file__).resolve().parents[1] / (
    "src/ftqec_limits/data/reference_series.csv")

GRID8 = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2)

# figure -> series -> (grid, values)
SERIES = {
    "bd_compare": {
        "sim": (GRID8, (
            1.763877e-05, 6.68696e-05, 0.000423116, 0.00171359, 0.00637511,
            0.0388048, 0.128041, 0.350877)),
    },
    "steane_p100": {
        "sim": (GRID8, (
            2.14717e-05, 8.13187e-05, 0.00045092, 0.00206817, 0.00939585,
            0.0397141, 0.15748, 0.393701)),
        "sim_ideal": (GRID8, (
            1.565e-05, 5.88345e-05, 0.000418605, 0.00162807, 0.00607595,
            0.034618, 0.112782, 0.307062)),
    },
    "surface_p10": {
        "sim": (GRID8, (
            8.14571e-05, 0.000360112, 0.00249417, 0.00888573, 0.0419375,
            0.227531, 0.571429, 0.813008)),
        "sim_ideal": (GRID8, (
            2.38469e-05, 8.14299e-05, 0.000482904, 0.00206105, 0.00841503,
            0.0484496, 0.149365, 0.372439)),
    },
    "surface_res_p100": {
        "sim_res": (GRID8, (
            0.000348064, 0.000701024, 0.00174134, 0.00306723, 0.00607038,
            0.016129, 0.0485981, 0.0649351)),
        "sim_fail_dec": (GRID8, (
            2.22375e-05, 9.70205e-05, 0.000467183, 0.00197685, 0.00831947,
            0.0485437, 0.124844, 0.379507)),
        "sim_fail": (GRID8, (
            0.000369528226474211, 0.000782285693639651, 0.0021914747949672,
            0.0051290564469309, 0.015409193620077, 0.0552025512811,
            0.198424871212, 0.4330710861949)),
        "ub_fail": (GRID8, (
            0.00056410430286013, 0.0014036655331373, 0.00548648659915418,
            0.0170041123564088, 0.05435999982844, 0.230661191491344,
            0.551981213192931, 0.929668227173945)),
    },
}


def main() -> None:
    lines = ["# ftqec-limits csv v1",
             "figure,series,p,value,ci_low,ci_high"]
    for figure, series in SERIES.items():
        for name, (grid, values) in series.items():
            if len(grid) != len(values):
                raise SystemExit(f"{figure}/{name}: grid/value length mismatch")
            for p, v in zip(grid, values):
                lines.append(f"{figure},{name},{p!r},{v!r},,")
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT} ({sum(len(s) for s in SERIES.values())} series)")


if __name__ == "__main__":
    main()
