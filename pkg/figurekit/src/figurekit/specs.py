"""The four known figures and their series registries.

Every figure is log-log over the same window (x 1e-3..0.2, y 1e-5..1).
Series are keyed by the ``series`` column of the CSV; each carries the
legend label and a style role: simulation series draw as markers with
confidence bars where the CSV provides them, bound series draw as lines.
"""

from __future__ import annotations

from dataclasses import dataclass

X_LIMITS = (1e-3, 0.2)
Y_LIMITS = (1e-5, 1.0)


@dataclass(frozen=True)
class SeriesSpec:
    """Appearance of one CSV series inside a figure."""

    name: str
    label: str
    role: str  # "sim" or "bound"
    color: str
    marker: str = "o"
    linestyle: str = "-"

    def __post_init__(self) -> None:
        if self.role not in ("sim", "bound"):
            raise ValueError(f"unknown series role: {self.role!r}")


@dataclass(frozen=True)
class FigureSpec:
    """One renderable figure: id, title, legend placement and series."""

    figure: str
    title: str
    series: tuple[SeriesSpec, ...]
    legend_loc: str = "upper left"
    x_limits: tuple[float, float] = X_LIMITS
    y_limits: tuple[float, float] = Y_LIMITS

    @property
    def required(self) -> tuple[tuple[str, str], ...]:
        """The ``(figure, series)`` pairs the CSV must provide."""
        return tuple((self.figure, s.name) for s in self.series)


FIGURES: dict[str, FigureSpec] = {
    "bd_compare": FigureSpec(
        figure="bd_compare",
        title="[[13,1,3]] surface code, $p_{FT} = p/100$",
        series=(
            SeriesSpec("sim", "[[13,1,3]] - Simulation", "sim", "C0", "o"),
            SeriesSpec("ub_bd", "[[13,1,3]] - Upper Bound (distance counting)",
                       "bound", "C1", linestyle="-"),
            SeriesSpec("ub_beta", "[[13,1,3]] - Upper Bound (correction fraction)",
                       "bound", "C2", linestyle="--"),
            SeriesSpec("ub_enum", "[[13,1,3]] - Upper Bound (weight enumerator)",
                       "bound", "C3", linestyle="-."),
        ),
    ),
    "steane_p100": FigureSpec(
        figure="steane_p100",
        title="[[7,1,3]] Steane code, $p_{FT} = p/100$",
        series=(
            SeriesSpec("sim", "Simulation", "sim", "C0", "o"),
            SeriesSpec("sim_ideal", "Simulation w/ Ideal Gates", "sim", "C1", "s"),
            SeriesSpec("ub_simple", "Upper Bound (simple)", "bound", "C2",
                       linestyle="-"),
            SeriesSpec("ub_refined", "Upper Bound (refined)", "bound", "C3",
                       linestyle="--"),
            SeriesSpec("ub_ideal", "Upper Bound - $p_{FT} = 0$", "bound", "C4",
                       linestyle="-."),
        ),
    ),
    "surface_p10": FigureSpec(
        figure="surface_p10",
        title="[[13,1,3]] surface code, $p_{FT} = p/10$",
        legend_loc="lower right",
        series=(
            SeriesSpec("sim", "Simulation", "sim", "C0", "o"),
            SeriesSpec("sim_ideal", "Simulation w/ Ideal Gates", "sim", "C1", "s"),
            SeriesSpec("ub_simple", "Upper Bound (simple)", "bound", "C2",
                       linestyle="-"),
            SeriesSpec("ub_refined", "Upper Bound (refined)", "bound", "C3",
                       linestyle="--"),
            SeriesSpec("ub_ideal", "Upper Bound - $p_{FT} = 0$", "bound", "C4",
                       linestyle="-."),
        ),
    ),
    "surface_res_p100": FigureSpec(
        figure="surface_res_p100",
        title="[[13,1,3]] surface code residual error, $p_{FT} = p/100$",
        series=(
            SeriesSpec("sim_res", "Simulation $P_{res}$", "sim", "C0", "o"),
            SeriesSpec("sim_fail_dec", "Simulation $P_{fail,dec}$", "sim",
                       "C1", "s"),
            SeriesSpec("sim_fail", "Simulation $P_{fail}$", "sim", "C2", "^"),
            SeriesSpec("ub_fail_dec", "Upper Bound on $P_{fail,dec}$", "bound",
                       "C3", linestyle="-"),
            SeriesSpec("ub_fail", "Upper Bound on $P_{fail}$", "bound", "C4",
                       linestyle="-"),
            SeriesSpec("ub_res_asympt", "Asympt. UB on $P_{res}$", "bound",
                       "C5", linestyle="--"),
            SeriesSpec("lb_res", "Lower Bound on $P_{res}$", "bound", "C6",
                       linestyle=":"),
        ),
    ),
}

FIGURE_IDS = tuple(FIGURES)
