"""Command-line interface.

Subcommands
-----------
``params``
    Structural parameters of a code and the faulty-location counts of its
    extraction layouts.
``bounds``
    Closed-form bound values over a p grid, as CSV.
``beta``
    Exact weight-w correction fraction of a concrete decoder.
``simulate``
    Monte Carlo estimates of cycle failure metrics, as CSV.
``figure-data``
    The series of one benchmark figure (bounds computed live, simulation
    series loaded from the frozen reference data or re-simulated), as CSV.

Exit codes: 0 success, 2 usage error, 3 unsupported parameters,
4 runtime failure.  Errors are a single line on stderr.  CSV output is
versioned with a leading ``# ftqec-limits csv v1`` comment and is
byte-stable for identical inputs.
"""

from __future__ import annotations

import argparse
import math
import sys
from collections import Counter
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .bounds import (
    A_RES_MODES,
    BoundInputs,
    NoiseModel,
    beta_profile,
    bounded_distance_profile,
    enumerator_profile,
    qec_upper_bound,
    refined_decoding_bound,
    residual_lower_bound,
    residual_upper_bound,
    simple_decoding_bound,
    total_failure_bound,
)
from .codes import (
    FAMILIES,
    EnumeratorUnavailableError,
    StabilizerCode,
    UnsupportedCodeError,
    build_code,
    code_profile,
    weight_enumerator,
)
from .decoders import build_lookup_decoder, build_matching_decoder, compute_beta
from .figures import FIGURE_IDS, figure_rows, plotted_beta
from .layouts import KINDS, SCHEMES, UnsupportedLayoutError, build_layout, n_flag
from .simulate import METRICS, ORDERS, estimate

CSV_VERSION = "# ftqec-limits csv v1"

_PROFILE_NAMES = {
    "bd": "bounded_distance",
    "beta": "beta_refined",
    "enum": "enumerator_refined",
}

_CODE_ALIASES = {
    "steane7": ("steane", 3),
    "surface13": ("surface", 3),
    "rotated9": ("rotated_surface", 3),
}

_DEFAULT_DISTANCE = {"steane": 3, "gross": 12}

#: Simulation needs gadget circuits and a final decoder; both exist for
#: the matrix-backed distance-3 codes only.
_SIMULABLE_DISTANCE = 3


class UsageError(ValueError):
    """Invalid invocation detected after argument parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # single-line stderr contract
        raise UsageError(message)


def _resolve_code(name: str, distance: int | None) -> StabilizerCode:
    if name in _CODE_ALIASES:
        family, d = _CODE_ALIASES[name]
        if distance is not None and distance != d:
            raise UsageError(
                f"--d {distance} conflicts with code alias {name!r} (d={d})")
        return build_code(family, d)
    if name not in FAMILIES:
        raise UnsupportedCodeError(
            f"unknown code {name!r}; families: {', '.join(FAMILIES)}; "
            f"aliases: {', '.join(_CODE_ALIASES)}")
    d = distance if distance is not None else _DEFAULT_DISTANCE.get(name)
    if d is None:
        raise UsageError(f"--d is required for family {name!r}")
    return build_code(name, d)


def _emit_csv(out: str | None, header: tuple[str, ...], rows: list[tuple]) -> None:
    def cell(v) -> str:
        return repr(v) if isinstance(v, float) else str(v)

    lines = [CSV_VERSION, ",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _histogram(values) -> str:
    counts = Counter(values)
    return " ".join(f"{v}:{counts[v]}" for v in sorted(counts))


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_params(args) -> int:
    code = _resolve_code(args.code, args.d)
    profile = code_profile(code)
    print(f"code: {code.name} (family={code.family}, "
          f"distance={code.distance})")
    print(f"n={code.n} k={code.k} d={code.d} t={code.t}")
    print(f"gamma X: {_histogram(profile.gamma_x)}")
    print(f"gamma Z: {_histogram(profile.gamma_z)}")
    print(f"v X: {_histogram(profile.v_x)}")
    print(f"v Z: {_histogram(profile.v_z)}")
    if args.scheme is None:
        cells = []
        for scheme in SCHEMES:
            try:
                layout = build_layout(profile, scheme, args.kind)
                cells.append(f"{scheme}={layout.n_fl_total}")
            except UnsupportedLayoutError:
                cells.append(f"{scheme}=unsupported")
        print(f"N_FL (kind={args.kind}): " + " ".join(cells))
        return 0
    layout = build_layout(profile, args.scheme, args.kind)
    print(f"scheme={args.scheme} kind={args.kind} "
          f"measured_group={layout.measured_group}")
    print("index kind gamma n_flag n_fl")
    for g in layout.gadgets:
        print(f"{g.index:5d} {g.gen_kind:>4s} {g.gamma:5d} "
              f"{g.n_flag:6d} {g.n_fl:4d}")
    print(f"N_FL={layout.n_fl_total}")
    return 0


def _decoder_profile(code: StabilizerCode, name: str):
    kind = _PROFILE_NAMES.get(name, name)
    if kind == "bounded_distance":
        return bounded_distance_profile(code.t)
    beta = plotted_beta(code)
    if kind == "beta_refined":
        return beta_profile(code.t, beta)
    if kind == "enumerator_refined":
        return enumerator_profile(code.t, beta, weight_enumerator(code),
                                  code.k)
    raise UsageError(f"unknown profile {name!r}; choose from "
                     f"{', '.join(_PROFILE_NAMES)}")


def _cmd_bounds(args) -> int:
    code = _resolve_code(args.code, args.d)
    profile = _decoder_profile(code, args.profile)
    rows: list[tuple] = []
    layout = None
    if args.ratio is not None:
        if args.ratio <= 0:
            raise UsageError(f"--ratio must be > 0, got {args.ratio}")
        layout = build_layout(code_profile(code), args.scheme, args.kind)
    for p in args.p:
        if not 0 <= p <= 1:
            raise UsageError(f"--p must lie in [0, 1], got {p}")
        if args.ratio is None:
            rows.append((code.name, args.scheme, "qec_ub", p, 0.0,
                         qec_upper_bound(code, p, profile)))
            continue
        noise = NoiseModel.from_ratio(p, args.ratio)
        inputs = BoundInputs(code, layout, noise, profile=profile,
                             v_m=args.v_m, a_res_mode=args.a_res_mode)
        rows.append((code.name, args.scheme, "qec_ub", p, noise.p_ft,
                     qec_upper_bound(code, p, profile)))
        rows.append((code.name, args.scheme, "simple_ub", p, noise.p_ft,
                     simple_decoding_bound(inputs)))
        refined = refined_decoding_bound(inputs)
        rows.append((code.name, args.scheme, "refined_ub", p, noise.p_ft,
                     refined))
        res_ub = residual_upper_bound(inputs)
        rows.append((code.name, args.scheme, "res_ub", p, noise.p_ft,
                     res_ub))
        try:
            rows.append((code.name, args.scheme, "res_lb", p, noise.p_ft,
                         residual_lower_bound(inputs)))
        except EnumeratorUnavailableError:
            pass  # profile-only code: no enumerator, no lower bound
        rows.append((code.name, args.scheme, "total_ub", p, noise.p_ft,
                     total_failure_bound(res_ub, refined)))
    _emit_csv(args.out, ("code", "scheme", "bound_id", "p", "p_ft", "value"),
              rows)
    return 0


def _cmd_beta(args) -> int:
    code = _resolve_code(args.code, args.d)
    if code.profile_only:
        raise UnsupportedCodeError(
            f"{code.name} has no generator layout; no decoder to evaluate")
    decoder = (build_lookup_decoder(code) if args.decoder == "lut"
               else build_matching_decoder(code))
    beta = compute_beta(code, decoder, args.weight)
    total = math.comb(code.n, args.weight) * 3**args.weight
    failures = total - beta * total
    print(f"beta = {beta.numerator}/{beta.denominator}")
    print(f"failures = {failures} of {total} weight-{args.weight} patterns")
    return 0


def _load_config(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            cfg = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"invalid config {path!r}: {exc}") from exc
    return cfg


def _pick(flag, cfg: dict, key: str, default=None):
    """Effective config value: explicit flag wins, then file, then default."""
    if flag is not None:
        return flag
    node = cfg
    for part in key.split("."):
        if not isinstance(node, dict) or part not in node:
            return default
        node = node[part]
    return node


def _cmd_simulate(args) -> int:
    cfg = _load_config(args.config) if args.config else {}
    family = _pick(args.code, cfg, "code.family")
    if family is None:
        raise UsageError("missing code (--code or config key code.family)")
    distance = _pick(args.d, cfg, "code.distance")
    scheme = _pick(args.scheme, cfg, "scheme", "optimized")
    kind = _pick(args.kind, cfg, "kind", "flag")
    ps = _pick(args.p or None, cfg, "noise.p")
    ratio = _pick(args.ratio, cfg, "noise.ratio")
    trials = _pick(args.trials, cfg, "trials")
    seed = _pick(args.seed, cfg, "seed", 0)
    order = _pick(args.order, cfg, "order", "xz")

    code = _resolve_code(family, distance)
    if code.profile_only or code.distance != _SIMULABLE_DISTANCE:
        raise UnsupportedCodeError(
            f"simulation supports the matrix-backed distance-3 codes, "
            f"not {code.name}")
    if not ps:
        raise UsageError("missing noise grid (--p or config key noise.p)")
    if trials is None or trials < 1:
        raise UsageError(f"trials must be >= 1, got {trials}")
    if order not in ORDERS:
        raise UsageError(f"order must be one of {ORDERS}, got {order!r}")
    if ratio is not None and ratio <= 0:
        raise UsageError(f"ratio must be > 0, got {ratio}")

    layout = build_layout(code_profile(code), scheme, kind)
    rows: list[tuple] = []
    for p in ps:
        if not 0 <= p <= 1:
            raise UsageError(f"p must lie in [0, 1], got {p}")
        noise = (NoiseModel(p, 0.0) if ratio is None
                 else NoiseModel.from_ratio(p, ratio))
        stats = estimate(code, layout, noise, trials, seed, order=order,
                         batch_size=args.batch_size)
        for metric in METRICS:
            value, lo, hi = stats.metric(metric)
            rows.append((code.name, scheme, p, noise.p_ft, metric,
                         value, lo, hi, trials, seed))
    _emit_csv(args.out, ("code", "scheme", "p", "p_ft", "metric", "value",
                         "ci_low", "ci_high", "trials", "seed"), rows)
    return 0


def _cmd_figure_data(args) -> int:
    if args.figure not in FIGURE_IDS:
        raise UsageError(f"unknown figure {args.figure!r}; choose from "
                         f"{', '.join(FIGURE_IDS)}")
    if args.trials is not None and args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    rows = figure_rows(args.figure, trials=args.trials, seed=args.seed,
                       order=args.order, batch_size=args.batch_size)
    _emit_csv(args.out, ("figure", "series", "p", "value", "ci_low",
                         "ci_high"), rows)
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftqec-limits",
                     description="Performance bounds and Monte Carlo "
                                 "validation for fault-tolerant QEC cycles")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_code(p) -> None:
        p.add_argument("--code", required=True,
                       help="family name or alias (steane, surface13, "
                            "rotated9, ...)")
        p.add_argument("--d", type=int, help="code distance")

    p = sub.add_parser("params", help="code and layout parameters")
    add_code(p)
    p.add_argument("--scheme", choices=SCHEMES,
                   help="print the per-gadget table of this scheme")
    p.add_argument("--kind", choices=KINDS, default="flag")
    p.set_defaults(handler=_cmd_params)

    p = sub.add_parser("bounds", help="closed-form bound values as CSV")
    add_code(p)
    p.add_argument("--scheme", choices=SCHEMES, default="optimized")
    p.add_argument("--kind", choices=KINDS, default="flag")
    p.add_argument("--profile", default="beta",
                   help="decoder profile: bd, beta or enum")
    p.add_argument("--p", type=float, action="append", required=True,
                   help="channel error rate (repeatable)")
    p.add_argument("--ratio", type=float,
                   help="p_ft = p/ratio; omit for ideal extraction")
    p.add_argument("--a-res-mode", choices=A_RES_MODES, default="theorem_gm")
    p.add_argument("--v-m", type=int, default=1,
                   help="trailing same-type gate-run length for the "
                        "residual lower bound")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("beta", help="exact decoder correction fraction")
    add_code(p)
    p.add_argument("--decoder", choices=("lut", "mwpm"), required=True)
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(handler=_cmd_beta)

    p = sub.add_parser("simulate", help="Monte Carlo cycle estimates as CSV")
    p.add_argument("--config", help="TOML config file; flags override it")
    p.add_argument("--code", help="family name or alias")
    p.add_argument("--d", type=int)
    p.add_argument("--scheme", choices=SCHEMES)
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--p", type=float, action="append",
                   help="channel error rate (repeatable)")
    p.add_argument("--ratio", type=float,
                   help="p_ft = p/ratio; omit for ideal extraction")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--order", choices=ORDERS)
    p.add_argument("--batch-size", type=int, default=65536,
                   help="trials per internal batch; never affects results")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("figure-data",
                       help="series of one benchmark figure as CSV")
    p.add_argument("figure", help=f"one of: {', '.join(FIGURE_IDS)}")
    p.add_argument("--trials", type=int,
                   help="re-simulate the simulation series with this many "
                        "trials (default: frozen reference points)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", choices=ORDERS, default="xz")
    p.add_argument("--batch-size", type=int, default=65536)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(handler=_cmd_figure_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # argparse --help or its own exits
            return int(exc.code or 0)
        return args.handler(args)
    except UsageError as exc:
        print(f"ftqec-limits: usage error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedCodeError, UnsupportedLayoutError,
            EnumeratorUnavailableError) as exc:
        print(f"ftqec-limits: unsupported: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - single-line error contract
        print(f"ftqec-limits: runtime error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
