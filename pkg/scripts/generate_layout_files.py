"""Regenerate the frozen generator-layout data files.

The files under ``src/ftqec_limits/data/layouts/`` are the canonical
layouts; this script rebuilds them from the geometric constructions so a
reviewer can confirm they were not edited by hand.  Run from the repo root:

    python scripts/generate_layout_files.py
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ftqec_limits.codes import (  # noqa: E402
    _BUILDERS,
    _FROZEN_DISTANCES,
    _family_nk,
    _sorted_gens,
    format_layout,
)

OUT_DIR = pathlib.Path(__file__).resolve().parents[1] / (
    "src/ftqec_limits/data/layouts")


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for family, distances in _FROZEN_DISTANCES.items():
        for d in distances:
            x_gens, z_gens, _, _ = _BUILDERS[family](d)
            n, k = _family_nk(family, d)
            text = format_layout(family, d, n, k,
                                 list(_sorted_gens(x_gens)),
                                 list(_sorted_gens(z_gens)))
            name = "steane_d3.txt" if family == "steane" else f"{family}_d{d}.txt"
            path = OUT_DIR / name
            path.write_text(text)
            print(f"wrote {path.relative_to(OUT_DIR.parents[3])}"
                  f" ({len(x_gens)}+{len(z_gens)} generators)")


if __name__ == "__main__":
    main()
