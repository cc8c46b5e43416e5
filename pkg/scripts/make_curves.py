"""Write density (and LCG cdf/hazard) curve tables for every family to a directory.

Usage: python3 scripts/make_curves.py OUTDIR [--grid 99]
"""
import argparse
from pathlib import Path

from condconv import study

CURVES = {
    "dist1": [{"delta": d} for d in (-5.0, -1.0, 0.0, 1.0, 5.0)],
    "dist2": [{"theta": 1.0, "alpha": a} for a in (-1.0, -0.5, 0.0, 0.5, 1.0)],
    "dist3": [{}],
    "dist4": [{"delta": d} for d in (-5.0, -1.0, 0.0, 1.0, 5.0)],
    "dist5": [{}],
    "dist6": [{"delta": d} for d in (-5.0, -1.0, 0.0, 1.0, 5.0)],
    "dist7": [{"beta": b, "delta": d} for b in (0.5, 2.0) for d in (-2.0, 0.0, 2.0)],
    "lcg": [{"beta": b} for b in (0.5, 1.0, 2.3, 7.8, 15.0)],
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("outdir", type=Path)
    p.add_argument("--grid", type=int, default=99)
    args = p.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for family, sets in CURVES.items():
        whats = ("pdf", "cdf", "hazard") if family == "lcg" else ("pdf",)
        for what in whats:
            tables = study.density_curves(family, sets, args.grid, what)
            path = args.outdir / f"{family}_{what}.csv"
            path.write_text(study.curves_to_csv(tables))
            print(path)


if __name__ == "__main__":
    main()
