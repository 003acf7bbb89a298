"""Regenerate every figure dataset as reproducible CSV.

Writes one file per figure id into ./figures (or a directory given as
the first argument). Output is byte-stable: rerunning produces
identical files.

Run with: python3 demos/figure_datasets.py [outdir]
"""

import sys
from pathlib import Path

from catpurify import sweeps


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("figures")
    outdir.mkdir(parents=True, exist_ok=True)
    for figure_id in sweeps.FIGURE_IDS:
        table = sweeps.run_sweep(sweeps.default_spec(figure_id))
        path = outdir / sweeps.csv_name(figure_id)
        sweeps.emit_csv(table, path, reproducible=True)
        print(f"{path}  ({len(table.rows)} rows x {len(table.columns)} cols)")


if __name__ == "__main__":
    main()
