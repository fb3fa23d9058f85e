#!/usr/bin/env python3
"""Regenerate all five benchmark tables into CSV files under results/."""

import pathlib
import sys

from ngas.tables import get_table, render_csv

OUT = pathlib.Path(__file__).resolve().parent.parent / "results"


def main() -> int:
    OUT.mkdir(exist_ok=True)
    jobs = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)]
    for chapter, number in jobs:
        table = get_table(chapter, number, with_oracle=True)
        path = OUT / f"table_ch{chapter}_{number}_{table.name}.csv"
        path.write_text(render_csv(table))
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
