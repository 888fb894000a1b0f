#!/usr/bin/env python3
"""Regenerate the three numeric tables as CSV files under out/."""
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from khinsphere.cli import table_writer  # noqa: E402


def main() -> None:
    out = pathlib.Path(__file__).resolve().parents[1] / "out"
    out.mkdir(exist_ok=True)
    for which in (1, 2, 3):
        path = out / f"table{which}.csv"
        path.write_text(table_writer(which))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
