#!/usr/bin/env python3
"""Convert raw UCI repository files into the CSV shape catclust expects.

Usage:  python3 scripts/prepare_uci.py RAW_DIR [--out data]

RAW_DIR holds the files as downloaded from the UCI Machine Learning
Repository (original names, see RAW_FILES below). Each dataset found is
rewritten as comma-separated text with the class label in the last column
and no header, which is what manifests/uci12.csv points at. Files that are
absent are reported and skipped, so partial raw sets still work.

Every attribute value is kept verbatim as a category, including missing
markers ('?' in breast cancer and house votes, '*' in shuttle landing).
"""

import argparse
import csv
import sys
from pathlib import Path

RAW_FILES = {
    "fitting_lenses": "lenses.data",
    "breast_cancer": "breast-cancer-wisconsin.data",
    "balloon": "adult+stretch.data",
    "soybean_small": "soybean-small.data",
    "hayes_roth": "hayes-roth.data",
    "promoters": "promoters.data",
    "monks": "monks-1.test",
    "voters": "house-votes-84.data",
    "shuttle_landing": "shuttle-landing-control.data",
    "balance_scale": "balance-scale.data",
    "soybean_large": "soybean-large.data",
}


def read_rows(path, delimiter=","):
    rows = []
    with open(path, newline="") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            if delimiter == " ":
                rows.append(line.split())
            else:
                rows.append(next(csv.reader([line], delimiter=delimiter)))
    return rows


def class_first_to_last(rows):
    return [r[1:] + [r[0]] for r in rows]


def convert(name, raw_path):
    if name == "fitting_lenses":
        # space separated; column 0 is a running id, class already last
        return [r[1:] for r in read_rows(raw_path, delimiter=" ")]
    if name == "breast_cancer":
        # column 0 is the sample id, class (2/4) already last
        return [r[1:] for r in read_rows(raw_path)]
    if name in ("balloon", "soybean_small"):
        return read_rows(raw_path)  # already class-last
    if name == "hayes_roth":
        # column 0 is a name field with no predictive content
        return [r[1:] for r in read_rows(raw_path)]
    if name == "promoters":
        # class,name,57-base sequence -> one column per base, class last
        out = []
        for r in read_rows(raw_path):
            seq = "".join(r[2:]).replace("\t", "").replace(" ", "")
            if len(seq) != 57:
                raise ValueError(f"{raw_path}: sequence length {len(seq)} != 57")
            out.append(list(seq) + [r[0]])
        return out
    if name == "monks":
        # space separated, class first, trailing id column dropped
        return class_first_to_last([r[:-1] for r in read_rows(raw_path, delimiter=" ")])
    if name in ("voters", "shuttle_landing", "balance_scale", "soybean_large"):
        return class_first_to_last(read_rows(raw_path))
    raise KeyError(name)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("raw_dir", type=Path, help="directory with the raw UCI files")
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data",
                    help="output directory (default: the repository data/ directory)")
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    missing = []
    for name, raw_name in RAW_FILES.items():
        raw_path = args.raw_dir / raw_name
        if not raw_path.is_file():
            missing.append(raw_name)
            continue
        rows = convert(name, raw_path)
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise SystemExit(f"{raw_path}: ragged rows after conversion ({sorted(widths)})")
        out_path = args.out / f"{name}.csv"
        with open(out_path, "w", newline="") as f:
            csv.writer(f).writerows(rows)
        print(f"wrote {out_path} ({len(rows)} rows, {widths.pop()} columns)")

    if missing:
        print("\nnot found in raw dir (skipped):", ", ".join(missing), file=sys.stderr)
    print("\nnote: fisher_order.csv has no public source and must be supplied "
          "by hand if available.", file=sys.stderr)
    return 1 if missing else 0


if __name__ == "__main__":
    sys.exit(main())
