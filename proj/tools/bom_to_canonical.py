#!/usr/bin/env python3
"""Convert Bureau of Meteorology one-minute solar CSV exports to the
canonical irradiance format (header ``timestamp,ghi_wm2``, one row per
minute, local standard time).

The portal's column layout varies by station and export vintage, so the
relevant columns are passed explicitly rather than guessed. Typical usage for
an export whose local-standard-time fields are "Year Month Day Hours Minutes"
with mean global irradiance in column 12:

    python3 tools/bom_to_canonical.py raw.csv out.csv \
        --year-col 2 --month-col 3 --day-col 4 --hour-col 5 --minute-col 6 \
        --ghi-col 12

Assumptions (document deviations per station):
  * timestamps in the export are local standard time (no DST shifts);
  * the GHI column is a per-minute mean in W/m2;
  * blank or negative GHI cells are emitted as gaps (row skipped) and left to
    the loader's gap policy (interpolate up to 30 min, else drop the day).
"""

import argparse
import csv
import sys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("input")
    ap.add_argument("output")
    ap.add_argument("--year-col", type=int, required=True, help="1-based column index")
    ap.add_argument("--month-col", type=int, required=True)
    ap.add_argument("--day-col", type=int, required=True)
    ap.add_argument("--hour-col", type=int, required=True)
    ap.add_argument("--minute-col", type=int, required=True)
    ap.add_argument("--ghi-col", type=int, required=True)
    ap.add_argument("--skip-rows", type=int, default=1, help="header rows to skip")
    args = ap.parse_args()

    written = 0
    skipped = 0
    with open(args.input, newline="") as fin, open(args.output, "w", newline="") as fout:
        fout.write("timestamp,ghi_wm2\n")
        reader = csv.reader(fin)
        for i, row in enumerate(reader):
            if i < args.skip_rows:
                continue
            try:
                y = int(row[args.year_col - 1])
                mo = int(row[args.month_col - 1])
                d = int(row[args.day_col - 1])
                h = int(row[args.hour_col - 1])
                mi = int(row[args.minute_col - 1])
                ghi = float(row[args.ghi_col - 1])
            except (IndexError, ValueError):
                skipped += 1
                continue
            if ghi < 0.0:  # sensor noise at night; leave as a gap
                skipped += 1
                continue
            fout.write(f"{y:04d}-{mo:02d}-{d:02d}T{h:02d}:{mi:02d},{ghi:.4f}\n")
            written += 1
    print(f"wrote {written} rows, skipped {skipped}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
