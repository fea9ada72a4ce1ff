#!/usr/bin/env python3
# Copyright 2026 The voterbloc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Convert mggg/scot-elex election files to canonical voterbloc BLT.

Input layout, one CSV record per line with empty fields ignored:

    m,k
    count,c1,c2,...          1-based candidate numbers, most preferred first
    Candidate,name,party     m rows
    ward name

Every independent (any party tag starting with "Ind") becomes the shared tag
IND. Output files keep the input stem with a .blt suffix.
"""

import argparse
import csv
import sys
from collections import Counter
from pathlib import Path

INDEPENDENT = "IND"


class ConversionError(Exception):
    pass


def quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def party_tag(raw):
    raw = raw.strip()
    if not raw or raw.lower().startswith("ind"):
        return INDEPENDENT
    return raw


def read_scot_elex(path):
    with open(path, newline="", encoding="utf-8") as f:
        rows = [[x.strip() for x in row if x.strip()] for row in csv.reader(f)]
    rows = [r for r in rows if r]
    if len(rows) < 3 or len(rows[0]) != 2:
        raise ConversionError(f"{path}: first record must be 'candidates,seats'")
    m, k = (int(x) for x in rows[0])
    ward = rows[-1][0]
    cand_rows = rows[-1 - m:-1]
    if len(cand_rows) != m or any("Candidate" not in r[0] or len(r) < 2 for r in cand_rows):
        raise ConversionError(f"{path}: expected {m} Candidate records before the ward name")
    candidates = [(r[1], party_tag(r[2] if len(r) > 2 else "")) for r in cand_rows]

    ballots = Counter()
    for line, r in enumerate(rows[1:-1 - m], start=2):
        count, ranking = int(r[0]), tuple(int(x) for x in r[1:])
        if count <= 0 or not ranking:
            continue
        if any(c < 1 or c > m for c in ranking) or len(set(ranking)) != len(ranking):
            raise ConversionError(f"{path}: record {line} has an invalid ranking {ranking}")
        ballots[ranking] += count
    return m, k, ballots, candidates, ward


def to_blt(m, k, ballots, candidates, title):
    out = [f"{m} {k}"]
    for ranking in sorted(ballots):
        out.append(" ".join([str(ballots[ranking]), *map(str, ranking), "0"]))
    out.append("0")
    for name, party in candidates:
        out.append(quote(name) if party == INDEPENDENT else f"{quote(name)},{quote(party)}")
    out.append(quote(title))
    return "\n".join(out) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("inputs", nargs="+", type=Path, help="scot-elex files or directories of them")
    ap.add_argument("--out", type=Path, required=True, help="directory for the BLT files")
    args = ap.parse_args(argv)

    files = []
    for p in args.inputs:
        files.extend(sorted(x for x in p.rglob("*") if x.is_file() and x.suffix in (".csv", ".blt")) if p.is_dir() else [p])
    args.out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for path in files:
        try:
            text = to_blt(*read_scot_elex(path))
        except (ConversionError, ValueError, IndexError) as e:
            print(f"skip {path}: {e}", file=sys.stderr)
            failures += 1
            continue
        (args.out / (path.stem + ".blt")).write_text(text, encoding="utf-8")
    print(f"converted {len(files) - failures} of {len(files)} files into {args.out}")
    return 1 if failures and failures == len(files) else 0


if __name__ == "__main__":
    sys.exit(main())
