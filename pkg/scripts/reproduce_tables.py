#!/usr/bin/env python3
"""Regenerate the published invariant tables from scratch.

Emits the boundary-constraint value table and the dim5/dim7 interior
tables on stdout, recomputing everything in exact arithmetic.  The
default depths match the published tables; --stretch pushes each table
to the deepest rows we have checked by hand and prints timings.

Usage:
    python scripts/reproduce_tables.py [--stretch] [--jobs N]
"""

import argparse
import sys
import time

sys.setrecursionlimit(200_000)

from gwcalc import MemoStore
from gwcalc.cli import emit_table


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--stretch", action="store_true", help="deeper rows, with timings")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads per table")
    args = parser.parse_args()

    depths = {"values": 9, "dim5": 9, "dim7": 7}
    if args.stretch:
        depths = {"values": 33, "dim5": 13, "dim7": 9}

    store = MemoStore()
    for name, max_beta in depths.items():
        print(f"== {name} (max_beta={max_beta}) ==")
        started = time.monotonic()
        emit_table(name, max_beta, store, args.jobs, sys.stdout)
        elapsed = time.monotonic() - started
        if args.stretch:
            print(f"# {elapsed:.2f}s, {store.computes} keys computed so far", file=sys.stderr)
        print()


if __name__ == "__main__":
    main()
