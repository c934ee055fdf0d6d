"""Command-line surface for the invariant solvers.

Subcommands: ``closed`` and ``open`` for single invariants, ``linear`` for
invariants of formal combinations of basis classes, ``table`` to print the
sample-value tables, ``verify`` to run the identity-checking suites, and
``cache`` to manage the persistent memo store.  If the environment variable
``GW_CACHE`` names a file, every computing subcommand warm-starts from it
and saves the grown store back on success.

Exit codes: 0 on success, 1 when a verification suite finds a violated
identity, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import verify as verify_mod
from .closed import gw_closed
from .kernel import CacheFormatError, MemoStore, cache_load, cache_save
from .open_gw import DIAMOND, ogw, ogwb, ogw_linear

__all__ = ["main"]

TABLE_DIMS = (3, 5, 7, 9, 15)


def format_fraction(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def parse_classes(text: str, n: int, allow_diamond: bool) -> list:
    """Comma list of insertion exponents, optionally with the ``d`` token."""
    items = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if piece == DIAMOND:
            if not allow_diamond:
                raise ValueError("token 'd' is only valid for open invariants")
            items.append(DIAMOND)
            continue
        try:
            a = int(piece)
        except ValueError:
            raise ValueError(f"bad insertion {piece!r}") from None
        if a < 0 or a > n:
            raise ValueError(f"insertion {a} out of range [0, {n}]")
        items.append(a)
    return items


def parse_combo(text: str, n: int) -> list:
    """Linear-combination constraints: ``j:coef,j:coef;...`` per insertion."""
    vectors = []
    if not text.strip():
        return vectors
    for chunk in text.split(";"):
        vector = {}
        for piece in chunk.split(","):
            piece = piece.strip()
            if not piece:
                continue
            sym_text, sep, coef_text = piece.partition(":")
            if not sep:
                raise ValueError(f"combo term {piece!r} must look like j:coef")
            sym_text = sym_text.strip()
            if sym_text == DIAMOND:
                sym = DIAMOND
            else:
                try:
                    sym = int(sym_text)
                except ValueError:
                    raise ValueError(f"bad basis symbol {sym_text!r}") from None
                if sym < 0 or sym > n:
                    raise ValueError(f"basis symbol {sym} out of range [0, {n}]")
            try:
                coef = Fraction(coef_text.strip())
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"bad coefficient {coef_text!r}") from None
            vector[sym] = vector.get(sym, Fraction(0)) + coef
        if not vector:
            raise ValueError(f"empty combo insertion in {text!r}")
        vectors.append(vector)
    return vectors


# ---------------------------------------------------------------------------
# table emission


def values_rows(max_beta: int):
    """Rows (n, beta, k, interior) of the boundary-constraint sample table.

    For each dimension, the degrees with an integer, even number of
    boundary points and no interior constraints are beta = 1 mod (n-1);
    then k = 2 + (n+1)(beta-1)/(n-1) by the degree axiom.
    """
    for n in TABLE_DIMS:
        beta = 1
        while beta <= max_beta:
            k = 2 + (n + 1) * (beta - 1) // (n - 1)
            yield n, beta, k, ()
            beta += n - 1


def dim_rows(n: int, max_beta: int):
    """Rows (beta, l2, interior) of the dim5/dim7 tables.

    Constraints are Gamma_2^{l1} Gamma_{n-1}^{l2} with l1 fixed by the
    degree axiom; combinations forcing l1 < 0 are printed as zero.
    """
    for beta in range(1, max_beta + 1, 2):
        for l2 in range(4):
            l1 = (n - 3) // 2 + (n + 1) // 2 * beta - (n - 2) * l2
            interior = (2,) * l1 + (n - 1,) * l2 if l1 >= 0 else None
            yield beta, l2, interior


def emit_table(name: str, max_beta: int, store: MemoStore, jobs: int, out) -> None:
    if name == "values":
        rows = [(row, f"{row[0]} {row[1]} {row[2]} ") for row in values_rows(max_beta)]
        tasks = [(row[0], row[1], row[2], row[3]) for row, _ in rows]
    elif name in ("dim5", "dim7"):
        n = 5 if name == "dim5" else 7
        rows = []
        tasks = []
        for beta, l2, interior in dim_rows(n, max_beta):
            rows.append(((n, beta, 0, interior), f"{beta} {l2} "))
            tasks.append((n, beta, 0, interior))
    else:
        raise ValueError(f"unknown table {name!r}")

    def cell(task):
        n, beta, k, interior = task
        if interior is None:
            return Fraction(0)
        return ogw(n, beta, k, interior, store)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(cell, tasks))
    else:
        values = [cell(task) for task in tasks]
    for (_, prefix), value in zip(rows, values):
        out.write(prefix + format_fraction(value) + "\n")


# ---------------------------------------------------------------------------
# verification suites


def run_suite(suite: str, n: int, max_beta: int, samples: int, seed: int, store: MemoStore, out) -> int:
    if suite == "closed-wdvv":
        instances = verify_mod.sample_closed_instances(samples, seed, n_max=max(n, 2), d_max=max_beta)
        for inst in instances:
            nn, d, e1, e2, e3, e4, spectators = inst
            if not verify_mod.check_closed_exchange(nn, d, e1, e2, e3, e4, spectators, store):
                out.write(f"closed-wdvv: FAILED {inst}\n")
                return 1
        out.write(f"closed-wdvv: {len(instances)} instances ok\n")
        return 0
    if suite == "open-wdvv":
        first = verify_mod.sample_open_exchange_instances(samples, seed, n, beta_max=max_beta)
        for inst in first:
            if not verify_mod.check_open_exchange(inst, store):
                out.write(f"open-wdvv: FAILED {inst}\n")
                return 1
        second = verify_mod.sample_open_boundary_instances(samples, seed + 1, n, beta_max=max_beta)
        for inst in second:
            nn, v, w, beta, k, spectators = inst
            if not verify_mod.check_open_boundary(nn, v, w, beta, k, spectators, store):
                out.write(f"open-wdvv: FAILED boundary {inst}\n")
                return 1
        out.write(f"open-wdvv: {len(first)} exchange and {len(second)} boundary instances ok\n")
        return 0
    if suite == "dyadic":
        violations = verify_mod.check_dyadic(n, max_beta, store)
        if violations:
            for key, value in violations:
                out.write(f"dyadic: FAILED {key.record()} = {value}\n")
            return 1
        total = len(verify_mod.enumerate_canonical_keys(n, max_beta))
        out.write(f"dyadic: {total} keys ok\n")
        return 0
    if suite == "alt-reduction":
        keys = verify_mod.enumerate_canonical_keys(n, max_beta)
        for key in keys:
            if not verify_mod.check_alt_reduction(key.n, key.beta, key.k, key.interior, store):
                out.write(f"alt-reduction: FAILED {key.record()}\n")
                return 1
        out.write(f"alt-reduction: {len(keys)} keys ok\n")
        return 0
    raise ValueError(f"unknown suite {suite!r}")


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gw",
        description="Exact closed and open Gromov-Witten invariants of projective spaces.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("closed", help="closed invariant of CP^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--classes", default="")

    p = sub.add_parser("open", help="open invariant of (CP^n, RP^n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--classes", default="")
    p.add_argument("--raw-ogwb", action="store_true", help="report ogwb instead of ogw")

    p = sub.add_parser("linear", help="open invariant of linear combinations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--combo", default="", help='insertions "j:coef,j:coef;..." separated by ;')

    p = sub.add_parser("table", help="print a sample-value table")
    p.add_argument("--name", required=True, choices=["values", "dim5", "dim7"])
    p.add_argument("--max-beta", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("verify", help="run an identity-checking suite")
    p.add_argument("--suite", required=True, choices=["closed-wdvv", "open-wdvv", "dyadic", "alt-reduction"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--max-beta", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("cache", help="save or load the persistent store")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--save", metavar="PATH")
    group.add_argument("--load", metavar="PATH")

    return parser


def _load_env_cache(store: MemoStore, path: str) -> None:
    loaded = cache_load(path)
    for key, value in loaded.closed_entries.items():
        store.put(key, value)
    for key, value in loaded.open_entries.items():
        store.put(key, value)


def main(argv=None) -> int:
    sys.setrecursionlimit(200_000)
    args = build_parser().parse_args(argv)
    out = sys.stdout
    store = MemoStore()
    cache_path = os.environ.get("GW_CACHE")

    try:
        if args.subcommand == "cache":
            if args.save is not None:
                if cache_path and os.path.exists(cache_path):
                    _load_env_cache(store, cache_path)
                cache_save(store, args.save)
                out.write(f"saved {len(store)} records\n")
            else:
                loaded = cache_load(args.load)
                out.write(f"loaded {len(loaded)} records\n")
                if cache_path:
                    if os.path.exists(cache_path):
                        _load_env_cache(loaded, cache_path)
                    cache_save(loaded, cache_path)
            return 0

        if cache_path and os.path.exists(cache_path):
            _load_env_cache(store, cache_path)

        status = 0
        if args.subcommand == "closed":
            if args.n < 2:
                raise ValueError(f"n must be at least 2, got {args.n}")
            if args.d < 0:
                raise ValueError(f"d must be nonnegative, got {args.d}")
            insertions = parse_classes(args.classes, args.n, allow_diamond=False)
            out.write(format_fraction(gw_closed(args.n, args.d, insertions, store)) + "\n")
        elif args.subcommand == "open":
            interior = parse_classes(args.classes, args.n, allow_diamond=True)
            fn = ogwb if args.raw_ogwb else ogw
            out.write(format_fraction(fn(args.n, args.beta, args.k, interior, store)) + "\n")
        elif args.subcommand == "linear":
            constraints = parse_combo(args.combo, args.n)
            out.write(format_fraction(ogw_linear(args.n, args.beta, args.k, constraints, store)) + "\n")
        elif args.subcommand == "table":
            if args.max_beta < 0:
                raise ValueError(f"max-beta must be nonnegative, got {args.max_beta}")
            if args.jobs < 1:
                raise ValueError(f"jobs must be positive, got {args.jobs}")
            emit_table(args.name, args.max_beta, store, args.jobs, out)
        elif args.subcommand == "verify":
            if args.samples < 0 or args.max_beta < 0:
                raise ValueError("samples and max-beta must be nonnegative")
            status = run_suite(args.suite, args.n, args.max_beta, args.samples, args.seed, store, out)
        if cache_path:
            cache_save(store, cache_path)
        return status
    except (ValueError, CacheFormatError, OSError) as exc:
        print(f"gw: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
