"""Exact arithmetic, combinatorial primitives, and the shared memo store.

All invariant values are exact rationals (`fractions.Fraction`); nothing in
this package ever touches floating point.  The memo store is a write-once
map from canonical recursion keys to values, shared by the closed and open
solvers, with a plain-text serialization so expensive runs can be reused
across processes.
"""

from __future__ import annotations

import io
import math
import os
import threading
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

__all__ = [
    "Fraction",
    "binomial",
    "sub_multisets",
    "ClosedKey",
    "OpenKey",
    "MemoStore",
    "CycleError",
    "StoreConflictError",
    "CacheFormatError",
    "memo_get_or_compute",
    "cache_save",
    "cache_load",
    "default_store",
]

CACHE_VERSION = "gwcache v1"


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the convention C(n, k) = 0 outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def sub_multisets(items: tuple) -> list:
    """All sub-multisets of ``items`` with their selection multiplicities.

    Returns (chosen, rest, weight) triples where weight is the number of
    ways to pick the sub-multiset ``chosen`` out of labeled positions,
    i.e. the product of C(mult(x), chosen(x)) over distinct values.
    Summing weight * f(chosen, rest) reproduces a sum over labeled splits
    of any symmetric function f.
    """
    groups = []
    for x in items:
        if groups and groups[-1][0] == x:
            groups[-1][1] += 1
        else:
            groups.append([x, 1])
    result = [((), (), 1)]
    for value, mult in groups:
        extended = []
        for chosen, rest, weight in result:
            for take in range(mult + 1):
                extended.append(
                    (
                        chosen + (value,) * take,
                        rest + (value,) * (mult - take),
                        weight * binomial(mult, take),
                    )
                )
        result = extended
    return result


class ClosedKey(NamedTuple):
    """Canonical key for a closed invariant: degree d, sorted insertions in [2, n]."""

    n: int
    d: int
    insertions: tuple

    def record(self) -> str:
        body = ",".join(str(a) for a in self.insertions)
        return f"C n={self.n} d={self.d} A={body}"


class OpenKey(NamedTuple):
    """Canonical key for an open invariant: degree beta, k boundary points,
    sorted interior constraint exponents in [2, n]."""

    n: int
    beta: int
    k: int
    interior: tuple

    def record(self) -> str:
        body = ",".join(str(j) for j in self.interior)
        return f"O n={self.n} b={self.beta} k={self.k} J={body}"


class StoreConflictError(ValueError):
    """Raised when a key would be rebound to a different value."""


class CycleError(RuntimeError):
    """Raised when a computation re-enters a key it is already evaluating.

    The recursions terminate by a strict lexicographic measure, so a cycle
    always indicates a bug; failing loudly beats looping forever.
    """


class CacheFormatError(ValueError):
    """Raised by cache_load on malformed or conflicting input."""


class MemoStore:
    """Write-once memo table shared by the closed and open solvers.

    ``computes`` counts cache misses that triggered an actual evaluation;
    warm-start tests use it to assert that nothing was recomputed.  The
    lock makes get-or-insert atomic so independent table cells may be
    computed from worker threads; duplicate computations of the same key
    are allowed (they produce equal values), conflicting stores are not.
    """

    def __init__(self):
        self.closed_entries: dict = {}
        self.open_entries: dict = {}
        self.computes = 0
        self._in_progress = set()
        self._lock = threading.RLock()

    def _table(self, key) -> dict:
        if isinstance(key, ClosedKey):
            return self.closed_entries
        if isinstance(key, OpenKey):
            return self.open_entries
        raise TypeError(f"unsupported key type: {type(key).__name__}")

    def get(self, key):
        with self._lock:
            return self._table(key).get(key)

    def put(self, key, value: Fraction):
        value = Fraction(value)
        with self._lock:
            table = self._table(key)
            old = table.get(key)
            if old is not None and old != value:
                raise StoreConflictError(f"{key.record()}: {old} vs {value}")
            table[key] = value

    def __len__(self):
        return len(self.closed_entries) + len(self.open_entries)

    def clear(self):
        with self._lock:
            self.closed_entries.clear()
            self.open_entries.clear()
            self.computes = 0
            self._in_progress.clear()


def memo_get_or_compute(store: MemoStore, key, compute: Callable[[], Fraction]) -> Fraction:
    cached = store.get(key)
    if cached is not None:
        return cached
    # Cycle trap: the key is marked while its own expansion runs.  Thread
    # identity is part of the mark so parallel duplicate computes of one
    # key are not mistaken for re-entrancy.
    mark = (threading.get_ident(), key)
    if mark in store._in_progress:
        raise CycleError(f"recursion re-entered {key.record()}")
    store._in_progress.add(mark)
    try:
        value = Fraction(compute())
    finally:
        store._in_progress.discard(mark)
    with store._lock:
        cached = store.get(key)
        if cached is not None:
            if cached != value:
                raise StoreConflictError(f"{key.record()}: {cached} vs {value}")
            return cached
        store.put(key, value)
        store.computes += 1
    return value


def _format_value(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def cache_save(store: MemoStore, destination) -> None:
    """Serialize the store as UTF-8 text (LF line endings) to a path or binary sink.

    Records are sorted lexicographically, so a store's serialization is a
    canonical form: saving, loading, and saving again is byte-identical.
    """
    lines = [f"# {CACHE_VERSION}"]
    records = [f"{key.record()} v={_format_value(value)}" for key, value in store.closed_entries.items()]
    records += [f"{key.record()} v={_format_value(value)}" for key, value in store.open_entries.items()]
    records.sort()
    lines += records
    data = ("\n".join(lines) + "\n").encode("utf-8")
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(destination, "wb") as fh:
            fh.write(data)


def _parse_fields(body: str, names: tuple, lineno: int) -> list:
    parts = body.split(" ")
    if len(parts) != len(names):
        raise CacheFormatError(f"line {lineno}: expected fields {names}, got {body!r}")
    values = []
    for part, name in zip(parts, names):
        prefix = name + "="
        if not part.startswith(prefix):
            raise CacheFormatError(f"line {lineno}: expected {prefix}..., got {part!r}")
        values.append(part[len(prefix):])
    return values


def _parse_int(text: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise CacheFormatError(f"line {lineno}: bad integer {text!r}") from None


def _parse_int_list(text: str, lineno: int) -> tuple:
    if text == "":
        return ()
    return tuple(_parse_int(piece, lineno) for piece in text.split(","))


def _parse_value(text: str, lineno: int) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        raise CacheFormatError(f"line {lineno}: value must be num/den, got {text!r}")
    d = _parse_int(den, lineno)
    if d <= 0:
        raise CacheFormatError(f"line {lineno}: nonpositive denominator in {text!r}")
    return Fraction(_parse_int(num, lineno), d)


def cache_load(source) -> MemoStore:
    """Parse a cache document from a path or binary source into a fresh store.

    Rejects unknown version tags, malformed records, and duplicate keys
    bound to conflicting values; diagnostics name the offending line.
    """
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CacheFormatError(f"not valid UTF-8: {exc}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CacheFormatError("empty document, missing version header")
    header = lines[0]
    if not header.startswith("#") or header[1:].strip() != CACHE_VERSION:
        raise CacheFormatError(f"line 1: unknown version header {header!r}")
    store = MemoStore()
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            continue
        if line.strip() == "":
            raise CacheFormatError(f"line {lineno}: blank line not allowed")
        tag, _, body = line.partition(" ")
        if tag == "C":
            fields = _parse_fields(body, ("n", "d", "A", "v"), lineno)
            key = ClosedKey(
                _parse_int(fields[0], lineno),
                _parse_int(fields[1], lineno),
                _parse_int_list(fields[2], lineno),
            )
            value = _parse_value(fields[3], lineno)
        elif tag == "O":
            fields = _parse_fields(body, ("n", "b", "k", "J", "v"), lineno)
            key = OpenKey(
                _parse_int(fields[0], lineno),
                _parse_int(fields[1], lineno),
                _parse_int(fields[2], lineno),
                _parse_int_list(fields[3], lineno),
            )
            value = _parse_value(fields[4], lineno)
        else:
            raise CacheFormatError(f"line {lineno}: unknown record tag {tag!r}")
        if tuple(key.insertions if isinstance(key, ClosedKey) else key.interior) != tuple(
            sorted(key.insertions if isinstance(key, ClosedKey) else key.interior)
        ):
            raise CacheFormatError(f"line {lineno}: insertions not sorted")
        table = store._table(key)
        if key in table and table[key] != value:
            raise CacheFormatError(
                f"line {lineno}: conflicting duplicate for {key.record()}: {table[key]} vs {value}"
            )
        table[key] = value
    return store


_DEFAULT_STORE = MemoStore()


def default_store() -> MemoStore:
    return _DEFAULT_STORE


def resolve_store(store) -> MemoStore:
    return _DEFAULT_STORE if store is None else store
