"""Closed genus-zero Gromov-Witten invariants of complex projective space.

GW_d(A_1, ..., A_l) counts degree-d rational curves in CP^n through cycles
Poincare dual to the A_i, each A_i a power of the hyperplane class; we
write insertions as exponents a with Delta_a = h^a.  Everything is
reconstructed from the single seed GW_1(Delta_n, Delta_n) = 1 (two points
determine a line) by the standard axioms plus the WDVV associativity
exchange, in exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .kernel import (
    ClosedKey,
    MemoStore,
    memo_get_or_compute,
    resolve_store,
    sub_multisets,
)

__all__ = ["closed_admissible", "gw_closed", "kontsevich_n2_oracle"]


def closed_admissible(n: int, d: int, insertions: Iterable[int]) -> bool:
    """Dimension constraint: sum a_i = n + (n+1)d + l - 3.

    A nonzero invariant requires the total constraint codimension to match
    the dimension of the moduli space of degree-d rational curves with l
    marked points.
    """
    ins = tuple(insertions)
    return sum(ins) == n + (n + 1) * d + len(ins) - 3


def gw_closed(n: int, d: int, insertions: Iterable[int], store: MemoStore = None) -> Fraction:
    """Exact value of GW_d for CP^n with the given hyperplane-power insertions.

    Insertion exponents outside [0, n] denote the zero class, so such calls
    return 0; this is what makes the recursion's generated terms drop out
    silently.  Values are integers for CP^n, returned as Fractions for
    uniformity with the open solver.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if d < 0:
        raise ValueError(f"degree must be nonnegative, got {d}")
    ins = tuple(insertions)
    if any(a < 0 or a > n for a in ins):
        return Fraction(0)
    return Fraction(_gw(n, d, tuple(sorted(ins)), resolve_store(store)))


def _gw(n: int, d: int, ins: tuple, store: MemoStore) -> int:
    # ins sorted ascending, entries in [0, n]
    l = len(ins)
    if sum(ins) != n + (n + 1) * d + l - 3:
        return 0
    if ins and ins[0] == 0:
        # fundamental class: only the 3-point degree-0 integral survives
        if d == 0 and l == 3:
            return 1  # dimension filter already forces a_1 + a_2 + a_3 = n
        return 0
    if d == 0:
        return 1 if l == 3 and sum(ins) == n else 0
    if ins and ins[0] == 1:
        stripped = ins[1:]
        while stripped and stripped[0] == 1:
            # peel all divisor insertions at once, one factor of d each
            stripped = stripped[1:]
        m = l - len(stripped)
        return d ** m * _gw(n, d, stripped, store)
    key = ClosedKey(n, d, ins)
    return int(memo_get_or_compute(store, key, lambda: _exchange(key, store)))


def _exchange(key: ClosedKey, store: MemoStore) -> int:
    """WDVV exchange solved for the invariant with smallest insertion a.

    Writing a = smallest, b = largest, c = second largest and S for the
    spectators, associativity of the quantum product in the directions
    (Delta_1, Delta_{a-1} | Delta_b, Delta_c) gives

      GW_d(a, b, c, S) = GW_d(a-1, b+1, c, S)
                       + d GW_d(b, a-1+c, S) - d GW_d(a-1, b+c, S)
                       + split terms with d_1 + d_2 = d, d_i >= 1.

    Every term is lexicographically smaller in (d, l, min insertion), so
    the recursion bottoms out at the two-point seed.
    """
    n, d, ins = key
    l = len(ins)
    if l <= 2:
        if d == 1 and ins == (n, n):
            return 1
        return 0
    a = ins[0]
    b = ins[-1]
    c = ins[-2]
    spectators = ins[1:-2]

    def term(dd, items):
        tup = tuple(items)
        if any(x < 0 or x > n for x in tup):
            return 0
        return _gw(n, dd, tuple(sorted(tup)), store)

    total = term(d, (a - 1, b + 1, c) + spectators)
    total += d * term(d, (b, a - 1 + c) + spectators)
    total -= d * term(d, (a - 1, b + c) + spectators)
    for d1 in range(1, d):
        d2 = d - d1
        for s1, s2, weight in sub_multisets(spectators):
            for i in range(n + 1):
                j = n - i
                g = term(d1, (1, b, i) + s1)
                if g:
                    total += weight * g * term(d2, (j, a - 1, c) + s2)
                g = term(d1, (1, a - 1, i) + s1)
                if g:
                    total -= weight * g * term(d2, (j, b, c) + s2)
    return total


def kontsevich_n2_oracle(d: int) -> int:
    """Independent count N_d of rational plane curves of degree d through 3d-1 points.

    Kontsevich's recursion,

      N_d = sum_{d1+d2=d} N_{d1} N_{d2} d1^2 d2 (d2 C(3d-4, 3d1-2) - d1 C(3d-4, 3d1-1)),

    seeded with N_1 = 1.  Used only as a cross-check oracle for the WDVV
    reconstruction at n = 2; it shares no code with gw_closed.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    from .kernel import binomial

    values = {1: 1}
    for m in range(2, d + 1):
        acc = 0
        for d1 in range(1, m):
            d2 = m - d1
            acc += (
                values[d1]
                * values[d2]
                * d1 * d1 * d2
                * (d2 * binomial(3 * m - 4, 3 * d1 - 2) - d1 * binomial(3 * m - 4, 3 * d1 - 1))
            )
        values[m] = acc
    return values[d]
