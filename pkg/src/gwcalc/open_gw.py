"""Open genus-zero Gromov-Witten invariants of (CP^n, RP^n), n odd.

ogwb_{beta,k}(A_1, ..., A_l) counts degree-beta holomorphic disks with
boundary on RP^n through k boundary point constraints and l interior
constraints, weighted by a bounding-chain correction that makes the count
invariant.  Interior constraints live in a cohomology extension of CP^n by
one extra generator in degree n+1, written here as the token "d"
(diamond); the classes Gamma_j (j = 0..n) are the powers of the symplectic
form, normalized so a disk of degree beta has area beta/2 against Gamma_1.

The solver normalizes away Gamma_diamond, Gamma_0, and Gamma_1 insertions
with the wall-crossing, unit, and divisor rules, resolves beta = 0 by the
zero axiom, filters by the degree axiom, and evaluates canonical keys by
two recursions derived from the open WDVV equations:

  * reduce_smallest (needs l >= 2): trades the smallest interior exponent
    j1 for j1 - 1 while raising the largest to j2 + 1, plus sphere-disk
    and disk-disk correction terms;
  * reduce_boundary (needs l <= 1, k >= 2): trades two boundary point
    constraints for interior data at degree beta + 1.

Together with the degree-1 seeds they determine every invariant, always
with a power of two as denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .closed import gw_closed
from .kernel import (
    MemoStore,
    OpenKey,
    binomial,
    memo_get_or_compute,
    resolve_store,
    sub_multisets,
)

__all__ = [
    "DIAMOND",
    "open_admissible",
    "normalize",
    "ogwb",
    "ogw",
    "ogw_linear",
]

DIAMOND = "d"


def _check_args(n: int, beta: int, k: int):
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    if beta < 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")


def _split_constraints(n: int, interior: Iterable) -> tuple:
    """Separate diamond tokens from integer exponents, validating both."""
    diamonds = 0
    exponents = []
    for item in interior:
        if item == DIAMOND:
            diamonds += 1
        elif isinstance(item, int) and not isinstance(item, bool):
            if item < 0 or item > n:
                raise ValueError(f"interior exponent {item} out of range [0, {n}]")
            exponents.append(item)
        else:
            raise ValueError(f"bad interior constraint {item!r}")
    return diamonds, exponents


def open_admissible(n: int, beta: int, k: int, interior: Iterable) -> bool:
    """Degree axiom: n - 3 + (n+1) beta + k + 2l = kn + sum |A_j|.

    |Gamma_j| = 2j and |Gamma_diamond| = n + 1.  Invariants violating this
    vanish identically.
    """
    _check_args(n, beta, k)
    diamonds, exponents = _split_constraints(n, interior)
    l = diamonds + len(exponents)
    total_degree = (n + 1) * diamonds + 2 * sum(exponents)
    return n - 3 + (n + 1) * beta + k + 2 * l == k * n + total_degree


def normalize(n: int, beta: int, k: int, interior: Iterable):
    """Reduce an invariant to (coefficient, canonical key) or a terminal value.

    Returns (value, None) when the axioms resolve the invariant outright,
    else (coeff, OpenKey) with the key admissible and its interior
    exponents sorted within [2, n].  Steps, in order: wall-crossing trades
    each diamond for one extra boundary point and a sign; the unit rule
    resolves Gamma_0 insertions; the divisor rule strips each Gamma_1 at
    the cost of beta/2; the zero axiom resolves beta = 0 (the omega-power
    classes have no relative part, so everything left vanishes); finally
    the degree filter.
    """
    _check_args(n, beta, k)
    diamonds, exponents = _split_constraints(n, interior)
    coeff = Fraction(1)
    if diamonds:
        k += diamonds
        if diamonds % 2:
            coeff = -coeff
    if 0 in exponents:
        if (beta, k, len(exponents)) == (0, 1, 1):
            return (-coeff, None)
        # at (beta, k, l) = (0, 0, 2) the value is the relative part of the
        # other insertion, which is zero for every omega power; any diamond
        # was already converted above, keeping the two routes consistent
        return (Fraction(0), None)
    ones = exponents.count(1)
    if ones:
        coeff *= Fraction(beta, 2) ** ones
        exponents = [j for j in exponents if j != 1]
    if beta == 0:
        return (Fraction(0), None)
    key = OpenKey(n, beta, k, tuple(sorted(exponents)))
    if not _key_admissible(key):
        return (Fraction(0), None)
    return (coeff, key)


def _key_admissible(key: OpenKey) -> bool:
    n, beta, k, js = key
    l = len(js)
    return n - 3 + (n + 1) * beta + k + 2 * l == k * n + 2 * sum(js)


def ogwb(n: int, beta: int, k: int, interior: Iterable, store: MemoStore = None) -> Fraction:
    """Open invariant for the bounding chain normalized by the point class."""
    coeff, key = normalize(n, beta, k, interior)
    if key is None:
        return coeff
    return coeff * _eval_key(key, resolve_store(store))


def ogw(n: int, beta: int, k: int, interior: Iterable, store: MemoStore = None) -> Fraction:
    """Invariant of the pair (CP^n, RP^n) proper.

    Differs from ogwb only at k = 0 and even beta, where the disk class is
    a sphere class and the count is defined to vanish.
    """
    _check_args(n, beta, k)
    if k == 0 and beta % 2 == 0:
        return Fraction(0)
    return ogwb(n, beta, k, interior, store)


def ogw_linear(n: int, beta: int, k: int, constraints, store: MemoStore = None) -> Fraction:
    """Multilinear extension of ogwb to formal combinations of basis classes.

    Each constraint is a mapping from basis symbols (0..n or "d") to exact
    coefficients; the invariant expands over all choices of one basis
    class per slot.
    """
    _check_args(n, beta, k)
    store = resolve_store(store)
    total = Fraction(0)
    combos = [(Fraction(1), [])]
    for vector in constraints:
        extended = []
        for sym, coefficient in vector.items():
            c = Fraction(coefficient)
            if c == 0:
                continue
            for acc, chosen in combos:
                extended.append((acc * c, chosen + [sym]))
        combos = extended
    for acc, chosen in combos:
        total += acc * ogwb(n, beta, k, chosen, store)
    return total


# ---------------------------------------------------------------------------
# canonical key evaluation


def _eval_key(key: OpenKey, store: MemoStore) -> Fraction:
    return memo_get_or_compute(store, key, lambda: _expand(key, store))


def _expand(key: OpenKey, store: MemoStore) -> Fraction:
    n, beta, k, js = key
    if beta == 1 and len(js) <= 1:
        return _base_value(key)
    if len(js) >= 2:
        return _reduce_smallest(key, store)
    # admissibility with beta > 1 and at most one interior constraint
    # forces k >= 2, so the boundary reduction always applies here
    assert k >= 2, key
    return _reduce_boundary(key, store)


def _base_value(key: OpenKey) -> Fraction:
    """Degree-1 seeds, fixed by the choice of spin structure and orientation.

    The admissible degree-1 keys with l <= 1 are exactly (k, l) = (2, 0),
    (1, 1) with exponent (n+1)/2, and (0, 1) with exponent n.
    """
    n, beta, k, js = key
    if (k, len(js)) == (2, 0):
        return Fraction(2)
    if (k, len(js)) == (1, 1):
        assert js[0] * 2 == n + 1, key
        return Fraction(0)
    if (k, len(js)) == (0, 1):
        assert js[0] == n, key
        return Fraction(-1 if ((n + 3) // 2) % 2 else 1)
    raise AssertionError(f"inadmissible degree-1 key reached evaluation: {key}")


def _sphere_sign(n: int, bhat: int) -> int:
    # sign carried by a degree-bhat sphere bubble: (-1)^((n+1)/2 * bhat)
    return -1 if (((n + 1) // 2) * bhat) % 2 else 1


def _term(n: int, beta: int, k: int, items, store: MemoStore) -> Fraction:
    """ogwb on a generated insertion list; exponents beyond n are the zero class."""
    if any(j < 0 or j > n for j in items):
        return Fraction(0)
    coeff, key = normalize(n, beta, k, items)
    if key is None:
        return coeff
    return coeff * _eval_key(key, store)


def _reduce_smallest(key: OpenKey, store: MemoStore, pos1: int = None, pos2: int = None) -> Fraction:
    """Interior reduction: lower one exponent by one, raise another by one.

    By default the smallest exponent is lowered and the largest raised,
    which makes the sorted interior tuple strictly decrease; the optional
    positions let the verification module re-derive the value from any
    ordered pair of roles.  Correction terms: sphere bubbles of degree
    bhat >= 1 glued to a disk of degree beta - 2 bhat (with the bubble
    sign), and boundary splittings into two disks.  Splittings with a
    degree-0 disk factor die by the zero axiom since the omega powers have
    no relative part; they are summed anyway for faithfulness to the
    identity, at negligible cost.
    """
    n, beta, k, js = key
    l = len(js)
    if pos1 is None:
        j1, j2 = js[0], js[-1]
        spectators = js[1:-1]
    else:
        j1, j2 = js[pos1], js[pos2]
        spectators = tuple(js[p] for p in range(l) if p not in (pos1, pos2))

    total = _term(n, beta, k, (j1 - 1, j2 + 1) + spectators, store)

    for bhat in range(1, beta // 2 + 1):
        b1 = beta - 2 * bhat
        sign = _sphere_sign(n, bhat)
        for chosen, rest, weight in sub_multisets(spectators):
            for i in range(n + 1):
                g = gw_closed(n, bhat, (1, j2) + chosen + (i,), store)
                if g:
                    total += sign * weight * g * _term(n, b1, k, (n - i, j1 - 1) + rest, store)
                g = gw_closed(n, bhat, (1, j1 - 1) + chosen + (i,), store)
                if g:
                    total -= sign * weight * g * _term(n, b1, k, (n - i, j2) + rest, store)

    for b1 in range(beta + 1):
        b2 = beta - b1
        for k1 in range(k + 1):
            k2 = k - k1
            c = binomial(k, k1)
            for chosen, rest, weight in sub_multisets(spectators):
                w = c * weight
                f = _term(n, b1, k1, (1, j1 - 1) + chosen, store)
                if f:
                    total += w * f * _term(n, b2, k2 + 1, (j2,) + rest, store)
                f = _term(n, b1, k1, (1, j2) + chosen, store)
                if f:
                    total -= w * f * _term(n, b2, k2 + 1, (j1 - 1,) + rest, store)
    return total


def _reduce_boundary(key: OpenKey, store: MemoStore) -> Fraction:
    """Boundary reduction: express ogwb_{beta,k} through degree beta + 1 data.

    Obtained from the second open WDVV identity in the directions
    (Gamma_1, Gamma_n) at two boundary derivatives fewer; the two boundary
    points removed on the left reappear as the disk-disk splittings on the
    right.  The s-derivative Leibniz weight is C(k-2, k1) with
    k1 + k2 = k - 2.
    """
    n, beta, k, js = key
    sign_front = -1 if ((n + 3) // 2) % 2 else 1
    total = Fraction(0)

    for bhat in range(1, (beta + 1) // 2 + 1):
        b1 = beta + 1 - 2 * bhat
        sign = _sphere_sign(n, bhat)
        for chosen, rest, weight in sub_multisets(js):
            for i in range(n + 1):
                g = gw_closed(n, bhat, (1, n) + chosen + (i,), store)
                if g:
                    total += sign * weight * g * _term(n, b1, k - 1, (n - i,) + rest, store)

    for b1 in range(2, beta + 1):
        b2 = beta + 1 - b1
        for k1 in range(k - 1):
            k2 = k - 2 - k1
            c = binomial(k - 2, k1)
            for chosen, rest, weight in sub_multisets(js):
                f = _term(n, b1, k1, (1, n) + chosen, store)
                if f:
                    total -= c * weight * f * _term(n, b2, k2 + 2, rest, store)

    for b1 in range(1, beta + 1):
        b2 = beta + 1 - b1
        for k1 in range(k - 1):
            k2 = k - 2 - k1
            c = binomial(k - 2, k1)
            for chosen, rest, weight in sub_multisets(js):
                f = _term(n, b1, k1 + 1, (1,) + chosen, store)
                if f:
                    total += c * weight * f * _term(n, b2, k2 + 1, (n,) + rest, store)

    return sign_front * 2 * total
