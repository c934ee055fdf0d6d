"""Independent consistency checks for the closed and open solvers.

The recursions in closed.py and open_gw.py each use one distinguished
specialization of an associativity identity.  The identities themselves
are far stronger: they hold for every choice of directions, degrees and
spectator insertions, with the sphere-level sums taken over all degree
splits including the endpoint terms the solvers extract symbolically.
This module evaluates those full identities on demand, so a systematic
error in the solver conventions (signs, Leibniz weights, split ranges)
would surface as a violated identity rather than silently wrong tables.

Also here: re-derivation of memoized open values from every alternative
choice of reduction roles, and the dyadic-denominator sweep (every open
invariant is an integer divided by a power of two).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .closed import gw_closed
from .kernel import MemoStore, OpenKey, binomial, resolve_store, sub_multisets
from .open_gw import _eval_key, _reduce_smallest, _sphere_sign, _term, normalize, ogwb

__all__ = [
    "OpenWdvvInstance",
    "check_closed_exchange",
    "check_open_exchange",
    "check_open_boundary",
    "check_alt_reduction",
    "check_dyadic",
    "enumerate_canonical_keys",
    "sample_closed_instances",
    "sample_open_exchange_instances",
    "sample_open_boundary_instances",
]


# ---------------------------------------------------------------------------
# closed WDVV


def _quadratic(n, d, p, q, r, s, spectators, store) -> Fraction:
    """F(pq|rs): sum over degree splits and the diagonal class of CP^n.

    The Poincare pairing couples Delta_i to Delta_{n-i}; degree-0 factors
    contribute the triple cup products, so no term is special-cased.
    """
    total = Fraction(0)
    for d1 in range(d + 1):
        d2 = d - d1
        for s1, s2, weight in sub_multisets(spectators):
            for i in range(n + 1):
                g = gw_closed(n, d1, (p, q, i) + s1, store)
                if g:
                    total += weight * g * gw_closed(n, d2, (n - i, r, s) + s2, store)
    return total


def check_closed_exchange(n, d, e1, e2, e3, e4, spectators=(), store=None) -> bool:
    """Associativity: F(e1 e2 | e3 e4) = F(e1 e3 | e2 e4)."""
    store = resolve_store(store)
    spectators = tuple(spectators)
    lhs = _quadratic(n, d, e1, e2, e3, e4, spectators, store)
    rhs = _quadratic(n, d, e1, e3, e2, e4, spectators, store)
    return lhs == rhs


# ---------------------------------------------------------------------------
# open WDVV


@dataclass(frozen=True)
class OpenWdvvInstance:
    n: int
    u: int
    v: int
    w: int
    beta: int
    k: int
    spectators: tuple = field(default=())


def _exchange_side(n, u, v, w, beta, k, spectators, store) -> Fraction:
    """One side of the first open WDVV identity, before the u <-> v swap.

    Sphere-disk part: all bubble degrees bhat >= 0, the diagonal class,
    and every spectator split; disk-disk part: all degree and boundary
    splits with Leibniz weight C(k, k1), the extra boundary derivative
    sitting with the u factor.
    """
    total = Fraction(0)
    for bhat in range(beta // 2 + 1):
        b1 = beta - 2 * bhat
        sign = _sphere_sign(n, bhat)
        for chosen, rest, weight in sub_multisets(spectators):
            for i in range(n + 1):
                g = gw_closed(n, bhat, (i, w, v) + chosen, store)
                if g:
                    total += sign * weight * g * _term(n, b1, k, (u, n - i) + rest, store)
    for b1 in range(beta + 1):
        b2 = beta - b1
        for k1 in range(k + 1):
            k2 = k - k1
            c = binomial(k, k1)
            for chosen, rest, weight in sub_multisets(spectators):
                f = _term(n, b1, k1 + 1, (u,) + chosen, store)
                if f:
                    total -= c * weight * f * _term(n, b2, k2, (w, v) + rest, store)
    return total


def check_open_exchange(instance: OpenWdvvInstance, store=None) -> bool:
    """First open WDVV identity: the side expression is symmetric in u <-> v."""
    store = resolve_store(store)
    i = instance
    lhs = _exchange_side(i.n, i.u, i.v, i.w, i.beta, i.k, tuple(i.spectators), store)
    rhs = _exchange_side(i.n, i.v, i.u, i.w, i.beta, i.k, tuple(i.spectators), store)
    return lhs == rhs


def check_open_boundary(n, v, w, beta, k, spectators=(), store=None) -> bool:
    """Second open WDVV identity (the boundary-direction one).

    sum_{i, bhat >= 0} sign(bhat) GW_bhat(i, w, v, I1) ogwb_{b1, k+1}(n-i, I2)
      - sum C(k, k1) ogwb_{b1, k1+2}(I1) ogwb_{b2, k2}(w, v, I2)
      + sum C(k, k1) ogwb_{b1, k1+1}(w, I1) ogwb_{b2, k2+1}(v, I2)  =  0.
    """
    store = resolve_store(store)
    spectators = tuple(spectators)
    total = Fraction(0)
    for bhat in range(beta // 2 + 1):
        b1 = beta - 2 * bhat
        sign = _sphere_sign(n, bhat)
        for chosen, rest, weight in sub_multisets(spectators):
            for i in range(n + 1):
                g = gw_closed(n, bhat, (i, w, v) + chosen, store)
                if g:
                    total += sign * weight * g * _term(n, b1, k + 1, (n - i,) + rest, store)
    for b1 in range(beta + 1):
        b2 = beta - b1
        for k1 in range(k + 1):
            k2 = k - k1
            c = binomial(k, k1)
            for chosen, rest, weight in sub_multisets(spectators):
                f = _term(n, b1, k1 + 2, chosen, store)
                if f:
                    total -= c * weight * f * _term(n, b2, k2, (w, v) + rest, store)
                f = _term(n, b1, k1 + 1, (w,) + chosen, store)
                if f:
                    total += c * weight * f * _term(n, b2, k2 + 1, (v,) + rest, store)
    return total == 0


# ---------------------------------------------------------------------------
# alternative reductions and denominator sweep


def check_alt_reduction(n, beta, k, interior, store=None) -> bool:
    """Re-derive a memoized value from every ordered pair of reduction roles.

    The interior reduction is valid for any choice of which exponent is
    lowered and which is raised, not just the (min, max) pair the solver
    uses; all l(l-1) role assignments must reproduce the stored value.
    """
    store = resolve_store(store)
    coeff, key = normalize(n, beta, k, interior)
    if key is None:
        return True
    l = len(key.interior)
    if l < 2:
        return True
    expected = _eval_key(key, store)
    for p in range(l):
        for q in range(l):
            if p == q:
                continue
            if _reduce_smallest(key, store, pos1=p, pos2=q) != expected:
                return False
    return True


def enumerate_canonical_keys(n, max_beta) -> list:
    """All admissible canonical open keys with 1 <= beta <= max_beta.

    For fixed (n, beta) the degree axiom reads
      k (n-1) + 2 sum (j_i - 1) = n - 3 + (n+1) beta,
    so the keys correspond to partitions of the residual weight into parts
    j - 1 in [1, n-1].
    """
    keys = []
    for beta in range(1, max_beta + 1):
        budget = n - 3 + (n + 1) * beta
        k = 0
        while k * (n - 1) <= budget:
            residue = budget - k * (n - 1)
            if residue % 2 == 0:
                for parts in _partitions(residue // 2, n - 1):
                    interior = tuple(sorted(p + 1 for p in parts))
                    keys.append(OpenKey(n, beta, k, interior))
            k += 1
    return keys


def _partitions(total, max_part):
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def check_dyadic(n, max_beta, store=None) -> list:
    """Evaluate every admissible canonical key and collect non-dyadic values.

    Returns a list of (key, value) pairs whose denominator has an odd
    prime factor; expected to be empty.
    """
    store = resolve_store(store)
    violations = []
    for key in enumerate_canonical_keys(n, max_beta):
        value = _eval_key(key, store)
        den = value.denominator
        if den & (den - 1):
            violations.append((key, value))
    return violations


# ---------------------------------------------------------------------------
# seeded instance samplers
#
# The identities hold for arbitrary instances, but a random tuple usually
# fails the grading constraint linking the directions to (beta, k), making
# every term vanish.  The samplers solve the grading for one direction so
# that the checked equations have content.


def sample_closed_instances(count, seed, n_max=5, d_max=3):
    """Exchange instances with sum(e) + sum(S) = n + (n+1) d + |S|."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, n_max)
        d = rng.randint(0, d_max)
        ls = rng.randint(0, 3)
        spectators = tuple(rng.randint(1, n) for _ in range(ls))
        e = [rng.randint(0, n) for _ in range(3)]
        e4 = n + (n + 1) * d + ls - sum(spectators) - sum(e)
        if 0 <= e4 <= n:
            out.append((n, d, e[0], e[1], e[2], e4, spectators))
    return out


def sample_open_exchange_instances(count, seed, n, beta_max=4):
    """Instances with n + 1 + (n+1) beta + k + 2|I| = kn + 2(u+v+w) + 2 sum I."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        beta = rng.randint(1, beta_max)
        k = rng.randint(0, 3)
        ls = rng.randint(0, 2)
        spectators = tuple(rng.randint(0, n) for _ in range(ls))
        v = rng.randint(0, n)
        w = rng.randint(0, n)
        lhs = n + 1 + (n + 1) * beta + k + 2 * ls
        rhs_known = k * n + 2 * (v + w) + 2 * sum(spectators)
        twice_u = lhs - rhs_known
        if twice_u % 2 == 0 and 0 <= twice_u // 2 <= n:
            out.append(OpenWdvvInstance(n, twice_u // 2, v, w, beta, k, spectators))
    return out


def sample_open_boundary_instances(count, seed, n, beta_max=4):
    """Instances with (n+1) beta + k + 2|I| = kn + 2(v+w) + 2 sum I."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        beta = rng.randint(1, beta_max)
        k = rng.randint(0, 3)
        ls = rng.randint(0, 2)
        spectators = tuple(rng.randint(0, n) for _ in range(ls))
        v = rng.randint(0, n)
        lhs = (n + 1) * beta + k + 2 * ls
        rhs_known = k * n + 2 * v + 2 * sum(spectators)
        twice_w = lhs - rhs_known
        if twice_w % 2 == 0 and 0 <= twice_w // 2 <= n:
            out.append((n, v, twice_w // 2, beta, k, spectators))
    return out
