"""The identity checkers must accept everything the solvers produce.

These tests exercise the full associativity identities (with the closed
degree-0 terms the solvers extract symbolically), the alternative
reduction roles, and the dyadic-denominator sweep.
"""

from fractions import Fraction

import pytest

from gwcalc import MemoStore, OpenKey
from gwcalc.verify import (
    OpenWdvvInstance,
    check_alt_reduction,
    check_closed_exchange,
    check_dyadic,
    check_open_boundary,
    check_open_exchange,
    enumerate_canonical_keys,
    sample_closed_instances,
    sample_open_boundary_instances,
    sample_open_exchange_instances,
)


def test_closed_exchange_spot(store):
    assert check_closed_exchange(3, 1, 2, 2, 2, 2, (2,), store)
    assert check_closed_exchange(3, 2, 3, 3, 2, 2, (2, 2), store)
    assert check_closed_exchange(2, 2, 1, 2, 2, 2, (2,), store)
    # degenerate directions are allowed
    assert check_closed_exchange(3, 1, 0, 0, 3, 3, (2, 2), store)


def test_closed_exchange_sampled(store):
    instances = sample_closed_instances(60, seed=17, n_max=5, d_max=3)
    assert len(instances) == 60
    for n, d, e1, e2, e3, e4, spectators in instances:
        assert check_closed_exchange(n, d, e1, e2, e3, e4, spectators, store)


def test_closed_sampler_nontrivial():
    # the sampler solves the grading, so the quadratic sums have content
    for n, d, e1, e2, e3, e4, spectators in sample_closed_instances(40, seed=3):
        assert sum((e1, e2, e3, e4)) + sum(spectators) == n + (n + 1) * d + len(spectators)


def test_open_exchange_spot(store):
    assert check_open_exchange(OpenWdvvInstance(3, 1, 1, 3, 2, 0), store)
    assert check_open_exchange(OpenWdvvInstance(3, 2, 2, 2, 2, 1), store)
    assert check_open_exchange(OpenWdvvInstance(3, 3, 1, 2, 3, 2, (2,)), store)
    assert check_open_exchange(OpenWdvvInstance(5, 3, 4, 3, 2, 1), store)


def test_open_boundary_spot(store):
    # worked instance: all three groups of terms contribute
    assert check_open_boundary(3, 1, 3, 2, 0, (), store)
    assert check_open_boundary(3, 2, 3, 3, 1, (), store)
    assert check_open_boundary(3, 3, 2, 2, 2, (2,), store)
    assert check_open_boundary(5, 2, 4, 3, 0, (), store)


@pytest.mark.parametrize("n", [3, 5])
def test_open_identities_sampled(n, store):
    for inst in sample_open_exchange_instances(25, seed=101, n=n, beta_max=3):
        assert check_open_exchange(inst, store), inst
    for nn, v, w, beta, k, spectators in sample_open_boundary_instances(25, seed=102, n=n, beta_max=3):
        assert check_open_boundary(nn, v, w, beta, k, spectators, store), (v, w, beta, k, spectators)


def test_interior_reduction_derivation_path(store):
    # the instances whose extraction yields the interior reduction:
    # directions (u, v, w) = (j2, j1 - 1, 1) around a canonical key
    for key in enumerate_canonical_keys(3, 3):
        if len(key.interior) < 2:
            continue
        js = key.interior
        inst = OpenWdvvInstance(key.n, js[-1], js[0] - 1, 1, key.beta, key.k, js[1:-1])
        assert check_open_exchange(inst, store), key


def test_enumerate_canonical_keys():
    assert enumerate_canonical_keys(3, 0) == []
    beta1 = [k for k in enumerate_canonical_keys(3, 1)]
    assert set(beta1) == {
        OpenKey(3, 1, 0, (2, 2)),
        OpenKey(3, 1, 0, (3,)),
        OpenKey(3, 1, 1, (2,)),
        OpenKey(3, 1, 2, ()),
    }
    for key in enumerate_canonical_keys(5, 3):
        n, beta, k, js = key
        assert n - 3 + (n + 1) * beta + k + 2 * len(js) == k * n + 2 * sum(js)
        assert all(2 <= j <= n for j in js)
        assert tuple(sorted(js)) == js


def test_alt_reduction_all_roles(store):
    for key in enumerate_canonical_keys(3, 3):
        assert check_alt_reduction(key.n, key.beta, key.k, key.interior, store), key
    # keys the reduction does not apply to are trivially consistent
    assert check_alt_reduction(3, 2, 4, (), store)
    assert check_alt_reduction(3, 1, 1, (0, 2), store)


def test_dyadic_denominators(store):
    assert check_dyadic(3, 4, store) == []
    values = [store.open_entries[key] for key in enumerate_canonical_keys(3, 4)]
    # the sweep actually evaluated everything, including non-integers
    assert any(v.denominator > 1 for v in values)


def test_open_samplers_hit_grading():
    for inst in sample_open_exchange_instances(30, seed=9, n=5):
        lhs = inst.n + 1 + (inst.n + 1) * inst.beta + inst.k + 2 * len(inst.spectators)
        rhs = inst.k * inst.n + 2 * (inst.u + inst.v + inst.w) + 2 * sum(inst.spectators)
        assert lhs == rhs
    for n, v, w, beta, k, spectators in sample_open_boundary_instances(30, seed=10, n=3):
        lhs = (n + 1) * beta + k + 2 * len(spectators)
        rhs = k * n + 2 * (v + w) + 2 * sum(spectators)
        assert lhs == rhs
