import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picod.errors import InvalidInputError
from picod.instance import (
    PicodInstance,
    bounded_gamma_instance,
    bucket_thresholds,
    complete_two_uniform,
    gamma,
    kappa_of,
    load,
    random_instance,
    save,
)

from conftest import tiny_instances


def gamma_by_sets(inst):
    """Pairwise set intersection, no numpy."""
    sets = [set(e) for e in inst.edges]
    deg = [sum(1 for j, f in enumerate(sets) if j != i and e & f) for i, e in enumerate(sets)]
    return max(deg, default=0), deg


def test_pentagon_gamma(pent):
    assert gamma(pent).gamma == 2


def test_single_edge_gamma():
    assert gamma(PicodInstance(3, [[0, 1, 2]])).gamma == 0


def test_complete_two_uniform_gamma():
    prof = gamma(complete_two_uniform(5))
    assert prof.gamma == 6
    assert set(prof.per_edge_degree) == {2 * (5 - 2)}


@pytest.mark.parametrize("m,n", [(3, 3), (5, 10), (10, 45)])
def test_complete_two_uniform_size(m, n):
    inst = complete_two_uniform(m)
    assert inst.n == n
    assert all(len(e) == 2 for e in inst.edges)


def test_complete_two_uniform_m3_edges():
    assert complete_two_uniform(3).edges == ((0, 1), (0, 2), (1, 2))


def test_complete_two_uniform_rejects_small():
    with pytest.raises(InvalidInputError):
        complete_two_uniform(1)


def test_edges_canonicalized():
    inst = PicodInstance(4, [[3, 1, 1], [2, 0]])
    assert inst.edges == ((1, 3), (0, 2))
    assert inst.side_information(0) == (0, 2)


def test_duplicate_edges_kept():
    inst = PicodInstance(3, [[0, 1], [1, 0]])
    assert inst.n == 2
    assert inst.unique_edges() == ((0, 1),)
    # each duplicate receiver counts as a distinct intersecting edge
    assert gamma(inst).gamma == 1


def test_random_instance_deterministic():
    a = random_instance(8, 8, (4, 4), seed=1)
    b = random_instance(8, 8, (4, 4), seed=1)
    assert a == b
    assert a.n == 8 and all(len(e) == 4 for e in a.edges)


def test_random_instance_range():
    inst = random_instance(20, 50, (2, 5), seed=7)
    assert all(2 <= len(e) <= 5 for e in inst.edges)


def test_random_instance_infeasible():
    with pytest.raises(InvalidInputError):
        random_instance(5, 3, (6, 6), seed=0)


def test_roundtrip(tmp_path, ex2):
    p = tmp_path / "i.json"
    save(ex2, p)
    assert load(p) == ex2
    assert json.loads(p.read_text()) == {"m": 8, "edges": [list(e) for e in ex2.edges]}


def test_load_empty_edge(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"m": 3, "edges": [[0, 1], []]}')
    with pytest.raises(InvalidInputError, match="empty edge at index 1"):
        load(p)


def test_load_out_of_range(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"m": 3, "edges": [[0, 3]]}')
    with pytest.raises(InvalidInputError, match="label out of range"):
        load(p)


def test_load_malformed(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"m": 3, "edges": [[0, 1]')
    with pytest.raises(InvalidInputError, match="malformed"):
        load(p)


def test_kappa_and_thresholds():
    assert kappa_of(2) is None and kappa_of(math.e) is None
    k = kappa_of(20)
    assert k == pytest.approx(4.9915, abs=1e-4)
    thr = bucket_thresholds(k)
    assert len(thr) == math.ceil(math.log(k)) + 1
    assert thr[0] / 2 <= 3 < thr[0]


@settings(max_examples=60, deadline=None)
@given(tiny_instances(max_m=7, max_n=8))
def test_gamma_matches_set_oracle(inst):
    g, deg = gamma_by_sets(inst)
    prof = gamma(inst)
    assert prof.gamma == g
    assert list(prof.per_edge_degree) == deg
    assert prof.gamma <= inst.n - 1


@settings(max_examples=40, deadline=None)
@given(tiny_instances(max_m=7, max_n=8), st.randoms(use_true_random=False))
def test_gamma_invariant_under_relabeling(inst, rnd):
    perm = list(range(inst.m))
    rnd.shuffle(perm)
    order = list(range(inst.n))
    rnd.shuffle(order)
    other = PicodInstance(inst.m, [[perm[v] for v in inst.edges[r]] for r in order])
    assert gamma(other).gamma == gamma(inst).gamma


@pytest.mark.parametrize("target", [0, 3, 8, 40])
def test_bounded_gamma_instance(target):
    inst = bounded_gamma_instance(30, target, (2, 5), seed=target)
    assert gamma(inst).gamma <= target
    assert inst == bounded_gamma_instance(30, target, (2, 5), seed=target)


def test_gamma_numpy_and_sets_agree_large():
    inst = random_instance(60, 200, (2, 6), seed=3)
    assert gamma(inst).gamma == gamma_by_sets(inst)[0]
    assert np.all(np.array(gamma(inst).per_edge_degree) <= inst.n - 1)
