import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from picod.instance import PicodInstance, complete_two_uniform, example2, example3, pentagon


def pytest_configure(config):
    config._acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        item.config._acceptance.append((mark.args, rep.outcome))


def pytest_terminal_summary(terminalreporter, config):
    rows = getattr(config, "_acceptance", [])
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for (tag, text), outcome in sorted(rows, key=lambda r: int(r[0][0].lstrip("AC"))):
        terminalreporter.write_line(f"{tag:<5} {'PASS' if outcome == 'passed' else 'FAIL'}  {text}")


@pytest.fixture
def pent():
    return pentagon()


@pytest.fixture
def ex2():
    return example2()


@pytest.fixture
def ex3():
    return example3()


@pytest.fixture
def k4():
    return complete_two_uniform(4)


@st.composite
def tiny_instances(draw, max_m=6, max_n=6, min_size=1, max_size=None):
    m = draw(st.integers(2, max_m))
    hi = m if max_size is None else min(m, max_size)
    lo = min(min_size, hi)
    n = draw(st.integers(1, max_n))
    edges = [
        draw(st.lists(st.integers(0, m - 1), min_size=lo, max_size=hi, unique=True))
        for _ in range(n)
    ]
    return PicodInstance(m, edges)


def all_scalar_colorings(m, L):
    return itertools.product(range(L), repeat=m)


def rng_instances(count, seed, m_range=(3, 8), n_range=(1, 10), size_range=(1, 4)):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        edges = []
        for _ in range(n):
            s = int(rng.integers(size_range[0], min(size_range[1], m) + 1))
            edges.append(rng.choice(m, size=s, replace=False).tolist())
        out.append(PicodInstance(m, edges))
    return out
