import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubv.stats import inv_norm_cdf, norm_cdf, upper_tail_quantile

import oracles


def test_known_quantiles():
    assert inv_norm_cdf(0.5) == pytest.approx(0.0, abs=1e-12)
    assert upper_tail_quantile(0.025) == pytest.approx(1.959963984540054, abs=1e-9)
    assert inv_norm_cdf(0.05) == pytest.approx(-1.6448536269514722, abs=1e-9)


def test_matches_bisection_oracle_within_spec_accuracy():
    grid = np.concatenate([
        np.linspace(1e-6, 1.0 - 1e-6, 999),
        [1e-9, 1e-12, 0.02425, 0.97575, 0.5],
    ])
    worst = max(abs(inv_norm_cdf(float(p)) - oracles.bisect_inv_norm_cdf(float(p)))
                for p in grid)
    assert worst <= 1.2e-9


@given(st.floats(min_value=1e-9, max_value=1.0 - 1e-9))
@settings(max_examples=200, deadline=None)
def test_round_trip_through_cdf(p):
    assert norm_cdf(inv_norm_cdf(p)) == pytest.approx(p, abs=1e-12)


@given(st.floats(min_value=1e-6, max_value=0.5 - 1e-6))
@settings(max_examples=100, deadline=None)
def test_symmetry(p):
    # 1 - p rounds for tiny p, which moves the tail quantile by up to ~1e-10
    assert inv_norm_cdf(p) == pytest.approx(-inv_norm_cdf(1.0 - p), abs=1e-9)


def test_monotone():
    ps = np.linspace(1e-4, 1 - 1e-4, 500)
    zs = [inv_norm_cdf(float(p)) for p in ps]
    assert all(a < b for a, b in zip(zs, zs[1:]))


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.1])
def test_rejects_out_of_range(p):
    with pytest.raises(ValueError):
        inv_norm_cdf(p)
