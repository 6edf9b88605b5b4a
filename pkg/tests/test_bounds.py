import math

import numpy as np
import pytest

from cubv.bounds import (BoundConfig, cubv_test, cubv_test_from_parts,
                         golden_section_minimize, kl_linear_dropout,
                         mcdiarmid_term, pac_bayes_delta)
from cubv.linmodel import LinearModel, TrainerConfig
from cubv.rng import make_rng
from cubv.synthgen import make_problem_spec, sample_dataset
from cubv.validate import cv_error

import oracles


def model_with(omega, bias=0.0):
    return LinearModel(omega=np.asarray(omega, dtype=float), bias=bias,
                       reg_c=1.0, converged=True, final_objective=0.0)


class TestMcdiarmid:
    def test_eta_one_limit(self):
        assert mcdiarmid_term(100, 1.0) == 0.0

    def test_spot_values(self):
        assert mcdiarmid_term(200, 0.05) == pytest.approx(0.08654, abs=1e-5)
        assert mcdiarmid_term(100, 0.5) == pytest.approx(0.05887, abs=1e-5)

    def test_sqrt_n_scaling(self):
        values = [mcdiarmid_term(n, 0.3) * math.sqrt(n) for n in (10, 100, 1000, 10000)]
        assert max(values) - min(values) <= 1e-12

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            mcdiarmid_term(0, 0.5)
        with pytest.raises(ValueError):
            mcdiarmid_term(10, 0.0)


class TestKlDropout:
    def test_full_dropout_zero(self):
        assert kl_linear_dropout(model_with([3.0, -4.0]), 1.0) == 0.0

    def test_zero_weights(self):
        assert kl_linear_dropout(model_with([0.0, 0.0]), 0.3) == 0.0

    def test_half_dropout(self):
        assert kl_linear_dropout(model_with([2.0, 0.0]), 0.5) == pytest.approx(1.0)

    def test_scales_with_norm(self):
        assert kl_linear_dropout(model_with([1.0, 1.0, 1.0, 1.0]), 0.0) \
            == pytest.approx(2.0)


class TestPacBayesDelta:
    def test_zero_numerator(self):
        delta, _ = pac_bayes_delta(0.0, 100, 0.0, 1.0)
        assert delta == pytest.approx(0.0, abs=1e-12)

    def test_matches_dense_grid(self):
        delta, lam = pac_bayes_delta(0.2, 100, 1.0, 0.5)
        grid_delta, grid_lam = oracles.pac_bayes_grid_delta(0.2, 100, 1.0, 0.5)
        assert delta == pytest.approx(grid_delta, abs=1e-4)
        assert lam == pytest.approx(grid_lam, abs=1e-3)

    def test_dense_grid_on_random_draws(self):
        rng = make_rng(31)
        worst = 0.0
        for _ in range(100):
            risk = float(rng.uniform(0.0, 1.0))
            kl = float(rng.uniform(0.0, 5.0))
            eta = float(rng.uniform(0.05, 0.9))
            n = int(rng.integers(10, 1000))
            delta, _ = pac_bayes_delta(risk, n, kl, eta)
            grid_delta, _ = oracles.pac_bayes_grid_delta(risk, n, kl, eta)
            worst = max(worst, abs(delta - grid_delta))
        assert worst <= 1e-8

    def test_monotone_in_n(self):
        hi, _ = pac_bayes_delta(0.3, 100, 0.5, 0.5)
        lo, _ = pac_bayes_delta(0.3, 1000, 0.5, 0.5)
        assert lo < hi

    def test_monotone_lattice(self):
        risks = np.linspace(0.0, 0.9, 5)
        kls = np.linspace(0.0, 4.0, 5)
        etas = np.linspace(0.08, 0.9, 5)
        ns = (10, 30, 100, 300, 1000)
        for risk in risks:
            for eta in etas:
                for n in ns:
                    deltas = [pac_bayes_delta(risk, n, kl, eta)[0] for kl in kls]
                    assert all(b >= a - 1e-12 for a, b in zip(deltas, deltas[1:]))
        for risk in risks:
            for kl in kls:
                for n in ns:
                    # ln(1/eta) grows as eta shrinks
                    deltas = [pac_bayes_delta(risk, n, kl, eta)[0]
                              for eta in sorted(etas, reverse=True)]
                    assert all(b >= a - 1e-12 for a, b in zip(deltas, deltas[1:]))
        for risk in risks:
            for kl in kls:
                for eta in etas:
                    deltas = [pac_bayes_delta(risk, n, kl, eta)[0] for n in ns]
                    assert all(b <= a + 1e-12 for a, b in zip(deltas, deltas[1:]))

    def test_golden_section_on_parabola(self):
        x, v = golden_section_minimize(lambda t: (t - 2.5) ** 2 + 1.0, 0.6, 100.0, 1e-9)
        assert x == pytest.approx(2.5, abs=1e-6)
        assert v == pytest.approx(1.0, abs=1e-12)


class TestCubvDecision:
    def test_detect_composition(self):
        model = model_with([0.5, 0.5])
        report = cubv_test_from_parts(0.1, 200, model, BoundConfig())
        delta, lam = pac_bayes_delta(0.1, 200, kl_linear_dropout(model, 0.5), 0.5)
        assert report.delta_bound == delta
        assert report.lambda_star == lam
        assert report.corrected_risk == pytest.approx(0.1 + delta)
        assert report.detect == (report.corrected_risk <= 0.5)
        assert report.detect  # small risk, small norm: detection fires

    def test_no_detect_when_corrected_exceeds_eta(self):
        model = model_with([0.5, 0.5])
        report = cubv_test_from_parts(0.45, 200, model, BoundConfig())
        assert report.corrected_risk > 0.5
        assert not report.detect

    def test_corrected_risk_clipped_and_bounded_below(self):
        model = model_with([4.0, 0.0])
        report = cubv_test_from_parts(0.9, 20, model, BoundConfig())
        assert report.corrected_risk <= 1.0
        assert report.corrected_risk >= report.empirical_risk

    def test_report_echoes_config(self):
        config = BoundConfig(eta=0.4, dropout_delta=0.2)
        model = model_with([1.0])
        report = cubv_test_from_parts(0.2, 50, model, config)
        assert report.eta == 0.4
        assert report.dropout_delta == 0.2
        assert report.mcdiarmid_term == mcdiarmid_term(50, 0.4)

    def test_full_pipeline_on_separated_data(self):
        spec = make_problem_spec(dimension=2, cohens_d=4.0, seed=40)
        data = sample_dataset(spec, 200, seed=41)
        outcome = cv_error(data, 10, seed=42, trainer=TrainerConfig(tol=1e-6))
        report = cubv_test(outcome, BoundConfig())
        assert report.empirical_risk == outcome.cv_error
        assert report.detect
        assert report.n_samples == 200

    def test_missing_model_rejected(self):
        with pytest.raises(ValueError):
            cubv_test_from_parts(0.1, 100, None, BoundConfig())

    def test_config_validation(self):
        with pytest.raises(ValueError):
            BoundConfig(eta=0.0)
        with pytest.raises(ValueError):
            BoundConfig(dropout_delta=1.5)
        with pytest.raises(ValueError):
            BoundConfig(lambda_lower=0.5)

    def test_report_json_round_trip(self):
        import json
        model = model_with([1.0, 2.0])
        report = cubv_test_from_parts(0.25, 80, model, BoundConfig())
        payload = json.loads(report.to_json())
        assert payload["empirical_risk"] == 0.25
        assert payload["detect"] == report.detect
        assert payload["n_samples"] == 80
