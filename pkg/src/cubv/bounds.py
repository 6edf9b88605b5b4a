"""Concentration machinery and the upper-bound validation decision rule.

The decision statistic adds a PAC-Bayes dropout deviation to the pooled CV
error and rejects "no effect" when the corrected risk stays at or below the
worst-case confidence level eta (0.5 by default). The bounded-differences
(McDiarmid) radius is computed alongside for reporting but does not enter
the decision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .linmodel import LinearModel
from .validate import CvOutcome


@dataclass(frozen=True)
class BoundConfig:
    eta: float = 0.5
    dropout_delta: float = 0.5
    lambda_lower: float = 0.5 + 1e-6
    lambda_upper: float = 1e6
    lambda_tol: float = 1e-9

    def __post_init__(self) -> None:
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie in (0, 1)")
        if not 0.0 <= self.dropout_delta <= 1.0:
            raise ValueError("dropout_delta must lie in [0, 1]")
        if self.lambda_lower <= 0.5:
            raise ValueError("lambda search must start strictly above 0.5")
        if self.lambda_upper <= self.lambda_lower:
            raise ValueError("empty lambda search interval")
        if self.lambda_tol <= 0:
            raise ValueError("lambda_tol must be positive")


@dataclass(frozen=True)
class BoundReport:
    empirical_risk: float
    kl_value: float
    delta_bound: float
    corrected_risk: float
    lambda_star: float
    mcdiarmid_term: float
    detect: bool
    n_samples: int
    eta: float
    dropout_delta: float

    def to_json_dict(self) -> dict:
        return {
            "empirical_risk": self.empirical_risk,
            "kl_value": self.kl_value,
            "delta_bound": self.delta_bound,
            "corrected_risk": self.corrected_risk,
            "lambda_star": self.lambda_star,
            "mcdiarmid_term": self.mcdiarmid_term,
            "detect": self.detect,
            "n_samples": self.n_samples,
            "eta": self.eta,
            "dropout_delta": self.dropout_delta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def mcdiarmid_term(n_samples: int, eta: float) -> float:
    """sqrt(ln(1/eta) / 2N): the bounded-differences deviation radius."""
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    return math.sqrt(math.log(1.0 / eta) / (2.0 * n_samples))


def kl_linear_dropout(model: LinearModel, dropout_delta: float) -> float:
    """KL from the dropout posterior to the uniform prior: (1-delta)/2 * ||w||^2."""
    if not 0.0 <= dropout_delta <= 1.0:
        raise ValueError("dropout_delta must lie in [0, 1]")
    norm_sq = float(model.omega @ model.omega)
    if not math.isfinite(norm_sq):
        raise ValueError("model weights must be finite")
    return 0.5 * (1.0 - dropout_delta) * norm_sq


def golden_section_minimize(fn, lower: float, upper: float, tol: float,
                            max_iter: int = 500) -> tuple[float, float]:
    """Deterministic golden-section search for a unimodal function."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lower, upper
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fn(d)
    x = c if fc < fd else d
    return x, fn(x)


def pac_bayes_delta(empirical_risk: float, n_samples: int, kl: float, eta: float,
                    lambda_lower: float = 0.5 + 1e-6, lambda_upper: float = 1e6,
                    lambda_tol: float = 1e-9) -> tuple[float, float]:
    """Minimized PAC-Bayes deviation and its minimizer.

    delta(lambda) = (R_hat + (2 lambda^2 / N)(KL + ln(1/eta))) / (2 lambda - 1),
    minimized over the open-below search interval by golden section. The
    objective is unimodal on (1/2, inf): its only stationary point solves
    B lambda^2 - B lambda - R_hat = 0 with B = (2/N)(KL + ln(1/eta)).
    """
    if not 0.0 <= empirical_risk <= 1.0:
        raise ValueError("empirical_risk must lie in [0, 1]")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    if kl < 0:
        raise ValueError("kl must be nonnegative")
    if not 0.0 < eta <= 1.0:
        raise ValueError("eta must lie in (0, 1]")
    complexity = (kl + math.log(1.0 / eta)) / n_samples

    def objective(lam: float) -> float:
        return (empirical_risk + 2.0 * lam * lam * complexity) / (2.0 * lam - 1.0)

    lam_star, value = golden_section_minimize(
        objective, lambda_lower, lambda_upper, lambda_tol)
    return value, lam_star


def cubv_test_from_parts(empirical_risk: float, n_samples: int,
                         model_full: LinearModel,
                         config: BoundConfig = BoundConfig()) -> BoundReport:
    """Upper-bound decision from an empirical risk and the full-sample model.

    ``empirical_risk`` is usually a pooled CV error; experiment drivers may
    pass the mean over fold reshuffles instead (the repetition strategy that
    stabilizes the estimate on small samples).
    """
    if model_full is None:
        raise ValueError("the decision rule needs the full-sample model")
    kl = kl_linear_dropout(model_full, config.dropout_delta)
    delta, lam_star = pac_bayes_delta(
        empirical_risk, n_samples, kl, config.eta,
        config.lambda_lower, config.lambda_upper, config.lambda_tol)
    corrected = min(empirical_risk + delta, 1.0)
    return BoundReport(
        empirical_risk=empirical_risk,
        kl_value=kl,
        delta_bound=delta,
        corrected_risk=corrected,
        lambda_star=lam_star,
        mcdiarmid_term=mcdiarmid_term(n_samples, config.eta),
        detect=bool(corrected <= config.eta),
        n_samples=n_samples,
        eta=config.eta,
        dropout_delta=config.dropout_delta)


def cubv_test(cv: CvOutcome, config: BoundConfig = BoundConfig()) -> BoundReport:
    """Apply the upper-bound decision rule to a CV outcome.

    The KL term comes from the model trained on the full standardized sample;
    the empirical risk entering the bound is the pooled CV error.
    """
    return cubv_test_from_parts(cv.cv_error, cv.n_samples, cv.model_full, config)
