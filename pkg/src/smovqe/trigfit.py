"""Sinusoidal least squares on equidistant samples, and its shot-noise bias.

A single ansatz angle x moves the energy along an exact sinusoid

    f(x) = b_const + sqrt(2) * (b_cos * cos(x) + b_sin * sin(x)),

so three samples at offsets {0, +2pi/3, -2pi/3} determine it.  The scaled
basis [1, sqrt(2)cos, sqrt(2)sin] is orthogonal on equidistant grids, which
makes every fitted coefficient carry the same variance sigma_sq / 3 and makes
the fit plain averaging rather than a matrix solve.

Reusing the previous step's fitted minimum as the center sample makes the
carried estimate systematically low; `bias_estimate` evaluates the first-order
size of that error, -2 sigma_b^2 / amplitude.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError

SQRT2 = math.sqrt(2.0)
SQRT6 = math.sqrt(6.0)
TWO_PI = 2.0 * math.pi

#: Angular offsets of (center, plus, minus) samples.
FIT_OFFSETS = (0.0, TWO_PI / 3.0, -TWO_PI / 3.0)


class SnrRegime(enum.Enum):
    HIGH_SNR = "high_snr"
    LOW_SNR = "low_snr"


@dataclass(frozen=True)
class TrigFit:
    """Fitted single-harmonic landscape along one parameter axis."""

    b_const: float
    b_cos: float
    b_sin: float
    sigma_b_sq: float  # variance of each fitted coefficient
    amplitude: float   # peak-to-mean swing sqrt(2 b_cos^2 + 2 b_sin^2)
    theta_min: float   # absolute minimizer of the fitted curve, in [0, 2pi)
    f_min: float       # fitted minimum value b_const - amplitude


@dataclass(frozen=True)
class BiasEstimate:
    """First-order reuse bias of a fitted minimum."""

    value: float       # bias of the carried estimate; always <= 0
    snr: float         # amplitude / sigma_b
    regime: SnrRegime


def _finish_fit(b_const: float, b_cos: float, b_sin: float, sigma_sq: float) -> TrigFit:
    amplitude = math.sqrt(2.0 * (b_cos * b_cos + b_sin * b_sin))
    theta_min = (math.atan2(b_sin, b_cos) + math.pi) % TWO_PI
    return TrigFit(
        b_const=b_const,
        b_cos=b_cos,
        b_sin=b_sin,
        sigma_b_sq=sigma_sq / 3.0,
        amplitude=amplitude,
        theta_min=theta_min,
        f_min=b_const - amplitude,
    )


def fit_trig(
    f_center: float, f_plus: float, f_minus: float, sigma_sq: float
) -> TrigFit:
    """Interpolate the sinusoid through samples at offsets 0 and +-2pi/3.

    sigma_sq is the (pooled) per-sample variance; each coefficient inherits
    sigma_sq / 3.
    """
    if not sigma_sq >= 0.0:
        raise InvalidSpecError(f"sample variance must be >= 0, got {sigma_sq!r}")
    b_const = (f_center + f_plus + f_minus) / 3.0
    b_cos = SQRT2 / 3.0 * (f_center - (f_plus + f_minus) / 2.0)
    b_sin = (f_plus - f_minus) / SQRT6
    return _finish_fit(b_const, b_cos, b_sin, sigma_sq)


def minimizer(fit: TrigFit) -> float:
    """Absolute minimizer of the fitted curve (atan2(b_sin, b_cos) + pi)."""
    return fit.theta_min


def evaluate(fit: TrigFit, angle: float):
    """Fitted curve value at `angle` (broadcasts over arrays)."""
    return fit.b_const + SQRT2 * (
        fit.b_cos * np.cos(angle) + fit.b_sin * np.sin(angle)
    )


def propagate_offset(offset: float) -> tuple[float, float, float]:
    """Coefficient shift caused by adding `offset` to the center sample.

    Only the constant and cosine coefficients move: (offset/3,
    sqrt(2)*offset/3, 0).  The sine coefficient is blind to the center point.
    """
    return (offset / 3.0, SQRT2 * offset / 3.0, 0.0)


def shift_center_value(fit: TrigFit, offset: float) -> TrigFit:
    """Fit that would have resulted had the center sample been `offset` higher.

    Used to strip a deliberately injected center offset (de-regularization):
    the shift is exact because the fit is linear in its samples.
    """
    d_const, d_cos, d_sin = propagate_offset(offset)
    return _finish_fit(
        fit.b_const + d_const,
        fit.b_cos + d_cos,
        fit.b_sin + d_sin,
        3.0 * fit.sigma_b_sq,
    )


def bias_estimate(fit: TrigFit, snr_threshold: float = 1.0) -> BiasEstimate:
    """First-order reuse bias -2 sigma_b^2 / amplitude of the fitted minimum.

    Below `snr_threshold` the amplitude estimate is noise-dominated, so the
    denominator is clamped at sigma_b, bounding |bias| by 2 sigma_b.
    """
    sigma_b = math.sqrt(fit.sigma_b_sq)
    if sigma_b == 0.0:
        return BiasEstimate(value=0.0, snr=math.inf, regime=SnrRegime.HIGH_SNR)
    snr = fit.amplitude / sigma_b
    if snr >= snr_threshold:
        return BiasEstimate(
            value=-2.0 * fit.sigma_b_sq / fit.amplitude,
            snr=snr,
            regime=SnrRegime.HIGH_SNR,
        )
    return BiasEstimate(
        value=-2.0 * fit.sigma_b_sq / max(fit.amplitude, sigma_b),
        snr=snr,
        regime=SnrRegime.LOW_SNR,
    )


@dataclass(frozen=True)
class GeneralTrigFit:
    """Least-squares trig polynomial with n_harmonics frequencies."""

    b_const: float
    cos_coefs: np.ndarray  # coefficient of sqrt(2) cos(n x), n = 1..N
    sin_coefs: np.ndarray  # coefficient of sqrt(2) sin(n x), n = 1..N
    sigma_b_sq: float      # variance of each coefficient, sigma_sq / (2N+1)
    n_harmonics: int


def fit_trig_general(
    values: np.ndarray, n_harmonics: int, sigma_sq: float
) -> GeneralTrigFit:
    """Fit 2N+1 equidistant samples at offsets 2 pi j / (2N+1), j = 0..2N.

    The scaled trig basis stays orthogonal on this grid, so the solve is a
    projection: b = A^T f / (2N+1), with per-coefficient variance
    sigma_sq / (2N+1).  n_harmonics=1 reproduces `fit_trig` with samples
    ordered (center, plus, minus).
    """
    if n_harmonics < 1:
        raise InvalidSpecError(f"need at least one harmonic, got {n_harmonics}")
    if not sigma_sq >= 0.0:
        raise InvalidSpecError(f"sample variance must be >= 0, got {sigma_sq!r}")
    values = np.asarray(values, dtype=float)
    n_points = 2 * n_harmonics + 1
    if values.shape != (n_points,):
        raise InvalidSpecError(
            f"{n_harmonics} harmonics need {n_points} samples, got {values.shape}"
        )
    grid = TWO_PI * np.arange(n_points) / n_points
    orders = np.arange(1, n_harmonics + 1)
    b_const = float(values.sum() / n_points)
    cos_coefs = SQRT2 * np.cos(np.outer(orders, grid)) @ values / n_points
    sin_coefs = SQRT2 * np.sin(np.outer(orders, grid)) @ values / n_points
    return GeneralTrigFit(
        b_const=b_const,
        cos_coefs=cos_coefs,
        sin_coefs=sin_coefs,
        sigma_b_sq=sigma_sq / n_points,
        n_harmonics=n_harmonics,
    )


def evaluate_general(fit: GeneralTrigFit, angle):
    """Fitted trig polynomial at `angle` (broadcasts over arrays)."""
    angle = np.asarray(angle, dtype=float)
    orders = np.arange(1, fit.n_harmonics + 1)
    phases = np.multiply.outer(orders, angle)
    return fit.b_const + SQRT2 * (
        np.tensordot(fit.cos_coefs, np.cos(phases), axes=1)
        + np.tensordot(fit.sin_coefs, np.sin(phases), axes=1)
    )


def bias_estimate_general(
    fit: GeneralTrigFit, curvature: float, snr_threshold: float = 1.0
) -> BiasEstimate:
    """Reuse bias for an N-harmonic landscape: -(2 sigma_b^2 / R) * sum n^2.

    `curvature` plays the role the amplitude plays at N=1: the second
    derivative of the true landscape at its minimizer.
    """
    n = fit.n_harmonics
    harmonic_sum = n * (n + 1) * (2 * n + 1) / 6.0
    sigma_b = math.sqrt(fit.sigma_b_sq)
    if sigma_b == 0.0:
        return BiasEstimate(value=0.0, snr=math.inf, regime=SnrRegime.HIGH_SNR)
    snr = curvature / sigma_b
    if snr >= snr_threshold:
        denominator = curvature
        regime = SnrRegime.HIGH_SNR
    else:
        denominator = max(curvature, sigma_b)
        regime = SnrRegime.LOW_SNR
    return BiasEstimate(
        value=-2.0 * fit.sigma_b_sq * harmonic_sum / denominator,
        snr=snr,
        regime=regime,
    )
