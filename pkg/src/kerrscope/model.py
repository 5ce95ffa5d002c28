"""Physical and scaled parameters of the driven, damped Kerr oscillator.

The physical picture uses the detuning ``delta``, the Kerr coefficient
``alpha``, the drive amplitude ``epsilon`` and the decay rate ``kappa``.
The closed-form steady state is expressed instead through the scaled
quantities ``omega = epsilon / sqrt(2s)`` and ``gamma = kappa / 2s``, where
``2s`` is the number of excitations in the underlying spin picture.
"""
from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass, field


class NonlinearSign(enum.Enum):
    """Sign of the ``a^dag^2 a^2`` term in the Hamiltonian.

    The value is the coefficient multiplying ``alpha``: attractive
    interactions enter with a minus sign, repulsive ones with a plus.
    """

    ATTRACTIVE = -1
    REPULSIVE = 1

    @classmethod
    def parse(cls, value: str | NonlinearSign) -> NonlinearSign:
        if isinstance(value, cls):
            return value
        try:
            return cls[str(value).upper()]
        except KeyError:
            raise ValueError(f"unknown interaction sign {value!r}") from None


@dataclass(frozen=True)
class ModelParams:
    """Parameters of ``H = -delta n -/+ alpha a^dag^2 a^2 + epsilon (a^dag + a)``.

    Photons leak at rate ``2 kappa`` (see :mod:`kerrscope.lindblad`).
    """

    delta: float
    alpha: float
    epsilon: float
    kappa: float
    sign: NonlinearSign = NonlinearSign.ATTRACTIVE

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        for name in ("delta", "alpha", "epsilon", "kappa"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        object.__setattr__(self, "sign", NonlinearSign.parse(self.sign))

    def replace(self, **changes) -> ModelParams:
        values = dict(delta=self.delta, alpha=self.alpha, epsilon=self.epsilon,
                      kappa=self.kappa, sign=self.sign)
        values.update(changes)
        return ModelParams(**values)

    @classmethod
    def from_scaled(cls, delta: float, alpha: float, omega: float, gamma: float,
                    two_s: int, sign: NonlinearSign = NonlinearSign.ATTRACTIVE) -> ModelParams:
        """Build physical parameters from (omega, gamma, 2s)."""
        two_s = _check_two_s(two_s)
        return cls(delta=delta, alpha=alpha, epsilon=omega * math.sqrt(two_s),
                   kappa=gamma * two_s, sign=sign)


@dataclass(frozen=True)
class ScaledParams:
    two_s: int
    omega: float
    gamma: float
    delta: float
    alpha: float
    sign: NonlinearSign = NonlinearSign.ATTRACTIVE
    sigma: complex = field(init=False)
    phi: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "two_s", _check_two_s(self.two_s))
        object.__setattr__(self, "sign", NonlinearSign.parse(self.sign))
        if not self.omega >= 0 or not self.gamma > 0 or not self.alpha > 0:
            raise ValueError("need omega >= 0, gamma > 0, alpha > 0")
        sigma, phi = resolve_sign_convention(self)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "phi", phi)

    def unscale(self) -> ModelParams:
        return ModelParams(delta=self.delta, alpha=self.alpha,
                           epsilon=self.omega * math.sqrt(self.two_s),
                           kappa=self.gamma * self.two_s, sign=self.sign)


def _check_two_s(two_s) -> int:
    if isinstance(two_s, bool) or not isinstance(two_s, numbers.Integral):
        raise ValueError(f"two_s must be an integer, got {two_s!r}")
    if two_s < 1:
        raise ValueError(f"two_s must be >= 1, got {two_s}")
    return int(two_s)


def resolve_sign_convention(scaled: ScaledParams) -> tuple[complex, complex]:
    """Return ``(sigma, phi)`` for the interaction sign of ``scaled``.

    ``sigma = omega / (gamma + i alpha)`` for both signs, and

        attractive:  phi = (2s alpha + delta) / (gamma + i alpha)
        repulsive:   phi = (2s alpha - delta) / (gamma + i alpha)

    This branch was fixed by comparison with the truncated-Fock master
    equation solver: it puts the attractive resonances at delta <= 0 and
    makes the repulsive response the exact delta -> -delta mirror.
    ``tests/test_model.py`` pins it against the numeric steady state.
    """
    denom = complex(scaled.gamma, scaled.alpha)
    sigma = scaled.omega / denom
    # sign.value is -1 (attractive) / +1 (repulsive)
    phi = (scaled.two_s * scaled.alpha - scaled.sign.value * scaled.delta) / denom
    return sigma, phi


def scale(params: ModelParams, two_s: int) -> ScaledParams:
    """Map physical parameters to the scaled picture with ``2s`` excitations."""
    two_s = _check_two_s(two_s)
    return ScaledParams(two_s=two_s, omega=params.epsilon / math.sqrt(two_s),
                        gamma=params.kappa / two_s, delta=params.delta,
                        alpha=params.alpha, sign=params.sign)
