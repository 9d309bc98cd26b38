"""Closed-form quantum bounds and scaling laws for biomolecular processes.

All functions take and return :class:`~qbio.units.Quantity` objects in SI.
Dimensions are checked on entry; a wrong unit raises
:class:`~qbio.errors.DimensionError`, a zero or negative magnitude raises
:class:`~qbio.errors.DegenerateInput`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import ConfigError, DegenerateInput
from .units import (
    ACTION,
    BP_LENGTH,
    DALTON,
    ENERGY,
    FORCE,
    H_PLANCK,
    HBAR,
    K_B,
    LENGTH,
    MASS,
    POWER,
    RATE,
    RATE_PER_FORCE,
    TEMPERATURE,
    VELOCITY,
    Quantity,
    q,
    require,
)

DEFAULT_RESIDUE_MASS = q(110.0, "Da")
DEFAULT_RESIDUE_LENGTH = q(0.4, "nm")
DEFAULT_DAMPING_RATE = q(1e12, "1/s")
REPORTED_STALL_FORCE = q(40.0, "pN")

HBAR_Q = Quantity(HBAR, ACTION)
KB_Q = Quantity(K_B, (1, 2, -2, -1))


def _positive(x: Quantity, dims, name: str) -> Quantity:
    require(x, dims, name)
    if not x.value > 0:
        raise DegenerateInput(f"{name} must be positive, got {x}")
    return x


@dataclass(frozen=True)
class Constants:
    hbar: float = HBAR
    k_B: float = K_B
    h: float = H_PLANCK
    dalton: float = DALTON


CONSTANTS = Constants()


@dataclass(frozen=True)
class ClockSpec:
    mass: Quantity
    size: Quantity

    def __post_init__(self):
        _positive(self.mass, MASS, "mass")
        _positive(self.size, LENGTH, "size")


@dataclass(frozen=True)
class ProteinSpec:
    residues: int
    residue_mass: Quantity = DEFAULT_RESIDUE_MASS
    residue_length: Quantity = DEFAULT_RESIDUE_LENGTH

    def __post_init__(self):
        if int(self.residues) != self.residues or self.residues < 1:
            raise DegenerateInput(f"residue count must be a positive integer, got {self.residues!r}")
        _positive(self.residue_mass, MASS, "residue_mass")
        _positive(self.residue_length, LENGTH, "residue_length")


@dataclass(frozen=True)
class MotorSpec:
    """DNA polymerase-like motor. Defaults are the quoted polymerase figures."""

    mass: Quantity = field(default_factory=lambda: q(1e-19, "g"))
    length: Quantity = field(default_factory=lambda: q(1e-3, "cm"))
    zero_load_speed: Quantity = field(default_factory=lambda: q(100.0, "bp/s"))
    tension_slope: Quantity = field(default_factory=lambda: q(3.0, "bp/s/pN"))

    def __post_init__(self):
        _positive(self.mass, MASS, "mass")
        _positive(self.length, LENGTH, "length")
        _positive(self.zero_load_speed, RATE, "zero_load_speed")
        _positive(self.tension_slope, RATE_PER_FORCE, "tension_slope")


def wigner_clock_limit(spec: ClockSpec) -> Quantity:
    """Longest run time m·l²/ħ of a quantum clock of mass m and size l.

    The true run time must stay strictly below the returned value.
    """
    return spec.mass * spec.size**2 / HBAR_Q


def folding_time_limit(spec: ProteinSpec) -> Quantity:
    """Clock bound applied to an extended chain of N residues: m₀·a²·N³/ħ."""
    per_residue = spec.residue_mass * spec.residue_length**2 / HBAR_Q
    return per_residue * (int(spec.residues) ** 3)


class FoldingScaling(NamedTuple):
    exponent: Fraction
    relative_time: float


FOLDING_EXPONENTS = {
    "extended": Fraction(3),
    "compact": Fraction(5, 3),
    "subdomain": Fraction(7, 3),
}


def folding_scaling(N: int, regime: str = "extended") -> FoldingScaling:
    """Folding-time exponent for a chain regime and the relative time N^exponent.

    ``extended`` uses the full chain length as clock size, ``compact`` the
    diameter of a spherical globule (size ∝ N^{1/3}), and ``subdomain`` the
    intermediate law for large proteins that fold piecewise.
    """
    if regime not in FOLDING_EXPONENTS:
        raise ConfigError(f"unknown folding regime {regime!r}; choose from {sorted(FOLDING_EXPONENTS)}")
    if int(N) != N or N < 1:
        raise DegenerateInput(f"N must be a positive integer, got {N!r}")
    p = FOLDING_EXPONENTS[regime]
    if p.denominator == 1:
        rel = float(int(N) ** p.numerator)
    else:
        rel = float(N) ** float(p)
    return FoldingScaling(p, rel)


def metabolic_rate(W: Quantity, a: float, beta: float) -> Quantity:
    """Allometric metabolic rate P = a·W^β.

    ``a`` is the empirical prefactor in watts per kg^β, so the result is a
    power in watts. β is 3/4 for mammals and 2/3 for birds.
    """
    _positive(W, MASS, "W")
    if not (a > 0 and math.isfinite(a)):
        raise DegenerateInput(f"prefactor a must be positive and finite, got {a!r}")
    if not 0 < beta < 2:
        raise ConfigError(f"allometric exponent beta={beta!r} outside (0, 2)")
    return Quantity(a * W.value**beta, POWER)


def quantized_energy(n: int, omega: Quantity) -> Quantity:
    """E = n·ħ·ω for quantum number n ≥ 0 and angular frequency ω."""
    if int(n) != n or n < 0:
        raise DegenerateInput(f"quantum number must be a nonnegative integer, got {n!r}")
    _positive(omega, RATE, "omega")
    return HBAR_Q * omega * int(n)


def motor_velocity_bound(spec: MotorSpec) -> Quantity:
    """Characteristic velocity ħ/(m·L) from the clock bound.

    The inequality is written v > ħ/mL but read in the text as a maximum
    speed; callers decide which side they need, this returns the threshold.
    """
    return HBAR_Q / (spec.mass * spec.length)


class TensionResponse(NamedTuple):
    speed: Quantity
    stall_force: Quantity


def motor_speed_under_tension(F: Quantity, spec: MotorSpec | None = None) -> TensionResponse:
    """Linear load-velocity model v(F) = max(0, v₀ − k·F), stall at v₀/k."""
    spec = spec or MotorSpec()
    require(F, FORCE, "F")
    if F.value < 0:
        raise DegenerateInput(f"tension must be nonnegative, got {F}")
    stall = spec.zero_load_speed / spec.tension_slope
    if F.value >= stall.value:
        speed = Quantity(0.0, RATE)
    else:
        speed = spec.zero_load_speed - spec.tension_slope * F
        speed = Quantity(max(0.0, speed.value), RATE)
    return TensionResponse(speed, stall)


def stall_residual(spec: MotorSpec | None = None, observed: Quantity = REPORTED_STALL_FORCE) -> float:
    """Ratio of the linear-model stall force to an observed stall force."""
    spec = spec or MotorSpec()
    _positive(observed, FORCE, "observed")
    return float(motor_speed_under_tension(Quantity(0.0, FORCE), spec).stall_force / observed)


def bp_rate_to_velocity(rate: Quantity, rise: Quantity = Quantity(BP_LENGTH, LENGTH)) -> Quantity:
    """Convert base pairs per second to metres per second (0.34 nm per bp)."""
    require(rate, RATE, "rate")
    return rate * _positive(rise, LENGTH, "rise")


def de_broglie(m: Quantity, v: Quantity) -> Quantity:
    """λ = h/(m·v)."""
    _positive(m, MASS, "m")
    _positive(v, VELOCITY, "v")
    return Quantity(H_PLANCK, ACTION) / (m * v)


def thermal_decoherence_time(
    m: Quantity,
    T_env: Quantity,
    dx: Quantity,
    gamma_damp: Quantity = DEFAULT_DAMPING_RATE,
) -> Quantity:
    """Decoherence time ħ²/(2·m·γ·k_B·T·Δx²) of a superposition spread over Δx.

    High-temperature quantum Brownian motion with damping rate γ.
    """
    _positive(m, MASS, "m")
    _positive(T_env, TEMPERATURE, "T_env")
    _positive(dx, LENGTH, "dx")
    _positive(gamma_damp, RATE, "gamma_damp")
    kT = KB_Q * T_env
    return HBAR_Q**2 / (2.0 * m * gamma_damp * kT * dx**2)


def barrier_transmission(E: Quantity, V0: Quantity, width: Quantity, m: Quantity) -> float:
    """Transmission probability through a rectangular barrier of height V₀."""
    _positive(E, ENERGY, "E")
    _positive(V0, ENERGY, "V0")
    _positive(width, LENGTH, "width")
    _positive(m, MASS, "m")
    e, v0, w, mass = E.value, V0.value, width.value, m.value
    if e == v0:
        return 1.0 / (1.0 + mass * v0 * w**2 / (2.0 * HBAR**2))
    if e < v0:
        kappa = math.sqrt(2.0 * mass * (v0 - e)) / HBAR
        x = kappa * w
        if x > 300.0:
            # sinh² overflows; T ≈ 16E(V₀−E)/V₀² · e^{−2κw}
            log_t = math.log(16.0 * e * (v0 - e) / v0**2) - 2.0 * x
            return math.exp(log_t)
        return 1.0 / (1.0 + v0**2 * math.sinh(x) ** 2 / (4.0 * e * (v0 - e)))
    k2 = math.sqrt(2.0 * mass * (e - v0)) / HBAR
    return 1.0 / (1.0 + v0**2 * math.sin(k2 * w) ** 2 / (4.0 * e * (e - v0)))


__all__ = [
    "CONSTANTS",
    "ClockSpec",
    "ProteinSpec",
    "MotorSpec",
    "FoldingScaling",
    "TensionResponse",
    "wigner_clock_limit",
    "folding_time_limit",
    "folding_scaling",
    "metabolic_rate",
    "quantized_energy",
    "motor_velocity_bound",
    "motor_speed_under_tension",
    "stall_residual",
    "bp_rate_to_velocity",
    "de_broglie",
    "thermal_decoherence_time",
    "barrier_transmission",
]
