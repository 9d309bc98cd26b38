"""SI quantities with dimension checking over (kg, m, s, K).

Values are always stored in SI. :func:`parse_quantity` understands the
small unit grammar used on the command line, e.g. ``"1e-19g"``,
``"0.4 nm"``, ``"100bp/s"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from numbers import Real

from .errors import DimensionError

Dims = tuple[int, int, int, int]

DIMENSIONLESS: Dims = (0, 0, 0, 0)
MASS: Dims = (1, 0, 0, 0)
LENGTH: Dims = (0, 1, 0, 0)
TIME: Dims = (0, 0, 1, 0)
TEMPERATURE: Dims = (0, 0, 0, 1)
RATE: Dims = (0, 0, -1, 0)
VELOCITY: Dims = (0, 1, -1, 0)
FORCE: Dims = (1, 1, -2, 0)
ENERGY: Dims = (1, 2, -2, 0)
POWER: Dims = (1, 2, -3, 0)
ACTION: Dims = (1, 2, -1, 0)
RATE_PER_FORCE: Dims = (-1, -1, 1, 0)  # 1/(s·N)

_DIM_NAMES = ("kg", "m", "s", "K")


def format_dims(dims: Dims) -> str:
    parts = []
    for name, p in zip(_DIM_NAMES, dims):
        if p == 1:
            parts.append(name)
        elif p:
            parts.append(f"{name}^{p}")
    return "·".join(parts) or "1"


def _add(a: Dims, b: Dims, sign: int = 1) -> Dims:
    return tuple(x + sign * y for x, y in zip(a, b))  # type: ignore[return-value]


@dataclass(frozen=True)
class Quantity:
    """A finite real value carrying an integer SI dimension vector."""

    value: float
    dims: Dims = DIMENSIONLESS

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v):
            raise ValueError(f"non-finite quantity value {self.value!r}")
        object.__setattr__(self, "value", v)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.dims) != 4:
            raise DimensionError("dims must have four entries (kg, m, s, K)")

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Quantity":
        if isinstance(other, Quantity):
            return other
        if isinstance(other, Real):
            return Quantity(float(other))
        return NotImplemented

    def _same(self, other: "Quantity", op: str) -> None:
        if self.dims != other.dims:
            raise DimensionError(
                f"cannot {op} [{format_dims(self.dims)}] and [{format_dims(other.dims)}]"
            )

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        self._same(o, "add")
        return Quantity(self.value + o.value, self.dims)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        self._same(o, "subtract")
        return Quantity(self.value - o.value, self.dims)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Quantity(self.value * o.value, _add(self.dims, o.dims))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.value == 0.0:
            raise ZeroDivisionError("division by a zero quantity")
        return Quantity(self.value / o.value, _add(self.dims, o.dims, -1))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, p: int):
        if not isinstance(p, int):
            raise DimensionError("only integer powers keep dimensions integral")
        return Quantity(self.value**p, tuple(d * p for d in self.dims))

    def __neg__(self):
        return Quantity(-self.value, self.dims)

    def __abs__(self):
        return Quantity(abs(self.value), self.dims)

    # comparison -----------------------------------------------------------
    def _cmp(self, other, op):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        self._same(o, "compare")
        return op(self.value, o.value)

    def __lt__(self, other):
        return self._cmp(other, float.__lt__)

    def __le__(self, other):
        return self._cmp(other, float.__le__)

    def __gt__(self, other):
        return self._cmp(other, float.__gt__)

    def __ge__(self, other):
        return self._cmp(other, float.__ge__)

    def __float__(self) -> float:
        if self.dims != DIMENSIONLESS:
            raise DimensionError(f"cannot convert [{format_dims(self.dims)}] to a bare float")
        return self.value

    # helpers --------------------------------------------------------------
    def to(self, unit: str) -> float:
        """Numeric value expressed in ``unit`` (which must match dimensionally)."""
        scale, dims = UNITS[unit]
        if dims != self.dims:
            raise DimensionError(f"cannot express [{format_dims(self.dims)}] in {unit}")
        return self.value / scale

    def require(self, dims: Dims, name: str = "quantity") -> "Quantity":
        if self.dims != dims:
            raise DimensionError(
                f"{name} must have dimension [{format_dims(dims)}], got [{format_dims(self.dims)}]"
            )
        return self

    def __str__(self) -> str:
        return f"{self.value:.6g} {format_dims(self.dims)}"


def require(q, dims: Dims, name: str) -> Quantity:
    """Check that ``q`` is a :class:`Quantity` with the given dimensions."""
    if not isinstance(q, Quantity):
        raise DimensionError(f"{name} must be a Quantity with dimension [{format_dims(dims)}]")
    return q.require(dims, name)


# physical constants (SI, CODATA 2018 exact / recommended)
HBAR = 1.054571817e-34
K_B = 1.380649e-23
H_PLANCK = 6.62607015e-34
DALTON = 1.66053907e-27
ELECTRON_VOLT = 1.602176634e-19
ELECTRON_MASS = 9.1093837015e-31
BP_LENGTH = 0.34e-9  # metres of B-DNA rise per base pair

# unit symbol -> (SI scale, dims)
UNITS: dict[str, tuple[float, Dims]] = {
    "": (1.0, DIMENSIONLESS),
    "kg": (1.0, MASS),
    "g": (1e-3, MASS),
    "Da": (DALTON, MASS),
    "m": (1.0, LENGTH),
    "cm": (1e-2, LENGTH),
    "nm": (1e-9, LENGTH),
    "Å": (1e-10, LENGTH),
    "A": (1e-10, LENGTH),
    "s": (1.0, TIME),
    "K": (1.0, TEMPERATURE),
    "N": (1.0, FORCE),
    "pN": (1e-12, FORCE),
    "eV": (ELECTRON_VOLT, ENERGY),
    "J": (1.0, ENERGY),
    "W": (1.0, POWER),
    "1/s": (1.0, RATE),
    "bp/s": (1.0, RATE),
    "m/s": (1.0, VELOCITY),
    "cm/s": (1e-2, VELOCITY),
    "bp/s/pN": (1e12, RATE_PER_FORCE),
    "bp/s/N": (1.0, RATE_PER_FORCE),
}

_QTY_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(\S*)\s*$")


def parse_quantity(text: str, expect: Dims | None = None, name: str = "value") -> Quantity:
    """Parse ``"<number><unit>"``. A bare number is taken as SI in ``expect``."""
    m = _QTY_RE.match(str(text))
    if not m:
        raise ValueError(f"{name}: cannot parse quantity {text!r}")
    number, unit = m.groups()
    if unit not in UNITS:
        raise ValueError(f"{name}: unknown unit {unit!r} in {text!r}")
    scale, dims = UNITS[unit]
    if unit == "" and expect is not None:
        dims = expect
    q = Quantity(float(number) * scale, dims)
    if expect is not None:
        q.require(expect, name)
    return q


def q(value: float, unit: str = "") -> Quantity:
    """Shorthand constructor: ``q(0.4, "nm")``."""
    scale, dims = UNITS[unit]
    return Quantity(value * scale, dims)
