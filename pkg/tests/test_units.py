import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qbio.errors import DimensionError
from qbio.units import (
    ENERGY,
    FORCE,
    LENGTH,
    MASS,
    RATE,
    TIME,
    VELOCITY,
    Quantity,
    parse_quantity,
    q,
    require,
)

finite = st.floats(min_value=-1e30, max_value=1e30, allow_nan=False, allow_infinity=False)
dims = st.tuples(*[st.integers(-3, 3)] * 4)


class TestArithmetic:
    def test_velocity_from_length_and_time(self):
        v = q(3.0, "m") / q(2.0, "s")
        assert v.dims == VELOCITY
        assert v.value == 1.5

    def test_energy_composition(self):
        e = q(2.0, "kg") * (q(3.0, "m") / q(1.0, "s")) ** 2
        assert e.dims == ENERGY and e.value == 18.0

    def test_add_mismatch(self):
        with pytest.raises(DimensionError):
            q(1, "m") + q(1, "s")

    def test_compare_mismatch(self):
        with pytest.raises(DimensionError):
            q(1, "kg") < q(1, "m")

    def test_float_requires_dimensionless(self):
        assert float(q(2, "m") / q(1, "m")) == 2.0
        with pytest.raises(DimensionError):
            float(q(2, "m"))

    def test_fractional_power_rejected(self):
        with pytest.raises(DimensionError):
            q(4, "m") ** 0.5

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            Quantity(math.inf, LENGTH)

    def test_conversion(self):
        assert q(1.0, "cm/s").to("m/s") == pytest.approx(0.01)
        assert q(1.0, "pN").to("N") == pytest.approx(1e-12)
        with pytest.raises(DimensionError):
            q(1.0, "pN").to("m")

    @given(finite, finite, dims)
    def test_add_commutes(self, a, b, d):
        assert (Quantity(a, d) + Quantity(b, d)).value == (Quantity(b, d) + Quantity(a, d)).value

    @given(finite, dims, dims)
    def test_mul_adds_dims(self, a, d1, d2):
        out = Quantity(a, d1) * Quantity(1.0, d2)
        assert out.dims == tuple(x + y for x, y in zip(d1, d2))

    @given(finite, finite, dims, dims)
    def test_mismatched_add_always_fails(self, a, b, d1, d2):
        if d1 == d2:
            return
        with pytest.raises(DimensionError):
            Quantity(a, d1) + Quantity(b, d2)


class TestParse:
    @pytest.mark.parametrize(
        "text, value, d",
        [
            ("1e-19g", 1e-22, MASS),
            ("0.4 nm", 0.4e-9, LENGTH),
            ("100bp/s", 100.0, RATE),
            ("40pN", 40e-12, FORCE),
            ("2.5", 2.5, TIME),
        ],
    )
    def test_values(self, text, value, d):
        got = parse_quantity(text, expect=d)
        assert got.dims == d
        assert got.value == pytest.approx(value, rel=1e-12)

    def test_wrong_dimension_names_flag(self):
        with pytest.raises(DimensionError, match="--mass"):
            parse_quantity("3 m", expect=MASS, name="--mass")

    @pytest.mark.parametrize("text", ["abc", "1 furlong", "", "1e"])
    def test_garbage(self, text):
        with pytest.raises(ValueError):
            parse_quantity(text)

    def test_require_needs_quantity(self):
        with pytest.raises(DimensionError):
            require(3.0, MASS, "m")
