"""
Tests for the evaluator registry behind `sfpsd eval`.
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from sfpsd.errors import DomainError, NonConvergenceError, UnknownFunctionError
from sfpsd.specialfn import FUNCTIONS, FunctionRouter, SeriesControl


@pytest.fixture
def router():
    return FunctionRouter()


class TestRouting:
    def test_gamma(self, router):
        assert router.evaluate("gamma", [5]).value == pytest.approx(24.0, rel=1e-14)

    def test_name_is_case_insensitive(self, router):
        assert router.route(" Gamma ").name == "gamma"

    def test_unknown_function(self, router):
        with pytest.raises(UnknownFunctionError) as info:
            router.evaluate("digamma", [1])
        assert info.value.exit_code == 3
        assert "zeta" in info.value.message

    def test_every_entry_has_a_signature(self):
        for entry in FUNCTIONS.values():
            low, high = entry.arity
            assert 1 <= low <= high
            assert entry.signature.count("<") == high

    def test_route_description(self, router):
        assert router.get_route_description("theta3").startswith("theta3 <complex> <real>")
        assert router.get_route_description("nope") == "Unknown function"


class TestArguments:
    def test_wrong_arity(self, router):
        with pytest.raises(DomainError):
            router.evaluate("beta", [1])
        with pytest.raises(DomainError):
            router.evaluate("gamma", [1, 2])

    def test_complex_for_real_argument(self, router):
        with pytest.raises(DomainError, match="must be real"):
            router.evaluate("theta3", [0, 0.5j])

    def test_fraction_for_integer_argument(self, router):
        with pytest.raises(DomainError, match="integer"):
            router.evaluate("polygamma_shift", [1.5, 0])

    def test_optional_trailing_argument(self, router):
        finite = router.evaluate("q_pochhammer", [0.5, 0.5, 2]).value
        assert finite == pytest.approx(0.375, rel=1e-15)
        infinite = router.evaluate("q_pochhammer", [0.5, 0.5]).value
        assert infinite.real == pytest.approx(0.288788095086602, rel=1e-12)

    def test_polygamma(self, router):
        value = router.evaluate("polygamma_shift", [1, 0]).value
        assert value.real == pytest.approx(math.pi**2 / 6, rel=1e-13)

    def test_complex_argument(self, router):
        value = router.evaluate("gamma", [1j]).value
        assert abs(value) == pytest.approx(math.sqrt(math.pi / math.sinh(math.pi)), rel=1e-13)


class TestControl:
    def test_control_is_forwarded(self):
        starved = FunctionRouter(SeriesControl(max_terms=3))
        with pytest.raises(NonConvergenceError) as info:
            starved.evaluate("eta", [2])
        assert info.value.exit_code == 2

    def test_results_are_wrapped(self, router):
        result = router.evaluate("quarter_period", [0])
        assert result.value == pytest.approx(math.pi / 2, rel=1e-15)
        assert result.to_dict()["terms_used"] >= 1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
