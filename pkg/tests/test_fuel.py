import pytest

from src.config.config import DEFAULT_FUEL
from src.models.errors import FuelExhausted
from src.utils.fuel import Fuel


class TestFuel:
    def test_spend_until_exhausted(self):
        fuel = Fuel(3, "search")
        fuel.spend(3)
        assert fuel.remaining == 0
        with pytest.raises(FuelExhausted) as err:
            fuel.spend()
        assert err.value.witness == 3
        assert "search" in str(err.value)

    def test_coerce(self):
        shared = Fuel(10)
        assert Fuel.coerce(shared) is shared
        assert Fuel.coerce(None).limit == DEFAULT_FUEL
        assert Fuel.coerce(7, "search").label == "search"

    def test_negative_limit(self):
        with pytest.raises(ValueError):
            Fuel(-1)
