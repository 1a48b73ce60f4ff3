"""Step budgets for searches that need not terminate."""

from typing import Optional, Union

from src.config.config import DEFAULT_FUEL
from src.models.errors import FuelExhausted
from src.utils.logging_utils import rewriting_logger


class Fuel:
    """A counter of allowed steps shared by one unbounded computation."""

    def __init__(self, limit: int = DEFAULT_FUEL, label: str = "fuel"):
        """Initialize the budget.

        Args:
            limit (int): Number of steps allowed
            label (str): Name used in log lines and error messages
        """
        if limit < 0:
            raise ValueError(f"fuel limit must be non-negative, got {limit}")
        self.limit = limit
        self.label = label
        self.spent = 0

    @property
    def remaining(self) -> int:
        return self.limit - self.spent

    def spend(self, amount: int = 1) -> None:
        """Consume steps, raising FuelExhausted once the limit is passed.

        Args:
            amount (int): Steps to consume
        """
        self.spent += amount
        if self.spent > self.limit:
            rewriting_logger.debug(f"{self.label} exhausted after {self.limit} steps")
            raise FuelExhausted(f"{self.label} exhausted after {self.limit} steps", self.limit)

    @classmethod
    def coerce(cls, fuel: Optional[Union[int, "Fuel"]], label: str = "fuel") -> "Fuel":
        """Accept an int, an existing budget, or None for the configured default."""
        if isinstance(fuel, Fuel):
            return fuel
        return cls(DEFAULT_FUEL if fuel is None else int(fuel), label)

    def __repr__(self) -> str:
        return f"Fuel(label={self.label!r}, spent={self.spent}, limit={self.limit})"
