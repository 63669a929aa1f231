"""Step budgets for reduction.

Normalization is not total, so every reducing operation takes an explicit
budget and spends one unit per rewrite step.  Running out raises
FuelExhausted; it is never silently swallowed by the library.
"""

from __future__ import annotations

DEFAULT_FUEL = 10000


class FuelExhausted(Exception):
    """Raised when a reduction needs more steps than its budget allows."""


class Fuel:
    """A caller-local, mutable step budget."""

    __slots__ = ("remaining",)

    def __init__(self, remaining: int):
        if remaining < 0:
            raise ValueError("fuel must be nonnegative")
        self.remaining = remaining

    @classmethod
    def coerce(cls, fuel: "Fuel | int") -> "Fuel":
        return fuel if isinstance(fuel, Fuel) else cls(fuel)

    def spend(self) -> None:
        if self.remaining == 0:
            raise FuelExhausted("step budget exhausted")
        self.remaining -= 1

    def __repr__(self) -> str:
        return f"Fuel({self.remaining})"
