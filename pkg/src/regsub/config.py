from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    # Largest group order any enumeration entry point will materialize.
    order_cap: int = 2**16
    # Intersections of at most this order may fall back to element scans.
    intersect_fallback_order: int = 2**12


DEFAULT = Config()


class CapExceededError(ValueError):
    pass


def check_cap(order: int, cap: int | None, what: str = "submodule") -> None:
    limit = DEFAULT.order_cap if cap is None else cap
    if order > limit:
        raise CapExceededError(f"{what} of order {order} exceeds the order cap {limit}")
