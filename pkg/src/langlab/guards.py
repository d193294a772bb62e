"""Cost guards for operations whose search space can explode."""

from __future__ import annotations


class CostGuardError(RuntimeError):
    """A scan would exceed its cost budget; pass ``force`` to run anyway."""


def check_budget(estimate: int, limit: int, what: str, *, force: bool = False) -> None:
    if force:
        return
    if estimate > limit:
        raise CostGuardError(
            f"{what} would touch about {estimate} items (limit {limit}); "
            "rerun with force to override"
        )
