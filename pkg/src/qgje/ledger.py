"""Operation counters used to audit elimination runs."""
from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass
class CostLedger:
    multiplications: int = 0
    additions: int = 0
    subtractions: int = 0
    comparisons: int = 0
    control_ops: int = 0
    grover_iterations: int = 0
    oracle_queries: int = 0
    measurements: int = 0

    def charge(self, **counts: int) -> None:
        for name, amount in counts.items():
            if amount < 0:
                raise ValueError(f"negative charge for {name}: {amount}")
            setattr(self, name, getattr(self, name) + amount)

    def total(self) -> int:
        return sum(getattr(self, f.name) for f in fields(self))

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}
