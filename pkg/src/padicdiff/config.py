"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .errors import DomainError
from .padic import is_prime


@dataclass(frozen=True)
class RunConfig:
    p: int = 3
    precision: int = 16
    degree: int | None = None
    level: int = 4
    seed: int = 0
    group_cap: int = 20000
    order_cap: int = 2000
    max_level: int = 5

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.precision < 8:
            raise DomainError("precision must be at least 8")
        if not 1 <= self.level <= self.max_level:
            raise DomainError(f"grid level must be in 1..{self.max_level}")
        if self.degree is not None and self.degree < 0:
            raise DomainError("degree bound must be >= 0")

    def degree_or(self, default: int) -> int:
        return self.degree if self.degree is not None else default

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def to_json(self) -> dict:
        return asdict(self)
