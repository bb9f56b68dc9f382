"""Random colored instances and the rainbow-triangle discovery harness.

Instances are drawn with numpy's PCG64 generator seeded by
``SeedSequence([seed, trial])``, so each (seed, trial) pair names one
instance regardless of how many trials run or in what order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import ceil, comb
from typing import Optional

import numpy as np

from .errors import DomainError
from .graph import EdgeColoredGraph, find_rainbow_triangle

EMPIRICAL_LABEL = "empirical: random instances only, not evidence about the conjecture"


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    num_colors: int
    class_size: int
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.n < 2 or self.num_colors < 1 or self.class_size < 1 or self.trials < 0:
            raise DomainError("n >= 2, num_colors >= 1, class_size >= 1 and trials >= 0 required")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.num_colors * self.class_size > comb(self.n, 2):
            raise DomainError(
                f"{self.num_colors} classes of {self.class_size} edges exceed C({self.n},2) = {comb(self.n, 2)}")

    @classmethod
    def for_pair(cls, n: int, alpha: float, beta: float, **kw) -> "ExperimentConfig":
        """Round alpha*n and beta*n up to integers."""
        return cls(n, ceil(round(alpha * n, 9)), ceil(round(beta * n, 9)), **kw)


def rng_for(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def generate_instance(cfg: ExperimentConfig, trial: int) -> EdgeColoredGraph:
    """Disjoint color classes of exactly ``class_size`` edges on K_n.

    Color c receives edges ``chosen[c*class_size:(c+1)*class_size]`` of a
    uniform sample without replacement from the C(n,2) pairs.
    """
    total = cfg.num_colors * cfg.class_size
    rng = rng_for(cfg.seed, trial)
    chosen = rng.choice(comb(cfg.n, 2), size=total, replace=False)
    rows, cols = np.triu_indices(cfg.n, 1)
    colored = [(int(rows[i]), int(cols[i]), pos // cfg.class_size) for pos, i in enumerate(chosen)]
    return EdgeColoredGraph.from_colored_edges(cfg.n, colored)


@dataclass
class TrialOutcome:
    trial: int
    found: bool
    witness: Optional[tuple[int, int, int]]


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    trials: list[TrialOutcome] = field(default_factory=list)
    wall_time: float = 0.0
    label: str = EMPIRICAL_LABEL

    @property
    def found(self) -> int:
        return sum(t.found for t in self.trials)

    @property
    def rate(self) -> Optional[float]:
        return self.found / len(self.trials) if self.trials else None

    def as_dict(self, timing: bool = False) -> dict:
        cfg = self.config
        out = {
            "label": self.label,
            "config": {"n": cfg.n, "num_colors": cfg.num_colors, "class_size": cfg.class_size,
                       "seed": cfg.seed, "trials": cfg.trials},
            "found": self.found,
            "rate": self.rate,
            "per_trial": [{"trial": t.trial, "found": t.found,
                           "witness": list(t.witness) if t.witness else None} for t in self.trials],
        }
        # wall time is opt-in so default output stays byte-identical across runs
        if timing:
            out["wall_time"] = self.wall_time
        return out


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    start = time.perf_counter()
    report = ExperimentReport(cfg)
    for trial in range(cfg.trials):
        tri = find_rainbow_triangle(generate_instance(cfg, trial))
        report.trials.append(TrialOutcome(trial, tri is not None, tri))
    report.wall_time = time.perf_counter() - start
    return report
