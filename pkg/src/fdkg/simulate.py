"""Monte-Carlo liveness estimation over (n, p, r, k, t) grids.

A trial samples the round-1 dealer set D and the round-2 present set T at
fixed sizes round(p*n) and round(r*n), draws a guardian topology (uniform
or preferential-attachment) and succeeds iff T can reconstruct every
dealer's partial secret.  Per-trial seeds are derived from the master
seed, so runs are reproducible regardless of execution order.
"""

from __future__ import annotations

import csv
import hashlib
import logging
import random
from dataclasses import dataclass, field

from .protocol import reconstruction_capable

log = logging.getLogger(__name__)

TOPOLOGY_ER = "er"
TOPOLOGY_BA = "ba"


class SweepConfigError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    n_values: tuple
    p_values: tuple
    r_values: tuple
    k_values: tuple
    t_values: tuple = ()  # absolute thresholds; mutually exclusive with ratios
    t_ratios: tuple = ()  # thresholds as max(1, round(ratio * k))
    trials: int = 100
    topology: str = TOPOLOGY_ER
    seed: int = 0
    fresh_topology_per_trial: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise SweepConfigError("trials must be >= 1")
        if self.topology not in (TOPOLOGY_ER, TOPOLOGY_BA):
            raise SweepConfigError(f"unknown topology {self.topology!r}")
        if bool(self.t_values) == bool(self.t_ratios):
            raise SweepConfigError("set exactly one of t_values / t_ratios")

    def thresholds(self, k: int) -> tuple:
        if self.t_values:
            return tuple(self.t_values)
        return tuple(max(1, round_half_up(ratio * k)) for ratio in self.t_ratios)


@dataclass(frozen=True)
class TrialOutcome:
    n: int
    p: float
    r: float
    k: int
    t: int
    dealers: int
    present: int
    success: bool


@dataclass(frozen=True)
class SuccessRate:
    n: int
    p: float
    r: float
    k: int
    t: int
    topology: str
    trials: int
    successes: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials


def round_half_up(x: float) -> int:
    return int(x + 0.5)


def select_guardians_er(n: int, k: int, owner: int, rng: random.Random) -> frozenset:
    """Uniform k-subset of the other parties."""
    if k > n - 1:
        raise SweepConfigError(f"k={k} exceeds n-1={n - 1}")
    candidates = [j for j in range(1, n + 1) if j != owner]
    return frozenset(rng.sample(candidates, k))


def select_guardians_ba(n: int, k: int, rng: random.Random) -> dict:
    """Preferential attachment: owners pick in index order; a candidate's
    weight is 1 plus the number of times earlier owners already chose it."""
    if k > n - 1:
        raise SweepConfigError(f"k={k} exceeds n-1={n - 1}")
    in_degree = {j: 0 for j in range(1, n + 1)}
    sets = {}
    for owner in range(1, n + 1):
        chosen = set()
        for _ in range(k):
            candidates = [j for j in range(1, n + 1) if j != owner and j not in chosen]
            weights = [1 + in_degree[j] for j in candidates]
            pick = rng.choices(candidates, weights=weights)[0]
            chosen.add(pick)
        for j in chosen:
            in_degree[j] += 1
        sets[owner] = frozenset(chosen)
    return sets


def sample_round_sets(n: int, p: float, r: float, rng: random.Random):
    """Fixed-size draws: |D| = round(p*n), |T| = round(r*n), T independent."""
    parties = list(range(1, n + 1))
    dealers = frozenset(rng.sample(parties, round_half_up(p * n)))
    present = frozenset(rng.sample(parties, round_half_up(r * n)))
    return dealers, present


def trial_success(dealers, present, guardian_sets, t: int) -> bool:
    return reconstruction_capable(present, dealers, guardian_sets, t)


def _trial_rng(seed: int, cell_id: str, trial: int) -> random.Random:
    digest = hashlib.sha256(
        b"fdkg-sweep" + seed.to_bytes(16, "big", signed=True)
        + cell_id.encode() + trial.to_bytes(4, "big")
    ).digest()
    return random.Random(int.from_bytes(digest, "big"))


def _topology(n, k, topology, rng):
    if topology == TOPOLOGY_BA:
        return select_guardians_ba(n, k, rng)
    return {i: select_guardians_er(n, k, i, rng) for i in range(1, n + 1)}


def run_sweep(config: SweepConfig) -> list:
    """Evaluate the full grid; invalid (k, t) cells are skipped with a log
    line.  Deterministic given the master seed."""
    rates = []
    for n in config.n_values:
        for k in config.k_values:
            if not 1 <= k <= n - 1:
                log.warning("skipping cell n=%d k=%d: need 1 <= k <= n-1", n, k)
                continue
            for t in config.thresholds(k):
                if not 1 <= t <= k:
                    log.warning("skipping cell n=%d k=%d t=%d: need 1 <= t <= k", n, k, t)
                    continue
                for p in config.p_values:
                    for r in config.r_values:
                        rates.append(_run_cell(config, n, p, r, k, t))
    return rates


def _run_cell(config: SweepConfig, n, p, r, k, t) -> SuccessRate:
    cell_id = f"{n}:{p}:{r}:{k}:{t}:{config.topology}"
    successes = 0
    shared_topology = None
    if not config.fresh_topology_per_trial:
        shared_topology = _topology(n, k, config.topology, _trial_rng(config.seed, cell_id, 0xFFFF))
    for trial in range(config.trials):
        rng = _trial_rng(config.seed, cell_id, trial)
        topology = shared_topology or _topology(n, k, config.topology, rng)
        dealers, present = sample_round_sets(n, p, r, rng)
        if trial_success(dealers, present, topology, t):
            successes += 1
    return SuccessRate(n, p, r, k, t, config.topology, config.trials, successes)


CSV_HEADER = ["n", "p", "r", "k", "t", "topology", "trials", "successes", "rate"]


def write_csv(rates, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in rates:
        writer.writerow([s.n, s.p, s.r, s.k, s.t, s.topology,
                         s.trials, s.successes, f"{s.rate:.4f}"])
