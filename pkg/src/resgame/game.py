"""Attacker-defender matrix game over node subsets.

The defender (row player, minimizer) picks f nodes to protect; the
attacker (column player, maximizer) picks f nodes to hit. Payoffs are the
squared H2 norms of the resulting dynamics. Alongside the brute-force
solvers, closed-form equilibrium predictors cover the regimes where the
optimal strategies reduce to graph centralities.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .dynamics import ControlLaw
from .errors import ConfigError, EnumerationLimitError
from .graphcore import Graph, degree_profile, degrees, eccentricities
from .resistance import (
    GroundedSystem,
    effective_eccentricities,
    grounded_inverse_diag,
    resistance_matrix,
)

DEFAULT_ENUM_CAP = 10_000
ENUM_CAP_ENV = "RESGAME_ENUM_CAP"


def _enum_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get(ENUM_CAP_ENV, DEFAULT_ENUM_CAP))


class SubsetIndex:
    """Bijection between ranks and f-subsets of {0..n-1} in lexicographic order."""

    def __init__(self, n: int, f: int):
        if not 1 <= f <= n:
            raise ConfigError(f"budget f={f} must satisfy 1 <= f <= n={n}")
        self.n = n
        self.f = f
        self.size = math.comb(n, f)

    def rank(self, subset) -> int:
        nodes = sorted(int(i) for i in subset)
        if len(nodes) != self.f:
            raise ConfigError(f"subset {nodes} does not have size {self.f}")
        r = 0
        prev = -1
        for pos, v in enumerate(nodes):
            for u in range(prev + 1, v):
                r += math.comb(self.n - 1 - u, self.f - pos - 1)
            prev = v
        return r

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < self.size:
            raise ConfigError(f"rank {r} out of range for {self.size} subsets")
        nodes = []
        start = 0
        remaining = self.f
        for _ in range(self.f):
            for v in range(start, self.n):
                block = math.comb(self.n - 1 - v, remaining - 1)
                if r < block:
                    nodes.append(v)
                    start = v + 1
                    remaining -= 1
                    break
                r -= block
        return tuple(nodes)

    def all_subsets(self) -> list[tuple[int, ...]]:
        return list(combinations(range(self.n), self.f))


@dataclass(frozen=True)
class GameMatrix:
    """Payoff matrix: rows = defender subsets, columns = attacker subsets."""

    graph: Graph
    law: ControlLaw
    gain: float
    f: int
    index: SubsetIndex
    values: np.ndarray


@dataclass(frozen=True)
class EquilibriumReport:
    """Solution of the game plus the centrality witness behind it."""

    kind: str  # "nash" | "stackelberg_defender_leader" | "none"
    defender_set: tuple[int, ...]
    attacker_set: tuple[int, ...]
    value: float | None
    theorem: str | None = None
    witness: str | None = None
    threshold: float | None = None
    gain_above_threshold: bool | None = None


def _check_sets(g: Graph, attack_set, defense_set):
    for s in (attack_set, defense_set):
        nodes = list(s)
        if len(set(nodes)) != len(nodes):
            raise ConfigError(f"duplicate nodes in {nodes}")
        if any(not 0 <= int(i) < g.n for i in nodes):
            raise ConfigError(f"node set {nodes} out of range for n={g.n}")


def payoff_j1(g: Graph, gain: float, attack_set, defense_set) -> float:
    """Law-1 payoff: half the damped-degree sum over attacked nodes."""
    _check_sets(g, attack_set, defense_set)
    d = degrees(g)
    defended = set(defense_set)
    return 0.5 * sum(
        (d[i] + 1.0) / (1.0 + (gain if i in defended else 0.0)) for i in attack_set
    )


def payoff_j2(g: Graph, gain: float, attack_set, defense_set) -> float:
    """Law-2 payoff: f/2 plus half the virtual-node resistances of attacked nodes."""
    _check_sets(g, attack_set, defense_set)
    if not list(defense_set):
        raise ConfigError("law-2 payoff requires a nonempty defense set")
    gdiag = grounded_inverse_diag(GroundedSystem(g, tuple(defense_set), gain))
    return 0.5 * len(list(attack_set)) + 0.5 * float(
        sum(gdiag[i] for i in attack_set)
    )


def closed_form_entry_j1(g: Graph, gain: float, attack_set, defense_set) -> float:
    """Law-1 matrix entry via the overlap decomposition (validation route)."""
    d = degrees(g)
    fset, dset = set(attack_set), set(defense_set)
    inside = fset & dset
    outside = fset - dset
    gamma1 = len(inside)
    gamma2 = len(outside)
    return (sum(d[i] for i in inside) + gamma1) / (2.0 * gain + 2.0) + 0.5 * (
        sum(d[i] for i in outside) + gamma2
    )


def build_matrix(
    g: Graph, gain: float, f: int, law: ControlLaw, cap: int | None = None
) -> GameMatrix:
    """Enumerate all C(n,f) x C(n,f) payoffs.

    Payoffs decompose as sums of per-attacked-node terms that depend only
    on the defender row, so each row is one vector contraction.
    """
    if gain <= 0:
        raise ConfigError(f"gain must be positive, got {gain}")
    index = SubsetIndex(g.n, f)
    cap_val = _enum_cap(cap)
    if index.size > cap_val:
        raise EnumerationLimitError(
            f"C({g.n},{f}) = {index.size} subsets exceeds the enumeration cap "
            f"{cap_val} (override via {ENUM_CAP_ENV})"
        )
    subsets = index.all_subsets()
    indicator = np.zeros((index.size, g.n))
    for r, sub in enumerate(subsets):
        indicator[r, list(sub)] = 1.0
    if law is ControlLaw.ABS_VELOCITY:
        d = degrees(g)
        per_node = 0.5 * (d + 1.0)[None, :] / (1.0 + gain * indicator)
        values = per_node @ indicator.T
    else:
        per_node = np.empty((index.size, g.n))
        for r, sub in enumerate(subsets):
            per_node[r] = 0.5 * grounded_inverse_diag(GroundedSystem(g, sub, gain))
        values = 0.5 * f + per_node @ indicator.T
    return GameMatrix(graph=g, law=law, gain=gain, f=f, index=index, values=values)


def find_nash(m: GameMatrix) -> tuple[int, int, float] | None:
    """Lexicographically smallest pure saddle point, if one exists.

    A cell is a saddle when it is the maximum of its row (attacker cannot
    improve) and the minimum of its column (defender cannot improve).
    """
    values = m.values
    row_max = values.max(axis=1)
    col_min = values.min(axis=0)
    for r in range(values.shape[0]):
        for c in range(values.shape[1]):
            v = values[r, c]
            if v >= row_max[r] and v <= col_min[c]:
                return r, c, float(v)
    return None


def nash_threshold(g: Graph) -> float:
    """Largest gain for which the single-budget law-1 game has a pure NE."""
    prof = degree_profile(g)
    return (prof.delta1 - prof.delta2) / (prof.delta2 + 1.0)


def stackelberg_defender_leader(m: GameMatrix) -> EquilibriumReport:
    """Defender commits to the row minimizing its worst column; ties by rank."""
    values = m.values
    row_max = values.max(axis=1)
    r = int(row_max.argmin())
    c = int(values[r].argmax())
    return EquilibriumReport(
        kind="stackelberg_defender_leader",
        defender_set=m.index.unrank(r),
        attacker_set=m.index.unrank(c),
        value=float(values[r, c]),
    )


def solve(m: GameMatrix) -> EquilibriumReport:
    """Pure NE when one exists, otherwise the defender-led Stackelberg solution."""
    saddle = find_nash(m)
    if saddle is not None:
        r, c, v = saddle
        return EquilibriumReport(
            kind="nash",
            defender_set=m.index.unrank(r),
            attacker_set=m.index.unrank(c),
            value=v,
        )
    return stackelberg_defender_leader(m)


def _top_degree_nodes(d: np.ndarray, count: int, exclude=()) -> tuple[int, ...]:
    banned = set(exclude)
    order = sorted(
        (i for i in range(len(d)) if i not in banned), key=lambda i: (-d[i], i)
    )
    return tuple(sorted(order[:count]))


def predict_equilibrium(
    g: Graph, gain: float, f: int, law: ControlLaw, cap: int | None = None
) -> EquilibriumReport:
    """Closed-form equilibrium when a known hypothesis holds.

    Checks, in order: the degree-gap NE threshold and degree-leader result
    (law 1, f = 1), the top-degrees result for large gains (law 1, f > 1),
    the effective-center / tree-center result (law 2, f = 1), and the
    virtual-node resistance min-max (law 2, f > 1). Returns kind "none"
    when no hypothesis applies, signalling the matrix solver is needed.
    """
    if gain <= 0:
        raise ConfigError(f"gain must be positive, got {gain}")
    index = SubsetIndex(g.n, f)  # validates f against n
    no_prediction = EquilibriumReport(
        kind="none", defender_set=(), attacker_set=(), value=None
    )
    if law is ControlLaw.ABS_VELOCITY:
        if not g.has_unit_weights:
            return no_prediction
        d = degrees(g)
        prof = degree_profile(g)
        if f == 1:
            kbar = nash_threshold(g)
            v = prof.argmax_nodes[0]
            if gain <= kbar:
                return EquilibriumReport(
                    kind="nash",
                    defender_set=(v,),
                    attacker_set=(v,),
                    value=(prof.delta1 + 1.0) / (2.0 * gain + 2.0),
                    theorem="degree-gap-nash",
                    witness="max-degree node",
                    threshold=kbar,
                    gain_above_threshold=False,
                )
            attacker = _top_degree_nodes(d, 1, exclude=(v,))
            return EquilibriumReport(
                kind="stackelberg_defender_leader",
                defender_set=(v,),
                attacker_set=attacker,
                value=0.5 * (prof.delta2 + 1.0),
                theorem="degree-leader",
                witness="max-degree node",
                threshold=kbar,
                gain_above_threshold=True,
            )
        if g.n >= 2 * f and gain >= 0.5 * (f * prof.delta1 - 2.0):
            defender = _top_degree_nodes(d, f)
            attacker = _top_degree_nodes(d, f, exclude=defender)
            value = 0.5 * (sum(d[i] for i in attacker) + f)
            return EquilibriumReport(
                kind="stackelberg_defender_leader",
                defender_set=defender,
                attacker_set=attacker,
                value=float(value),
                theorem="top-degrees",
                witness="top-f-degree nodes",
            )
        return no_prediction
    # law 2
    if f == 1:
        ecc = effective_eccentricities(g)
        tie_set = np.flatnonzero(ecc <= ecc.min() + 1e-12)
        v = int(tie_set[0])
        rmat = resistance_matrix(g)
        attacker = int(rmat[v].argmax())
        on_tree = g.is_tree and g.has_unit_weights
        return EquilibriumReport(
            kind="stackelberg_defender_leader",
            defender_set=(v,),
            attacker_set=(attacker,),
            value=0.5 + 0.5 / gain + 0.5 * float(ecc[v]),
            theorem="tree-center" if on_tree else "effective-center",
            witness="graph center" if on_tree else "effective center",
        )
    cap_val = _enum_cap(cap)
    if index.size > cap_val:
        raise EnumerationLimitError(
            f"C({g.n},{f}) = {index.size} subsets exceeds the enumeration cap "
            f"{cap_val} (override via {ENUM_CAP_ENV})"
        )
    best = None
    for sub in index.all_subsets():
        gdiag = grounded_inverse_diag(GroundedSystem(g, sub, gain))
        worst_nodes = tuple(sorted(np.argsort(-gdiag, kind="stable")[:f].tolist()))
        worst = float(sum(gdiag[i] for i in worst_nodes))
        if best is None or worst < best[0]:
            best = (worst, sub, worst_nodes)
    worst, defender, attacker = best
    return EquilibriumReport(
        kind="stackelberg_defender_leader",
        defender_set=defender,
        attacker_set=attacker,
        value=0.5 * f + 0.5 * worst,
        theorem="resistance-minimax",
        witness="min-max virtual-node resistance set",
    )


@dataclass(frozen=True)
class SweepRow:
    kappa: float
    kind: str
    defender_set: tuple[int, ...]
    attacker_set: tuple[int, ...]
    value: float


def sweep_gain(
    g: Graph, f: int, law: ControlLaw, kappa_grid, cap: int | None = None
) -> list[SweepRow]:
    """Solve the game on each gain of the grid; NE when present, else Stackelberg."""
    grid = [float(k) for k in kappa_grid]
    if not grid:
        raise ConfigError("gain grid must be nonempty")
    if any(k <= 0 for k in grid):
        raise ConfigError("all grid gains must be positive")
    rows = []
    for kappa in grid:
        report = solve(build_matrix(g, kappa, f, law, cap=cap))
        rows.append(
            SweepRow(
                kappa=kappa,
                kind=report.kind,
                defender_set=report.defender_set,
                attacker_set=report.attacker_set,
                value=report.value,
            )
        )
    return rows
