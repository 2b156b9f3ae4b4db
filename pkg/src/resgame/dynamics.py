"""Attacked second-order network dynamics and their H2 norms.

Two control laws are supported: absolute-velocity damping (law 1) and
relative-velocity coupling with grounded self-feedback (law 2). The
closed-form H2 expressions are cross-checked by an independent
finite-horizon energy integration of the impulse response.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ConfigError, ConvergenceError
from .graphcore import Graph, degrees, laplacian
from .resistance import GroundedSystem, grounded_inverse_diag


class ControlLaw(enum.Enum):
    """Which velocity feedback the agents run."""

    ABS_VELOCITY = 1
    REL_VELOCITY = 2

    @classmethod
    def from_int(cls, value: int) -> "ControlLaw":
        try:
            return cls(value)
        except ValueError:
            raise ConfigError(f"control law must be 1 or 2, got {value!r}")


@dataclass(frozen=True)
class Scenario:
    """One attacked-network instance: graph, law, gain, and node sets."""

    graph: Graph
    law: ControlLaw
    gain: float
    defense_set: tuple[int, ...]
    attack_set: tuple[int, ...]

    def __post_init__(self):
        dset = tuple(sorted(int(i) for i in self.defense_set))
        aset = tuple(sorted(int(i) for i in self.attack_set))
        object.__setattr__(self, "defense_set", dset)
        object.__setattr__(self, "attack_set", aset)
        problems = []
        if self.gain <= 0:
            problems.append(f"gain must be positive, got {self.gain}")
        if not aset:
            problems.append("attack set must be nonempty")
        if len(set(dset)) != len(dset) or len(set(aset)) != len(aset):
            problems.append("node sets must not contain duplicates")
        n = self.graph.n
        if any(not 0 <= i < n for i in dset + aset):
            problems.append(f"node sets must lie in [0, {n})")
        if self.law is ControlLaw.REL_VELOCITY and not dset:
            problems.append("law 2 requires a nonempty defense set")
        if problems:
            raise ConfigError("; ".join(problems))

    @property
    def budget(self) -> int:
        return len(self.attack_set)


@dataclass(frozen=True)
class StateSpace:
    """Drift and input/output matrices of the attacked dynamics."""

    a: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    c: np.ndarray


@dataclass(frozen=True)
class H2Result:
    """Squared H2 norm with its per-attacked-node breakdown.

    value_sq == constant + sum(per_node.values()); constant carries the
    f/2 term of law 2 for the closed form and is zero otherwise.
    """

    value_sq: float
    per_node: dict[int, float]
    constant: float
    method: str


def _indicator(n: int, nodes) -> np.ndarray:
    y = np.zeros(n)
    for i in nodes:
        y[i] = 1.0
    return y


def attack_input(n: int, attack_set) -> np.ndarray:
    """Column-per-attacked-node selector F (n x f, one 1 per column)."""
    f = np.zeros((n, len(attack_set)))
    for col, i in enumerate(sorted(attack_set)):
        f[i, col] = 1.0
    return f


def assemble(s: Scenario) -> StateSpace:
    """Build the 2n-state model: x-block integrates velocities, v-block couples."""
    n = s.graph.n
    lap = laplacian(s.graph)
    dy = np.diag(_indicator(n, s.defense_set))
    if s.law is ControlLaw.ABS_VELOCITY:
        h = np.eye(n) + s.gain * dy
        lower = (-lap, -h)
    else:
        lbar = lap + s.gain * dy
        lower = (-lbar, -lbar)
    a = np.block([[np.zeros((n, n)), np.eye(n)], [lower[0], lower[1]]])
    b1 = np.vstack([np.zeros((n, n)), np.eye(n)])
    fmat = attack_input(n, s.attack_set)
    b2 = np.kron(np.eye(2), fmat)
    c = np.hstack([np.zeros((n, n)), np.eye(n)])
    return StateSpace(a=a, b1=b1, b2=b2, c=c)


def h2_closed_form(s: Scenario) -> H2Result:
    """Squared H2 norm from the attack channels to the velocity output.

    Law 1: sum over attacked nodes of (d_i + 1) / (2 (1 + gain * y_i)).
    Law 2: f/2 plus half the grounded-inverse diagonal at attacked nodes.
    """
    if s.law is ControlLaw.ABS_VELOCITY:
        d = degrees(s.graph)
        defended = set(s.defense_set)
        per_node = {
            i: 0.5 * (d[i] + 1.0) / (1.0 + (s.gain if i in defended else 0.0))
            for i in s.attack_set
        }
        constant = 0.0
    else:
        gdiag = grounded_inverse_diag(
            GroundedSystem(s.graph, s.defense_set, s.gain)
        )
        per_node = {i: 0.5 * float(gdiag[i]) for i in s.attack_set}
        constant = 0.5 * s.budget
    return H2Result(
        value_sq=constant + sum(per_node.values()),
        per_node=per_node,
        constant=constant,
        method="closed_form",
    )


def _stable_decay_rate(a: np.ndarray) -> float:
    """Slowest decay among the non-marginal eigenvalues of the drift matrix."""
    eigvals = np.linalg.eigvals(a)
    stable = eigvals[np.abs(eigvals) > 1e-9]
    rate = float((-stable.real).min())
    if rate <= 0:
        raise ConvergenceError("drift matrix has an unstable observable mode")
    return rate


def h2_energy_oracle(
    s: Scenario,
    horizon: float | None = None,
    steps: int | None = None,
    max_dt: float = 0.005,
    tail_tol: float = 1e-8,
) -> H2Result:
    """Quadrature of the impulse-response output energy over [0, horizon].

    Integrates ||C exp(A t) B2||_F^2 with composite Simpson on a grid fine
    enough for the fastest mode, then adds the analytic tail estimate from
    the slowest decay rate. Independent of the closed-form route.
    """
    ss = assemble(s)
    rate = _stable_decay_rate(ss.a)
    horizon = 20.0 / rate if horizon is None else float(horizon)
    if steps is None:
        steps = max(2000, int(np.ceil(horizon / max_dt)))
    if steps % 2:
        steps += 1
    dt = horizon / steps
    propagator = scipy.linalg.expm(ss.a * dt)
    n = s.graph.n
    f = s.budget
    x = ss.b2.copy()
    # per-channel integrand: columns (k, f+k) belong to attacked node k
    samples = np.empty((steps + 1, f))
    for step in range(steps + 1):
        out = x[n:, :]  # C selects the velocity block
        energy = (out * out).sum(axis=0)
        samples[step] = energy[:f] + energy[f:]
        x = propagator @ x
    total_end = samples[-1].sum()
    total_start = samples[0].sum()
    if total_end > tail_tol * max(total_start, 1.0):
        raise ConvergenceError(
            f"integrand has not decayed at horizon {horizon:.3g}: "
            f"{total_end:.3g} vs start {total_start:.3g}"
        )
    weights = np.ones(steps + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    integrals = (dt / 3.0) * weights @ samples
    tails = samples[-1] / (2.0 * rate)
    per_node = {
        node: float(integrals[col] + tails[col])
        for col, node in enumerate(sorted(s.attack_set))
    }
    return H2Result(
        value_sq=sum(per_node.values()),
        per_node=per_node,
        constant=0.0,
        method="energy_oracle",
    )


def lyapunov_residual(s: Scenario) -> float:
    """Max residual of the block Gramian identities for law 1.

    Uses the block-diagonal representative with the velocity block equal to
    half the inverse damping matrix and the position block chosen to
    annihilate the rigid consensus direction; the diagonal entries that
    enter the H2 trace are unchanged by that choice.
    """
    if s.law is not ControlLaw.ABS_VELOCITY:
        raise ConfigError("lyapunov_residual is defined for law 1 only")
    n = s.graph.n
    lap = laplacian(s.graph)
    h = np.eye(n) + s.gain * np.diag(_indicator(n, s.defense_set))
    h_inv = np.linalg.inv(h)
    w22 = 0.5 * h_inv
    w11 = 0.5 * h_inv @ lap  # right-annihilates the all-ones direction
    res_velocity = np.abs(w22 @ h + h @ w22 - np.eye(n)).max()
    sym_w11 = 0.5 * (w11 + w11.T)
    cross = lap @ w22
    res_cross = np.abs(sym_w11 - 0.5 * (cross + cross.T)).max()
    res_deflation = max(np.abs(w11 @ np.ones(n)).max(), 0.0)
    return float(max(res_velocity, res_cross, res_deflation))
