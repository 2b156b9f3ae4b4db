"""Seeded ensemble verification suites behind the `verify` CLI command.

Each suite draws random connected graphs and checks one family of
invariants: linear-algebra structure, agreement of independent
computation routes, monotonicity laws, and the closed-form equilibrium
characterizations against brute-force solves.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import game
from .dynamics import (
    ControlLaw,
    Scenario,
    h2_closed_form,
    h2_energy_oracle,
    lyapunov_residual,
)
from .graphcore import Graph, center, degree_profile, distances, laplacian
from .resistance import (
    GroundedSystem,
    effective_eccentricities,
    extended_graph,
    grounded_inverse_diag,
    laplacian_pinv,
    resistance_matrix,
)


class VerificationFailure(AssertionError):
    """An invariant suite failed; the message names the invariant."""


def random_connected_graph(
    rng: np.random.Generator,
    n: int,
    tree: bool = False,
    weighted: bool = False,
) -> Graph:
    """Random spanning tree plus optional extra edges and weights."""
    edges = {}
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges[(u, v)] = 1.0
    if not tree:
        for _ in range(int(rng.integers(0, n))):
            i, j = (int(x) for x in rng.integers(0, n, 2))
            if i != j:
                edges[(min(i, j), max(i, j))] = 1.0
    if weighted:
        for key in edges:
            edges[key] = float(rng.uniform(0.2, 3.0))
    return Graph(n, tuple((i, j, w) for (i, j), w in edges.items()))


def _fail(name: str, detail: str):
    raise VerificationFailure(f"invariant '{name}' violated: {detail}")


def _bfs_ecc(g: Graph, s: int) -> int:
    adj = g.neighbors()
    dist = {s: 0}
    queue = deque([s])
    far = 0
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                far = max(far, dist[v])
                queue.append(v)
    return far


def check_laplacian_structure(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(2, nmax + 1))
        g = random_connected_graph(rng, n, weighted=bool(rng.integers(0, 2)))
        lap = laplacian(g)
        if fault == "laplacian-sign":
            lap = -lap
        # bit-exact for unit weights; float weights leave rounding residue
        tol = 0.0 if g.has_unit_weights else 1e-12 * n * max(w for _, _, w in g.edges)
        if np.abs(lap @ np.ones(n)).max() > tol:
            _fail("laplacian-zero-rowsum", f"n={n}, edges={g.edges}")
        vals = np.linalg.eigvalsh(lap)
        if int((np.abs(vals) < 1e-9).sum()) != 1:
            _fail("laplacian-single-zero-mode", f"eigs={vals}")
        if (vals < -1e-9).any():
            _fail("laplacian-psd", f"eigs={vals}")
        dmat = distances(g)
        brute = [max(_bfs_ecc(g, s) for s in [v]) for v in range(n)]
        ecc = dmat.max(axis=1)
        if not np.array_equal(ecc, np.array(brute)):
            _fail("distances-vs-bfs", f"{ecc} vs {brute}")
        ctr = set(center(g))
        argmin = {int(i) for i in np.flatnonzero(ecc == ecc.min())}
        if ctr != argmin:
            _fail("center-vs-bfs-argmin", f"{ctr} vs {argmin}")


def check_resistance_routes(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(2, nmax + 1))
        g = random_connected_graph(rng, n, weighted=True)
        rmat = resistance_matrix(g)
        lap = laplacian(g)
        # independent route: ground at j, read the grounded inverse at i
        j = int(rng.integers(0, n))
        keep = [i for i in range(n) if i != j]
        grounded = np.linalg.inv(lap[np.ix_(keep, keep)])
        for pos, i in enumerate(keep):
            if abs(rmat[i, j] - grounded[pos, pos]) > 1e-9:
                _fail(
                    "resistance-pinv-vs-grounded",
                    f"pair ({i},{j}): {rmat[i, j]} vs {grounded[pos, pos]}",
                )
        tree = random_connected_graph(rng, n, tree=True)
        if np.abs(resistance_matrix(tree) - distances(tree)).max() > 1e-9:
            _fail("tree-resistance-equals-distance", f"edges={tree.edges}")


def check_grounded_extended(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(2, nmax + 1))
        g = random_connected_graph(rng, n, weighted=bool(rng.integers(0, 2)))
        kappa = float(rng.choice([0.1, 1.0, 10.0]))
        nd = int(rng.integers(1, min(3, n) + 1))
        dset = tuple(sorted(int(i) for i in rng.choice(n, nd, replace=False)))
        gdiag = grounded_inverse_diag(GroundedSystem(g, dset, kappa))
        ext = extended_graph(g, dset, kappa)
        pinv = laplacian_pinv(ext)
        for i in range(n):
            r_virtual = pinv[i, i] + pinv[n, n] - 2.0 * pinv[i, n]
            if abs(gdiag[i] - r_virtual) / max(abs(r_virtual), 1e-30) > 1e-9:
                _fail(
                    "grounded-diag-vs-extended-pinv",
                    f"node {i}: {gdiag[i]} vs {r_virtual}",
                )


def check_rayleigh_monotonicity(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(3, nmax + 1))
        g = random_connected_graph(rng, n, weighted=bool(rng.integers(0, 2)))
        present = {(i, j) for i, j, _ in g.edges}
        missing = [
            (i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in present
        ]
        if missing:
            i, j = missing[int(rng.integers(0, len(missing)))]
            g2 = g.with_edge(i, j, float(rng.uniform(0.5, 2.0)))
        else:
            i, j, w = g.edges[int(rng.integers(0, len(g.edges)))]
            g2 = Graph(
                n,
                tuple(
                    (a, b, ww * 2.0 if (a, b) == (i, j) else ww)
                    for a, b, ww in g.edges
                ),
            )
        if (resistance_matrix(g2) - resistance_matrix(g) > 1e-9).any():
            _fail("resistance-edge-monotonicity", f"added/upgraded ({i},{j})")
        kappa = float(rng.choice([0.5, 1.0, 2.0]))
        dset = tuple(sorted(int(i) for i in rng.choice(n, 2, replace=False)))
        g1d = grounded_inverse_diag(GroundedSystem(g, dset, kappa))
        g2d = grounded_inverse_diag(GroundedSystem(g2, dset, kappa))
        if (g2d - g1d > 1e-9).any():
            _fail("grounded-diag-edge-monotonicity", f"D={dset}")


def check_gain_monotonicity(rng, trials, nmax, fault=None):
    grid = [0.2, 0.5, 1.0, 2.0, 5.0]
    for _ in range(trials):
        n = int(rng.integers(2, nmax + 1))
        g = random_connected_graph(rng, n)
        dset = tuple(sorted(int(i) for i in rng.choice(n, 1 + int(rng.integers(0, min(2, n))), replace=False)))
        prev = None
        for kappa in grid:
            cur = grounded_inverse_diag(GroundedSystem(g, dset, kappa))
            if prev is not None and not (cur < prev - 0.0).all():
                _fail("grounded-diag-gain-decreasing", f"kappa={kappa}, D={dset}")
            prev = cur


def _random_scenario(rng, nmax, law, allow_empty_defense):
    n = int(rng.integers(3, nmax + 1))
    g = random_connected_graph(rng, n)
    kappa = float(rng.choice([0.2, 1.0, 5.0]))
    low = 0 if allow_empty_defense else 1
    nd = int(rng.integers(low, n + 1))
    dset = tuple(sorted(int(i) for i in rng.choice(n, nd, replace=False)))
    na = int(rng.integers(1, n + 1))
    aset = tuple(sorted(int(i) for i in rng.choice(n, na, replace=False)))
    return Scenario(g, law, kappa, dset, aset)


def check_h2_oracle_law2(rng, trials, nmax, fault=None):
    for _ in range(trials):
        s = _random_scenario(rng, min(nmax, 6), ControlLaw.REL_VELOCITY, False)
        cf = h2_closed_form(s).value_sq
        oracle = h2_energy_oracle(s).value_sq
        if abs(cf - oracle) / cf > 1e-6:
            _fail("h2-closed-vs-oracle-law2", f"{cf} vs {oracle} on {s}")


def check_h2_oracle_law1_undefended(rng, trials, nmax, fault=None):
    # the law-1 closed form is exact when no node is defended (uniform damping)
    for _ in range(trials):
        n = int(rng.integers(3, min(nmax, 6) + 1))
        g = random_connected_graph(rng, n)
        na = int(rng.integers(1, n + 1))
        aset = tuple(sorted(int(i) for i in rng.choice(n, na, replace=False)))
        s = Scenario(g, ControlLaw.ABS_VELOCITY, 1.0, (), aset)
        cf = h2_closed_form(s).value_sq
        oracle = h2_energy_oracle(s).value_sq
        if abs(cf - oracle) / cf > 1e-6:
            _fail("h2-closed-vs-oracle-law1-undefended", f"{cf} vs {oracle}")


def check_lyapunov_blocks(rng, trials, nmax, fault=None):
    for _ in range(trials):
        s = _random_scenario(rng, nmax, ControlLaw.ABS_VELOCITY, True)
        res = lyapunov_residual(s)
        if res > 1e-12:
            _fail("lyapunov-block-residual", f"residual {res} on {s}")


def check_degree_threshold_ne(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(3, nmax + 1))
        g = random_connected_graph(rng, n)
        kappa = float(rng.uniform(1e-6, 2.0))
        m = game.build_matrix(g, kappa, 1, ControlLaw.ABS_VELOCITY)
        saddle = game.find_nash(m)
        kbar = game.nash_threshold(g)
        if (saddle is not None) != (kappa <= kbar):
            _fail(
                "ne-exists-iff-degree-gap",
                f"kappa={kappa}, kbar={kbar}, saddle={saddle}",
            )
        if saddle is not None:
            prof = degree_profile(g)
            expected = (prof.delta1 + 1.0) / (2.0 * kappa + 2.0)
            if abs(saddle[2] - expected) > 1e-12:
                _fail("ne-value-closed-form", f"{saddle[2]} vs {expected}")


def check_law2_no_ne(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(2, nmax + 1))
        g = random_connected_graph(rng, n)
        kappa = float(rng.choice([0.5, 1.0, 2.0]))
        m = game.build_matrix(g, kappa, 1, ControlLaw.REL_VELOCITY)
        if game.find_nash(m) is not None:
            _fail("law2-never-has-pure-ne", f"kappa={kappa}, edges={g.edges}")


def check_degree_leader_value(rng, trials, nmax, fault=None):
    done = 0
    while done < trials:
        n = int(rng.integers(3, nmax + 1))
        g = random_connected_graph(rng, n)
        prof = degree_profile(g)
        if len(prof.argmax_nodes) != 1:
            continue
        done += 1
        kappa = game.nash_threshold(g) + float(rng.uniform(0.01, 2.0))
        m = game.build_matrix(g, kappa, 1, ControlLaw.ABS_VELOCITY)
        rep = game.stackelberg_defender_leader(m)
        expected = 0.5 * (prof.delta2 + 1.0)
        if abs(rep.value - expected) > 1e-12:
            _fail("degree-leader-value", f"{rep.value} vs {expected}")
        if rep.defender_set != (prof.argmax_nodes[0],):
            _fail("degree-leader-row", f"{rep.defender_set} vs {prof.argmax_nodes}")


def check_payoff_structure(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(2, nmax + 1))
        g = random_connected_graph(rng, n)
        kappa = float(rng.uniform(0.1, 3.0))
        m1 = game.build_matrix(g, kappa, 1, ControlLaw.ABS_VELOCITY)
        col_argmin = m1.values.argmin(axis=0)
        if not np.array_equal(col_argmin, np.arange(n)):
            _fail("law1-column-min-on-diagonal", f"argmin={col_argmin}")
        m2 = game.build_matrix(g, kappa, 1, ControlLaw.REL_VELOCITY)
        v = m2.values
        for i in range(n):
            row_others = np.delete(v[i], i)
            col_others = np.delete(v[:, i], i)
            if n > 1 and not (
                (v[i, i] < row_others).all() and (v[i, i] < col_others).all()
            ):
                _fail("law2-diagonal-strict-minimum", f"i={i}")
        # law-1 value ignores defenses placed outside the attacked set
        attack = (int(rng.integers(0, n)),)
        others = [i for i in range(n) if i not in attack]
        base = game.payoff_j1(g, kappa, attack, ())
        if others:
            moved = game.payoff_j1(g, kappa, attack, (others[0],))
            if abs(base - moved) != 0.0:
                _fail("law1-defense-outside-attack-irrelevant", f"{base} vs {moved}")


def check_attack_monotonicity(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(3, nmax + 1))
        g = random_connected_graph(rng, n)
        kappa = float(rng.uniform(0.1, 3.0))
        nodes = list(rng.permutation(n))
        small = tuple(sorted(int(i) for i in nodes[:2]))
        big = tuple(sorted(int(i) for i in nodes[:3]))
        dset = (int(nodes[-1]),)
        if game.payoff_j1(g, kappa, small, dset) > game.payoff_j1(
            g, kappa, big, dset
        ) + 1e-12:
            _fail("attack-superset-monotonicity-law1", f"{small} vs {big}")
        if game.payoff_j2(g, kappa, small, dset) > game.payoff_j2(
            g, kappa, big, dset
        ) + 1e-12:
            _fail("attack-superset-monotonicity-law2", f"{small} vs {big}")


def check_center_predictions(rng, trials, nmax, fault=None):
    for _ in range(trials):
        n = int(rng.integers(3, nmax + 1))
        kappa = float(rng.choice([0.5, 1.0, 2.0]))
        # trees: defender sits at the hop center
        tree = random_connected_graph(rng, n, tree=True)
        m = game.build_matrix(tree, kappa, 1, ControlLaw.REL_VELOCITY)
        rep = game.stackelberg_defender_leader(m)
        ecc = distances(tree).max(axis=1)
        expected = 0.5 + 0.5 / kappa + 0.5 * ecc.min()
        if abs(rep.value - expected) > 1e-9:
            _fail("tree-center-value", f"{rep.value} vs {expected}")
        if rep.defender_set[0] not in set(center(tree)):
            _fail("tree-center-row", f"{rep.defender_set} vs {center(tree)}")
        # general graphs: effective center
        g = random_connected_graph(rng, n)
        m = game.build_matrix(g, kappa, 1, ControlLaw.REL_VELOCITY)
        rep = game.stackelberg_defender_leader(m)
        eff = effective_eccentricities(g)
        expected = 0.5 + 0.5 / kappa + 0.5 * eff.min()
        if abs(rep.value - expected) > 1e-9:
            _fail("effective-center-value", f"{rep.value} vs {expected}")
        # f = 2: virtual-node resistance min-max value
        if n >= 4:
            m = game.build_matrix(g, kappa, 2, ControlLaw.REL_VELOCITY)
            rep = game.stackelberg_defender_leader(m)
            pred = game.predict_equilibrium(g, kappa, 2, ControlLaw.REL_VELOCITY)
            if abs(rep.value - pred.value) > 1e-9:
                _fail("resistance-minimax-value", f"{rep.value} vs {pred.value}")


SUITES = [
    ("laplacian-structure", check_laplacian_structure),
    ("resistance-routes", check_resistance_routes),
    ("grounded-vs-extended", check_grounded_extended),
    ("rayleigh-monotonicity", check_rayleigh_monotonicity),
    ("gain-monotonicity", check_gain_monotonicity),
    ("h2-oracle-law2", check_h2_oracle_law2),
    ("h2-oracle-law1-undefended", check_h2_oracle_law1_undefended),
    ("lyapunov-blocks", check_lyapunov_blocks),
    ("degree-threshold-ne", check_degree_threshold_ne),
    ("law2-no-ne", check_law2_no_ne),
    ("degree-leader-value", check_degree_leader_value),
    ("payoff-structure", check_payoff_structure),
    ("attack-monotonicity", check_attack_monotonicity),
    ("center-predictions", check_center_predictions),
]


def run_suites(
    seed: int = 0, trials: int = 15, nmax: int = 8, fault: str | None = None
) -> dict[str, str]:
    """Run every suite with a seeded generator; returns suite -> pass/fail text."""
    results = {}
    for name, fn in SUITES:
        rng = np.random.default_rng([seed, hash(name) & 0xFFFFFFFF])
        try:
            fn(rng, trials, nmax, fault=fault)
        except VerificationFailure as exc:
            results[name] = f"fail: {exc}"
        else:
            results[name] = "pass"
    return results
