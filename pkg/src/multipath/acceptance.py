"""Self-check suite: every release gate as an executable criterion.

Each criterion function returns a :class:`CriterionResult` with the
pinned tolerance it enforces; :func:`run_suite` executes them all and is
what ``multipath verify`` wraps.  The fast profile shrinks grids and
trial counts (same tolerances) to stay interactive; the full profile
runs everything at its stated size.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from . import sorkin as sorkin_mod
from .delayed_choice import (Herald, InterferometerConfig, PortMode,
                             classical_distribution, quantum_distribution,
                             sample_counts, simulate_full)
from .mesh import compile_unitary, evaluate, frobenius_distance_mod_phase
from .metrics import (chsh_optimal_angles, chsh_value, classical_fidelity,
                      coherence_from_interference, distinguishability,
                      l1_coherence, measurement_state, min_entropy)
from .qcore import StateVector, Unitary, bell_state, state_fidelity, werner_state
from .sweeps import (TRANSITION_ALPHAS, TRANSITION_THETAS,
                     classical_quantum_pearson, transition_distributions)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    tolerance: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name} ({self.seconds:.2f}s, tol {self.tolerance}): "
                f"{self.detail}")


def _grid_alphas(n: int = 17) -> np.ndarray:
    return np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)


DELTAS = (0.0, np.pi / 2.0, -np.pi / 2.0)  # 3 pi/2 mapped into (-pi, pi]


def criterion_oracle_equivalence(fast: bool = False) -> CriterionResult:
    """1: simulate_full matches both closed-form distributions to 1e-10."""
    t0 = time.time()
    dims = (2, 4) if fast else (2, 4, 8)
    alphas = _grid_alphas(5 if fast else 17)
    thetas = np.linspace(0.0, 2.0 * np.pi, 9 if fast else 33)
    worst = 0.0
    for d in dims:
        for alpha in alphas:
            for delta in DELTAS:
                for theta in thetas:
                    cfg = InterferometerConfig.standard(d, alpha, delta, theta=theta)
                    q = quantum_distribution(cfg).probabilities
                    qf = simulate_full(cfg, Herald.CONTROL1).probabilities
                    c = classical_distribution(cfg).probabilities
                    cf = simulate_full(cfg, Herald.CONTROL1,
                                       PortMode.UPPER_AND_LOWER).probabilities
                    worst = max(worst, np.abs(q - qf).max(), np.abs(c - cf).max())
    return CriterionResult("oracle-equivalence", worst < 1e-10,
                           f"max |closed form - full simulation| = {worst:.3e}",
                           "1e-10", time.time() - t0)


def criterion_duality_saturation(fast: bool = False) -> CriterionResult:
    """2: quantum family saturates C^2 + D^2 = 1; classical only at 0, pi."""
    t0 = time.time()
    alphas = _grid_alphas(9 if fast else 17)
    worst_q, ok = 0.0, True
    msgs = []
    for d in (2, 4, 8):
        for delta in DELTAS:
            for alpha in alphas:
                rho = measurement_state(d, alpha, delta, "quantum")
                c2d2 = l1_coherence(rho, True) ** 2 + distinguishability(rho) ** 2
                worst_q = max(worst_q, abs(c2d2 - 1.0))
        for alpha in np.concatenate([alphas, [np.pi]]):
            rho = measurement_state(d, alpha, 0.0, "classical")
            c2d2 = l1_coherence(rho, True) ** 2 + distinguishability(rho) ** 2
            if c2d2 > 1.0 + 1e-9:
                ok = False
                msgs.append(f"classical bound violated at d={d}, alpha={alpha:.3f}")
            at_ends = min(abs(alpha), abs(alpha - np.pi), abs(alpha - 2 * np.pi)) < 1e-12
            if at_ends != (abs(c2d2 - 1.0) < 1e-9):
                ok = False
                msgs.append(f"classical saturation wrong at d={d}, alpha={alpha:.3f}")
    rho = measurement_state(2, np.pi / 2.0, 0.0, "classical")
    half = l1_coherence(rho, True) ** 2 + distinguishability(rho) ** 2
    if abs(half - 0.5) > 1e-9:
        ok = False
        msgs.append(f"classical d=2 alpha=pi/2 gave C^2+D^2 = {half}")
    passed = ok and worst_q < 1e-9
    detail = f"quantum |C^2+D^2-1| max = {worst_q:.3e}; classical checks " + \
        ("ok" if ok else "; ".join(msgs))
    return CriterionResult("duality-saturation", passed, detail, "1e-9",
                           time.time() - t0)


def criterion_visibility_coherence(fast: bool = False) -> CriterionResult:
    """3: fringe visibility reproduces the l1 coherence on both families."""
    t0 = time.time()
    worst = 0.0
    for d in range(2, 9):
        vis, _ = coherence_from_interference(d, np.pi, 0.0, "quantum")
        rho = measurement_state(d, np.pi, 0.0, "quantum")
        worst = max(worst, abs(vis - 1.0), abs(l1_coherence(rho) - (d - 1)))
    alphas = _grid_alphas(9 if fast else 17)
    for d in (2, 4, 8):
        for alpha in alphas:
            vis, _ = coherence_from_interference(d, alpha, 0.0, "classical")
            rho = measurement_state(d, alpha, 0.0, "classical")
            worst = max(worst, abs(vis - np.sin(alpha / 2.0) ** 2),
                        abs(vis - l1_coherence(rho, True)))
    return CriterionResult("visibility-equals-coherence", worst < 1e-6,
                           f"max deviation = {worst:.3e}", "1e-6",
                           time.time() - t0)


def criterion_sorkin(fast: bool = False) -> CriterionResult:
    """4: ideal kappa = 0 to 1e-12; noisy batch statistically consistent."""
    t0 = time.time()
    ideal = sorkin_mod.kappa(sorkin_mod.run_openings(4)).kappa
    trials = 20 if fast else 60
    rep = sorkin_mod.kappa_batch(trials, d=4, epsilon=0.003, mean_total=1e4, seed=2024)
    stderr = rep.kappa_std / np.sqrt(trials)
    ok = (abs(ideal) < 1e-12
          and abs(rep.kappa_mean) <= 3.0 * stderr
          and 5e-4 <= rep.kappa_std <= 5e-2)
    detail = (f"ideal kappa = {ideal:.2e}; batch mean = {rep.kappa_mean:.4f} "
              f"(3 SE = {3 * stderr:.4f}), std = {rep.kappa_std:.4f}")
    return CriterionResult("sorkin-kappa", ok, detail,
                           "1e-12 ideal; |mean| <= 3 SE; std in [5e-4, 5e-2]",
                           time.time() - t0)


def criterion_randomness(fast: bool = False) -> CriterionResult:
    """5: H_min = log2 d exactly; sampled H_min within 0.05 bits >= 95%.

    Sampling depth is 1e4 mean counts per output port.
    """
    t0 = time.time()
    worst_exact = 0.0
    rates = []
    trials = 50 if fast else 200
    for d in range(2, 9):
        cfg = InterferometerConfig.standard(d, 0.0, 0.0)
        dist = quantum_distribution(cfg)
        worst_exact = max(worst_exact, abs(min_entropy(dist) - np.log2(d)))
        hits = 0
        for trial in range(trials):
            rec = sample_counts(dist, 1e4 * d, seed=10_000 * d + trial)
            if abs(min_entropy(rec.normalized()) - np.log2(d)) <= 0.05:
                hits += 1
        rates.append(hits / trials)
    ok = worst_exact < 1e-12 and min(rates) >= 0.95
    detail = (f"exact H_min defect = {worst_exact:.2e}; "
              f"sampled pass rates d=2..8: {[f'{r:.2f}' for r in rates]}")
    return CriterionResult("randomness-min-entropy", ok, detail,
                           "exact 1e-12; 0.05 bits in >= 95% of trials",
                           time.time() - t0)


def criterion_bell(fast: bool = False) -> CriterionResult:
    """6: Tsirelson value ideal; Werner at fidelity 0.962 still violates."""
    t0 = time.time()
    angles = chsh_optimal_angles()
    s_ideal = chsh_value(bell_state().density(), angles)
    p = (4.0 * 0.962 - 1.0) / 3.0
    rho = werner_state(p)
    fid = state_fidelity(rho, bell_state())
    s_noisy = chsh_value(rho, angles)
    ps = np.linspace(0.0, 1.0, 11)
    svals = [chsh_value(werner_state(pp), angles) for pp in ps]
    monotone = all(b >= a - 1e-12 for a, b in zip(svals, svals[1:]))
    rng = np.random.default_rng(7)
    sep_ok = True
    for _ in range(5 if fast else 25):
        kets = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(2)]
        kets = [k / np.linalg.norm(k) for k in kets]
        prod = StateVector(np.kron(kets[0], kets[1]))
        test_angles = tuple(rng.uniform(-np.pi, np.pi, size=4))
        for ang in (angles, test_angles):
            if abs(chsh_value(prod.density(), ang)) > 2.0 + 1e-9:
                sep_ok = False
    ok = (abs(s_ideal - 2.0 * np.sqrt(2.0)) < 1e-9 and abs(fid - 0.962) < 1e-12
          and s_noisy > 2.0 and monotone and sep_ok)
    detail = (f"S_ideal = {s_ideal:.9f}; S(F=0.962) = {s_noisy:.4f}; "
              f"monotone = {monotone}; separable bound held = {sep_ok}")
    return CriterionResult("bell-chsh", ok, detail,
                           "2 sqrt(2) +/- 1e-9; S > 2 at F = 0.962",
                           time.time() - t0)


def criterion_mesh_compiler(fast: bool = False) -> CriterionResult:
    """7: Haar-random unitaries reconstruct through the mesh to 1e-9."""
    t0 = time.time()
    n = 20 if fast else 100
    worst, counts_ok = 0.0, True
    for d in (2, 4, 8, 16):
        for k in range(n):
            u = unitary_group.rvs(d, random_state=90_000 + 1000 * d + k)
            mesh = compile_unitary(Unitary(u))
            if len(mesh.nodes) != d * (d - 1) // 2:
                counts_ok = False
            worst = max(worst, frobenius_distance_mod_phase(evaluate(mesh), u))
    ok = worst < 1e-9 and counts_ok
    detail = f"worst Frobenius error = {worst:.3e}; node counts ok = {counts_ok}"
    return CriterionResult("mesh-compiler", ok, detail, "1e-9 (mod global phase)",
                           time.time() - t0)


def criterion_transition_fidelity(fast: bool = False) -> CriterionResult:
    """8: transition surfaces match theory; Poisson sampling keeps F high.

    Fidelity is pooled over the whole (alpha, theta) surface: the
    surface-wide distribution q assigns each (grid point, port) cell the
    theoretical probability divided by the number of grid points.
    """
    t0 = time.time()
    alphas = TRANSITION_ALPHAS[::4] if fast else TRANSITION_ALPHAS
    thetas = TRANSITION_THETAS[::4] if fast else TRANSITION_THETAS
    n_points = alphas.size * thetas.size
    results = {}
    for d, bound in ((2, 0.99), (8, 0.97)):
        theory = transition_distributions(d, alphas, thetas, 0.0, "quantum")
        sim = np.empty_like(theory)
        for ia, alpha in enumerate(alphas):
            for it, theta in enumerate(thetas):
                cfg = InterferometerConfig.standard(d, alpha, 0.0, theta=theta)
                sim[ia, it] = simulate_full(cfg, Herald.CONTROL1).probabilities
        q_pool = theory.ravel() / n_points
        f_noiseless = classical_fidelity(sim.ravel() / n_points, q_pool)
        trials = 20 if fast else 100
        hits = 0
        for trial in range(trials):
            rng = np.random.default_rng(777 * d + trial)
            counts = rng.poisson(1e4 * theory).ravel()
            f = float(np.sqrt(counts / counts.sum() * q_pool).sum())
            if f >= bound:
                hits += 1
        results[d] = (f_noiseless, hits / trials)
    ok = all(1.0 - fn < 1e-12 and rate >= 0.95 for fn, rate in results.values())
    detail = "; ".join(
        f"d={d}: 1-F_noiseless = {1 - fn:.2e}, sampled pass rate = {rate:.2f}"
        for d, (fn, rate) in results.items())
    return CriterionResult("transition-fidelity", ok, detail,
                           "1-F < 1e-12; F >= 0.99 (d=2) / 0.97 (d=8) in >= 95%",
                           time.time() - t0)


def criterion_pearson(fast: bool = False) -> CriterionResult:
    """9: classical/quantum Pearson distance strictly decreases with d."""
    t0 = time.time()
    dists = [classical_quantum_pearson(d) for d in (2, 4, 8, 16)]
    ok = all(a > b for a, b in zip(dists, dists[1:]))
    detail = "distances d=2,4,8,16: " + ", ".join(f"{x:.5f}" for x in dists)
    return CriterionResult("pearson-distance", ok, detail, "strict decrease",
                           time.time() - t0)


def criterion_delta_physics(fast: bool = False) -> CriterionResult:
    """10: classical readout is delta-blind; quantum readout is steered."""
    t0 = time.time()
    deltas = np.linspace(-np.pi, np.pi, 9 if fast else 17)
    worst_cl = 0.0
    for theta in (0.7, 2.0, np.pi, 4.4):
        base = None
        for delta in deltas:
            cfg = InterferometerConfig.standard(4, 2.3, delta, theta=theta)
            probs = simulate_full(cfg, Herald.CONTROL1,
                                  PortMode.UPPER_AND_LOWER).probabilities
            if base is None:
                base = probs
            worst_cl = max(worst_cl, float(np.abs(probs - base).max()))
    q0 = [quantum_distribution(
        InterferometerConfig.standard(2, 3 * np.pi / 2.0, delta, theta=np.pi))[0]
        for delta in deltas]
    spread = max(q0) - min(q0)
    ok = worst_cl < 1e-12 and spread >= 0.1
    detail = (f"classical delta-dependence = {worst_cl:.2e}; "
              f"quantum port-0 range over delta = {spread:.3f}")
    return CriterionResult("delta-physics", ok, detail,
                           "classical 1e-12; quantum range >= 0.1",
                           time.time() - t0)


CRITERIA = (
    criterion_oracle_equivalence,
    criterion_duality_saturation,
    criterion_visibility_coherence,
    criterion_sorkin,
    criterion_randomness,
    criterion_bell,
    criterion_mesh_compiler,
    criterion_transition_fidelity,
    criterion_pearson,
    criterion_delta_physics,
)


def run_suite(fast: bool = False) -> list[CriterionResult]:
    return [fn(fast=fast) for fn in CRITERIA]
