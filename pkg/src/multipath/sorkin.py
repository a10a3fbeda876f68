"""Higher-order-interference test via path-blocking runs.

Born-rule probabilities contain pairwise interference terms only, so the
fourth-order combination

    I_IV = P(1234) - sum_{i<j} P(ij) + 2 sum_i P(i)

vanishes identically when blocking is exact, for *any* linear-optical
transfer matrix and any phase setting.  The normalized Sorkin parameter
kappa = I_IV / sum_{i<j} I_II(ij) with I_II(ij) = P(ij) - P(i) - P(j)
is therefore zero up to noise; imperfect path closure (residual
intensity epsilon leaking through a switched-off MZI) and photon
Poissonian statistics set its experimental spread.

Blocking here goes through the mesh machinery: the second splitter is
compiled to its MZI mesh and paths are closed with
:func:`multipath.mesh.block_paths`, which is the dominant systematic in
hardware.  Leakage phases are uncontrolled in a thermo-optically switched
MZI but reproducible while the chip sits at one working point, so a run
draws one phase per path (shared by all its opening configurations) and
independent runs redraw them.

All runs operate at the full-wave point (alpha = pi) and at the prime
maximum of the fringe (flat phases, theta = pi), with the monitored
coincidence taken at the first upper port; dark counts default to off
(they are subtracted in practice).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bsgen import balanced_splitter, linear_ramp
from .delayed_choice import CountsRecord
from .mesh import MZIMesh, block_paths, compile_unitary, evaluate

DENOMINATOR_GUARD = 1e-12


def required_openings(d: int) -> tuple[tuple[int, ...], ...]:
    """All singletons, all pairs, and the full set, in canonical order."""
    singles = tuple((i,) for i in range(d))
    pairs = tuple(combinations(range(d), 2))
    return singles + pairs + (tuple(range(d)),)


@dataclass(frozen=True)
class SorkinRun:
    """One executed blocking sequence: every opening with its readout.

    ``probabilities`` maps each opening to the exact monitored-port
    coincidence probability; ``counts`` holds the Poisson records when the
    run was sampled (None for exact runs).
    """

    d: int
    openings: tuple[tuple[int, ...], ...]
    probabilities: dict
    counts: dict | None
    epsilon: float
    mean_total: float | None
    seed: int | None

    def values(self) -> dict:
        """Observed value per opening: counts when sampled, else exact."""
        if self.counts is not None:
            return {s: float(rec.counts[0]) for s, rec in self.counts.items()}
        return dict(self.probabilities)


def _opening_probability(mesh: MZIMesh, opening: tuple[int, ...], epsilon: float,
                         leak_phases, theta: float, alpha: float, delta: float,
                         port: int) -> float:
    """Heralded port coincidence probability with only ``opening`` open."""
    d = mesh.d
    mask = np.ones(d, dtype=bool)
    mask[list(opening)] = False
    blocked = block_paths(mesh, mask, epsilon, leak_phases) if mask.any() else mesh
    t = evaluate(blocked)
    scal = blocked.input_scalings if blocked.input_scalings is not None else np.ones(d)
    v = np.exp(1j * linear_ramp(d, theta).phases) / np.sqrt(d)
    c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    amp = 0.5 * (c * scal[port] * v[port] - 1j * np.exp(1j * delta) * s * (t @ v)[port])
    return float(np.abs(amp) ** 2)


def run_openings(
    d: int = 4,
    epsilon: float = 0.0,
    mean_total: float | None = None,
    seed: int | None = None,
    theta: float = np.pi,
    alpha: float = np.pi,
    delta: float = 0.0,
    port: int = 0,
) -> SorkinRun:
    """Execute the full opening sequence once.

    ``mean_total`` is the expected coincidence count of the all-open
    configuration; None skips Poisson sampling and records exact
    probabilities.  With ``epsilon > 0`` one leakage phase per path is
    drawn for the whole run.
    """
    openings = required_openings(d)
    mesh = compile_unitary(balanced_splitter(d))
    rng = np.random.default_rng(seed)
    leak_phases = rng.uniform(-np.pi, np.pi, size=d) if epsilon > 0 else None
    probs = {
        opening: _opening_probability(
            mesh, opening, epsilon, leak_phases, theta, alpha, delta, port)
        for opening in openings
    }
    counts = None
    if mean_total is not None:
        if mean_total <= 0:
            raise ValueError("mean_total must be positive")
        full = tuple(range(d))
        ref = _opening_probability(mesh, full, 0.0, None, theta, alpha, delta, port)
        rate = mean_total / ref
        counts = {
            s: CountsRecord(np.array([rng.poisson(rate * p)]), mean_total,
                            -1 if seed is None else seed)
            for s, p in probs.items()
        }
    return SorkinRun(d, openings, probs, counts, epsilon, mean_total, seed)


def second_order_term(p_ij: float, p_i: float, p_j: float) -> float:
    """Mutual coherence term I_II(ij) = P(ij) - P(i) - P(j)."""
    if min(p_ij, p_i, p_j) < 0:
        raise ValueError("probabilities/counts must be nonnegative")
    return p_ij - p_i - p_j


def fourth_order_term(p_full: float, pair_values: dict, single_values: dict,
                      d: int = 4) -> float:
    """I_IV = P(all) - sum_{i<j} P(ij) + 2 sum_i P(i); needs every subset."""
    pairs = list(combinations(range(d), 2))
    singles = [(i,) for i in range(d)]
    missing = [s for s in pairs if tuple(s) not in pair_values]
    missing += [s for s in singles if tuple(s) not in single_values]
    if missing:
        raise ValueError(f"opening set incomplete, missing {missing}")
    return (p_full
            - sum(pair_values[tuple(s)] for s in pairs)
            + 2.0 * sum(single_values[tuple(s)] for s in singles))


@dataclass(frozen=True)
class SorkinReport:
    """Second/fourth-order terms and the kappa statistics of a batch."""

    d: int
    second_order: tuple
    fourth_order: float
    kappa: float
    kappa_mean: float
    kappa_std: float
    kappas: tuple

    def to_csv(self) -> str:
        lines = ["trial,kappa"]
        lines += [f"{i},{k!r}" for i, k in enumerate(self.kappas)]
        lines.append(f"mean,{self.kappa_mean!r}")
        lines.append(f"std,{self.kappa_std!r}")
        return "\n".join(lines) + "\n"


def _kappa_terms(run: SorkinRun):
    d = run.d
    vals = run.values()
    full = tuple(range(d))
    for s in required_openings(d):
        if s not in vals:
            raise ValueError(f"run is missing opening {s}")
    pair_values = {s: vals[s] for s in combinations(range(d), 2)}
    single_values = {(i,): vals[(i,)] for i in range(d)}
    i_ii = tuple(
        second_order_term(pair_values[(i, j)], single_values[(i,)], single_values[(j,)])
        for i, j in combinations(range(d), 2)
    )
    i_iv = fourth_order_term(vals[full], pair_values, single_values, d)
    denom = sum(i_ii)
    if abs(denom) < DENOMINATOR_GUARD * max(vals[full], 1e-300):
        raise ValueError("second-order terms vanish; kappa undefined")
    return i_ii, i_iv, i_iv / denom


def kappa(run: SorkinRun) -> SorkinReport:
    """Sorkin report of a single run."""
    i_ii, i_iv, k = _kappa_terms(run)
    return SorkinReport(run.d, i_ii, i_iv, k, k, 0.0, (k,))


def kappa_batch(
    trials: int,
    d: int = 4,
    epsilon: float = 0.0,
    mean_total: float | None = 1e4,
    seed: int = 0,
    theta: float = np.pi,
) -> SorkinReport:
    """Repeat the opening sequence with independent seeds.

    Returns the first trial's interference terms together with the mean
    and standard deviation of kappa over all trials.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    seeds = np.random.SeedSequence(seed).generate_state(trials)
    ks = []
    first = None
    for t in range(trials):
        run = run_openings(d, epsilon, mean_total, int(seeds[t]), theta)
        terms = _kappa_terms(run)
        if first is None:
            first = terms
        ks.append(terms[2])
    ks_arr = np.asarray(ks)
    return SorkinReport(d, first[0], first[1], ks[0],
                        float(ks_arr.mean()), float(ks_arr.std(ddof=1)) if trials > 1 else 0.0,
                        tuple(ks))
