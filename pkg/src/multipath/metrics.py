"""Duality, coherence, randomness, correlation and Bell metrics.

The central objects are the normalized l1 coherence C_d (wave measure),
the generalized fringe visibility V_d (provably equal to C_d), the
multimode path distinguishability D_d (particle measure), and the duality
gap L_d = 1 - C_d^2 - D_d^2, which vanishes exactly for pure states.

The density matrix these are evaluated on describes the *combined*
photon-plus-measurement frame: revealing wave or particle character
depends on which measurement the quantum-controlled splitter implements,
so the measurement basis itself defines the state.
:func:`measurement_state` builds it for the port-0 reading in both the
quantum-superposition and the classical-mixture scenario; only the
uniform first splitter row enters, so the construction is identical for
Hadamard and Fourier splitters.

Fringe-side quantities (I_max, I_inc) are read off interference scans
without density-matrix access, mirroring how visibility is measured:
I_inc from single-path-open runs, I_max by compensating the off-diagonal
phases with the first path phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import minimize_scalar

from .bsgen import balanced_splitter, wrap_angle
from .delayed_choice import PortDistribution
from .qcore import DensityMatrix


# ---------------------------------------------------------------------------
# measurement-frame states
# ---------------------------------------------------------------------------

def _port_basis_vectors(d: int, alpha: float, delta: float, port: int = 0):
    """Unnormalized upper/lower wave-particle basis vectors for one port.

    Kets carry the conjugated splitter row (the bra side is what multiplies
    the photon amplitudes); the distinction only matters for complex
    (Fourier) rows away from port 0.
    """
    c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    row = balanced_splitter(d).entries[port].conj()
    e = np.zeros(d, dtype=complex)
    e[port] = 1.0
    upper = c * e + 1j * np.exp(-1j * delta) * s * row
    lower = -1j * c * e - np.exp(-1j * delta) * s * row
    return upper, lower


def measurement_state(d: int, alpha: float, delta: float, case: str = "quantum",
                      port: int = 0) -> DensityMatrix:
    """Density matrix of the photon-plus-measurement frame.

    ``case="quantum"``: the pure projector onto the wave-particle
    superposition basis vector of the given port (trace-normalized).
    ``case="classical"``: the equal mixture of the upper and lower basis
    projectors of that port; its off-diagonals are all real and equal, so
    the mixture never saturates the duality bound away from the full-wave
    and full-particle points.
    """
    upper, lower = _port_basis_vectors(d, alpha, delta, port)
    if case == "quantum":
        rho = np.outer(upper, upper.conj())
        return DensityMatrix(rho / np.trace(rho).real)
    if case == "classical":
        rho = (np.outer(upper, upper.conj()) + np.outer(lower, lower.conj())) / 2.0
        return DensityMatrix(rho)
    raise ValueError(f"unknown case {case!r}")


def projection_fringe(rho: DensityMatrix, phases: np.ndarray) -> float:
    """Fringe intensity <v_theta| rho |v_theta>, v_theta the phased uniform ket.

    This is the exact interference pattern of the measurement-frame state;
    its prime maximum is (1 + sum_{j!=k} |rho_jk|)/d.
    """
    d = rho.dim
    v = np.exp(1j * np.asarray(phases, dtype=float)) / np.sqrt(d)
    return float(np.real(np.vdot(v, rho.entries @ v)))


# ---------------------------------------------------------------------------
# coherence / distinguishability / visibility
# ---------------------------------------------------------------------------

def l1_coherence(rho: DensityMatrix, normalized: bool = False) -> float:
    """Sum of off-diagonal magnitudes; divided by d-1 when normalized."""
    total = float(np.abs(rho.entries).sum() - np.abs(np.diag(rho.entries)).sum())
    return total / (rho.dim - 1) if normalized else total


def distinguishability(rho: DensityMatrix) -> float:
    """Which-path information sqrt(1 - ((1/(d-1)) sum_{i!=j} sqrt(p_i p_j))^2)."""
    d = rho.dim
    p = np.clip(rho.diagonal(), 0.0, None)
    roots = np.sqrt(p)
    inner = (roots.sum() ** 2 - p.sum()) / (d - 1)
    radicand = 1.0 - inner ** 2
    if radicand < -1e-12:
        raise ValueError(f"invalid diagonal: 1 - (...)^2 = {radicand:.3e} < 0")
    return float(np.sqrt(max(radicand, 0.0)))


@dataclass(frozen=True)
class FringeScan:
    """A scanned interference fringe plus its two readout numbers."""

    thetas: np.ndarray
    intensities: np.ndarray
    i_max: float
    i_inc: float

    def __post_init__(self):
        t = np.asarray(self.thetas, dtype=float)
        i = np.asarray(self.intensities, dtype=float)
        if t.shape != i.shape:
            raise ValueError("theta grid and intensities must match")
        # flat fringes reach i_max == i_inc only up to rounding
        if self.i_inc < 0.0 or self.i_max < self.i_inc - 1e-12:
            raise ValueError(f"need i_max >= i_inc >= 0, got {self.i_max}, {self.i_inc}")
        t.setflags(write=False)
        i.setflags(write=False)
        object.__setattr__(self, "thetas", t)
        object.__setattr__(self, "intensities", i)


def visibility_from_fringe(scan: FringeScan, d: int) -> float:
    """Generalized visibility (I_max - I_inc) / ((d-1) I_inc)."""
    if scan.i_inc <= 0.0:
        raise ValueError("incoherent term is zero; visibility undefined")
    return (scan.i_max - scan.i_inc) / ((d - 1) * scan.i_inc)


def incoherent_term(rho_diag) -> float:
    """(1/d) sum_i rho_ii from the single-path-open populations.

    The operational populations come from
    :func:`multipath.delayed_choice.single_path_probabilities` (one run
    per path, the others exactly blocked, fixed readout port).
    """
    p = np.asarray(rho_diag, dtype=float).ravel()
    if p.size == 0:
        raise ValueError("empty diagonal")
    if p.min() < 0:
        raise ValueError("diagonal entries must be nonnegative")
    if p.sum() == 0:
        raise ValueError("all paths blocked: no population to average")
    return float(p.mean())


def compensation_phase(d: int, alpha: float, delta: float) -> float:
    """First-path phase that aligns all off-diagonal phases at once.

    theta_0 = -arctan[cos(a/2) cos(delta) /
                      (sin(a/2)/sqrt(d) + cos(a/2) sin(delta))]
    with theta_1 = ... = theta_{d-1} = 0, taken on the branch that
    actually maximizes the fringe (the arctan is evaluated as a
    two-argument arctangent so the compensation also works where the
    denominator goes negative, e.g. alpha = 3 pi/2 with delta = pi/2).
    """
    alpha = float(np.mod(alpha, 4 * np.pi))
    c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    if s < 0:  # sin(alpha/2) < 0 flips both components; same ray
        c, s = -c, -s
    return float(np.arctan2(-c * np.cos(delta), s / np.sqrt(d) + c * np.sin(delta)))


class Compensation(Enum):
    ANALYTIC = "analytic"
    NUMERIC_SCAN = "numeric_scan"


def find_prime_maximum(
    fringe_fn,
    d: int,
    compensation: Compensation,
    analytic_phase: float | None = None,
    i_inc: float | None = None,
    resolution: float = 1e-4,
) -> FringeScan:
    """Locate the prime maximum of a compensation-family fringe.

    ``fringe_fn`` maps an array of first-path phases theta_0 (the other
    d-1 phases held at zero) to intensities.  ANALYTIC evaluates the
    curve at the closed-form compensation angle ``analytic_phase``
    (:func:`compensation_phase` for the quantum family, 0 for the
    classical one); NUMERIC_SCAN maximizes on a ``resolution``-spaced
    grid over (-pi, pi] followed by local refinement.  ``i_inc``
    defaults to the ideal single-path value 1/d.
    """
    if i_inc is None:
        i_inc = 1.0 / d
    if compensation is Compensation.ANALYTIC:
        if analytic_phase is None:
            raise ValueError("analytic compensation needs its phase")
        t_star = analytic_phase
        grid = np.linspace(-np.pi, np.pi, 129)
        curve = np.asarray(fringe_fn(grid), dtype=float)
        i_max = float(fringe_fn(np.array([t_star]))[0])
    else:
        n = max(int(np.ceil(2 * np.pi / resolution)), 8)
        grid = -np.pi + 2 * np.pi * (np.arange(n) + 1) / n
        curve = np.asarray(fringe_fn(grid), dtype=float)
        k = int(np.argmax(curve))
        span = 2 * np.pi / n
        res = minimize_scalar(
            lambda t: -float(fringe_fn(np.array([t]))[0]),
            bounds=(grid[k] - span, grid[k] + span),
            method="bounded",
            options={"xatol": 1e-12},
        )
        t_star = wrap_angle(float(res.x))
        i_max = max(float(-res.fun), float(curve[k]))
    return FringeScan(grid, curve, i_max, i_inc)


# ---------------------------------------------------------------------------
# the duality report
# ---------------------------------------------------------------------------

class DualitySource(Enum):
    FROM_DENSITY_MATRIX = "from_density_matrix"
    FROM_FRINGE = "from_fringe"


SATURATION_TOL = 1e-9

DUALITY_CSV_FIELDS = ("d", "C_d", "V_d", "D_d", "L_d", "saturated", "source")


@dataclass(frozen=True)
class DualityReport:
    """The duality tuple (C_d, V_d, D_d, L_d) plus provenance."""

    d: int
    coherence: float
    visibility: float
    distinguishability: float
    gap: float
    saturated: bool
    source: DualitySource

    def __post_init__(self):
        c2d2 = self.coherence ** 2 + self.distinguishability ** 2
        if c2d2 > 1.0 + SATURATION_TOL:
            raise ValueError(f"duality bound violated: C^2 + D^2 = {c2d2!r}")
        if abs(self.gap - (1.0 - c2d2)) > 1e-12:
            raise ValueError("gap is not 1 - C^2 - D^2")

    def to_row(self) -> tuple:
        return (self.d, self.coherence, self.visibility, self.distinguishability,
                self.gap, self.saturated, self.source.value)


def duality_report(
    rho: DensityMatrix,
    fringe: FringeScan | None = None,
) -> DualityReport:
    """Assemble the duality quantities for a measurement-frame state.

    C_d and D_d always come from ``rho``; V_d comes from the fringe scan
    when one is supplied (provenance FROM_FRINGE), otherwise from the
    equality V_d = C_d.
    """
    d = rho.dim
    c = l1_coherence(rho, normalized=True)
    dist = distinguishability(rho)
    if fringe is not None:
        vis = visibility_from_fringe(fringe, d)
        source = DualitySource.FROM_FRINGE
    else:
        vis = c
        source = DualitySource.FROM_DENSITY_MATRIX
    gap = 1.0 - c ** 2 - dist ** 2
    saturated = abs(c ** 2 + dist ** 2 - 1.0) < SATURATION_TOL
    return DualityReport(d, c, vis, dist, gap, saturated, source)


def tsallis_consistency(rho: DensityMatrix) -> tuple[float, float]:
    """Duality gap two ways: from (C_d, D_d) and from the 1/2-Tsallis entropy.

    Returns ``(gap_duality, gap_entropy)`` with
    gap_entropy = ((1/4)(S_{1/2} + 2)^2 - 1)/(d - 1) and
    S_{1/2} = 2 (Tr sqrt(rho) - 1).  The two agree for pure and maximally
    mixed states but are *different* functionals in general (the entropy
    route sees eigenvalues, the duality route sees matrix entries), so
    this returns both rather than asserting equality; the classical
    wave-particle mixture is a concrete family where they split.
    """
    d = rho.dim
    report = duality_report(rho)
    ev = np.clip(rho.eigenvalues(), 0.0, None)
    tr_sqrt = float(np.sqrt(ev).sum())
    gap_entropy = (tr_sqrt ** 2 - 1.0) / (d - 1)
    return report.gap, gap_entropy


# ---------------------------------------------------------------------------
# randomness / statistical distances / Bell
# ---------------------------------------------------------------------------

def min_entropy(dist) -> float:
    """Extractable randomness -log2(max_i p_i) in bits."""
    p = dist.probabilities if isinstance(dist, PortDistribution) else np.asarray(dist, float)
    if p.size == 0 or p.max() <= 0:
        raise ValueError("empty or zero distribution")
    return float(-np.log2(p.max() / p.sum()))


def classical_fidelity(p, q) -> float:
    """Bhattacharyya coefficient sum_i sqrt(p_i q_i) of two distributions."""
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.size} vs {q.size}")
    for name, x in (("p", p), ("q", q)):
        if x.min() < -1e-12 or abs(x.sum() - 1.0) > 1e-6:
            raise ValueError(f"{name} is not a normalized distribution")
    return float(np.sqrt(np.clip(p, 0, None) * np.clip(q, 0, None)).sum())


def pearson_distance(x, y) -> float:
    """1 - Pearson correlation of two equal-length paired samples."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise ValueError("paired samples must have equal length")
    sx, sy = x.std(), y.std()
    if sx == 0.0 or sy == 0.0:
        raise ValueError("zero variance: Pearson distance undefined")
    r = float(((x - x.mean()) * (y - y.mean())).mean() / (sx * sy))
    return 1.0 - r


def _analyzer(theta: float) -> np.ndarray:
    """Projective analyzer cos(t) sigma_z + sin(t) sigma_x."""
    return np.array([[np.cos(theta), np.sin(theta)],
                     [np.sin(theta), -np.cos(theta)]], dtype=complex)


def correlator(rho: DensityMatrix, theta_a: float, theta_b: float) -> float:
    """E(a, b) from the four joint projective outcome probabilities."""
    if rho.dim != 4:
        raise ValueError("correlator needs a two-qubit (4x4) state")
    value = 0.0
    eye = np.eye(2)
    for sign_a in (+1, -1):
        pa = (eye + sign_a * _analyzer(theta_a)) / 2.0
        for sign_b in (+1, -1):
            pb = (eye + sign_b * _analyzer(theta_b)) / 2.0
            prob = float(np.trace(rho.entries @ np.kron(pa, pb)).real)
            value += sign_a * sign_b * prob
    return value


def chsh_optimal_angles() -> tuple[float, float, float, float]:
    """Analyzer angles (a, a', b, b') reaching 2 sqrt(2) on the Bell state."""
    return (0.0, np.pi / 2.0, np.pi / 4.0, 3.0 * np.pi / 4.0)


def chsh_value(rho: DensityMatrix, angles: tuple[float, float, float, float]) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b')."""
    a, a_p, b, b_p = angles
    return (correlator(rho, a, b) - correlator(rho, a, b_p)
            + correlator(rho, a_p, b) + correlator(rho, a_p, b_p))


# ---------------------------------------------------------------------------
# fringe curves of the delayed-choice readout (compensation family)
# ---------------------------------------------------------------------------

def fringe_curve(d: int, alpha: float, delta: float, case: str, thetas0,
                 port: int = 0):
    """Vectorized port fringe along the compensation family (t, 0, ..., 0).

    For visibility extraction the raw heralded coincidence rate at one
    port is recorded against the first-path phase t and divided by a
    single t-independent normalizer taken from the same data that gives
    I_inc: d times the mean single-path-open rate.  (Renormalizing each
    phase setting by its own d-port total, as the transition-distribution
    readout does, would fold the setting-dependent total back into the
    curve and bias I_max whenever sin(alpha) sin(delta) != 0.)  The
    calibrated curve equals the interference pattern
    :func:`projection_fringe` of the measurement-frame state, so its
    maximum over t is (1 + sum_{j!=k} |rho_jk|)/d and I_inc = 1/d.
    """
    ts = np.atleast_1d(np.asarray(thetas0, dtype=float))
    h = balanced_splitter(d).entries
    c, s = np.cos(alpha / 2.0), np.sin(alpha / 2.0)
    ph = np.exp(1j * delta)
    p = np.repeat(np.full((1, d), 1.0 / np.sqrt(d), dtype=complex), ts.size, axis=0)
    p[:, 0] *= np.exp(1j * ts)
    w = p @ h.T
    e_port = np.zeros(d)
    e_port[port] = 1.0
    if case == "quantum":
        raw = np.abs(c * p - 1j * ph * s * w)[:, port] ** 2
        singles = np.abs(c * e_port - 1j * ph * s * h[port]) ** 2
    elif case == "classical":
        raw = c * c * np.abs(p[:, port]) ** 2 + s * s * np.abs(w[:, port]) ** 2
        singles = c * c * e_port + s * s * np.abs(h[port]) ** 2
    else:
        raise ValueError(f"unknown case {case!r}")
    return raw / singles.sum()


def coherence_from_interference(d: int, alpha: float, delta: float, case: str,
                                compensation: Compensation = Compensation.ANALYTIC,
                                i_inc: float | None = None) -> tuple[float, FringeScan]:
    """Fringe-only estimate of the normalized coherence (= V_d).

    Scans the port-0 delayed-choice fringe along the compensation family
    and converts (I_max, I_inc) into the generalized visibility.  The
    analytic compensation angle is the quantum-family formula; the
    classical mixture has all off-diagonal phases already aligned, so its
    maximum sits at zero.  When ``i_inc`` is not given it is taken from
    the single-path protocol's ideal value 1/d.
    """
    fn = lambda ts: fringe_curve(d, alpha, delta, case, ts)
    t_star = compensation_phase(d, alpha, delta) if case == "quantum" else 0.0
    scan = find_prime_maximum(fn, d, compensation, analytic_phase=t_star, i_inc=i_inc)
    return visibility_from_fringe(scan, d), scan
