"""Command-line front end: parameter sweeps, self-checks, mesh tools.

Subcommands
-----------
run           execute one scenario sweep and write CSV/JSON/SVG artifacts
verify        run the acceptance suite (fast or full profile)
mesh compile  decompose a unitary into an MZI mesh document
mesh eval     evaluate a mesh document back into its transfer matrix

Every ``run`` invocation is deterministic for a fixed spec and seed: CSV
and JSON artifacts are byte-identical across repeated runs.  Scenario
parameters can come from a JSON config file (``--config``); explicit
flags override file values.  The default output directory is taken from
the ``MULTIPATH_OUTPUT_DIR`` environment variable when set.

Exit codes: 0 success, 1 validation error, 2 acceptance failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import sorkin as sorkin_mod
from .acceptance import run_suite
from .bsgen import balanced_splitter, fourier, hadamard
from .delayed_choice import InterferometerConfig, quantum_distribution, sample_counts
from .mesh import compile_unitary, evaluate, mesh_from_json, mesh_to_json
from .metrics import chsh_optimal_angles, chsh_value, coherence_from_interference, min_entropy
from .qcore import Unitary, bell_state, state_fidelity, werner_state
from .sweeps import classical_quantum_pearson, duality_sweep, transition_distributions

SCENARIOS = ("transition", "duality", "fringe", "sorkin", "randomness", "bell", "pearson")
FORMATS = ("csv", "json", "svg")


class ValidationError(ValueError):
    """Bad scenario spec or unusable input; exits with status 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; exit code 2 is reserved
    # for acceptance failures, so route usage errors through ValidationError
    def error(self, message):
        raise ValidationError(message)


def parse_grid(text: str, name: str) -> np.ndarray:
    """Parse 'start:stop:step' (inclusive) or a single value."""
    parts = text.split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ValidationError(f"{name}: cannot parse {text!r}") from exc
    if len(vals) == 1:
        return np.array(vals)
    if len(vals) != 3:
        raise ValidationError(f"{name}: expected START:STOP:STEP, got {text!r}")
    start, stop, step = vals
    if step <= 0:
        raise ValidationError(f"{name}: step must be > 0")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    if n < 1:
        raise ValidationError(f"{name}: empty grid")
    return start + step * np.arange(n)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_table(out_dir: Path, stem: str, columns: list[str], rows: list[tuple],
                meta: dict, formats: list[str]) -> list[Path]:
    written = []
    if "csv" in formats:
        path = out_dir / f"{stem}.csv"
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    if "json" in formats:
        path = out_dir / f"{stem}.json"
        doc = {"meta": meta, "columns": columns,
               "rows": [[v if not isinstance(v, (np.floating, np.integer, np.bool_))
                         else v.item() for v in row] for row in rows]}
        path.write_text(json.dumps(doc, indent=2) + "\n")
        written.append(path)
    return written


def _savefig(fig, path: Path):
    # Fixed hash salt and no date stamp keep the SVG output reproducible.
    import matplotlib
    matplotlib.rcParams["svg.hashsalt"] = "multipath"
    fig.savefig(path, format="svg", metadata={"Date": None})


def _figure():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------

def _transition_chunk(args):
    d, case, delta, alphas, thetas, noise = args
    return transition_distributions(d, alphas, thetas, delta, case, noise)


def run_transition(spec, out_dir, formats):
    alphas = spec["alphas"]
    thetas = spec["thetas"]
    d, case, delta, workers = spec["d"], spec["case"], spec["delta"], spec["workers"]
    noise = spec["noise"]
    if workers > 1:
        chunks = np.array_split(alphas, workers)
        jobs = [(d, case, delta, c, thetas, noise) for c in chunks if c.size]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_transition_chunk, jobs))
        dists = np.concatenate(parts, axis=0)
    else:
        dists = transition_distributions(d, alphas, thetas, delta, case, noise)
    columns = ["d", "case", "alpha", "delta", "theta", "port", "probability"]
    rows = [
        (d, case, a, delta, t, port, dists[ia, it, port])
        for ia, a in enumerate(alphas)
        for it, t in enumerate(thetas)
        for port in range(d)
    ]
    meta = {"scenario": "transition", "d": d, "case": case, "delta": delta,
            "source_noise": noise, "seed": spec["seed"]}
    written = write_table(out_dir, "transition", columns, rows, meta, formats)
    if "svg" in formats:
        plt = _figure()
        fig, ax = plt.subplots(figsize=(5.2, 4.0))
        im = ax.pcolormesh(thetas, alphas, dists[:, :, 0], shading="nearest",
                           cmap="viridis", vmin=0.0, vmax=1.0)
        ax.set_xlabel("theta")
        ax.set_ylabel("alpha")
        ax.set_title(f"port-0 transition map, d={d}, {case}, delta={delta:g}")
        fig.colorbar(im, ax=ax, label="probability")
        path = out_dir / "transition.svg"
        _savefig(fig, path)
        written.append(path)
    return written


def run_duality(spec, out_dir, formats):
    alphas, d, case, delta = spec["alphas"], spec["d"], spec["case"], spec["delta"]
    reports = duality_sweep(d, alphas, delta, case)
    columns = ["d", "case", "alpha", "delta", "C_d", "V_d", "D_d", "L_d",
               "saturated", "source"]
    rows = [(d, case, a, delta, r.coherence, r.visibility, r.distinguishability,
             r.gap, r.saturated, r.source.value)
            for a, r in zip(alphas, reports)]
    meta = {"scenario": "duality", "d": d, "case": case, "delta": delta,
            "seed": spec["seed"]}
    written = write_table(out_dir, "duality", columns, rows, meta, formats)
    if "svg" in formats:
        plt = _figure()
        fig, ax = plt.subplots(figsize=(5.2, 3.6))
        ax.plot(alphas, [r.coherence for r in reports], label="C_d")
        ax.plot(alphas, [r.distinguishability for r in reports], label="D_d")
        ax.plot(alphas, [r.coherence ** 2 + r.distinguishability ** 2 for r in reports],
                label="C_d^2 + D_d^2")
        ax.axhline(1.0, color="gray", lw=0.8, ls="--")
        ax.set_xlabel("alpha")
        ax.set_title(f"duality relation, d={d}, {case}, delta={delta:g}")
        ax.legend()
        path = out_dir / "duality.svg"
        _savefig(fig, path)
        written.append(path)
    return written


def run_fringe(spec, out_dir, formats):
    thetas, d, case = spec["thetas"], spec["d"], spec["case"]
    alpha, delta = spec["alpha"], spec["delta"]
    dists = transition_distributions(d, np.array([alpha]), thetas, delta, case,
                                     spec["noise"])[0]
    vis, scan = coherence_from_interference(d, alpha, delta, case)
    columns = ["d", "case", "alpha", "delta", "theta", "port", "probability"]
    rows = [(d, case, alpha, delta, t, port, dists[it, port])
            for it, t in enumerate(thetas) for port in range(d)]
    meta = {"scenario": "fringe", "d": d, "case": case, "alpha": alpha,
            "delta": delta, "source_noise": spec["noise"], "seed": spec["seed"],
            "I_max": scan.i_max, "I_inc": scan.i_inc, "V_d": vis,
            "l1_coherence_unnormalized": vis * (d - 1)}
    written = write_table(out_dir, "fringe", columns, rows, meta, formats)
    if "svg" in formats:
        plt = _figure()
        fig, ax = plt.subplots(figsize=(5.2, 3.6))
        ax.plot(thetas, dists[:, 0], label="port 0")
        if d > 2:
            ax.plot(thetas, dists[:, 1], label="port 1", alpha=0.7)
        ax.set_xlabel("theta")
        ax.set_ylabel("probability")
        ax.set_title(f"fringe, d={d}, {case}, alpha={alpha:g}, V_d={vis:.4f}")
        ax.legend()
        path = out_dir / "fringe.svg"
        _savefig(fig, path)
        written.append(path)
    return written


def run_sorkin(spec, out_dir, formats):
    rep = sorkin_mod.kappa_batch(spec["trials"], d=spec["d"],
                                 epsilon=spec["epsilon"],
                                 mean_total=spec["mean_total"], seed=spec["seed"])
    columns = ["trial", "kappa"]
    rows = [(i, k) for i, k in enumerate(rep.kappas)]
    rows.append(("mean", rep.kappa_mean))
    rows.append(("std", rep.kappa_std))
    meta = {"scenario": "sorkin", "d": spec["d"], "epsilon": spec["epsilon"],
            "mean_total": spec["mean_total"], "trials": spec["trials"],
            "seed": spec["seed"], "kappa_mean": rep.kappa_mean,
            "kappa_std": rep.kappa_std}
    written = write_table(out_dir, "sorkin", columns, rows, meta, formats)
    if "svg" in formats:
        plt = _figure()
        fig, ax = plt.subplots(figsize=(5.2, 3.6))
        ax.plot(range(len(rep.kappas)), rep.kappas, "o", ms=3)
        ax.axhline(rep.kappa_mean, color="orange", label="mean")
        ax.axhspan(rep.kappa_mean - rep.kappa_std, rep.kappa_mean + rep.kappa_std,
                   color="orange", alpha=0.2, label="+/- std")
        ax.set_xlabel("trial")
        ax.set_ylabel("kappa")
        ax.set_title(f"Sorkin parameter, eps={spec['epsilon']:g}")
        ax.legend()
        path = out_dir / "sorkin.svg"
        _savefig(fig, path)
        written.append(path)
    return written


def run_randomness(spec, out_dir, formats):
    dims = [int(x) for x in spec["dims"]]
    rows = []
    for d in dims:
        dist = quantum_distribution(InterferometerConfig.standard(d, 0.0, 0.0))
        exact = min_entropy(dist)
        samples = []
        for trial in range(spec["trials"]):
            rec = sample_counts(dist, spec["mean_total"], seed=spec["seed"] + 97 * d + trial)
            samples.append(min_entropy(rec.normalized()))
        rows.append((d, exact, float(np.mean(samples)), float(np.std(samples))))
    columns = ["d", "h_min_exact", "h_min_sampled_mean", "h_min_sampled_std"]
    meta = {"scenario": "randomness", "dims": dims, "mean_total": spec["mean_total"],
            "trials": spec["trials"], "seed": spec["seed"]}
    written = write_table(out_dir, "randomness", columns, rows, meta, formats)
    if "svg" in formats:
        plt = _figure()
        fig, ax = plt.subplots(figsize=(5.2, 3.6))
        ax.plot(dims, [r[1] for r in rows], "o-", label="exact")
        ax.errorbar(dims, [r[2] for r in rows], yerr=[r[3] for r in rows],
                    fmt="s", label="sampled", capsize=3)
        ax.set_xlabel("d")
        ax.set_ylabel("H_min (bits)")
        ax.set_title("min-entropy of the full-particle readout")
        ax.legend()
        path = out_dir / "randomness.svg"
        _savefig(fig, path)
        written.append(path)
    return written


def run_bell(spec, out_dir, formats):
    angles = chsh_optimal_angles()
    ps = spec["ps"]
    rows = []
    for p in ps:
        rho = werner_state(float(p))
        rows.append((float(p), state_fidelity(rho, bell_state()),
                     chsh_value(rho, angles)))
    columns = ["werner_p", "bell_fidelity", "chsh_S"]
    meta = {"scenario": "bell", "seed": spec["seed"]}
    written = write_table(out_dir, "bell", columns, rows, meta, formats)
    if "svg" in formats:
        plt = _figure()
        fig, ax = plt.subplots(figsize=(5.2, 3.6))
        ax.plot([r[0] for r in rows], [r[2] for r in rows], "o-", label="S")
        ax.axhline(2.0, color="gray", ls="--", label="classical bound")
        ax.set_xlabel("Werner weight p")
        ax.set_ylabel("CHSH S")
        ax.legend()
        path = out_dir / "bell.svg"
        _savefig(fig, path)
        written.append(path)
    return written


def run_pearson(spec, out_dir, formats):
    dims = [int(x) for x in spec["dims"]]
    rows = [(d, classical_quantum_pearson(d)) for d in dims]
    columns = ["d", "pearson_distance"]
    meta = {"scenario": "pearson", "dims": dims, "seed": spec["seed"]}
    written = write_table(out_dir, "pearson", columns, rows, meta, formats)
    if "svg" in formats:
        plt = _figure()
        fig, ax = plt.subplots(figsize=(5.2, 3.6))
        ax.plot(dims, [r[1] for r in rows], "o-")
        ax.set_xlabel("d")
        ax.set_ylabel("Pearson distance")
        ax.set_title("classical vs quantum transition surfaces")
        path = out_dir / "pearson.svg"
        _savefig(fig, path)
        written.append(path)
    return written


RUNNERS = {
    "transition": run_transition,
    "duality": run_duality,
    "fringe": run_fringe,
    "sorkin": run_sorkin,
    "randomness": run_randomness,
    "bell": run_bell,
    "pearson": run_pearson,
}

TWO_PI = 2.0 * np.pi
GRID_DEFAULTS = {
    "alphas": f"0:{np.pi}:{np.pi / 64}",
    "thetas": f"0:{TWO_PI}:{TWO_PI / 64}",
}


def _build_spec(args) -> dict:
    """Merge config-file values and flags into one validated spec dict."""
    file_values = {}
    if args.config:
        try:
            file_values = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"config file: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ValidationError("config file must hold a JSON object")

    def pick(name, default):
        flag = getattr(args, name, None)
        if flag is not None:
            return flag
        if name in file_values:
            return file_values[name]
        return default

    scenario = pick("scenario", None)
    if scenario is None:
        raise ValidationError("a scenario is required (flag or config file)")
    scenario = str(scenario).lower()
    if scenario not in SCENARIOS:
        raise ValidationError(f"unknown scenario {scenario!r}; choose from {SCENARIOS}")
    spec = {
        "scenario": scenario,
        "d": int(pick("d", 4)),
        "case": str(pick("case", "quantum")).lower(),
        "alpha": float(pick("alpha", np.pi)),
        "delta": float(pick("delta", 0.0)),
        "alphas": parse_grid(str(pick("alphas", GRID_DEFAULTS["alphas"])), "alphas"),
        "thetas": parse_grid(str(pick("thetas", GRID_DEFAULTS["thetas"])), "thetas"),
        "ps": parse_grid(str(pick("ps", "0:1:0.1")), "ps"),
        "dims": pick("dims", [2, 4, 8, 16] if scenario == "pearson" else [2, 3, 4, 5, 6, 7, 8]),
        "noise": float(pick("noise", 0.0)),
        "epsilon": float(pick("epsilon", 0.003)),
        "mean_total": float(pick("mean_total", 1e4)),
        "trials": int(pick("trials", 60)),
        "seed": int(pick("seed", 0)),
        "workers": int(pick("workers", 1)),
    }
    if isinstance(spec["dims"], str):
        spec["dims"] = [int(x) for x in spec["dims"].split(",")]
    if spec["d"] < 2:
        raise ValidationError("d must be >= 2")
    if spec["case"] not in ("quantum", "classical"):
        raise ValidationError("case must be quantum or classical")
    if not 0.0 <= spec["noise"] <= 1.0:
        raise ValidationError("noise must be in [0, 1]")
    if not 0.0 <= spec["epsilon"] <= 0.05:
        raise ValidationError("epsilon must be in [0, 0.05]")
    if spec["mean_total"] <= 0 or spec["trials"] < 1 or spec["workers"] < 1:
        raise ValidationError("mean_total, trials and workers must be positive")
    return spec


def _read_matrix(path: str) -> np.ndarray:
    doc = json.loads(Path(path).read_text())
    return np.array(doc["real"], dtype=float) + 1j * np.array(doc["imag"], dtype=float)


def _write_matrix(m: np.ndarray, path: Path):
    doc = {"real": m.real.tolist(), "imag": m.imag.tolist()}
    path.write_text(json.dumps(doc, indent=2) + "\n")


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("MULTIPATH_OUTPUT_DIR") or "."
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ValidationError(f"cannot create output directory {out!r}: {exc}") from exc
    return path


def build_parser() -> _Parser:
    parser = _Parser(prog="multipath", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario sweep")
    p_run.add_argument("--scenario", choices=SCENARIOS)
    p_run.add_argument("--config", help="JSON config file; flags override it")
    p_run.add_argument("--d", type=int)
    p_run.add_argument("--case", choices=("quantum", "classical"))
    p_run.add_argument("--alpha", type=float, help="fixed alpha (fringe scenario)")
    p_run.add_argument("--delta", type=float)
    p_run.add_argument("--noise", type=float,
                       help="Werner source-noise weight (transition/fringe)")
    p_run.add_argument("--alphas", help="alpha grid START:STOP:STEP")
    p_run.add_argument("--thetas", help="theta grid START:STOP:STEP")
    p_run.add_argument("--ps", help="Werner weight grid START:STOP:STEP (bell)")
    p_run.add_argument("--dims", help="comma-separated d list (randomness/pearson)")
    p_run.add_argument("--epsilon", type=float, help="blocking leakage (sorkin)")
    p_run.add_argument("--mean-total", dest="mean_total", type=float)
    p_run.add_argument("--trials", type=int)
    p_run.add_argument("--seed", type=int)
    p_run.add_argument("--workers", type=int, help="worker processes for sweeps")
    p_run.add_argument("--format", default="csv,json",
                       help="comma list from csv,json,svg")
    p_run.add_argument("--out", help="output directory (default $MULTIPATH_OUTPUT_DIR or .)")

    p_ver = sub.add_parser("verify", help="run the acceptance suite")
    p_ver.add_argument("--suite", choices=("fast", "full"), default="fast")

    p_mesh = sub.add_parser("mesh", help="mesh compilation tools")
    mesh_sub = p_mesh.add_subparsers(dest="mesh_command", required=True)
    p_mc = mesh_sub.add_parser("compile", help="unitary -> mesh document")
    p_mc.add_argument("--input", help="JSON file with 'real'/'imag' matrix arrays")
    p_mc.add_argument("--kind", choices=("hadamard", "fourier", "balanced"),
                      help="compile a built-in splitter instead of a file")
    p_mc.add_argument("--dim", type=int, help="dimension for --kind")
    p_mc.add_argument("--output", required=True)
    p_me = mesh_sub.add_parser("eval", help="mesh document -> transfer matrix")
    p_me.add_argument("--input", required=True)
    p_me.add_argument("--output", help="write the transfer matrix as JSON")
    return parser


def _cmd_run(args) -> int:
    spec = _build_spec(args)
    formats = [f.strip().lower() for f in args.format.split(",") if f.strip()]
    bad = [f for f in formats if f not in FORMATS]
    if bad:
        raise ValidationError(f"unknown formats {bad}; choose from {FORMATS}")
    out_dir = _out_dir(args)
    written = RUNNERS[spec["scenario"]](spec, out_dir, formats)
    for path in written:
        print(path)
    return 0


def _cmd_verify(args) -> int:
    results = run_suite(fast=(args.suite == "fast"))
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed "
          f"({sum(r.seconds for r in results):.1f}s total)")
    return 2 if failed else 0


def _cmd_mesh(args) -> int:
    if args.mesh_command == "compile":
        if (args.input is None) == (args.kind is None):
            raise ValidationError("give exactly one of --input or --kind/--dim")
        if args.kind is not None:
            if args.dim is None:
                raise ValidationError("--kind needs --dim")
            maker = {"hadamard": hadamard, "fourier": fourier,
                     "balanced": balanced_splitter}[args.kind]
            u = maker(args.dim)
        else:
            try:
                u = Unitary(_read_matrix(args.input))
            except (OSError, KeyError, json.JSONDecodeError, ValueError) as exc:
                raise ValidationError(f"cannot read unitary: {exc}") from exc
        mesh = compile_unitary(u)
        Path(args.output).write_text(mesh_to_json(mesh) + "\n")
        print(f"{args.output}: {len(mesh.nodes)} nodes, d={mesh.d}")
        return 0
    try:
        mesh = mesh_from_json(Path(args.input).read_text())
    except (OSError, KeyError, json.JSONDecodeError, ValueError) as exc:
        raise ValidationError(f"cannot read mesh: {exc}") from exc
    transfer = evaluate(mesh)
    if args.output:
        _write_matrix(transfer, Path(args.output))
        print(args.output)
    else:
        print(np.array_str(transfer, precision=6, suppress_small=True))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_mesh(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
