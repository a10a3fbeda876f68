"""Bounding higher-order interference with path-blocking runs.

A 4-path interferometer at the full-wave prime maximum is measured with
every single path open, every pair open, and all paths open.  The
fourth-order combination I_IV of those readings vanishes identically
under Born-rule (pairwise-only) interference; the normalized Sorkin
parameter kappa = I_IV / sum I_II stays pinned at zero up to two real
effects that this demo turns on one at a time: photon Poissonian counting
noise and imperfect path closure (intensity leakage through the
switched-off MZIs of the splitter mesh).
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from multipath import kappa, kappa_batch, run_openings

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

ideal = kappa(run_openings(4))
print(f"exact blocking, exact intensities: kappa = {ideal.kappa:.2e}")
print(f"  (sum of second-order terms      = {sum(ideal.second_order):.4f})")

poisson_only = kappa_batch(60, epsilon=0.0, mean_total=1e4, seed=7)
print(f"Poisson noise only   (1e4 counts): kappa = {poisson_only.kappa_mean:+.4f} "
      f"+/- {poisson_only.kappa_std:.4f}")

leaky = kappa_batch(60, epsilon=0.003, mean_total=1e4, seed=8)
print(f"plus 0.3% leakage through blocked paths: kappa = {leaky.kappa_mean:+.4f} "
      f"+/- {leaky.kappa_std:.4f}")
print("the bound stays at the 1e-2 level, dominated by counting statistics")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 3.6))
ax1.plot(leaky.kappas, "o", ms=3)
ax1.axhline(leaky.kappa_mean, color="orange", label="mean")
ax1.axhspan(leaky.kappa_mean - leaky.kappa_std, leaky.kappa_mean + leaky.kappa_std,
            color="orange", alpha=0.2, label="+/- std")
ax1.set_xlabel("run")
ax1.set_ylabel("kappa")
ax1.set_title("60 independent runs, eps = 0.003, 1e4 counts")
ax1.legend(fontsize=8)
ax2.hist(leaky.kappas, bins=15, color="tab:red", alpha=0.7)
ax2.set_xlabel("kappa")
ax2.set_ylabel("runs")
ax2.set_title("histogram of measured kappa")
fig.tight_layout()
fig.savefig(OUT / "sorkin_bound.svg")
print(f"wrote {OUT / 'sorkin_bound.svg'}")
