import dataclasses
from itertools import combinations

import numpy as np
import pytest

from multipath.delayed_choice import (InterferometerConfig, heralded_intensities)
from multipath.sorkin import (SorkinRun, fourth_order_term, kappa, kappa_batch,
                              required_openings, run_openings,
                              second_order_term)


def test_required_openings_structure():
    openings = required_openings(4)
    assert len(openings) == 4 + 6 + 1
    assert openings[-1] == (0, 1, 2, 3)


def test_second_order_term_additive_source_is_zero():
    assert second_order_term(0.75, 0.25, 0.5) == 0.0
    with pytest.raises(ValueError):
        second_order_term(-0.1, 0.0, 0.0)


def test_second_order_terms_positive_at_prime_maximum():
    # full-wave 4-path at the prime maximum: every pair interferes
    # constructively
    run = run_openings(4)
    vals = run.values()
    total = 0.0
    for i, j in combinations(range(4), 2):
        term = second_order_term(vals[(i, j)], vals[(i,)], vals[(j,)])
        assert term > 0
        total += term
    assert total > 0


def test_mesh_route_matches_closed_form_route():
    # the same opening probabilities through the closed-form pipeline
    # with a blocking mask (dual route to the mesh transfer matrices)
    run = run_openings(4, epsilon=0.0)
    for opening, p_mesh in run.probabilities.items():
        mask = tuple(i not in opening for i in range(4))
        cfg = InterferometerConfig.standard(4, np.pi, 0.0, theta=np.pi,
                                            blocking=mask)
        upper, _ = heralded_intensities(cfg)
        assert abs(upper[0] - p_mesh) < 1e-12


def test_fourth_order_term_vanishes_for_born_rule():
    rng = np.random.default_rng(8)
    thetas = [np.pi] + list(rng.uniform(0, 2 * np.pi, 10))
    for theta in thetas:
        run = run_openings(4, theta=theta)
        vals = run.values()
        pair_vals = {s: vals[s] for s in combinations(range(4), 2)}
        single_vals = {(i,): vals[(i,)] for i in range(4)}
        i_iv = fourth_order_term(vals[(0, 1, 2, 3)], pair_vals, single_vals)
        assert abs(i_iv) < 1e-12


def test_fourth_order_term_with_leakage_is_order_epsilon():
    eps = 0.004
    run = run_openings(4, epsilon=eps, seed=5)
    vals = run.values()
    pair_vals = {s: vals[s] for s in combinations(range(4), 2)}
    single_vals = {(i,): vals[(i,)] for i in range(4)}
    i_iv = fourth_order_term(vals[(0, 1, 2, 3)], pair_vals, single_vals)
    scale = vals[(0, 1, 2, 3)]
    assert 0 < abs(i_iv) < 100 * eps * scale


def test_fourth_order_term_recovers_planted_value():
    rng = np.random.default_rng(3)
    singles = {(i,): rng.uniform(0.1, 1.0) for i in range(4)}
    pairs = {s: rng.uniform(0.1, 1.0) for s in combinations(range(4), 2)}
    planted = 0.0123
    p_full = sum(pairs.values()) - 2 * sum(singles.values()) + planted
    got = fourth_order_term(p_full, pairs, singles)
    assert abs(got - planted) < 1e-12


def test_fourth_order_term_missing_subset():
    singles = {(i,): 0.1 for i in range(4)}
    pairs = {s: 0.2 for s in combinations(range(4), 2)}
    del pairs[(1, 2)]
    with pytest.raises(ValueError):
        fourth_order_term(1.0, pairs, singles)


def test_kappa_ideal_is_zero():
    rep = kappa(run_openings(4))
    assert abs(rep.kappa) < 1e-12
    assert abs(rep.fourth_order) < 1e-14
    assert sum(rep.second_order) > 0.1


def test_kappa_scale_invariance():
    run = run_openings(4, epsilon=0.003, seed=9)
    scaled = dataclasses.replace(
        run, probabilities={s: 7.0 * p for s, p in run.probabilities.items()})
    assert abs(kappa(run).kappa - kappa(scaled).kappa) < 1e-12


def test_kappa_missing_opening_errors():
    run = run_openings(4)
    probs = dict(run.probabilities)
    del probs[(0, 1)]
    broken = dataclasses.replace(run, probabilities=probs)
    with pytest.raises(ValueError):
        kappa(broken)


def test_kappa_vanishing_denominator_errors():
    # additive (non-interfering) values null every second-order term
    openings = required_openings(4)
    probs = {s: 0.1 * len(s) for s in openings}
    run = SorkinRun(4, openings, probs, None, 0.0, None, None)
    with pytest.raises(ValueError):
        kappa(run)


def test_kappa_batch_deterministic():
    a = kappa_batch(10, epsilon=0.003, mean_total=1e4, seed=31)
    b = kappa_batch(10, epsilon=0.003, mean_total=1e4, seed=31)
    assert a.kappas == b.kappas


def test_kappa_batch_statistics_at_reference_settings():
    rep = kappa_batch(60, d=4, epsilon=0.003, mean_total=1e4, seed=2024)
    stderr = rep.kappa_std / np.sqrt(60)
    assert abs(rep.kappa_mean) <= 3 * stderr
    assert 5e-4 <= rep.kappa_std <= 5e-2


def test_kappa_std_scales_with_counts():
    # Poisson-limited spread falls like 1/sqrt(mean_total) over a decade
    s_low = kappa_batch(150, epsilon=0.0, mean_total=1e4, seed=3).kappa_std
    s_high = kappa_batch(150, epsilon=0.0, mean_total=1e5, seed=4).kappa_std
    assert 2.2 < s_low / s_high < 4.5


def test_counts_mode_scales_with_opening_size():
    run = run_openings(4, mean_total=1e5, seed=6)
    n_full = run.counts[(0, 1, 2, 3)].counts[0]
    n_single = run.counts[(0,)].counts[0]
    # single openings carry 1/16 of the full-open rate
    assert 0.8 < n_single / (n_full / 16.0) < 1.2


def test_kappa_report_csv_layout():
    rep = kappa_batch(3, epsilon=0.0, mean_total=1e4, seed=1)
    text = rep.to_csv()
    lines = text.strip().split("\n")
    assert lines[0] == "trial,kappa"
    assert len(lines) == 1 + 3 + 2  # header, trials, mean, std
    assert lines[-2].startswith("mean,")
    assert lines[-1].startswith("std,")
