"""Release gates: every criterion at its stated tolerance, full size.

Each test prints the one-line pass/fail report of its criterion so a
verbose run doubles as the acceptance record.
"""

import time

from multipath.acceptance import (criterion_bell, criterion_delta_physics,
                                  criterion_duality_saturation,
                                  criterion_mesh_compiler,
                                  criterion_oracle_equivalence,
                                  criterion_pearson, criterion_randomness,
                                  criterion_sorkin,
                                  criterion_transition_fidelity,
                                  criterion_visibility_coherence, run_suite)


def _check(result, budget=None):
    print(result.line())
    assert result.passed, result.detail
    if budget is not None:
        assert result.seconds < budget, f"runtime {result.seconds:.1f}s over {budget}s"


def test_criterion_1_oracle_equivalence():
    _check(criterion_oracle_equivalence(), budget=30.0)


def test_criterion_2_duality_saturation():
    _check(criterion_duality_saturation())


def test_criterion_3_visibility_equals_coherence():
    _check(criterion_visibility_coherence())


def test_criterion_4_sorkin():
    _check(criterion_sorkin(), budget=60.0)


def test_criterion_5_randomness():
    _check(criterion_randomness())


def test_criterion_6_bell():
    _check(criterion_bell())


def test_criterion_7_mesh_compiler():
    _check(criterion_mesh_compiler(), budget=10.0)


def test_criterion_8_transition_fidelity():
    _check(criterion_transition_fidelity())


def test_criterion_9_pearson_distance():
    _check(criterion_pearson())


def test_criterion_10_delta_physics():
    _check(criterion_delta_physics())


def test_fast_suite_is_fast_and_green():
    t0 = time.time()
    results = run_suite(fast=True)
    elapsed = time.time() - t0
    assert all(r.passed for r in results)
    assert elapsed < 10.0, f"fast profile took {elapsed:.1f}s"


def test_mutation_in_eraser_convention_is_caught(monkeypatch):
    # flipping the sign convention of the eraser splitter must trip the
    # oracle-equivalence gate: the explicit simulation diverges from the
    # closed forms at generic control phases
    import numpy as np
    from multipath import delayed_choice

    def conjugated_eraser(d):
        eye = np.eye(d)
        return np.block([[eye, -1j * eye], [-1j * eye, eye]]) / np.sqrt(2.0)

    monkeypatch.setattr(delayed_choice, "eraser_unitary", conjugated_eraser)
    result = criterion_oracle_equivalence(fast=True)
    print(result.line())
    assert not result.passed
