import numpy as np
import pytest

from idemlab.errors import UnknownSuite
from idemlab.trials import SUITES, run_suite, trial_rng


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_runs_clean(name):
    s = run_suite(name, 6, seed=99, max_dim=6)
    assert s.ok, (s.failing, s.max_residuals)
    assert s.as_dict()["failing_trials"] == []


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope", 1)


def test_trials_are_reproducible_individually():
    a = run_suite("spectra-identity", 5, seed=3)
    b = run_suite("spectra-identity", 5, seed=3)
    assert a.max_residuals == b.max_residuals
    x = trial_rng(3, 4).standard_normal(3)
    assert np.array_equal(x, trial_rng(3, 4).standard_normal(3))
    assert not np.array_equal(x, trial_rng(3, 5).standard_normal(3))


def test_failures_are_reported_with_indices():
    s = run_suite("commutator-identity", 4, seed=0, tolerances={"scaled_residual": -1.0})
    assert s.passed == 0 and s.failing == [0, 1, 2, 3]
