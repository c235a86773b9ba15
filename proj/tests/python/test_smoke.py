import math

import numpy as np
import pytest

floqsim = pytest.importorskip("floqsim")


def test_bessel():
    assert floqsim.bessel_j0(0.0) == pytest.approx(1.0)
    assert floqsim.bessel_j0(2.404825557695773) == pytest.approx(0.0, abs=1e-12)


def test_walk_conserves_probability():
    dev = floqsim.DeviceSpec.uniform(6, 4.0)
    drive = floqsim.DrivePattern.none(6)
    walk = floqsim.run_quantum_walk(dev, drive, [1, 0, 0, 0, 0, 0], 100.0)
    pops = np.asarray(walk.populations.values)
    assert pops.shape[1] == 6
    assert np.allclose(pops.sum(axis=1), 1.0, atol=1e-9)
    assert pops.min() > -1e-12


def test_otoc_starts_at_one():
    dev = floqsim.DeviceSpec.uniform(4, 4.0)
    opts = floqsim.ModelOptions()
    opts.exact_reverse = True
    grid = floqsim.run_otoc(dev, 0.0, 0.0, "z", [0.0, 10.0, 20.0], opts)
    values = np.asarray(grid.values)
    assert np.allclose(values[0], 1.0, atol=1e-9)
    assert np.abs(values).max() <= 1.0 + 1e-9


def test_reversal_echo():
    dev = floqsim.DeviceSpec.paper_10q()
    opts = floqsim.ModelOptions()
    opts.exact_reverse = True
    rev = floqsim.run_reversed_evolution(dev, 213.6, 400.0, 60.0, opts)
    assert rev.echo_fidelity == pytest.approx(1.0, abs=1e-9)


def test_walk_velocity_fit():
    dev = floqsim.DeviceSpec.uniform(12, 4.0)
    drive = floqsim.DrivePattern.none(12)
    init = [1] + [0] * 11
    walk = floqsim.run_quantum_walk(dev, drive, init, 400.0)
    fit = floqsim.walk_velocity(walk.populations, 1, 5)
    assert fit["converged"]
    v = fit["params"][0]
    coef = v / (2.0 * math.pi * 4.0)
    assert 1.6 < coef < 2.1
