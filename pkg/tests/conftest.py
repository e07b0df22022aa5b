import numpy as np
import pytest

import fiokit as fk


@pytest.fixture(scope="session")
def spec64():
    return fk.GridSpec(N=64)


@pytest.fixture(scope="session")
def fam64(spec64):
    return fk.build_lp_family(spec64)


@pytest.fixture(scope="session")
def aux64(spec64):
    return fk.build_auxiliary(spec64)


@pytest.fixture(scope="session")
def frame64(spec64):
    return fk.ParabolicFrame(spec64)


@pytest.fixture(scope="session")
def spec_fine():
    # finer frequency lattice: unit period multiple, rich dyadic range
    return fk.GridSpec(N=256, L=2.0 * np.pi)


@pytest.fixture(scope="session")
def fam_fine(spec_fine):
    return fk.build_lp_family(spec_fine)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_field(spec, rng, real=False):
    samples = rng.standard_normal(spec.shape)
    if not real:
        samples = samples + 1j * rng.standard_normal(spec.shape)
    return fk.GridField(spec, samples)


def plane_wave(spec, xi0):
    x1, x2 = spec.x_mesh()
    return fk.GridField(spec, np.exp(1j * (xi0[0] * x1 + xi0[1] * x2)))
