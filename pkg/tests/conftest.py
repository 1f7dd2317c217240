import numpy as np
import pytest

from eit3.model import Configuration, SystemParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_hermitian(rng, scale=1.0):
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    return scale * 0.5 * (m + m.conj().T)


def random_state(rng):
    """Random full-rank density matrix (Hermitian, unit trace, positive)."""
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_params(rng, config, with_detuning=True):
    return SystemParams(
        config=config,
        g_probe=float(rng.uniform(0.05, 20.0)),
        g_pump=float(rng.uniform(0.05, 200.0)),
        gamma_a=float(rng.uniform(0.05, 10.0)),
        gamma_b=float(rng.uniform(0.05, 10.0)),
        delta_probe=float(rng.uniform(-50.0, 50.0)) if with_detuning else 0.0,
        delta_pump=float(rng.uniform(-20.0, 20.0)) if with_detuning else 0.0,
    )


@pytest.fixture(params=list(Configuration), ids=lambda c: c.value)
def config(request):
    return request.param
