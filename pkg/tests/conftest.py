import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_hermitian(rng, dim, batch=()):
    """Random Hermitian matrix (stack) with entries of order one."""
    shape = batch + (dim, dim)
    a = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return (a + np.conj(np.swapaxes(a, -1, -2))) / 2.0


def random_density(rng, dim, batch=()):
    """Random PSD matrix (stack) with unit trace."""
    shape = batch + (dim, dim)
    a = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    rho = a @ np.conj(np.swapaxes(a, -1, -2))
    tr = np.trace(rho, axis1=-2, axis2=-1).real
    return rho / tr[..., None, None]


def random_pure_state(rng, dim, batch=()):
    """Normalized random complex vector(s)."""
    psi = rng.normal(size=batch + (dim,)) + 1j * rng.normal(size=batch + (dim,))
    return psi / np.linalg.norm(psi, axis=-1, keepdims=True)
