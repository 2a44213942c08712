import numpy as np
import pytest

from carfock import make_ket


def random_ket(rng, order, parity_pure=None):
    """Dense random normalized ket on the given modes.

    parity_pure: None for a generic ket, 0/1 to restrict to one sector.
    """
    n = len(order)
    dim = 2**n
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    if parity_pure is not None:
        for i in range(dim):
            if bin(i).count("1") % 2 != parity_pure:
                v[i] = 0.0
    v /= np.linalg.norm(v)
    terms = [(format(i, f"0{n}b"), v[i]) for i in range(dim) if abs(v[i]) > 1e-12]
    return make_ket(order, terms)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


@pytest.fixture
def phi():
    """The three-mode demo state ½(|100> + |010> + |101> + |011>)_abc."""
    return make_ket("abc", [("100", 0.5), ("010", 0.5), ("101", 0.5), ("011", 0.5)])
