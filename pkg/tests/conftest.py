import numpy as np
import pytest

from inidstat.dist import Exponential, HalfGaussian, ParetoPower, Uniform01
from inidstat.ostat import OrderStatModel

ACCEPT_SEED = 20260813

# Family/K pairs known to certify on the default grid: uniform at 2,
# power laws at 2^(1/p), exponential and half-Gaussian at 3.
CATALOGUE = (
    (Uniform01(), 2.0),
    (ParetoPower(p=0.5), 4.0),
    (ParetoPower(p=1.0), 2.0),
    (ParetoPower(p=2.0), 2.0**0.5),
    (ParetoPower(p=4.0), 2.0**0.25),
    (Exponential(rate=1.0), 3.0),
    (HalfGaussian(sigma=1.0), 3.0),
)


def random_model(rng: np.random.Generator, n_max: int) -> OrderStatModel:
    """A model over the K=3-certifying family pool with log-uniform scales.

    ParetoPower(0.5) is deliberately absent: its smallest certifying K is
    2^(1/0.5) = 4 > 3, so it cannot join a suite verified at a shared K = 3.
    """
    n = int(rng.integers(1, n_max + 1))
    comps = []
    for _ in range(n):
        fam = int(rng.integers(0, 5))
        scale = float(10.0 ** rng.uniform(-2.0, 2.0))
        if fam == 0:
            comps.append(Uniform01(scale=scale))
        elif fam == 1:
            comps.append(ParetoPower(p=float(rng.choice([1.0, 2.0, 4.0])), scale=scale))
        elif fam == 2:
            comps.append(Exponential(rate=1.0, scale=scale))
        elif fam == 3:
            # Same law through the rate parameterization; scale*rate keeps the
            # effective spread of the law equal to `scale`, inside [0.01, 100].
            rate = float(rng.uniform(0.5, 2.0))
            comps.append(Exponential(rate=rate, scale=scale * rate))
        else:
            comps.append(HalfGaussian(sigma=1.0, scale=scale))
    k = int(rng.integers(1, n + 1))
    return OrderStatModel(tuple(comps), k)


@pytest.fixture(scope="session")
def theorem_models() -> tuple[OrderStatModel, ...]:
    rng = np.random.default_rng(ACCEPT_SEED)
    return tuple(random_model(rng, 500) for _ in range(200))


@pytest.fixture(scope="session")
def mc_models() -> tuple[OrderStatModel, ...]:
    rng = np.random.default_rng(ACCEPT_SEED + 1)
    return tuple(random_model(rng, 30) for _ in range(40))
