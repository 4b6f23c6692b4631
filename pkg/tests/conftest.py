import numpy as np
import pytest

from symnet import (Activation, PatternSet, TrainConfig, solve_linear_family,
                    symmetry_group, train)

X_ITEMS = ((1, 0, 1), (1, 1, 0))
XPRIME_ITEMS = ((0, 1, 0), (0, 0, 1))
SEED = 12345


@pytest.fixture(scope="session")
def x():
    return PatternSet(X_ITEMS)


@pytest.fixture(scope="session")
def xp():
    return PatternSet(XPRIME_ITEMS)


@pytest.fixture(scope="session")
def group(x):
    return symmetry_group(x)


@pytest.fixture(scope="session")
def fam_x(x):
    return solve_linear_family(x)


@pytest.fixture(scope="session")
def fam_xp(xp):
    return solve_linear_family(xp)


@pytest.fixture(scope="session")
def sigmoid_trained(xp):
    cfg = TrainConfig(optimizer="adam", init="gaussian", seed=SEED)
    return train(cfg, xp, Activation("sigmoid"))


@pytest.fixture(scope="session")
def tanh_trained(xp):
    cfg = TrainConfig(optimizer="adam", init="gaussian", seed=SEED)
    return train(cfg, xp, Activation("tanh"))


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(SEED))
