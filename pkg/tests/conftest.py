import pytest

from flexion import Bimould, Q, RatFun, uvar, vvar


@pytest.fixture
def inv():
    return RatFun.inv_linform


@pytest.fixture
def x():
    """Lower-layer argument variables x_i (aliases of v_i)."""
    return vvar


@pytest.fixture
def x_square():
    return Bimould.single(1, RatFun.variable(vvar(1), 2), truncation=4, weight=3)
