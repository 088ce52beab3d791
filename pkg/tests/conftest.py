import numpy as np
import pytest

import cstarconv as cc

SEED = 20260810


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def z2():
    return cc.cyclic_group(2)


@pytest.fixture(scope="session")
def z2_functions(z2):
    return cc.function_bialgebra(z2)


@pytest.fixture(scope="session")
def z2_rate_functional(z2_functions):
    """The generator F -> F(g) - F(e) of the symmetric two-state flow."""
    return z2_functions.algebra.functional([[[-1.0]], [[1.0]]])


@pytest.fixture(scope="session")
def s3():
    return cc.s3_group()


@pytest.fixture(scope="session")
def s3_irreps():
    return cc.s3_irreps()


@pytest.fixture(scope="session")
def s3_dual(s3, s3_irreps):
    return cc.group_cstar_bialgebra(s3, s3_irreps)


@pytest.fixture(scope="session")
def s3_functions(s3):
    return cc.function_bialgebra(s3)


@pytest.fixture(scope="session")
def q8_dual():
    table, irreps = cc.builtin_group("q8")
    return cc.group_cstar_bialgebra(table, irreps)
