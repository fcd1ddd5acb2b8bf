import numpy as np
import pytest

from l2flow import FlowConfig, FWConfig, KernelSpec, build, generate_two_moons, integrate
from l2flow.frank_wolfe import solve as fw_solve

# the reference two-moons run: 50 points per class, noise 0.1, seed 7
MOONS_SEED = 7
POLY3 = KernelSpec("polynomial", degree=3, offset=1.0)
RBF1 = KernelSpec("gaussian", gamma=1.0)
C_DEFAULT = 10.0
# long enough for both kernels to reach max|mu'| < 1e-8 on the reference data
T_EQUILIBRIUM = 1e5


@pytest.fixture(scope="session")
def moons():
    return generate_two_moons(50, 0.1, MOONS_SEED)


@pytest.fixture(scope="session")
def moons_poly(moons):
    return build(moons, POLY3, C_DEFAULT)


@pytest.fixture(scope="session")
def moons_rbf(moons):
    return build(moons, RBF1, C_DEFAULT)


@pytest.fixture(scope="session")
def flow_default(moons_poly):
    """Default configuration, t_end = 50."""
    return integrate(moons_poly, FlowConfig())


@pytest.fixture(scope="session")
def flow_equilibrium(moons_poly):
    return integrate(moons_poly, FlowConfig(t_end=T_EQUILIBRIUM))


@pytest.fixture(scope="session")
def flow_equilibrium_rbf(moons_rbf):
    return integrate(moons_rbf, FlowConfig(t_end=T_EQUILIBRIUM))


@pytest.fixture(scope="session")
def fw200(moons_poly):
    return fw_solve(moons_poly, FWConfig(max_iters=200))


def random_spd(rng, n, ridge=0.1):
    A = rng.normal(size=(n, n))
    H = A @ A.T + ridge * np.eye(n)
    return (H + H.T) / 2


def random_interior(rng, n):
    mu = rng.uniform(0.05, 1.0, size=n)
    return mu / mu.sum()


_ACCEPTANCE = []


def record_acceptance(number, ok, detail):
    _ACCEPTANCE.append((number, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
