import numpy as np
import pytest

from vi_dynamics.problems import builtin_problem
from vi_dynamics.schedules import build_continuous_powerlawB, build_discrete_powerlawD


@pytest.fixture
def sec5():
    return builtin_problem('paper-sec5')


@pytest.fixture
def remark():
    return builtin_problem('remark-counterexample')


@pytest.fixture
def identity_ball():
    return builtin_problem('identity-ball')


@pytest.fixture
def powerlaw_b():
    '''powerlawB(h=2.5, s=0.35, q=0.71, u=1).'''
    return build_continuous_powerlawB(h=2.5, s=0.35, q=0.71, u=1.0)


@pytest.fixture
def powerlaw_d():
    '''powerlawD(p=q=0.5, deltaP=thetaP=1, lambdaP=0.5); omega defaults to 5.'''
    return build_discrete_powerlawD(p=0.5, q=0.5, deltaP=1.0, thetaP=1.0, lambdaP=0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
