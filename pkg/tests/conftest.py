import itertools

import numpy as np
import pytest

from wafomkit.gf2 import BitMatrix
from wafomkit.net import NetParams, random_net


def brute_dual(params: NetParams) -> set[tuple[int, ...]]:
    """Scan every k in [0, 2^n)^s and test the dual condition entry by entry."""
    n, m, s = params.n, params.m, params.s
    mats = [C.to_array() for C in params.matrices]
    out = set()
    for k in itertools.product(range(1 << n), repeat=s):
        acc = np.zeros(m, dtype=np.int64)
        for C, kj in zip(mats, k):
            kappa = np.array([(kj >> (i - 1)) & 1 for i in range(1, n + 1)])
            acc += C.T.astype(np.int64) @ kappa
        if not (acc % 2).any():
            out.add(k)
    return out


def small_nets(count: int, seed: int = 0, max_s: int = 3, max_n: int = 6, max_m: int = 4):
    """Random small nets; dimensions drawn from a seeded numpy generator."""
    rng = np.random.default_rng(seed)
    nets = []
    for t in range(count):
        s = int(rng.integers(1, max_s + 1))
        n = int(rng.integers(1, max_n + 1))
        m = int(rng.integers(1, min(n, max_m) + 1))
        nets.append(random_net(s, n, m, seed * 100_003 + t))
    return nets


@pytest.fixture
def half_net() -> NetParams:
    """s=1, n=2, m=1 with the single column (1, 0)^T: points {0, 1/2}."""
    return NetParams(1, 2, 1, (BitMatrix.from_rows([[1], [0]]),))
