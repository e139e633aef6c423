import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("slow_ok", deadline=None, max_examples=60)
settings.load_profile("slow_ok")


def fit_loglog(xs, ys):
    """Least-squares slope and r^2 of log(ys) against log(xs)."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    A = np.vstack([lx, np.ones_like(lx)]).T
    (slope, icpt), *_ = np.linalg.lstsq(A, ly, rcond=None)
    pred = A @ np.array([slope, icpt])
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), r2


@pytest.fixture(scope="session")
def fit():
    return fit_loglog
