"""Globally adaptive tensor Gauss-Legendre cubature on rectangles.

Each panel is integrated with a fixed ``order x order`` Gauss-Legendre
rule and with the same rule on its four quarters; the difference is the
panel's error estimate. The panel with the largest estimate is split
until the summed estimate meets the tolerance.
"""

import heapq
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError


@lru_cache(maxsize=8)
def _rule(order):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _panel(func, x0, x1, y0, y1, order):
    x, w = _rule(order)
    hx, hy = (x1 - x0) / 2, (y1 - y0) / 2
    xs = x0 + hx * (x + 1)
    ys = y0 + hy * (x + 1)
    vals = func(xs[:, None], ys[None, :])
    return hx * hy * float(w @ vals @ w)


def _quarters(x0, x1, y0, y1):
    xm, ym = (x0 + x1) / 2, (y0 + y1) / 2
    return ((x0, xm, y0, ym), (xm, x1, y0, ym), (x0, xm, ym, y1), (xm, x1, ym, y1))


def integrate_2d(func, x0, x1, y0, y1, *, rtol=1e-10, atol=1e-12, order=8,
                 initial_split=4, max_panels=50_000):
    """Integrate ``func(x, y)`` over ``[x0, x1] x [y0, y1]``.

    ``func`` must broadcast over array arguments. The rectangle starts as an
    ``initial_split x initial_split`` grid of panels so that features
    narrower than the whole box are not missed by both rules at once.
    Returns ``(estimate, error_estimate)``; raises :class:`ConvergenceError`
    with the last estimate once more than ``max_panels`` panels are active.
    """
    heap = []
    counter = 0  # heap tie-breaker

    def push(rect, coarse_value):
        nonlocal counter
        kids = [(q, _panel(func, *q, order)) for q in _quarters(*rect)]
        fine = sum(v for _, v in kids)
        err = abs(fine - coarse_value)
        heapq.heappush(heap, (-err, counter, fine, kids))
        counter += 1
        return fine, err

    xs = np.linspace(x0, x1, initial_split + 1)
    ys = np.linspace(y0, y1, initial_split + 1)
    total, total_err = 0.0, 0.0
    for i in range(initial_split):
        for j in range(initial_split):
            rect = (xs[i], xs[i + 1], ys[j], ys[j + 1])
            f_new, e_new = push(rect, _panel(func, *rect, order))
            total += f_new
            total_err += e_new
    while total_err > max(atol, rtol * abs(total)):
        if len(heap) >= max_panels:
            raise ConvergenceError(
                f"cubature exceeded {max_panels} panels (error estimate {total_err:.3e})",
                estimate=total, error=total_err,
            )
        neg_err, _, fine, kids = heapq.heappop(heap)
        total -= fine
        total_err += neg_err
        for rect, value in kids:
            f_new, e_new = push(rect, value)
            total += f_new
            total_err += e_new
    # re-sum to shed the drift of the running updates
    total = sum(item[2] for item in heap)
    total_err = sum(-item[0] for item in heap)
    return total, total_err
