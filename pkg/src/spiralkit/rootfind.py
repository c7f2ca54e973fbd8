"""Bracketed scalar root-finding.

A safeguarded bisection/secant hybrid: each step first tries the secant
point through the current bracket endpoints and falls back to the
midpoint whenever the secant step leaves the bracket or stops shrinking
it fast enough.  Convergence is therefore never slower than bisection.
"""

from __future__ import annotations

from typing import Callable

from .errors import BracketingError, ConvergenceError

__all__ = ["find_root"]

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200


def find_root(
    q: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> float:
    """Find a root of q in [lo, hi]; the endpoints must bracket a sign change.

    Returns the midpoint of the final bracket once its width drops below
    ``tol``.  Raises BracketingError when q(lo) and q(hi) share a sign and
    ConvergenceError when the iteration budget runs out.
    """
    if not lo < hi:
        raise BracketingError(f"empty bracket [{lo!r}, {hi!r}]")
    f_lo = q(lo)
    if f_lo == 0.0:
        return lo
    f_hi = q(hi)
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise BracketingError(
            f"no sign change on [{lo!r}, {hi!r}]: q(lo)={f_lo!r}, q(hi)={f_hi!r}"
        )

    width = hi - lo
    for _ in range(max_iter):
        if hi - lo < tol:
            return 0.5 * (lo + hi)

        # Secant candidate through the bracket endpoints.  Keep it a
        # safe distance inside the bracket so the bracket always shrinks.
        x = lo - f_lo * (hi - lo) / (f_hi - f_lo)
        margin = 0.01 * (hi - lo)
        if not lo + margin < x < hi - margin:
            x = 0.5 * (lo + hi)
        # Force a bisection step whenever two secant steps in a row
        # failed to halve the bracket (guards against one-sided stalls).
        if hi - lo > 0.5 * width:
            x = 0.5 * (lo + hi)
        width = hi - lo

        f_x = q(x)
        if f_x == 0.0:
            return x
        if (f_x > 0.0) == (f_lo > 0.0):
            lo, f_lo = x, f_x
        else:
            hi, f_hi = x, f_x

    raise ConvergenceError(
        f"root not isolated to {tol!r} within {max_iter} iterations "
        f"(bracket [{lo!r}, {hi!r}])"
    )
