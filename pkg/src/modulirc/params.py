"""Numerical invariants of the moduli space and the degree Diophantine solver.

Everything here is exact integer arithmetic.  Slope comparisons elsewhere in
the package are done by cross-multiplication, never by division.
"""

from dataclasses import dataclass
from math import gcd


class ParameterError(ValueError):
    """Input outside the allowed domain (bad genus, rank, slope, ...)."""


class ConsistencyError(RuntimeError):
    """An internal integrality or invariant check failed.

    This should never fire on valid inputs; it signals a bug, not bad input.
    """


@dataclass(frozen=True)
class ModuliParams:
    """Derived invariants of the moduli space of rank-r bundles with fixed
    determinant of degree d on a genus-g curve."""

    g: int
    r: int
    d: int
    h: int          # gcd(r, d), with gcd(r, 0) = r
    r_bar: int      # r / h
    d_bar: int      # d / h
    dim_m: int      # (r^2 - 1)(g - 1)
    fano_index: int  # 2h


def derive_params(g, r, d):
    """Compute all derived invariants from (g, r, d).

    g must be at least 2 and r at least 2; d may be any integer.
    """
    if g < 2:
        raise ParameterError(f"genus must be >= 2, got {g}")
    if r < 2:
        raise ParameterError(f"rank must be >= 2, got {r}")
    h = gcd(r, d)  # math.gcd(r, 0) == r, matching the convention we need
    return ModuliParams(
        g=g, r=r, d=d, h=h,
        r_bar=r // h, d_bar=d // h,
        dim_m=(r * r - 1) * (g - 1),
        fano_index=2 * h,
    )


def expected_dimension(p, k, g_source=0):
    """Minimum possible dimension of a component of the space of degree-k
    maps from a genus-g_source curve: 2hk + (r^2 - 1)(g - 1)(1 - g_source)."""
    if k < 0:
        raise ParameterError(f"degree must be >= 0, got {k}")
    if g_source < 0:
        raise ParameterError(f"source genus must be >= 0, got {g_source}")
    return 2 * p.h * k + p.dim_m * (1 - g_source)


def solve_dioph(p, k):
    """All solutions (x, y) of d_bar*x - r_bar*y = k with 0 <= x < r.

    Returns exactly h solutions, sorted by ascending x; consecutive solutions
    differ by (r_bar, d_bar).  A solution with x = 0 signals the torsion
    family branch (k divisible by r_bar).
    """
    if k < 1:
        raise ParameterError(f"degree must be >= 1, got {k}")
    if p.r_bar == 1:
        x0 = 0
    else:
        # gcd(d_bar, r_bar) = 1, so d_bar is invertible mod r_bar
        x0 = (k * pow(p.d_bar, -1, p.r_bar)) % p.r_bar
    solutions = []
    for x in range(x0, p.r, p.r_bar):
        num = p.d_bar * x - k
        if num % p.r_bar != 0:
            raise ConsistencyError("Diophantine residue mismatch")
        solutions.append((x, num // p.r_bar))
    if len(solutions) != p.h:
        raise ConsistencyError(
            f"expected {p.h} Diophantine solutions, found {len(solutions)}")
    return solutions
