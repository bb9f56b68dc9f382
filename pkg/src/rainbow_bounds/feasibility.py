"""Sufficient conditions for a pair (alpha, beta) to force a rainbow triangle.

Two inequality systems are checked here:

* ``thm31``: at least (1+delta)n colors, each of size >= tn; parameter eps.
* ``thm41``: n colors of size >= tn, with a Caccetta-Haggkvist out-degree
  constant ``ch_constant`` (0.3465 by default).

The condition functions are written with numpy ufuncs so the same formulas
serve both the scalar checkers and the vectorised grid searches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

DEFAULT_MARGIN = 1e-9
CH_CONSTANT = 0.3465
DELTA_BRACKET = (0.0, 4.0)
T_BRACKET = (0.25, 0.5)
DEFAULT_EPS_GRID = 4000


@dataclass(frozen=True)
class ParameterPoint:
    t: float
    delta: float
    eps: float

    @property
    def lam(self) -> float:
        return math.sqrt(1 - 2 * self.eps)

    @property
    def alpha(self) -> float:
        return self.t / 2 * (self.lam + 1)

    def as_dict(self) -> dict:
        return {"t": self.t, "delta": self.delta, "eps": self.eps}


@dataclass(frozen=True)
class Condition:
    name: str
    lhs: float
    rhs: float
    residual: float  # slack in the required direction; positive means satisfied
    strict: bool = True

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "residual": self.residual}


@dataclass(frozen=True)
class FeasibilityReport:
    theorem: str
    point: ParameterPoint
    conditions: tuple[Condition, ...]
    margin: float
    ch_constant: Optional[float] = None

    @property
    def feasible(self) -> bool:
        return all(_passes(c.residual, c.strict, self.margin) for c in self.conditions)

    def failing(self) -> list[str]:
        return [c.name for c in self.conditions if not _passes(c.residual, c.strict, self.margin)]

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "point": self.point.as_dict(),
            "conditions": [c.as_dict() for c in self.conditions],
            "feasible": self.feasible,
            "margin": self.margin,
            "ch_constant": self.ch_constant,
        }


def _passes(residual, strict: bool, margin: float):
    return residual > margin if strict else residual >= -margin


# --- condition formulas (scalar or ndarray) -----------------------------------
# Each returns (lhs, rhs, residual).

def _c1(t, d, e):
    lhs = (1 + d - e * d) * t / 2
    rhs = 4 / 3 * (1 + d) * (t * (1 + d) - 0.25)
    return lhs, rhs, rhs - lhs


def _c2(t, d, e):
    lam = np.sqrt(1 - 2 * e)
    lhs = 8 / (3 * t) * (t * (1 + d) - 0.25) * (1 + d) + t / 12 * (lam + 1) * (4 * (1 - e) - (1 - lam) ** 2)
    rhs = 1 + d
    return lhs, rhs, lhs - rhs


def _c3(t, d, e):
    lhs = 16 / 3 * (1 + d)
    rhs = 2 / (3 * t) + 1
    return lhs, rhs, lhs - rhs


def _d1(t, d, e, ch):
    lhs = ((1 - e) * t - d) / (1 - d)
    return lhs, ch, lhs - ch


def _d2(t, d, e):
    rhs = 0.5 - (1 - e) ** 2 * t ** 2
    return t, rhs, t - rhs


def _d3(t, d, e):
    lhs = 8 / 3 * (t - 0.25)
    rhs = (1 - d * (2 * e - 2 * e ** 2)) * t
    return lhs, rhs, lhs - rhs


def _d4(t, d, e):
    lhs = 1 + 2 * d * e ** 2
    rhs = 4 * e * d
    return lhs, rhs, lhs - rhs


def _thm31_ok(t, d, e, margin):
    ok = _c1(t, d, e)[2] > margin
    ok = ok & (_c2(t, d, e)[2] > margin)
    return ok & (_c3(t, d, e)[2] > margin)


def _thm41_ok(t, d, e, ch, margin):
    ok = _d1(t, d, e, ch)[2] >= -margin
    ok = ok & (_d2(t, d, e)[2] > margin)
    ok = ok & (_d3(t, d, e)[2] > margin)
    return ok & (_d4(t, d, e)[2] > margin)


def _check_eps(eps):
    if not 0 < eps < 0.5:
        raise DomainError(f"eps must lie in (0, 1/2), got {eps}")


def check_thm31(t: float, delta: float, eps: float, margin: float = DEFAULT_MARGIN) -> FeasibilityReport:
    """Evaluate the three conditions for (1+delta)n colors of size tn."""
    _check_eps(eps)
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if delta < 0:
        raise DomainError(f"delta must be non-negative, got {delta}")
    conds = tuple(
        Condition(name, *map(float, fn(t, delta, eps)))
        for name, fn in (("C1", _c1), ("C2", _c2), ("C3", _c3))
    )
    return FeasibilityReport("3.1", ParameterPoint(t, delta, eps), conds, margin)


def check_thm41(t: float, delta: float, eps: float, ch_constant: float = CH_CONSTANT,
                margin: float = DEFAULT_MARGIN) -> FeasibilityReport:
    """Evaluate the four conditions for n colors of size tn; D1 is non-strict."""
    _check_eps(eps)
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if delta == 1:
        raise DomainError("delta = 1 divides by zero in D1")
    if not 0 <= delta < 1:
        raise DomainError(f"delta must lie in [0, 1), got {delta}")
    conds = (
        Condition("D1", *map(float, _d1(t, delta, eps, ch_constant)), strict=False),
        Condition("D2", *map(float, _d2(t, delta, eps))),
        Condition("D3", *map(float, _d3(t, delta, eps))),
        Condition("D4", *map(float, _d4(t, delta, eps))),
    )
    return FeasibilityReport("4.1", ParameterPoint(t, delta, eps), conds, margin, ch_constant)


# --- searches ----------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    """Outcome of a minimisation. ``value`` is None when nothing was certified."""

    objective: str
    value: Optional[float]
    report: Optional[FeasibilityReport]
    iterations: int
    tolerance: float
    grid_points: int
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.value is not None

    def as_dict(self) -> dict:
        return {
            "objective": self.objective,
            "value": self.value,
            "found": self.found,
            "iterations": self.iterations,
            "tolerance": self.tolerance,
            "grid_points": self.grid_points,
            "report": None if self.report is None else self.report.as_dict(),
            "notes": list(self.notes),
        }


def open_grid(lo: float, hi: float, n: int) -> np.ndarray:
    """n evenly spaced interior points of (lo, hi)."""
    return lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)


def _bisect(ok: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray,
            tol: float) -> tuple[np.ndarray, int]:
    """Vectorised bisection for the smallest feasible value in (lo, hi].

    Assumes ``ok(hi)`` holds; returns the feasible upper end of each bracket.
    """
    iters = 0
    while np.max(hi - lo) > tol:
        mid = (lo + hi) / 2
        good = ok(mid)
        hi = np.where(good, mid, hi)
        lo = np.where(good, lo, mid)
        iters += 1
    return hi, iters


def _pick(values: np.ndarray, eps: np.ndarray, valid: np.ndarray, certify) -> Optional[FeasibilityReport]:
    """Scan candidates by (value, eps) ascending; return the first that certifies."""
    idx = np.flatnonzero(valid.ravel())
    order = idx[np.lexsort((eps.ravel()[idx], values.ravel()[idx]))]
    for i in order[:64]:
        rep = certify(i)
        if rep.feasible:
            return rep
    return None


def minimize_delta(t: float, eps_grid: int = DEFAULT_EPS_GRID, bisect_tol: float = 1e-6,
                   margin: float = DEFAULT_MARGIN) -> SearchResult:
    """Smallest delta certified by :func:`check_thm31` for class-size fraction t.

    For each eps on an interior grid of (0, 1/2), bisect delta over (0, 4];
    the winning point is re-checked from scratch before it is returned.
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if eps_grid < 100:
        raise DomainError("eps_grid must be >= 100")
    if not bisect_tol > 0:
        raise DomainError("bisect_tol must be positive")
    eps = open_grid(0.0, 0.5, eps_grid)
    lo = np.full_like(eps, DELTA_BRACKET[0])
    hi = np.full_like(eps, DELTA_BRACKET[1])
    top_ok = _thm31_ok(t, hi, eps, margin)
    d, iters = _bisect(lambda d: _thm31_ok(t, d, eps, margin), lo, hi, bisect_tol)
    rep = _pick(d, eps, top_ok, lambda i: check_thm31(t, float(d[i]), float(eps[i]), margin))
    if rep is None:
        return SearchResult("delta", None, None, iters, bisect_tol, eps_grid,
                            [f"infeasible for t={t}: no eps in the grid admits delta <= {DELTA_BRACKET[1]}"])
    return SearchResult("delta", rep.point.delta, rep, iters, bisect_tol, eps_grid)


def minimize_t_thm41(ch_constant: float = CH_CONSTANT, eps_grid: int = 200, delta_grid: int = 200,
                     tol: float = 1e-8, refine_rounds: int = 6,
                     margin: float = DEFAULT_MARGIN) -> SearchResult:
    """Smallest t certified by :func:`check_thm41`.

    A (eps, delta) grid is swept with vectorised bisection on t in (1/4, 1/2];
    the grid is then re-centred on the best cell and shrunk ``refine_rounds``
    times. Every condition is monotone non-decreasing in t, so the bisection is
    exact up to ``tol``; the returned point is still re-checked from scratch.
    """
    if not 0 < ch_constant < 0.5:
        raise DomainError(f"ch_constant must lie in (0, 1/2), got {ch_constant}")
    if min(eps_grid, delta_grid) < 10:
        raise DomainError("grid resolutions must be >= 10")
    e_lo, e_hi = 0.0, 0.5
    d_lo, d_hi = 0.0, 1.0
    best: Optional[FeasibilityReport] = None
    total_iters = 0
    points = 0
    for _ in range(refine_rounds + 1):
        E, D = np.meshgrid(open_grid(e_lo, e_hi, eps_grid), open_grid(d_lo, d_hi, delta_grid), indexing="ij")
        points += E.size

        def ok(t):
            return _thm41_ok(t, D, E, ch_constant, margin)

        top_ok = ok(np.full(E.shape, T_BRACKET[1]))
        ts, iters = _bisect(ok, np.full(E.shape, T_BRACKET[0]), np.full(E.shape, T_BRACKET[1]), tol)
        total_iters += iters
        rep = _pick(ts, E, top_ok,
                    lambda i: check_thm41(float(ts.flat[i]), float(D.flat[i]), float(E.flat[i]),
                                          ch_constant, margin))
        if rep is None:
            break
        if best is None or (rep.point.t, rep.point.eps) < (best.point.t, best.point.eps):
            best = rep
        # zoom to two cells either side of the current best
        de = 2 * (e_hi - e_lo) / (eps_grid + 1)
        dd = 2 * (d_hi - d_lo) / (delta_grid + 1)
        e_lo, e_hi = max(0.0, best.point.eps - de), min(0.5, best.point.eps + de)
        d_lo, d_hi = max(0.0, best.point.delta - dd), min(1.0, best.point.delta + dd)
    if best is None:
        return SearchResult("t", None, None, total_iters, tol, points,
                            [f"infeasible for ch_constant={ch_constant}: no grid point admits t <= {T_BRACKET[1]}"])
    return SearchResult("t", best.point.t, best, total_iters, tol, points)


# --- quadratic and rational bounds on k --------------------------------------

def _eq_k_coefficients(r: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (a, b, c) of a k^2 + b k + c for
    (r/2)(k/r + 3r/2 - 7/2)(k/r + 3r/2 - 9/2) + k(r-1)/2 - (k^2/4 - 1/4)."""
    r = Fraction(r)
    p = 3 * r / 2 - Fraction(7, 2)
    q = 3 * r / 2 - Fraction(9, 2)
    a = 1 / (2 * r) - Fraction(1, 4)
    b = (p + q) / 2 + (r - 1) / 2
    c = r * p * q / 2 + Fraction(1, 4)
    return a, b, c


def appendix_a_bound(r: int) -> float:
    """Largest real k keeping the r-vertex-cover count above k^2/4 - 1/4 (r in {3, 4})."""
    if r not in (3, 4):
        raise DomainError(f"appendix_a_bound only covers r in {{3, 4}}, got {r}")
    a, b, c = _eq_k_coefficients(r)
    # a < 0 for r < 4.5: the feasible k lie strictly between the two roots
    disc = b * b - 4 * a * c
    return float((-b - math.sqrt(disc)) / (2 * a)) if a < 0 else float((-b + math.sqrt(disc)) / (2 * a))


def eq_k_residual(r: int, k: float) -> float:
    a, b, c = _eq_k_coefficients(r)
    return float(a) * k * k + float(b) * k + float(c)


def r_ge5_k_bound(r_values=range(5, 16)) -> tuple[dict[int, Fraction], int]:
    """Values of 4r(3r/2 - 7/2)/(r - 4) and the largest integer k below their max."""
    vals = {r: Fraction(4 * r) * (Fraction(3 * r, 2) - Fraction(7, 2)) / (r - 4) for r in r_values}
    top = max(vals.values())
    return vals, math.ceil(top) - 1
