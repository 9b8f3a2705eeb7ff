"""Numerical checks of the contraction-rate inequalities behind correlation decay.

Everything here works in the potential metric ``phi(x) = 2 ln x - 2 ln(1/2 - x)``
whose derivative is ``Phi(x) = 1 / (x (1/2 - x))``.  Rates are written with
``1/Phi`` so they extend continuously to the closed interval: ``1/Phi(0) =
1/Phi(1/2) = 0``.

The grid searches are numerical evidence at a given resolution, not proofs.
Equality constraints are substituted out before gridding, the grid spacing is
at most ``h`` in every remaining coordinate, and one refinement pass at
``h/10`` runs around the best point found.
"""

from __future__ import annotations

import concurrent.futures
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

LAMBDA = Fraction(9996, 10000)
SQRT2 = math.sqrt(2.0)
M = 1.5 - SQRT2

THRESHOLDS = {
    "deg1_l4": Fraction(3, 4),
    "deg1_l3_fixed": Fraction(11, 13),
    "deg1_l3": LAMBDA,
    "jensen_pair": Fraction(10195, 10000),
    "jensen_weighted": Fraction(10181, 10000),
    "jensen_kappa": Fraction(1038, 1000),
    "jensen_mod_pair": Fraction(1009, 1000),
    "jensen_mod_weighted": Fraction(1009, 1000),
    "jensen_mod_kappa": Fraction(1019, 1000),
    "resolve3+": Fraction(963, 1000),
    "resolve2+1-:f1_sixth": Fraction(9138, 10000),
    "resolve2+1-:f1_quarter": Fraction(9163, 10000),
    "resolve2+1-:f1_thirteenth": Fraction(9102, 10000),
    "resolve2+1-": Fraction(9163, 10000),
    "resolve2+1-d1": Fraction(9231, 10000),
    "lambda": LAMBDA,
}

DEFAULT_RESOLUTION = 0.005
_TOL = 1e-12


# -- potential --------------------------------------------------------------

def _open_unit_half(x: float) -> None:
    if not 0 < x < 0.5:
        raise DomainError(f"x = {x} outside (0, 1/2)")


def phi(x: float) -> float:
    _open_unit_half(x)
    return 2 * math.log(x) - 2 * math.log(0.5 - x)


def big_phi(x: float) -> float:
    _open_unit_half(x)
    return 1 / (x * (0.5 - x))


def m_constant() -> float:
    """sup over [0, 1/2] of 1/((1-x) Phi(x)), attained at x = 1 - 1/sqrt(2)."""
    return M


def inv_big_phi(x):
    """Continuous extension of 1/Phi to [0, 1/2]; works on arrays."""
    return x * (0.5 - x)


def _closed(name: str, x: float, lo: float, hi: float) -> None:
    if not lo - _TOL <= x <= hi + _TOL:
        raise DomainError(f"{name} = {x} outside [{lo}, {hi}]")


def _eq(name: str, lhs: float, rhs: float) -> None:
    if abs(lhs - rhs) > 1e-9:
        raise DomainError(f"constraint {name} violated ({lhs} != {rhs})")


# -- degree-1 rates ---------------------------------------------------------

def alpha_deg1_l4(x):
    return 3 * x * (1 - 2 * x) / ((1 - x) * (1 + 2 * x))


def alpha_deg1_l3_fixed(y):
    return 1 - 2 * y


def alpha_deg1_l3(x, y):
    num = x * (0.5 - x) * (2 + y) + y * (0.5 - y) * (1 - x)
    return num / ((1 - x) * (x + y / 2))


def _check_deg1_l4(x: float) -> float:
    _closed("x", x, 0, 0.5)
    return alpha_deg1_l4(x)


# -- Jensen-type averaging ----------------------------------------------------

def g_xi(w, f, xi):
    """G_xi(w, f) = (1-f)/Phi(1 - w/(1-f)) + 4 M xi w/(1-f)."""
    if np.isscalar(w) and np.isscalar(f):
        _closed("f", f, 0, 0.5)
        _closed("xi", xi, 0, 1)
        r = w / (1 - f)
        _closed("w/(1-f)", r, 0.5, 1)
    r = w / (1 - f)
    return (1 - f) * inv_big_phi(1 - r) + 4 * M * xi * r


def _jensen_pair_eval(xi, f1, f2, r1, r2):
    w1, w2 = r1 * (1 - f1), r2 * (1 - f2)
    return (g_xi(w1, f1, xi) + g_xi(w2, f2, xi)) / (2 * g_xi((w1 + w2) / 2, (f1 + f2) / 2, xi))


def _jensen_weighted_eval(xi, f1, f2, r1, r2):
    w1, w2 = r1 * (1 - f1), r2 * (1 - f2)
    return (g_xi(w1, f1, xi) + 2 * g_xi(w2, f2, xi)) / (3 * g_xi((w1 + 2 * w2) / 3, (f1 + 2 * f2) / 3, xi))


def _jensen_pair(xi: float):
    return partial(_jensen_pair_eval, xi)


def _jensen_weighted(xi: float):
    return partial(_jensen_weighted_eval, xi)


# -- symmetric rates, degree 2 -----------------------------------------------

def _alpha_hat_case1(f1, y1, y2):
    f2 = (1 - f1) / 3
    a = (1 - f1) * (1 - y1) + 3 * (1 - f2) * (1 - y2)
    F1 = (1 - f1) * (1 - y1) / a
    F2 = (1 - f2) * (1 - y2) / a
    inner = (
        (1 - F1) * inv_big_phi(y1) / (1 - y1)
        + 3 * F2 * inv_big_phi(y2) / (1 - y2)
        + 12 * M * f1 * F2 / (1 - f2)
    )
    return inner / (0.5 - F1)


def alpha_hat_case1(f1, f2, y1, y2):
    """Symmetrised rate when all three neighbour-colour terms keep their sign (f1 + 3 f2 = 1)."""
    _closed("f1", f1, 1 / 13, 0.5)
    _closed("y1", y1, 0, 0.5)
    _closed("y2", y2, 0, 0.5)
    _eq("f1+3f2=1", f1 + 3 * f2, 1)
    return float(_alpha_hat_case1(f1, y1, y2))


BRANCHES = {
    "f1_sixth": lambda f2: (1 - f2) / 6,
    "f1_quarter": lambda f2: (0.75 - f2) / 4,
    "f1_thirteenth": lambda f2: 1 / 13 + 0 * f2,
}


def _alpha_hat_case2(f1, f2, y1, y2, y3, p1_floor: bool):
    """2(A1 P1 + P2 + P3)/(A1 - (1-y1)(1-f1)) with f3 = (1-f1-f2)/2 substituted."""
    A1 = (1 - f2) * (1 - y2) + (1 + f1 + f2) * (1 - y3)
    shrink = (1 - 1 / 13) if p1_floor else (1 - f1)
    P1 = inv_big_phi(y1) / (1 - y1) - 4 * M * f2 / shrink
    P2 = (1 - f2) * inv_big_phi(y2) + 4 * f1 * M * (1 - y2)
    P3 = (1 + f1 + f2) * inv_big_phi(y3) + 8 * M * (f1 + f2) * (1 - y3)
    return 2 * (A1 * P1 + P2 + P3) / (A1 - (1 - y1) * (1 - f1))


def alpha_hat_case2(f1, f2, f3, y1, y2, y3, branch: str | None = None):
    """Symmetrised rate when one neighbour-colour term flips sign (f1 + f2 + 2 f3 = 1).

    With ``branch`` set, ``f1`` must equal the branch substitution and the
    ``f2``-term uses the weaker ``1 - 1/13`` denominator; without it the exact
    form is evaluated under the closed versions of the region's constraints.
    """
    for name, v in (("f2", f2), ("f3", f3), ("y1", y1), ("y2", y2), ("y3", y3)):
        _closed(name, v, 0, 0.5)
    _eq("f1+f2+2f3=1", f1 + f2 + 2 * f3, 1)
    if branch is None:
        _closed("f1", f1, 1 / 13, 0.5)
        if 6 * f1 + f2 - 1 > _TOL or 4 * f1 + f2 - 0.75 > _TOL:
            raise DomainError("f1, f2 outside the sign-flip region")
        return float(_alpha_hat_case2(f1, f2, y1, y2, y3, False))
    if branch not in BRANCHES:
        raise DomainError(f"unknown branch {branch!r}")
    _eq(f"f1 on branch {branch}", f1, BRANCHES[branch](f2))
    return float(_alpha_hat_case2(f1, f2, y1, y2, y3, True))


def _branch_eval(branch: str, f2, y1, y2, y3):
    return _alpha_hat_case2(BRANCHES[branch](f2), f2, y1, y2, y3, True)


def _branch_fn(branch: str):
    return partial(_branch_eval, branch)


def _alpha_hat_d1(f2, y2, y3):
    A = 1 + (1 - f2) * (1 - y2) + (1 + f2) * (1 - y3)
    num = -2 * M * f2 * (A - 1) + (1 - f2) * inv_big_phi(y2) + (1 + f2) * inv_big_phi(y3) + 4 * M * f2 * (1 - y3)
    return num / (A / 2 - 1)


def alpha_hat_d1(f2, f3, y2, y3):
    """Symmetrised rate when the first neighbour cannot take the queried colour (f2 + 2 f3 = 1)."""
    _closed("f2", f2, 1 / 13, 0.5)
    _closed("y2", y2, 0, 6 / 13)
    _closed("y3", y3, 0, 6 / 13)
    _eq("f2+2f3=1", f2 + 2 * f3, 1)
    return float(_alpha_hat_d1(f2, y2, y3))


def alpha_d1_positive(f2, f3, y2, y3, y4):
    """Rate for the sign pattern where the f2-term is positive, f4 = 1 - f2 - f3."""
    f4 = 1 - f2 - f3
    A = 1 + (1 - f2) * (1 - y2) + (1 - f3) * (1 - y3) + (1 - f4) * (1 - y4)
    num = (
        (1 - f2) * inv_big_phi(y2) + (1 - f3) * inv_big_phi(y3) + (1 - f4) * inv_big_phi(y4)
        + 2 * M * f2 * (A - 3 + y3 + y4)
    )
    return num / (A / 2 - 1)


def _d1_positive_fn(f2, y2, y3, y4):
    # linear-fractional in f3, so the maximum sits at an end of its range
    lo = np.maximum(0.5 - f2, 0.0)
    hi = np.minimum(0.5, 1 - f2)
    return np.maximum(alpha_d1_positive(f2, lo, y2, y3, y4), alpha_d1_positive(f2, hi, y2, y3, y4))


def _d1_half_fn(f2, y2, y3, y4):
    """Both sign patterns once some y sits at 1/2 and only f-derivatives remain."""
    best = None
    for f3 in (np.maximum(0.5 - f2, 0.0), np.minimum(0.5, 1 - f2)):
        f4 = 1 - f2 - f3
        A = 1 + (1 - f2) * (1 - y2) + (1 - f3) * (1 - y3) + (1 - f4) * (1 - y4)
        den = A - 2
        # den = 0 means F1 = 1/2: a boundary triple, outside the interior being bounded
        v = np.where(den > 1e-12, 4 * M * f2 * np.abs(A - 3 + y3 + y4) / np.where(den > 1e-12, den, 1.0), -np.inf)
        best = v if best is None else np.maximum(best, v)
    return best


def g_second(y2):
    """G'' = 9/338 + 3M/13 - 2 lam/13 + (1/4 - M/2 + lam/4) y2 - y2^2/2."""
    lam = float(LAMBDA)
    return 9 / 338 + 3 * M / 13 - 2 * lam / 13 + (0.25 - M / 2 + lam / 4) * y2 - y2 * y2 / 2


# -- full (unsymmetrised) rates, used to test the symmetrisation step ----------

def alpha_full_case1(f: Sequence[float], y: Sequence[float]) -> float:
    """Rate with all neighbour-colour terms nonnegative; f, y indexed by colour 1..4."""
    w = [(1 - fj) * (1 - yj) for fj, yj in zip(f, y)]
    A = sum(w)
    F = [wj / A for wj in w]
    s = (1 - F[0]) * inv_big_phi(y[0]) / (1 - y[0])
    s += sum(F[j] * inv_big_phi(y[j]) / (1 - y[j]) for j in (1, 2, 3))
    s += 4 * M * f[0] * sum(F[j] / (1 - f[j]) for j in (1, 2, 3))
    return s / (0.5 - F[0])


def alpha_full_case2(f: Sequence[float], y: Sequence[float]) -> float:
    """Rate when the colour-2 term is negative: the case-1 rate minus 4 M f2 D2."""
    w = [(1 - fj) * (1 - yj) for fj, yj in zip(f, y)]
    A = sum(w)
    F = [wj / A for wj in w]
    d2 = 1 / (1 - f[0]) - sum(F[k] / (1 - f[k]) for k in (0, 2, 3))
    return alpha_full_case1(f, y) - 4 * M * f[1] * d2 / (0.5 - F[0])


def alpha_full_d1(f: Sequence[float], y: Sequence[float]) -> float:
    """Rate with f1 = y1 = 0 and the colour-2 term negative; f, y give colours 2..4."""
    w = [(1 - fj) * (1 - yj) for fj, yj in zip(f, y)]
    A = 1 + sum(w)
    s = (1 - f[0]) * inv_big_phi(y[0]) + 2 * M * f[0] * (1 - A)
    s += sum((1 - f[j]) * inv_big_phi(y[j]) + 2 * M * f[0] * (1 - y[j]) for j in (1, 2))
    return s / (A / 2 - 1)


def symmetrize_case1(f, y):
    """(f1, f2_hat, y1, y2_hat) averaging the three other colours' weights."""
    fh = (f[1] + f[2] + f[3]) / 3
    wh = sum((1 - f[j]) * (1 - y[j]) for j in (1, 2, 3)) / 3
    return f[0], fh, y[0], 1 - wh / (1 - fh)


def symmetrize_case2(f, y):
    """(f1, f2, f3_hat, y1, y2, y3_hat) averaging colours 3 and 4."""
    fh = (f[2] + f[3]) / 2
    wh = sum((1 - f[j]) * (1 - y[j]) for j in (2, 3)) / 2
    return f[0], f[1], fh, y[0], y[1], 1 - wh / (1 - fh)


def symmetrize_d1(f, y):
    """(f2, f3_hat, y2, y3_hat) for the f1 = 0 rate; inputs indexed by colours 2..4."""
    fh = (f[1] + f[2]) / 2
    wh = sum((1 - f[j]) * (1 - y[j]) for j in (1, 2)) / 2
    return f[0], fh, y[0], 1 - wh / (1 - fh)


# -- grid search -------------------------------------------------------------

def _axis(lo: float, hi: float, h: float) -> np.ndarray:
    if hi <= lo:
        return np.array([lo])
    k = max(1, math.ceil((hi - lo) / h - 1e-9))
    return np.linspace(lo, hi, k + 1)


def _chunk_max(args) -> tuple[float, tuple]:
    fn, axes, first = args
    grids = np.meshgrid(*axes[1:], indexing="ij") if len(axes) > 1 else []
    vals = fn(first, *grids) if grids else fn(np.array([first]))
    vals = np.asarray(vals, dtype=float)
    if vals.ndim == 0:
        vals = np.full(grids[0].shape if grids else (1,), float(vals))
    vals = np.where(np.isnan(vals), np.inf, vals)
    k = int(np.argmax(vals))
    idx = np.unravel_index(k, vals.shape)
    point = (float(first),) + tuple(float(g[idx]) for g in grids)
    return float(vals[idx]), point


_POOL: concurrent.futures.ProcessPoolExecutor | None = None


def _search(fn, axes: list[np.ndarray], threads: int) -> tuple[float, tuple]:
    global _POOL
    tasks = [(fn, axes, x) for x in axes[0]]
    if threads > 1 and len(tasks) > 1:
        if _POOL is None or _POOL._max_workers != threads:
            _POOL = concurrent.futures.ProcessPoolExecutor(max_workers=threads)
        results = list(_POOL.map(_chunk_max, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    else:
        results = [_chunk_max(t) for t in tasks]
    best_v, best_p = -math.inf, None
    for v, p in results:
        if v > best_v or (v == best_v and best_p is not None and p < best_p):
            best_v, best_p = v, p
    return best_v, best_p


def grid_max(
    fn: Callable,
    bounds: Sequence[tuple[float, float]],
    h: float,
    refine: bool = True,
    threads: int = 1,
) -> tuple[float, tuple]:
    """Maximum of a vectorised ``fn`` over a box: uniform grid, then a local pass at h/10.

    NaN values count as +inf so a singular point cannot hide.
    """
    if h <= 0:
        raise DomainError("resolution must be positive")
    axes = [_axis(lo, hi, h) for lo, hi in bounds]
    best_v, best_p = _search(fn, axes, threads)
    if refine and best_p is not None:
        local = [
            _axis(max(lo, c - h), min(hi, c + h), h / 10)
            for (lo, hi), c in zip(bounds, best_p)
        ]
        v, p = _search(fn, local, threads)
        if v > best_v:
            best_v, best_p = v, p
    return best_v, best_p


# -- reports -----------------------------------------------------------------

@dataclass
class AlphaReport:
    name: str
    threshold: Fraction
    max_found: float
    argmax: dict
    resolution: float | None
    passed: bool = field(init=False)
    slack: float = 0.0
    note: str = "numerical evidence at resolution h"

    def __post_init__(self):
        self.passed = bool(self.max_found <= float(self.threshold) + self.slack)

    @property
    def margin(self) -> float:
        return float(self.threshold) - self.max_found

    def to_json(self) -> dict:
        d = asdict(self)
        d["threshold"] = f"{self.threshold.numerator}/{self.threshold.denominator}"
        d["threshold_value"] = float(self.threshold)
        d["margin"] = self.margin
        return d


@dataclass(frozen=True)
class Check:
    name: str
    fn: Callable
    coords: tuple[str, ...]
    bounds: tuple[tuple[float, float], ...]
    threshold_key: str


def _deg1_l4_fn(x):
    return alpha_deg1_l4(x)


def _deg1_l3_fixed_fn(y):
    return alpha_deg1_l3_fixed(y)


def _deg1_l3_fn(x, y):
    return alpha_deg1_l3(x, y)


_HALF = (0.0, 0.5)
_F13 = (1 / 13, 0.5)
_Y6 = (0.0, 6 / 13)

CHECKS: dict[str, Check] = {
    c.name: c
    for c in [
        Check("deg1_l4", _deg1_l4_fn, ("x",), (_HALF,), "deg1_l4"),
        Check("deg1_l3_fixed", _deg1_l3_fixed_fn, ("y",), (_F13,), "deg1_l3_fixed"),
        Check("deg1_l3", _deg1_l3_fn, ("x", "y"), (_F13, _HALF), "deg1_l3"),
        Check("jensen_pair", _jensen_pair(1.0), ("f1", "f2", "r1", "r2"), (_F13, _F13, (0.5, 1.0), (0.5, 1.0)), "jensen_pair"),
        Check("jensen_weighted", _jensen_weighted(1.0), ("f1", "f2", "r1", "r2"), (_F13, _F13, (0.5, 1.0), (0.5, 1.0)), "jensen_weighted"),
        Check("jensen_mod_pair", _jensen_pair(0.25), ("f1", "f2", "r1", "r2"), (_HALF, _HALF, (0.5, 1.0), (0.5, 1.0)), "jensen_mod_pair"),
        Check("jensen_mod_weighted", _jensen_weighted(0.25), ("f1", "f2", "r1", "r2"), (_HALF, _HALF, (0.5, 1.0), (0.5, 1.0)), "jensen_mod_weighted"),
        Check("resolve3+", _alpha_hat_case1, ("f1", "y1", "y2"), (_F13, _HALF, _HALF), "resolve3+"),
        Check("resolve2+1-:f1_sixth", _branch_fn("f1_sixth"), ("f2", "y1", "y2", "y3"), (_HALF,) * 4, "resolve2+1-:f1_sixth"),
        Check("resolve2+1-:f1_quarter", _branch_fn("f1_quarter"), ("f2", "y1", "y2", "y3"), (_HALF,) * 4, "resolve2+1-:f1_quarter"),
        Check("resolve2+1-:f1_thirteenth", _branch_fn("f1_thirteenth"), ("f2", "y1", "y2", "y3"), (_HALF,) * 4, "resolve2+1-:f1_thirteenth"),
        Check("resolve2+1-d1", _alpha_hat_d1, ("f2", "y2", "y3"), (_F13, _Y6, _Y6), "resolve2+1-d1"),
        Check("d1_positive", _d1_positive_fn, ("f2", "y2", "y3", "y4"), (_HALF, _Y6, _Y6, _Y6), "lambda"),
        Check("d1_half_branch", _d1_half_fn, ("f2", "y2", "y3", "y4"), (_HALF,) * 4, "lambda"),
        Check("d1_positive_g2", g_second, ("y2",), (_Y6,), "zero"),
    ]
}

CASE_GROUPS = {
    "deg1": ["deg1_l4", "deg1_l3_fixed", "deg1_l3"],
    "jensen": ["jensen_pair", "jensen_weighted"],
    "jensen_mod": ["jensen_mod_pair", "jensen_mod_weighted"],
    "resolve3+": ["resolve3+"],
    "resolve2+1-": ["resolve2+1-:f1_sixth", "resolve2+1-:f1_quarter", "resolve2+1-:f1_thirteenth"],
    "resolve2+1-d1": ["resolve2+1-d1"],
    "d1_positive": ["d1_positive", "d1_half_branch", "d1_positive_g2"],
}


def run_check(
    name: str,
    resolution: float = DEFAULT_RESOLUTION,
    threshold: Fraction | None = None,
    threads: int = 1,
) -> AlphaReport:
    chk = CHECKS[name]
    if threshold is None:
        threshold = Fraction(0) if chk.threshold_key == "zero" else THRESHOLDS[chk.threshold_key]
    v, p = grid_max(chk.fn, chk.bounds, resolution, threads=threads)
    rep = AlphaReport(name, threshold, v, dict(zip(chk.coords, p)), resolution)
    if chk.threshold_key == "zero":
        # strict inequality G'' < 0
        rep.passed = bool(v < 0)
    return rep


def check_jensen(case: str = "full", resolution: float = DEFAULT_RESOLUTION, threads: int = 1) -> tuple[AlphaReport, AlphaReport]:
    """Pair and weighted averaging checks; ``case`` is "full" (xi = 1) or "quarter" (xi = 1/4)."""
    if case not in ("full", "quarter"):
        raise DomainError(f"unknown Jensen case {case!r}")
    prefix = "jensen" if case == "full" else "jensen_mod"
    return (
        run_check(f"{prefix}_pair", resolution, threads=threads),
        run_check(f"{prefix}_weighted", resolution, threads=threads),
    )


def check_d1_positive_case(resolution: float = DEFAULT_RESOLUTION, threads: int = 1) -> AlphaReport:
    """Grid max of the positive-sign rate (with G'' < 0 and the y = 1/2 branch folded into pass)."""
    main = run_check("d1_positive", resolution, threads=threads)
    g2 = run_check("d1_positive_g2", resolution)
    half = run_check("d1_half_branch", resolution, threads=threads)
    main.passed = main.passed and g2.passed and half.passed
    main.argmax = dict(main.argmax, g2_max=g2.max_found, half_branch_max=half.max_found)
    return main


def _exact_report(name: str, value: Fraction, threshold: Fraction) -> AlphaReport:
    return AlphaReport(name, threshold, float(value), {"exact": f"{value.numerator}/{value.denominator}"}, None)


def composite_reports(found: dict[str, AlphaReport]) -> list[AlphaReport]:
    """Chain the per-check maxima into per-case contraction bounds and the overall bound."""
    T = THRESHOLDS
    out = [
        _exact_report("kappa_product:jensen", T["jensen_pair"] * T["jensen_weighted"], T["jensen_kappa"]),
        _exact_report("kappa_product:jensen_mod", T["jensen_mod_pair"] * T["jensen_mod_weighted"], T["jensen_mod_kappa"]),
        _exact_report("bound:d1=2,case1", T["jensen_kappa"] * T["resolve3+"], LAMBDA),
        _exact_report("bound:d1=2,case2", T["jensen_kappa"] * T["resolve2+1-"], LAMBDA),
        _exact_report("bound:d1=1,case1", T["jensen_mod_kappa"] * T["resolve2+1-d1"], LAMBDA),
    ]
    cand = {
        "two_m": 2 * M,
        "kappa*resolve3+": float(T["jensen_kappa"] * T["resolve3+"]),
        "kappa*resolve2+1-": float(T["jensen_kappa"] * T["resolve2+1-"]),
        "kappa_mod*resolve2+1-d1": float(T["jensen_mod_kappa"] * T["resolve2+1-d1"]),
    }
    for key in ("deg1_l4", "deg1_l3_fixed", "deg1_l3", "d1_positive", "d1_half_branch"):
        if key in found:
            cand[key] = found[key].max_found
    worst = max(cand, key=cand.get)
    overall = AlphaReport("overall", LAMBDA, cand[worst], {"attained_by": worst, **cand}, None)
    return out + [overall]


def verify_all(resolution: float = DEFAULT_RESOLUTION, threads: int = 1, cases: Sequence[str] | None = None) -> list[AlphaReport]:
    names = []
    for group in (cases or list(CASE_GROUPS)):
        if group in CASE_GROUPS:
            names.extend(CASE_GROUPS[group])
        elif group in CHECKS:
            names.append(group)
        else:
            raise DomainError(f"unknown case {group!r}")
    found = {n: run_check(n, resolution, threads=threads) for n in names}
    reports = list(found.values())
    if cases is None:
        reports += composite_reports(found)
    return reports


def reports_json(reports: Sequence[AlphaReport]) -> str:
    return json.dumps(
        {"all_pass": all(r.passed for r in reports), "reports": [r.to_json() for r in reports]},
        indent=2,
    )
