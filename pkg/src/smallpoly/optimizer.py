"""Equality-constrained maximization of the two family perimeters.

Both problems maximize a sum of half-angle sines over an angle sequence
subject to a linear angle-sum constraint, a trigonometric closure
constraint, and box bounds:

* "b": n/4+1 angles, objective 4 sin(a_0/2) + sum 8 sin(a_k/2) + 4 sin(a_m/2);
* "q": n/2 angles, objective sum 4 sin(a_k/2).

The solver is a multi-start augmented-Lagrangian method with damped Newton
inner iterations, followed by a Newton polish of the KKT system.  All
computation happens in deviation variables d_k = a_k - pi/n: near the optima
every angle clusters at pi/n, so deviations keep the linear constraint
assembly exact and the Hessians well scaled.  The start schedule is
deterministic (no RNG), so identical configurations reproduce bit-identical
reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constructions import AngleParamB, AngleParamQ, from_angles_b, from_angles_q
from .geometry import DIAMETER_TOL, MetricsReport, measure

DEFAULT_TOL_EQ = 1e-11
DEFAULT_TOL_KKT = 1e-9
STEP_TOL = 1e-13        # inner iterations stop once steps shrink below this
RHO_MAX = 1e8           # penalty ceiling for the augmented Lagrangian
PERTURBATIONS = (1e-3, 1e-2)  # multi-start offsets, applied per coordinate


class NonConvergenceError(RuntimeError):
    """No start converged; carries the best partial report."""

    def __init__(self, message: str, report: "SolveReport"):
        super().__init__(message)
        self.report = report


class CertificationError(RuntimeError):
    """A solve report failed geometric revalidation."""


@dataclass(frozen=True)
class NlpProblem:
    """One of the two perimeter maximization problems.

    The callables operate on deviation vectors d = angles - base_angle and
    return value/gradient (and Hessian from the *_hessian companions).
    ``lower``/``upper``/``warm_start`` are stored in angle space.
    """

    family: str                   # "b" or "q"
    n: int
    dim: int
    base_angle: float             # pi / n
    objective: Callable[[np.ndarray], tuple[float, np.ndarray]]
    objective_hessian: Callable[[np.ndarray], np.ndarray]
    eq_constraints: tuple[Callable[[np.ndarray], tuple[float, np.ndarray]], ...]
    eq_hessians: tuple[Callable[[np.ndarray], np.ndarray], ...]
    lower: np.ndarray
    upper: np.ndarray
    warm_start: np.ndarray        # angle sequence


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one multi-start solve."""

    family: str
    n: int
    angles: tuple[float, ...]
    objective: float
    eq_residuals: tuple[float, float]
    kkt_residual: float
    iterations: int
    starts_used: int
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "angles": list(self.angles),
            "objective": self.objective,
            "eq_residuals": list(self.eq_residuals),
            "kkt_residual": self.kkt_residual,
            "iterations": self.iterations,
            "starts_used": self.starts_used,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class SolverConfig:
    max_outer: int = 20
    tol_eq: float = DEFAULT_TOL_EQ
    tol_kkt: float = DEFAULT_TOL_KKT
    starts: int | None = None     # defaults to 1 + 2 * dim

    @classmethod
    def from_json(cls, text: str) -> "SolverConfig":
        data = json.loads(text)
        known = {"max_outer", "tol_eq", "tol_kkt", "starts"}
        bad = set(data) - known
        if bad:
            raise ValueError(f"unknown solver config keys: {sorted(bad)}")
        return cls(**data)


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


# ---------------------------------------------------------------------------
# Problem builders
# ---------------------------------------------------------------------------


def build_b_problem(n: int) -> NlpProblem:
    """Perimeter problem of the cycle-plus-pendants family (n/4+1 angles)."""
    if not (_is_power_of_two(n) and n >= 8):
        raise ValueError(f"need n = 2^s >= 8, got {n}")
    m = n // 4
    dim = m + 1
    base = math.pi / n
    coef = np.full(dim, 8.0)
    coef[0] = 4.0
    coef[m] = 4.0
    weights = np.full(dim, 2.0)
    weights[0] = 1.0
    weights[m] = 1.0

    def objective(d: np.ndarray) -> tuple[float, np.ndarray]:
        a = base + d
        val = math.fsum((coef * np.sin(a / 2)).tolist())
        return val, coef / 2 * np.cos(a / 2)

    def objective_hessian(d: np.ndarray) -> np.ndarray:
        a = base + d
        return np.diag(-coef / 4 * np.sin(a / 2))

    def angle_sum(d: np.ndarray) -> tuple[float, np.ndarray]:
        # weighted base angles sum to pi/2 exactly, so only deviations remain
        return math.fsum((weights * d).tolist()), weights.copy()

    def angle_sum_hessian(d: np.ndarray) -> np.ndarray:
        return np.zeros((dim, dim))

    def _turn_angles(d: np.ndarray) -> np.ndarray:
        # phi_k = a_0 + 2 sum_{j<k} a_j for k = 1..m, assembled from deviations
        dev = d[0] + 2.0 * np.concatenate(([0.0], np.cumsum(d[1:m])))
        return (2.0 * np.arange(1, m + 1) - 1.0) * base + dev

    def closure(d: np.ndarray) -> tuple[float, np.ndarray]:
        a0 = base + d[0]
        phi = _turn_angles(d)
        signs = np.array([-((-1.0) ** k) for k in range(2, m + 1)])
        terms = [math.sin(a0), 0.5] + (signs * np.sin(phi[1:])).tolist()
        val = math.fsum(terms)
        grad = np.zeros(dim)
        grad[0] = math.cos(a0)
        cos_phi = np.cos(phi)
        for k in range(2, m + 1):
            s = signs[k - 2] * cos_phi[k - 1]
            grad[0] += s
            grad[1:k] += 2.0 * s
        return val, grad

    def closure_hessian(d: np.ndarray) -> np.ndarray:
        a0 = base + d[0]
        phi = _turn_angles(d)
        H = np.zeros((dim, dim))
        H[0, 0] = -math.sin(a0)
        sin_phi = np.sin(phi)
        for k in range(2, m + 1):
            s = -((-1.0) ** k) * sin_phi[k - 1]
            v = np.zeros(dim)
            v[0] = 1.0
            v[1:k] = 2.0
            H -= s * np.outer(v, v)
        return H

    beta = base - math.asin(0.5 * math.sin(2 * math.pi / n))
    warm = base + np.array([((-1.0) ** k) * beta for k in range(dim)])
    upper = np.full(dim, math.pi / 6)
    upper[m] = math.pi / 3
    return NlpProblem(
        family="b", n=n, dim=dim, base_angle=base,
        objective=objective, objective_hessian=objective_hessian,
        eq_constraints=(angle_sum, closure),
        eq_hessians=(angle_sum_hessian, closure_hessian),
        lower=np.zeros(dim), upper=upper, warm_start=warm,
    )


def build_q_problem(n: int) -> NlpProblem:
    """Perimeter problem of the odd-cycle family (n/2 angles)."""
    if not (_is_power_of_two(n) and n >= 4):
        raise ValueError(f"need n = 2^s >= 4, got {n}")
    dim = n // 2
    base = math.pi / n

    def objective(d: np.ndarray) -> tuple[float, np.ndarray]:
        a = base + d
        return 4.0 * math.fsum(np.sin(a / 2).tolist()), 2.0 * np.cos(a / 2)

    def objective_hessian(d: np.ndarray) -> np.ndarray:
        a = base + d
        return np.diag(-np.sin(a / 2))

    def angle_sum(d: np.ndarray) -> tuple[float, np.ndarray]:
        return math.fsum(d.tolist()), np.ones(dim)

    def angle_sum_hessian(d: np.ndarray) -> np.ndarray:
        return np.zeros((dim, dim))

    def _running(d: np.ndarray) -> np.ndarray:
        # A_k = (k+1) pi/n + sum of deviations up to k
        return (np.arange(1, dim + 1)) * base + np.cumsum(d)

    signs = np.array([(-1.0) ** k for k in range(dim - 1)])

    def closure(d: np.ndarray) -> tuple[float, np.ndarray]:
        A = _running(d)
        val = math.fsum([-0.5] + (signs * np.sin(A[:-1])).tolist())
        contrib = signs * np.cos(A[:-1])
        grad = np.concatenate((np.cumsum(contrib[::-1])[::-1], [0.0]))
        return val, grad

    def closure_hessian(d: np.ndarray) -> np.ndarray:
        A = _running(d)
        H = np.zeros((dim, dim))
        for k in range(dim - 1):
            v = np.zeros(dim)
            v[: k + 1] = 1.0
            H -= signs[k] * math.sin(A[k]) * np.outer(v, v)
        return H

    gamma = math.pi / 4 - math.asin(math.cos(math.pi / n) / math.sqrt(2.0))
    warm = base - np.array([((-1.0) ** k) * gamma for k in range(dim)])
    upper = np.full(dim, math.pi / 3)
    upper[0] = math.pi / 6
    return NlpProblem(
        family="q", n=n, dim=dim, base_angle=base,
        objective=objective, objective_hessian=objective_hessian,
        eq_constraints=(angle_sum, closure),
        eq_hessians=(angle_sum_hessian, closure_hessian),
        lower=np.zeros(dim), upper=upper, warm_start=warm,
    )


# ---------------------------------------------------------------------------
# Solver internals.  Minimization form: F = -objective, constraints c = 0,
# Lagrangian F - lam.c, augmented Lagrangian F - lam.c + rho/2 |c|^2.
# ---------------------------------------------------------------------------


def _eval_constraints(problem: NlpProblem, d: np.ndarray):
    vals, grads = zip(*(c(d) for c in problem.eq_constraints))
    return np.array(vals), np.vstack(grads)


def _constraint_hess_combo(problem: NlpProblem, d: np.ndarray,
                           mults: np.ndarray) -> np.ndarray:
    H = np.zeros((problem.dim, problem.dim))
    for mult, hess in zip(mults, problem.eq_hessians):
        if mult != 0.0:
            H += mult * hess(d)
    return H


def _al_value(problem, d, lam, rho) -> float:
    f, _ = problem.objective(d)
    c, _ = _eval_constraints(problem, d)
    return -f - float(lam @ c) + 0.5 * rho * float(c @ c)


def _projected(g: np.ndarray, d: np.ndarray, lo: np.ndarray,
               hi: np.ndarray) -> np.ndarray:
    """Zero out gradient components pushing against an active box bound."""
    out = g.copy()
    out[(d <= lo + 1e-14) & (out > 0.0)] = 0.0
    out[(d >= hi - 1e-14) & (out < 0.0)] = 0.0
    return out


def _newton_step(H: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Solve H p = -g with escalating diagonal shifts until H is PD."""
    dim = len(g)
    shift = 0.0
    scale = max(float(np.max(np.abs(H))), 1.0)
    for _ in range(60):
        try:
            np.linalg.cholesky(H + shift * np.eye(dim))
            return np.linalg.solve(H + shift * np.eye(dim), -g)
        except np.linalg.LinAlgError:
            shift = max(2.0 * shift, 1e-12 * scale)
    return -g / scale  # fully regularized fallback


def _inner_newton(problem, d, lam, rho, lo, hi, gtol, max_iter=60):
    """Damped Newton minimization of the augmented Lagrangian over the box."""
    iters = 0
    for _ in range(max_iter):
        f, gf = problem.objective(d)
        c, J = _eval_constraints(problem, d)
        shifted = lam - rho * c
        g = -gf - J.T @ shifted
        gp = _projected(g, d, lo, hi)
        if float(np.max(np.abs(gp))) <= gtol:
            break
        H = -problem.objective_hessian(d) \
            - _constraint_hess_combo(problem, d, shifted) \
            + rho * (J.T @ J)
        p = _newton_step(H, g)
        phi0 = -f - float(lam @ c) + 0.5 * rho * float(c @ c)
        step = 1.0
        accepted = False
        while step >= 2.0 ** -40:
            trial = np.clip(d + step * p, lo, hi)
            slope = float(g @ (trial - d))
            if slope <= 0.0 and _al_value(problem, trial, lam, rho) \
                    <= phi0 + 1e-4 * slope:
                accepted = True
                break
            step *= 0.5
        iters += 1
        if not accepted:
            break
        moved = float(np.max(np.abs(trial - d)))
        d = trial
        if moved < STEP_TOL:
            break
    return d, iters


def _kkt_polish(problem, d, lam, lo, hi, max_iter=15):
    """Newton iterations on the stationarity + feasibility system.

    Refines both the point and the multipliers; keeps the best iterate by
    KKT merit in case a step overshoots.
    """
    iters = 0
    best = (math.inf, d, lam)
    for _ in range(max_iter):
        f, gf = problem.objective(d)
        c, J = _eval_constraints(problem, d)
        r_stat = -gf - J.T @ lam
        merit = max(float(np.max(np.abs(r_stat))), float(np.max(np.abs(c))))
        if merit < best[0]:
            best = (merit, d.copy(), lam.copy())
        if merit <= 1e-14:
            break
        W = -problem.objective_hessian(d) - _constraint_hess_combo(problem, d, lam)
        k = len(c)
        kkt = np.block([[W, -J.T], [J, np.zeros((k, k))]])
        rhs = np.concatenate((-r_stat, -c))
        try:
            sol = np.linalg.solve(kkt, rhs)
        except np.linalg.LinAlgError:
            sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
        step = sol[: problem.dim]
        norm = float(np.max(np.abs(step)))
        if norm > 0.05:  # keep the polish local
            step = step * (0.05 / norm)
        d = np.clip(d + step, lo, hi)
        lam = lam + sol[problem.dim:]
        iters += 1
        if norm < STEP_TOL:
            break
    # the loop may end right after a step; keep whichever iterate is best
    f, gf = problem.objective(d)
    c, J = _eval_constraints(problem, d)
    merit = max(float(np.max(np.abs(-gf - J.T @ lam))), float(np.max(np.abs(c))))
    if merit < best[0]:
        best = (merit, d, lam)
    return best[1], best[2], iters


def _final_report_parts(problem, d, lo, hi):
    """Refit multipliers by least squares and measure final residuals."""
    f, gf = problem.objective(d)
    c, J = _eval_constraints(problem, d)
    lam, *_ = np.linalg.lstsq(J.T, gf, rcond=None)
    r = gf - J.T @ lam
    # box-aware stationarity: at an active bound only the inward-pushing
    # component counts against optimality of the maximization problem
    proj = r.copy()
    at_lo = d <= lo + 1e-12
    at_hi = d >= hi - 1e-12
    proj[at_lo] = np.maximum(proj[at_lo], 0.0)
    proj[at_hi] = np.minimum(proj[at_hi], 0.0)
    kkt = float(np.linalg.norm(proj))
    return f, (float(c[0]), float(c[1])), kkt


def _solve_single(problem, d0, lo, hi, cfg):
    d = np.clip(d0, lo, hi)
    lam = np.zeros(len(problem.eq_constraints))
    rho = 100.0
    iters = 0
    prev_norm = math.inf
    for _ in range(cfg.max_outer):
        gtol = max(1e-11, min(1e-6, 0.1 * prev_norm))
        d, inner = _inner_newton(problem, d, lam, rho, lo, hi, gtol)
        iters += inner
        c, _ = _eval_constraints(problem, d)
        norm = float(np.max(np.abs(c)))
        lam = lam - rho * c
        if norm <= 1e-12:
            break
        if norm > 0.25 * prev_norm:
            rho = min(rho * 10.0, RHO_MAX)
        prev_norm = norm
    d, lam, polish_iters = _kkt_polish(problem, d, lam, lo, hi)
    iters += polish_iters
    return d, iters


def solve(problem: NlpProblem, config: SolverConfig | None = None) -> SolveReport:
    """Multi-start local maximization; returns the best converged report.

    Starts from the analytic warm start plus deterministic single-coordinate
    perturbations (magnitudes 1e-3 and 1e-2, alternating sign with the
    coordinate index).  A candidate counts as converged when both equality
    residuals are within ``tol_eq`` and the projected stationarity norm is
    within ``tol_kkt``; candidates that fall below the warm start's objective
    are discarded.  Raises :class:`NonConvergenceError` (carrying the best
    partial report) if no start survives.
    """
    cfg = config or SolverConfig()
    lo = problem.lower - problem.base_angle
    hi = problem.upper - problem.base_angle
    warm_dev = problem.warm_start - problem.base_angle
    warm_obj, _ = problem.objective(np.clip(warm_dev, lo, hi))
    n_starts = cfg.starts if cfg.starts is not None else 1 + 2 * problem.dim

    best = None          # (objective, report) among converged + filtered
    best_partial = None  # highest objective regardless of convergence
    for s in range(n_starts):
        d0 = warm_dev.copy()
        if s > 0:
            j = (s - 1) % problem.dim
            mag = PERTURBATIONS[((s - 1) // problem.dim) % len(PERTURBATIONS)]
            d0[j] += mag if j % 2 == 0 else -mag
        d, iters = _solve_single(problem, d0, lo, hi, cfg)
        obj, eq_res, kkt = _final_report_parts(problem, d, lo, hi)
        converged = (max(abs(eq_res[0]), abs(eq_res[1])) <= cfg.tol_eq
                     and kkt <= cfg.tol_kkt)
        report = SolveReport(
            family=problem.family, n=problem.n,
            angles=tuple(float(a) for a in problem.base_angle + d),
            objective=obj, eq_residuals=eq_res, kkt_residual=kkt,
            iterations=iters, starts_used=s + 1, converged=converged,
        )
        if best_partial is None or obj > best_partial.objective:
            best_partial = report
        if converged and obj >= warm_obj:
            if best is None or obj > best[0]:
                best = (obj, report)
    if best is None:
        raise NonConvergenceError(
            f"no start converged for family {problem.family!r}, n={problem.n}",
            best_partial,
        )
    _, report = best
    return SolveReport(
        family=report.family, n=report.n, angles=report.angles,
        objective=report.objective, eq_residuals=report.eq_residuals,
        kkt_residual=report.kkt_residual, iterations=report.iterations,
        starts_used=n_starts, converged=True,
    )


def certify(report: SolveReport, n: int, family: str) -> MetricsReport:
    """Rebuild the polygon from a report's angles and revalidate it.

    Checks convexity, the unit-diameter bound, and that the edge-sum
    perimeter agrees with the reported objective to 1e-10.
    """
    if not report.converged:
        raise CertificationError("cannot certify a non-converged report")
    try:
        if family == "b":
            poly = from_angles_b(AngleParamB(n, report.angles))
        elif family == "q":
            poly = from_angles_q(AngleParamQ(n, report.angles))
        else:
            raise CertificationError(f"unknown family {family!r}")
    except ValueError as exc:
        raise CertificationError(f"angle reconstruction failed: {exc}") from exc
    metrics = measure(poly)
    if not metrics.convex:
        raise CertificationError("reconstructed polygon is not convex")
    if metrics.diameter > 1.0 + DIAMETER_TOL:
        raise CertificationError(
            f"reconstructed diameter {metrics.diameter!r} exceeds one")
    if abs(metrics.perimeter - report.objective) > 1e-10:
        raise CertificationError(
            f"edge-sum perimeter {metrics.perimeter!r} disagrees with "
            f"objective {report.objective!r}")
    return metrics
