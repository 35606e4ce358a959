"""Finite-difference checks of moment maps, forms and fiber decompositions.

An :class:`ExampleSpace` is a chart plus callables; every residual below is
computed from those callables only, so a wrong fixture formula shows up as
a large residual rather than being assumed away.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import lie
from .errors import DomainError

DEFAULT_SEED = 20240917
DEFAULT_H = 1e-4
MOMENT_TOL = 1e-6
ORDER_MIN = 1.9
ROUNDOFF_FLOOR = 1e-10
SVD_RANK_TOL = 1e-8


def default_seed() -> int:
    env = os.environ.get("MACKEY_SEED")
    return int(env) if env not in (None, "") else DEFAULT_SEED


@dataclass(frozen=True, eq=False)
class ExampleSpace:
    """Chart-level description of a hamiltonian space.

    ``moment(point)`` returns coefficients in the dual basis of ``algebra``;
    ``vector_field(x, point)`` the chart velocity of the infinitesimal action
    of x (a coefficient vector of ``algebra``).  When ``ideal`` is set,
    ``fiber_a`` is the value of a on the ideal's echelon basis and the fiber
    is the level set of the ideal part of the moment map.
    """

    name: str
    tag: str
    chart_dim: int
    algebra: lie.LieAlgebra
    omega: Callable
    moment: Callable
    vector_field: Callable
    sample: Callable
    group_action: Callable | None = None
    ideal: lie.Subspace | None = None
    fiber_a: np.ndarray | None = None
    sample_fiber: Callable | None = None
    is_orbit: bool = False
    in_chart: Callable | None = None
    notes: str = ""

    def __post_init__(self):
        if self.chart_dim % 2:
            raise DomainError(f"{self.name}: chart dimension must be even")

    @property
    def generators(self) -> list:
        return [np.eye(self.algebra.dim)[i] for i in range(self.algebra.dim)]

    def check_point(self, point):
        point = np.asarray(point, dtype=float)
        if point.shape != (self.chart_dim,):
            raise DomainError(f"{self.name}: point needs {self.chart_dim} coordinates")
        if self.in_chart is not None and not self.in_chart(point):
            raise DomainError(f"{self.name}: point outside the chart")
        return point

    def ideal_moment(self, point) -> np.ndarray:
        return lie.restrict(self.moment(point), self.ideal)

    def fiber_defect(self, point) -> float:
        return float(np.abs(self.ideal_moment(point) - self.fiber_a).max(initial=0.0))


@dataclass(frozen=True)
class ResidualReport:
    fixture: str
    test: str
    samples: int
    max_residual: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        ok = self.max_residual < self.tolerance
        return bool(ok and self.detail.get("extra_ok", True))

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (f"{mark}  {self.fixture:<18} {self.test:<28} n={self.samples:<4d} "
                f"max={self.max_residual:.3e}  tol={self.tolerance:.0e}")


# --------------------------------------------------------------------------
# residual operations


def _pairing(space: ExampleSpace, x):
    return lambda pt: float(np.dot(space.moment(pt), x))


def moment_condition_residual(space: ExampleSpace, x, point, h: float = DEFAULT_H) -> float:
    """max_v | omega(x(point), v) + D_v <Phi, x>(point) | over coordinate directions."""
    if h <= 0:
        raise DomainError("step must be positive")
    point = space.check_point(point)
    x = np.asarray(x, dtype=float)
    om = space.omega(point)
    v = space.vector_field(x, point)
    f = _pairing(space, x)
    worst = 0.0
    for k in range(space.chart_dim):
        e = np.zeros(space.chart_dim)
        e[k] = h
        deriv = (f(point + e) - f(point - e)) / (2 * h)
        worst = max(worst, abs(v @ om[:, k] + deriv))
    return worst


def convergence_order(space: ExampleSpace, x, point, h: float = DEFAULT_H) -> tuple[float, float, float | None]:
    """(residual at h, residual at h/10, observed order or None).

    The order is None when the residual at h is already at the roundoff
    floor: central differences are exact on quadratics, so no order can be
    observed there.
    """
    r1 = moment_condition_residual(space, x, point, h)
    r2 = moment_condition_residual(space, x, point, h / 10)
    if r1 < ROUNDOFF_FLOOR:
        return r1, r2, None
    return r1, r2, float(np.log10(r1 / max(r2, 1e-300)))


def equivariance_residual(space: ExampleSpace, g, point, theta_value, coadjoint) -> float:
    """|| Phi(g(point)) - g(Phi(point)) - theta ||_inf.

    ``coadjoint(g, xi)`` applies g to a dual-basis covector.
    """
    if space.group_action is None:
        raise DomainError(f"{space.name} has no group action")
    point = space.check_point(point)
    lhs = space.moment(space.group_action(g, point))
    rhs = coadjoint(g, space.moment(point))
    return float(np.abs(lhs - rhs - np.asarray(theta_value, dtype=float)).max())


def _jacobian(f, point, h):
    cols = []
    for k in range(len(point)):
        e = np.zeros(len(point))
        e[k] = h
        cols.append((f(point + e) - f(point - e)) / (2 * h))
    return np.array(cols).T


def _orthonormal(vectors, tol=SVD_RANK_TOL):
    if len(vectors) == 0:
        return np.zeros((0, 0))
    u, s, _ = np.linalg.svd(np.array(vectors).T, full_matrices=False)
    return u[:, s > tol * max(1.0, s.max(initial=0.0))]


def fiber_orthogonality_residual(space: ExampleSpace, z, tol: float = 1e-8, h: float = DEFAULT_H):
    """(max |omega(u, v)| over unit u in n(z), v in ker DPhi_n(z), dimension identity holds)."""
    if space.ideal is None:
        raise DomainError(f"{space.name} has no ideal moment")
    z = space.check_point(z)
    if space.fiber_defect(z) > tol:
        raise DomainError(f"{space.name}: point is not in the fiber")
    nz = _orthonormal([space.vector_field(x.astype(float), z) for x in space.ideal.basis])
    jac = _jacobian(space.ideal_moment, z, h)
    _, s, vt = np.linalg.svd(jac) if jac.size else (None, np.zeros(0), np.eye(space.chart_dim))
    rank = int(np.sum(s > SVD_RANK_TOL * max(1.0, s.max(initial=0.0))))
    ker = vt[rank:].T
    om = space.omega(z)
    dim_ok = nz.shape[1] + ker.shape[1] == space.chart_dim
    if nz.shape[1] == 0 or ker.shape[1] == 0:
        return 0.0, dim_ok
    return float(np.abs(nz.T @ om @ ker).max()), dim_ok


def kks_coordinate_residual(space: ExampleSpace, point, pairs=None) -> float:
    """max | <point, [y, x]> - omega(x(point), y(point)) | over generator pairs."""
    if not space.is_orbit:
        raise DomainError(f"{space.name} is not a coadjoint orbit fixture")
    point = space.check_point(point)
    xi = space.moment(point)
    gens = space.generators
    if pairs is None:
        pairs = [(i, j) for i in range(len(gens)) for j in range(len(gens))]
    om = space.omega(point)
    c = space.algebra.float_constants
    worst = 0.0
    for i, j in pairs:
        x, y = gens[i], gens[j]
        kks = xi @ np.einsum("i,j,ijk->k", y, x, c)
        form = space.vector_field(x, point) @ om @ space.vector_field(y, point)
        worst = max(worst, abs(kks - form))
    return worst


def koenig_split_residual(space: ExampleSpace, point, parts) -> float:
    """|| Phi(point) - phi_U(point) - phi_Z(point) ||_inf with ``parts = (phi_U, phi_Z)``."""
    if space.tag != "galilei_ext":
        raise DomainError("Koenig split is a Galilei fixture check")
    point = space.check_point(point)
    phi_u, phi_z = parts
    return float(np.abs(space.moment(point) - phi_u(point) - phi_z(point)).max())


# --------------------------------------------------------------------------
# the verify table


def _report(fixture, test, values, tol, **detail) -> ResidualReport:
    values = list(values)
    return ResidualReport(fixture, test, len(values), float(max(values, default=0.0)), tol, detail)


def run_verify(tag: str, *, seed: int | None = None, samples: int = 100, h: float = DEFAULT_H,
               moment_tol: float = MOMENT_TOL, tight_tol: float = 1e-9, fiber_samples: int | None = None) -> list[ResidualReport]:
    """All residual checks for one catalog fixture."""
    from . import catalog

    entry = catalog.entry(tag)
    seed = default_seed() if seed is None else seed
    ss = np.random.SeedSequence(seed)
    reports = []
    fiber_samples = samples if fiber_samples is None else fiber_samples
    for space, child in zip(entry.spaces(), ss.spawn(len(entry.spaces()))):
        rng = np.random.default_rng(child)
        pts = [space.sample(rng) for _ in range(samples)]
        res, orders, floors = [], [], 0
        for x in space.generators:
            for pt in pts:
                r1, r2, order = convergence_order(space, x, pt, h)
                res.append(r1)
                if order is None:
                    floors += 1
                else:
                    orders.append(order)
        min_order = min(orders) if orders else None
        reports.append(_report(
            tag, f"moment[{space.name}]", res, moment_tol,
            min_order=min_order, roundoff_floor_cases=floors,
            extra_ok=(min_order is None or min_order >= ORDER_MIN),
        ))
        if space.is_orbit:
            reports.append(_report(tag, f"kks[{space.name}]",
                                   [kks_coordinate_residual(space, pt) for pt in pts], tight_tol))
        if space.sample_fiber is not None:
            vals, dims = [], []
            for _ in range(fiber_samples):
                z = space.sample_fiber(rng)
                v, ok = fiber_orthogonality_residual(space, z)
                vals.append(v)
                dims.append(ok)
            reports.append(_report(tag, f"fiber[{space.name}]", vals, 1e-8, extra_ok=all(dims),
                                   dimension_identity=all(dims)))
    for name, fn in entry.extra_checks():
        rng = np.random.default_rng(ss.spawn(1)[0])
        vals, tol, detail = fn(rng, samples)
        reports.append(_report(tag, name, vals, tol, **detail))
    return reports
