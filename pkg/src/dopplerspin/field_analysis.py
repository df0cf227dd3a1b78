"""Pointwise Doppler-factor sweeps over sampled domains and the norm-equivalence verdict.

Boundedness over a non-compact manifold cannot be decided from samples, so a
sweep reports the supremum over the sampled domain together with a growth
diagnostic: log(dsf) is fitted linearly against a growth coordinate on the
half of that coordinate's range closest to the supremum.  GROWTH_DETECTED
means some fit has slope > GROWTH_SLOPE with RMS residual < GROWTH_RESIDUAL.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import integrate, stats
from scipy.spatial import cKDTree

from .clifford_rep import dirac_rep
from .doppler import (MetricSpace, Splitting, SplittingError, dsf, dsf_lorentzian,
                      make_splitting, reference_splitting, splitting_from_perp)
from .krein_core import KreinProductSpace, fundamental_symmetry, scalar_product

GROWTH_SLOPE = 0.05
GROWTH_RESIDUAL = 0.1
BOUNDED = "BOUNDED_ON_DOMAIN"
GROWTH = "GROWTH_DETECTED"
MIN_TAIL = 3

Point = np.ndarray
VectorField = Callable[[Point], np.ndarray]


class SweepError(ValueError):
    """A field is invalid at a sample point."""

    def __init__(self, message: str, point=None):
        super().__init__(message if point is None else f"{message} at x = {np.round(point, 12).tolist()}")
        self.point = None if point is None else np.asarray(point).tolist()


@dataclass(frozen=True)
class MetricField:
    evaluator: Callable[[Point], MetricSpace]
    volume_density: Callable[[Point], float]
    name: str = ""

    @classmethod
    def constant(cls, g, name: str = "flat") -> "MetricField":
        ms = MetricSpace(np.asarray(g, dtype=float))
        vol = float(np.sqrt(abs(np.linalg.det(ms.g))))
        return cls(lambda x: ms, lambda x: vol, name)


@dataclass(frozen=True)
class SplittingField:
    evaluator: Callable[[Point], Splitting]
    label: str = ""


@dataclass(frozen=True)
class GridSpec:
    """Tensor grid over the coordinate ``axes``; other coordinates fixed at ``base_point``."""

    bounds: tuple
    resolution: tuple
    axes: tuple = (0,)
    base_point: tuple = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(tuple(map(float, b)) for b in self.bounds))
        object.__setattr__(self, "resolution", tuple(int(r) for r in self.resolution))
        object.__setattr__(self, "axes", tuple(int(a) for a in self.axes))
        object.__setattr__(self, "base_point", tuple(float(v) for v in self.base_point))
        if not (len(self.bounds) == len(self.resolution) == len(self.axes)):
            raise ValueError("bounds, resolution and axes must have equal length")
        for (lo, hi), res in zip(self.bounds, self.resolution):
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"invalid bounds [{lo}, {hi}]")
            if res < 2:
                raise ValueError("resolution must be at least 2 per axis")
        if any(a < 0 or a >= len(self.base_point) for a in self.axes):
            raise ValueError("grid axis outside the coordinate range")

    def axis_values(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, r) for (lo, hi), r in zip(self.bounds, self.resolution)]

    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axis_values(), indexing="ij")
        pts = np.tile(np.asarray(self.base_point), (mesh[0].size, 1))
        for a, m in zip(self.axes, mesh):
            pts[:, a] = m.ravel()
        return pts

    def refined(self, factor: int = 2) -> "GridSpec":
        """Same domain with (resolution - 1) * factor + 1 samples per axis."""
        return GridSpec(self.bounds, tuple((r - 1) * factor + 1 for r in self.resolution),
                        self.axes, self.base_point)

    def to_dict(self) -> dict:
        return {"axes": list(self.axes), "bounds": [list(b) for b in self.bounds],
                "resolution": list(self.resolution), "base_point": list(self.base_point)}


class SampledVectorField:
    """Vector field given on scattered samples; evaluation returns the nearest sample."""

    def __init__(self, points, values):
        self.points = np.asarray(points, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self._tree = cKDTree(self.points)

    def __call__(self, x):
        _, i = self._tree.query(np.asarray(x, dtype=float))
        return self.values[i]


@dataclass(frozen=True)
class GrowthFit:
    coordinate: str
    slope: float
    intercept: float
    residual: float
    n_tail: int

    @property
    def detects_growth(self) -> bool:
        return self.slope > GROWTH_SLOPE and self.residual < GROWTH_RESIDUAL

    def to_dict(self) -> dict:
        return {"coordinate": self.coordinate, "slope": self.slope, "intercept": self.intercept,
                "residual": self.residual, "n_tail": self.n_tail}


@dataclass
class SweepReport:
    points: np.ndarray
    dsf: np.ndarray
    sup_dsf: float
    argsup: list
    growth_fits: list
    growth_fit: GrowthFit
    verdict: str
    g_v1v2: np.ndarray | None = None
    consistency_defect: float | None = None
    labels: dict = field(default_factory=dict)

    @property
    def rapidity(self) -> np.ndarray:
        return np.log(self.dsf)

    def samples(self) -> list[tuple[list, float, float]]:
        return [(p.tolist(), float(d), float(r)) for p, d, r in zip(self.points, self.dsf, self.rapidity)]

    def to_dict(self, include_samples: bool = False) -> dict:
        out = {
            "labels": dict(self.labels),
            "n_samples": int(len(self.dsf)),
            "sup_dsf": self.sup_dsf,
            "sup_rapidity": float(np.log(self.sup_dsf)),
            "argsup": self.argsup,
            "min_dsf": float(self.dsf.min()),
            "verdict": self.verdict,
            "growth_fit": self.growth_fit.to_dict(),
            "growth_fits": [f.to_dict() for f in self.growth_fits],
            "growth_slope_threshold": GROWTH_SLOPE,
            "growth_residual_cap": GROWTH_RESIDUAL,
        }
        if self.g_v1v2 is not None:
            out["sup_g_v1v2"] = float(self.g_v1v2.max())
        if self.consistency_defect is not None:
            out["consistency_defect"] = self.consistency_defect
        if include_samples:
            out["samples"] = [{"point": p, "dsf": d, "rapidity": r} for p, d, r in self.samples()]
        return out


def fit_growth(coord: np.ndarray, log_dsf: np.ndarray, name: str) -> GrowthFit:
    """Least-squares line through log(dsf) over the upper half of the coordinate range."""
    mid = 0.5 * (coord.min() + coord.max())
    tail = coord >= mid
    if tail.sum() < MIN_TAIL:
        tail = np.zeros_like(tail)
        tail[np.argsort(coord, kind="stable")[-MIN_TAIL:]] = True
    c, y = coord[tail], log_dsf[tail]
    A = np.column_stack([c, np.ones_like(c)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ np.array([slope, intercept]) - y) ** 2)))
    return GrowthFit(name, float(slope), float(intercept), resid, int(tail.sum()))


def _axis_coordinates(grid: GridSpec) -> dict[str, Callable[[Point], float]]:
    coords = {}
    for a in grid.axes:
        coords[f"+x{a}"] = lambda x, a=a: x[a]
        coords[f"-x{a}"] = lambda x, a=a: -x[a]
    return coords


def _aggregate(points, values, grid, growth_coordinates, g_vals=None, defect=None,
               labels=None) -> SweepReport:
    values = np.asarray(values, dtype=float)
    log_d = np.log(values)
    coords = dict(_axis_coordinates(grid))
    coords.update(growth_coordinates or {})
    fits = [fit_growth(np.array([fn(p) for p in points]), log_d, name) for name, fn in coords.items()]
    growing = [f for f in fits if f.detects_growth]
    primary = max(growing or fits, key=lambda f: (f.slope, -f.residual))
    i = int(np.argmax(values))
    return SweepReport(points=points, dsf=values, sup_dsf=float(values[i]), argsup=points[i].tolist(),
                       growth_fits=fits, growth_fit=primary, verdict=GROWTH if growing else BOUNDED,
                       g_v1v2=None if g_vals is None else np.asarray(g_vals),
                       consistency_defect=defect, labels=labels or {})


def _map(fn, points, workers: int):
    if workers <= 1:
        return [fn(p) for p in points]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, points))


def dsf_sweep(mf: MetricField, f1: SplittingField, f2: SplittingField, grid: GridSpec,
              growth_coordinates: Mapping[str, Callable] | None = None, workers: int = 1) -> SweepReport:
    """Doppler shift factor between two splitting fields at every grid point."""
    points = grid.points()

    def one(x):
        try:
            ms = mf.evaluator(x)
            return dsf(ms, f1.evaluator(x), f2.evaluator(x)).dsf
        except (SplittingError, ArithmeticError) as exc:
            raise SweepError(f"invalid splitting ({exc})", x) from exc

    values = _map(one, points, workers)
    return _aggregate(points, values, grid, growth_coordinates,
                      labels={"metric": mf.name, "field_1": f1.label, "field_2": f2.label})


def timelike_splitting_field(mf: MetricField, v: VectorField, label: str = "") -> SplittingField:
    """Splitting whose positive part is spanned by a timelike vector field."""
    return SplittingField(lambda x: splitting_from_perp(mf.evaluator(x), v(x)), label)


def doppler_class_check(mf: MetricField, v1: VectorField, v2: VectorField, grid: GridSpec,
                        growth_coordinates: Mapping[str, Callable] | None = None, workers: int = 1,
                        unit_tol: float = 1e-9, labels: dict | None = None) -> SweepReport:
    """Sweep g(v1, v2) and the Lorentzian Doppler factor; cross-check against the splitting path."""
    points = grid.points()

    def one(x):
        ms = mf.evaluator(x)
        if ms.inertia[0] != 1:
            raise SweepError("Lorentzian metric with one positive direction required", x)
        a, b = np.asarray(v1(x), float), np.asarray(v2(x), float)
        na, nb = ms.inner(a, a), ms.inner(b, b)
        if abs(na - 1.0) > unit_tol or abs(nb - 1.0) > unit_tol:
            raise SweepError(f"vector fields must be unit timelike (g = {na}, {nb})", x)
        gab = ms.inner(a, b)
        if gab < 1.0 - unit_tol:
            raise SweepError(f"vector fields are not co-oriented (g(v1, v2) = {gab})", x)
        gab = max(gab, 1.0)
        closed = dsf_lorentzian(gab)
        path = dsf(ms, splitting_from_perp(ms, a), splitting_from_perp(ms, b)).dsf
        return gab, closed, abs(path - closed) / closed

    out = _map(one, points, workers)
    g_vals = np.array([o[0] for o in out])
    values = np.array([o[1] for o in out])
    defect = float(max(o[2] for o in out))
    return _aggregate(points, values, grid, growth_coordinates, g_vals, defect, labels)


# --- presets ---------------------------------------------------------------

MINKOWSKI = (1.0, -1.0, -1.0, -1.0)


def minkowski() -> MetricField:
    return MetricField.constant(np.diag(MINKOWSKI), "minkowski-1-3")


def rest_field() -> VectorField:
    e0 = np.array([1.0, 0.0, 0.0, 0.0])
    return lambda x: e0


def boost_field(axis: int) -> VectorField:
    """(cosh x_axis, sinh x_axis, 0, 0): boost along e1 with rapidity equal to a coordinate."""
    return lambda x: np.array([np.cosh(x[axis]), np.sinh(x[axis]), 0.0, 0.0])


def schwarzschild(r_s: float = 1.0) -> MetricField:
    """Exterior Schwarzschild metric in (t, r, theta, phi) coordinates."""

    def g(x):
        r, th = x[1], x[2]
        f = 1.0 - r_s / r
        if f <= 0:
            raise SweepError("point is not in the exterior region", x)
        return MetricSpace(np.diag([f, -1.0 / f, -r * r, -(r * np.sin(th)) ** 2]))

    return MetricField(g, lambda x: x[1] ** 2 * abs(np.sin(x[2])), f"schwarzschild(r_s={r_s})")


def radial_geodesic_field(r_s: float, energy: float, outgoing: bool) -> VectorField:
    """Four-velocity of radial geodesics with conserved energy E = f dt/dtau."""

    def u(x):
        r = x[1]
        f = 1.0 - r_s / r
        ur = np.sqrt(energy * energy - f)
        return np.array([energy / f, ur if outgoing else -ur, 0.0, 0.0])

    return u


def schwarzschild_g_in_out(r, r_s: float = 1.0, e1: float = 1.0, e2: float = 1.0):
    """Closed form g(u_in, u_out) = (E1 E2 + sqrt(E1^2 - f) sqrt(E2^2 - f)) / f."""
    f = 1.0 - r_s / np.asarray(r, dtype=float)
    return (e1 * e2 + np.sqrt(e1 * e1 - f) * np.sqrt(e2 * e2 - f)) / f


def horizon_log_distance(r_s: float) -> Callable[[Point], float]:
    return lambda x: -np.log(x[1] / r_s - 1.0)


def preset_rest_vs_boostfield(grid: GridSpec | None = None, workers: int = 1) -> SweepReport:
    grid = grid or GridSpec(bounds=[(-5.0, 5.0)], resolution=[201], axes=[0])
    mf = minkowski()
    f1 = timelike_splitting_field(mf, rest_field(), "rest frame e0")
    f2 = timelike_splitting_field(mf, boost_field(0), "n(x) = cosh(x0) g0 + sinh(x0) g1")
    return dsf_sweep(mf, f1, f2, grid, workers=workers)


def preset_shear_vs_e0(grid: GridSpec | None = None, workers: int = 1) -> SweepReport:
    grid = grid or GridSpec(bounds=[(-5.0, 5.0)], resolution=[201], axes=[3])
    return doppler_class_check(minkowski(), boost_field(3), rest_field(), grid, workers=workers,
                               labels={"metric": "minkowski-1-3", "field_1": "shear (cosh x3, sinh x3, 0, 0)",
                                       "field_2": "e0"})


def preset_covariantly_constant(rapidity: float = 0.4, grid: GridSpec | None = None,
                                workers: int = 1) -> SweepReport:
    grid = grid or GridSpec(bounds=[(-5.0, 5.0), (-5.0, 5.0)], resolution=[21, 21], axes=[0, 1])
    mf = minkowski()
    ms = mf.evaluator(None)
    s1 = reference_splitting(ms)
    v = np.array([np.cosh(rapidity), np.sinh(rapidity), 0.0, 0.0])
    s2 = splitting_from_perp(ms, v)
    return dsf_sweep(mf, SplittingField(lambda x: s1, "constant e0"),
                     SplittingField(lambda x: s2, f"constant boost, rapidity {rapidity}"), grid,
                     workers=workers)


def preset_schwarzschild(r_min: float = 1.05, r_max: float = 10.0, r_s: float = 1.0,
                         energies: Sequence[float] = (1.0, 1.0), resolution: int = 400,
                         grid: GridSpec | None = None, workers: int = 1) -> SweepReport:
    """Radially ingoing versus outgoing geodesic observers, r in [r_min, r_max] (units of r_s)."""
    if r_min <= 1.0:
        raise ValueError("r_min must lie outside the horizon (> 1 in units of r_s)")
    grid = grid or GridSpec(bounds=[(r_min * r_s, r_max * r_s)], resolution=[resolution], axes=[1],
                            base_point=(0.0, 0.0, np.pi / 2, 0.0))
    e1, e2 = energies
    return doppler_class_check(
        schwarzschild(r_s), radial_geodesic_field(r_s, e1, False), radial_geodesic_field(r_s, e2, True),
        grid, growth_coordinates={"horizon_log_distance": horizon_log_distance(r_s)}, workers=workers,
        labels={"metric": f"schwarzschild(r_s={r_s})", "field_1": f"radial infall, E={e1}",
                "field_2": f"radial outgoing, E={e2}"})


SWEEP_PRESETS = {
    "minkowski-rest-vs-boostfield": preset_rest_vs_boostfield,
    "minkowski-shear-vs-e0": preset_shear_vs_e0,
    "covariantly-constant-pair": preset_covariantly_constant,
    "schwarzschild-radial-in-out": preset_schwarzschild,
}


# --- the flat-space counterexample ----------------------------------------

def _boosted_fundsym(space: KreinProductSpace, ms: MetricSpace, x0: float):
    v = np.array([np.cosh(x0), np.sinh(x0), 0.0, 0.0])
    return fundamental_symmetry(space, splitting_from_perp(ms, v))


def counterexample_norms(y0: float, bump_width: float, grid: GridSpec | None = None,
                         mass_tol: float = 1e-6) -> tuple[float, float]:
    """Squared eta- and n-norms of sqrt(phi(x - y)) e_1 for a normalized Gaussian bump phi.

    The three spatial Gaussian factors integrate to one exactly, leaving a
    midpoint rule along x0 with ``grid.resolution[0]`` cells.  The spinor
    integrand goes through the fundamental symmetries of the rest and the
    boosted splitting in the Dirac representation.
    """
    if bump_width <= 0:
        raise ValueError("bump width must be positive")
    if grid is None:
        grid = GridSpec(bounds=[(y0 - 9 * bump_width, y0 + 9 * bump_width)], resolution=[401], axes=[0])
    (lo, hi), = grid.bounds
    n_cells = grid.resolution[0]
    dist = stats.norm(loc=y0, scale=bump_width)
    outside = dist.cdf(lo) + dist.sf(hi)
    if outside > mass_tol:
        raise ValueError(f"bump mass outside the grid is {outside:.3e} > {mass_tol}")
    h = (hi - lo) / n_cells
    xs = lo + h * (np.arange(n_cells) + 0.5)
    rep = dirac_rep()
    space = KreinProductSpace.from_rep(rep)
    ms = MetricSpace(rep.metric)
    eta = fundamental_symmetry(space, reference_splitting(ms))
    e1 = np.eye(4)[0]
    eta_sq = n_sq = 0.0
    for x0, w in zip(xs, dist.pdf(xs) * h):
        psi = np.sqrt(w) * e1
        eta_sq += scalar_product(space, eta, psi, psi).real
        n_sq += scalar_product(space, _boosted_fundsym(space, ms, x0), psi, psi).real
    return float(eta_sq), float(n_sq)


def divergent_field_demo(x_max: float, n_rows: int | None = None, fit_window=(5.0, 20.0)) -> dict:
    """Partial integrals over |x0| <= X of a spinor field decaying like exp(-|x0|/2).

    Returns the table of X, the eta-norm^2 and n-norm^2 partial integrals,
    and linear fits of both against X over ``fit_window``.
    """
    if x_max <= 0:
        raise ValueError("x_max must be positive")
    rep = dirac_rep()
    space = KreinProductSpace.from_rep(rep)
    H, g0, g1 = space.H.H, rep.gammas[0], rep.gammas[1]
    e1 = np.eye(4)[0]

    def eta_density(t):
        return np.exp(-abs(t)) * (e1 @ H @ g0 @ e1).real

    def n_density(t):
        n = np.cosh(t) * g0 + np.sinh(t) * g1
        return np.exp(-abs(t)) * (e1 @ H @ n @ e1).real

    if n_rows is None:
        n_rows = int(round(4 * x_max)) + 1
    xs = np.linspace(0.0, x_max, n_rows)
    eta_vals, n_vals = [], []
    for X in xs:
        # integrands are even in t
        eta_vals.append(2 * integrate.quad(eta_density, 0.0, X, epsabs=1e-13, epsrel=1e-13)[0])
        n_vals.append(2 * integrate.quad(n_density, 0.0, X, epsabs=1e-13, epsrel=1e-13)[0])
    eta_vals, n_vals = np.array(eta_vals), np.array(n_vals)
    lo, hi = fit_window
    win = (xs >= lo - 1e-12) & (xs <= hi + 1e-12)
    fits = {}
    for name, vals in (("eta", eta_vals), ("n", n_vals)):
        if win.sum() >= 2:
            slope, intercept = np.polyfit(xs[win], vals[win], 1)
            fits[name] = {"slope": float(slope), "intercept": float(intercept),
                          "divergent": bool(slope > GROWTH_SLOPE)}
    return {"X": xs.tolist(), "eta_norm_sq": eta_vals.tolist(), "n_norm_sq": n_vals.tolist(),
            "fit_window": [lo, hi], "fits": fits}
