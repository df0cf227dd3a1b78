"""Spin lifts of pseudo-orthogonal maps and their operator norms on spinors."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.linalg as sla
from scipy.optimize import linear_sum_assignment

from .clifford_rep import GammaRep
from .doppler import PolarParts
from .krein_core import FundSym, KreinProductSpace, conjugated, operator_norm

AD_TOL = 1e-9
SPECTRUM_RTOL = 1e-8
MAX_AD_NUMERIC_N = 6


class LiftError(ArithmeticError):
    """Spin lift failed its adjoint-compatibility check."""


@dataclass(frozen=True, eq=False)
class SpinLift:
    tildeL: np.ndarray
    bivector_coeffs: np.ndarray
    spectrum_L: np.ndarray
    ad_residual: float
    generator_sign: int


@dataclass(frozen=True)
class LiftNormReport:
    lift_norm: float
    base_norm: float
    ad_spectral_radius: float
    product_formula_value: float
    lift_spectral_radius: float
    lower_bound: float
    upper_bound: float
    lower_ok: bool
    upper_ok: bool
    ad_identity_defect: float
    product_formula_defect: float
    normality_defect: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def spinor_generator(rep: GammaRep, B: np.ndarray) -> np.ndarray:
    """(1/4) sum_{mu,nu} B^{mu nu} gamma_mu gamma_nu, indices raised with the frame metric."""
    g = rep.metric
    Bt = B @ g  # B^mu_alpha g^{alpha nu}; g is its own inverse
    gam = np.stack(rep.gammas)
    prods = np.einsum("aij,bjk->abik", gam, gam)
    return 0.25 * np.einsum("ab,abik->ik", Bt, prods)


def ad_residual(rep: GammaRep, S: np.ndarray, A: np.ndarray) -> float:
    """max_rho ||S gamma_rho S^{-1} - gamma(A e_rho)|| / scale."""
    Sinv = np.linalg.inv(S)
    worst = 0.0
    scale = max(1.0, np.linalg.norm(A, 2))
    for rho in range(rep.n):
        lhs = S @ rep.gammas[rho] @ Sinv
        worst = max(worst, np.linalg.norm(lhs - rep.vector(A[:, rho]), 2))
    return float(worst / scale)


def lift_generator(rep: GammaRep, B: np.ndarray, tol: float = 1e-6) -> tuple[np.ndarray, int, float]:
    """Spin lift of exp(B) for B in so(g); returns (lift, sign convention, Ad residual)."""
    A = sla.expm(B)
    S0 = spinor_generator(rep, B)
    best = None
    for sign in (1, -1):
        S = sla.expm(sign * S0)
        res = ad_residual(rep, S, A)
        if best is None or res < best[2]:
            best = (S, sign, res)
        if res <= AD_TOL:
            break
    if best[2] > tol:
        raise LiftError(f"Ad residual {best[2]:.3e} above {tol} for both conventions")
    return best


def lift(rep: GammaRep, polar: PolarParts) -> SpinLift:
    """Lift L = exp(B) to Spin(g) through the bivector exponential."""
    if not np.allclose(rep.metric.shape, polar.L.shape):
        raise LiftError("representation and polar parts have different dimensions")
    B = polar.log_L
    S, sign, res = lift_generator(rep, B)
    return SpinLift(tildeL=S, bivector_coeffs=B, spectrum_L=polar.spectrum_L,
                    ad_residual=res, generator_sign=sign)


def subset_products(spectrum_L) -> np.ndarray:
    """All products lambda_{i1}...lambda_{ik} over index subsets (empty subset gives 1)."""
    lam = np.asarray(spectrum_L, dtype=float)
    logs = [0.0]
    for k in range(1, len(lam) + 1):
        logs.extend(float(np.sum(np.log(lam[list(c)]))) for c in combinations(range(len(lam)), k))
    return np.exp(np.array(logs))


def dedupe(values, rtol: float = SPECTRUM_RTOL) -> np.ndarray:
    vals = np.sort(np.asarray(values, dtype=complex).ravel(), kind="stable")
    vals = vals[np.argsort(np.abs(vals), kind="stable")]
    out: list[complex] = []
    for v in vals:
        if not any(abs(v - u) <= rtol * max(1.0, abs(u)) for u in out):
            out.append(v)
    return np.array(out)


def _set_distance(a, b) -> float:
    """Symmetric relative Hausdorff distance between two finite sets of numbers."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)

    def one_way(x, y):
        return max(np.min(np.abs(y - v)) / max(1.0, abs(v)) for v in x)

    return float(max(one_way(a, b), one_way(b, a)))


def ad_spectrum(sl: SpinLift, spectrum_L, rtol: float = SPECTRUM_RTOL,
                numeric: bool | None = None) -> dict:
    """Spectrum of X -> L~ X L~^{-1}, by subset enumeration and cross-checks.

    The enumerated set is compared with eigenvalue quotients of L~ and, for
    n <= 6, with the eigenvalues of the full conjugation operator.
    """
    enum = dedupe(subset_products(spectrum_L), rtol)
    ev = np.linalg.eigvals(sl.tildeL)
    quot = dedupe((ev[:, None] / ev[None, :]).ravel(), rtol)
    n = len(spectrum_L)
    if numeric is None:
        numeric = n <= MAX_AD_NUMERIC_N
    out = {
        "enumerated": enum.real,
        "radius": float(np.max(np.abs(enum))),
        "quotient_defect": _set_distance(enum, quot),
        "numeric_defect": None,
    }
    if numeric:
        S = sl.tildeL
        ad = np.kron(S, np.linalg.inv(S).T)
        num = dedupe(np.linalg.eigvals(ad), rtol)
        out["numeric_defect"] = _set_distance(enum, num)
        out["numeric_radius"] = float(np.max(np.abs(num)))
    worst = max(out["quotient_defect"], out["numeric_defect"] or 0.0)
    if worst > 1e3 * rtol:
        raise LiftError(f"Ad spectrum mismatch {worst:.3e}")
    return out


def lift_norm(space: KreinProductSpace, fs2: FundSym, sl: SpinLift, base_norm: float | None = None,
              slack: float = 1e-8) -> LiftNormReport:
    """Operator norm of the lift on (S, <.,.>_{n_2}) with the bound checks."""
    lam = np.asarray(sl.spectrum_L)
    if base_norm is None:
        base_norm = float(lam.max())
    norm_lift = operator_norm(space, fs2, sl.tildeL)
    spec = ad_spectrum(sl, lam)
    ad_radius = spec.get("numeric_radius", spec["radius"])
    big = lam[lam > 1.0]
    product = float(np.exp(0.5 * np.sum(np.log(big)))) if big.size else 1.0
    r_lift = float(np.max(np.abs(np.linalg.eigvals(sl.tildeL))))
    m = min(space.rep.sig.p, space.rep.sig.q)
    lower = base_norm ** 0.5
    upper = base_norm ** (m / 2)
    C = conjugated(fs2, sl.tildeL)
    normal = np.linalg.norm(C @ C.conj().T - C.conj().T @ C, 2) / max(1.0, norm_lift ** 2)
    return LiftNormReport(
        lift_norm=norm_lift,
        base_norm=float(base_norm),
        ad_spectral_radius=float(ad_radius),
        product_formula_value=product,
        lift_spectral_radius=r_lift,
        lower_bound=float(lower),
        upper_bound=float(upper),
        lower_ok=bool(lower - slack <= norm_lift),
        upper_ok=bool(norm_lift <= upper + slack),
        ad_identity_defect=float(abs(ad_radius - r_lift ** 2) / r_lift ** 2),
        product_formula_defect=float(abs(product - norm_lift) / norm_lift),
        normality_defect=float(normal),
    )


def pseudo_unitary_spectrum_check(M, G, tol: float = 1e-8) -> dict:
    """Pair the spectrum of a G-unitary M with its image under z -> 1/conj(z)."""
    M = np.asarray(M, dtype=complex)
    G = np.asarray(G, dtype=complex)
    scale = max(1.0, np.linalg.norm(M, 2)) ** 2
    unit = np.linalg.norm(M.conj().T @ G @ M - G, 2) / (scale * max(1.0, np.linalg.norm(G, 2)))
    if unit > tol:
        raise LiftError(f"matrix is not G-unitary (defect {unit:.3e})")
    z = np.linalg.eigvals(M)
    w = 1.0 / np.conj(z)
    cost = np.abs(z[:, None] - w[None, :]) / np.maximum(1.0, np.abs(z))[:, None]
    rows, cols = linear_sum_assignment(cost)
    return {"unitarity_defect": float(unit), "pairing_defect": float(cost[rows, cols].max()),
            "eigenvalues": z}
