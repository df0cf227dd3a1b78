"""Krein products, fundamental symmetries and the norms they induce on spinors."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .clifford_rep import GammaRep, SpinorMetric, build_spinor_metric, spinor_metric_residual
from .doppler import Splitting

FUNDSYM_TOL = 1e-10


class KreinError(ValueError):
    """Inconsistent Krein-space data."""


@dataclass(frozen=True, eq=False)
class KreinProductSpace:
    rep: GammaRep
    H: SpinorMetric

    def __post_init__(self):
        herm, inter = spinor_metric_residual(self.rep, self.H.H)
        if max(herm, inter) > 1e-10:
            raise KreinError(f"H is not a spinor metric for this representation ({herm}, {inter})")

    @classmethod
    def from_rep(cls, rep: GammaRep) -> "KreinProductSpace":
        return cls(rep, build_spinor_metric(rep))

    @property
    def dim(self) -> int:
        return self.rep.dim_spinor


@dataclass(frozen=True, eq=False)
class FundSym:
    """n = i^r gamma(v_1) ... gamma(v_k) for a pseudo-orthonormal basis of V or V-perp."""

    n: np.ndarray
    source: Splitting
    r_phase: int
    part: str
    vectors: np.ndarray
    gram: np.ndarray  # H n, the Gram matrix of <.,.>_n


def _product(rep: GammaRep, vectors: np.ndarray) -> np.ndarray:
    out = np.eye(rep.dim_spinor, dtype=complex)
    for j in range(vectors.shape[1]):
        out = out @ rep.vector(vectors[:, j])
    return out


def _check_frame_metric(rep: GammaRep, split: Splitting):
    if not np.allclose(split.ms.g, rep.metric, atol=1e-12, rtol=0):
        raise KreinError("splitting metric must be the representation's frame metric diag(signs)")


def fundsym_defects(space: KreinProductSpace, n: np.ndarray) -> tuple[float, float, float]:
    """(||n^2 - I||, ||Hn - (Hn)^dagger||, min eigenvalue of Hn)."""
    G = space.H.H @ n
    inv = np.linalg.norm(n @ n - np.eye(space.dim), 2)
    herm = np.linalg.norm(G - G.conj().T, 2)
    mineig = np.linalg.eigvalsh(0.5 * (G + G.conj().T)).min()
    return float(inv), float(herm), float(mineig)


def fundamental_symmetry(space: KreinProductSpace, split: Splitting, tol: float = FUNDSYM_TOL) -> FundSym:
    """Fundamental symmetry attached to a splitting.

    Tries products over the V basis and the V-perp basis with every phase
    i^r, r = 0..3, and keeps those that are involutive, Krein-self-adjoint
    and positive.  Exactly one must survive.
    """
    _check_frame_metric(space.rep, split)
    passing = []
    for part, vecs in (("V", split.basis_V), ("V_perp", split.basis_perp)):
        base = _product(space.rep, vecs)
        for r in range(4):
            n = (1j ** r) * base
            inv, herm, mineig = fundsym_defects(space, n)
            scale = max(1.0, np.linalg.norm(n, 2))
            if inv <= tol * scale ** 2 and herm <= tol * scale and mineig > tol:
                passing.append((n, r, part, vecs))
    distinct = []
    for cand in passing:
        if all(np.linalg.norm(cand[0] - d[0], 2) > 1e-8 for d in distinct):
            distinct.append(cand)
    if len(distinct) != 1:
        raise KreinError(f"expected one fundamental symmetry candidate, found {len(distinct)}")
    n, r, part, vecs = distinct[0]
    n.setflags(write=False)
    G = space.H.H @ n
    return FundSym(n=n, source=split, r_phase=r, part=part, vectors=vecs,
                   gram=0.5 * (G + G.conj().T))


def _check_dim(space: KreinProductSpace, *vs):
    for v in vs:
        if np.shape(v)[0] != space.dim:
            raise KreinError(f"spinor of dimension {space.dim} expected, got {np.shape(v)}")


def krein_product(space: KreinProductSpace, psi, phi) -> complex:
    """H(psi, phi) = psi^dagger H phi."""
    _check_dim(space, psi, phi)
    return complex(np.vdot(psi, space.H.H @ np.asarray(phi)))


def scalar_product(space: KreinProductSpace, fs: FundSym, psi, phi) -> complex:
    """<psi, phi>_n = H(psi, n phi)."""
    _check_dim(space, psi, phi)
    return complex(np.vdot(psi, fs.gram @ np.asarray(phi)))


def norm(space: KreinProductSpace, fs: FundSym, psi) -> float:
    return float(np.sqrt(max(scalar_product(space, fs, psi, psi).real, 0.0)))


def gram_sqrt(G: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, U = np.linalg.eigh(G)
    if w.min() <= 0:
        raise KreinError("Gram matrix is not positive definite")
    r = np.sqrt(w)
    return (U * r) @ U.conj().T, (U / r) @ U.conj().T


def conjugated(fs: FundSym, A: np.ndarray) -> np.ndarray:
    """G^{1/2} A G^{-1/2}: A written in an orthonormal basis for <.,.>_n."""
    R, Rinv = gram_sqrt(fs.gram)
    return R @ A @ Rinv


def operator_norm(space: KreinProductSpace, fs: FundSym, A) -> float:
    A = np.asarray(A)
    if A.shape != (space.dim, space.dim):
        raise KreinError(f"operator of shape {(space.dim,) * 2} expected")
    return float(np.linalg.norm(conjugated(fs, A), 2))


def _line_vector(fs: FundSym) -> np.ndarray:
    """Unit vector spanning the one-dimensional part of the splitting."""
    sp = fs.source
    if sp.basis_perp.shape[1] == 1:
        return sp.basis_perp[:, 0]
    if sp.basis_V.shape[1] == 1:
        return sp.basis_V[:, 0]
    raise KreinError("Lorentzian or anti-Lorentzian signature required")


def check_T_quadratic(space: KreinProductSpace, n1: FundSym, n2: FundSym) -> dict:
    """Residual of T^2 - 2 beta T + 1 = 0 for T = n2 n1.

    beta = |g(u_1, u_2)| for the unit vectors u_i spanning the one-dimensional
    part of each splitting; T is positive for <.,.>_{n_2}, which fixes the sign.
    """
    if min(space.rep.sig.p, space.rep.sig.q) != 1:
        raise KreinError("Lorentzian or anti-Lorentzian signature required")
    u1, u2 = _line_vector(n1), _line_vector(n2)
    beta = abs(float(u1 @ space.rep.metric @ u2))
    T = n2.n @ n1.n
    eye = np.eye(space.dim)
    resid = np.linalg.norm(T @ T - 2 * beta * T + eye, 2)
    ev = np.sort(np.linalg.eigvals(T).real)
    root = np.sqrt(max(beta * beta - 1.0, 0.0))
    return {
        "beta": beta,
        "residual": float(resid),
        "eigenvalues": ev.tolist(),
        "lambda_plus": float(beta + root),
        "lambda_minus": float(beta - root),
        "operator_norm": operator_norm(space, n2, T),
    }
