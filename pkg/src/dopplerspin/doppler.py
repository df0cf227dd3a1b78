"""Maximal negative definite subspaces and the Doppler shift factor between them.

A splitting is stored through an explicit basis of its negative part ``V``;
the g-orthogonal symmetry ``s`` (-1 on V, +1 on its g-orthocomplement) and
the twisted positive metric ``g_s(u, v) = g(s u, v)`` are derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg as sla

from .clifford_rep import Signature

DEGENERACY_TOL = 1e-10
POLAR_TOL = 1e-8


class SplittingError(ValueError):
    """Candidate subspace is not maximal negative definite."""


class PolarError(ArithmeticError):
    """Polar decomposition failed its consistency checks."""


@dataclass(frozen=True, eq=False)
class MetricSpace:
    g: np.ndarray

    def __post_init__(self):
        g = np.array(self.g, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise SplittingError("metric must be a square matrix")
        if not np.allclose(g, g.T, atol=1e-12, rtol=0):
            raise SplittingError("metric must be symmetric")
        g = 0.5 * (g + g.T)
        ev = np.linalg.eigvalsh(g)
        if np.min(np.abs(ev)) <= DEGENERACY_TOL * max(1.0, np.max(np.abs(ev))):
            raise SplittingError("metric is degenerate")
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    @classmethod
    def diagonal(cls, signs) -> "MetricSpace":
        return cls(np.diag(np.asarray(signs, dtype=float)))

    @property
    def n(self) -> int:
        return self.g.shape[0]

    @cached_property
    def inertia(self) -> tuple[int, int]:
        ev = np.linalg.eigvalsh(self.g)
        return int(np.sum(ev > 0)), int(np.sum(ev < 0))

    @property
    def sig(self) -> Signature:
        return Signature(*self.inertia)

    def inner(self, u, v) -> float:
        return float(np.asarray(u) @ self.g @ np.asarray(v))


def _gram_schmidt(g: np.ndarray, vecs: np.ndarray, sign: int, tol: float) -> np.ndarray:
    """Orthonormalize columns w.r.t. ``sign * g`` with pivoting on the largest norm.

    Raises if the restricted form is not definite of the given sign.
    """
    remaining = [vecs[:, j].astype(float) for j in range(vecs.shape[1])]
    out: list[np.ndarray] = []
    scale = max(1.0, max((np.linalg.norm(v) for v in remaining), default=1.0))
    while remaining:
        for k, v in enumerate(remaining):
            for e in out:
                v = v - (sign * (e @ g @ v)) * e
            remaining[k] = v
        norms = [sign * (v @ g @ v) for v in remaining]
        j = int(np.argmax(norms))
        nrm = norms[j]
        if nrm <= tol * scale ** 2:
            if min(norms) < -tol * scale ** 2 or nrm < -tol * scale ** 2:
                raise SplittingError("restricted form is indefinite on the candidate span")
            raise SplittingError("candidate basis is degenerate (columns dependent or null)")
        out.append(remaining.pop(j) / np.sqrt(nrm))
    if not out:
        return np.zeros((g.shape[0], 0))
    return np.column_stack(out)


@dataclass(frozen=True, eq=False)
class Splitting:
    """V (negative definite, dim q) plus its g-orthocomplement (positive, dim p)."""

    ms: MetricSpace
    basis_V: np.ndarray
    basis_perp: np.ndarray

    @cached_property
    def s(self) -> np.ndarray:
        B = self.basis_V
        P = -B @ B.T @ self.ms.g
        return np.eye(self.ms.n) - 2.0 * P

    @cached_property
    def g_s(self) -> np.ndarray:
        G = self.ms.g @ self.s
        return 0.5 * (G + G.T)

    @cached_property
    def frame(self) -> np.ndarray:
        """Pseudo-orthonormal frame [V-perp | V]; also g_s-orthonormal."""
        return np.column_stack([self.basis_perp, self.basis_V])

    @cached_property
    def J(self) -> np.ndarray:
        """Frame Gram matrix diag(+1 (p times), -1 (q times))."""
        return np.diag([1.0] * self.basis_perp.shape[1] + [-1.0] * self.basis_V.shape[1])

    @cached_property
    def frame_inv(self) -> np.ndarray:
        """Exact inverse of the pseudo-orthonormal frame, J F^T g."""
        return self.J @ self.frame.T @ self.ms.g

    @cached_property
    def gs_sqrt(self) -> tuple[np.ndarray, np.ndarray]:
        """Symmetric square root of g_s and its inverse."""
        w, U = np.linalg.eigh(self.g_s)
        r = np.sqrt(w)
        return (U * r) @ U.T, (U / r) @ U.T

    def residuals(self) -> dict[str, float]:
        g, s, n = self.ms.g, self.s, self.ms.n
        return {
            "s_squared": float(np.linalg.norm(s @ s - np.eye(n), 2)),
            "s_isometry": float(np.linalg.norm(s.T @ g @ s - g, 2)),
            "s_on_V": float(np.linalg.norm(s @ self.basis_V + self.basis_V, 2))
            if self.basis_V.size else 0.0,
            "s_on_perp": float(np.linalg.norm(s @ self.basis_perp - self.basis_perp, 2))
            if self.basis_perp.size else 0.0,
            "g_s_min_eig": float(np.linalg.eigvalsh(self.g_s).min()),
        }


def make_splitting(ms: MetricSpace, candidate_basis, tol: float = DEGENERACY_TOL) -> Splitting:
    """Splitting whose negative part is the span of the candidate columns."""
    C = np.asarray(candidate_basis, dtype=float)
    if C.ndim == 1:
        C = C.reshape(-1, 1)
    if C.shape[0] != ms.n:
        raise SplittingError(f"basis has {C.shape[0]} rows, metric dimension is {ms.n}")
    p, q = ms.inertia
    if C.shape[1] != q:
        raise SplittingError(f"non-maximal subspace: dimension {C.shape[1]}, expected q = {q}")
    B = _gram_schmidt(ms.g, C, -1, tol)
    if q:
        comp = sla.null_space(B.T @ ms.g)
    else:
        comp = np.eye(ms.n)
    P = _gram_schmidt(ms.g, comp, +1, tol)
    if P.shape[1] != p:
        raise SplittingError("orthocomplement has wrong dimension")
    B.setflags(write=False)
    P.setflags(write=False)
    return Splitting(ms=ms, basis_V=B, basis_perp=P)


def splitting_from_perp(ms: MetricSpace, perp_basis, tol: float = DEGENERACY_TOL) -> Splitting:
    """Splitting given by a basis of its positive part V-perp (e.g. a unit timelike vector)."""
    C = np.asarray(perp_basis, dtype=float)
    if C.ndim == 1:
        C = C.reshape(-1, 1)
    p, q = ms.inertia
    if C.shape != (ms.n, p):
        raise SplittingError(f"positive part needs {p} vectors of length {ms.n}")
    P = _gram_schmidt(ms.g, C, +1, tol)
    V = sla.null_space(P.T @ ms.g) if p else np.eye(ms.n)
    return make_splitting(ms, V, tol)


def reference_splitting(ms: MetricSpace) -> Splitting:
    """Negative eigenvectors of g span the reference V."""
    w, U = np.linalg.eigh(ms.g)
    return make_splitting(ms, U[:, w < 0])


def random_so_generator(ms: MetricSpace, rng: np.random.Generator, scale: float = 1.5) -> np.ndarray:
    """Random element of so(g): g^{-1} W with W antisymmetric, entries U[-scale, scale]."""
    n = ms.n
    W = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    W[iu] = rng.uniform(-scale, scale, size=len(iu[0]))
    W = W - W.T
    return np.linalg.solve(ms.g, W)


def random_splitting(ms: MetricSpace, rng: np.random.Generator, scale: float = 1.5,
                     reference: Splitting | None = None) -> Splitting:
    ref = reference_splitting(ms) if reference is None else reference
    A = sla.expm(random_so_generator(ms, rng, scale))
    return make_splitting(ms, A @ ref.basis_V)


def connecting_map(ms: MetricSpace, split1: Splitting, split2: Splitting) -> np.ndarray:
    """Some Lambda in SO(g) with Lambda V1 = V2."""
    F2 = split2.frame.copy()
    if np.linalg.det(split1.frame) * np.linalg.det(F2) < 0:
        # flip one positive-part frame vector (or a V vector if p = 0)
        F2[:, 0] = -F2[:, 0]
    return F2 @ split1.frame_inv


def g_adjoint(split: Splitting, A: np.ndarray) -> np.ndarray:
    """Adjoint with respect to the twisted metric g_s: A* = s A^x s, A^x = g^{-1} A^T g."""
    G = split.g_s
    return np.linalg.solve(G, A.T @ G)


def operator_norm_gs(split: Splitting, A: np.ndarray) -> float:
    """Operator norm of A with respect to the positive metric g_s.

    The splitting frame is g_s-orthonormal, so this is the spectral norm of
    A written in that frame.
    """
    return float(np.linalg.norm(split.frame_inv @ A @ split.frame, 2))


@dataclass(frozen=True, eq=False)
class PolarParts:
    Lam: np.ndarray
    O: np.ndarray
    L: np.ndarray
    spectrum_L: np.ndarray
    log_L: np.ndarray
    residuals: dict


def _sym(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def polar_decompose(ms: MetricSpace, split1: Splitting, split2: Splitting, Lam: np.ndarray,
                    tol: float = POLAR_TOL) -> PolarParts:
    """Lambda = O L, L the positive g_2-self-adjoint square root of s_2 s_1.

    Works in the frame of split2, where g_2 is the identity and s_2 s_1
    becomes Z Z^T for the cross Gram matrix Z = F_2^T g F_1.  An SVD of Z
    gives the positive root without squaring condition numbers.
    """
    n = ms.n
    F2, F2inv = split2.frame, split2.frame_inv
    Z = F2.T @ ms.g @ split1.frame
    U, sv, _ = np.linalg.svd(Z)
    if sv.min() <= 0:
        raise PolarError("s2 s1 is not positive with respect to g_2")
    L = F2 @ ((U * sv) @ U.T) @ F2inv
    Linv = F2 @ ((U / sv) @ U.T) @ F2inv
    log_L = F2 @ ((U * np.log(sv)) @ U.T) @ F2inv
    O = Lam @ Linv
    g = ms.g
    M = split2.s @ split1.s
    scale = max(1.0, float(sv.max()) ** 2)
    lam_star = F2 @ (F2inv @ Lam @ F2).T @ F2inv
    logs = np.log(np.sort(sv))
    res = {
        "lambda_eq_OL": float(np.linalg.norm(Lam - O @ L, 2) / scale),
        "lambda_in_O_g": float(np.linalg.norm(Lam.T @ g @ Lam - g, 2) / scale),
        "det_lambda": float(abs(np.linalg.det(Lam) - 1.0) / scale ** n),
        "lambda_star_lambda": float(np.linalg.norm(lam_star @ Lam - M, 2) / scale),
        "L_in_O_g": float(np.linalg.norm(L.T @ g @ L - g, 2) / scale),
        "O_in_O_g2": float(np.linalg.norm((F2inv @ O @ F2).T @ (F2inv @ O @ F2) - np.eye(n), 2) / scale),
        "O_in_O_g": float(np.linalg.norm(O.T @ g @ O - g, 2) / scale),
        "L_maps_V1_to_V2": _subspace_residual(L @ split1.basis_V, split2) / scale,
        "O_preserves_V2": _subspace_residual(O @ split2.basis_V, split2) / scale,
        "spectrum_inversion": float(np.max(np.abs(logs + logs[::-1]))),
    }
    bad = {k: v for k, v in res.items() if v > tol}
    if bad:
        raise PolarError(f"polar decomposition residuals above {tol}: {bad}")
    return PolarParts(Lam=Lam, O=O, L=L, spectrum_L=np.sort(sv)[::-1], log_L=log_L, residuals=res)


def _subspace_residual(W: np.ndarray, split: Splitting) -> float:
    """Size of the component of span(W) outside V of the splitting."""
    if W.size == 0:
        return 0.0
    # components along V-perp vanish iff g(perp, W) = 0
    return float(np.linalg.norm(split.basis_perp.T @ split.ms.g @ W, 2)) if split.basis_perp.size else 0.0


@dataclass(frozen=True, eq=False)
class DSFResult:
    dsf: float
    rapidity: float
    polar: PolarParts
    norm_lambda: float


def dsf(ms: MetricSpace, split1: Splitting, split2: Splitting, Lam: np.ndarray | None = None) -> DSFResult:
    """Doppler shift factor: spectral radius of the canonical representative L."""
    if Lam is None:
        Lam = connecting_map(ms, split1, split2)
    polar = polar_decompose(ms, split1, split2, Lam)
    r = float(polar.spectrum_L[0])
    return DSFResult(dsf=r, rapidity=float(np.log(r)), polar=polar,
                     norm_lambda=operator_norm_gs(split2, Lam))


def dsf_lorentzian(g_v1v2: float) -> float:
    """g + sqrt(g^2 - 1), the Doppler factor of two unit co-oriented timelike vectors."""
    g = float(g_v1v2)
    if not g >= 1.0:
        raise ValueError(f"g(v1, v2) must be >= 1, got {g}")
    return g + np.sqrt((g - 1.0) * (g + 1.0))


def random_stabilizer(split: Splitting, rng: np.random.Generator) -> np.ndarray:
    """Random element of SO(g) that preserves V and V-perp (identity component)."""
    p, q = split.basis_perp.shape[1], split.basis_V.shape[1]
    blocks = []
    for k in (p, q):
        if k == 0:
            continue
        W = rng.uniform(-np.pi, np.pi, size=(k, k))
        blocks.append(sla.expm(W - W.T))
    R = sla.block_diag(*blocks)
    return split.frame @ R @ split.frame_inv


def qboost(p: int, q: int, rapidities) -> tuple[MetricSpace, Splitting, Splitting, np.ndarray]:
    """The q-boost configuration.

    Metric diag(1,-1,...,1,-1,1,...,1) with (1,-1) repeated q times, V2 the
    span of the negative basis vectors (so g_2 is the identity) and
    V1 = Lambda^{-1} V2 for Lambda the block-diagonal boost.
    """
    x = np.asarray(rapidities, dtype=float)
    if q > p or len(x) != q:
        raise ValueError("q-boost needs q <= p and q rapidities")
    signs = [1, -1] * q + [1] * (p - q)
    ms = MetricSpace.diagonal(signs)
    blocks = [np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]]) for t in x]
    blocks.append(np.eye(p - q))
    Lam = sla.block_diag(*blocks)
    neg = np.eye(ms.n)[:, [2 * k + 1 for k in range(q)]]
    split2 = make_splitting(ms, neg)
    split1 = make_splitting(ms, np.linalg.solve(Lam, neg))
    return ms, split1, split2, Lam
