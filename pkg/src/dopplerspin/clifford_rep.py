"""Gamma-matrix representations of Cl(p, q) and their spinor metrics.

Generators are ordered by ``metric_signs``; by default the ``p`` positive
directions come first.  All entries are in {0, +-1, +-i}, so the algebraic
identities hold exactly in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

CLIFFORD_TOL = 1e-12

_S1 = np.array([[0, 1], [1, 0]], dtype=complex)
_S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_S3 = np.array([[1, 0], [0, -1]], dtype=complex)


class CliffordError(ValueError):
    """Invalid signature, blade or representation."""


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise CliffordError(f"negative signature entries ({self.p}, {self.q})")
        if (self.p + self.q) % 2:
            raise CliffordError(
                f"even dimension only: p + q = {self.p + self.q} is odd")
        if self.p + self.q < 2:
            raise CliffordError("dimension p + q must be at least 2")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def dim_spinor(self) -> int:
        return 2 ** (self.n // 2)

    def default_signs(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q


@dataclass(frozen=True)
class GammaRep:
    sig: Signature
    gammas: tuple[np.ndarray, ...]
    metric_signs: tuple[int, ...]

    @property
    def dim_spinor(self) -> int:
        return self.gammas[0].shape[0]

    @property
    def n(self) -> int:
        return len(self.gammas)

    @property
    def metric(self) -> np.ndarray:
        return np.diag(np.array(self.metric_signs, dtype=float))

    def vector(self, v: Sequence[float]) -> np.ndarray:
        """Clifford action of the vector with frame components ``v``."""
        v = np.asarray(v)
        if v.shape != (self.n,):
            raise CliffordError(f"vector of length {self.n} expected, got {v.shape}")
        return np.tensordot(v, np.stack(self.gammas), axes=1)


@dataclass(frozen=True)
class SpinorMetric:
    H: np.ndarray
    candidate: str = field(default="")
    r_phase: int = 0


def euclidean_gammas(n: int) -> list[np.ndarray]:
    """Hermitian, pairwise anticommuting matrices squaring to one (n even)."""
    if n < 2 or n % 2:
        raise CliffordError(f"even dimension only: got n = {n}")
    gam = [_S1, _S2]
    while len(gam) < n:
        eye = np.eye(gam[0].shape[0], dtype=complex)
        gam = [np.kron(_S1, g) for g in gam] + [np.kron(_S2, eye), np.kron(_S3, eye)]
    return gam


def build_gamma_rep(sig: Signature, metric_signs: Sequence[int] | None = None) -> GammaRep:
    """Gamma matrices with {g_mu, g_nu} = 2 eta_mu delta_mu_nu.

    Positive directions get Hermitian generators, negative directions
    anti-Hermitian ones (a Euclidean generator times i).
    """
    if metric_signs is None:
        signs = sig.default_signs()
    else:
        signs = tuple(int(s) for s in metric_signs)
        if any(s not in (1, -1) for s in signs):
            raise CliffordError("metric signs must be +1 or -1")
        if (signs.count(1), signs.count(-1)) != (sig.p, sig.q):
            raise CliffordError(f"metric signs {signs} do not match signature {sig}")
    gam = euclidean_gammas(sig.n)
    gammas = tuple(g if s > 0 else 1j * g for g, s in zip(gam, signs))
    for g in gammas:
        g.setflags(write=False)
    return GammaRep(sig=sig, gammas=gammas, metric_signs=signs)


def dirac_rep() -> GammaRep:
    """Standard Dirac representation of Cl(1, 3): gamma_0 = diag(1, 1, -1, -1)."""
    z = np.zeros((2, 2), dtype=complex)
    g0 = np.diag([1, 1, -1, -1]).astype(complex)
    gs = [np.block([[z, s], [-s, z]]) for s in (_S1, _S2, _S3)]
    gammas = tuple([g0] + gs)
    for g in gammas:
        g.setflags(write=False)
    return GammaRep(sig=Signature(1, 3), gammas=gammas, metric_signs=(1, -1, -1, -1))


def multivector_action(rep: GammaRep, blade: Sequence[int], scale: complex = 1.0) -> np.ndarray:
    """``scale * gamma_{i1} ... gamma_{ik}`` for a strictly increasing blade."""
    blade = list(blade)
    if any(b < 0 or b >= rep.n for b in blade):
        raise CliffordError(f"blade index out of range in {blade}")
    if any(a >= b for a, b in zip(blade, blade[1:])):
        raise CliffordError(f"blade indices must be strictly increasing: {blade}")
    eye = np.eye(rep.dim_spinor, dtype=complex)
    return scale * reduce(np.matmul, [rep.gammas[i] for i in blade], eye)


def clifford_residual(rep: GammaRep) -> float:
    """max ||{g_mu, g_nu} - 2 eta_mu_nu I|| over all pairs (spectral norm)."""
    eye = np.eye(rep.dim_spinor)
    worst = 0.0
    for mu, gm in enumerate(rep.gammas):
        for nu in range(mu, rep.n):
            gn = rep.gammas[nu]
            target = 2.0 * rep.metric_signs[mu] * eye if mu == nu else 0.0
            worst = max(worst, np.linalg.norm(gm @ gn + gn @ gm - target, 2))
    return float(worst)


def hermiticity_residual(rep: GammaRep) -> float:
    """Deviation from gamma^dagger = eta_mu gamma."""
    return float(max(np.linalg.norm(g.conj().T - s * g, 2)
                     for g, s in zip(rep.gammas, rep.metric_signs)))


def spinor_metric_residual(rep: GammaRep, H: np.ndarray) -> tuple[float, float]:
    """(||H - H^dagger||, max_mu ||H g_mu - g_mu^dagger H||)."""
    herm = np.linalg.norm(H - H.conj().T, 2)
    inter = max(np.linalg.norm(H @ g - g.conj().T @ H, 2) for g in rep.gammas)
    return float(herm), float(inter)


def build_spinor_metric(rep: GammaRep, tol: float = CLIFFORD_TOL) -> SpinorMetric:
    """Search the Hermitian form making every Clifford vector self-adjoint.

    Candidates, in order: product of the positive generators, then of the
    negative ones, each times i^r for r = 0..3.
    """
    pos = [i for i, s in enumerate(rep.metric_signs) if s > 0]
    neg = [i for i, s in enumerate(rep.metric_signs) if s < 0]
    for name, blade in (("positive", pos), ("negative", neg)):
        base = multivector_action(rep, blade)
        for r in range(4):
            H = (1j ** r) * base
            herm, inter = spinor_metric_residual(rep, H)
            if herm <= tol and inter <= tol:
                if np.linalg.svd(H, compute_uv=False).min() <= tol:
                    continue
                H.setflags(write=False)
                return SpinorMetric(H=H, candidate=name, r_phase=r)
    raise CliffordError(f"no spinor metric candidate passed for {rep.sig}")
