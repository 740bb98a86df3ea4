"""Information geometry of qubit statistical models.

From a density matrix rho and its parameter derivatives d_mu rho this module
builds

* the symmetric logarithmic derivatives L_mu solving
  d_mu rho = (L_mu rho + rho L_mu)/2,
* the right logarithmic derivatives R_mu solving d_mu rho = rho R_mu
  (full-rank states only),

and from them the three information matrices

    Q_{mu nu} = Tr[rho {L_mu, L_nu}] / 2        (real symmetric, PSD)
    D_{mu nu} = -(i/2) Tr[rho [L_mu, L_nu]]     (real antisymmetric)
    J_{mu nu} = Tr[rho R_nu R_mu^dag]           (Hermitian)

plus the quantumness measure R = || i Q^{-1} D ||_inf, which lies in [0, 1]
and equals sqrt(det D / det Q) for two-parameter models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .smallmat import SingularMatrixError, herm_eig, inverse, largest_abs_eig

SLD_PAIR_FLOOR = 1e-12
RLD_MIN_EIG = 1e-10
PURE_BLOCK_TOL = 1e-8


class PureLimitError(ValueError):
    """rho is rank deficient with derivative weight in its kernel block.

    The Lyapunov construction of the SLDs degenerates here; rank-one models
    should go through the state-vector overlap path instead.
    """


class RldUndefinedError(ValueError):
    """RLD operators require a full-rank density matrix."""


class SingularModelError(ValueError):
    """The SLD information matrix is singular at this point."""


@dataclass(frozen=True)
class InfoMatrices:
    """Information matrices of a model at one parameter point."""

    q: np.ndarray
    d: np.ndarray
    j: np.ndarray | None = None
    names: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.q.shape[0]

    def validate(self) -> "InfoMatrices":
        if np.abs(self.q - self.q.T).max() > 1e-10:
            raise ValueError("Q is not symmetric")
        if np.abs(self.d + self.d.T).max() > 1e-10:
            raise ValueError("D is not antisymmetric")
        if np.linalg.eigvalsh(self.q).min() < -1e-10:
            raise ValueError("Q is not PSD")
        if self.j is not None and np.abs(self.j - self.j.conj().T).max() > 1e-10:
            raise ValueError("J is not Hermitian")
        return self


def sld_operators(rho: np.ndarray, drhos) -> list[np.ndarray]:
    """Symmetric logarithmic derivatives, one Hermitian operator per parameter.

    In the eigenbasis of rho the entries are L_{ij} = 2 (d rho)_{ij} / (p_i + p_j);
    eigenvalue pairs below the floor are skipped, which is only legitimate when
    the matching derivative block vanishes (pure models), otherwise PureLimitError.
    """
    rho = np.asarray(rho, dtype=complex)
    p, v = herm_eig(rho)
    out = []
    for drho in drhos:
        dr = v.conj().T @ np.asarray(drho, dtype=complex) @ v
        L = np.zeros_like(dr)
        for i in range(rho.shape[0]):
            for j in range(rho.shape[0]):
                s = p[i] + p[j]
                if s > SLD_PAIR_FLOOR:
                    L[i, j] = 2 * dr[i, j] / s
                elif abs(dr[i, j]) > PURE_BLOCK_TOL:
                    raise PureLimitError(
                        "rho is rank deficient with a nonzero derivative component "
                        "in its kernel block; use the pure-state path"
                    )
        out.append(v @ L @ v.conj().T)
    return out


def rld_operators(rho: np.ndarray, drhos) -> list[np.ndarray]:
    """Right logarithmic derivatives rho^{-1} d_mu rho (full-rank rho only)."""
    rho = np.asarray(rho, dtype=complex)
    if np.linalg.eigvalsh(rho).min() <= RLD_MIN_EIG:
        raise RldUndefinedError("RLD operators are not defined for rank-deficient states")
    rho_inv = inverse(rho)
    return [rho_inv @ np.asarray(d, dtype=complex) for d in drhos]


def info_matrices(
    rho: np.ndarray,
    slds,
    rlds=None,
    names: tuple[str, ...] = (),
) -> InfoMatrices:
    """Assemble Q, D (and J when RLDs are given) from the logarithmic derivatives."""
    rho = np.asarray(rho, dtype=complex)
    n = len(slds)
    q = np.zeros((n, n))
    d = np.zeros((n, n))
    for m in range(n):
        for v in range(m, n):
            prod = slds[m] @ slds[v]
            prod_t = slds[v] @ slds[m]
            q[m, v] = q[v, m] = 0.5 * np.trace(rho @ (prod + prod_t)).real
            dd = (-0.5j * np.trace(rho @ (prod - prod_t))).real
            d[m, v], d[v, m] = dd, -dd
    j = None
    if rlds is not None:
        j = np.empty((n, n), dtype=complex)
        for m in range(n):
            for v in range(n):
                j[m, v] = np.trace(rho @ rlds[v] @ rlds[m].conj().T)
        j = 0.5 * (j + j.conj().T)
    return InfoMatrices(q=q, d=d, j=j, names=tuple(names)).validate()


def pure_state_matrices(psi: np.ndarray, dpsis, names: tuple[str, ...] = ()) -> InfoMatrices:
    """Q and D for a rank-one model from state-vector overlaps.

    Q_{mu nu} = 4 Re(<d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi>)
    D_{mu nu} = 4 Im(<d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi>)
    """
    psi = np.asarray(psi, dtype=complex)
    n = len(dpsis)
    q = np.zeros((n, n))
    d = np.zeros((n, n))
    a = [np.vdot(dp, psi) for dp in dpsis]
    for m in range(n):
        for v in range(n):
            g = np.vdot(dpsis[m], dpsis[v]) - a[m] * np.conj(a[v])
            q[m, v] = 4 * g.real
            d[m, v] = 4 * g.imag
    return InfoMatrices(q=q, d=d, j=None, names=tuple(names)).validate()


def quantumness(info: InfoMatrices) -> float:
    """R = largest |eigenvalue| of i Q^{-1} D, clipped to [0, 1]."""
    try:
        q_inv = inverse(info.q)
    except SingularMatrixError as exc:
        raise SingularModelError(
            f"SLD information matrix is singular (|det Q| = {exc.det_magnitude:.3e})"
        ) from exc
    r = largest_abs_eig(1j * q_inv @ info.d)
    if r > 1.0 + 1e-9:
        raise ValueError(f"quantumness {r:.12g} exceeds 1 beyond tolerance")
    return float(min(max(r, 0.0), 1.0))


def quantumness_det_ratio(info: InfoMatrices) -> float:
    """Two-parameter closed form sqrt(det D / det Q)."""
    if info.n != 2:
        raise ValueError("determinant-ratio form only applies to two-parameter models")
    det_q = np.linalg.det(info.q)
    if abs(det_q) < 1e-300:
        raise SingularModelError("SLD information matrix is singular")
    return float(np.sqrt(max(np.linalg.det(info.d), 0.0) / det_q))


def reparametrize(info: InfoMatrices, b: np.ndarray, names: tuple[str, ...] = ()) -> InfoMatrices:
    """Transport the matrices to new coordinates: Q' = B Q B^T, likewise D and J."""
    b = np.asarray(b, dtype=float)
    if abs(np.linalg.det(b)) <= 1e-12:
        raise SingularMatrixError(abs(np.linalg.det(b)))
    q = b @ info.q @ b.T
    d = b @ info.d @ b.T
    j = None if info.j is None else b @ info.j @ b.T
    return InfoMatrices(q=q, d=0.5 * (d - d.T), j=j, names=tuple(names)).validate()


def model_information(model, lam, ctrl=None, *, want_rld: bool = True) -> InfoMatrices:
    """Evaluate a model and assemble its information matrices in one call.

    J is omitted (None) when the state is rank deficient.
    """
    from .models import Model, get_model

    if not isinstance(model, Model):
        model = get_model(model)
    rho, drhos = model.rho_and_derivs(lam, ctrl)
    slds = sld_operators(rho, drhos)
    rlds = None
    if want_rld:
        try:
            rlds = rld_operators(rho, drhos)
        except RldUndefinedError:
            rlds = None
    return info_matrices(rho, slds, rlds, names=model.param_names)
