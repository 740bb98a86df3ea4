"""Scalar precision bounds and the renormalized Holevo--SLD gap.

For a positive weight matrix W and information matrices (Q, D, J):

    C_S = Tr[W Q^{-1}]
    C_R = Tr[W Re(J^{-1})] + || sqrt(W) Im(J^{-1}) sqrt(W) ||_1
    C_Z = C_S + || sqrt(W) Q^{-1} D Q^{-1} sqrt(W) ||_1

The Holevo bound C_H is evaluated through the closed two-parameter qubit
formula (C_R branch or C_R + S correction), or directly as C_S for
asymptotically classical models and as C_Z for D-invariant ones.  The
renormalized gap dC = (C_H - C_S)/C_S never exceeds the quantumness R and
is invariant under rescaling of W, so weights are normalized to W[0,0] = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .infogeo import InfoMatrices, RldUndefinedError, quantumness
from .smallmat import inverse, psd_sqrt, trace_norm

BRANCH_TOL = 1e-12
CLASSICAL_TOL = 1e-9
D_INVARIANT_PROBE_TOL = 1e-8
W_SEARCH_LO = 1e-6
W_SEARCH_HI = 1e6
W_GRID_POINTS = 121
W_REL_TOL = 1e-10
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class UnsupportedModelError(ValueError):
    """Holevo evaluation outside the closed-form cases (n=3 non-D-invariant)."""


class ModelClass(str, Enum):
    CLASSICAL = "classical"
    D_INVARIANT = "d-invariant"
    GENERIC = "generic"


class Branch(str, Enum):
    CLASSICAL = "classical"
    D_INVARIANT = "d-invariant"
    RLD = "rld"
    S_CORRECTED = "s-corrected"


def validate_weight(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if np.abs(w - w.T).max() > 1e-12:
        raise ValueError("weight matrix must be symmetric")
    if np.linalg.eigvalsh(w).min() <= 0.0:
        raise ValueError("weight matrix must be positive definite")
    return w


def normalize_weight(w: np.ndarray) -> np.ndarray:
    """Rescale so that W[0,0] = 1 (the gap is invariant under W -> cW)."""
    w = validate_weight(w)
    return w / w[0, 0]


def diag_weight(values) -> np.ndarray:
    return normalize_weight(np.diag(np.asarray(values, dtype=float)))


def identity_weight(n: int) -> np.ndarray:
    return np.eye(n)


def bures_weight(info: InfoMatrices) -> np.ndarray:
    """W proportional to Q: parameters weighted by the Bures metric."""
    return normalize_weight(info.q)


def c_sld(w: np.ndarray, q: np.ndarray) -> float:
    """SLD Cramer-Rao scalar Tr[W Q^{-1}]."""
    return float(np.trace(validate_weight(w) @ inverse(q)).real)


def c_rld(w: np.ndarray, j: np.ndarray) -> float:
    """RLD Cramer-Rao scalar Tr[W Re(J^{-1})] + ||sqrt(W) Im(J^{-1}) sqrt(W)||_1."""
    if j is None:
        raise RldUndefinedError("J is not available for this model point")
    w = validate_weight(w)
    j_inv = inverse(j)
    sw = psd_sqrt(w)
    return float(np.trace(w @ j_inv.real).real) + trace_norm(sw @ j_inv.imag @ sw)


def c_z(w: np.ndarray, q: np.ndarray, d: np.ndarray) -> float:
    """C_S plus the incompatibility penalty ||sqrt(W) Q^{-1} D Q^{-1} sqrt(W)||_1."""
    w = validate_weight(w)
    q_inv = inverse(q)
    sw = psd_sqrt(w)
    return c_sld(w, q) + trace_norm(sw @ q_inv @ d @ q_inv @ sw)


def classify(
    info: InfoMatrices,
    tol: float = CLASSICAL_TOL,
    d_invariant_flag: bool | None = None,
) -> ModelClass:
    """Classical iff D vanishes; D-invariance by analytic flag, else numeric probe.

    The numeric probe checks C_Z == C_R on a small set of weights; it is only
    consulted when no analytic flag is available (near-pure states make the
    purely numeric test ill-conditioned).
    """
    if np.abs(info.d).max() <= tol:
        return ModelClass.CLASSICAL
    if d_invariant_flag is True:
        return ModelClass.D_INVARIANT
    if d_invariant_flag is False:
        return ModelClass.GENERIC
    if info.j is None:
        return ModelClass.GENERIC
    probes = [np.eye(info.n), np.diag(1.0 + np.arange(info.n)), np.diag(1.0 / (1.0 + np.arange(info.n)))]
    for w in probes:
        cz = c_z(w, info.q, info.d)
        cr = c_rld(w, info.j)
        if abs(cz - cr) > D_INVARIANT_PROBE_TOL * max(1.0, abs(cz)):
            return ModelClass.GENERIC
    return ModelClass.D_INVARIANT


def holevo(
    w: np.ndarray,
    info: InfoMatrices,
    classification: ModelClass,
) -> tuple[float, Branch]:
    """Holevo bound via the closed qubit cases; returns (value, branch taken)."""
    w = validate_weight(w)
    if classification is ModelClass.CLASSICAL:
        return c_sld(w, info.q), Branch.CLASSICAL
    if classification is ModelClass.D_INVARIANT:
        return c_z(w, info.q, info.d), Branch.D_INVARIANT
    if info.n != 2:
        raise UnsupportedModelError(
            "closed-form Holevo bound requires n=2 unless the model is D-invariant"
        )
    cs = c_sld(w, info.q)
    cz = c_z(w, info.q, info.d)
    cr = c_rld(w, info.j)
    if cz - cr < BRANCH_TOL:
        return cr, Branch.D_INVARIANT
    if cr >= 0.5 * (cz + cs):
        return cr, Branch.RLD
    s = (0.5 * (cz + cs) - cr) ** 2 / (cz - cr)
    return cr + s, Branch.S_CORRECTED


def delta_c(w: np.ndarray, info: InfoMatrices, classification: ModelClass) -> float:
    """Renormalized gap (C_H - C_S)/C_S for the given weight."""
    cs = c_sld(w, info.q)
    ch, _ = holevo(w, info, classification)
    return (ch - cs) / cs


@dataclass(frozen=True)
class BoundsReport:
    """All scalar figures of merit of one (model point, weight) pair."""

    c_s: float
    c_r: float
    c_z: float
    c_h: float
    delta_c: float
    r: float
    branch: Branch
    classification: ModelClass
    w_used: np.ndarray

    def validate(self) -> "BoundsReport":
        if self.c_h < max(self.c_s, self.c_r) - 1e-9:
            raise ValueError("Holevo bound fell below max(C_S, C_R)")
        if not (-1e-12 <= self.delta_c <= self.r + 1e-9):
            raise ValueError("gap is outside [0, R]")
        if self.c_h > (1.0 + self.r) * self.c_s + 1e-9:
            raise ValueError("Holevo bound exceeds (1+R) C_S")
        return self


def bounds_report(
    w: np.ndarray,
    info: InfoMatrices,
    classification: ModelClass,
) -> BoundsReport:
    """Evaluate every bound at one weight; C_R falls back to C_Z for pure

    D-invariant models, where the RLD operators do not exist but the RLD
    bound value survives the pure-state limit.
    """
    w = normalize_weight(w)
    cs = c_sld(w, info.q)
    cz = c_z(w, info.q, info.d)
    if info.j is not None:
        cr = c_rld(w, info.j)
    elif classification is ModelClass.D_INVARIANT:
        cr = cz
    else:
        raise RldUndefinedError("RLD bound undefined: no J and model is not D-invariant")
    ch, branch = holevo(w, info, classification)
    r = quantumness(info)
    return BoundsReport(
        c_s=cs,
        c_r=cr,
        c_z=cz,
        c_h=ch,
        delta_c=(ch - cs) / cs,
        r=r,
        branch=branch,
        classification=classification,
        w_used=w,
    ).validate()


@dataclass(frozen=True)
class DiagOptimum:
    """Result of the diagonal-weight gap maximization."""

    w_opt: float | tuple[float, float]
    delta_c_max: float
    flat: bool = False
    # analytic supremum when only eps-closeness is achievable (n=3 protocol)
    supremum: float | None = None


def _golden_max_log(f, lo: float, hi: float, rel_tol: float = W_REL_TOL):
    la, lb = math.log(lo), math.log(hi)
    c = lb - GOLDEN * (lb - la)
    d = la + GOLDEN * (lb - la)
    fc, fd = f(math.exp(c)), f(math.exp(d))
    while lb - la > rel_tol:
        if fc > fd:
            lb, d, fd = d, c, fc
            c = lb - GOLDEN * (lb - la)
            fc = f(math.exp(c))
        else:
            la, c, fc = c, d, fd
            d = la + GOLDEN * (lb - la)
            fd = f(math.exp(d))
    x = math.exp(0.5 * (la + lb))
    return x, f(x)


def _maximize_scalar(f, lo: float, hi: float):
    grid = np.logspace(math.log10(lo), math.log10(hi), W_GRID_POINTS)
    vals = np.array([f(x) for x in grid])
    if vals.max() - vals.min() < 1e-14:
        return None
    k = int(vals.argmax())
    return _golden_max_log(f, grid[max(0, k - 1)], grid[min(len(grid) - 1, k + 1)])


def optimize_delta_c_diag(
    info: InfoMatrices,
    classification: ModelClass,
    *,
    w_cap: float = 1e6,
) -> DiagOptimum:
    """Maximize the gap over diagonal weights.

    Two-parameter models: scalar search of W = diag(1, w) on a logarithmic
    grid refined by golden section.  Three-parameter D-invariant models: the
    supremum is approached only as w_phi -> infinity, so w_phi is pinned at
    ``w_cap`` and the search runs over w_theta; the analytic limit is
    reported in ``supremum`` without claiming attainment.
    """
    if info.n == 2:
        f = lambda w: delta_c(np.diag([1.0, w]), info, classification)
        res = _maximize_scalar(f, W_SEARCH_LO, W_SEARCH_HI)
        if res is None:
            return DiagOptimum(w_opt=1.0, delta_c_max=f(1.0), flat=True)
        w_opt, dc = res
        return DiagOptimum(w_opt=w_opt, delta_c_max=dc)
    if info.n == 3 and classification is ModelClass.D_INVARIANT:
        f = lambda wt: delta_c(np.diag([1.0, wt, w_cap]), info, classification)
        res = _maximize_scalar(f, W_SEARCH_LO, max(W_SEARCH_HI, w_cap * 1e4))
        if res is None:
            return DiagOptimum(w_opt=(1.0, w_cap), delta_c_max=f(1.0), flat=True)
        wt_opt, dc = res
        return DiagOptimum(w_opt=(wt_opt, w_cap), delta_c_max=dc, supremum=quantumness(info))
    raise UnsupportedModelError("diagonal optimization needs n=2, or n=3 D-invariant")


def sample_random_weight(rng, n: int) -> np.ndarray:
    """Random positive-definite weight W = A A^T + 1e-6 I, rescaled to W[0,0]=1."""
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    a = rng.standard_normal((n, n))
    w = a @ a.T + 1e-6 * np.eye(n)
    return w / w[0, 0]


def random_weight_sweep(
    info: InfoMatrices,
    classification: ModelClass,
    count: int,
    seed: int = 0,
) -> list[tuple[np.ndarray, float]]:
    """Gap values at ``count`` random weights; deterministic per seed."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        w = sample_random_weight(rng, info.n)
        out.append((w, delta_c(w, info, classification)))
    return out


def classification_for_model(model, info: InfoMatrices) -> ModelClass:
    """Classify using the model's analytic D-invariance flag."""
    return classify(info, d_invariant_flag=model.d_invariant)


def report_for_model(model, lam, ctrl=None, w: np.ndarray | None = None) -> BoundsReport:
    """Convenience: model point -> information matrices -> bounds report."""
    from .infogeo import model_information
    from .models import Model, get_model

    if not isinstance(model, Model):
        model = get_model(model)
    info = model_information(model, lam, ctrl)
    classification = classification_for_model(model, info)
    if w is None:
        w = identity_weight(info.n)
    return bounds_report(w, info, classification)
