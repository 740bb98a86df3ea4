"""Single-qubit quantum statistical models and their parameter derivatives.

Every model provides the density matrix rho(lambda) and the analytic
derivatives d_mu rho as closed forms.  Two independent numerical routes
are available for cross-checking them:

* ``finite_diff_derivatives`` -- central differences in the parameters,
  optionally with one Richardson halving;
* ``lindblad_integrate`` -- fixed-step 4th-order integration of
  d rho/dt = -i[H, rho] + sum_k rate_k (L rho L^dag - {L^dag L, rho}/2),
  used by the dynamical models.

Dynamical models follow the master-equation conventions: H = (omega/2) sigma_z
(coherences rotate as exp(-i omega t)) and amplitude damping decays toward
|0><0| (excited population exp(-gamma t) sin^2(theta/2)).

Parameter orderings:

==========================  =========================  ==================
model                       parameters                 controls used
==========================  =========================  ==================
pure-tomography             (theta, phi)               --
mixed-tomography            (r, theta, phi)            --
dephasing                   (omega, gamma)             theta, phi, t
amplitude-damping           (omega, gamma)             theta, phi, t
depolarizing-frequency      (omega, gamma)             theta, phi, t
ad-plus-dephasing           (gamma_ad, gamma_deph)     theta, phi, t
==========================  =========================  ==================
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# qubit lowering operator |1> -> |0> (decay direction of amplitude damping)
LOWERING = np.array([[0, 1], [0, 0]], dtype=complex)

DOMAIN_MARGIN = 1e-6

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_FLOOR = -1e-10
DERIV_HERM_TOL = 1e-8
DERIV_TRACE_TOL = 1e-8


class DomainError(ValueError):
    """Model evaluated outside its regular parameter domain."""

    def __init__(self, parameter: str, message: str):
        self.parameter = parameter
        super().__init__(message)


class IntegrationError(RuntimeError):
    """Lindblad integration failed a consistency check (trace drift)."""


@dataclass(frozen=True)
class ModelControls:
    """Initial-state angles and evolution time shared by the dynamical models."""

    theta: float = math.pi / 2
    phi: float = 0.0
    t: float = 1.0


def validate_density(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
        raise ValueError("density matrix trace differs from 1")
    if np.linalg.eigvalsh(rho).min() < EIG_FLOOR:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def validate_derivatives(drhos) -> list[np.ndarray]:
    out = []
    for k, d in enumerate(drhos):
        d = np.asarray(d, dtype=complex)
        if np.abs(d - d.conj().T).max() > DERIV_HERM_TOL:
            raise ValueError(f"derivative {k} is not Hermitian")
        if abs(np.trace(d)) > DERIV_TRACE_TOL:
            raise ValueError(f"derivative {k} is not traceless")
        out.append(d)
    return out


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Bloch vector (Tr[rho sigma_x], Tr[rho sigma_y], Tr[rho sigma_z])."""
    rho = np.asarray(rho, dtype=complex)
    return np.array([np.trace(rho @ s).real for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)])


def density_from_bloch(gamma_vec) -> np.ndarray:
    """Density matrix (1 + gamma . sigma)/2; requires |gamma| <= 1."""
    g = np.asarray(gamma_vec, dtype=float)
    r = np.linalg.norm(g)
    if r > 1.0 + 1e-10:
        raise DomainError("bloch", f"Bloch vector length {r:.6g} exceeds 1")
    return 0.5 * (np.eye(2, dtype=complex) + g[0] * SIGMA_X + g[1] * SIGMA_Y + g[2] * SIGMA_Z)


def _check_open_interval(name: str, value: float, lo: float, hi: float) -> None:
    if not (lo + DOMAIN_MARGIN < value < hi - DOMAIN_MARGIN):
        raise DomainError(
            name,
            f"{name} must lie in ({lo + DOMAIN_MARGIN:g}, {hi - DOMAIN_MARGIN:g}); got {value:g}",
        )


def _check_nonnegative(name: str, value: float) -> None:
    if value < 0.0:
        raise DomainError(name, f"{name} must be >= 0; got {value:g}")


class Model:
    """Base class: a named family rho(lambda) with analytic derivatives."""

    name: str = ""
    param_names: tuple[str, ...] = ()
    domain_note: str = ""
    # True/False when the classification is known analytically, None otherwise
    d_invariant: bool | None = None
    classification_hint: str = "generic"
    uses_controls: bool = True

    @property
    def n_params(self) -> int:
        return len(self.param_names)

    def check_domain(self, lam, ctrl: ModelControls) -> None:
        raise NotImplementedError

    def _rho_derivs(self, lam, ctrl: ModelControls):
        raise NotImplementedError

    def rho_and_derivs(self, lam, ctrl: ModelControls | None = None):
        """Density matrix and analytic derivative list at parameter point lam."""
        ctrl = ctrl or ModelControls()
        lam = tuple(float(x) for x in lam)
        if len(lam) != self.n_params:
            raise DomainError(
                "lambda", f"{self.name} takes {self.n_params} parameters {self.param_names}"
            )
        self.check_domain(lam, ctrl)
        rho, drhos = self._rho_derivs(lam, ctrl)
        return validate_density(rho), validate_derivatives(drhos)

    def rho(self, lam, ctrl: ModelControls | None = None) -> np.ndarray:
        return self.rho_and_derivs(lam, ctrl)[0]

    # dynamical models override these two
    def lindblad_parts(self, lam):
        """Hamiltonian coefficient triple and jump (operator, rate) list, or None."""
        return None

    def initial_state(self, ctrl: ModelControls) -> np.ndarray:
        psi = pure_state(ctrl.theta, ctrl.phi)
        return np.outer(psi, psi.conj())

    def rho_lindblad(self, lam, ctrl: ModelControls | None = None, steps: int | None = None):
        """Density matrix from the Lindblad integrator (oracle route)."""
        ctrl = ctrl or ModelControls()
        parts = self.lindblad_parts(tuple(float(x) for x in lam))
        if parts is None:
            raise ValueError(f"{self.name} has no master-equation representation")
        h_coeffs, jumps = parts
        return lindblad_integrate(h_coeffs, jumps, self.initial_state(ctrl), ctrl.t, steps)


def pure_state(theta: float, phi: float) -> np.ndarray:
    """|psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)], dtype=complex)


class PureTomography(Model):
    name = "pure-tomography"
    param_names = ("theta", "phi")
    domain_note = "theta in (0, pi)"
    d_invariant = True
    classification_hint = "d-invariant"
    uses_controls = False

    def check_domain(self, lam, ctrl):
        _check_open_interval("theta", lam[0], 0.0, math.pi)

    def state_and_derivs(self, lam):
        """State vector and its parameter derivatives (for the pure-state path)."""
        theta, phi = lam
        c, s = math.cos(theta / 2), math.sin(theta / 2)
        ph = np.exp(1j * phi)
        psi = np.array([c, ph * s], dtype=complex)
        dtheta = np.array([-s / 2, ph * c / 2], dtype=complex)
        dphi = np.array([0.0, 1j * ph * s], dtype=complex)
        return psi, [dtheta, dphi]

    def _rho_derivs(self, lam, ctrl):
        psi, dpsis = self.state_and_derivs(lam)
        rho = np.outer(psi, psi.conj())
        drhos = [np.outer(d, psi.conj()) + np.outer(psi, d.conj()) for d in dpsis]
        return rho, drhos


class MixedTomography(Model):
    name = "mixed-tomography"
    param_names = ("r", "theta", "phi")
    domain_note = "r in (0, 1), theta in (0, pi)"
    d_invariant = True
    classification_hint = "d-invariant"
    uses_controls = False

    def check_domain(self, lam, ctrl):
        _check_open_interval("r", lam[0], 0.0, 1.0)
        _check_open_interval("theta", lam[1], 0.0, math.pi)

    def _rho_derivs(self, lam, ctrl):
        r, theta, phi = lam
        st, ct = math.sin(theta), math.cos(theta)
        cp, sp = math.cos(phi), math.sin(phi)
        n_hat = np.array([st * cp, st * sp, ct])
        d_theta = np.array([ct * cp, ct * sp, -st])
        d_phi = np.array([-st * sp, st * cp, 0.0])
        rho = density_from_bloch(r * n_hat)

        def half_sigma(v):
            return 0.5 * (v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z)

        return rho, [half_sigma(n_hat), half_sigma(r * d_theta), half_sigma(r * d_phi)]


class Dephasing(Model):
    """Rotation about z at rate omega with dephasing at rate gamma."""

    name = "dephasing"
    param_names = ("omega", "gamma")
    domain_note = "gamma >= 0 (> 0 for RLD), initial theta in (0, pi)"
    d_invariant = False
    classification_hint = "generic"

    def check_domain(self, lam, ctrl):
        _check_nonnegative("gamma", lam[1])
        _check_open_interval("theta", ctrl.theta, 0.0, math.pi)
        _check_nonnegative("t", ctrl.t)

    def _rho_derivs(self, lam, ctrl):
        omega, gamma = lam
        th, ph, t = ctrl.theta, ctrl.phi, ctrl.t
        off = 0.5 * math.sin(th) * np.exp(-(gamma + 1j * omega) * t - 1j * ph)
        rho = np.array([[math.cos(th / 2) ** 2, off], [np.conj(off), math.sin(th / 2) ** 2]])

        def off_only(val):
            return np.array([[0.0, val], [np.conj(val), 0.0]])

        return rho, [off_only(-1j * t * off), off_only(-t * off)]

    def lindblad_parts(self, lam):
        omega, gamma = lam
        return (0.0, 0.0, omega), [(SIGMA_Z, gamma / 2)]


class AmplitudeDamping(Model):
    """Rotation about z at rate omega with amplitude damping at rate gamma."""

    name = "amplitude-damping"
    param_names = ("omega", "gamma")
    domain_note = "gamma >= 0 (> 0 for RLD), initial theta in (0, pi)"
    d_invariant = False
    classification_hint = "generic"

    def check_domain(self, lam, ctrl):
        _check_nonnegative("gamma", lam[1])
        _check_open_interval("theta", ctrl.theta, 0.0, math.pi)
        _check_nonnegative("t", ctrl.t)

    def _rho_derivs(self, lam, ctrl):
        omega, gamma = lam
        th, ph, t = ctrl.theta, ctrl.phi, ctrl.t
        p1 = math.exp(-gamma * t) * math.sin(th / 2) ** 2
        off = 0.5 * math.sin(th) * np.exp(-(gamma / 2 + 1j * omega) * t - 1j * ph)
        rho = np.array([[1.0 - p1, off], [np.conj(off), p1]])
        d_om = np.array([[0.0, -1j * t * off], [np.conj(-1j * t * off), 0.0]])
        d_g = np.array([[t * p1, -0.5 * t * off], [np.conj(-0.5 * t * off), -t * p1]])
        return rho, [d_om, d_g]

    def lindblad_parts(self, lam):
        omega, gamma = lam
        return (0.0, 0.0, omega), [(LOWERING, gamma)]


class DepolarizingFrequency(Model):
    """Rotation about z at rate omega with isotropic depolarizing at rate gamma."""

    name = "depolarizing-frequency"
    param_names = ("omega", "gamma")
    domain_note = "gamma >= 0 (> 0 for full rank)"
    d_invariant = None
    classification_hint = "classical"

    def check_domain(self, lam, ctrl):
        _check_nonnegative("gamma", lam[1])
        _check_nonnegative("t", ctrl.t)

    def _rho_derivs(self, lam, ctrl):
        omega, gamma = lam
        th, ph, t = ctrl.theta, ctrl.phi, ctrl.t
        g0 = np.array([math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th)])
        # all Bloch components shrink at rate 2 gamma / 3 while the xy plane
        # rotates at rate omega
        shrink = math.exp(-2 * gamma * t / 3)
        c, s = math.cos(omega * t), math.sin(omega * t)
        g = shrink * np.array([c * g0[0] - s * g0[1], s * g0[0] + c * g0[1], g0[2]])
        dg_om = t * np.array([-g[1], g[0], 0.0])
        dg_gam = -(2 * t / 3) * g

        def half_sigma(v):
            return 0.5 * (v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z)

        return density_from_bloch(g), [half_sigma(dg_om), half_sigma(dg_gam)]

    def lindblad_parts(self, lam):
        omega, gamma = lam
        return (0.0, 0.0, omega), [(SIGMA_X, gamma / 6), (SIGMA_Y, gamma / 6), (SIGMA_Z, gamma / 6)]


class AdPlusDephasing(Model):
    """Amplitude damping at rate gamma_ad together with dephasing at rate gamma_deph."""

    name = "ad-plus-dephasing"
    param_names = ("gamma_ad", "gamma_deph")
    domain_note = "gamma_ad, gamma_deph >= 0 (> 0 for full rank), initial theta in (0, pi)"
    d_invariant = None
    classification_hint = "classical"

    def check_domain(self, lam, ctrl):
        _check_nonnegative("gamma_ad", lam[0])
        _check_nonnegative("gamma_deph", lam[1])
        _check_open_interval("theta", ctrl.theta, 0.0, math.pi)
        _check_nonnegative("t", ctrl.t)

    def _rho_derivs(self, lam, ctrl):
        g_ad, g_deph = lam
        th, ph, t = ctrl.theta, ctrl.phi, ctrl.t
        p1 = math.exp(-g_ad * t) * math.sin(th / 2) ** 2
        off = 0.5 * math.sin(th) * np.exp(-1j * ph) * math.exp(-(g_ad / 2 + g_deph) * t)
        rho = np.array([[1.0 - p1, off], [np.conj(off), p1]])
        d_ad = np.array([[t * p1, -0.5 * t * off], [np.conj(-0.5 * t * off), -t * p1]])
        d_deph = np.array([[0.0, -t * off], [np.conj(-t * off), 0.0]])
        return rho, [d_ad, d_deph]

    def lindblad_parts(self, lam):
        g_ad, g_deph = lam
        return (0.0, 0.0, 0.0), [(LOWERING, g_ad), (SIGMA_Z, g_deph / 2)]


MODELS: dict[str, Model] = {
    m.name: m
    for m in (
        PureTomography(),
        MixedTomography(),
        Dephasing(),
        AmplitudeDamping(),
        DepolarizingFrequency(),
        AdPlusDephasing(),
    )
}


def get_model(name: str) -> Model:
    try:
        return MODELS[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(sorted(MODELS))}") from None


def evaluate(model: Model | str, lam, ctrl: ModelControls | None = None):
    """Density matrix and analytic derivatives of a model at a parameter point."""
    if isinstance(model, str):
        model = get_model(model)
    return model.rho_and_derivs(lam, ctrl)


def finite_diff_derivatives(
    model: Model | str,
    lam,
    ctrl: ModelControls | None = None,
    h: float = 1e-5,
    *,
    richardson: bool = True,
    via: str = "analytic",
    steps: int | None = None,
) -> list[np.ndarray]:
    """Central-difference derivatives of rho with respect to each parameter.

    ``via="analytic"`` differentiates the closed-form rho; ``via="lindblad"``
    differentiates the integrator output (the fully independent oracle).
    One Richardson halving (default) upgrades the truncation error to O(h^4).
    """
    if isinstance(model, str):
        model = get_model(model)
    if not 1e-8 <= h <= 1e-3:
        raise ValueError(f"step h must lie in [1e-8, 1e-3]; got {h:g}")
    ctrl = ctrl or ModelControls()
    lam = np.asarray(lam, dtype=float)

    if via == "analytic":
        rho_fn = lambda p: model.rho_and_derivs(p, ctrl)[0]
    elif via == "lindblad":
        if steps is None:
            # pin the step count at the stencil centre so quantization of the
            # default cannot leak into the differences
            parts = model.lindblad_parts(tuple(lam))
            if parts is None:
                raise ValueError(f"{model.name} has no master-equation representation")
            max_rate = max((rate for _, rate in parts[1]), default=0.0)
            steps = int(10000 * max(1.0, max_rate * ctrl.t))
        rho_fn = lambda p: model.rho_lindblad(p, ctrl, steps)
    else:
        raise ValueError("via must be 'analytic' or 'lindblad'")

    def central(step):
        out = []
        for mu in range(len(lam)):
            e = np.zeros_like(lam)
            e[mu] = step
            out.append((rho_fn(lam + e) - rho_fn(lam - e)) / (2 * step))
        return out

    d1 = central(h)
    if not richardson:
        return validate_derivatives(d1)
    d2 = central(h / 2)
    return validate_derivatives([(4 * b - a) / 3 for a, b in zip(d1, d2)])


def _liouvillian(h_coeffs, jump_ops) -> np.ndarray:
    """4x4 matrix representation of the master equation on vec(rho)."""
    hx, hy, hz = (float(c) for c in h_coeffs)
    H = 0.5 * (hx * SIGMA_X + hy * SIGMA_Y + hz * SIGMA_Z)
    eye = np.eye(2, dtype=complex)
    L = -1j * (np.kron(eye, H) - np.kron(H.T, eye))
    for A, rate in jump_ops:
        if rate < 0:
            raise ValueError("jump rates must be >= 0")
        A = np.asarray(A, dtype=complex)
        AdA = A.conj().T @ A
        L = L + rate * (
            np.kron(A.conj(), A) - 0.5 * (np.kron(eye, AdA) + np.kron(AdA.T, eye))
        )
    return L


def lindblad_integrate(
    h_coeffs,
    jump_ops,
    rho0: np.ndarray,
    t: float,
    steps: int | None = None,
) -> np.ndarray:
    """Fixed-step classical 4th-order integration of the Lindblad equation.

    The generator is constant, so the RK4 update is exactly the degree-4
    Taylor propagator of one step; it is applied ``steps`` times via a
    matrix power, which reproduces the stepped iterate up to round-off.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    max_rate = max((rate for _, rate in jump_ops), default=0.0)
    floor = int(1000 * max(1.0, max_rate * t))
    if steps is None:
        steps = int(10000 * max(1.0, max_rate * t))
    if steps < floor:
        raise ValueError(f"steps={steps} below the stability floor {floor}")

    rho0 = validate_density(rho0)
    L = _liouvillian(h_coeffs, jump_ops)
    dt = t / steps
    A = L * dt
    P = np.eye(4, dtype=complex) + A + A @ A / 2 + A @ A @ A / 6 + A @ A @ A @ A / 24
    vec = np.linalg.matrix_power(P, steps) @ rho0.reshape(-1, order="F")
    rho_t = vec.reshape(2, 2, order="F")

    drift = abs(np.trace(rho_t) - 1.0)
    if drift > 1e-6:
        raise IntegrationError(f"trace drift {drift:.3e} exceeds 1e-6")
    # re-project the round-off residue so downstream finite differences of the
    # integrator output stay exactly Hermitian and traceless
    rho_t = 0.5 * (rho_t + rho_t.conj().T)
    return rho_t / np.trace(rho_t).real
