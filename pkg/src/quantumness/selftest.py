"""Built-in invariant suite behind the ``selftest`` CLI subcommand.

Runs compact versions of the property checks (P1-P5, inequality chains,
classical models, oracle consistency, weight-scale invariance) and reports
one named pass/fail line per suite.  Deterministic for a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds as bd
from . import infogeo as ig
from . import models as md

TWO_PARAM_POINTS = {
    "dephasing": [((1.0, 0.3), md.ModelControls(theta=0.9, phi=0.2, t=1.0)),
                  ((0.7, 1.2), md.ModelControls(theta=2.1, phi=0.0, t=1.0))],
    "amplitude-damping": [((1.0, 0.5), md.ModelControls(theta=1.1, phi=0.4, t=1.0)),
                          ((0.5, math.log(2.0)), md.ModelControls(theta=2.0, phi=0.0, t=1.0))],
    "depolarizing-frequency": [((1.0, 0.8), md.ModelControls(theta=1.0, phi=0.3, t=1.0))],
    "ad-plus-dephasing": [((0.6, 0.4), md.ModelControls(theta=1.3, phi=0.5, t=1.0))],
}
TOMOGRAPHY_POINTS = {
    "pure-tomography": [((0.9, 0.4), None), ((2.2, 1.1), None)],
    "mixed-tomography": [((0.6, 1.2, 0.7), None), ((0.3, 2.0, 0.1), None)],
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _all_points():
    for name, pts in {**TOMOGRAPHY_POINTS, **TWO_PARAM_POINTS}.items():
        model = md.get_model(name)
        for lam, ctrl in pts:
            info = ig.model_information(model, lam, ctrl)
            yield model, lam, ctrl, info, bd.classification_for_model(model, info)


def check_p1_range(rng) -> CheckResult:
    worst = 0.0
    for _, _, _, info, _ in _all_points():
        r = ig.quantumness(info)
        worst = max(worst, -r, r - 1.0)
    return CheckResult("p1-quantumness-range", worst <= 1e-9, f"max violation {worst:.2e}")


def check_p2_weak_compatibility(rng) -> CheckResult:
    ok = True
    details = []
    for model, _, _, info, _ in _all_points():
        r = ig.quantumness(info)
        d_small = np.abs(info.d).max() <= 1e-9
        r_small = r <= 1e-9
        if d_small != r_small:
            ok = False
            details.append(f"{model.name}: R={r:.2e} vs ||D||={np.abs(info.d).max():.2e}")
    return CheckResult("p2-weak-compatibility", ok, "; ".join(details) or "R=0 iff D=0 everywhere")


def check_p3_gap_bound(rng) -> CheckResult:
    worst = -math.inf
    for _, _, _, info, cls in _all_points():
        r = ig.quantumness(info)
        for _, dc in bd.random_weight_sweep(info, cls, 50, seed=int(rng.integers(2**31))):
            worst = max(worst, dc - r)
    return CheckResult("p3-gap-below-quantumness", worst <= 1e-9, f"max dC - R = {worst:.2e}")


def check_p4_det_ratio(rng) -> CheckResult:
    worst = 0.0
    for _, _, _, info, _ in _all_points():
        if info.n != 2:
            continue
        worst = max(worst, abs(ig.quantumness(info) - ig.quantumness_det_ratio(info)))
    return CheckResult("p4-two-parameter-det-ratio", worst <= 1e-9, f"max deviation {worst:.2e}")


def check_p5_reparametrization(rng) -> CheckResult:
    worst = 0.0
    for _, _, _, info, _ in _all_points():
        r = ig.quantumness(info)
        for _ in range(100):
            b = rng.standard_normal((info.n, info.n))
            while abs(np.linalg.det(b)) < 1e-3:
                b = rng.standard_normal((info.n, info.n))
            worst = max(worst, abs(ig.quantumness(ig.reparametrize(info, b)) - r))
    return CheckResult("p5-reparametrization-invariance", worst <= 1e-9, f"max |dR| = {worst:.2e}")


def check_chain(rng) -> CheckResult:
    worst = -math.inf
    for _, _, _, info, cls in _all_points():
        r = ig.quantumness(info)
        for _ in range(20):
            w = bd.sample_random_weight(rng, info.n)
            rep = bd.bounds_report(w, info, cls)
            worst = max(
                worst,
                rep.c_s - rep.c_h,
                max(rep.c_s, rep.c_r) - rep.c_h,
                rep.c_h - (1.0 + r) * rep.c_s,
                (1.0 + r) * rep.c_s - 2.0 * rep.c_s,
            )
    return CheckResult("chain-inequalities", worst <= 1e-9, f"max violation {worst:.2e}")


def check_classical_models(rng) -> CheckResult:
    worst = 0.0
    for name in ("depolarizing-frequency", "ad-plus-dephasing"):
        model = md.get_model(name)
        for _ in range(5):
            lam = rng.uniform(0.2, 1.5, size=2)
            ctrl = md.ModelControls(theta=rng.uniform(0.3, math.pi - 0.3), phi=rng.uniform(0, 2 * math.pi), t=1.0)
            info = ig.model_information(model, lam, ctrl)
            cls = bd.classification_for_model(model, info)
            worst = max(worst, np.abs(info.d).max())
            if cls is not bd.ModelClass.CLASSICAL:
                return CheckResult("classical-models", False, f"{name} not classified classical")
            w = bd.sample_random_weight(rng, 2)
            rep = bd.bounds_report(w, info, cls)
            worst = max(worst, abs(rep.c_h - rep.c_s))
    return CheckResult("classical-models", worst <= 1e-9, f"max ||D|| / |C_H - C_S| = {worst:.2e}")


def check_oracle_consistency(rng) -> CheckResult:
    worst = 0.0
    for name in ("dephasing", "amplitude-damping"):
        model = md.get_model(name)
        for _ in range(3):
            lam = (rng.uniform(0.5, 1.5), rng.uniform(0.3, 2.0))
            ctrl = md.ModelControls(theta=rng.uniform(0.5, math.pi - 0.5), phi=rng.uniform(0, 2 * math.pi), t=1.0)
            rho, drhos = model.rho_and_derivs(lam, ctrl)
            rho_num = model.rho_lindblad(lam, ctrl)
            drhos_num = md.finite_diff_derivatives(model, lam, ctrl, via="lindblad")
            info_a = ig.info_matrices(rho, ig.sld_operators(rho, drhos), ig.rld_operators(rho, drhos))
            info_n = ig.info_matrices(
                rho_num, ig.sld_operators(rho_num, drhos_num), ig.rld_operators(rho_num, drhos_num)
            )
            worst = max(
                worst,
                np.abs(info_a.q - info_n.q).max(),
                np.abs(info_a.d - info_n.d).max(),
                np.abs(info_a.j - info_n.j).max(),
            )
    return CheckResult("oracle-consistency", worst <= 1e-5, f"max |analytic - numeric| = {worst:.2e}")


def check_scale_invariance(rng) -> CheckResult:
    worst = 0.0
    for _, _, _, info, cls in _all_points():
        w = bd.sample_random_weight(rng, info.n)
        base = bd.delta_c(w, info, cls)
        for c in (1e-3, 1.0, 1e3):
            worst = max(worst, abs(bd.delta_c(c * w, info, cls) - base))
    return CheckResult("weight-scale-invariance", worst <= 1e-10, f"max |d(dC)| = {worst:.2e}")


ALL_CHECKS = (
    check_p1_range,
    check_p2_weak_compatibility,
    check_p3_gap_bound,
    check_p4_det_ratio,
    check_p5_reparametrization,
    check_chain,
    check_classical_models,
    check_oracle_consistency,
    check_scale_invariance,
)


def run_selftest(seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [check(rng) for check in ALL_CHECKS]
