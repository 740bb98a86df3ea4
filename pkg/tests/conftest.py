import math

import numpy as np
import pytest

from quantumness import ModelControls, classification_for_model, get_model, model_information


def random_regular_point(name: str, rng: np.random.Generator):
    """Draw (lam, ctrl) well inside the regular domain of a model."""
    theta = rng.uniform(0.35, math.pi - 0.35)
    phi = rng.uniform(0.0, 2 * math.pi)
    if name == "pure-tomography":
        return (theta, phi), None
    if name == "mixed-tomography":
        return (rng.uniform(0.15, 0.9), theta, phi), None
    ctrl = ModelControls(theta=theta, phi=phi, t=1.0)
    if name in ("dephasing", "amplitude-damping"):
        return (rng.uniform(0.5, 1.5), rng.uniform(0.25, 2.5)), ctrl
    if name == "depolarizing-frequency":
        return (rng.uniform(0.5, 1.5), rng.uniform(0.2, 1.5)), ctrl
    if name == "ad-plus-dephasing":
        return (rng.uniform(0.2, 1.5), rng.uniform(0.2, 1.5)), ctrl
    raise ValueError(name)


def info_and_class(name: str, lam, ctrl=None):
    model = get_model(name)
    info = model_information(model, lam, ctrl)
    return info, classification_for_model(model, info)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
