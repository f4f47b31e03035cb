import dataclasses

import numpy as np
import pytest

from polariton_phases.optics import OpticalConfig, validate_config
from polariton_phases.errors import DomainError, PoleError


def random_valid_config(rng: np.random.Generator) -> OpticalConfig:
    """Sample an OpticalConfig passing validation, away from the poles."""
    while True:
        cfg = OpticalConfig(
            gamma_total=10 ** rng.uniform(6, 8),
            gamma_1d_ratio=rng.uniform(0.05, 1.0),
            delta0=rng.uniform(1.0, 20.0),
            delta_small=10 ** rng.uniform(-3, -1),
            delta_p=rng.uniform(1.0, 100.0),
            omega=rng.uniform(0.3, 3.0),
            n0=10 ** rng.uniform(6, 8),
            n1_fraction=rng.uniform(0.0, 0.5),
            n_ph=10 ** rng.uniform(2, 4),
            delta_omega=0.0,
        )
        # keep a finite margin from the Lambda pole so identities are
        # numerically clean
        if abs(cfg.omega**2 - cfg.delta_small * cfg.delta0 / 2) < 1e-3:
            continue
        try:
            validate_config(cfg)
        except (DomainError, PoleError):
            continue
        return cfg


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


@pytest.fixture
def baseline():
    return OpticalConfig()


def with_(cfg, **kw):
    return dataclasses.replace(cfg, **kw)
