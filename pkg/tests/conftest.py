"""Shared fixtures: one trained classifier per session, hypothesis profile."""
from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from crowdpsych.pipeline import default_socialization_net
from crowdpsych.socialization import SocializationNet, synthesize_dataset

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def trained_net() -> SocializationNet:
    """The default classifier, trained once for the whole test session."""
    return default_socialization_net(seed=7)


@pytest.fixture(scope="session")
def holdout_samples():
    """A fresh labeled sample set the training seed never saw."""
    return synthesize_dataset(3000, seed=1234)
