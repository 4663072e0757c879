"""
Shared fixtures for the simulator test suite.
"""

from pathlib import Path

import numpy as np
import pytest

from core.engagement_env import EnvConfig, Phase

PRESET_DIR = Path(__file__).resolve().parent.parent / "presets"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def two_phase_env() -> EnvConfig:
    """a6 optimal at -20 for 200 steps, then a2 at -20 for 400 (0-based actions 5 and 1)"""
    return EnvConfig(schedule=(Phase(5, -20.0, 200), Phase(1, -20.0, 400)))


@pytest.fixture
def preset_dir() -> Path:
    return PRESET_DIR
