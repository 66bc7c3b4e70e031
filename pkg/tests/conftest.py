"""
Shared fixtures for the ftxl-lab test suite.
"""

import numpy as np
import pytest
from flask import Flask

from ftxl_lab.core import SimulationSvc
from ftxl_lab.extensibility.events import EventManager
from ftxl_lab.extensibility.hooks import HookManager
from ftxl_lab.games.library import congestion_game, single_player_game, zero_sum_game
from ftxl_lab.regularizers import ENTROPIC, tsallis


@pytest.fixture
def zero_sum():
    return zero_sum_game()


@pytest.fixture
def single_game():
    return single_player_game()


@pytest.fixture
def small_congestion():
    return congestion_game(num_players=5)


@pytest.fixture
def entropic_reg():
    return ENTROPIC


@pytest.fixture
def tsallis_reg():
    return tsallis(0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def hooks():
    return HookManager()


@pytest.fixture
def events():
    return EventManager()


@pytest.fixture
def app():
    app = Flask(__name__)
    app.config['TESTING'] = True
    app.config['FTXL_API_MAX_TRIALS'] = 3
    SimulationSvc(app)
    return app


@pytest.fixture
def client(app):
    return app.test_client()
