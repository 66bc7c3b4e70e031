"""
ftxl_lab.games.loader
~~~~~~~~~~~~~~~~~~~~~

Game spec files (JSON) to game objects.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from marshmallow import ValidationError

from ftxl_lab.errors import InvalidGameError
from ftxl_lab.games.base import Game
from ftxl_lab.games.library import (
    congestion_equilibrium, congestion_game, single_player_game, zero_sum_game,
    SINGLE_PLAYER_EQUILIBRIUM, ZERO_SUM_EQUILIBRIUM,
)
from ftxl_lab.games.normal_form import NormalFormGame
from ftxl_lab.utils.validation import GameSpecSchema

logger = logging.getLogger(__name__)


def parse_game_spec(spec: Dict[str, Any]) -> Tuple[Game, Optional[Tuple[int, ...]]]:
    """
    Validate a game spec and build the game.

    Returns:
        tuple: (game, declared or known equilibrium profile or None)
    """
    try:
        data = GameSpecSchema().load(spec)
    except ValidationError as e:
        raise InvalidGameError(f"Invalid game spec: {e.messages}")

    generator = data.get('generator')
    declared = tuple(data['equilibrium']) if data.get('equilibrium') else None

    if generator == 'congestion':
        game = congestion_game(data['players'], data['cost_fixed'], data['cost_slope'])
        return game, declared or congestion_equilibrium(data['players'])
    if generator == 'zerosum':
        return zero_sum_game(), declared or ZERO_SUM_EQUILIBRIUM
    if generator == 'single':
        return single_player_game(data['gap']), declared or SINGLE_PLAYER_EQUILIBRIUM

    game = NormalFormGame.from_flat(data['players'], data['actions'], data['payoffs'], name=data.get('name'))
    return game, declared


def load_game(source: Union[str, Path, Dict[str, Any]]) -> Tuple[Game, Optional[Tuple[int, ...]]]:
    """Load a game from a JSON file path or an already-parsed dict."""
    if isinstance(source, dict):
        return parse_game_spec(source)
    path = Path(source)
    try:
        spec = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidGameError(f"Could not read game file {path}: {e}")
    logger.info(f"Loaded game spec from {path}")
    return parse_game_spec(spec)
