"""
ftxl_lab.routes.experiments
~~~~~~~~~~~~~~~~~~~~~~~~~~~

Experiment API routes.
"""

import logging

from flask import Blueprint, request, jsonify

from ftxl_lab.errors import FitRefusedError
from ftxl_lab.games.equilibria import drift_constant
from ftxl_lab.games.loader import load_game
from ftxl_lab.harness.presets import PRESETS, preset
from ftxl_lab.regularizers import parse_regularizer
from ftxl_lab.utils.validation import (
    validate_request, ExperimentRequestSchema, EquilibriumRequestSchema,
)

logger = logging.getLogger(__name__)


def create_experiment_blueprint(service, config, blueprint_name='ftxl'):
    """
    Create experiment blueprint with all routes.

    Args:
        service: SimulationSvc instance
        config: App configuration
        blueprint_name: Blueprint name (default: 'ftxl')

    Returns:
        Blueprint: Configured experiment blueprint
    """

    bp = Blueprint(blueprint_name, __name__)

    @bp.route('/presets', methods=['GET'])
    def list_presets():
        """List the named experiment setups."""
        return jsonify({'presets': PRESETS}), 200

    @bp.route('/presets/<name>', methods=['GET'])
    def get_preset(name):
        """Full configuration of one preset."""
        return jsonify(preset(name).to_dict()), 200

    @bp.route('/equilibrium', methods=['POST'])
    @validate_request(EquilibriumRequestSchema)
    def check_equilibrium():
        """Verify a strict equilibrium and report its drift constant and threshold."""
        data = request.validated_data
        game, _ = load_game(data['game'])
        equilibrium = drift_constant(game, data['profile'], parse_regularizer(data['reg']))
        return jsonify({'strict': True, 'game': game.name, **equilibrium.to_dict()}), 200

    @bp.route('/experiments', methods=['POST'])
    @validate_request(ExperimentRequestSchema)
    def run_experiment():
        """Run a (small) batch of trials of a preset and return the summary."""
        data = request.validated_data
        overrides = dict(data.get('overrides') or {})

        max_trials = int(config.get('FTXL_API_MAX_TRIALS', 20))
        requested = overrides.get('trials', PRESETS[data['preset']]['trials'])
        if requested > max_trials:
            logger.warning(f"Capping requested {requested} trials at {max_trials}")
            overrides['trials'] = max_trials

        cfg, records, summary = service.run_preset(data['preset'], **overrides)

        rate = None
        try:
            rate = service.fit_rate(cfg, records).to_dict()
        except FitRefusedError as e:
            logger.info(f"No rate for API experiment: {e.message}")

        return jsonify({
            'config': cfg.to_dict(),
            'trials': summary.trials,
            'frac_converged': summary.frac_converged,
            'final_mean_l1': summary.final_mean_l1,
            'final_std_l1': float(summary.std_l1[-1]),
            'mean_l1': summary.mean_l1.tolist(),
            'rate': rate,
        }), 200

    return bp
