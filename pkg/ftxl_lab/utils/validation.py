"""
ftxl_lab.utils.validation
~~~~~~~~~~~~~~~~~~~~~~~~~

Validation schemas for game files and API requests.
"""

from functools import wraps
import logging

from marshmallow import (
    Schema, fields, validate, validates, validates_schema, ValidationError, EXCLUDE
)

logger = logging.getLogger(__name__)

GENERATORS = ('congestion', 'zerosum', 'single')
ALGORITHMS = ('ew', 'ftrl', 'ftxl', 'ftxl-vf', 'ftxl-cf')
FEEDBACK_MODELS = ('full', 'realization', 'bandit')


class GameSpecSchema(Schema):
    """
    Game file schema.

    Dense form: {"players": N, "actions": [...], "payoffs": [...]} (row-major over
    (player, α_1, ..., α_N)). Generated form: {"generator": "congestion", "players": 100,
    "cost_fixed": 1.1}.
    """

    class Meta:
        unknown = EXCLUDE

    generator = fields.Str(required=False, load_default=None, validate=validate.OneOf(GENERATORS))
    players = fields.Int(required=False, load_default=None, validate=validate.Range(min=1))
    actions = fields.List(fields.Int(validate=validate.Range(min=1)), required=False, load_default=None)
    payoffs = fields.List(fields.Float(allow_nan=False), required=False, load_default=None)
    cost_fixed = fields.Float(required=False, load_default=1.1)
    cost_slope = fields.Float(required=False, load_default=1.0)
    gap = fields.Float(required=False, load_default=1.0)
    equilibrium = fields.List(fields.Int(validate=validate.Range(min=0)), required=False, load_default=None)
    name = fields.Str(required=False, load_default=None)

    @validates_schema
    def validate_shape(self, data, **kwargs):
        if data.get('generator'):
            if data['generator'] == 'congestion' and not data.get('players'):
                raise ValidationError('Congestion generator requires "players"', 'players')
            return
        missing = [key for key in ('players', 'actions', 'payoffs') if data.get(key) is None]
        if missing:
            raise ValidationError(f'Dense game requires {", ".join(missing)}')
        if len(data['actions']) != data['players']:
            raise ValidationError('"actions" must list one count per player', 'actions')
        expected = data['players']
        for count in data['actions']:
            expected *= count
        if len(data['payoffs']) != expected:
            raise ValidationError(f'Expected {expected} payoff entries, got {len(data["payoffs"])}', 'payoffs')


class OverridesSchema(Schema):
    """Experiment overrides shared by the CLI and the HTTP API."""

    class Meta:
        unknown = EXCLUDE

    alg = fields.Str(required=False, validate=validate.OneOf(ALGORITHMS))
    eta = fields.Float(required=False, validate=validate.Range(min=0, min_inclusive=False))
    friction = fields.Float(required=False, validate=validate.Range(min=0))
    reg = fields.Str(required=False)
    feedback = fields.Str(required=False, validate=validate.OneOf(FEEDBACK_MODELS))
    eps = fields.Float(required=False, validate=validate.Range(min=0, max=1, min_inclusive=False))
    kappa = fields.Float(required=False, validate=validate.Range(min=0, max=0.5, max_inclusive=False))
    seed = fields.Int(required=False, validate=validate.Range(min=0, max=2**64 - 1))
    horizon = fields.Int(required=False, validate=validate.Range(min=1))
    trials = fields.Int(required=False, validate=validate.Range(min=1))
    init = fields.Str(required=False)

    @validates('init')
    def validate_init(self, value, **kwargs):
        head = value.split(':', 1)[0]
        if head not in ('zero', 'near', 'random'):
            raise ValidationError('init must be zero, near[:gap] or random[:bound]')


class ExperimentRequestSchema(Schema):
    """Schema for POST /experiments."""

    class Meta:
        unknown = EXCLUDE

    preset = fields.Str(required=True, validate=validate.OneOf(('zerosum', 'congestion', 'single')))
    overrides = fields.Nested(OverridesSchema, required=False, load_default=dict)


class EquilibriumRequestSchema(Schema):
    """Schema for POST /equilibrium."""

    class Meta:
        unknown = EXCLUDE

    game = fields.Dict(required=True)
    profile = fields.List(fields.Int(validate=validate.Range(min=0)), required=True)
    reg = fields.Str(required=False, load_default='entropic')


def validate_request(schema_class):
    """
    Decorator to validate request data against schema.

    Usage:
        @validate_request(ExperimentRequestSchema)
        def run_experiment():
            # request.validated_data contains validated data
            pass
    """
    from flask import request, jsonify

    def decorator(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                data = request.get_json(silent=True) or {}
                request.validated_data = schema_class().load(data)
            except ValidationError as e:
                logger.warning(f"Validation error: {e.messages}")
                return jsonify({
                    'error': 'Validation failed',
                    'details': e.messages
                }), 400
            return fn(*args, **kwargs)

        return wrapper
    return decorator
