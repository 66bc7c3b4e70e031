"""
ftxl_lab.errors
~~~~~~~~~~~~~~~

Custom exceptions and error handlers.
"""

import logging

logger = logging.getLogger(__name__)


class FTXLError(Exception):
    """Base exception for simulation errors."""

    def __init__(self, message: str, status_code: int = 500, payload=None):
        super().__init__(message)
        self.message = message
        self.status_code = status_code
        self.payload = payload

    def to_dict(self):
        rv = dict(self.payload or ())
        rv['error'] = self.message
        return rv


class InvalidProfileError(FTXLError):
    """Pure or mixed profile does not fit the game."""

    def __init__(self, message: str):
        super().__init__(message, status_code=400)


class InvalidGameError(FTXLError):
    """Game definition is malformed."""

    def __init__(self, message: str):
        super().__init__(message, status_code=400)


class ShapeMismatchError(FTXLError):
    """Vectors of incompatible layouts were combined."""

    def __init__(self, expected, got):
        super().__init__(
            f"Shape mismatch: expected {expected}, got {got}",
            status_code=400,
            payload={'expected': str(expected), 'got': str(got)}
        )


class NotStrictEquilibriumError(FTXLError):
    """Profile is not a strict Nash equilibrium."""

    def __init__(self, profile, min_gap: float):
        super().__init__(
            f"Profile {tuple(profile)} is not a strict Nash equilibrium (min gap {min_gap:g})",
            status_code=422,
            payload={'profile': list(profile), 'min_gap': min_gap}
        )


class NumericalFailureError(FTXLError):
    """Root finder or integrator did not converge."""

    def __init__(self, message: str, residual: float = float('nan'), iterations: int = 0):
        super().__init__(
            message,
            status_code=500,
            payload={'residual': residual, 'iterations': iterations}
        )
        self.residual = residual
        self.iterations = iterations


class DomainError(FTXLError):
    """Argument outside the domain of a map."""

    def __init__(self, message: str):
        super().__init__(message, status_code=400)


class InvalidConfigurationError(FTXLError):
    """Learner, feedback or experiment parameters are inconsistent."""

    def __init__(self, message: str):
        super().__init__(message, status_code=400)


class DivergenceError(FTXLError):
    """State became non-finite."""

    def __init__(self, last_valid_time: float):
        super().__init__(
            f"State diverged after t={last_valid_time:g}",
            status_code=500,
            payload={'last_valid_time': last_valid_time}
        )
        self.last_valid_time = last_valid_time


class FitRefusedError(FTXLError):
    """Not enough decay to fit a rate."""

    def __init__(self, message: str):
        super().__init__(message, status_code=422)


class UnknownPresetError(FTXLError):
    """Unknown experiment preset."""

    def __init__(self, name: str):
        super().__init__(f"Unknown preset: {name}", status_code=404)


def register_error_handlers(app):
    """
    Register error handlers with Flask app.

    Usage:
        from ftxl_lab.errors import register_error_handlers
        register_error_handlers(app)
    """
    from flask import jsonify
    from marshmallow import ValidationError
    from werkzeug.exceptions import HTTPException

    @app.errorhandler(FTXLError)
    def handle_ftxl_error(error):
        """Handle simulation errors."""
        logger.error(f"Simulation error: {error.message}")
        response = jsonify(error.to_dict())
        response.status_code = error.status_code
        return response

    @app.errorhandler(ValidationError)
    def handle_validation_error(error):
        """Handle schema validation errors."""
        logger.warning(f"Validation error: {error.messages}")
        return jsonify({
            'error': 'Validation failed',
            'details': error.messages
        }), 400

    @app.errorhandler(HTTPException)
    def handle_http_exception(error):
        """Handle HTTP exceptions."""
        return jsonify({
            'error': error.name,
            'message': error.description
        }), error.code

    @app.errorhandler(Exception)
    def handle_unexpected_error(error):
        """Handle unexpected errors."""
        logger.exception(f"Unexpected error: {error}")
        return jsonify({
            'error': 'Internal server error',
            'message': 'An unexpected error occurred'
        }), 500

    logger.info("Error handlers registered")
