"""
ftxl_lab.core
~~~~~~~~~~~~~

Main SimulationSvc extension class.
"""

from flask import Flask
from typing import Optional, Tuple, List
import logging

from ftxl_lab.harness.experiment import ExperimentConfig, TrialRecord, run_trials
from ftxl_lab.harness.presets import preset, settings_options
from ftxl_lab.harness.rates import RateReport, fit_discrete_rate
from ftxl_lab.harness.summary import Summary, aggregate
from ftxl_lab.learners.state import FTRL
from ftxl_lab.utils.monitoring import HealthCheck

logger = logging.getLogger(__name__)


class SimulationSvc:
    """
    Flask extension exposing the experiment harness over HTTP.

    Usage:
        app = Flask(__name__)
        ftxl = SimulationSvc(app)

    Or with app factory:
        ftxl = SimulationSvc()
        ftxl.init_app(app)
    """

    def __init__(self, app: Optional[Flask] = None, blueprint_name: str = 'ftxl',
                 url_prefix: Optional[str] = None, **kwargs):
        """
        Initialize the extension.

        Args:
            app: Flask application instance (optional)
            blueprint_name: Unique name for the blueprint (default: 'ftxl')
            url_prefix: URL prefix for routes (default: from config or '/api/ftxl')
        """
        self.app = None
        self.config = {}
        self.blueprint_name = blueprint_name
        self.url_prefix = url_prefix
        self.health_check = HealthCheck()

        if app is not None:
            self.init_app(app, **kwargs)

    def init_app(self, app: Flask, **kwargs):
        """
        Initialize the extension with Flask app.

        Args:
            app: Flask application instance
        """
        self.app = app
        self.config = app.config

        if 'url_prefix' in kwargs and not self.url_prefix:
            self.url_prefix = kwargs['url_prefix']

        self._load_config(app)
        self._init_cors(app)
        self._init_error_handlers(app)
        self._init_routes(app)

        if not hasattr(app, 'extensions'):
            app.extensions = {}
        app.extensions['ftxl'] = self

        logger.info("SimulationSvc initialized successfully")

    def _load_config(self, app):
        """Load default configuration."""
        from ftxl_lab.config import DEFAULT_CONFIG

        for key, value in DEFAULT_CONFIG.items():
            app.config.setdefault(key, value)

    def _init_cors(self, app):
        """Initialize CORS."""
        from flask_cors import CORS

        cors_origins = app.config.get('FTXL_CORS_ORIGINS', ['*'])
        if isinstance(cors_origins, str):
            cors_origins = cors_origins.split(',')

        CORS(
            app,
            origins=cors_origins,
            allow_headers=['Content-Type'],
            methods=['GET', 'POST', 'OPTIONS'],
        )
        logger.info("CORS initialized for experiments")

    def _init_error_handlers(self, app):
        from ftxl_lab.errors import register_error_handlers

        register_error_handlers(app)

    def _init_routes(self, app):
        """Register experiment and health routes."""
        from ftxl_lab.routes import create_experiment_blueprint, create_health_blueprint

        url_prefix = self.url_prefix or app.config.get('FTXL_URL_PREFIX', '/api/ftxl')

        experiment_bp = create_experiment_blueprint(
            service=self,
            config=app.config,
            blueprint_name=self.blueprint_name,
        )
        app.register_blueprint(experiment_bp, url_prefix=url_prefix)
        app.register_blueprint(
            create_health_blueprint(self.health_check, blueprint_name=f'{self.blueprint_name}_health'),
            url_prefix=url_prefix,
        )

        logger.info(f"Experiment routes registered at {url_prefix} with blueprint '{self.blueprint_name}'")

    def run_preset(self, name: str, **overrides) -> Tuple[ExperimentConfig, List[TrialRecord], Summary]:
        """
        Run a preset with the app's FTXL_* settings (seed, workers, friction,
        numerical tolerances) unless overridden.

        Returns:
            tuple: (config, records, summary)
        """
        options = settings_options(self.config, step_size=False)
        options.update(overrides)
        cfg = preset(name, **options)
        records = run_trials(cfg)
        return cfg, records, aggregate(records)

    def fit_rate(self, cfg: ExperimentConfig, records: List[TrialRecord]) -> RateReport:
        return fit_discrete_rate(
            records,
            eta=cfg.eta,
            drift=cfg.strict_equilibrium.drift,
            basis='linear' if cfg.variant == FTRL else 'quadratic',
            model=cfg.feedback.model,
            floor=self.config.get('FTXL_FIT_FLOOR', 1e-14),
        )
