"""
ftxl_lab.routes
~~~~~~~~~~~~~~~

HTTP routes for running experiments.
"""

from .experiments import create_experiment_blueprint
from .health import create_health_blueprint

__all__ = ['create_experiment_blueprint', 'create_health_blueprint']
