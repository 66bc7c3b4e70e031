"""
ftxl_lab.utils.monitoring
~~~~~~~~~~~~~~~~~~~~~~~~~

Operation timing and service health checks.
"""

import time
import uuid
import logging
from datetime import datetime, timezone
from functools import wraps

import numpy as np

logger = logging.getLogger(__name__)


def track_operation(operation_name: str):
    """
    Decorator to log start, completion and failure of an operation with its duration.

    Usage:
        @track_operation('run_trials')
        def run_trials(cfg):
            pass
    """
    def decorator(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            operation_id = uuid.uuid4().hex[:8]

            try:
                logger.info(f"[{operation_id}] Starting operation: {operation_name}")

                result = fn(*args, **kwargs)

                duration = (time.perf_counter() - start_time) * 1000
                logger.info(
                    f"[{operation_id}] Completed operation: {operation_name} "
                    f"in {duration:.2f}ms"
                )

                return result

            except Exception as e:
                duration = (time.perf_counter() - start_time) * 1000
                logger.error(
                    f"[{operation_id}] Failed operation: {operation_name} "
                    f"after {duration:.2f}ms - Error: {e}"
                )
                raise

        return wrapper
    return decorator


class HealthCheck:
    """Health check system for the simulation service."""

    def __init__(self):
        self.checks = {}

    def register_check(self, name: str, check_fn):
        """
        Register a custom health check.

        Args:
            name: Check name
            check_fn: Function that returns (bool, str) - (is_healthy, message)
        """
        self.checks[name] = check_fn

    def check_solver(self) -> tuple:
        """The KKT solver agrees with the closed-form logit map."""
        from ftxl_lab.regularizers import ENTROPIC, logit_map, mirror_map

        y = np.array([0.3, -1.2, 2.0])
        error = float(np.max(np.abs(mirror_map(ENTROPIC, y) - logit_map(y))))
        if error > 1e-10:
            return False, f"Mirror map deviates from logit by {error:.3g}"
        return True, "Mirror map OK"

    def run_all_checks(self) -> dict:
        """
        Run all health checks.

        Returns:
            dict: Health check results
        """
        results = {
            'timestamp': datetime.now(timezone.utc).isoformat(),
            'status': 'healthy',
            'checks': {}
        }

        checks_to_run = {'solver': self.check_solver, **self.checks}

        for name, check_fn in checks_to_run.items():
            try:
                is_healthy, message = check_fn()
                results['checks'][name] = {
                    'status': 'pass' if is_healthy else 'fail',
                    'message': message
                }
                if not is_healthy:
                    results['status'] = 'unhealthy'

            except Exception as e:
                results['checks'][name] = {
                    'status': 'error',
                    'message': str(e)
                }
                results['status'] = 'unhealthy'

        return results
