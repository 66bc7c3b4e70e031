"""
ftxl_lab.extensibility.hooks
~~~~~~~~~~~~~~~~~~~~~~~~~~~~

Hook system for observing the round loop.
"""

import logging
import threading
from typing import Callable, Any, List, Dict

logger = logging.getLogger(__name__)


class HookManager:
    """
    Manages hooks called synchronously from inside a trial.

    Hooks see the loop state but cannot change it; a handler that raises is
    logged and skipped.

    Example:
        @hook_manager.register('after_step')
        def watch_momentum(trial, n, state, **kwargs):
            if abs(state.p.flat).max() > 1e3:
                print(f"trial {trial}: large momentum at step {n}")
    """

    def __init__(self):
        self._hooks: Dict[str, List[dict]] = {}
        self._lock = threading.Lock()

    def register(self, hook_name: str, priority: int = 50):
        """
        Register a hook handler.

        Args:
            hook_name: Name of the hook
            priority: Execution priority (lower = earlier, default=50)
        """
        def decorator(func: Callable):
            with self._lock:
                handlers = self._hooks.setdefault(hook_name, [])
                handlers.append({'func': func, 'priority': priority})
                handlers.sort(key=lambda x: x['priority'])

            logger.info(f"Registered hook '{hook_name}': {func.__name__}")
            return func

        return decorator

    def unregister(self, hook_name: str, func: Callable):
        with self._lock:
            self._hooks[hook_name] = [h for h in self._hooks.get(hook_name, []) if h['func'] is not func]

    def trigger(self, hook_name: str, *args, **kwargs) -> List[Any]:
        """
        Trigger all handlers for a hook.

        Returns:
            list: Results from all handlers
        """
        handlers = self._hooks.get(hook_name)
        if not handlers:
            return []

        results = []
        for hook_info in list(handlers):
            try:
                results.append(hook_info['func'](*args, **kwargs))
            except Exception as e:
                logger.error(f"Error in hook '{hook_name}': {e}")

        return results

    def has_hooks(self, hook_name: str) -> bool:
        """Check if hook has any registered handlers."""
        return bool(self._hooks.get(hook_name))

    def clear(self):
        with self._lock:
            self._hooks.clear()


# Global hook manager
_hook_manager = HookManager()


def hook(hook_name: str, priority: int = 50):
    """
    Decorator to register a hook handler on the global manager.

    Usage:
        from ftxl_lab.extensibility import hook

        @hook('before_round', priority=10)
        def log_strategies(trial, n, x, **kwargs):
            pass
    """
    return _hook_manager.register(hook_name, priority)


def get_hook_manager() -> HookManager:
    """Get global hook manager."""
    return _hook_manager


AVAILABLE_HOOKS = {
    'before_round': 'Before the signal of round n is drawn (trial, n, x)',
    'after_step': 'After the learner update of round n (trial, n, state)',
}
