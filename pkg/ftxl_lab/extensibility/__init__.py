"""
ftxl_lab.extensibility
~~~~~~~~~~~~~~~~~~~~~~

Hooks into the round loop and events for finished trials.
"""

from .hooks import HookManager, hook, get_hook_manager, AVAILABLE_HOOKS
from .events import Event, EventManager, event, get_event_manager, AVAILABLE_EVENTS

__all__ = [
    'HookManager',
    'hook',
    'get_hook_manager',
    'AVAILABLE_HOOKS',
    'Event',
    'EventManager',
    'event',
    'get_event_manager',
    'AVAILABLE_EVENTS',
]
