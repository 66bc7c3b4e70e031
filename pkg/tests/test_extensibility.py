"""
Tests for hooks and events.
"""

from ftxl_lab.extensibility import AVAILABLE_EVENTS, AVAILABLE_HOOKS, EventManager, HookManager


def test_hooks_run_in_priority_order():
    hooks = HookManager()
    calls = []

    @hooks.register('after_step', priority=90)
    def late(**kwargs):
        calls.append('late')

    @hooks.register('after_step', priority=10)
    def early(**kwargs):
        calls.append('early')

    hooks.trigger('after_step', trial=0, n=1, state=None)
    assert calls == ['early', 'late']


def test_failing_hook_is_skipped():
    hooks = HookManager()

    @hooks.register('before_round')
    def broken(**kwargs):
        raise RuntimeError('boom')

    @hooks.register('before_round')
    def fine(**kwargs):
        return 'ok'

    assert hooks.trigger('before_round', trial=0, n=1, x=None) == ['ok']


def test_unregister_and_clear():
    hooks = HookManager()

    @hooks.register('after_step')
    def handler(**kwargs):
        return 1

    assert hooks.has_hooks('after_step')
    hooks.unregister('after_step', handler)
    assert not hooks.has_hooks('after_step')
    hooks.register('before_round')(handler)
    hooks.clear()
    assert hooks.trigger('before_round') == []


def test_events_reach_subscribers():
    events = EventManager()
    received = []

    @events.subscribe('trial.completed')
    def on_trial(evt):
        received.append(evt.data['trial'])

    events.publish('trial.completed', {'trial': 4})
    events.publish('batch.completed', {'trials': 1})
    assert received == [4]
    assert [e.name for e in events.get_history()] == ['trial.completed', 'batch.completed']
    assert events.get_history('batch.completed')[0].to_dict()['source'] == 'ftxl-lab'


def test_event_history_is_bounded():
    events = EventManager(max_history=3)
    for i in range(5):
        events.publish('trial.completed', {'trial': i})
    assert [e.data['trial'] for e in events.get_history()] == [2, 3, 4]


def test_failing_subscriber_does_not_stop_others():
    events = EventManager()
    received = []

    @events.subscribe('trial.diverged')
    def broken(evt):
        raise ValueError('nope')

    @events.subscribe('trial.diverged')
    def fine(evt):
        received.append(evt.name)

    events.publish('trial.diverged', {'trial': 0, 'step': 3})
    assert received == ['trial.diverged']


def test_documented_names():
    assert set(AVAILABLE_HOOKS) == {'before_round', 'after_step'}
    assert 'batch.completed' in AVAILABLE_EVENTS
