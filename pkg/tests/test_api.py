"""
Tests for the HTTP API.
"""

from flask import Flask

from ftxl_lab.core import SimulationSvc

PREFIX = '/api/ftxl'


def test_extension_registered(app):
    assert 'ftxl' in app.extensions
    assert app.config['FTXL_API_MAX_TRIALS'] == 3
    assert app.config['FTXL_ETA'] == 0.01


def test_list_presets(client):
    response = client.get(f'{PREFIX}/presets')
    assert response.status_code == 200
    assert set(response.get_json()['presets']) == {'zerosum', 'congestion', 'single'}


def test_get_preset(client):
    data = client.get(f'{PREFIX}/presets/zerosum').get_json()
    assert data['eta'] == 0.01
    assert data['equilibrium'] == [0, 1]
    assert data['feedback']['model'] == 'bandit'


def test_unknown_preset(client):
    response = client.get(f'{PREFIX}/presets/nope')
    assert response.status_code == 404
    assert response.get_json() == {'error': 'Unknown preset: nope'}


def test_check_equilibrium(client):
    response = client.post(f'{PREFIX}/equilibrium', json={'game': {'generator': 'zerosum'}, 'profile': [0, 1]})
    assert response.status_code == 200
    data = response.get_json()
    assert data['strict'] is True
    assert data['drift'] == 0.5
    assert data['threshold'] == 2.0


def test_equilibrium_not_strict(client):
    response = client.post(f'{PREFIX}/equilibrium', json={'game': {'generator': 'zerosum'}, 'profile': [1, 0]})
    assert response.status_code == 422
    assert response.get_json()['profile'] == [1, 0]


def test_equilibrium_bad_game(client):
    response = client.post(f'{PREFIX}/equilibrium', json={
        'game': {'players': 2, 'actions': [2, 2], 'payoffs': [1, 2]},
        'profile': [0, 0],
    })
    assert response.status_code == 400


def test_equilibrium_validation(client):
    response = client.post(f'{PREFIX}/equilibrium', json={'game': {'generator': 'zerosum'}})
    assert response.status_code == 400
    data = response.get_json()
    assert data['error'] == 'Validation failed'
    assert 'profile' in data['details']


def test_run_experiment(client):
    response = client.post(f'{PREFIX}/experiments', json={'preset': 'single', 'overrides': {'horizon': 1000}})
    assert response.status_code == 200
    data = response.get_json()
    assert data['trials'] == 1
    assert data['frac_converged'] == 1.0
    assert len(data['mean_l1']) == 1000
    assert data['rate']['basis'] == 'quadratic'
    assert data['rate']['slope'] < 0


def test_trials_are_capped(client):
    response = client.post(f'{PREFIX}/experiments', json={
        'preset': 'zerosum',
        'overrides': {'trials': 50, 'horizon': 40, 'feedback': 'realization'},
    })
    assert response.status_code == 200
    data = response.get_json()
    assert data['trials'] == 3
    assert data['config']['trials'] == 3


def test_experiment_validation(client):
    response = client.post(f'{PREFIX}/experiments', json={'preset': 'single', 'overrides': {'eps': 2.0}})
    assert response.status_code == 400
    assert 'overrides' in response.get_json()['details']


def test_health(client):
    assert client.get(f'{PREFIX}/health').get_json()['status'] == 'ok'
    ready = client.get(f'{PREFIX}/health/ready')
    assert ready.status_code == 200
    assert ready.get_json()['checks']['solver']['status'] == 'pass'


def test_service_applies_app_settings():
    app = Flask(__name__)
    app.config['FTXL_DIVERGENCE_GUARD'] = 1.0
    app.config['FTXL_SEED'] = 4
    service = SimulationSvc(app)
    cfg, records, summary = service.run_preset('single', horizon=500)
    assert cfg.divergence_guard == 1.0
    assert cfg.master_seed == 4
    assert records[0].diverged
    assert summary.frac_converged == 0.0
