"""
Tests for argument parsing, settings and the end-to-end pipeline
"""
import argparse
import io
import json
import logging
from pathlib import Path

import pytest
from rich.console import Console
from rich.logging import RichHandler

from cluster_analyzer import config
from cluster_analyzer.core.exceptions import ArgumentError
from cluster_analyzer.main import main, run
from cluster_analyzer.ui.cli import RunConfig, parse_args, parse_k_range, parse_point


def quiet_console():
    return Console(file=io.StringIO(), width=120)


class TestParseArgs:
    def test_defaults(self):
        cfg = parse_args(['--k', '4'])
        assert cfg.k == 4 and cfg.sweep is None
        assert cfg.input == config.DEFAULT_INPUT
        assert (cfg.x_col, cfg.y_col) == ('math score', 'reading score')
        assert cfg.k_R == 1.5 and cfg.theta == 0.5 and cfg.seed == 0
        assert cfg.formats == ('json', 'csv', 'svg')
        assert cfg.columns == ['math score', 'reading score']

    def test_full_flags(self):
        cfg = parse_args(['--sweep', '2..6', '--kr', '2', '--theta', '0.4', '--seed', '7',
                          '--query', '3', '--query', '12', '--point', '50,60',
                          '--formats', 'json,xlsx', '--score-cols', 'writing score'])
        assert cfg.sweep == (2, 6) and cfg.k is None
        assert cfg.queries == (3, 12)
        assert cfg.points == ((50.0, 60.0),)
        assert cfg.formats == ('json', 'xlsx')
        assert cfg.columns == ['writing score', 'math score', 'reading score']

    def test_jobs_zero_means_auto(self):
        assert parse_args(['--k', '4', '--jobs', '0']).n_jobs == 0

    @pytest.mark.parametrize('argv', [
        ['--k', '4', '--sweep', '2..6'],
        [],
        ['--k', '4', '--kr', '-1'],
        ['--k', '0'],
        ['--k', '4', '--theta', '1.5'],
        ['--sweep', '6..2'],
        ['--sweep', 'two'],
        ['--k', '4', '--formats', 'pdf'],
        ['--k', '4', '--x-col', 'a', '--y-col', 'a'],
        ['--k', '4', '--point', '1;2'],
        ['--k', '4', '--jobs', '-1'],
    ])
    def test_usage_errors(self, argv, capsys):
        with pytest.raises(SystemExit) as excinfo:
            parse_args(argv)
        assert excinfo.value.code == 2

    def test_run_config_validation(self):
        with pytest.raises(ArgumentError):
            RunConfig()
        with pytest.raises(ArgumentError):
            RunConfig(k=4, theta=2.0)


class TestParsers:
    def test_k_range(self):
        assert parse_k_range('2..6') == (2, 6)
        assert parse_k_range(' 3 .. 3 ') == (3, 3)

    @pytest.mark.parametrize('text', ['2-6', '6..2', '..3', 'a..b'])
    def test_bad_k_range(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_k_range(text)

    def test_point(self):
        assert parse_point('40,52.5') == (40.0, 52.5)
        with pytest.raises(argparse.ArgumentTypeError):
            parse_point('40')


class TestMain:
    def test_sample_run(self, tmp_path):
        out = tmp_path / 'out'
        assert main(['--k', '4', '--query', '12', '--out', str(out)]) == 0
        for name in ('cluster_report.json', 'cluster_report.csv', 'clusters.svg',
                     'membership_i12_rho.svg', 'membership_i12_x.svg',
                     'membership_i12_y.svg', 'degrees_i12.svg'):
            assert (out / name).exists(), name

        payload = json.loads((out / 'cluster_report.json').read_text(encoding='utf-8'))
        assert payload['config']['Q'] == 31
        assert payload['profiles'][0]['object'] == 12
        assert payload['provenance']['input'] == 'students_sample.csv'

    def test_run_without_queries(self, tmp_path):
        out = tmp_path / 'out'
        assert main(['--k', '3', '--formats', 'svg', '--out', str(out)]) == 0
        assert sorted(p.name for p in out.iterdir()) == [
            'clusters.svg', 'membership_rho.svg', 'membership_x.svg', 'membership_y.svg',
        ]

    def test_deterministic_outputs(self, tmp_path):
        for name in ('a', 'b'):
            assert main(['--k', '4', '--query', '12', '--point', '70,70',
                         '--out', str(tmp_path / name)]) == 0
        for path in sorted((tmp_path / 'a').iterdir()):
            assert path.read_bytes() == (tmp_path / 'b' / path.name).read_bytes(), path.name

    def test_missing_input(self, tmp_path, capsys):
        missing = tmp_path / 'missing.csv'
        assert main(['--k', '4', '--input', str(missing), '--out', str(tmp_path)]) == 3
        assert 'missing.csv' in capsys.readouterr().err

    def test_header_only(self, tmp_path, write_csv):
        path = write_csv([['math score', 'reading score']])
        assert main(['--k', '2', '--input', str(path), '--out', str(tmp_path)]) == 4

    def test_missing_column(self, tmp_path, write_csv):
        path = write_csv([['math score', 'writing score'], ['50', '60']])
        assert main(['--k', '1', '--input', str(path), '--out', str(tmp_path)]) == 5

    def test_bad_cell(self, tmp_path, write_csv, capsys):
        path = write_csv([['math score', 'reading score'], ['50', '60'], ['abc', '70']])
        assert main(['--k', '1', '--input', str(path), '--out', str(tmp_path)]) == 6
        assert 'Row 2' in capsys.readouterr().err

    def test_query_out_of_range(self, tmp_path):
        assert main(['--k', '4', '--query', '32', '--out', str(tmp_path)]) == 7

    def test_too_many_clusters(self, tmp_path):
        assert main(['--k', '40', '--out', str(tmp_path)]) == 7


class TestRun:
    def test_sweep_selects_four_blobs(self, four_blob_csv, tmp_path):
        cfg = RunConfig(input=four_blob_csv, x_col='x', y_col='y', sweep=(2, 6),
                        out=tmp_path, formats=('json',))
        result = run(cfg, quiet_console())
        assert result.report.selected_k == 4
        assert result.report.Q_k == 4
        assert len(result.report.sweep) == 5

        payload = json.loads(result.files[0].read_text(encoding='utf-8'))
        assert payload['sweep']['selected_k'] == 4
        assert [e['k'] for e in payload['sweep']['entries']] == [2, 3, 4, 5, 6]
        assert payload['config']['Q_k'] == 4

    def test_output_dir_from_environment(self, tmp_path, monkeypatch):
        target = tmp_path / 'env_out'
        monkeypatch.setenv(config.OUTPUT_DIR_ENV, str(target))
        result = run(RunConfig(k=4, formats=('csv',)), quiet_console())
        assert result.files == [target / 'cluster_report.csv']
        assert result.files[0].exists()

    def test_excel_output(self, tmp_path):
        pytest.importorskip('openpyxl')
        result = run(RunConfig(k=4, out=tmp_path, formats=('xlsx',)), quiet_console())
        assert result.files == [tmp_path / 'cluster_report.xlsx']


class TestSettings:
    def test_no_settings_file(self):
        assert config.load_user_settings() == {}

    def test_load_and_apply(self, tmp_path, monkeypatch):
        settings_file = tmp_path / 'settings.json'
        settings_file.write_text(json.dumps({
            'kmeans': {'n_restarts': 3, 'unknown': 1},
            'fuzzy': {'k_r': 2.0},
            'export': 'not a section',
        }))
        monkeypatch.setattr(config, 'SETTINGS_FILE', settings_file)
        monkeypatch.setattr(config, 'KMEANS_SETTINGS', dict(config.KMEANS_SETTINGS))
        monkeypatch.setattr(config, 'FUZZY_SETTINGS', dict(config.FUZZY_SETTINGS))

        config.apply_user_settings(config.load_user_settings())
        assert config.KMEANS_SETTINGS['n_restarts'] == 3
        assert 'unknown' not in config.KMEANS_SETTINGS
        assert config.FUZZY_SETTINGS['k_r'] == 2.0

    def test_malformed_settings(self, tmp_path, monkeypatch):
        settings_file = tmp_path / 'settings.json'
        settings_file.write_text('{not json')
        monkeypatch.setattr(config, 'SETTINGS_FILE', settings_file)
        assert config.load_user_settings() == {}

    def test_environment_overrides_output_dir(self, monkeypatch):
        monkeypatch.setenv(config.OUTPUT_DIR_ENV, '/tmp/elsewhere')
        assert config.default_output_dir() == Path('/tmp/elsewhere')
        monkeypatch.delenv(config.OUTPUT_DIR_ENV)
        assert config.default_output_dir() == Path(config.EXPORT_SETTINGS['output_dir'])

    def test_default_settings_file_round_trip(self, tmp_path, monkeypatch):
        settings_file = tmp_path / 'settings.json'
        monkeypatch.setattr(config, 'SETTINGS_FILE', settings_file)
        assert config.create_default_settings_file()

        settings = config.load_user_settings()
        assert settings['kmeans']['n_restarts'] == config.KMEANS_SETTINGS['n_restarts']
        assert settings['fuzzy'] == config.FUZZY_SETTINGS

    def test_init_settings_flag(self, tmp_path, monkeypatch, capsys):
        settings_file = tmp_path / 'settings.json'
        monkeypatch.setattr(config, 'SETTINGS_FILE', settings_file)
        with pytest.raises(SystemExit) as excinfo:
            parse_args(['--init-settings'])
        assert excinfo.value.code == 0
        assert settings_file.exists()
        assert 'settings.json' in capsys.readouterr().err

    def test_malformed_settings_warning_reaches_stderr(self, tmp_path, monkeypatch, capsys):
        settings_file = tmp_path / 'settings.json'
        settings_file.write_text('{not json')
        monkeypatch.setattr(config, 'SETTINGS_FILE', settings_file)

        assert main(['--k', '4', '--formats', 'json', '--out', str(tmp_path / 'out')]) == 0
        assert 'Failed to load settings' in capsys.readouterr().err

    def test_verbose_flag_applies_after_settings(self, tmp_path):
        assert main(['--k', '4', '-v', '--formats', 'json', '--out', str(tmp_path)]) == 0
        root = logging.getLogger('cluster_analyzer')
        assert root.level == logging.DEBUG
        assert sum(isinstance(h, RichHandler) for h in root.handlers) == 1

    def test_logging_ready_before_settings_load(self, tmp_path, monkeypatch):
        root = logging.getLogger('cluster_analyzer')
        for handler in list(root.handlers):
            root.removeHandler(handler)
        seen = []

        def load_user_settings():
            seen.append([type(h) for h in root.handlers])
            return {}

        monkeypatch.setattr('cluster_analyzer.main.load_user_settings', load_user_settings)
        assert main(['--k', '4', '--formats', 'json', '--out', str(tmp_path)]) == 0
        assert seen == [[RichHandler]]
