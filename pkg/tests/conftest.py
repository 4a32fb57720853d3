"""
Shared fixtures for the cluster analyzer test suite
"""
import csv
import itertools
import math
from pathlib import Path

import numpy as np
import pytest

from cluster_analyzer import config
from cluster_analyzer.data.dataset import FeatureView, load_csv

SCORE_COLUMNS = ['math score', 'reading score', 'writing score']

TRIANGLE = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.8660254037844386)]


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Keep the user's settings file and output directory out of every test"""
    monkeypatch.setattr(config, 'SETTINGS_FILE', tmp_path / 'no_settings')
    monkeypatch.delenv(config.OUTPUT_DIR_ENV, raising=False)


@pytest.fixture
def sample_csv() -> Path:
    """Bundled 31-row student score fragment"""
    return config.DEFAULT_INPUT


@pytest.fixture
def sample_dataset(sample_csv):
    return load_csv(sample_csv, SCORE_COLUMNS)


@pytest.fixture
def write_csv(tmp_path):
    """Write rows (header first) to a CSV file and return its path"""
    def _write(rows, name='data.csv'):
        path = tmp_path / name
        with open(path, 'w', newline='', encoding='utf-8') as f:
            csv.writer(f, lineterminator='\n').writerows(rows)
        return path
    return _write


def four_blob_points(spacing: float = 98.0):
    """Four unit equilateral triangles at the corners of a square"""
    points = []
    for ox, oy in [(0.0, 0.0), (spacing, 0.0), (0.0, spacing), (spacing, spacing)]:
        points.extend((ox + x, oy + y) for x, y in TRIANGLE)
    return points


@pytest.fixture
def four_blobs() -> FeatureView:
    return FeatureView.from_points(four_blob_points())


@pytest.fixture
def four_blob_csv(write_csv):
    rows = [['x', 'y']] + [[repr(x), repr(y)] for x, y in four_blob_points()]
    return write_csv(rows, 'blobs.csv')


def brute_force_quality(points, labels):
    """F0, F1 by explicit enumeration of unordered pairs"""
    intra, inter = [], []
    for i, j in itertools.combinations(range(len(points)), 2):
        d = math.sqrt((points[i][0] - points[j][0]) ** 2 + (points[i][1] - points[j][1]) ** 2)
        (intra if labels[i] == labels[j] else inter).append(d)
    f0 = sum(intra) / len(intra) if intra else 0.0
    f1 = sum(inter) / len(inter) if inter else None
    return f0, f1


def brute_force_partition(points, k):
    """Minimum-WCSS partition over every labeling into k non-empty groups"""
    pts = np.asarray(points, dtype=float)
    best, best_wcss = None, math.inf
    for labels in itertools.product(range(k), repeat=len(pts)):
        if labels[0] != 0 or len(set(labels)) != k:
            continue
        lab = np.array(labels)
        wcss = sum(float(np.sum((pts[lab == c] - pts[lab == c].mean(axis=0)) ** 2)) for c in range(k))
        if wcss < best_wcss - 1e-12:
            best, best_wcss = lab, wcss
    return as_partition(best), best_wcss


def as_partition(labels):
    """Label vector as a set of frozensets of positions"""
    groups = {}
    for pos, label in enumerate(labels):
        groups.setdefault(int(label), set()).add(pos)
    return {frozenset(g) for g in groups.values()}
