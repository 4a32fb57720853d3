"""
Cluster Analyzer Configuration
Centralized configuration for clustering, fuzzy membership and report settings
"""
from pathlib import Path
import json
import os
from typing import Dict, Any, Optional

from .utils.log import get_logger

logger = get_logger(__name__)

# Version
VERSION = "1.0.0"
LICENSE = "GPL v3"

# File paths
HOME_DIR = Path.home()
PACKAGE_DIR = Path(__file__).parent
SETTINGS_FILE = HOME_DIR / '.cluster_analyzer'
DEFAULT_INPUT = PACKAGE_DIR / 'data' / 'students_sample.csv'
OUTPUT_DIR_ENV = 'CLUSTER_ANALYZER_OUTPUT_DIR'

# Reference schema ("students performance in exams")
REFERENCE_SCORE_COLUMNS = ['math score', 'reading score', 'writing score']
DEFAULT_X_COLUMN = 'math score'
DEFAULT_Y_COLUMN = 'reading score'
SCORE_RANGE = (0.0, 100.0)

# Feature scaling: ranges may differ by at most one order of magnitude
SCALING_RATIO_LIMIT = 10.0

# K-Means settings
KMEANS_SETTINGS = {
    'n_restarts': 10,
    'max_iter': 300,
    'tol': 1e-6,
    'seed': 0,
    'n_jobs': 1,            # >1 runs restarts on a thread pool
}

# Fuzzy membership settings
FUZZY_SETTINGS = {
    'k_r': 1.5,             # radius change factor
    'theta': 0.5,           # supplementary recommendation threshold
}

# Semantic labels used when the model has exactly four clusters
FOUR_LEVEL_LABELS = ['low', 'below average', 'average', 'high']

# Export settings
EXPORT_SETTINGS = {
    'significant_digits': 6,
    'formats': ['json', 'csv', 'svg'],
    'output_dir': 'cluster_output',
    'report_basename': 'cluster_report',
}
SUPPORTED_FORMATS = ['json', 'csv', 'svg', 'xlsx']

# SVG rendering (matplotlib)
SVG_SETTINGS = {
    'width': 640,           # pixels at dpi
    'height': 480,
    'dpi': 100,
    'marker_size': 5,
    'hashsalt': 'cluster-analyzer',  # fixed salt keeps generated ids stable
    'palette': [
        '#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
        '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf',
    ],
}


# ============================================================================
# SETTINGS FILE SUPPORT
# ============================================================================

def load_user_settings() -> Dict[str, Any]:
    """
    Load user settings from ~/.cluster_analyzer

    Settings file format (JSON):
    {
        "kmeans": {"n_restarts": 20, "seed": 7},
        "fuzzy": {"k_r": 2.0, "theta": 0.4},
        "export": {"formats": ["json", "svg"], "output_dir": "results"}
    }
    """
    if not SETTINGS_FILE.exists():
        return {}

    try:
        with open(SETTINGS_FILE, 'r', encoding='utf-8') as f:
            settings = json.load(f)
    except (OSError, ValueError) as e:
        logger.warning("Failed to load settings from %s: %s", SETTINGS_FILE, e)
        return {}

    if not isinstance(settings, dict):
        logger.warning("Ignoring settings file %s: top level is not an object", SETTINGS_FILE)
        return {}
    return settings


def apply_user_settings(settings: Dict[str, Any]):
    """Apply user settings to override defaults (known keys only)"""
    sections = {
        'kmeans': KMEANS_SETTINGS,
        'fuzzy': FUZZY_SETTINGS,
        'export': EXPORT_SETTINGS,
        'svg': SVG_SETTINGS,
    }

    for name, target in sections.items():
        overrides = settings.get(name)
        if not isinstance(overrides, dict):
            continue
        for key, value in overrides.items():
            if key in target:
                target[key] = value
            else:
                logger.debug("Ignoring unknown setting %s.%s", name, key)


def create_default_settings_file() -> bool:
    """
    Write a settings file holding the current defaults

    Returns:
        True if the file was written, False otherwise
    """
    default_settings = {
        "_comment": "Cluster Analyzer User Settings",
        "_note": "Customize these values to override defaults; unknown keys are ignored",
        "kmeans": dict(KMEANS_SETTINGS),
        "fuzzy": dict(FUZZY_SETTINGS),
        "export": dict(EXPORT_SETTINGS),
        "svg": {key: value for key, value in SVG_SETTINGS.items() if key != 'palette'},
    }

    try:
        with open(SETTINGS_FILE, 'w', encoding='utf-8') as f:
            json.dump(default_settings, f, indent=2)
            f.write("\n")
    except OSError as e:
        logger.error("Failed to create settings file %s: %s", SETTINGS_FILE, e)
        return False
    logger.info("Created default settings file: %s", SETTINGS_FILE)
    return True


def default_output_dir() -> Path:
    """Output directory from the environment, falling back to the export settings"""
    env_dir: Optional[str] = os.environ.get(OUTPUT_DIR_ENV)
    if env_dir:
        return Path(env_dir)
    return Path(EXPORT_SETTINGS['output_dir'])


def get_settings_info() -> Dict[str, Any]:
    """Get information about current settings"""
    return {
        'settings_file': str(SETTINGS_FILE),
        'exists': SETTINGS_FILE.exists(),
        'default_input': str(DEFAULT_INPUT),
        'output_dir': str(default_output_dir()),
        'kmeans': KMEANS_SETTINGS.copy(),
        'fuzzy': FUZZY_SETTINGS.copy(),
        'export': EXPORT_SETTINGS.copy(),
    }
