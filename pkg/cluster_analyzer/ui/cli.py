"""
Command Line Interface
Argument parsing into a validated run configuration
"""
import argparse
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from rich.console import Console

from .. import config
from ..config import (
    DEFAULT_INPUT,
    DEFAULT_X_COLUMN,
    DEFAULT_Y_COLUMN,
    EXPORT_SETTINGS,
    FUZZY_SETTINGS,
    KMEANS_SETTINGS,
    SUPPORTED_FORMATS,
    VERSION,
    create_default_settings_file,
)
from ..core.exceptions import ArgumentError

_RANGE_RE = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


@dataclass(frozen=True)
class RunConfig:
    """Everything one pipeline run needs"""
    input: Path = DEFAULT_INPUT
    x_col: str = DEFAULT_X_COLUMN
    y_col: str = DEFAULT_Y_COLUMN
    score_cols: Tuple[str, ...] = ()  # empty: just the x and y columns
    k: Optional[int] = None
    sweep: Optional[Tuple[int, int]] = None
    k_R: float = 1.5
    theta: float = 0.5
    seed: int = 0
    out: Optional[Path] = None  # None: environment / settings default
    formats: Tuple[str, ...] = ('json', 'csv', 'svg')
    queries: Tuple[int, ...] = ()
    points: Tuple[Tuple[float, float], ...] = ()
    n_restarts: int = 10
    max_iter: int = 300
    tol: float = 1e-6
    n_jobs: int = 1
    verbose: bool = False

    def __post_init__(self):
        if (self.k is None) == (self.sweep is None):
            raise ArgumentError("Exactly one of k and sweep must be set")
        if not self.k_R > 0:
            raise ArgumentError(f"k_R must be positive, got {self.k_R}")
        if not 0.0 <= self.theta <= 1.0:
            raise ArgumentError(f"theta must lie in [0, 1], got {self.theta}")
        unknown = [f for f in self.formats if f not in SUPPORTED_FORMATS]
        if unknown:
            raise ArgumentError(f"Unsupported formats: {', '.join(unknown)}")

    @property
    def columns(self) -> List[str]:
        """Numeric columns to load, x and y always included"""
        cols = list(self.score_cols)
        for name in (self.x_col, self.y_col):
            if name not in cols:
                cols.append(name)
        return cols


def parse_k_range(text: str) -> Tuple[int, int]:
    """
    Parse an inclusive range written "A..B"

    Examples:
        >>> parse_k_range("2..6")
        (2, 6)
    """
    match = _RANGE_RE.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    low, high = int(match.group(1)), int(match.group(2))
    if low > high:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return low, high


def parse_point(text: str) -> Tuple[float, float]:
    """Parse "X,Y" into a pair of floats"""
    parts = text.split(',')
    try:
        if len(parts) != 2:
            raise ValueError
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}")


def _split_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(',') if item.strip()]


class _InitSettingsAction(argparse.Action):
    """Write the default settings file and exit, like --version"""

    def __init__(self, option_strings, dest=argparse.SUPPRESS, default=argparse.SUPPRESS, help=None):
        super().__init__(option_strings=option_strings, dest=dest, default=default, nargs=0, help=help)

    def __call__(self, parser, namespace, values, option_string=None):
        if create_default_settings_file():
            parser.exit(0, f"✅ Created default settings file: {config.SETTINGS_FILE}\n")
        parser.exit(1, f"❌ Failed to create settings file: {config.SETTINGS_FILE}\n")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser; defaults come from the (user-adjusted) settings"""
    parser = argparse.ArgumentParser(
        prog='cluster-analyzer',
        description='K-Means clustering of score tables with fuzzy membership reports',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    parser.add_argument('--init-settings', action=_InitSettingsAction,
                        help=f'write the default settings file ({config.SETTINGS_FILE}) and exit')
    parser.add_argument('--input', type=Path, default=DEFAULT_INPUT,
                        help='CSV file with a header row (default: bundled sample)')
    parser.add_argument('--x-col', default=DEFAULT_X_COLUMN, help='column used as x')
    parser.add_argument('--y-col', default=DEFAULT_Y_COLUMN, help='column used as y')
    parser.add_argument('--score-cols', type=_split_list, default=[],
                        help='comma-separated numeric columns to load (default: x and y)')

    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--k', type=int, help='number of clusters')
    group.add_argument('--sweep', type=parse_k_range, metavar='A..B',
                       help='try every cluster count in A..B and keep the lowest F0/F1')

    parser.add_argument('--kr', type=float, default=FUZZY_SETTINGS['k_r'],
                        help='radius change factor k_R (default: %(default)s)')
    parser.add_argument('--theta', type=float, default=FUZZY_SETTINGS['theta'],
                        help='threshold for supplementary levels (default: %(default)s)')
    parser.add_argument('--seed', type=int, default=KMEANS_SETTINGS['seed'])
    parser.add_argument('--restarts', type=int, default=KMEANS_SETTINGS['n_restarts'])
    parser.add_argument('--max-iter', type=int, default=KMEANS_SETTINGS['max_iter'])
    parser.add_argument('--tol', type=float, default=KMEANS_SETTINGS['tol'])
    parser.add_argument('--jobs', type=int, default=KMEANS_SETTINGS['n_jobs'],
                        help='threads for K-Means restarts, 0 = auto-detect (default: %(default)s)')
    parser.add_argument('--out', type=Path, default=None, help='output directory')
    parser.add_argument('--formats', type=_split_list, default=list(EXPORT_SETTINGS['formats']),
                        help=f"comma-separated subset of {','.join(SUPPORTED_FORMATS)}")
    parser.add_argument('--query', type=int, action='append', default=[], metavar='I',
                        help='object number to profile (repeatable)')
    parser.add_argument('--point', type=parse_point, action='append', default=[], metavar='X,Y',
                        help='free point to profile, in original units (repeatable)')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """
    Parse command-line flags

    Usage errors (unknown flag, --k with --sweep, invalid values) print the
    help text and exit with status 2.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.k is not None and args.k < 1:
        parser.error(f"--k must be at least 1, got {args.k}")
    if not args.kr > 0:
        parser.error(f"--kr must be positive, got {args.kr}")
    if not 0.0 <= args.theta <= 1.0:
        parser.error(f"--theta must lie in [0, 1], got {args.theta}")
    if args.restarts < 1 or args.max_iter < 1:
        parser.error("--restarts and --max-iter must be positive")
    if args.jobs < 0:
        parser.error(f"--jobs must be non-negative, got {args.jobs}")
    if args.tol < 0:
        parser.error("--tol must be non-negative")
    if args.x_col == args.y_col:
        parser.error("--x-col and --y-col must differ")
    unknown = [f for f in args.formats if f not in SUPPORTED_FORMATS]
    if unknown:
        parser.error(f"unsupported format(s): {', '.join(unknown)}")

    return RunConfig(
        input=args.input,
        x_col=args.x_col,
        y_col=args.y_col,
        score_cols=tuple(args.score_cols),
        k=args.k,
        sweep=args.sweep,
        k_R=args.kr,
        theta=args.theta,
        seed=args.seed,
        out=args.out,
        formats=tuple(dict.fromkeys(args.formats)),
        queries=tuple(args.query),
        points=tuple(args.point),
        n_restarts=args.restarts,
        max_iter=args.max_iter,
        tol=args.tol,
        n_jobs=args.jobs,
        verbose=args.verbose,
    )


def show_banner(console: Optional[Console] = None):
    """Display application banner"""
    console = console or Console()
    console.rule(f"[bold]Fuzzy Cluster Analyzer v{VERSION}[/bold]")
    console.print("K-Means clustering | triangular fuzzy membership | difficulty recommendations",
                  justify="center", style="dim")
    console.rule()
