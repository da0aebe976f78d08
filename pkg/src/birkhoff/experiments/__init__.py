"""Configuration, figure data, oracle references and the regression store."""

from .config import ExperimentConfig, parse_observable, parse_rotation, parse_x0
from .figures import FIGURES, run_figure
from .oracle import DEFAULT_PROVENANCE, load_provenance, run_oracle
from .regression import GoldenRecord, RegressionReport, run_regression
from .thresholds import THRESHOLDS
