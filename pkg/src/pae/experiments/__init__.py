from pae.experiments.config import SweepConfig, load_config
from pae.experiments.diagnostics import (
    DegreeTailReport,
    MartingaleReport,
    degree_tail_diagnostic,
    martingale_diagnostic,
)
from pae.experiments.ensemble import read_records, run_ensemble
from pae.experiments.fitting import ExponentFit, FitError, fit_exponent, theory_exponent
from pae.experiments.report import report

__all__ = [
    "DegreeTailReport",
    "ExponentFit",
    "FitError",
    "MartingaleReport",
    "SweepConfig",
    "degree_tail_diagnostic",
    "fit_exponent",
    "load_config",
    "martingale_diagnostic",
    "read_records",
    "report",
    "run_ensemble",
    "theory_exponent",
]
