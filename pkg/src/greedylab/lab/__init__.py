"""Experiment orchestration, file formats and the command-line interface."""
from .config import ExperimentSpec, SpecError
from .experiments import PhaseCell, recover, run_audit, run_phase
