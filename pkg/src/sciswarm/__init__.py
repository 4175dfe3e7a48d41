"""Deterministic simulator of a swarm of virtual labs."""

from .config import RunConfig, load_config
from .runner import RunSummary, Simulation, run

__all__ = ["RunConfig", "RunSummary", "Simulation", "load_config", "run"]
__version__ = "0.1.0"
