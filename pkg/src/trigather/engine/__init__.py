"""Simulation engine: schedulers, rounds, monitors and model checking."""
from trigather.engine.adversary import AdversaryReport, SearchBudgetExceeded, exhaustive_adversary
from trigather.engine.core import DisconnectedError, Outcome, RoundRecord, Trace, epoch_count, run, step
from trigather.engine.monitors import Violation, check_round_invariants
from trigather.engine.schedulers import Fsync, RandomFair, RoundRobin, Scheduler, Scripted, parse_scheduler
from trigather.engine.symmetry import symmetry_deadlock_check

__all__ = [
    "AdversaryReport",
    "DisconnectedError",
    "Fsync",
    "Outcome",
    "RandomFair",
    "RoundRecord",
    "RoundRobin",
    "Scheduler",
    "Scripted",
    "SearchBudgetExceeded",
    "Trace",
    "Violation",
    "check_round_invariants",
    "epoch_count",
    "exhaustive_adversary",
    "parse_scheduler",
    "run",
    "step",
    "symmetry_deadlock_check",
]
