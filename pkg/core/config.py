"""Central configuration for divlie runs, caches and randomized suites."""

import os
import sys
from pathlib import Path


def safe_setting(key, default=""):
    """Fetch a setting from the environment, falling back to Streamlit secrets."""
    value = os.getenv(key)
    if value is not None:
        return value
    # Secrets only exist while the dashboard is running
    if "streamlit" in sys.modules:
        try:
            return sys.modules["streamlit"].secrets.get(key, default)
        except Exception:
            return default
    return default


def _as_bool(value) -> bool:
    return str(value).strip().lower() in {"1", "true", "yes", "on"}


def _as_int(value, default: int) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        return default


PROJECT_ROOT = Path(__file__).resolve().parents[1]

VERBOSE = _as_bool(safe_setting("DIVLIE_VERBOSE", "false"))
DEFAULT_SEED = _as_int(safe_setting("DIVLIE_DEFAULT_SEED", "20130316"), 20130316)
RESULTS_DIR = Path(safe_setting("DIVLIE_RESULTS_DIR", str(PROJECT_ROOT / "verification_results")))
SIMPLICITY_SAMPLES = _as_int(safe_setting("DIVLIE_SIMPLICITY_SAMPLES", "20"), 20)
RANDOM_TRIALS = _as_int(safe_setting("DIVLIE_RANDOM_TRIALS", "200"), 200)
SUITES_DIR = PROJECT_ROOT / "verification_yaml"


def ensure_settings():
    """
    Validate the active settings.

    Raises a RuntimeError naming every invalid setting.
    """
    problems = []
    if DEFAULT_SEED < 0:
        problems.append(f"DIVLIE_DEFAULT_SEED must be >= 0, got {DEFAULT_SEED}")
    if SIMPLICITY_SAMPLES < 0:
        problems.append(f"DIVLIE_SIMPLICITY_SAMPLES must be >= 0, got {SIMPLICITY_SAMPLES}")
    if RANDOM_TRIALS < 1:
        problems.append(f"DIVLIE_RANDOM_TRIALS must be >= 1, got {RANDOM_TRIALS}")
    if RESULTS_DIR.exists() and not RESULTS_DIR.is_dir():
        problems.append(f"DIVLIE_RESULTS_DIR is not a directory: {RESULTS_DIR}")

    if problems:
        raise RuntimeError("Invalid divlie settings: " + "; ".join(problems))

    return True


def settings_summary():
    """Return a summary of the active settings for display."""
    return {
        "verbose": VERBOSE,
        "default_seed": DEFAULT_SEED,
        "results_dir": str(RESULTS_DIR),
        "simplicity_samples": SIMPLICITY_SAMPLES,
        "random_trials": RANDOM_TRIALS,
        "suites_dir": str(SUITES_DIR),
    }
