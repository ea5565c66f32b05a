# core/report_cache.py
"""
Cache for verification reports.

Reports are deterministic for a given (theorem, n, cutoff, seed, trials),
so a cached file never goes stale; it is only replaced when
``clear_report_cache`` removes it.
"""

import glob
import json
import os
from datetime import datetime
from typing import Optional

from core import config
from core.utils import status


def _cache_dir() -> str:
    return os.path.join(str(config.RESULTS_DIR), "cache")


def _ensure_cache_dir():
    """Ensure the cache directory exists."""
    os.makedirs(_cache_dir(), exist_ok=True)


def _safe_tag(theorem: str) -> str:
    """Normalize a theorem tag to a filesystem-safe representation."""
    return theorem.lower().replace(" ", "_").replace("-", "_")


def get_cache_path(theorem: str, n: int, cutoff: int, seed: int, trials: Optional[int] = None) -> str:
    """Path of the cached report for one verification run."""
    name = f"{_safe_tag(theorem)}_n{n}_D{cutoff}_s{seed}"
    if trials is not None:
        name += f"_t{trials}"
    return os.path.join(_cache_dir(), f"{name}.json")


def get_cached_report(theorem: str, n: int, cutoff: int, seed: int, trials: Optional[int] = None) -> Optional[dict]:
    """
    Load a cached report.

    Parameters
    ----------
    theorem : str
        Verification tag (e.g., "gen-div0")
    n, cutoff, seed, trials
        The run parameters that key the cache

    Returns
    -------
    dict or None
        The report dictionary, or None when absent or unreadable.
    """
    cache_path = get_cache_path(theorem, n, cutoff, seed, trials)

    if not os.path.exists(cache_path):
        status(f"📦 No cached report for {theorem} (n={n}, D={cutoff})")
        return None

    try:
        with open(cache_path, "r", encoding="utf-8") as f:
            cache_data = json.load(f)
        status(f"✅ Using cached report for {theorem} (cached at {cache_data.get('cached_at', 'unknown')})")
        return cache_data["report"]
    except (json.JSONDecodeError, KeyError) as e:
        status(f"⚠️ Error reading cached report {cache_path}: {e}")
        return None


def save_cached_report(report: dict, seed: int, trials: Optional[int] = None) -> str:
    """
    Save a report dictionary; returns the file path.

    Parameters
    ----------
    report : dict
        Output of ``VerificationReport.to_dict()``
    seed : int
        Seed the report was produced with
    trials : int, optional
        Trial count for randomized checks
    """
    _ensure_cache_dir()
    cache_path = get_cache_path(report["theorem"], report["n"], report["cutoff"], seed, trials)

    cache_data = {
        "cached_at": datetime.now().isoformat(),
        "report": report,
    }

    with open(cache_path, "w", encoding="utf-8") as f:
        json.dump(cache_data, f, indent=2, sort_keys=True)

    status(f"📦 Cached report for {report['theorem']} at {cache_path}")
    return cache_path


def clear_report_cache(theorem: Optional[str] = None) -> int:
    """
    Delete cached reports, all of them or those of one theorem.

    Returns
    -------
    int
        Number of files removed.
    """
    pattern = f"{_safe_tag(theorem)}_n*.json" if theorem else "*.json"
    removed = 0
    for path in glob.glob(os.path.join(_cache_dir(), pattern)):
        os.remove(path)
        removed += 1
    if removed:
        status(f"🗑️ Cleared {removed} cached report(s)")
    return removed
