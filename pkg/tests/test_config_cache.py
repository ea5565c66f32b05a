from fractions import Fraction

import pytest

from core import config
from core.report_cache import (
    clear_report_cache,
    get_cache_path,
    get_cached_report,
    save_cached_report,
)
from core.utils import deep_make_json_safe, fraction_to_text, make_rng, parse_fraction, random_rational


@pytest.fixture
def results_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "RESULTS_DIR", tmp_path)
    return tmp_path


def test_settings_are_valid():
    assert config.ensure_settings()
    summary = config.settings_summary()
    assert summary["default_seed"] == config.DEFAULT_SEED
    assert summary["suites_dir"].endswith("verification_yaml")


def test_invalid_settings_are_reported(monkeypatch):
    monkeypatch.setattr(config, "RANDOM_TRIALS", 0)
    monkeypatch.setattr(config, "DEFAULT_SEED", -3)
    with pytest.raises(RuntimeError) as info:
        config.ensure_settings()
    assert "DIVLIE_RANDOM_TRIALS" in str(info.value)
    assert "DIVLIE_DEFAULT_SEED" in str(info.value)


def test_safe_setting_prefers_environment(monkeypatch):
    monkeypatch.setenv("DIVLIE_TEST_SETTING", "on")
    assert config.safe_setting("DIVLIE_TEST_SETTING") == "on"
    monkeypatch.delenv("DIVLIE_TEST_SETTING")
    assert config.safe_setting("DIVLIE_TEST_SETTING", "fallback") == "fallback"


def test_cache_path_keys(results_dir):
    path = get_cache_path("gen-div0", 2, 4, 7)
    assert path.endswith("gen_div0_n2_D4_s7.json")
    assert get_cache_path("weights", 2, 4, 7, 50).endswith("weights_n2_D4_s7_t50.json")


def test_cache_round_trip(results_dir):
    report = {"theorem": "cartan", "n": 2, "cutoff": 3, "status": "pass", "checks": []}
    assert get_cached_report("cartan", 2, 3, 1) is None
    save_cached_report(report, 1)
    assert get_cached_report("cartan", 2, 3, 1) == report
    assert get_cached_report("cartan", 2, 3, 2) is None


def test_unreadable_cache_entry_is_a_miss(results_dir):
    path = get_cache_path("cartan", 2, 3, 1)
    (results_dir / "cache").mkdir()
    with open(path, "w", encoding="utf-8") as f:
        f.write("{not json")
    assert get_cached_report("cartan", 2, 3, 1) is None


def test_clear_cache(results_dir):
    base = {"n": 2, "cutoff": 3, "status": "pass", "checks": []}
    save_cached_report({**base, "theorem": "cartan"}, 1)
    save_cached_report({**base, "theorem": "gen-div0"}, 1)
    assert clear_report_cache("cartan") == 1
    assert get_cached_report("gen-div0", 2, 3, 1) is not None
    assert clear_report_cache() == 1


def test_fraction_text():
    assert fraction_to_text(Fraction(-3, 6)) == "-1/2"
    assert fraction_to_text(4) == "4"
    assert parse_fraction(" 2/4 ") == Fraction(1, 2)
    for bad in (0.5, True, "1/0", "abc", None):
        with pytest.raises(ValueError):
            parse_fraction(bad)


def test_json_safety():
    doc = deep_make_json_safe({"a": (Fraction(1, 3), 2), 3: [Fraction(2)]})
    assert doc == {"a": ["1/3", 2], "3": ["2"]}


def test_random_rationals_are_seeded():
    rng_a, rng_b = make_rng(9), make_rng(9)
    first = [random_rational(rng_a) for _ in range(3)]
    second = [random_rational(rng_b) for _ in range(3)]
    assert first == second
    rng = make_rng(1)
    values = [random_rational(rng, bound=2) for _ in range(20)]
    assert all(abs(v) <= 2 for v in values)
