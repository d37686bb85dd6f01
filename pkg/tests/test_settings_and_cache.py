import pytest

from services.settings import Settings, configure, get_settings, load_settings
from utils.cache_helper import MemoTable, clear_all_caches, get_cache_stats, get_table


@pytest.fixture
def no_config_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_defaults_use_cpu_count(no_config_file, monkeypatch):
    monkeypatch.setattr("os.cpu_count", lambda: 6)
    settings = load_settings()
    assert settings.threads == 6
    assert settings.seed == Settings().seed


def test_environment_overrides_defaults(no_config_file, monkeypatch):
    monkeypatch.setenv("BIZON_THREADS", "3")
    monkeypatch.setenv("BIZON_SEED", "99")
    settings = load_settings()
    assert (settings.threads, settings.seed) == (3, 99)


def test_explicit_values_win(no_config_file, monkeypatch):
    monkeypatch.setenv("BIZON_THREADS", "3")
    settings = load_settings(threads=2, seed=5)
    assert (settings.threads, settings.seed) == (2, 5)


def test_bad_environment_value_is_ignored(no_config_file, monkeypatch):
    monkeypatch.setenv("BIZON_SEED", "abc")
    assert load_settings().seed == Settings().seed


def test_threads_clamped_to_one(no_config_file):
    assert load_settings(threads=0).threads == 1


def test_config_file(tmp_path, monkeypatch):
    path = tmp_path / "custom.toml"
    path.write_text("[bizon]\nthreads = 4\nmax_basis = 50\nunknown_key = 1\n")
    monkeypatch.setenv("BIZON_CONFIG", str(path))
    settings = load_settings()
    assert settings.threads == 4
    assert settings.max_basis == 50


def test_default_config_file_in_working_directory(no_config_file):
    (no_config_file / "bizon.toml").write_text("[bizon]\nseed = 7\n")
    assert load_settings().seed == 7


def test_unreadable_config_file_is_ignored(tmp_path, monkeypatch):
    path = tmp_path / "broken.toml"
    path.write_text("[bizon\nthreads = ")
    monkeypatch.setenv("BIZON_CONFIG", str(path))
    assert load_settings(threads=1).max_basis == Settings().max_basis


def test_configure_replaces_current_settings():
    configure(Settings(max_box=12))
    assert get_settings().max_box == 12


def test_memo_table_counts_hits_and_misses():
    table = MemoTable("unit")
    assert table.get_or_compute(("k", 1), lambda: 10) == 10
    assert table.get_or_compute(("k", 1), lambda: 20) == 10
    assert table.stats() == {"entries": 1, "hits": 1, "misses": 1}
    assert table.get(("k", 1)) == 10


def test_memo_table_invalidate_with_predicate():
    table = MemoTable("unit")
    for r in range(4):
        table.set(("g", r), r)
    assert table.invalidate(lambda key: key[1] >= 2) == 2
    assert len(table) == 2
    assert table.invalidate() == 2
    assert len(table) == 0


def test_shared_tables():
    first = get_table("shared")
    assert get_table("shared") is first
    first.set("x", 1)
    assert get_cache_stats()["shared"]["entries"] == 1
    clear_all_caches()
    assert len(first) == 0
