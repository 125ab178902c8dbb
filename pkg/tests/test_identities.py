import pytest

from backend.core.errors import ConfigError
from backend.models.checks import first_difference
from backend.models.identities import EVIDENCE, STATUSES, THEOREM, WINDOW_FIELDS, get_entry, registry

CHEAP = [
    ("nfactorial", {"K": 5}),
    ("classical-no", {"K": 4}),
    ("qtno", {"K": 2, "degree": 3, "u_window": 2}),
    ("fnm-forms", {"n": 1, "m": 1, "degree": 3}),
    ("jacobi-triple", {"K": 4, "degree": 4}),
    ("sl-dimension", {"p_max": 3, "size": 3}),
    ("hook-power-schur", {"p_max": 3, "size": 3}),
    ("elliptic-coefficients", {"p_max": 1, "degree": 2}),
]


def test_registry_contents():
    """Test ids are unique and every entry is well formed"""
    entries = registry()
    assert len(entries) >= 22
    assert len({e.id for e in entries.values()}) == len(entries)
    for entry_id, entry in entries.items():
        assert entry.id == entry_id
        assert entry.status in STATUSES
        assert entry.anchor
        assert set(entry.defaults) <= set(WINDOW_FIELDS)


def test_core_identities_are_theorems():
    """Test the statuses of a few entries"""
    assert get_entry("qtno").status == THEOREM
    assert get_entry("hrv-g2-polynomiality").status == EVIDENCE


def test_unknown_id():
    """Test lookups of ids that do not exist"""
    with pytest.raises(ConfigError):
        get_entry("nosuch")


def test_window_resolution():
    """Test entry defaults and caller overrides"""
    entry = get_entry("qtno")
    assert entry.windows().K == 3
    windows = entry.windows({"K": 2, "degree": None})
    assert windows.K == 2 and windows.degree == 8
    assert windows.as_dict()["u_window"] == windows.u_window


@pytest.mark.parametrize("overrides", [{"K": -1}, {"depth": 2}, {"degree": "8"}])
def test_bad_windows(overrides):
    """Test negative, unknown and non-integer windows"""
    with pytest.raises(ConfigError):
        get_entry("qtno").windows(overrides)


@pytest.mark.parametrize("entry_id,overrides", CHEAP)
def test_cheap_entries_pass(entry_id, overrides):
    """Test entries that run quickly at small windows"""
    entry = get_entry(entry_id)
    checks = entry.builder(entry.windows(overrides))
    assert checks
    assert [first_difference(c) for c in checks] == [None] * len(checks)


def test_fnm_forms_cover_the_grid():
    """Test fnm-forms walks every (a, b) up to (n, m), with the definition form up to def_nm"""
    entry = get_entry("fnm-forms")
    checks = entry.builder(entry.windows({"n": 2, "m": 1, "degree": 2}))
    labels = [c.label for c in checks]
    assert "(1,1) def = single_sum" in labels
    assert "(2,1) def = single_sum" in labels
    assert "(2,1) single_sum = hook_form" in labels
    assert [first_difference(c) for c in checks] == [None] * len(checks)
    capped = entry.builder(entry.windows({"n": 2, "m": 1, "degree": 2, "def_nm": 1}))
    labels = [c.label for c in capped]
    assert "(1,1) def = single_sum" in labels
    assert "(2,1) def = single_sum" not in labels
    assert "(2,1) single_sum = hook_form" in labels


def test_fnm_symmetry_covers_the_grid():
    """Test fnm-symmetry checks every (a, b) up to (n, m)"""
    entry = get_entry("fnm-symmetry")
    labels = {c.label.split(" ")[0] for c in entry.builder(entry.windows({"n": 2, "m": 1, "degree": 2}))}
    assert labels == {"(1,1)", "(2,1)"}


@pytest.mark.slow
@pytest.mark.parametrize("entry_id", list(registry()))
def test_entry_at_default_windows(entry_id):
    """Test every theorem entry at its default windows"""
    entry = get_entry(entry_id)
    diffs = [first_difference(c) for c in entry.builder(entry.windows())]
    if entry.status == THEOREM:
        assert diffs == [None] * len(diffs)
