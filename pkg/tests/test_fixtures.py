import json

import pytest

from agcontracts import validate
from agcontracts.casestudies import fixtures
from agcontracts.casestudies.runner import STUDIES, run
from agcontracts.serialization import dumps, load_named, loads

ALL = [(s, n) for s in fixtures.STUDIES for n in fixtures.names(s)]


def test_every_study_ships_something():
    for study in fixtures.STUDIES:
        assert fixtures.names(study) or fixtures.fixture_path(study, "config")


@pytest.mark.parametrize(("study", "name"), ALL, ids=[f"{s}/{n}" for s, n in ALL])
def test_fixture_loads_validates_and_round_trips(study, name):
    path = fixtures.fixture_path(study, name)
    c, label = load_named(path)
    validate(c)
    text = dumps(c, label)
    assert loads(text) == c
    assert dumps(loads(text), label) == text


def test_missing_fixture():
    with pytest.raises(KeyError):
        fixtures.fixture_path("example1", "nope")


def test_configs_are_json():
    for study in ("adders", "filter"):
        cfg = fixtures.config(study)
        assert "formats" in cfg and "expected" in cfg
        json.dumps(cfg)


def test_example1_fixture_is_verbatim():
    c = fixtures.contract("example1", "c")
    assert (c.inputs, c.outputs) == (("i",), ("o",))
    assert c.assumptions.strings() == ["i <= 2"]


@pytest.mark.parametrize("study", sorted(set(STUDIES) - {"biosensor"}))
def test_study_checks_pass(study):
    failed = [c.line() for c in run(study) if not c.ok]
    assert not failed, failed


def test_biosensor_runs_and_reports():
    checks = run("biosensor")
    assert len(checks) == 5
    assert all(c.line().startswith(("PASS", "FAIL")) for c in checks)
