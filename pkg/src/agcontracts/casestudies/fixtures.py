"""Packaged JSON fixtures.

Each study is a directory under ``data/`` holding one contract document per
file and, for the fixed-point studies, a ``config.json``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ..contracts import IoContract
from ..serialization import load_contract

STUDIES = ("example1", "example2", "perception", "biosensor", "adders", "filter")


def data_dir() -> Path:
    return Path(str(resources.files(__package__) / "data"))


def fixture_path(study: str, name: str) -> Path:
    path = data_dir() / study / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no fixture {study}/{name}")
    return path


def names(study: str) -> list[str]:
    return sorted(p.stem for p in (data_dir() / study).glob("*.json") if p.stem != "config")


def contract(study: str, name: str) -> IoContract:
    return load_contract(fixture_path(study, name))


def contracts(study: str) -> dict[str, IoContract]:
    return {n: contract(study, n) for n in names(study)}


def config(study: str) -> dict:
    with open(fixture_path(study, "config"), encoding="utf-8") as f:
        return json.load(f)
