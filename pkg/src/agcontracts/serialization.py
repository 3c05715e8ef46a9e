"""JSON documents for contracts.

A document looks like::

    {
      "version": 1,
      "name": "buffer",
      "input_vars": ["i"],
      "output_vars": ["o"],
      "assumptions": ["i <= 2"],
      "guarantees": ["-1*i + o <= 0"]
    }

``version`` and ``name`` are optional; unknown keys are rejected.  Saved
documents use canonical term strings, so ``save(load(save(c)))`` is
byte-identical to ``save(c)``.
"""

from __future__ import annotations

import io
import json
import os
from typing import IO, Any

from .contracts import IoContract, validate
from .terms import TermList

VERSION = 1
KEYS = ("version", "name", "input_vars", "output_vars", "assumptions", "guarantees")
REQUIRED = ("input_vars", "output_vars", "assumptions", "guarantees")


class SchemaError(ValueError):
    pass


def _string_list(doc: dict, key: str) -> list[str]:
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"{key!r} must be a list of strings")
    return value


def contract_from_dict(doc: Any) -> tuple[IoContract, str | None]:
    if not isinstance(doc, dict):
        raise SchemaError("a contract document must be a JSON object")
    unknown = set(doc) - set(KEYS)
    if unknown:
        raise SchemaError(f"unknown keys: {sorted(unknown)}")
    missing = [k for k in REQUIRED if k not in doc]
    if missing:
        raise SchemaError(f"missing keys: {missing}")
    if doc.get("version", VERSION) != VERSION:
        raise SchemaError(f"unsupported version {doc['version']!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("'name' must be a string")
    c = IoContract(
        tuple(_string_list(doc, "input_vars")),
        tuple(_string_list(doc, "output_vars")),
        TermList.parse(_string_list(doc, "assumptions")),
        TermList.parse(_string_list(doc, "guarantees")),
    )
    validate(c)
    return c, name


def contract_to_dict(c: IoContract, name: str | None = None) -> dict:
    doc: dict[str, Any] = {"version": VERSION}
    if name is not None:
        doc["name"] = name
    doc["input_vars"] = list(c.inputs)
    doc["output_vars"] = list(c.outputs)
    doc["assumptions"] = c.assumptions.strings()
    doc["guarantees"] = c.guarantees.strings()
    return doc


def dumps(c: IoContract, name: str | None = None) -> str:
    return json.dumps(contract_to_dict(c, name), indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> IoContract:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return contract_from_dict(doc)[0]


def load_contract(source: str | os.PathLike | IO[str]) -> IoContract:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return loads(fh.read())
    return loads(source.read())


def load_named(source: str | os.PathLike) -> tuple[IoContract, str | None]:
    with open(source, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return contract_from_dict(doc)


def save_contract(c: IoContract, target: str | os.PathLike | IO[str], name: str | None = None) -> None:
    validate(c)
    text = dumps(c, name)
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        target.write(text)


def roundtrip(c: IoContract) -> IoContract:
    return load_contract(io.StringIO(dumps(c)))
