"""Shared helpers for the test suite."""

from __future__ import annotations

import json
from pathlib import Path

from bluefish import compile_source

FIXTURES = Path(__file__).parent / "fixtures"


def compile_doc(doc: dict, registry=None):
    """Compile an in-memory document dict; returns (scene, diagnostics)."""
    return compile_source(json.dumps(doc).encode("utf-8"), registry)


def compile_fixture(name: str):
    return compile_source((FIXTURES / f"{name}.json").read_bytes())


def errors_of(diagnostics):
    return [d for d in diagnostics if d.severity == "error"]
