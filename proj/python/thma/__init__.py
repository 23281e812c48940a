"""Finite categories, nerves and homology checks.

Documents are passed as dicts or JSON strings; reports come back as dicts.
"""

import json

from . import _thma
from ._thma import (
    AxiomViolation,
    BudgetExceeded,
    ConsistencyFault,
    DocumentError,
    Error,
    InvalidArgument,
    DEFAULT_BUDGET,
    DEFAULT_TRUNCATION,
)

__all__ = [
    "AxiomViolation",
    "BudgetExceeded",
    "ConsistencyFault",
    "DocumentError",
    "Error",
    "InvalidArgument",
    "build",
    "certify_contractible",
    "check",
    "close_composition",
    "homology",
    "load",
    "run",
    "to_dot",
    "validate",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def validate(category):
    return _thma.validate(_text(category))


def close_composition(category):
    return json.loads(_thma.close_composition(_text(category)))


def homology(category, truncation=DEFAULT_TRUNCATION, budget=DEFAULT_BUDGET):
    return json.loads(_thma.homology(_text(category), truncation, budget))


def certify_contractible(category, truncation=DEFAULT_TRUNCATION, budget=DEFAULT_BUDGET):
    return json.loads(_thma.certify_contractible(_text(category), truncation, budget))


def build(construction, document, base_dir="."):
    return json.loads(_thma.build(construction, _text(document), str(base_dir)))


def check(theorem, document, truncation=DEFAULT_TRUNCATION, budget=DEFAULT_BUDGET, base_dir="."):
    return json.loads(_thma.check(theorem, _text(document), truncation, budget, str(base_dir)))


def to_dot(category):
    return _thma.to_dot(_text(category))


def run(*args):
    """Runs the command line tool in process; returns (exit code, stdout, stderr)."""
    return _thma.run([str(a) for a in args])
