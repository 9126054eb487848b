"""Closed subgroups of R, C and the Heisenberg group, and their Chabauty topology."""

import json

from . import _core
from ._core import DomainError, EnumerationOverflow, NumericFailure, ParseError, klein_j


def _dump(desc):
    return desc if isinstance(desc, str) else json.dumps(desc)


def run(*args):
    """Run a CLI command; returns (exit code, payload dict)."""
    code, payload = _core.run([str(a) for a in args])
    return code, json.loads(payload)


def g_prime(desc):
    return _core.g_prime(_dump(desc))


def invert_g(a, b, tol=1e-9):
    return json.loads(_core.invert_g(complex(a), complex(b), tol))


def classify_c(desc):
    return json.loads(_core.classify_c(_dump(desc)))


def dual(desc):
    return json.loads(_core.dual(_dump(desc)))


def distance(space, lhs, rhs, tol=1e-3):
    return json.loads(_core.distance(space, _dump(lhs), _dump(rhs), tol))


def forward_f(a, b):
    return json.loads(_core.forward_f(complex(a), complex(b)))


def inverse_f(desc):
    return _core.inverse_f(_dump(desc))


def center_index(desc):
    return _core.center_index(_dump(desc))


def heis_label(desc):
    return _core.heis_label(_dump(desc))


__all__ = [
    "DomainError", "EnumerationOverflow", "NumericFailure", "ParseError",
    "center_index", "classify_c", "distance", "dual", "forward_f", "g_prime",
    "heis_label", "inverse_f", "invert_g", "klein_j", "run",
]
