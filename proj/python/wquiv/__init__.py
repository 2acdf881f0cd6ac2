"""Mutation of group-weighted quivers.

Thin wrappers over the C++ core. Quivers are passed as quiver-file JSON
strings or as already-parsed dicts; results come back parsed.
"""

import json

from . import _wquiv
from ._wquiv import WquivError

__all__ = [
    "WquivError",
    "Session",
    "mutate",
    "frame",
    "c_vectors",
    "two_cycles",
    "check_nondegenerate",
    "are_equivalent",
    "classify_tame",
    "canonical_key",
]


def _text(quiver):
    return quiver if isinstance(quiver, str) else json.dumps(quiver)


def mutate(quiver, at, lenient=False):
    if isinstance(at, int):
        at = [at]
    return json.loads(_wquiv.mutate(_text(quiver), list(at), lenient))


def frame(quiver):
    return json.loads(_wquiv.frame(_text(quiver)))


def c_vectors(quiver):
    return json.loads(_wquiv.c_vectors(_text(quiver)))


def two_cycles(quiver):
    return json.loads(_wquiv.two_cycles(_text(quiver)))


def check_nondegenerate(quiver, depth):
    return json.loads(_wquiv.check_nondegenerate(_text(quiver), depth))


def are_equivalent(a, b, conjugacy_bound=64):
    return json.loads(_wquiv.are_equivalent(_text(a), _text(b), conjugacy_bound))


def classify_tame(quiver):
    return json.loads(_wquiv.classify_tame(_text(quiver)))


def canonical_key(quiver):
    return _wquiv.canonical_key(_text(quiver))


class Session:
    """An explorer session driven through the HTTP protocol handler, without a socket."""

    def __init__(self, quiver, lenient=False):
        self._s = _wquiv.Session(_text(quiver), lenient)

    def request(self, method, path, body=None):
        payload = "" if body is None else (body if isinstance(body, str) else json.dumps(body))
        status, text = self._s.request(method, path, payload)
        return status, json.loads(text)

    def current(self):
        return json.loads(self._s.current())
