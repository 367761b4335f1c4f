"""Splitting types, jumping lines and jumping conics of rank-2 bundles on P2."""

import json

from . import _core
from ._core import ValidationError, cohomology, riemann_roch_p2, schema_version

__all__ = [
    "JumplociError",
    "ValidationError",
    "cohomology",
    "jconics",
    "jlines",
    "locus",
    "riemann_roch_p2",
    "run",
    "sample",
    "schema_version",
    "splitting",
    "verify",
]


class JumplociError(RuntimeError):
    """A command exited nonzero; exit_code is 2 for bad input, 3 for a failed computation."""

    def __init__(self, exit_code, message):
        super().__init__(message)
        self.exit_code = exit_code


def _spec_text(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def _vec(v):
    return v if v is None or isinstance(v, str) else ",".join(str(x) for x in v)


def run(command, spec, *, field=None, seed=1, samples=None, window=None, conic=None, line=None, kind=None):
    """Run a command and return the parsed JSON report."""
    if isinstance(window, (tuple, list)):
        window = f"{window[0]}:{window[1]}"
    code, report, error = _core.run(
        command, _spec_text(spec), field, seed, samples, window, _vec(conic), _vec(line), kind, False
    )
    if code != 0:
        raise JumplociError(code, error)
    return json.loads(report)


def splitting(spec, *, line=None, conic=None, **kw):
    return run("splitting", spec, line=line, conic=conic, **kw)


def jlines(spec, **kw):
    return run("jlines", spec, **kw)


def jconics(spec, *, conic=None, **kw):
    return run("jconics", spec, conic=conic, **kw)


def locus(spec, kind="J2", **kw):
    return run("locus", spec, kind=kind, **kw)


def sample(spec, **kw):
    return run("sample", spec, **kw)


def verify(spec, **kw):
    return run("verify", spec, **kw)
