"""Evidence pattern reasoning: fusion of set, permutation and graph evidence,
plus the aircraft speed-ranking experiment (MVD vs CRD).

Mass assignments are plain dicts in the JSON layout used by the command-line
tool: {"space": [labels], "entries": [{"event": ..., "mass": m}, ...]}.
Graphs passed directly are lists of (source, target) index pairs.
"""

import json

from . import _eprm
from ._eprm import InvalidCase, InvariantViolation, TotalConflict

__all__ = [
    "InvalidCase",
    "InvariantViolation",
    "TotalConflict",
    "case_seed",
    "crd",
    "decide",
    "default_params",
    "dempster",
    "fuse",
    "generate_case",
    "longest_path_reduce",
    "mvd",
    "pattern_operators",
    "remove_cycles",
    "run_corpus",
    "separate_chains",
    "speed_graph_po",
    "trace",
]

case_seed = _eprm.case_seed
remove_cycles = _eprm.remove_cycles
longest_path_reduce = _eprm.longest_path_reduce
speed_graph_po = _eprm.speed_graph_po
separate_chains = _eprm.separate_chains
pattern_operators = _eprm.pattern_operators


def fuse(sources, algebra="set", po="intersection"):
    """Left-fold the sources with a named pattern operator.

    Returns {"fused": mass, "conflicts": [conflict of each pairwise step]}.
    """
    return json.loads(_eprm.fuse(json.dumps(list(sources)), algebra, po))


def decide(source, algebra="set", dmo="pignistic", prefs=None):
    prefs = {k: str(v) for k, v in (prefs or {}).items()}
    return json.loads(_eprm.decide(json.dumps(source), algebra, dmo, prefs))


def dempster(a, b):
    """Dempster's rule for two set sources: {"fused": mass, "conflict": k}."""
    return json.loads(_eprm.dempster(json.dumps(a), json.dumps(b)))


def default_params():
    return json.loads(_eprm.default_params())


def _params(overrides):
    params = default_params()
    unknown = set(overrides) - set(params)
    if unknown:
        raise ValueError(f"unknown generation parameters: {sorted(unknown)}")
    params.update(overrides)
    return json.dumps(params)


def generate_case(global_seed, index, full=False, **params):
    return json.loads(_eprm.generate_case(_params(params), global_seed, index, full))


def mvd(case):
    return json.loads(_eprm.mvd(json.dumps(case)))


def crd(case):
    return json.loads(_eprm.crd(json.dumps(case)))


def trace(case):
    return [json.loads(line) for line in _eprm.trace(json.dumps(case)).splitlines()]


def run_corpus(seed, cases, workers=0, **params):
    """Generate and decide a corpus in memory; returns the summary document."""
    return json.loads(_eprm.run_corpus(_params(params), seed, cases, workers))
