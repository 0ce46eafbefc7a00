"""Fairness analysis and asynchronous-automata synthesis.

Thin wrapper over the native module: structured values cross the boundary as
JSON text, and this layer converts them to and from dicts.
"""

import json as _json

try:
    from . import _fairsynth as _native  # installed package layout
except ImportError:  # in-tree test layout: extension on sys.path
    import _fairsynth as _native

__all__ = [
    "generate",
    "diamond_violations",
    "fairness_parameter",
    "unfairness_witness",
    "bag_fairness",
    "foata_normal_form",
    "synthesize",
    "synthesize_tree",
    "run_word",
    "semantics",
    "equivalent",
    "export_dot",
]


def generate(family, n=3, strict=False):
    """Built-in example specification as a {"alphabet": ..., "dfa": ...} dict."""
    return _json.loads(_native.generate(family, n, strict))


def diamond_violations(spec):
    return _native.diamond_violations(_json.dumps(spec))


def fairness_parameter(spec):
    return _native.fairness_parameter(_json.dumps(spec))


def unfairness_witness(spec, k):
    return _native.unfairness_witness(_json.dumps(spec), k)


def bag_fairness(spec, arch):
    return _native.bag_fairness(_json.dumps(spec), _json.dumps(arch))


def foata_normal_form(spec, word):
    return _native.foata_normal_form(_json.dumps(spec), list(word))


def synthesize(spec, k, mode="fair", cut="standard", cap=1000000):
    return _json.loads(_native.synthesize(_json.dumps(spec), k, mode, cut, cap))


def synthesize_tree(spec, arch, cap=1000000):
    return _json.loads(_native.synthesize_tree(_json.dumps(spec), _json.dumps(arch), cap))


def run_word(aa, word):
    """(enabled, accepted, global state label) after running a word."""
    return _native.run_word(_json.dumps(aa), list(word))


def semantics(aa, cap=1000000):
    return _json.loads(_native.semantics(_json.dumps(aa), cap))


def equivalent(aa, spec, cap=1000000):
    return _native.equivalent(_json.dumps(aa), _json.dumps(spec), cap)


def export_dot(aa, cap=1000000):
    return _native.export_dot(_json.dumps(aa), cap)
