"""Trace abstraction and policy checking for recursive event programs.

The heavy lifting happens in the compiled extension; this package adds thin
wrappers that decode the JSON reports.
"""

import json

from buchitrace._core import (
    analyze_json,
    classes_json,
    enumerate_prefixes,
    iterate_phi,
    search_lasso,
)

__all__ = [
    "analyze",
    "analyze_json",
    "classes",
    "classes_json",
    "enumerate_prefixes",
    "iterate_phi",
    "search_lasso",
]


def analyze(program, policy, entry="", all_procs=False):
    """Checks the program against the policy; returns the report as a dict."""
    return json.loads(analyze_json(program, policy, entry, all_procs))


def classes(policy):
    """Word classes and pairs induced by the policy automaton, as a dict."""
    return json.loads(classes_json(policy))
