"""Exact computer algebra for super linear algebra: supertraces, Berezinians,
queer determinants, Jordan superalgebras, the TKK functor, homological fields
and super cross ratios, all over exact rationals.

The heavy lifting lives in the C++ extension; payloads are JSON strings with
the same schemas the `supalg` CLI uses.
"""

try:
    from ._supalg import run, usage, __version__
except ImportError:  # in-build tree, extension next to the package
    from _supalg import run, usage, __version__

import json as _json


def run_json(verb, action="", variant="", params="", order=-1, seed=2024, input_obj=None):
    """Run one job and return (exit_code, report_dict)."""
    payload = "" if input_obj is None else _json.dumps(input_obj)
    code, report = run(verb, action, variant, params, order, seed, payload)
    return code, _json.loads(report)


__all__ = ["run", "run_json", "usage", "__version__"]
