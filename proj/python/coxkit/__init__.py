"""Exact computations for Cox rings, affine monoids and finite quotients.

Every subcommand of the ``coxkit`` executable is available through :func:`run`,
which takes and returns JSON-compatible Python objects. Integers in results are
decimal strings, as in the command-line output.
"""

import json


class CoxkitError(Exception):
    """Domain error raised by the native core; ``code`` names the error kind."""

    def __init__(self, code, message):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class MalformedInput(ValueError):
    pass


from ._core import commands, compose, hilbert_basis, jacobian_det, nagata_homogeneous_gradings, parse_poly  # noqa: E402
from ._core import run as _run  # noqa: E402


def run(command, payload, *, depth=8, cap=10000):
    """Run a subcommand on a JSON payload (dict or text) and return the result dict."""
    text = payload if isinstance(payload, str) else json.dumps(payload)
    code, out = _run(command, text, depth, cap, False)
    result = json.loads(out)
    if code == 1:
        err = result["error"]
        raise CoxkitError(err["code"], err["message"])
    if code == 2:
        raise MalformedInput(result["error"]["message"])
    return result


def divisor_theory(generators, *, ambient_rank=None):
    rank = ambient_rank if ambient_rank is not None else len(generators[0])
    return run("divisor-theory", {"monoid": {"ambient_rank": rank, "generators": generators}})


def extend(generators, alpha_images, *, depth=8):
    monoid = {"ambient_rank": len(generators[0]), "generators": generators}
    return run("extend", {"monoid": monoid, "alpha": {"generator_images": alpha_images}}, depth=depth)


def cox_data(rays, *, ray_order=None):
    payload = {"cone": {"ambient_rank": len(rays[0]), "rays": rays}}
    if ray_order is not None:
        payload["ray_order"] = ray_order
    return run("cox-data", payload)


def quotient_report(group, *, cap=10000):
    return run("quotient-report", {"group": group}, cap=cap)


def reynolds(group, degree, *, cap=10000):
    return run("reynolds", {"group": group, "degree": degree}, cap=cap)


__all__ = [
    "CoxkitError",
    "MalformedInput",
    "commands",
    "compose",
    "cox_data",
    "divisor_theory",
    "extend",
    "hilbert_basis",
    "jacobian_det",
    "nagata_homogeneous_gradings",
    "parse_poly",
    "quotient_report",
    "reynolds",
    "run",
]
