"""Key polynomial chains of valuations on K[x]."""

import json

from ._core import Field, KeyChain, KeypolyError, Poly, Value, run_command

__all__ = ["Field", "KeyChain", "KeypolyError", "Poly", "Value", "run", "run_command"]


def run(name, request):
    """Run a CLI command on a request dict and return (report dict, svg text, exit code)."""
    text, svg, code = run_command(name, json.dumps(request))
    return json.loads(text), svg, code
