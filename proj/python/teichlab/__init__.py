"""Python access to the teichlab library.

Configs are plain dicts with the same fields as the CLI config files; JSON artifacts
come back as dicts, CSV artifacts as text.
"""

import json
import os

from ._teichlab import (
    SCHEMA_VERSION,
    AssumptionViolated,
    ConfigurationError,
    NonHyperbolicElement,
    TeichlabError,
    command_names,
    figure_eight_length,
    linear_conv_oracle,
    okai_dual_length,
    pseudo_length,
    solve_pants,
)
from . import _teichlab

__all__ = [
    "SCHEMA_VERSION",
    "AssumptionViolated",
    "ConfigurationError",
    "NonHyperbolicElement",
    "TeichlabError",
    "command_names",
    "figure_eight_length",
    "linear_conv_oracle",
    "loop_length",
    "okai_dual_length",
    "pseudo_length",
    "run",
    "run_file",
    "selftest",
    "solve_pants",
]


def run(command, config, seed=None, samples=None, base_dir="."):
    """Run a command on a config dict. Returns a dict for JSON output, else the text."""
    text = _teichlab.run_command(command, json.dumps(config), seed, samples, base_dir)
    fmt = config.get("format")
    if fmt == "json" or (fmt is None and text.lstrip().startswith("{")):
        return json.loads(text)
    return text


def run_file(command, path, seed=None, samples=None):
    """Run a command on a config file; relative input paths resolve against its directory."""
    with open(path, encoding="utf-8") as f:
        config = json.load(f)
    return run(command, config, seed, samples, os.path.dirname(os.path.abspath(path)))


def loop_length(loop, point):
    """Length of a loop (catalog name or loop dict) at a Fenchel-Nielsen point dict."""
    if isinstance(loop, str):
        loop = {"catalog": loop}
    return _teichlab.loop_length(json.dumps(loop), json.dumps(point))


def selftest(seed=0):
    return json.loads(_teichlab.selftest(seed))
