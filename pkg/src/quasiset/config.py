"""
Line-oriented run configuration.

    # three-shell icosahedral cluster
    group  = Y
    shell  = 1, tau, 0
    shell  = 1, 1, 1
    shell  = 1, 0, 0
    radius = 7.5
    format = csv
    out    = y3.csv

``group`` is ``Y`` or ``D2m:<m>``.  Shell components are numbers or simple
arithmetic over numbers, ``tau`` and ``sqrt(...)``.
"""

import ast
import math
import operator
from dataclasses import dataclass

from .cluster import TAU, GroupSpec

FORMATS = ("csv", "svg", "xyz")
KEYS = {"group", "shell", "radius", "slack", "max_points", "format", "out"}


class ConfigError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class RunConfig:
    group: GroupSpec
    radius: float
    slack: float | None = None
    max_points: int = 1_000_000
    format: str = "csv"
    out: str | None = None


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_NAMES = {"tau": TAU, "pi": math.pi}
_FUNCS = {"sqrt": math.sqrt, "cos": math.cos, "sin": math.sin}


def _eval(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left), _eval(node.right))
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _FUNCS[node.func.id](_eval(node.args[0]))
    raise ValueError(f"unsupported expression {ast.unparse(node)!r}")


def parse_number(text):
    """Evaluate a numeric literal or a small arithmetic expression."""
    try:
        return _eval(ast.parse(text.strip(), mode="eval").body)
    except (SyntaxError, ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"bad number {text.strip()!r}: {exc}") from None


def parse_config(text):
    values = {}
    shells = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        try:
            if key == "shell":
                shells.append((tuple(parse_number(c) for c in value.split(",")), lineno))
                continue
            if key in values:
                raise ConfigError(f"duplicate key {key!r}", lineno)
            if key in ("radius", "slack"):
                values[key] = (parse_number(value), lineno)
            elif key == "max_points":
                values[key] = (int(value), lineno)
            else:
                values[key] = (value, lineno)
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc), lineno) from None

    for required in ("group", "radius"):
        if required not in values:
            raise ConfigError(f"missing required key {required!r}")
    if not shells:
        raise ConfigError("missing required key 'shell' (at least one shell)")

    group_text, gline = values["group"]
    dim = 3 if group_text == "Y" else 2
    for comps, lineno in shells:
        if len(comps) != dim:
            raise ConfigError(
                f"group {group_text} needs {dim}-component shells, got {len(comps)}", lineno
            )
    seeds = [comps for comps, _ in shells]
    try:
        if group_text == "Y":
            group = GroupSpec.icosahedral(seeds)
        elif group_text.startswith("D2m:"):
            group = GroupSpec.dihedral(int(group_text[4:]), seeds)
        else:
            raise ConfigError(f"group must be 'Y' or 'D2m:<m>', got {group_text!r}", gline)
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc), gline) from None

    radius, rline = values["radius"]
    if not radius > 0:
        raise ConfigError("radius must be positive", rline)
    slack = values.get("slack", (None, None))[0]
    if slack is not None and slack < 0:
        raise ConfigError("slack must be >= 0", values["slack"][1])
    max_points = values.get("max_points", (1_000_000, None))[0]
    if max_points < 1:
        raise ConfigError("max_points must be >= 1", values["max_points"][1])
    fmt = values.get("format", ("csv", None))[0]
    if fmt not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}", values["format"][1])
    if fmt == "svg" and dim != 2 or fmt == "xyz" and dim != 3:
        raise ConfigError(f"format {fmt} does not apply to {dim}-dimensional points")
    out = values.get("out", (None, None))[0]
    return RunConfig(group, radius, slack, max_points, fmt, out)
