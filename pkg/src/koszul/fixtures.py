"""Fixture input: graded spaces and (dg Lie / L-infinity) structures as JSON.

Schema::

    {
      "generators":   [{"name": "e", "degree": 0}, ...],
      "differential": [{"from": "x", "to": "y", "coeff": "1"}, ...],
      "brackets":     [{"arity": 2, "inputs": ["h", "e"],
                        "output": [{"coeff": "2", "monomial": ["e"]}]}, ...]
    }

Coefficients are exact rational strings "p/q" (or integer strings);
anything else — in particular decimal notation like "1.5" — is rejected.
A few named fixtures used throughout the tests are built in.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .free_objects import LInfStructure
from .spaces import GradedSpace

_RATIONAL = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class FixtureError(ValueError):
    """Invalid fixture file: schema or exactness violation."""


def parse_coeff(value, where=""):
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value.strip()):
        return Fraction(value.strip())
    raise FixtureError(
        f"coefficient {value!r}{' in ' + where if where else ''} is not an exact "
        f"rational; write integers or fractions like \"3/2\"")


def load_fixture(data, name="fixture"):
    """Build (GradedSpace, LInfStructure) from parsed JSON data."""
    if not isinstance(data, dict):
        raise FixtureError("fixture must be a JSON object")
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise FixtureError("fixture needs a nonempty 'generators' list")
    generators = []
    for g in gens:
        if not isinstance(g, dict) or "name" not in g or "degree" not in g:
            raise FixtureError(f"bad generator entry {g!r}")
        if not isinstance(g["degree"], int):
            raise FixtureError(f"generator degree must be an integer: {g!r}")
        generators.append((str(g["name"]), g["degree"]))
    differential = {}
    for entry in data.get("differential", []):
        if not isinstance(entry, dict) or {"from", "to", "coeff"} - set(entry):
            raise FixtureError(f"bad differential entry {entry!r}")
        coeff = parse_coeff(entry["coeff"], "differential")
        differential.setdefault(entry["from"], {})
        differential[entry["from"]][entry["to"]] = \
            differential[entry["from"]].get(entry["to"], Fraction(0)) + coeff
    try:
        space = GradedSpace(name, generators, differential)
    except ValueError as err:
        raise FixtureError(str(err)) from err
    brackets = {}
    for entry in data.get("brackets", []):
        if not isinstance(entry, dict) or {"arity", "inputs", "output"} - set(entry):
            raise FixtureError(f"bad bracket entry {entry!r}")
        arity = entry["arity"]
        inputs = entry["inputs"]
        if not isinstance(arity, int) or arity < 2:
            raise FixtureError(f"bracket arity must be an integer >= 2: {entry!r}")
        if len(inputs) != arity:
            raise FixtureError(f"bracket inputs do not match the arity: {entry!r}")
        value = {}
        for term in entry["output"]:
            if not isinstance(term, dict) or {"coeff", "monomial"} - set(term):
                raise FixtureError(f"bad bracket output term {term!r}")
            mono = term["monomial"]
            if not isinstance(mono, list) or len(mono) != 1:
                raise FixtureError(
                    f"bracket outputs must be single generators: {term!r}")
            coeff = parse_coeff(term["coeff"], "bracket output")
            value[mono[0]] = value.get(mono[0], Fraction(0)) + coeff
        for gname in value:
            if gname not in space.gen_degrees:
                raise FixtureError(f"unknown generator {gname!r} in bracket output")
        for gname in inputs:
            if gname not in space.gen_degrees:
                raise FixtureError(f"unknown generator {gname!r} in bracket inputs")
        key = tuple(inputs)
        table = brackets.setdefault(arity, {})
        if key in table:
            for gname, coeff in value.items():
                table[key][gname] = table[key].get(gname, Fraction(0)) + coeff
        else:
            table[key] = value
    try:
        return space, LInfStructure(space, brackets)
    except ValueError as err:
        raise FixtureError(str(err)) from err


def load_fixture_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise FixtureError(f"cannot read fixture {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise FixtureError(f"invalid JSON in {path}: {err}") from err
    return load_fixture(data, name=str(path))


BUILTIN = {
    "qx": {"generators": [{"name": "x", "degree": 0}]},
    "v2": {"generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}]},
    "v2d": {"generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}],
            "differential": [{"from": "x", "to": "y", "coeff": "1"}]},
    "abelian2": {"generators": [{"name": "p", "degree": 0}, {"name": "q", "degree": 0}]},
    "sl2": {
        "generators": [{"name": "e", "degree": 0}, {"name": "f", "degree": 0},
                       {"name": "h", "degree": 0}],
        "brackets": [
            {"arity": 2, "inputs": ["e", "f"],
             "output": [{"coeff": "1", "monomial": ["h"]}]},
            {"arity": 2, "inputs": ["h", "e"],
             "output": [{"coeff": "2", "monomial": ["e"]}]},
            {"arity": 2, "inputs": ["h", "f"],
             "output": [{"coeff": "-2", "monomial": ["f"]}]},
        ],
    },
    "heis3": {
        "generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 0},
                       {"name": "z", "degree": 0}],
        "brackets": [
            {"arity": 2, "inputs": ["x", "y"],
             "output": [{"coeff": "1", "monomial": ["z"]}]},
        ],
    },
    "l3": {
        "generators": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0},
                       {"name": "c", "degree": 0}, {"name": "w", "degree": -1}],
        "brackets": [
            {"arity": 3, "inputs": ["a", "b", "c"],
             "output": [{"coeff": "1", "monomial": ["w"]}]},
        ],
    },
}


def resolve_fixture(spec):
    """Load a fixture from a path, or by builtin name."""
    import os
    if os.path.exists(spec):
        return load_fixture_file(spec)
    if spec in BUILTIN:
        return load_fixture(BUILTIN[spec], name=spec)
    raise FixtureError(
        f"no such fixture file and no builtin named {spec!r} "
        f"(builtins: {', '.join(sorted(BUILTIN))})")
