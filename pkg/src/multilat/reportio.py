"""Versioned JSON input/output.

Integers and fractions in reports are serialized as strings so that no
reader can lose precision; presentation files accept plain JSON integers
(or string integers) in matrices.  Emission is canonical (sorted keys,
fixed indentation, trailing newline) so identical inputs give identical
bytes.
"""

import json
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, ParseError
from .intmat import intmat, ratmat
from .representation import Permutation, GroupPresentation

SCHEMA_VERSION = 1

DEFAULT_OPTIONS = {"bound": 2, "closure_cap": 10000, "perm_cap": 8}


def dumps_canonical(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _as_int(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{what}: expected an integer, got {x!r}")
    try:
        return int(x)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {x!r}") from None


def _int_grid(data, what):
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ParseError(f"{what}: expected a nested array")
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise ParseError(f"{what}: ragged rows")
    return [[_as_int(x, what) for x in row] for row in data]


def load_matrix(text):
    """Parse a JSON nested-array integer matrix."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    return intmat(_int_grid(data, "matrix"))


def _frac(s, what):
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError(f"{what}: expected a fraction string, got {s!r}")


def load_rat_matrix(text):
    """Parse a JSON nested array of fraction strings (or integers)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ParseError("shift matrix: expected a nested array")
    return ratmat([[_frac(x, "shift matrix") for x in row] for row in data])


def load_presentation(text):
    """Parse a presentation file; returns (GroupPresentation, options)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ParseError("presentation: expected a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}")
    n = _as_int(data.get("n"), "n")
    N = _as_int(data.get("N"), "N")
    if n < 1 or N < 1:
        raise ParseError("n and N must be >= 1")
    gens_data = data.get("generators")
    if not isinstance(gens_data, list) or not gens_data:
        raise ParseError("generators: expected a non-empty list")
    generators = []
    for idx, g in enumerate(gens_data):
        if not isinstance(g, dict) or "M" not in g or "sigma" not in g:
            raise ParseError(f"generator {idx}: expected an object with M and sigma")
        M = _int_grid(g["M"], f"generator {idx} M")
        sigma = g["sigma"]
        if not isinstance(sigma, list):
            raise ParseError(f"generator {idx} sigma: expected a list")
        sigma = [_as_int(x, f"generator {idx} sigma") for x in sigma]
        generators.append((M, sigma))
    options = dict(DEFAULT_OPTIONS)
    for key, val in (data.get("options") or {}).items():
        if key not in DEFAULT_OPTIONS:
            raise ParseError(f"unknown option {key!r}")
        options[key] = _as_int(val, f"option {key}")
    try:
        presentation = GroupPresentation(n=n, N=N, generators=tuple(generators))
    except (ValueError, DimensionMismatch) as e:
        # Bad dimensions or a non-bijective sigma are malformed input;
        # a non-unimodular M propagates as its own error class.
        raise ParseError(str(e)) from None
    return presentation, options


def _str_matrix(m):
    return [[str(x) for x in row] for row in m]


def _str_vector(v):
    return [str(x) for x in v]


def matrix_report(dec):
    """JSON-ready report of a Smith decomposition."""
    return {
        "schema_version": SCHEMA_VERSION,
        "U": _str_matrix(dec.U),
        "D": _str_matrix(dec.D),
        "V": _str_matrix(dec.V),
        "rank": dec.rank,
    }


def family_entry(f):
    return {
        "class_index": _str_vector(f.class_index),
        "P0": _str_matrix(f.P0),
        "free_dirs": [_str_vector(d) for d in f.free_dirs],
        "S": _str_vector(f.S),
        "T": [_str_matrix(T) for T in f.T],
        "degenerate": f.degenerate,
        "faithful": f.faithful,
    }


def witness_entry(i, j, w):
    return {
        "i": i,
        "j": j,
        "H": _str_matrix(w.H),
        "B_sigma": list(w.B.images) if w.B is not None else None,
        "B_matrix": _str_matrix(w.B_matrix),
        "Z": _str_vector(w.Z),
    }


def solution_report(sys, families, classes=None, bound=None):
    p = sys.presentation
    rep = {
        "schema_version": SCHEMA_VERSION,
        "n": p.n,
        "N": p.N,
        "K": p.K,
        "rank": sys.rank,
        "D_diagonal": [str(sys.snf.D[i, i]) for i in range(min(sys.snf.D.shape))],
        "families": [family_entry(f) for f in families],
        "classes": None,
    }
    if classes is not None:
        rep["classes"] = {
            "partition": [list(c) for c in classes.classes],
            "exhaustive": not classes.caveat,
            "bound": bound,
            "witnesses": [
                witness_entry(i, j, w) for (i, j), w in sorted(classes.witnesses.items())
            ],
        }
    return rep


def parse_report(text):
    """Decode a solution report back into exact values.

    Returns a dict mirroring the report, with integer and fraction
    strings converted to ints and Fractions.  Round-trips losslessly
    through solution-report emission.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {data.get('schema_version')!r}")
    out = {
        "schema_version": SCHEMA_VERSION,
        "n": _as_int(data["n"], "n"),
        "N": _as_int(data["N"], "N"),
        "K": _as_int(data["K"], "K"),
        "rank": _as_int(data["rank"], "rank"),
        "D_diagonal": [_as_int(x, "D_diagonal") for x in data["D_diagonal"]],
        "families": [],
        "classes": None,
    }
    for f in data["families"]:
        out["families"].append(
            {
                "class_index": tuple(_as_int(x, "class_index") for x in f["class_index"]),
                "P0": ratmat([[_frac(x, "P0") for x in row] for row in f["P0"]]),
                "free_dirs": [
                    [_as_int(x, "free_dirs") for x in d] for d in f["free_dirs"]
                ],
                "S": tuple(_as_int(x, "S") for x in f["S"]),
                "T": [intmat(_int_grid(T, "T")) for T in f["T"]],
                "degenerate": bool(f["degenerate"]),
                "faithful": bool(f["faithful"]),
            }
        )
    if data.get("classes") is not None:
        c = data["classes"]
        out["classes"] = {
            "partition": [tuple(_as_int(x, "partition") for x in cl) for cl in c["partition"]],
            "exhaustive": bool(c["exhaustive"]),
            "bound": c.get("bound"),
            "witnesses": [
                {
                    "i": _as_int(w["i"], "i"),
                    "j": _as_int(w["j"], "j"),
                    "H": intmat(_int_grid(w["H"], "H")),
                    "B_sigma": None if w["B_sigma"] is None else tuple(w["B_sigma"]),
                    "B_matrix": intmat(_int_grid(w["B_matrix"], "B_matrix")),
                    "Z": tuple(_as_int(x, "Z") for x in w["Z"]),
                }
                for w in c["witnesses"]
            ],
        }
    return out


def _fmt_matrix(m, indent="  "):
    rows = [[str(x) for x in row] for row in m]
    if not rows:
        return indent + "(empty)"
    width = max(len(s) for row in rows for s in row)
    return "\n".join(indent + "[ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in rows)


def render_snf_text(dec):
    lines = ["rank: %d" % dec.rank, "D:", _fmt_matrix(dec.D), "U:", _fmt_matrix(dec.U), "V:", _fmt_matrix(dec.V)]
    return "\n".join(lines) + "\n"


def render_report_text(rep):
    """Human-readable report; indices are 1-based to match convention."""
    lines = [
        f"n = {rep['n']}, N = {rep['N']}, K = {rep['K']}, rank = {rep['rank']}",
        "elementary divisors: " + ", ".join(str(x) for x in rep["D_diagonal"]),
        f"families: {len(rep['families'])}",
    ]
    for idx, f in enumerate(rep["families"]):
        flags = []
        if f["degenerate"]:
            flags.append("degenerate")
        if not f["faithful"]:
            flags.append("not-faithful")
        suffix = (" [" + ", ".join(flags) + "]") if flags else ""
        lines.append(f"family {idx}: class index ({', '.join(str(x) for x in f['class_index'])}){suffix}")
        lines.append("  P0 (columns are shifts p_1..p_N):")
        lines.append(_fmt_matrix(f["P0"], indent="    "))
        if f["free_dirs"]:
            lines.append(f"  free directions: {len(f['free_dirs'])}")
        for k, T in enumerate(f["T"], start=1):
            lines.append(f"  T({k}):")
            lines.append(_fmt_matrix(T, indent="    "))
    if rep.get("classes"):
        c = rep["classes"]
        lines.append(
            "classes (%s): " % ("exhaustive" if c["exhaustive"] else "bounded search")
            + "; ".join("{" + ", ".join(str(i) for i in cl) + "}" for cl in c["partition"])
        )
    return "\n".join(lines) + "\n"
