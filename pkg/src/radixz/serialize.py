"""JSON and CSV formats.

Exact rationals travel as ``"p/q"`` strings (``"p"`` when integral), each
with a ``<name>_decimal`` sidecar for reading. Output is deterministic:
sorted keys, fixed indentation, LF newlines.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .errors import RadixError
from .lattice import GaussianRational
from .linalg import IntMatrix
from .representation import Kind, Representation


class DocumentError(RadixError, ValueError):
    """Malformed input document."""


def rat(x) -> str:
    return str(Fraction(x))


def decimal(x, digits: int = 12) -> str:
    return format(float(Fraction(x)), f".{digits}g")


def put_rational(out: dict, name: str, x) -> None:
    out[name] = rat(x)
    out[name + "_decimal"] = decimal(x)


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise DocumentError(f"not a number: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"not a rational: {s!r}") from None
    raise DocumentError(f"not a rational: {s!r}")


def parse_entry(e):
    """Matrix entry: integer, ``"p/q"`` string, or ``[re, im]`` pair."""
    if isinstance(e, list):
        if len(e) != 2:
            raise DocumentError(f"complex entry must be [re, im], got {e!r}")
        return GaussianRational(parse_rational(e[0]), parse_rational(e[1]))
    return parse_rational(e)


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# matrix documents


@dataclass(frozen=True)
class MatrixDocument:
    n: int
    rows: Tuple[tuple, ...]
    name: Optional[str] = None

    def int_matrix(self) -> IntMatrix:
        bad = [c for r in self.rows for c in r if not (isinstance(c, Fraction) and c.denominator == 1)]
        if bad:
            raise DocumentError(f"integer matrix expected, got entry {bad[0]}")
        return IntMatrix([[int(c) for c in r] for r in self.rows])


def parse_matrix_document(doc) -> MatrixDocument:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise DocumentError('matrix document must be an object with "rows"')
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise DocumentError('"rows" must be a nonempty list of lists')
    n = doc.get("n", len(rows))
    if not isinstance(n, int) or isinstance(n, bool) or n != len(rows) or any(len(r) != n for r in rows):
        raise DocumentError(f"rows do not form a {n}x{n} matrix")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError('"name" must be a string')
    return MatrixDocument(n, tuple(tuple(parse_entry(e) for e in r) for r in rows), name)


def fixture_names() -> List[str]:
    root = resources.files("radixz") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_matrix(source) -> MatrixDocument:
    """Read a matrix document from a path, or a bundled fixture by name."""
    path = Path(source)
    try:
        if path.is_file():
            text = path.read_text()
        else:
            key = str(source).replace("-", "_")
            if key not in fixture_names():
                raise DocumentError(f"no such file or fixture: {source}")
            text = (resources.files("radixz") / "fixtures" / f"{key}.json").read_text()
        return parse_matrix_document(json.loads(text))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: invalid JSON ({exc})") from None


def matrix_to_dict(A: IntMatrix, name: Optional[str] = None) -> dict:
    out = {"n": A.n, "rows": [list(r) for r in A.rows]}
    if name is not None:
        out["name"] = name
    return out


def parse_vector(text: str, n: Optional[int] = None) -> Tuple[int, ...]:
    """``"1,-2"`` or ``"[1, -2]"``."""
    text = text.strip()
    try:
        vals = json.loads(text) if text.startswith("[") else [int(t) for t in text.split(",") if t.strip()]
    except (ValueError, json.JSONDecodeError):
        raise DocumentError(f"cannot parse vector {text!r}") from None
    if not isinstance(vals, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
        raise DocumentError(f"cannot parse vector {text!r}")
    if n is not None and len(vals) != n:
        raise DocumentError(f"vector has dimension {len(vals)}, matrix has {n}")
    return tuple(vals)


# --------------------------------------------------------------------------
# engine values


def representation_to_dict(rep: Representation) -> dict:
    return {
        "kind": rep.kind.value,
        "N": rep.N,
        "digits": [list(d) for d in rep.digits],
        "pseudodigit": None if rep.pseudodigit is None else list(rep.pseudodigit),
        "convention": rep.convention,
    }


def representation_from_dict(doc: dict) -> Representation:
    try:
        kind = Kind(doc["kind"])
        digits = tuple(tuple(int(c) for c in d) for d in doc["digits"])
        s = doc.get("pseudodigit")
        s = None if s is None else tuple(int(c) for c in s)
        rep = Representation(kind, digits, s, doc.get("convention", "F").upper())
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed representation: {exc}") from None
    if "N" in doc and doc["N"] != rep.N:
        raise DocumentError(f"N = {doc['N']} does not match {len(digits)} digits")
    return rep


def digit_set_to_dict(ds) -> dict:
    return {
        "q": ds.q,
        "convention": ds.convention,
        "digits": [list(d) for d in ds.digits],
        "smith_diagonal": list(ds.snf.diag),
    }


def table_to_dict(table) -> dict:
    out = {
        "cycles": [[list(x) for x in c] for c in table.cycles],
        "S": [list(s) for s in table.S],
        "search": table.search,
        "candidates": table.candidates,
        "summary": "yields radix representation" if not table.S else "yields pseudodigit representation",
    }
    put_rational(out, "ball_radius_used", table.ball_radius_used)
    return out


def bounds_to_dict(br) -> dict:
    out = {}
    for name in ("C_upper", "m_lower", "M_upper", "rho_upper", "R_upper"):
        put_rational(out, name, getattr(br, name))
    put_rational(out, "candidate_radius_l2", br.candidate_radius_l2)
    if br.closed_form_R is not None:
        put_rational(out, "closed_form_R", br.closed_form_R)
    if br.normal_exact is not None:
        sp = br.normal_exact
        out["normal_exact"] = {
            "exact": sp.exact,
            "m_sq": [rat(v) for v in sp.m_sq],
            "M_sq": [rat(v) for v in sp.M_sq],
            "m_decimal": decimal(sp.m[0]),
            "M_decimal": decimal(sp.M[1]),
        }
    return out


def cert_to_dict(cert) -> dict:
    out = {
        "q_abs_det": cert.q_abs_det,
        "is_dilation": cert.is_dilation,
        "mu_sq_gt": {rat(t): v for t, v in sorted(cert.mu_gt_threshold_results.items())},
    }
    for name in ("sigma_min_lb", "sigma_min_ub", "sigma_max_ub"):
        put_rational(out, name, getattr(cert, name))
    return out


def conditions_to_dict(rep) -> dict:
    return {
        "mu_gt_2sqrtn": rep.mu_gt_2sqrtn,
        "mu_gt_2": rep.mu_gt_2,
        "jeong_C_in_AU": rep.jeong_C_in_AU,
        "jeong_C_in_AF": rep.jeong_C_in_AF,
        "is_dilation": rep.is_dilation,
        "verdict": rep.verdict.value,
        "certificate": cert_to_dict(rep.certificate),
    }


def atlas_csv(radix, pseudo, n: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i + 1}" for i in range(n)] + ["tag"])
    for p in radix:
        w.writerow(list(p) + ["radix"])
    for p in pseudo:
        w.writerow(list(p) + ["pseudo"])
    return buf.getvalue()


# --------------------------------------------------------------------------
# full run report


_BOUND_FIELDS = ("C_upper", "m_lower", "M_upper", "rho_upper", "R_upper")
_CONDITION_FIELDS = ("mu_gt_2sqrtn", "mu_gt_2", "jeong_C_in_AU", "jeong_C_in_AF", "is_dilation")


@dataclass(frozen=True)
class RunReport:
    """Everything radixz knows about one matrix, in exact form."""

    rows: Tuple[Tuple[int, ...], ...]
    convention: str
    digits: Tuple[Tuple[int, ...], ...]
    cycles: Tuple[Tuple[Tuple[int, ...], ...], ...]
    S: Tuple[Tuple[int, ...], ...]
    bounds: Dict[str, Fraction] = field(default_factory=dict)
    conditions: Dict[str, bool] = field(default_factory=dict)
    verdict: str = ""
    yields_radix: bool = False
    name: Optional[str] = None

    def to_dict(self) -> dict:
        bounds = {}
        for k, v in sorted(self.bounds.items()):
            put_rational(bounds, k, v)
        return {
            "name": self.name,
            "matrix": {"n": len(self.rows), "rows": [list(r) for r in self.rows]},
            "convention": self.convention,
            "digits": [list(d) for d in self.digits],
            "cycles": [[list(x) for x in c] for c in self.cycles],
            "S": [list(s) for s in self.S],
            "bounds": bounds,
            "conditions": dict(self.conditions),
            "verdict": self.verdict,
            "yields_radix": self.yields_radix,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RunReport":
        vec = lambda v: tuple(int(c) for c in v)  # noqa: E731
        bounds = {k: parse_rational(v) for k, v in doc["bounds"].items() if not k.endswith("_decimal")}
        return cls(
            rows=tuple(vec(r) for r in doc["matrix"]["rows"]),
            convention=doc["convention"],
            digits=tuple(vec(d) for d in doc["digits"]),
            cycles=tuple(tuple(vec(x) for x in c) for c in doc["cycles"]),
            S=tuple(vec(s) for s in doc["S"]),
            bounds=bounds,
            conditions=dict(doc["conditions"]),
            verdict=doc["verdict"],
            yields_radix=doc["yields_radix"],
            name=doc.get("name"),
        )


def run_report(A: IntMatrix, convention: str = "F", name: Optional[str] = None) -> RunReport:
    from .criteria import check_conditions
    from .digits import digit_set
    from .norms import bounds_report
    from .representation import pseudodigits

    ds = digit_set(A, convention)
    br = bounds_report(A)
    table = pseudodigits(ds, br)
    cond = check_conditions(A)
    return RunReport(
        rows=A.rows,
        convention=convention,
        digits=ds.digits,
        cycles=table.cycles,
        S=table.S,
        bounds={k: getattr(br, k) for k in _BOUND_FIELDS},
        conditions={k: getattr(cond, k) for k in _CONDITION_FIELDS},
        verdict=cond.verdict.value,
        yields_radix=not table.S,
        name=name,
    )
