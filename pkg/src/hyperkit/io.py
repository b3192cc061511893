"""Document formats and canonical serialization for all domain types.

Every document is a JSON object carrying a ``kind`` discriminator and
``format_version`` (currently 1).  Field names per kind:

* ``hypergroup``: labels, unit, involution (optional on input),
  lambda (3d tensor)
* ``fusion_ring``: labels, unit, involution (the conjugation,
  optional on input), N (3d integer tensor)
* ``group``: labels (optional), unit (the identity), mul (2d table)
* ``groupoid``: objects, mor, comp, star, unit
* ``character_table``: labels, chars (complex entries as
  ``{"re": .., "im": ..}``), haar_weights, dual_weights

Numeric entries of ``lambda`` and groupoid ``comp`` tensors may be
plain numbers or exact quadratic literals ``{"a": .., "b": .., "c":
.., "d": ..}`` denoting ``(a + b * sqrt(d)) / c``; literals are
evaluated once at parse time.

Serialization is canonical: keys sorted, floats printed with 17
significant digits, identical objects always produce identical bytes.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass

import numpy as np

from .constructions import CayleyGroup, FusionRing, cayley_group, fusion_ring
from .core import DEFAULT_TOL, HypergroupTable, Mixture, ValidationReport, validate
from .errors import AxiomError, StructureError
from .groupoid import BoundaryState, Hypergroupoid
from .quantize import AdmissibleIndexSet
from .reprs import CharacterTable

FORMAT_VERSION = 1

_QUAD_KEYS = frozenset({"a", "b", "c", "d"})
_INT_RE = re.compile(r"^-?[0-9]+$")


@dataclass(frozen=True)
class QuadraticLiteral:
    """Exact representation of ``(a + b * sqrt(d)) / c``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.c <= 0:
            raise StructureError("quadratic literal denominator must be positive")
        if self.d < 0:
            raise StructureError("quadratic literal radicand must be nonnegative")
        if not _is_squarefree(self.d):
            raise StructureError(f"quadratic literal radicand {self.d} is not square-free")

    def value(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def pretty(self) -> str:
        if self.d == 0 or self.b == 0:
            return f"{self.a}/{self.c}" if self.c != 1 else str(self.a)
        if self.b == 1:
            root = f"√{self.d}"
        elif self.b == -1:
            root = f"-√{self.d}"
        else:
            root = f"{self.b}√{self.d}"
        if self.a == 0:
            body = root
        else:
            body = f"{self.a}{root}" if root.startswith("-") else f"{self.a}+{root}"
        return f"({body})/{self.c}" if self.c != 1 else body


def _is_squarefree(d: int) -> bool:
    if d in (0, 1):
        return True
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _squarefree_radicands(limit: int):
    yield 0
    for d in range(2, limit + 1):
        if _is_squarefree(d):
            yield d


def match_quadratic(
    value: float,
    tol: float = DEFAULT_TOL,
    max_coeff: int = 64,
    max_radicand: int = 64,
) -> QuadraticLiteral | None:
    """Bounded search for an exact quadratic literal matching ``value``.

    Radicands are scanned in increasing order (0 first, so rationals
    win), then denominators, then the root coefficient b; the first
    match within tol is returned.
    """
    if not math.isfinite(value):
        return None
    for d in _squarefree_radicands(max_radicand):
        root = math.sqrt(d)
        for c in range(1, max_coeff + 1):
            if d == 0:
                a = round(value * c)
                if abs(a) <= max_coeff and abs(a / c - value) <= tol:
                    return QuadraticLiteral(int(a), 0, c, 0)
                continue
            for b in range(-max_coeff, max_coeff + 1):
                if b == 0:
                    continue
                a = round(value * c - b * root)
                if abs(a) > max_coeff:
                    continue
                if abs((a + b * root) / c - value) <= tol:
                    return QuadraticLiteral(int(a), b, c, d)
    return None


# ---------------------------------------------------------------------------
# canonical JSON emission

def _format_float(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    s = f"{x:.17g}"
    if _INT_RE.match(s):
        s += ".0"
    return s


def _emit(value, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        items = sorted(value.items())
        for pos, (key, item) in enumerate(items):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _emit(item, indent + 1, out)
            out.append(",\n" if pos + 1 < len(items) else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        seq = list(value)
        if not seq:
            out.append("[]")
            return
        if any(isinstance(v, (list, tuple, dict)) for v in seq):
            out.append("[\n")
            for pos, item in enumerate(seq):
                out.append(pad + "  ")
                _emit(item, indent + 1, out)
                out.append(",\n" if pos + 1 < len(seq) else "\n")
            out.append(pad + "]")
        else:
            out.append("[" + ", ".join(_scalar_token(v) for v in seq) + "]")
    else:
        out.append(_scalar_token(value))


def _scalar_token(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    raise StructureError(f"cannot serialize value of type {type(value).__name__}")


def canonical_text(document: dict) -> str:
    """Render a document as canonical, hand-editable JSON text."""
    out: list[str] = []
    _emit(document, 0, out)
    out.append("\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# shared parsing helpers

def _load(document) -> dict:
    if isinstance(document, dict):
        return document
    if isinstance(document, (bytes, str)):
        try:
            doc = json.loads(document)
        except json.JSONDecodeError as exc:
            raise StructureError(f"document is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise StructureError("document root must be an object")
        return doc
    raise StructureError("document must be JSON text or a parsed object")


def _expect_kind(doc: dict, kind: str) -> None:
    got = doc.get("kind")
    if got != kind:
        raise StructureError(f"expected a {kind!r} document, found kind {got!r}")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise StructureError(f"unsupported format_version {version!r}")


def _scalar_entry(entry, where: str) -> float:
    if isinstance(entry, bool):
        raise StructureError(f"{where}: booleans are not numbers")
    if isinstance(entry, (int, float)):
        return float(entry)
    if isinstance(entry, dict):
        if set(entry) != _QUAD_KEYS:
            raise StructureError(f"{where}: quadratic literal needs exactly keys a, b, c, d")
        if not all(isinstance(entry[k], int) for k in _QUAD_KEYS):
            raise StructureError(f"{where}: quadratic literal fields must be integers")
        return QuadraticLiteral(entry["a"], entry["b"], entry["c"], entry["d"]).value()
    raise StructureError(f"{where}: expected a number or quadratic literal")


def _scalar_tensor(data, where: str) -> np.ndarray:
    def convert(node):
        if isinstance(node, list):
            return [convert(v) for v in node]
        return _scalar_entry(node, where)

    try:
        arr = np.array(convert(data), dtype=np.float64)
    except ValueError as exc:
        raise StructureError(f"{where}: ragged or non-numeric tensor") from exc
    return arr


def infer_involution(lam: np.ndarray, unit: int, tol: float = DEFAULT_TOL) -> tuple[int, ...]:
    """Read the involution off the unit coefficients of the table.

    ``inv(i)`` is the unique j with ``lam[i, j, unit] > tol``; zero or
    several candidates make the table ambiguous, which is an error.
    """
    n = lam.shape[0]
    involution = []
    for i in range(n):
        js = np.where(lam[i, :, unit] > tol)[0]
        if len(js) != 1:
            raise StructureError(
                f"cannot infer involution: element {i} has {len(js)} unit partners"
            )
        involution.append(int(js[0]))
    return tuple(involution)


# ---------------------------------------------------------------------------
# hypergroup documents

def parse_hypergroup(
    document, tol: float = DEFAULT_TOL, check: bool = True
) -> HypergroupTable:
    """Parse (and by default validate) a hypergroup document."""
    doc = _load(document)
    _expect_kind(doc, "hypergroup")
    for field in ("labels", "unit", "lambda"):
        if field not in doc:
            raise StructureError(f"hypergroup document is missing {field!r}")
    labels = doc["labels"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise StructureError("labels must be a list of strings")
    lam = _scalar_tensor(doc["lambda"], "lambda")
    n = len(labels)
    if lam.shape != (n, n, n):
        raise StructureError(f"lambda tensor has shape {lam.shape}, expected {(n, n, n)}")
    unit = doc["unit"]
    if isinstance(unit, bool) or not isinstance(unit, int) or not 0 <= unit < n:
        raise StructureError("unit must be an element index")
    if "involution" in doc:
        involution = doc["involution"]
        if not isinstance(involution, list):
            raise StructureError("involution must be a list of element indices")
    else:
        involution = infer_involution(lam, unit, tol)
    table = HypergroupTable(tuple(labels), unit, tuple(involution), lam)
    if check:
        report = validate(table, tol)
        if not report.passed:
            raise AxiomError("hypergroup document fails validation", report=report)
    return table


def serialize_hypergroup(table: HypergroupTable) -> str:
    return canonical_text(
        {
            "format_version": FORMAT_VERSION,
            "kind": "hypergroup",
            "labels": list(table.labels),
            "unit": table.unit,
            "involution": list(table.involution),
            "lambda": table.lam.tolist(),
        }
    )


# ---------------------------------------------------------------------------
# fusion ring documents

def parse_fusion_ring(document, check: bool = True) -> FusionRing:
    doc = _load(document)
    _expect_kind(doc, "fusion_ring")
    for field in ("labels", "unit", "N"):
        if field not in doc:
            raise StructureError(f"fusion ring document is missing {field!r}")
    tensor = np.array(doc["N"])
    if tensor.dtype.kind not in "iu":
        raise StructureError("fusion multiplicities must be integers")
    conj = doc.get("involution")
    return fusion_ring(
        tuple(doc["labels"]),
        doc["unit"],
        tensor,
        conj=None if conj is None else tuple(conj),
        check=check,
    )


def serialize_fusion_ring(ring: FusionRing) -> str:
    return canonical_text(
        {
            "format_version": FORMAT_VERSION,
            "kind": "fusion_ring",
            "labels": list(ring.labels),
            "unit": ring.unit,
            "involution": list(ring.conj),
            "N": ring.N.tolist(),
        }
    )


# ---------------------------------------------------------------------------
# group documents

def parse_group(document, check: bool = True) -> CayleyGroup:
    doc = _load(document)
    _expect_kind(doc, "group")
    for field in ("unit", "mul"):
        if field not in doc:
            raise StructureError(f"group document is missing {field!r}")
    mul = np.array(doc["mul"])
    if mul.dtype.kind not in "iu":
        raise StructureError("multiplication table entries must be integers")
    return cayley_group(mul, doc["unit"], labels=doc.get("labels"), check=check)


def serialize_group(group: CayleyGroup) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "group",
        "unit": group.identity,
        "mul": group.mul.tolist(),
    }
    if group.labels is not None:
        doc["labels"] = list(group.labels)
    return canonical_text(doc)


# ---------------------------------------------------------------------------
# groupoid documents

def parse_groupoid(document, tol: float = DEFAULT_TOL) -> Hypergroupoid:
    doc = _load(document)
    _expect_kind(doc, "groupoid")
    for field in ("objects", "mor", "comp", "star", "unit"):
        if field not in doc:
            raise StructureError(f"groupoid document is missing {field!r}")
    objects = doc["objects"]
    k = len(objects)
    mor = doc["mor"]
    comp_doc = doc["comp"]
    star = doc["star"]
    units = doc["unit"]
    try:
        comp = tuple(
            tuple(
                tuple(
                    _scalar_tensor(comp_doc[x][y][z], f"comp[{x}][{y}][{z}]")
                    for z in range(k)
                )
                for y in range(k)
            )
            for x in range(k)
        )
        mor_t = tuple(tuple(tuple(mor[x][y]) for y in range(k)) for x in range(k))
        star_t = tuple(tuple(tuple(star[x][y]) for y in range(k)) for x in range(k))
    except (IndexError, TypeError) as exc:
        raise StructureError(f"groupoid document has inconsistent shapes: {exc}") from exc
    return Hypergroupoid(tuple(objects), mor_t, comp, star_t, tuple(units))


def serialize_groupoid(g: Hypergroupoid) -> str:
    k = g.n_objects
    return canonical_text(
        {
            "format_version": FORMAT_VERSION,
            "kind": "groupoid",
            "objects": list(g.objects),
            "mor": [[list(g.mor[x][y]) for y in range(k)] for x in range(k)],
            "comp": [
                [[g.comp[x][y][z].tolist() for z in range(k)] for y in range(k)]
                for x in range(k)
            ],
            "star": [[list(g.star[x][y]) for y in range(k)] for x in range(k)],
            "unit": list(g.units),
        }
    )


# ---------------------------------------------------------------------------
# character table documents

def _complex_record(z: complex) -> dict:
    return {"im": float(z.imag), "re": float(z.real)}


def _parse_complex(entry, where: str) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(float(entry), 0.0)
    if isinstance(entry, dict) and set(entry) == {"re", "im"}:
        return complex(float(entry["re"]), float(entry["im"]))
    raise StructureError(f"{where}: expected a number or a re/im record")


def parse_character_table(document) -> CharacterTable:
    doc = _load(document)
    _expect_kind(doc, "character_table")
    for field in ("labels", "chars", "haar_weights", "dual_weights"):
        if field not in doc:
            raise StructureError(f"character table document is missing {field!r}")
    chars = np.array(
        [
            [_parse_complex(entry, f"chars[{m}][{a}]") for a, entry in enumerate(row)]
            for m, row in enumerate(doc["chars"])
        ],
        dtype=np.complex128,
    )
    return CharacterTable(
        tuple(doc["labels"]),
        chars,
        np.array(doc["haar_weights"], dtype=np.float64),
        np.array(doc["dual_weights"], dtype=np.float64),
    )


def serialize_character_table(ct: CharacterTable) -> str:
    return canonical_text(
        {
            "format_version": FORMAT_VERSION,
            "kind": "character_table",
            "labels": list(ct.labels),
            "chars": [[_complex_record(z) for z in row] for row in ct.chars],
            "haar_weights": ct.haar_weights.tolist(),
            "dual_weights": ct.dual_weights.tolist(),
        }
    )


# ---------------------------------------------------------------------------
# report documents (CLI machine output)

def validation_report_document(report: ValidationReport) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "validation_report",
        "passed": report.passed,
        "violations": [
            {"axiom": v.axiom, "indices": list(v.indices), "magnitude": v.magnitude}
            for v in report.violations
        ],
    }


def mixture_document(mix: Mixture) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "mixture",
        "labels": list(mix.table.labels),
        "coeffs": mix.coeffs.tolist(),
    }


def boundary_state_document(state: BoundaryState) -> dict:
    g = state.groupoid
    return {
        "format_version": FORMAT_VERSION,
        "kind": "boundary_state",
        "from_object": g.objects[state.from_object],
        "to_object": g.objects[state.to_object],
        "labels": list(g.mor[state.to_object][state.from_object]),
        "coeffs": state.coeffs.tolist(),
    }


def admissible_indices_document(result: AdmissibleIndexSet) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "admissible_indices",
        "bound": result.bound,
        "n_max": result.n_max,
        "continuum_from": result.continuum_from,
        "values": [
            {"value": e.value, "witness": list(e.witness)} for e in result.entries
        ],
    }


_PARSERS = {
    "hypergroup": parse_hypergroup,
    "fusion_ring": parse_fusion_ring,
    "group": parse_group,
    "groupoid": parse_groupoid,
    "character_table": parse_character_table,
}

_REPORT_FIELDS = {
    "validation_report": ("passed", "violations"),
    "mixture": ("labels", "coeffs"),
    "boundary_state": ("from_object", "to_object", "labels", "coeffs"),
    "admissible_indices": ("bound", "n_max", "values", "continuum_from"),
    "characters_result": ("character_table", "unitarity_defect", "dual", "dual_error"),
}


def parse_document(document):
    """Parse any supported document by its ``kind`` discriminator.

    Object kinds return the corresponding domain value; report kinds
    are checked for their required fields and returned as dicts.
    """
    doc = _load(document)
    kind = doc.get("kind")
    if kind in _PARSERS:
        return _PARSERS[kind](doc)
    if kind in _REPORT_FIELDS:
        _expect_kind(doc, kind)
        for field in _REPORT_FIELDS[kind]:
            if field not in doc:
                raise StructureError(f"{kind} document is missing {field!r}")
        return doc
    raise StructureError(f"unknown document kind {kind!r}")
