"""Knot table ingestion and knot specifier resolution.

A table is JSON::

    {"format": "twistalex-knot-table", "version": 1,
     "knots": [{"name": "4_1",
                "input": {"braid": "1 -2 1 -2"},
                "genus": 1, "fibered": true,
                "volume": {"value": 2.0298832128, "source": "..."},
                "entropy": {"value": 0.9624236501, "source": "..."},
                "representations": ["reps/4_1_holonomy.json"]}]}

``input`` holds one or more of ``braid``, ``pd``, ``presentation`` and
``torus``; the first key listed is the primary form, and representation
files name the generators of that primary presentation.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from math import gcd

from .knots import (
    GroupPresentation,
    PresentationError,
    braid_presentation,
    parse_braid,
    parse_pd,
    pd_to_wirtinger,
    torus_presentation,
    unknot_presentation,
)
from .representations import Representation

INPUT_KINDS = ("braid", "pd", "presentation", "torus")
TABLE_FORMAT = "twistalex-knot-table"


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class Quantity:
    """An ingested real number with its provenance."""

    value: float
    source: str


@dataclass(frozen=True)
class KnotRecord:
    name: str
    inputs: tuple  # ((kind, data), ...), primary first
    genus: int | None = None
    fibered: bool | None = None
    volume: Quantity | None = None
    entropy: Quantity | None = None
    representations: tuple = ()
    base_dir: str = field(default=".", compare=False)

    @property
    def primary(self):
        return self.inputs[0][0]

    def presentation(self, kind=None):
        kind = kind or self.primary
        data = dict(self.inputs)[kind]
        return presentation_from_input(kind, data)

    def all_presentations(self):
        return [(kind, presentation_from_input(kind, data)) for kind, data in self.inputs]

    def torus_parameters(self):
        data = dict(self.inputs).get("torus")
        return tuple(data) if data else None

    def load_representations(self):
        reps = []
        for ref in self.representations:
            path = ref if os.path.isabs(ref) else os.path.join(self.base_dir, ref)
            reps.append(Representation.load(path))
        return reps


def presentation_from_input(kind, data):
    if kind == "braid":
        return braid_presentation(parse_braid(data))
    if kind == "pd":
        return pd_to_wirtinger(parse_pd(data))
    if kind == "presentation":
        return GroupPresentation.from_dict(data)
    if kind == "torus":
        p, q = data
        return torus_presentation(int(p), int(q))
    raise TableError(f"unknown input kind {kind!r}")


def _line_of(text, name):
    m = re.search(r'"name"\s*:\s*' + re.escape(json.dumps(name)), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _quantity(raw, where):
    if raw is None:
        return None
    if isinstance(raw, (int, float)):
        raise TableError(f"{where}: needs {{value, source}}, ingested numbers carry a source")
    try:
        value = float(raw["value"])
        source = str(raw["source"])
    except (KeyError, TypeError, ValueError):
        raise TableError(f"{where}: expected {{\"value\": number, \"source\": string}}") from None
    if value < 0:
        raise TableError(f"{where}: must be nonnegative")
    return Quantity(value, source)


def parse_record(raw, base_dir=".", where="record"):
    if not isinstance(raw, dict):
        raise TableError(f"{where}: expected an object")
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise TableError(f"{where}: field 'name' missing or not a string")
    where = f"{where} ({name!r})"
    unknown = set(raw) - {
        "name", "input", "genus", "fibered", "volume", "entropy", "representations", "notes",
    }
    if unknown:
        raise TableError(f"{where}: unknown fields {sorted(unknown)}")
    inp = raw.get("input")
    if not isinstance(inp, dict) or not inp:
        raise TableError(f"{where}: field 'input' needs at least one of {INPUT_KINDS}")
    inputs = []
    for kind, data in inp.items():
        if kind not in INPUT_KINDS:
            raise TableError(f"{where}: field 'input.{kind}' is not one of {INPUT_KINDS}")
        if kind == "torus":
            if not (isinstance(data, list) and len(data) == 2 and all(isinstance(x, int) for x in data)):
                raise TableError(f"{where}: field 'input.torus' must be [p, q]")
            p, q = data
            if gcd(p, q) != 1:
                raise TableError(f"{where}: field 'input.torus': gcd({p},{q}) != 1, not a knot")
        try:
            presentation_from_input(kind, data)
        except (PresentationError, ValueError, TypeError, KeyError) as exc:
            raise TableError(f"{where}: field 'input.{kind}': {exc}") from None
        inputs.append((kind, data if kind != "torus" else tuple(data)))
    genus = raw.get("genus")
    if genus is not None and (not isinstance(genus, int) or isinstance(genus, bool) or genus < 0):
        raise TableError(f"{where}: field 'genus' must be a nonnegative integer")
    fibered = raw.get("fibered")
    if fibered is not None and not isinstance(fibered, bool):
        raise TableError(f"{where}: field 'fibered' must be true or false")
    reps = raw.get("representations", [])
    if not isinstance(reps, list) or not all(isinstance(r, str) for r in reps):
        raise TableError(f"{where}: field 'representations' must be a list of file names")
    return KnotRecord(
        name=name,
        inputs=tuple(inputs),
        genus=genus,
        fibered=fibered,
        volume=_quantity(raw.get("volume"), f"{where}: field 'volume'"),
        entropy=_quantity(raw.get("entropy"), f"{where}: field 'entropy'"),
        representations=tuple(reps),
        base_dir=base_dir,
    )


def parse_table(text, base_dir=".", verify=True):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict) or "knots" not in data:
        raise TableError("line 1: top level must be an object with a 'knots' list")
    if data.get("format", TABLE_FORMAT) != TABLE_FORMAT:
        raise TableError(f"line 1: unknown table format {data.get('format')!r}")
    records, seen = [], set()
    for i, raw in enumerate(data["knots"]):
        line = _line_of(text, raw.get("name")) if isinstance(raw, dict) else None
        where = f"line {line}: record {i}" if line else f"record {i}"
        rec = parse_record(raw, base_dir, where)
        if rec.name in seen:
            raise TableError(f"{where}: duplicate knot name {rec.name!r}")
        seen.add(rec.name)
        if verify and rec.genus is not None:
            _verify_genus(rec, where)
        records.append(rec)
    return records


def _verify_genus(rec, where):
    from .torsion import alexander_polynomial

    span = alexander_polynomial(rec.presentation()).degree()
    if span > 2 * rec.genus:
        raise TableError(
            f"{where}: field 'genus': deg Delta = {span} exceeds 2g = {2 * rec.genus}"
        )


def load_table(path, verify=True):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise TableError(f"cannot read table {path}: {exc.strerror}") from None
    return parse_table(text, os.path.dirname(os.path.abspath(path)), verify)


def bundled_table_path():
    return str(resources.files("twistalex") / "data" / "table.json")


def load_bundled_table(verify=False):
    return load_table(bundled_table_path(), verify=verify)


# ---------------------------------------------------------------------------
# knot specifiers used on the command line


def _guess_text_kind(text):
    return "pd" if re.search(r"X\s*[\(\[]", text) else "braid"


def presentation_from_text(text, fmt=None):
    text = text.strip()
    if fmt is None:
        if text.startswith("{"):
            fmt = "presentation"
        else:
            fmt = _guess_text_kind(text)
    if fmt == "presentation":
        try:
            return GroupPresentation.from_json(text)
        except json.JSONDecodeError as exc:
            raise PresentationError(f"invalid presentation JSON: {exc.msg}") from None
    if fmt == "braid":
        return braid_presentation(parse_braid(text))
    if fmt == "pd":
        return pd_to_wirtinger(parse_pd(text))
    raise PresentationError(f"unknown format {fmt!r}")


def resolve_knot(spec, table=None, fmt=None):
    """(name, presentation, record or None) for ``unknot``, ``torus:p,q``,
    ``braid:...``, ``pd:...``, a table name, or a file path."""
    if spec == "unknot":
        return "unknot", unknot_presentation(), None
    m = re.fullmatch(r"torus:\s*(-?\d+)\s*,\s*(-?\d+)", spec)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        return f"T({p},{q})", torus_presentation(p, q), None
    for prefix in ("braid", "pd", "presentation"):
        if spec.startswith(prefix + ":"):
            return spec, presentation_from_text(spec[len(prefix) + 1:], prefix), None
    if os.path.exists(spec):
        with open(spec) as fh:
            return os.path.basename(spec), presentation_from_text(fh.read(), fmt), None
    records = table if table is not None else load_bundled_table()
    for rec in records:
        if rec.name == spec:
            return rec.name, rec.presentation(), rec
    raise PresentationError(f"unknown knot {spec!r}: not a specifier, file or table name")
