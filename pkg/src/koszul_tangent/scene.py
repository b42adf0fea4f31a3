"""Scene files: JSON in, :class:`DeformationScene` out, and a canonical renderer."""

from __future__ import annotations

import json
import re

from .errors import ParseError, PreconditionError
from .poly import Frac, frac, parse_poly
from .tangent import DEFAULT_LABELS, DeformationScene

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")
_KEYS = ("variables", "p", "f", "g", "extension", "labels", "check_regular")
_REQUIRED = ("variables", "p", "f", "g", "extension")


def _poly(text, variables, field):
    if not isinstance(text, str):
        raise ParseError(f"expected a polynomial string, got {type(text).__name__}", field=field)
    try:
        return parse_poly(text, variables)
    except ParseError as exc:
        raise ParseError(exc.reason, exc.offset, text, field) from None


def _perturbation(item, variables, field):
    if isinstance(item, dict):
        extra = sorted(set(item) - {"num", "den"})
        if extra or "num" not in item or "den" not in item:
            raise ParseError('expected {"num": ..., "den": ...}', field=field)
        num = _poly(item["num"], variables, f"{field}.num")
        den = _poly(item["den"], variables, f"{field}.den")
        if not den:
            raise ParseError("zero denominator", 0, item["den"], f"{field}.den")
        return frac(num, den)
    return _poly(item, variables, field)


def _variables(raw):
    if not isinstance(raw, list) or not raw:
        raise ParseError("expected a non-empty array of names", field="variables")
    for k, v in enumerate(raw):
        if not isinstance(v, str) or not _NAME.match(v):
            raise ParseError(f"{v!r} is not a valid variable name", field=f"variables[{k}]")
        if v == "eps":
            raise ParseError("'eps' is reserved for the dual-number generator", field=f"variables[{k}]")
    if len(set(raw)) != len(raw):
        raise ParseError("duplicate variable names", field="variables")
    return tuple(raw)


def scene_from_dict(doc: dict) -> DeformationScene:
    if not isinstance(doc, dict):
        raise ParseError("a scene must be a JSON object", 0)
    unknown = [k for k in doc if k not in _KEYS]
    if unknown:
        raise ParseError(f"unknown key {unknown[0]!r}", field=unknown[0])
    for key in _REQUIRED:
        if key not in doc:
            raise ParseError("missing", field=key)
    variables = _variables(doc["variables"])
    p = doc["p"]
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise ParseError("expected a positive integer", field="p")
    for key in ("f", "g"):
        if not isinstance(doc[key], list):
            raise ParseError("expected an array", field=key)
        if len(doc[key]) != p:
            raise ParseError(f"length {len(doc[key])} does not match p = {p}", field=key)
    f = [_poly(t, variables, f"f[{k}]") for k, t in enumerate(doc["f"])]
    g = [_perturbation(t, variables, f"g[{k}]") for k, t in enumerate(doc["g"])]
    extension = _poly(doc["extension"], variables, "extension")
    labels = doc.get("labels", {})
    if not isinstance(labels, dict) or any(
        k not in DEFAULT_LABELS or not isinstance(v, str) or not v for k, v in labels.items()
    ):
        raise ParseError('expected {"Y": name, "Z": name, "w": name}', field="labels")
    check = doc.get("check_regular", True)
    if not isinstance(check, bool):
        raise ParseError("expected true or false", field="check_regular")
    return DeformationScene(variables, p, f, g, extension, labels, check)


def parse_scene(text) -> DeformationScene:
    """Parse and validate a scene document (bytes or str).

    Grammar and shape problems raise :class:`ParseError` naming the field and
    the character offset (inside the field's string, or inside the document
    for JSON syntax errors).  Mathematical violations raise the relevant
    :class:`PreconditionError`.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("scene is not valid UTF-8", exc.start) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.pos, text) from None
    return scene_from_dict(doc)


def _g_value(gi):
    if isinstance(gi, Frac):
        return {"num": str(gi.num), "den": str(gi.den)}
    return str(gi)


def scene_to_dict(scene: DeformationScene) -> dict:
    doc = {
        "variables": list(scene.variables),
        "p": scene.p,
        "f": [str(x) for x in scene.f],
        "g": [_g_value(x) for x in scene.g],
        "extension": str(scene.extension),
    }
    labels = {k: v for k, v in sorted(scene.labels.items()) if DEFAULT_LABELS.get(k) != v}
    if labels:
        doc["labels"] = labels
    if not scene.check_regular:
        doc["check_regular"] = False
    return doc


def render_scene(scene: DeformationScene) -> bytes:
    """Canonical compact UTF-8 JSON; ``render_scene(parse_scene(b)) == b`` for canonical ``b``."""
    return json.dumps(scene_to_dict(scene), ensure_ascii=False, separators=(",", ":")).encode()


def load_scene(path) -> DeformationScene:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scene(data)

