"""Vulnerability-repair patterns and their JSON persistence (schema v1).

A pattern pairs a vulnerable template (abstracted edit-relevant context with
literals preserved and per-argument dataflow edges) with an abstract fix,
plus the critical-API binding, anchor APIs, the example's variable map, and
any example-definition directives.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConflictingPatterns, SchemaError, VersionMismatch

SCHEMA_VERSION = 1

FORM_INVOCATION = "invocation"
FORM_OVERRIDE = "override"
FORM_DELETED = "deletedCall"

MODE_EXPR = "expressionReplacement"
MODE_SNIPPET = "snippetReplacement"

# dataflow edge source prefixes
SRC_EDL_STRING = "edl:string"
SRC_EDL_INT = "edl:int"
SRC_EDL_OPTIONS = "edl:options"
SRC_EDL_RANGE = "edl:range"
SRC_LITERAL = "literal:"  # followed by the canonical literal text
SRC_STMT = "stmt:"        # followed by a template statement index
SRC_FREE = "free:"        # followed by an abstract variable

RECEIVER_INDEX = -1  # argIndex denoting the call receiver


@dataclass(frozen=True)
class DataflowEdge:
    source: str
    arg_index: int


@dataclass
class EdlDirective:
    kind: str  # 'constantPlaceholder' | 'optionSet' | 'valueRange'
    domain: str | None = None          # constantPlaceholder: 'string' | 'int'
    insecure: list[str] = field(default_factory=list)
    secure: list[str] = field(default_factory=list)
    arg_index: int | None = None       # optionSet / valueRange
    min_value: int | None = None       # valueRange
    dimension: str | None = None       # valueRange: 'argValue' | 'arrayLength'

    def shape(self) -> tuple:
        """Identity used to decide mergeability."""
        if self.kind == "constantPlaceholder":
            return (self.kind, self.domain)
        if self.kind == "optionSet":
            return (self.kind, self.arg_index)
        return (self.kind, self.arg_index, self.dimension)


@dataclass
class Pattern:
    binding: str
    form: str
    template_text: str
    fix_text: str
    fix_mode: str
    arg_index: int | None = None
    param_vars: list[str] | None = None  # override form: abstract param names
    anchors: list[str] = field(default_factory=list)
    dataflow: list[DataflowEdge] = field(default_factory=list)
    old_expr: str | None = None  # refined update, insecure side
    new_expr: str | None = None  # refined update, secure side
    var_map: dict[str, str] = field(default_factory=dict)
    edl: list[EdlDirective] = field(default_factory=list)

    @property
    def id(self) -> str:
        payload = "\x1f".join([self.binding, self.form,
                               self.template_text, self.fix_text])
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]

    def edl_shape(self) -> frozenset:
        return frozenset(d.shape() for d in self.edl)

    def directive(self, kind: str) -> EdlDirective | None:
        for d in self.edl:
            if d.kind == kind:
                return d
        return None


# -------------------------------------------------------------- persistence

_PATTERN_FIELDS = {"id", "criticalApi", "anchors", "template", "fix", "varMap", "edl"}
_CRITICAL_FIELDS = {"binding", "form", "argIndex", "paramVars"}
_TEMPLATE_FIELDS = {"text", "dataflow"}
_EDGE_FIELDS = {"source", "argIndex"}
_FIX_FIELDS = {"text", "mode", "oldExpr", "newExpr"}
_EDL_FIELDS = {"kind", "domain", "insecure", "secure", "argIndex", "min", "dimension"}


def _check_fields(obj: dict, allowed: set[str], where: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(f"{where} has unknown field {sorted(unknown)[0]!r}")


def pattern_to_dict(p: Pattern) -> dict:
    doc = {
        "id": p.id,
        "criticalApi": {
            "binding": p.binding,
            "form": p.form,
            "argIndex": p.arg_index,
            "paramVars": p.param_vars,
        },
        "anchors": list(p.anchors),
        "template": {
            "text": p.template_text,
            "dataflow": [{"source": e.source, "argIndex": e.arg_index}
                         for e in p.dataflow],
        },
        "fix": {
            "text": p.fix_text,
            "mode": p.fix_mode,
            "oldExpr": p.old_expr,
            "newExpr": p.new_expr,
        },
        "varMap": dict(p.var_map),
        "edl": [_directive_to_dict(d) for d in p.edl],
    }
    return doc


def _directive_to_dict(d: EdlDirective) -> dict:
    if d.kind == "constantPlaceholder":
        return {"kind": d.kind, "domain": d.domain}
    if d.kind == "optionSet":
        return {"kind": d.kind, "insecure": list(d.insecure),
                "secure": list(d.secure), "argIndex": d.arg_index}
    return {"kind": d.kind, "min": d.min_value, "dimension": d.dimension,
            "argIndex": d.arg_index}


def _directive_from_dict(raw: dict, where: str) -> EdlDirective:
    _check_fields(raw, _EDL_FIELDS, where)
    kind = raw.get("kind")
    if kind == "constantPlaceholder":
        return EdlDirective(kind=kind, domain=raw["domain"])
    if kind == "optionSet":
        return EdlDirective(kind=kind, insecure=list(raw["insecure"]),
                            secure=list(raw["secure"]), arg_index=raw["argIndex"])
    if kind == "valueRange":
        return EdlDirective(kind=kind, min_value=raw["min"],
                            dimension=raw["dimension"], arg_index=raw["argIndex"])
    raise SchemaError(f"{where} has unknown directive kind {kind!r}")


def pattern_from_dict(raw: dict, index: int = 0) -> Pattern:
    where = f"pattern {index}"
    _check_fields(raw, _PATTERN_FIELDS, where)
    for name in ("criticalApi", "template", "fix"):
        if name not in raw:
            raise SchemaError(f"{where} is missing field {name!r}")
    crit = raw["criticalApi"]
    _check_fields(crit, _CRITICAL_FIELDS, f"{where}.criticalApi")
    tmpl = raw["template"]
    _check_fields(tmpl, _TEMPLATE_FIELDS, f"{where}.template")
    fix = raw["fix"]
    _check_fields(fix, _FIX_FIELDS, f"{where}.fix")
    edges = []
    for k, e in enumerate(tmpl.get("dataflow", [])):
        _check_fields(e, _EDGE_FIELDS, f"{where}.template.dataflow[{k}]")
        edges.append(DataflowEdge(source=e["source"], arg_index=e["argIndex"]))
    pattern = Pattern(
        binding=crit["binding"],
        form=crit["form"],
        arg_index=crit.get("argIndex"),
        param_vars=crit.get("paramVars"),
        anchors=list(raw.get("anchors", [])),
        template_text=tmpl["text"],
        dataflow=edges,
        fix_text=fix["text"],
        fix_mode=fix["mode"],
        old_expr=fix.get("oldExpr"),
        new_expr=fix.get("newExpr"),
        var_map=dict(raw.get("varMap", {})),
        edl=[_directive_from_dict(d, f"{where}.edl[{k}]")
             for k, d in enumerate(raw.get("edl", []))],
    )
    declared = raw.get("id")
    if declared is not None and declared != pattern.id:
        raise SchemaError(f"{where}: id {declared!r} does not match content")
    return pattern


def save_patterns(patterns: list[Pattern], path: str | Path):
    doc = {"version": SCHEMA_VERSION,
           "patterns": [pattern_to_dict(p) for p in patterns]}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_patterns(path: str | Path) -> list[Pattern]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"patterns file is not valid JSON: {exc}") from exc
    _check_fields(doc, {"version", "patterns"}, "patterns file")
    if doc.get("version") != SCHEMA_VERSION:
        raise VersionMismatch(
            f"unsupported patterns schema version {doc.get('version')!r}")
    return [pattern_from_dict(raw, i) for i, raw in enumerate(doc.get("patterns", []))]


# -------------------------------------------------------------- merging


def merge_patterns(patterns: list[Pattern]) -> list[Pattern]:
    """Merge patterns demonstrating the same misuse of one API.

    Patterns agreeing on (binding, form, directive shape) merge: option
    lists union, value-range minimums take the maximum.  Structural
    disagreement (different dataflow edges) raises ConflictingPatterns.
    """
    ordered = sorted(patterns, key=lambda p: (p.binding, p.id))
    groups: dict[tuple, Pattern] = {}
    out: list[Pattern] = []
    for p in ordered:
        key = (p.binding, p.form, p.edl_shape())
        base = groups.get(key)
        if base is None:
            merged = Pattern(
                binding=p.binding, form=p.form, arg_index=p.arg_index,
                param_vars=list(p.param_vars) if p.param_vars else None,
                anchors=list(p.anchors), template_text=p.template_text,
                dataflow=list(p.dataflow), fix_text=p.fix_text,
                fix_mode=p.fix_mode, old_expr=p.old_expr, new_expr=p.new_expr,
                var_map=dict(p.var_map),
                edl=[EdlDirective(kind=d.kind, domain=d.domain,
                                  insecure=list(d.insecure), secure=list(d.secure),
                                  arg_index=d.arg_index, min_value=d.min_value,
                                  dimension=d.dimension) for d in p.edl])
            groups[key] = merged
            out.append(merged)
            continue
        if list(base.dataflow) != list(p.dataflow):
            raise ConflictingPatterns(
                f"patterns {base.id} and {p.id} for {p.binding} disagree on "
                "template dataflow")
        _merge_directives(base, p)
    return sorted(out, key=lambda p: (p.binding, p.id))


def _merge_directives(base: Pattern, extra: Pattern):
    by_shape = {d.shape(): d for d in base.edl}
    for d in extra.edl:
        target = by_shape[d.shape()]
        if d.kind == "optionSet":
            for v in d.insecure:
                if v not in target.insecure:
                    target.insecure.append(v)
            for v in d.secure:
                if v not in target.secure:
                    target.secure.append(v)
        elif d.kind == "valueRange":
            target.min_value = max(target.min_value, d.min_value)
