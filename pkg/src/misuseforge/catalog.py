"""Security-API catalog: the externally configurable knowledge base.

Each entry names a method (or constructor, method "<init>") of a security
class, its fully qualified binding string, whether it may be overridden
(interface callbacks), and whether calling it yields random data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import SchemaError

CTOR = "<init>"

_REQUIRED_FIELDS = ("class", "method", "params", "binding")
_OPTIONAL_FIELDS = ("overridable", "random")


@dataclass(frozen=True)
class ApiBinding:
    class_name: str
    method: str  # "<init>" for constructors
    params: tuple[str, ...]
    binding: str
    overridable: bool = False
    random: bool = False

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass
class SecurityApiCatalog:
    entries: list[ApiBinding] = field(default_factory=list)

    def __post_init__(self):
        self._by_key = {(e.class_name, e.method, e.arity): e for e in self.entries}
        self._by_binding = {e.binding: e for e in self.entries}

    def lookup(self, class_name: str, method: str, arity: int) -> ApiBinding | None:
        return self._by_key.get((class_name, method, arity))

    def by_binding(self, binding: str) -> ApiBinding | None:
        return self._by_binding.get(binding)

    def class_names(self) -> set[str]:
        return {e.class_name for e in self.entries}


def _parse_entry(index: int, raw: dict) -> ApiBinding:
    if not isinstance(raw, dict):
        raise SchemaError(f"api entry {index} is not an object")
    for name in _REQUIRED_FIELDS:
        if name not in raw:
            raise SchemaError(f"api entry {index} is missing field {name!r}")
    unknown = set(raw) - set(_REQUIRED_FIELDS) - set(_OPTIONAL_FIELDS)
    if unknown:
        raise SchemaError(f"api entry {index} has unknown field {sorted(unknown)[0]!r}")
    if not isinstance(raw["params"], list):
        raise SchemaError(f"api entry {index}: 'params' must be a list")
    return ApiBinding(
        class_name=raw["class"],
        method=raw["method"],
        params=tuple(raw["params"]),
        binding=raw["binding"],
        overridable=bool(raw.get("overridable", False)),
        random=bool(raw.get("random", False)),
    )


def load_catalog(path: str | Path) -> SecurityApiCatalog:
    """Load a catalog file; raises OSError / SchemaError."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"catalog is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "apis" not in doc:
        raise SchemaError("catalog must be an object with an 'apis' list")
    unknown = set(doc) - {"apis"}
    if unknown:
        raise SchemaError(f"catalog has unknown field {sorted(unknown)[0]!r}")
    entries = [_parse_entry(i, raw) for i, raw in enumerate(doc["apis"])]
    if not entries:
        raise SchemaError("catalog declares no apis")
    bindings = [e.binding for e in entries]
    dupes = {b for b in bindings if bindings.count(b) > 1}
    if dupes:
        raise SchemaError(f"duplicate binding {sorted(dupes)[0]!r}")
    return SecurityApiCatalog(entries=entries)


def default_catalog_path() -> Path:
    """Path of the catalog shipped with the package."""
    return Path(resources.files("misuseforge").joinpath("data/catalog.json"))
