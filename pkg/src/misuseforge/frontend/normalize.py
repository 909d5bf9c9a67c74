"""Statement normalization.

Two distinct rewritings feed the pipeline:

* matching-normalization: variables become ``$v_i`` and constants become
  ``$c_i`` so that statements with different identifiers or literals can be
  compared by string similarity.  Constant-wrapper chains around a literal
  (``"x".getBytes()``, ``new String("x")``, ...) and example-definition
  placeholders (``StringLiterals.CONSTANT``) count as constants, and the
  argument list of a ``StringLiterals``/``IntLiterals`` construction
  collapses into a single constant token.

* template abstraction: variables become ``$v_i`` but every literal and
  every example-definition expression is preserved verbatim.

Abstract names are assigned in first-occurrence order; a seed map keeps the
insecure and secure sides of an example pair consistent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .nodes import Expr, MethodDecl, Node, Stmt
from .printer import expr_text, stmt_text

EDL_CLASSES = ("StringLiterals", "IntLiterals")
EDL_OPTION_GETTER = "getAString"
_CONST_WRAPPERS = ("getBytes", "toCharArray")

ABSTRACT_VAR_RE = re.compile(r"^\$v_\d+$")
ABSTRACT_CONST_RE = re.compile(r"^\$c_\d+$")
ABSTRACT_TOKEN_RE = re.compile(r"\$[vc]_\d+")


def edl_placeholder_domain(expr: Node) -> str | None:
    """'string' or 'int' when expr is an EDL constant placeholder."""
    if (expr.kind == "fieldAccess" and expr.name == "CONSTANT"
            and expr.receiver.kind == "nameRef"
            and expr.receiver.name in EDL_CLASSES):
        return "string" if expr.receiver.name == "StringLiterals" else "int"
    return None


def is_edl_option_ctor(expr: Node) -> bool:
    return expr.kind == "objectCreation" and expr.type_name in EDL_CLASSES


def is_constant_chain(expr: Node) -> bool:
    """Literal, placeholder, or a transparent wrapper chain around one."""
    if expr.kind in ("stringLit", "intLit"):
        return True
    if edl_placeholder_domain(expr) is not None:
        return True
    if expr.kind == "methodCall":
        if (expr.name in _CONST_WRAPPERS and not expr.args
                and expr.receiver is not None):
            return is_constant_chain(expr.receiver)
        if (expr.name == "valueOf" and expr.receiver is not None
                and expr.receiver.kind == "nameRef"
                and expr.receiver.name == "String" and len(expr.args) == 1):
            return is_constant_chain(expr.args[0])
        return False
    if expr.kind == "objectCreation" and expr.type_name == "String":
        return len(expr.args) == 1 and is_constant_chain(expr.args[0])
    return False


@dataclass
class NormalizedForm:
    text: str
    var_map: dict[str, str]
    const_map: dict[str, str]
    # per-occurrence (abstract token, original text), in emission order
    occurrences: list[tuple[str, str]] = field(default_factory=list)


class _Normalizer:
    def __init__(self, declared: set[str] | None, abstract_consts: bool,
                 seed: dict[str, str] | None = None):
        self.declared = declared if declared is not None else set()
        self.abstract_consts = abstract_consts
        self.var_map: dict[str, str] = dict(seed) if seed else {}
        self.const_map: dict[str, str] = {}
        self.occurrences: list[tuple[str, str]] = []
        used = [int(v[3:]) for v in self.var_map.values()
                if ABSTRACT_VAR_RE.match(v)]
        self.var_counter = max(used) + 1 if used else 0
        self.const_counter = 0

    def _var(self, name: str) -> str:
        if name not in self.var_map:
            self.var_map[name] = f"$v_{self.var_counter}"
            self.var_counter += 1
        token = self.var_map[name]
        self.occurrences.append((token, name))
        return token

    def _const(self, canonical: str) -> str:
        if canonical not in self.const_map:
            self.const_map[canonical] = f"$c_{self.const_counter}"
            self.const_counter += 1
        token = self.const_map[canonical]
        self.occurrences.append((token, canonical))
        return token

    def _is_variable(self, name: str) -> bool:
        if ABSTRACT_CONST_RE.match(name):
            return False
        if name in self.declared:
            return True
        return not name[0].isupper()

    # ----------------------------------------------------------- rendering

    def stmt(self, s: Stmt) -> str:
        kind = s.kind
        if kind == "localDecl":
            head = f"{s.decl_type.name} {self._var(s.name)}"
            if s.init is not None:
                return f"{head} = {self.expr(s.init)};"
            return f"{head};"
        if kind == "exprStmt":
            return f"{self.expr(s.expr)};"
        if kind == "assign":
            return f"{self.expr(s.target)} = {self.expr(s.value)};"
        if kind == "return":
            if s.value is None:
                return "return;"
            return f"return {self.expr(s.value)};"
        if kind == "if":
            text = f"if ({self.expr(s.cond)}) {self._block(s.then_block)}"
            if s.else_block is not None:
                text += f" else {self._block(s.else_block)}"
            return text
        if kind == "block":
            return self._block(s)
        raise ValueError(f"not a statement node: {kind}")

    def _block(self, block) -> str:
        if not block.stmts:
            return "{ }"
        return "{ " + " ".join(self.stmt(s) for s in block.stmts) + " }"

    def expr(self, e: Expr) -> str:
        kind = e.kind
        if self.abstract_consts and is_constant_chain(e):
            return self._const(expr_text(e))
        if kind in ("boolLit", "nullLit", "this", "typeName"):
            return e.text
        if kind in ("stringLit", "intLit"):
            # template abstraction preserves literals verbatim
            return e.text
        if kind == "nameRef":
            name = e.name
            if self._is_variable(name):
                return self._var(name)
            return name
        if kind == "fieldAccess":
            domain = edl_placeholder_domain(e)
            if domain is not None:
                return expr_text(e)  # reached in template mode only
            if e.receiver.kind == "this":
                return f"this.{self._var(e.name)}"
            return f"{self.expr(e.receiver)}.{e.name}"
        if kind == "methodCall":
            args = ", ".join(self.expr(a) for a in e.args)
            if e.receiver is None:
                return f"{e.name}({args})"
            return f"{self.expr(e.receiver)}.{e.name}({args})"
        if kind == "objectCreation":
            if is_edl_option_ctor(e):
                if self.abstract_consts:
                    arg_list = ", ".join(expr_text(a) for a in e.args)
                    return f"new {e.type_name}({self._const(arg_list)})"
                return expr_text(e)
            args = ", ".join(self.expr(a) for a in e.args)
            return f"new {e.type_name}({args})"
        if kind == "arrayCreation":
            return f"new {e.elem_type}[{self.expr(e.size)}]"
        if kind == "cast":
            return f"({e.type_name}) {self.expr(e.operand)}"
        if kind == "binary":
            return f"{self.expr(e.left)} {e.op} {self.expr(e.right)}"
        raise ValueError(f"not an expression node: {kind}")


def method_scope(method: MethodDecl) -> set[str]:
    """Names that denote variables inside a method: params, locals, fields."""
    names = {pname for _, pname in method.params}
    for node in method.body.walk():
        if node.kind == "localDecl":
            names.add(node.name)
    if method.owner is not None:
        names.update(f.name for f in method.owner.fields)
    return names


def normalize_matching(stmt: Stmt, declared: set[str] | None = None) -> NormalizedForm:
    """Normalize one statement for similarity comparison."""
    norm = _Normalizer(declared, abstract_consts=True)
    text = norm.stmt(stmt)
    return NormalizedForm(text=text, var_map=norm.var_map,
                          const_map=norm.const_map, occurrences=norm.occurrences)


def denormalize(form: NormalizedForm) -> str:
    """Invert a normalization using its per-occurrence substitutions."""
    out = form.text
    result = []
    idx = 0
    occ = iter(form.occurrences)
    for match in ABSTRACT_TOKEN_RE.finditer(out):
        token, original = next(occ)
        assert match.group(0) == token, "occurrence order out of sync"
        result.append(out[idx:match.start()])
        result.append(original)
        idx = match.end()
    result.append(out[idx:])
    return "".join(result)


def normalize_template(stmts: list[Stmt], seed_map: dict[str, str] | None = None,
                       declared: set[str] | None = None,
                       include_comments: bool = False) -> tuple[str, dict[str, str]]:
    """Abstract variables across statements, preserving all literals.

    Returns the joined template text (one statement per line) and the
    variable map extended from ``seed_map``.
    """
    norm = _Normalizer(declared, abstract_consts=False, seed=seed_map)
    lines: list[str] = []
    for s in stmts:
        if include_comments and getattr(s, "comments", None):
            lines.extend(s.comments)
        lines.append(norm.stmt(s))
    return "\n".join(lines), norm.var_map


def abstract_vars_in(text: str) -> list[str]:
    """Distinct $v_i tokens in first-occurrence order."""
    seen: list[str] = []
    for match in re.finditer(r"\$v_\d+", text):
        if match.group(0) not in seen:
            seen.append(match.group(0))
    return seen
