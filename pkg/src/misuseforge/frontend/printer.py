"""Canonical, deterministic rendering of syntax trees.

Statements print on a single line with normalized spacing (space after
commas, spaces around assignment/equality, no space inside parentheses),
which makes the exact-text diff pass whitespace-insensitive.
"""

from __future__ import annotations

from .nodes import (
    Assign, Block, ClassDecl, ExprStmt, FieldDecl, If, LocalDecl, MethodDecl,
    Node, Return, SourceUnit, Stmt,
)


def expr_text(e: Node) -> str:
    kind = e.kind
    if kind in ("nameRef", "stringLit", "intLit", "boolLit", "nullLit",
                "this", "typeName"):
        return e.text
    if kind == "fieldAccess":
        return f"{expr_text(e.receiver)}.{e.name}"
    if kind == "methodCall":
        args = ", ".join(expr_text(a) for a in e.args)
        if e.receiver is None:
            return f"{e.name}({args})"
        return f"{expr_text(e.receiver)}.{e.name}({args})"
    if kind == "objectCreation":
        args = ", ".join(expr_text(a) for a in e.args)
        return f"new {e.type_name}({args})"
    if kind == "arrayCreation":
        return f"new {e.elem_type}[{expr_text(e.size)}]"
    if kind == "cast":
        return f"({e.type_name}) {expr_text(e.operand)}"
    if kind == "binary":
        return f"{expr_text(e.left)} {e.op} {expr_text(e.right)}"
    raise ValueError(f"not an expression node: {kind}")


def stmt_text(s: Stmt) -> str:
    kind = s.kind
    if kind == "localDecl":
        head = f"{s.decl_type.name} {s.name}"
        if s.init is not None:
            return f"{head} = {expr_text(s.init)};"
        return f"{head};"
    if kind == "exprStmt":
        return f"{expr_text(s.expr)};"
    if kind == "assign":
        return f"{expr_text(s.target)} = {expr_text(s.value)};"
    if kind == "return":
        if s.value is None:
            return "return;"
        return f"return {expr_text(s.value)};"
    if kind == "if":
        text = f"if ({expr_text(s.cond)}) {_block_inline(s.then_block)}"
        if s.else_block is not None:
            text += f" else {_block_inline(s.else_block)}"
        return text
    if kind == "block":
        return _block_inline(s)
    raise ValueError(f"not a statement node: {kind}")


def _block_inline(block: Block) -> str:
    if not block.stmts:
        return "{ }"
    inner = " ".join(stmt_text(s) for s in block.stmts)
    return f"{{ {inner} }}"


def stmt_lines(s: Stmt, with_comments: bool = False) -> list[str]:
    """One rendered line per statement, optionally preceded by its comments."""
    lines = []
    if with_comments:
        lines.extend(s.comments)
    lines.append(stmt_text(s))
    return lines


def _method_lines(m: MethodDecl, indent: str) -> list[str]:
    lines = []
    if m.is_override:
        lines.append(f"{indent}@Override")
    mods = " ".join(m.modifiers)
    mods = mods + " " if mods else ""
    params = ", ".join(f"{t.name} {n}" for t, n in m.params)
    if m.is_constructor:
        head = f"{mods}{m.name}({params})"
    else:
        head = f"{mods}{m.return_type.name} {m.name}({params})"
    lines.append(f"{indent}{head} {{")
    for s in m.body.stmts:
        for line in stmt_lines(s):
            lines.append(f"{indent}  {line}")
    lines.append(f"{indent}}}")
    return lines


def _class_lines(c: ClassDecl) -> list[str]:
    head = f"class {c.name}"
    if c.super_types:
        head += " implements " + ", ".join(c.super_types)
    lines = [head + " {"]
    for f in c.fields:
        mods = " ".join(f.modifiers)
        mods = mods + " " if mods else ""
        if f.init is not None:
            lines.append(f"  {mods}{f.decl_type.name} {f.name} = {expr_text(f.init)};")
        else:
            lines.append(f"  {mods}{f.decl_type.name} {f.name};")
    for m in c.methods:
        lines.extend(_method_lines(m, "  "))
    lines.append("}")
    return lines


def pretty_print(node: Node) -> str:
    """Canonical text for any node; parse(pretty_print(x)) is structurally x."""
    if isinstance(node, SourceUnit):
        return "\n".join("\n".join(_class_lines(c)) for c in node.classes) + "\n"
    if isinstance(node, ClassDecl):
        return "\n".join(_class_lines(node))
    if isinstance(node, MethodDecl):
        return "\n".join(_method_lines(node, ""))
    if isinstance(node, FieldDecl):
        if node.init is not None:
            return f"{node.decl_type.name} {node.name} = {expr_text(node.init)};"
        return f"{node.decl_type.name} {node.name};"
    if isinstance(node, Stmt):
        return stmt_text(node)
    return expr_text(node)
