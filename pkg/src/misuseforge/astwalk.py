"""Tree queries shared by inference, the program model, and the matcher."""

from __future__ import annotations

from .frontend import Expr, MethodDecl, NameRef, Node, Stmt


def expr_roots(stmt: Stmt) -> list[Expr]:
    """Direct expression roots of a statement (no descent into sub-statements)."""
    kind = stmt.kind
    if kind == "localDecl":
        return [stmt.init] if stmt.init is not None else []
    if kind == "exprStmt":
        return [stmt.expr]
    if kind == "assign":
        return [stmt.target, stmt.value]
    if kind == "return":
        return [stmt.value] if stmt.value is not None else []
    if kind == "if":
        return [stmt.cond]
    return []


def sub_stmts(stmt: Stmt) -> list[Stmt]:
    if stmt.kind == "if":
        nested = list(stmt.then_block.stmts)
        if stmt.else_block is not None:
            nested.extend(stmt.else_block.stmts)
        return nested
    if stmt.kind == "block":
        return list(stmt.stmts)
    return []


def flat_stmts(stmts: list[Stmt]) -> list[Stmt]:
    """Pre-order flattening of a statement list, descending into branches."""
    out = []
    for s in stmts:
        out.append(s)
        out.extend(flat_stmts(sub_stmts(s)))
    return out


def expr_nodes(expr: Expr):
    """Pre-order iteration over an expression tree."""
    yield expr
    for child in expr.children:
        yield from expr_nodes(child)


def stmt_expr_nodes(stmt: Stmt):
    """All expression nodes of a statement, including nested branches."""
    for root in expr_roots(stmt):
        yield from expr_nodes(root)
    for nested in sub_stmts(stmt):
        yield from stmt_expr_nodes(nested)


def name_reads(stmt: Stmt) -> list[NameRef]:
    """Variable reads in a statement; assignment targets do not count."""
    reads = []
    skip = None
    if stmt.kind == "assign" and stmt.target.kind == "nameRef":
        skip = stmt.target
    for node in stmt_expr_nodes(stmt):
        if node.kind == "nameRef" and node is not skip:
            reads.append(node)
    return reads


def defined_name(stmt: Stmt) -> str | None:
    """Variable (or field, for this.x/bare-field assignment) a statement defines."""
    if stmt.kind == "localDecl":
        return stmt.name
    if stmt.kind == "assign":
        if stmt.target.kind == "nameRef":
            return stmt.target.name
        if stmt.target.kind == "fieldAccess" and stmt.target.receiver.kind == "this":
            return stmt.target.name
    return None


def find_path(stmt: Stmt, target: Node) -> list[Node] | None:
    """Identity path from a statement down to a node within it, or None."""

    def search(node: Node, path: list[Node]) -> list[Node] | None:
        path.append(node)
        if node is target:
            return list(path)
        kids: list[Node]
        if isinstance(node, Stmt):
            kids = expr_roots(node) + sub_stmts(node)
        else:
            kids = node.children
        for child in kids:
            found = search(child, path)
            if found is not None:
                return found
        path.pop()
        return None

    return search(stmt, [])


def containing_stmt(method: MethodDecl, node: Node) -> Stmt | None:
    """Top-level statement of a method body containing the given node."""
    for stmt in method.body.stmts:
        if find_path(stmt, node) is not None:
            return stmt
    return None


def calls_in(stmt: Stmt):
    """Method calls and object creations within a statement, pre-order."""
    for node in stmt_expr_nodes(stmt):
        if node.kind in ("methodCall", "objectCreation"):
            yield node


def type_env(method: MethodDecl) -> dict[str, str]:
    """Declared static types of names visible in a method."""
    env: dict[str, str] = {}
    if method.owner is not None:
        for f in method.owner.fields:
            env[f.name] = f.decl_type.name
    for t, name in method.params:
        env[name] = t.name
    for stmt in flat_stmts(method.body.stmts):
        if stmt.kind == "localDecl":
            env[stmt.name] = stmt.decl_type.name
    return env
