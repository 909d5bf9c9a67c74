"""Frontend: parsing, printing, and normalization of the subject subset."""

from .nodes import (
    ArrayCreation, Assign, BinaryOp, Block, BoolLit, Cast, ClassDecl, Expr,
    ExprStmt, FieldAccess, FieldDecl, If, IntLit, LocalDecl, MethodCall,
    MethodDecl, NameRef, Node, NullLit, ObjectCreation, Return, SourceUnit,
    Stmt, StringLit, ThisRef, TypeRef, structurally_equal,
)
from .parser import SNIPPET_METHOD, parse_expr, parse_snippet, parse_stmt, parse_unit
from .printer import expr_text, pretty_print, stmt_lines, stmt_text
from .normalize import (
    NormalizedForm, abstract_vars_in, denormalize, edl_placeholder_domain,
    is_constant_chain, is_edl_option_ctor, method_scope, normalize_matching,
    normalize_template, EDL_OPTION_GETTER,
)

__all__ = [
    "ArrayCreation", "Assign", "BinaryOp", "Block", "BoolLit", "Cast",
    "ClassDecl", "Expr", "ExprStmt", "FieldAccess", "FieldDecl", "If",
    "IntLit", "LocalDecl", "MethodCall", "MethodDecl", "NameRef", "Node",
    "NullLit", "ObjectCreation", "Return", "SourceUnit", "Stmt", "StringLit",
    "ThisRef", "TypeRef", "structurally_equal", "SNIPPET_METHOD",
    "parse_expr", "parse_snippet", "parse_stmt", "parse_unit", "expr_text",
    "pretty_print", "stmt_lines", "stmt_text", "NormalizedForm",
    "abstract_vars_in", "denormalize", "edl_placeholder_domain",
    "is_constant_chain", "is_edl_option_ctor", "method_scope",
    "normalize_matching", "normalize_template", "EDL_OPTION_GETTER",
]
