"""Typed syntax tree for the analyzed Java-like subset.

Every node carries a (start, end) character span into the unit's raw text.
Leaves expose their content through ``text``; inner nodes expose a ``label``
(member / type / operator name) that is part of their structural identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field


Span = tuple[int, int]


@dataclass
class Node:
    span: Span = field(default=(0, 0), kw_only=True)

    kind = ""  # class attribute, overridden per subclass

    @property
    def children(self) -> list["Node"]:
        return []

    @property
    def text(self) -> str | None:
        """Leaf content; None for inner nodes."""
        return None

    @property
    def label(self) -> str:
        """Structural name (member/type/operator) for inner nodes."""
        return ""

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


class Expr(Node):
    pass


class Stmt(Node):
    pass


# ---------------------------------------------------------------- leaves


@dataclass
class TypeRef(Node):
    name: str = ""

    kind = "typeName"

    @property
    def text(self):
        return self.name


@dataclass
class NameRef(Expr):
    name: str = ""

    kind = "nameRef"

    @property
    def text(self):
        return self.name


@dataclass
class ThisRef(Expr):
    kind = "this"

    @property
    def text(self):
        return "this"


@dataclass
class StringLit(Expr):
    value: str = ""

    kind = "stringLit"

    @property
    def text(self):
        escaped = self.value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'


@dataclass
class IntLit(Expr):
    value: int = 0

    kind = "intLit"

    @property
    def text(self):
        return str(self.value)


@dataclass
class BoolLit(Expr):
    value: bool = False

    kind = "boolLit"

    @property
    def text(self):
        return "true" if self.value else "false"


@dataclass
class NullLit(Expr):
    kind = "nullLit"

    @property
    def text(self):
        return "null"


# ---------------------------------------------------------------- expressions


@dataclass
class FieldAccess(Expr):
    receiver: Expr = None
    name: str = ""

    kind = "fieldAccess"

    @property
    def children(self):
        return [self.receiver]

    @property
    def label(self):
        return self.name


@dataclass
class MethodCall(Expr):
    receiver: Expr | None = None
    name: str = ""
    args: list[Expr] = field(default_factory=list)

    kind = "methodCall"

    @property
    def children(self):
        base = [] if self.receiver is None else [self.receiver]
        return base + list(self.args)

    @property
    def label(self):
        return self.name


@dataclass
class ObjectCreation(Expr):
    type_name: str = ""
    args: list[Expr] = field(default_factory=list)

    kind = "objectCreation"

    @property
    def children(self):
        return list(self.args)

    @property
    def label(self):
        return self.type_name


@dataclass
class ArrayCreation(Expr):
    elem_type: str = ""
    size: Expr = None

    kind = "arrayCreation"

    @property
    def children(self):
        return [self.size]

    @property
    def label(self):
        return self.elem_type


@dataclass
class Cast(Expr):
    type_name: str = ""
    operand: Expr = None

    kind = "cast"

    @property
    def children(self):
        return [self.operand]

    @property
    def label(self):
        return self.type_name


@dataclass
class BinaryOp(Expr):
    op: str = "=="
    left: Expr = None
    right: Expr = None

    kind = "binary"

    @property
    def children(self):
        return [self.left, self.right]

    @property
    def label(self):
        return self.op


# ---------------------------------------------------------------- statements


@dataclass
class LocalDecl(Stmt):
    decl_type: TypeRef = None
    name: str = ""
    init: Expr | None = None
    comments: list[str] = field(default_factory=list)

    kind = "localDecl"

    @property
    def children(self):
        base = [self.decl_type, NameRef(name=self.name, span=self.span)]
        if self.init is not None:
            base.append(self.init)
        return base

    @property
    def label(self):
        return self.name


@dataclass
class ExprStmt(Stmt):
    expr: Expr = None
    comments: list[str] = field(default_factory=list)

    kind = "exprStmt"

    @property
    def children(self):
        return [self.expr]


@dataclass
class Assign(Stmt):
    target: Expr = None  # NameRef or FieldAccess
    value: Expr = None
    comments: list[str] = field(default_factory=list)

    kind = "assign"

    @property
    def children(self):
        return [self.target, self.value]


@dataclass
class Return(Stmt):
    value: Expr | None = None
    comments: list[str] = field(default_factory=list)

    kind = "return"

    @property
    def children(self):
        return [] if self.value is None else [self.value]


@dataclass
class Block(Stmt):
    stmts: list[Stmt] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    kind = "block"

    @property
    def children(self):
        return list(self.stmts)


@dataclass
class If(Stmt):
    cond: Expr = None
    then_block: Block = None
    else_block: Block | None = None
    comments: list[str] = field(default_factory=list)

    kind = "if"

    @property
    def children(self):
        base = [self.cond, self.then_block]
        if self.else_block is not None:
            base.append(self.else_block)
        return base


# ---------------------------------------------------------------- declarations


@dataclass
class FieldDecl(Node):
    decl_type: TypeRef = None
    name: str = ""
    init: Expr | None = None
    modifiers: list[str] = field(default_factory=list)

    kind = "fieldDecl"

    @property
    def children(self):
        base = [self.decl_type]
        if self.init is not None:
            base.append(self.init)
        return base

    @property
    def label(self):
        return self.name


@dataclass
class MethodDecl(Node):
    name: str = ""
    params: list[tuple[TypeRef, str]] = field(default_factory=list)
    return_type: TypeRef | None = None  # None for constructors
    body: Block = None
    is_override: bool = False
    is_constructor: bool = False
    modifiers: list[str] = field(default_factory=list)
    owner: "ClassDecl | None" = None  # set when parsed from a class

    kind = "methodDecl"

    @property
    def children(self):
        return [self.body]

    @property
    def label(self):
        params = ", ".join(f"{t.name} {n}" for t, n in self.params)
        ret = self.return_type.name if self.return_type else "<init>"
        override = "@" if self.is_override else ""
        return f"{override}{ret} {self.name}({params})"


@dataclass
class ClassDecl(Node):
    name: str = ""
    super_types: list[str] = field(default_factory=list)
    fields: list[FieldDecl] = field(default_factory=list)
    methods: list[MethodDecl] = field(default_factory=list)

    kind = "classDecl"

    @property
    def children(self):
        return list(self.fields) + list(self.methods)

    @property
    def label(self):
        return f"{self.name}:{','.join(self.super_types)}"


@dataclass
class SourceUnit(Node):
    file_id: str = ""
    classes: list[ClassDecl] = field(default_factory=list)
    raw_text: str = ""

    kind = "sourceUnit"

    @property
    def children(self):
        return list(self.classes)

    def line_of(self, offset: int) -> int:
        return self.raw_text.count("\n", 0, offset) + 1


def structurally_equal(a: Node, b: Node) -> bool:
    """Equality over kind/label/text/children, ignoring spans and comments."""
    if a.kind != b.kind or a.label != b.label or a.text != b.text:
        return False
    ca, cb = a.children, b.children
    if len(ca) != len(cb):
        return False
    return all(structurally_equal(x, y) for x, y in zip(ca, cb))
