"""Recursive-descent parser for the subset grammar.

Grammar (sketch):
    unit      := classDecl+
    classDecl := "class" ID ("extends" ID)? ("implements" ID ("," ID)*)? "{" member* "}"
    member    := annotation? modifier* (ctorDecl | methodDecl | fieldDecl)
    stmt      := localDecl | exprStmt | assign | return | if | block
    expr      := equality over postfix/primary (see parse_expr)

Comments are discarded unless ``keep_comments`` is set, in which case line
comments attach to the statement that follows them.
"""

from __future__ import annotations

from ..errors import AmbiguousSnippet, ParseError
from .lexer import Comment, Token, tokenize
from .nodes import (
    ArrayCreation, Assign, BinaryOp, Block, BoolLit, Cast, ClassDecl, Expr,
    ExprStmt, FieldAccess, FieldDecl, If, IntLit, LocalDecl, MethodCall,
    MethodDecl, NameRef, NullLit, ObjectCreation, Return, SourceUnit, Stmt,
    StringLit, ThisRef, TypeRef,
)

SNIPPET_METHOD = "__snippet"


class _Parser:
    def __init__(self, source: str, keep_comments: bool = False):
        self.source = source
        self.tokens, self.comments = tokenize(source)
        self.pos = 0
        self.keep_comments = keep_comments
        self._comment_cursor = 0

    # ------------------------------------------------------------- helpers

    def peek(self, offset: int = 0) -> Token:
        idx = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[idx]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind in ("punct", "kw", "mod")

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            self.error(f"expected {text!r}, found {tok.text!r}" if tok.kind != "eof"
                       else f"expected {text!r}, found end of input")
        return self.next()

    def expect_id(self) -> Token:
        tok = self.peek()
        if tok.kind != "id":
            self.error(f"expected identifier, found {tok.text!r}")
        return self.next()

    def error(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.col)

    def pending_comments(self, before_pos: int) -> list[str]:
        out = []
        while (self._comment_cursor < len(self.comments)
               and self.comments[self._comment_cursor].pos < before_pos):
            out.append(self.comments[self._comment_cursor].text)
            self._comment_cursor += 1
        return out

    # ------------------------------------------------------------- units

    def parse_unit(self, file_id: str) -> SourceUnit:
        classes = []
        start = self.peek().pos
        while self.peek().kind != "eof":
            classes.append(self.parse_class())
        if not classes:
            self.error("expected a class declaration")
        names = [c.name for c in classes]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            self.error(f"duplicate class name {sorted(dupes)[0]!r} within unit")
        unit = SourceUnit(file_id=file_id, classes=classes, raw_text=self.source,
                          span=(start, classes[-1].span[1]))
        return unit

    def parse_class(self) -> ClassDecl:
        while self.peek().kind == "mod":
            self.next()
        start = self.expect("class").pos
        name = self.expect_id().text
        supers = []
        if self.at("extends"):
            self.next()
            supers.append(self.expect_id().text)
        if self.at("implements"):
            self.next()
            supers.append(self.expect_id().text)
            while self.at(","):
                self.next()
                supers.append(self.expect_id().text)
        self.expect("{")
        fields, methods = [], []
        while not self.at("}"):
            member = self.parse_member(name)
            if isinstance(member, FieldDecl):
                fields.append(member)
            else:
                methods.append(member)
        end = self.expect("}").end
        cls = ClassDecl(name=name, super_types=supers, fields=fields,
                        methods=methods, span=(start, end))
        for m in methods:
            m.owner = cls
            seen = set()
            for _, pname in m.params:
                if pname in seen:
                    raise ParseError(f"duplicate parameter {pname!r} in {m.name}",
                                     self.peek().line, self.peek().col)
                seen.add(pname)
        return cls

    def parse_member(self, class_name: str):
        is_override = False
        if self.at("@"):
            self.next()
            ann = self.expect_id()
            if ann.text != "Override":
                raise ParseError(f"unsupported annotation @{ann.text}", ann.line, ann.col)
            is_override = True
        modifiers = []
        while self.peek().kind == "mod":
            modifiers.append(self.next().text)

        tok = self.peek()
        if tok.kind != "id":
            self.error(f"expected member declaration, found {tok.text!r}")
        # constructor: ID '(' with ID == enclosing class name
        if tok.text == class_name and self.peek(1).text == "(":
            start = tok.pos
            self.next()
            params = self.parse_params()
            self.skip_throws()
            body = self.parse_block()
            return MethodDecl(name=class_name, params=params, return_type=None,
                              body=body, is_constructor=True, modifiers=modifiers,
                              is_override=is_override, span=(start, body.span[1]))
        start = tok.pos
        decl_type = self.parse_type()
        name = self.expect_id().text
        if self.at("("):
            params = self.parse_params()
            self.skip_throws()
            body = self.parse_block()
            return MethodDecl(name=name, params=params, return_type=decl_type,
                              body=body, is_override=is_override,
                              modifiers=modifiers, span=(start, body.span[1]))
        init = None
        if self.at("="):
            self.next()
            init = self.parse_expr()
        end = self.expect(";").end
        if is_override:
            self.error("@Override is only valid on methods")
        return FieldDecl(decl_type=decl_type, name=name, init=init,
                         modifiers=modifiers, span=(start, end))

    def parse_type(self) -> TypeRef:
        tok = self.expect_id()
        name = tok.text
        end = tok.end
        if self.at("[") and self.peek(1).text == "]":
            self.next()
            end = self.next().end
            name += "[]"
        return TypeRef(name=name, span=(tok.pos, end))

    def parse_params(self) -> list[tuple[TypeRef, str]]:
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                ptype = self.parse_type()
                pname = self.expect_id().text
                params.append((ptype, pname))
                if self.at(","):
                    self.next()
                    continue
                break
        self.expect(")")
        return params

    def skip_throws(self):
        if self.at("throws"):
            self.next()
            self.expect_id()
            while self.at(","):
                self.next()
                self.expect_id()

    # ------------------------------------------------------------- statements

    def parse_block(self) -> Block:
        start = self.expect("{").pos
        stmts = []
        while not self.at("}"):
            stmts.append(self.parse_stmt())
        end = self.expect("}").end
        return Block(stmts=stmts, span=(start, end))

    def parse_stmt(self) -> Stmt:
        tok = self.peek()
        comments = self.pending_comments(tok.pos) if self.keep_comments else []
        stmt = self._parse_stmt_inner()
        if comments:
            stmt.comments = comments
        return stmt

    def _parse_stmt_inner(self) -> Stmt:
        tok = self.peek()
        if self.at("{"):
            return self.parse_block()
        if self.at("return"):
            start = self.next().pos
            value = None
            if not self.at(";"):
                value = self.parse_expr()
            end = self.expect(";").end
            return Return(value=value, span=(start, end))
        if self.at("if"):
            start = self.next().pos
            self.expect("(")
            cond = self.parse_expr()
            self.expect(")")
            then_block = self.parse_block()
            else_block = None
            end = then_block.span[1]
            if self.at("else"):
                self.next()
                else_block = self.parse_block()
                end = else_block.span[1]
            return If(cond=cond, then_block=then_block, else_block=else_block,
                      span=(start, end))
        # local declaration lookahead: ID ID | ID '[' ']' ID
        if tok.kind == "id":
            nxt = self.peek(1)
            if nxt.kind == "id" or (nxt.text == "[" and self.peek(2).text == "]"
                                    and self.peek(3).kind == "id"):
                decl_type = self.parse_type()
                name = self.expect_id().text
                init = None
                if self.at("="):
                    self.next()
                    init = self.parse_expr()
                end = self.expect(";").end
                return LocalDecl(decl_type=decl_type, name=name, init=init,
                                 span=(tok.pos, end))
        expr = self.parse_expr()
        if self.at("="):
            if expr.kind not in ("nameRef", "fieldAccess"):
                self.error("assignment target must be a variable or field")
            self.next()
            value = self.parse_expr()
            end = self.expect(";").end
            return Assign(target=expr, value=value, span=(tok.pos, end))
        end = self.expect(";").end
        return ExprStmt(expr=expr, span=(tok.pos, end))

    # ------------------------------------------------------------- expressions

    def parse_expr(self) -> Expr:
        left = self.parse_postfix()
        while self.at("==") or self.at("!="):
            op = self.next().text
            right = self.parse_postfix()
            left = BinaryOp(op=op, left=left, right=right,
                            span=(left.span[0], right.span[1]))
        return left

    def parse_postfix(self) -> Expr:
        expr = self.parse_primary()
        while self.at("."):
            self.next()
            name = self.expect_id()
            if self.at("("):
                args, end = self.parse_args()
                expr = MethodCall(receiver=expr, name=name.text, args=args,
                                  span=(expr.span[0], end))
            else:
                expr = FieldAccess(receiver=expr, name=name.text,
                                   span=(expr.span[0], name.end))
        return expr

    def parse_primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "string":
            self.next()
            return StringLit(value=tok.text, span=(tok.pos, tok.end))
        if tok.kind == "int":
            self.next()
            return IntLit(value=int(tok.text), span=(tok.pos, tok.end))
        if self.at("true") or self.at("false"):
            self.next()
            return BoolLit(value=tok.text == "true", span=(tok.pos, tok.end))
        if self.at("null"):
            self.next()
            return NullLit(span=(tok.pos, tok.end))
        if self.at("this"):
            self.next()
            return ThisRef(span=(tok.pos, tok.end))
        if self.at("new"):
            self.next()
            type_tok = self.expect_id()
            if self.at("("):
                args, end = self.parse_args()
                return ObjectCreation(type_name=type_tok.text, args=args,
                                      span=(tok.pos, end))
            if self.at("["):
                self.next()
                size = self.parse_expr()
                end = self.expect("]").end
                return ArrayCreation(elem_type=type_tok.text, size=size,
                                     span=(tok.pos, end))
            self.error("expected '(' or '[' after 'new'")
        if self.at("("):
            # grammar has no parenthesized expressions; '(' begins a cast
            self.next()
            cast_type = self.parse_type()
            self.expect(")")
            operand = self.parse_postfix()
            return Cast(type_name=cast_type.name, operand=operand,
                        span=(tok.pos, operand.span[1]))
        if tok.kind == "id":
            self.next()
            if self.at("("):
                args, end = self.parse_args()
                return MethodCall(receiver=None, name=tok.text, args=args,
                                  span=(tok.pos, end))
            return NameRef(name=tok.text, span=(tok.pos, tok.end))
        self.error(f"expected expression, found {tok.text!r}"
                   if tok.kind != "eof" else "expected expression, found end of input")

    def parse_args(self) -> tuple[list[Expr], int]:
        self.expect("(")
        args = []
        if not self.at(")"):
            while True:
                args.append(self.parse_expr())
                if self.at(","):
                    self.next()
                    continue
                break
        end = self.expect(")").end
        return args, end


# ----------------------------------------------------------------- public API


def parse_unit(source: str, file_id: str = "<unit>",
               keep_comments: bool = False) -> SourceUnit:
    """Parse a full source unit (one or more classes)."""
    parser = _Parser(source, keep_comments=keep_comments)
    return parser.parse_unit(file_id)


def parse_snippet(source: str, keep_comments: bool = False) -> MethodDecl:
    """Parse an example snippet.

    Bare statements become the body of a synthetic ``__snippet`` method; a
    full class is parsed normally and its single method returned (with its
    owner class attached for super-type lookups).
    """
    probe = _Parser(source)
    idx = 0
    while probe.tokens[idx].kind == "mod":
        idx += 1
    if probe.tokens[idx].text == "class" and probe.tokens[idx].kind == "kw":
        parser = _Parser(source, keep_comments=keep_comments)
        unit = parser.parse_unit("<snippet>")
        if len(unit.classes) != 1:
            raise AmbiguousSnippet("snippet must declare exactly one class")
        methods = unit.classes[0].methods
        if len(methods) != 1:
            raise AmbiguousSnippet(
                f"snippet class declares {len(methods)} methods, expected 1")
        return methods[0]
    parser = _Parser(source, keep_comments=keep_comments)
    stmts = []
    start = parser.peek().pos
    while parser.peek().kind != "eof":
        stmts.append(parser.parse_stmt())
    end = stmts[-1].span[1] if stmts else start
    body = Block(stmts=stmts, span=(start, end))
    return MethodDecl(name=SNIPPET_METHOD, params=[], return_type=TypeRef(name="void"),
                      body=body, span=(start, end))


def parse_stmt(source: str) -> Stmt:
    """Parse a single statement (testing hook for span soundness checks)."""
    parser = _Parser(source)
    stmt = parser.parse_stmt()
    if parser.peek().kind != "eof":
        parser.error("trailing input after statement")
    return stmt


def parse_expr(source: str) -> Expr:
    """Parse a single expression (testing hook)."""
    parser = _Parser(source)
    expr = parser.parse_expr()
    if parser.peek().kind != "eof":
        parser.error("trailing input after expression")
    return expr
