"""Tokenizer for the subset grammar.

Line comments are collected separately so the parser can attach them to the
following statement when comment retention is requested.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError, UnsupportedConstruct

KEYWORDS = {
    "class", "extends", "implements", "new", "return", "if", "else",
    "true", "false", "null", "this", "throws",
}
MODIFIERS = {"public", "private", "protected", "static", "final"}

# Recognizably Java, deliberately outside the subset.
UNSUPPORTED_KEYWORDS = {
    "for", "while", "do", "switch", "case", "break", "continue", "try",
    "catch", "finally", "throw", "import", "package", "interface", "enum",
    "abstract", "synchronized", "instanceof", "assert", "volatile",
    "transient", "native", "strictfp", "goto",
}

PUNCT = {"{", "}", "(", ")", "[", "]", ",", ";", ".", "@"}

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_$")
_IDENT_CONT = _IDENT_START | set("0123456789")


@dataclass
class Token:
    kind: str  # 'id' | 'int' | 'string' | 'punct' | 'kw' | 'mod' | 'eof'
    text: str
    pos: int
    end: int
    line: int
    col: int


@dataclass
class Comment:
    text: str  # includes the leading //
    pos: int
    line: int


def tokenize(source: str) -> tuple[list[Token], list[Comment]]:
    tokens: list[Token] = []
    comments: list[Comment] = []
    i, line, col = 0, 1, 0
    n = len(source)

    def err(msg: str, cls=ParseError):
        raise cls(msg, line, col)

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 0
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            end = source.find("\n", i)
            end = n if end == -1 else end
            comments.append(Comment(source[i:end].rstrip(), i, line))
            col += end - i
            i = end
            continue
        if source.startswith("/*", i):
            err("block comments are not supported", UnsupportedConstruct)
        if ch in _IDENT_START:
            j = i + 1
            while j < n and source[j] in _IDENT_CONT:
                j += 1
            word = source[i:j]
            if word in UNSUPPORTED_KEYWORDS:
                err(f"unsupported construct '{word}'", UnsupportedConstruct)
            kind = "kw" if word in KEYWORDS else "mod" if word in MODIFIERS else "id"
            tokens.append(Token(kind, word, i, j, line, col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            if j < n and (source[j] in _IDENT_START or source[j] == "."):
                err("only plain integer literals are supported", UnsupportedConstruct)
            tokens.append(Token("int", source[i:j], i, j, line, col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            buf = []
            while j < n and source[j] != '"':
                if source[j] == "\n":
                    err("unterminated string literal")
                if source[j] == "\\":
                    if j + 1 >= n:
                        err("unterminated string literal")
                    esc = source[j + 1]
                    if esc == '"':
                        buf.append('"')
                    elif esc == "\\":
                        buf.append("\\")
                    else:
                        buf.append("\\" + esc)
                    j += 2
                    continue
                buf.append(source[j])
                j += 1
            if j >= n:
                err("unterminated string literal")
            tokens.append(Token("string", "".join(buf), i, j + 1, line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch == "=":
            if i + 1 < n and source[i + 1] == "=":
                tokens.append(Token("punct", "==", i, i + 2, line, col))
                i += 2
                col += 2
            else:
                tokens.append(Token("punct", "=", i, i + 1, line, col))
                i += 1
                col += 1
            continue
        if ch == "!" and i + 1 < n and source[i + 1] == "=":
            tokens.append(Token("punct", "!=", i, i + 2, line, col))
            i += 2
            col += 2
            continue
        if ch in PUNCT:
            tokens.append(Token("punct", ch, i, i + 1, line, col))
            i += 1
            col += 1
            continue
        err(f"unsupported character {ch!r}", UnsupportedConstruct)

    tokens.append(Token("eof", "", n, n, line, col))
    return tokens, comments
