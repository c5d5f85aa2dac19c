"""MiniC lexer.

Comments (``// ...``) are collected per line for style checks but produce no
tokens and are not round-tripped by the renderer.
"""

from __future__ import annotations

from dataclasses import dataclass

from forge.errors import ParseError
from forge.util import INT64_MAX

KEYWORDS = frozenset({"fn", "let", "if", "else", "while", "return", "const", "int", "buf"})

_TWO_CHAR = ("->", "<=", ">=", "==", "!=", "&&", "||")
_ONE_CHAR = "(){}[],;:+-*/%<>=!"

IDENT_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
IDENT_CONT = IDENT_START | frozenset("0123456789")


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # "ident" | "int" | "kw" | "op" | "eof"
    text: str
    line: int
    col: int


def tokenize(source: str, path: str = "<input>") -> tuple[list[Token], list[tuple[int, str]]]:
    tokens: list[Token] = []
    comments: list[tuple[int, str]] = []
    line, col = 1, 1
    i, n = 0, len(source)

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            end = source.find("\n", i)
            if end == -1:
                end = n
            comments.append((line, source[i:end]))
            col += end - i
            i = end
            continue
        if ch in IDENT_START:
            start = i
            while i < n and source[i] in IDENT_CONT:
                i += 1
            text = source[start:i]
            kind = "kw" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, line, col))
            col += i - start
            continue
        if ch.isdigit():
            start = i
            while i < n and source[i].isdigit():
                i += 1
            text = source[start:i]
            if int(text) > INT64_MAX:
                raise ParseError("integer literal exceeds 64-bit range", path, line, col)
            tokens.append(Token("int", text, line, col))
            col += i - start
            continue
        two = source[i : i + 2]
        if two in _TWO_CHAR:
            tokens.append(Token("op", two, line, col))
            i += 2
            col += 2
            continue
        if ch in _ONE_CHAR:
            tokens.append(Token("op", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", path, line, col)

    tokens.append(Token("eof", "", line, col))
    return tokens, comments


def identifiers_of(text: str) -> list[str]:
    """All identifier tokens in a text fragment (lenient: errors yield [])."""
    try:
        tokens, _ = tokenize(text)
    except ParseError:
        return []
    return [t.text for t in tokens if t.kind == "ident"]


def has_comment(text: str) -> bool:
    try:
        _, comments = tokenize(text)
    except ParseError:
        return "//" in text
    return bool(comments)
