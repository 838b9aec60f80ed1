"""Tokenizer for the C-like input language.

Produces a flat token stream; comments and whitespace are discarded.
Operators use longest-match, so `<=` is one token, `< =` is two.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LexError

KEYWORDS = frozenset({"if", "else", "while", "return", "int", "double", "void"})

# Two-char operators must be tried before their one-char prefixes.
OPERATORS = (
    "<=", ">=", "==", "!=", "&&", "||",
    "+", "-", "*", "/", "%", "<", ">", "=", "!",
)

PUNCTUATION = frozenset({"(", ")", "{", "}", ",", ";"})

TOKEN_KINDS = frozenset({
    "keyword", "identifier", "int-literal", "float-literal",
    "operator", "punctuation",
})


@dataclass(frozen=True)
class Token:
    """One lexeme. Positions are carried for diagnostics but do not
    participate in equality, so trees rebuilt from exported documents
    compare equal to the originals."""

    kind: str
    text: str
    line: int = field(compare=False, default=0)
    column: int = field(compare=False, default=0)


def tokenize(source: str) -> list[Token]:
    """Split source text into tokens.

    Raises LexError at the first character that cannot start a token,
    or at an unterminated block comment.
    """
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(text: str) -> None:
        nonlocal i, line, col
        for ch in text:
            i += 1
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = source[i]

        if ch in " \t\r\n":
            advance(ch)
            continue

        if source.startswith("//", i):
            end = source.find("\n", i)
            if end == -1:
                end = n
            advance(source[i:end])
            continue

        if source.startswith("/*", i):
            end = source.find("*/", i + 2)
            if end == -1:
                raise LexError(line, col, "/*")
            advance(source[i:end + 2])
            continue

        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            start_line, start_col = line, col
            seen_dot = False
            j = i
            while j < n and (source[j].isdigit() or (source[j] == "." and not seen_dot)):
                if source[j] == ".":
                    seen_dot = True
                j += 1
            text = source[start:j]
            if text.endswith("."):
                # `1.` is rejected rather than guessed at
                raise LexError(start_line, start_col, text)
            kind = "float-literal" if seen_dot else "int-literal"
            tokens.append(Token(kind, text, start_line, start_col))
            advance(text)
            continue

        if ch.isalpha() or ch == "_":
            start = i
            start_line, start_col = line, col
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[start:j]
            kind = "keyword" if text in KEYWORDS else "identifier"
            tokens.append(Token(kind, text, start_line, start_col))
            advance(text)
            continue

        if ch in PUNCTUATION:
            tokens.append(Token("punctuation", ch, line, col))
            advance(ch)
            continue

        matched = False
        for op in OPERATORS:
            if source.startswith(op, i):
                tokens.append(Token("operator", op, line, col))
                advance(op)
                matched = True
                break
        if matched:
            continue

        raise LexError(line, col, ch)

    return tokens
