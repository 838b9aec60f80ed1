"""Recursive-descent parser producing categoried parse trees.

Every token in the input becomes a leaf node of the tree, so a parent's
children read back in source order: `return x;` parses to a
return-statement whose children are the `return` keyword leaf, an
identifier-expression leaf, and the `;` punctuation leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import ParseError, SchemaError
from .lexer import KEYWORDS, OPERATORS, PUNCTUATION, TOKEN_KINDS, Token, tokenize

TYPE_KEYWORDS = frozenset({"int", "double", "void"})

INTERNAL_CATEGORIES = frozenset({
    "translation-unit",
    "function-definition",
    "parameter-list",
    "block",
    "declaration-statement",
    "assignment-statement",
    "if-statement",
    "while-statement",
    "return-statement",
    "expression-statement",
    "binary-expression",
    "unary-expression",
    "call-expression",
    "parenthesized-expression",
})

# identifier-expression / literal-expression are the value-bearing leaves;
# the other three exist so that structural tokens also appear in the tree.
LEAF_CATEGORIES = frozenset({
    "identifier-expression",
    "literal-expression",
    "keyword",
    "operator",
    "punctuation",
})

CATEGORIES = INTERNAL_CATEGORIES | LEAF_CATEGORIES

_LEAF_TOKEN_KINDS = {
    "identifier-expression": frozenset({"identifier"}),
    "literal-expression": frozenset({"int-literal", "float-literal"}),
    "keyword": frozenset({"keyword"}),
    "operator": frozenset({"operator"}),
    "punctuation": frozenset({"punctuation"}),
}


@dataclass
class ParseNode:
    """One tree node. Leaves carry their token; internal nodes do not."""

    category: str
    token: Token | None = None
    children: list["ParseNode"] = field(default_factory=list)

    def is_leaf(self) -> bool:
        return self.token is not None


def iter_nodes(root: ParseNode) -> Iterator[ParseNode]:
    """Yield every node in preorder."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def count_nodes(root: ParseNode) -> int:
    return sum(1 for _ in iter_nodes(root))


def _leaf(token: Token) -> ParseNode:
    if token.kind == "identifier":
        return ParseNode("identifier-expression", token)
    if token.kind in ("int-literal", "float-literal"):
        return ParseNode("literal-expression", token)
    return ParseNode(token.kind, token)


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token | None:
        idx = self.pos + ahead
        return self.tokens[idx] if idx < len(self.tokens) else None

    def _error(self, expected: set[str]) -> ParseError:
        tok = self.peek()
        if tok is None:
            if self.tokens:
                last = self.tokens[-1]
                return ParseError(last.line, last.column, expected, "end of input")
            return ParseError(1, 1, expected, "end of input")
        return ParseError(tok.line, tok.column, expected, tok.text)

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self._error({"a token"})
        self.pos += 1
        return tok

    def expect_text(self, text: str) -> ParseNode:
        tok = self.peek()
        if tok is None or tok.text != text:
            raise self._error({repr(text)})
        return _leaf(self.take())

    def expect_kind(self, kind: str, what: str) -> ParseNode:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            raise self._error({what})
        return _leaf(self.take())

    def at_text(self, text: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok is not None and tok.text == text

    def at_kind(self, kind: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok is not None and tok.kind == kind

    def at_type_keyword(self) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "keyword" and tok.text in TYPE_KEYWORDS

    # ---- declarations ----

    def translation_unit(self) -> ParseNode:
        functions: list[ParseNode] = []
        while self.peek() is not None:
            functions.append(self.function_definition())
        return ParseNode("translation-unit", children=functions)

    def function_definition(self) -> ParseNode:
        children: list[ParseNode] = []
        if not self.at_type_keyword():
            raise self._error({"type keyword"})
        children.append(_leaf(self.take()))
        children.append(self.expect_kind("identifier", "function name"))
        children.append(self.expect_text("("))
        if not self.at_text(")"):
            children.append(self.parameter_list())
        children.append(self.expect_text(")"))
        children.append(self.block())
        return ParseNode("function-definition", children=children)

    def parameter_list(self) -> ParseNode:
        children: list[ParseNode] = []
        while True:
            if not self.at_type_keyword():
                raise self._error({"type keyword"})
            children.append(_leaf(self.take()))
            children.append(self.expect_kind("identifier", "parameter name"))
            if self.at_text(","):
                children.append(_leaf(self.take()))
                continue
            break
        return ParseNode("parameter-list", children=children)

    # ---- statements ----

    def block(self) -> ParseNode:
        children = [self.expect_text("{")]
        while not self.at_text("}"):
            if self.peek() is None:
                raise self._error({"'}'"})
            children.append(self.statement())
        children.append(self.expect_text("}"))
        return ParseNode("block", children=children)

    def statement(self) -> ParseNode:
        tok = self.peek()
        if tok is None:
            raise self._error({"statement"})
        if tok.kind == "keyword":
            if tok.text in TYPE_KEYWORDS:
                return self.declaration_statement()
            if tok.text == "if":
                return self.if_statement()
            if tok.text == "while":
                return self.while_statement()
            if tok.text == "return":
                return self.return_statement()
            raise self._error({"statement"})
        if tok.text == "{":
            return self.block()
        # one token of lookahead separates `x = ...;` from `x * ...;`
        if tok.kind == "identifier" and self.at_text("=", ahead=1):
            return self.assignment_statement()
        return self.expression_statement()

    def declaration_statement(self) -> ParseNode:
        children = [_leaf(self.take())]
        children.append(self.expect_kind("identifier", "variable name"))
        children.append(self.expect_text("="))
        children.append(self.expression())
        children.append(self.expect_text(";"))
        return ParseNode("declaration-statement", children=children)

    def assignment_statement(self) -> ParseNode:
        children = [self.expect_kind("identifier", "assignment target")]
        children.append(self.expect_text("="))
        children.append(self.expression())
        children.append(self.expect_text(";"))
        return ParseNode("assignment-statement", children=children)

    def if_statement(self) -> ParseNode:
        children = [self.expect_text("if")]
        children.append(self.expect_text("("))
        children.append(self.expression())
        children.append(self.expect_text(")"))
        children.append(self.statement())
        if self.at_text("else"):
            children.append(_leaf(self.take()))
            children.append(self.statement())
        return ParseNode("if-statement", children=children)

    def while_statement(self) -> ParseNode:
        children = [self.expect_text("while")]
        children.append(self.expect_text("("))
        children.append(self.expression())
        children.append(self.expect_text(")"))
        children.append(self.statement())
        return ParseNode("while-statement", children=children)

    def return_statement(self) -> ParseNode:
        children = [self.expect_text("return")]
        if not self.at_text(";"):
            children.append(self.expression())
        children.append(self.expect_text(";"))
        return ParseNode("return-statement", children=children)

    def expression_statement(self) -> ParseNode:
        children = [self.expression()]
        children.append(self.expect_text(";"))
        return ParseNode("expression-statement", children=children)

    # ---- expressions, loosest binding first ----

    def expression(self) -> ParseNode:
        return self.logical_or()

    def _binary_chain(self, operand, texts: tuple[str, ...]) -> ParseNode:
        node = operand()
        while self.at_kind("operator") and self.peek().text in texts:
            op = _leaf(self.take())
            rhs = operand()
            node = ParseNode("binary-expression", children=[node, op, rhs])
        return node

    def logical_or(self) -> ParseNode:
        return self._binary_chain(self.logical_and, ("||",))

    def logical_and(self) -> ParseNode:
        return self._binary_chain(self.equality, ("&&",))

    def equality(self) -> ParseNode:
        return self._binary_chain(self.relational, ("==", "!="))

    def relational(self) -> ParseNode:
        return self._binary_chain(self.additive, ("<", ">", "<=", ">="))

    def additive(self) -> ParseNode:
        return self._binary_chain(self.multiplicative, ("+", "-"))

    def multiplicative(self) -> ParseNode:
        return self._binary_chain(self.unary, ("*", "/", "%"))

    def unary(self) -> ParseNode:
        if self.at_kind("operator") and self.peek().text in ("-", "!"):
            op = _leaf(self.take())
            operand = self.unary()
            return ParseNode("unary-expression", children=[op, operand])
        return self.primary()

    def primary(self) -> ParseNode:
        tok = self.peek()
        if tok is None:
            raise self._error({"expression"})
        if tok.kind in ("int-literal", "float-literal"):
            return _leaf(self.take())
        if tok.kind == "identifier":
            name = _leaf(self.take())
            if self.at_text("("):
                return self.call_arguments(name)
            return name
        if tok.text == "(":
            children = [_leaf(self.take())]
            children.append(self.expression())
            children.append(self.expect_text(")"))
            return ParseNode("parenthesized-expression", children=children)
        raise self._error({"expression"})

    def call_arguments(self, callee: ParseNode) -> ParseNode:
        children = [callee, self.expect_text("(")]
        if not self.at_text(")"):
            while True:
                children.append(self.expression())
                if self.at_text(","):
                    children.append(_leaf(self.take()))
                    continue
                break
        children.append(self.expect_text(")"))
        return ParseNode("call-expression", children=children)


def parse(source: str) -> ParseNode:
    """Parse a whole program (a sequence of function definitions)."""
    return _Parser(tokenize(source)).translation_unit()


# ---- portable tree documents ----


def export_parse_tree(root: ParseNode) -> dict:
    """Render a tree as a JSON-compatible document."""
    doc: dict = {"category": root.category}
    if root.token is not None:
        doc["token"] = {"kind": root.token.kind, "text": root.token.text}
    else:
        doc["token"] = None
    doc["children"] = [export_parse_tree(child) for child in root.children]
    return doc


def _check_token_text(kind: str, text: str, path: str) -> None:
    if kind == "keyword" and text not in KEYWORDS:
        raise SchemaError(f"{path}.text: {text!r} is not a keyword")
    if kind == "identifier" and (text in KEYWORDS or not text or not (text[0].isalpha() or text[0] == "_")):
        raise SchemaError(f"{path}.text: {text!r} is not an identifier")
    if kind == "operator" and text not in OPERATORS:
        raise SchemaError(f"{path}.text: {text!r} is not an operator")
    if kind == "punctuation" and text not in PUNCTUATION:
        raise SchemaError(f"{path}.text: {text!r} is not punctuation")
    if kind == "int-literal" and not text.isdigit():
        raise SchemaError(f"{path}.text: {text!r} is not an integer literal")
    if kind == "float-literal":
        head, dot, tail = text.partition(".")
        if dot != "." or not head.isdigit() or not tail.isdigit():
            raise SchemaError(f"{path}.text: {text!r} is not a float literal")


def import_parse_tree(doc: object, path: str = "$") -> ParseNode:
    """Rebuild a tree from a document, validating shape as it goes.

    Token positions are synthesized (0:0); they are excluded from node
    equality so round-tripped trees compare equal anyway.
    """
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected an object")
    category = doc.get("category")
    if not isinstance(category, str):
        raise SchemaError(f"{path}.category: expected a string")
    if category not in CATEGORIES:
        raise SchemaError(f"{path}.category: unknown category {category!r}")
    if "token" not in doc:
        raise SchemaError(f"{path}.token: missing")
    token_doc = doc["token"]
    children_doc = doc.get("children")
    if not isinstance(children_doc, list):
        raise SchemaError(f"{path}.children: expected a list")

    token: Token | None = None
    if category in LEAF_CATEGORIES:
        if not isinstance(token_doc, dict):
            raise SchemaError(f"{path}.token: leaf category {category!r} needs a token object")
        kind = token_doc.get("kind")
        text = token_doc.get("text")
        if kind not in TOKEN_KINDS:
            raise SchemaError(f"{path}.token.kind: unknown kind {kind!r}")
        if not isinstance(text, str) or not text:
            raise SchemaError(f"{path}.token.text: expected a non-empty string")
        if kind not in _LEAF_TOKEN_KINDS[category]:
            raise SchemaError(f"{path}.token.kind: {kind!r} does not fit category {category!r}")
        _check_token_text(kind, text, f"{path}.token")
        if children_doc:
            raise SchemaError(f"{path}.children: leaves take no children")
        token = Token(kind, text)
    else:
        if token_doc is not None:
            raise SchemaError(f"{path}.token: internal category {category!r} takes no token")

    children = [
        import_parse_tree(child, f"{path}.children[{i}]")
        for i, child in enumerate(children_doc)
    ]
    return ParseNode(category, token, children)
