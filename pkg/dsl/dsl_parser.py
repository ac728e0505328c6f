"""
dsl_parser.py - tokenizer, recursive-descent parser and pretty-printer for
ring-construction expressions.

Grammar (case-sensitive, whitespace-insensitive, unsigned decimal integers):

    expr := "Z(" int ")"
          | "Prod(" expr ("," expr)+ ")"
          | "Mat(" expr "," int ")"
          | "UT(" expr "," int ")"
          | "Tnk(" expr "," int "," int ")"
          | "Triv(" expr ")"
          | "PolyMod(" expr "," int ")"

Every node keeps the (start, end) character offsets it was parsed from.
"""

#####################################
# Import Modules
#####################################

# Import packages from Python Standard Library
import string
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Tuple, Union

# Import functions from local modules
from rings.descriptors import Mat, PolyMod, Prod, RingDescriptor, Tnk, Triv, UT, Zn
from rings.errors import RingError

RingExpr = RingDescriptor

CONSTRUCTORS: Tuple[str, ...] = ("Z", "Prod", "Mat", "UT", "Tnk", "Triv", "PolyMod")

# argument kinds per constructor; "expr+" means one or more further exprs
SIGNATURES = {
    "Z": ("int",),
    "Prod": ("expr", "expr", "expr+"),
    "Mat": ("expr", "int"),
    "UT": ("expr", "int"),
    "Tnk": ("expr", "int", "int"),
    "Triv": ("expr",),
    "PolyMod": ("expr", "int"),
}

EXPR_START: FrozenSet[str] = frozenset(CONSTRUCTORS)


class ParseError(RingError):
    """Syntax error with a 1-based line/column into the original input."""

    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = (), offset: int = 0):
        self.message = message
        self.line = line
        self.column = column
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected {' or '.join(repr(e) for e in self.expected)})" if self.expected else ""
        super().__init__(f"{message} at line {line}, column {column}{detail}")

    def to_dict(self) -> dict:
        return {
            "error": "ParseError",
            "message": self.message,
            "line": self.line,
            "column": self.column,
            "expected": list(self.expected),
        }


#####################################
# Tokenizer
#####################################


@dataclass(frozen=True)
class Token:
    kind: str  # ident | int | ( | ) | , | eof
    text: str
    start: int
    end: int


def _position(source: str, offset: int) -> Tuple[int, int]:
    """1-based (line, column) of a character offset; the end of input is valid."""
    line = source.count("\n", 0, offset) + 1
    line_start = source.rfind("\n", 0, offset) + 1
    return line, offset - line_start + 1


def _error(source: str, offset: int, message: str, expected: Iterable[str] = ()) -> ParseError:
    line, column = _position(source, offset)
    return ParseError(message, line, column, expected, offset)


# ASCII only; other Unicode digits and letters are rejected
_DIGITS = frozenset(string.digits)
_LETTERS = frozenset(string.ascii_letters)


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(source):
        ch = source[i]
        if ch.isspace():
            i += 1
        elif ch in "(),":
            tokens.append(Token(ch, ch, i, i + 1))
            i += 1
        elif ch in _DIGITS:
            j = i
            while j < len(source) and source[j] in _DIGITS:
                j += 1
            tokens.append(Token("int", source[i:j], i, j))
            i = j
        elif ch in _LETTERS:
            j = i
            while j < len(source) and (source[j] in _LETTERS or source[j] in _DIGITS):
                j += 1
            tokens.append(Token("ident", source[i:j], i, j))
            i = j
        else:
            raise _error(source, i, f"unexpected character {ch!r}", EXPR_START | {"integer"})
    tokens.append(Token("eof", "", len(source), len(source)))
    return tokens


#####################################
# Parser
#####################################


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def fail(self, expected: Iterable[str], token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return _error(self.source, token.start, f"unexpected {found}", expected)

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise self.fail([kind])
        return self.advance()

    def parse(self) -> RingExpr:
        expr = self.expr()
        if self.current.kind != "eof":
            raise self.fail(["end of input"])
        return expr

    def expr(self) -> RingExpr:
        head = self.current
        if head.kind != "ident" or head.text not in CONSTRUCTORS:
            raise self.fail(EXPR_START)
        self.advance()
        self.expect("(")
        args: List[Union[RingExpr, int]] = []
        kinds: List[str] = []
        while True:
            token = self.current
            if token.kind == "int":
                args.append(int(self.advance().text))
                kinds.append("int")
            elif token.kind == "ident":
                args.append(self.expr())
                kinds.append("expr")
            else:
                raise self.fail(EXPR_START | {"integer"})
            if self.current.kind == ",":
                self.advance()
                continue
            if self.current.kind == ")":
                close = self.advance()
                break
            raise self.fail([",", ")"])
        span = (head.start, close.end)
        self._check_signature(head, kinds, span)
        return self._node(head.text, args, span)

    def _check_signature(self, head: Token, kinds: List[str], span: Tuple[int, int]) -> None:
        signature = SIGNATURES[head.text]
        if signature[-1] == "expr+":
            fixed = signature[:-1]
            ok = len(kinds) >= len(fixed) and all(k == "expr" for k in kinds)
            shape = f"{head.text}(expr, expr, ...)"
        else:
            ok = tuple(kinds) == signature
            shape = f"{head.text}({', '.join(signature)})"
        if not ok:
            line, column = _position(self.source, span[0])
            raise ParseError(f"{head.text} takes {shape}, got ({', '.join(kinds)})", line, column, (), span[0])

    @staticmethod
    def _node(name: str, args: list, span: Tuple[int, int]) -> RingExpr:
        if name == "Z":
            return Zn(args[0], span=span)
        if name == "Prod":
            return Prod(tuple(args), span=span)
        if name == "Mat":
            return Mat(args[0], args[1], span=span)
        if name == "UT":
            return UT(args[0], args[1], span=span)
        if name == "Tnk":
            return Tnk(args[0], args[1], args[2], span=span)
        if name == "Triv":
            return Triv(args[0], span=span)
        return PolyMod(args[0], args[1], span=span)


def parse(source: str) -> RingExpr:
    """Parse one ring expression; raises ParseError with line/column and expectations."""
    return _Parser(source).parse()


def pretty(expr: RingExpr) -> str:
    """Canonical form: no spaces except one after each comma."""
    return expr.render()
