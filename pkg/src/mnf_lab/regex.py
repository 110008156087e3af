"""Regular-expression trees and a weak, language-preserving simplifier.

The AST is deliberately small: empty language, empty string, single-symbol
literal, n-ary concatenation and union, and Kleene star.  The smart
constructors ``concat``, ``union`` and ``star`` keep trees canonical (no
nested same-kind nodes, no unit elements, no syntactic duplicates inside a
union).  That is all the normalization the synthesis pipeline wants:
anything stronger (distribution, star unrolling) would drag the output away
from the familiar factored shapes, so it is intentionally left out.

Text syntax: ``+`` or ``|`` for union, juxtaposition for concatenation,
postfix ``*``, parentheses, ``eps`` for the empty string and ``void`` for
the empty language.  Tokens are runs of non-special characters, so a
multi-character token is a single literal (``abc*`` is the starred literal
``abc``, not ``ab`` followed by ``c*``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .symbols import Symbol, classify_token


class RegexSyntaxError(ValueError):
    """Malformed regex text; carries the 0-based character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Regex:
    """Base class of the regex AST.  All nodes are frozen and hashable."""


@dataclass(frozen=True)
class Empty(Regex):
    """The empty language."""


@dataclass(frozen=True)
class Epsilon(Regex):
    """The language containing only the empty string."""


@dataclass(frozen=True)
class Literal(Regex):
    """A single symbol.

    Synthesized output holds terminals only; intermediate trees built during
    substitution may temporarily hold nonterminals.
    """

    symbol: Symbol


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple[Regex, ...]


@dataclass(frozen=True)
class Union(Regex):
    parts: tuple[Regex, ...]


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


EMPTY = Empty()
EPSILON = Epsilon()


def literal(token: str) -> Regex:
    """Literal from a bare token, classified by the usual lexical rule."""
    return Literal(classify_token(token))


def concat(*parts: Regex) -> Regex:
    """Concatenation with the unit and absorbing laws applied.

    Epsilon factors disappear, any Empty factor annihilates the whole
    product, and nested concatenations are flattened.
    """
    flat: list[Regex] = []
    for part in parts:
        if isinstance(part, Empty):
            return EMPTY
        if isinstance(part, Epsilon):
            continue
        if isinstance(part, Concat):
            flat.extend(part.parts)
        else:
            flat.append(part)
    if not flat:
        return EPSILON
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def union(*parts: Regex) -> Regex:
    """Union with Empty branches dropped and syntactic duplicates merged.

    An empty union is the empty language.  Branch order is preserved
    (first occurrence wins), which keeps rendering deterministic.
    """
    flat: list[Regex] = []
    seen: set[Regex] = set()
    for part in parts:
        pieces = part.parts if isinstance(part, Union) else (part,)
        for piece in pieces:
            if isinstance(piece, Empty) or piece in seen:
                continue
            seen.add(piece)
            flat.append(piece)
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    return Union(tuple(flat))


def star(inner: Regex) -> Regex:
    """Kleene star; stars of the trivial languages collapse to epsilon."""
    if isinstance(inner, (Empty, Epsilon)):
        return EPSILON
    if isinstance(inner, Star):
        return inner
    return Star(inner)


def simplify(r: Regex) -> Regex:
    """Rebuild a tree bottom-up through the smart constructors.

    The rewrite set (unit/absorbing laws, duplicate union branches,
    collapsed stars) is confluent and terminating, and preserves the
    denoted language; the test suite checks preservation against the
    automata oracle.
    """
    if isinstance(r, Concat):
        return concat(*(simplify(p) for p in r.parts))
    if isinstance(r, Union):
        return union(*(simplify(p) for p in r.parts))
    if isinstance(r, Star):
        return star(simplify(r.inner))
    return r


def iter_literals(r: Regex) -> Iterator[Symbol]:
    """Yield every literal symbol in the tree, left to right."""
    if isinstance(r, Literal):
        yield r.symbol
    elif isinstance(r, (Concat, Union)):
        for part in r.parts:
            yield from iter_literals(part)
    elif isinstance(r, Star):
        yield from iter_literals(r.inner)


def nonterminal_literals(r: Regex) -> list[Symbol]:
    """The nonterminal symbols still present, sorted by name."""
    found = {s for s in iter_literals(r) if not s.terminal}
    return sorted(found, key=lambda s: s.name)


def ast_size(r: Regex) -> int:
    """Number of AST nodes (used by the automaton state-count bound)."""
    if isinstance(r, (Concat, Union)):
        return 1 + sum(ast_size(p) for p in r.parts)
    if isinstance(r, Star):
        return 1 + ast_size(r.inner)
    return 1


_SPECIAL = "()*+|"


def _tokenize(text: str) -> list[tuple[int, str]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _SPECIAL:
            tokens.append((i, c))
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in _SPECIAL:
                j += 1
            tokens.append((i, text[i:j]))
            i = j
    return tokens


class _Parser:
    # precedence: union < concat < star < atom

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return None

    def here(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return len(self.text)

    def take(self) -> str:
        tok = self.tokens[self.pos][1]
        self.pos += 1
        return tok

    def parse(self) -> Regex:
        if not self.tokens:
            raise RegexSyntaxError("empty regex", 0)
        result = self.union()
        if self.peek() is not None:
            raise RegexSyntaxError(f"unexpected {self.peek()!r}", self.here())
        return result

    def union(self) -> Regex:
        parts = [self.concat()]
        while self.peek() in ("+", "|"):
            self.take()
            parts.append(self.concat())
        return union(*parts)

    def concat(self) -> Regex:
        parts = [self.postfix()]
        while self.peek() is not None and self.peek() not in ("+", "|", ")"):
            parts.append(self.postfix())
        return concat(*parts)

    def postfix(self) -> Regex:
        r = self.atom()
        while self.peek() == "*":
            self.take()
            r = star(r)
        return r

    def atom(self) -> Regex:
        tok = self.peek()
        at = self.here()
        if tok is None:
            raise RegexSyntaxError("unexpected end of regex", at)
        if tok == "(":
            self.take()
            r = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("expected ')'", self.here())
            self.take()
            return r
        if tok in ("*", "+", "|", ")"):
            raise RegexSyntaxError(f"unexpected {tok!r}", at)
        self.take()
        if tok == "eps":
            return EPSILON
        if tok == "void":
            return EMPTY
        return Literal(classify_token(tok))


def parse_regex(text: str) -> Regex:
    """Parse regex text into a canonical tree.

    Inverse of :func:`render_regex` on canonical trees.
    """
    return _Parser(text).parse()


# natural precedence levels used by the renderer
_LEVEL_UNION, _LEVEL_CONCAT, _LEVEL_STAR, _LEVEL_ATOM = 0, 1, 2, 3


def render_regex(r: Regex) -> str:
    """Render with ``+`` for union, spaces for concatenation, postfix ``*``."""
    return _render(r, _LEVEL_UNION)


def _render(r: Regex, required: int) -> str:
    if isinstance(r, Empty):
        text, level = "void", _LEVEL_ATOM
    elif isinstance(r, Epsilon):
        text, level = "eps", _LEVEL_ATOM
    elif isinstance(r, Literal):
        text, level = r.symbol.name, _LEVEL_ATOM
    elif isinstance(r, Star):
        text, level = _render(r.inner, _LEVEL_ATOM) + "*", _LEVEL_STAR
    elif isinstance(r, Concat):
        text = " ".join(_render(p, _LEVEL_STAR) for p in r.parts)
        level = _LEVEL_CONCAT
    elif isinstance(r, Union):
        text = " + ".join(_render(p, _LEVEL_CONCAT) for p in r.parts)
        level = _LEVEL_UNION
    else:
        raise TypeError(f"not a regex: {r!r}")
    if level < required:
        return "(" + text + ")"
    return text
