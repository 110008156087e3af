"""Grammar symbols and the lexical rule that classifies tokens.

Everywhere a token is read from text (grammar files and regex strings alike),
the same convention applies: a token whose first character is an ASCII
uppercase letter names a nonterminal, anything else names a terminal.
"""

from __future__ import annotations

from dataclasses import dataclass

# Reserved in both text formats: `eps` is the empty string, `void` the empty
# language.  Neither may be used as an ordinary token.
RESERVED_TOKENS = frozenset({"eps", "void"})


@dataclass(frozen=True)
class Symbol:
    """A terminal or nonterminal symbol, identified by name.

    The kind is fixed at construction time and never changes.
    """

    name: str
    terminal: bool

    def __post_init__(self) -> None:
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(
                f"symbol name must be non-empty and whitespace-free: {self.name!r}"
            )

    def __str__(self) -> str:
        return self.name


def terminal(name: str) -> Symbol:
    return Symbol(name, terminal=True)


def nonterminal(name: str) -> Symbol:
    return Symbol(name, terminal=False)


def classify_token(token: str) -> Symbol:
    """Classify a token lexically: uppercase-initial means nonterminal."""
    return Symbol(token, terminal=not ("A" <= token[0] <= "Z"))
