"""Language-equation solving over regex coefficients.

A pseudo-regular partition of a nonterminal's productions induces one
equation in one unknown::

    X = a X + X b + s

where ``a`` collects the left factors, ``b`` the right factors and ``s``
the constants.  Arden's rule gives the least solutions of the one-sided
cases (``a* s`` for ``X = a X + s`` and ``s a*`` for ``X = X a + s``);
the bilateral equation has least solution ``a* s b*``, which is what
:func:`solve_bilateral` returns.  The least-solution claim is pinned by the
bounded fixpoint oracle in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .grammar import PseudoRegularPartition
from .regex import Literal, Regex, concat, simplify, star, union
from .symbols import Symbol


class UnresolvedDependency(LookupError):
    """A factor references nonterminals that have not been solved yet."""

    def __init__(self, missing: Iterable[Symbol]):
        self.missing = tuple(missing)
        names = ", ".join(s.name for s in self.missing)
        super().__init__(f"unresolved nonterminal(s): {names}")


@dataclass(frozen=True)
class BilateralEquation:
    """One equation ``unknown = left unknown + unknown right + const``."""

    unknown: Symbol
    left: Regex
    right: Regex
    const: Regex


def arden_left_solve(a: Regex, s: Regex) -> Regex:
    """Least solution ``a* s`` of ``r = a r + s``."""
    return simplify(concat(star(a), s))


def arden_right_solve(a: Regex, s: Regex) -> Regex:
    """Least solution ``s a*`` of ``r = r a + s``."""
    return simplify(concat(s, star(a)))


def solve_bilateral(a: Regex, b: Regex, s: Regex) -> Regex:
    """Least solution ``a* s b*`` of ``r = a r + r b + s``."""
    return simplify(concat(star(a), s, star(b)))


def solve_equation(eq: BilateralEquation) -> Regex:
    return solve_bilateral(eq.left, eq.right, eq.const)


def equation_from_partition(
    p: PseudoRegularPartition, env: Mapping[Symbol, Regex]
) -> BilateralEquation:
    """Build the owner's equation, substituting solved dependencies.

    Every factor becomes a concatenation of literals in which nonterminals
    are replaced by their entries in ``env``; a class with no factors
    contributes the empty language.  Nonterminals absent from ``env`` raise
    :class:`UnresolvedDependency` (all of them are named).
    """
    missing = sorted(
        {
            sym
            for group in (p.left_factors, p.right_factors, p.constants)
            for seq in group
            for sym in seq
            if not sym.terminal and sym not in env
        },
        key=lambda s: s.name,
    )
    if missing:
        raise UnresolvedDependency(missing)

    def compile_seq(seq: tuple[Symbol, ...]) -> Regex:
        return concat(*(Literal(sym) if sym.terminal else env[sym] for sym in seq))

    return BilateralEquation(
        p.owner,
        union(*(compile_seq(f) for f in p.left_factors)),
        union(*(compile_seq(f) for f in p.right_factors)),
        union(*(compile_seq(f) for f in p.constants)),
    )
