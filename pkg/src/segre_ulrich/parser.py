"""Text surface for sheaves and varieties.

Sheaf expressions::

    expr   := term ("+" term)*
    term   := [count "*"] atom
    atom   := factor ("x" factor)*
    factor := "O(" int ")" | "Om(a=" int ";t=" int ")"

Variety descriptors look like ``n=2,1;k=1,1``.
"""

import logging
from typing import NamedTuple, Sequence

from pyparsing import (
    Group,
    Literal,
    Opt,
    ParseBaseException,
    ParserElement,
    ParseResults,
    Regex,
    Suppress,
    ZeroOrMore,
)

from segre_ulrich.engine.bott import FactorSheaf
from segre_ulrich.engine.sheaf import BoxAtom, FormalSheaf
from segre_ulrich.engine.variety import SegreVeronese
from segre_ulrich.errors import ArityMismatchError, ExpressionSyntaxError, InvalidSheafError

logger = logging.getLogger(__name__)


class FactorToken(NamedTuple):
    p: int
    t: int


def _integer() -> ParserElement:
    return Regex(r"[+-]?\d+").set_parse_action(lambda toks: int(toks[0]))


def _sheaf_grammar() -> ParserElement:
    count = Regex(r"\d+").set_parse_action(lambda toks: int(toks[0]))
    count.add_condition(lambda toks: toks[0] >= 1, message="multiplicity must be a positive integer", fatal=True)

    line = Suppress(Literal("O") + Literal("(")) + _integer() + Suppress(")")
    line.set_parse_action(lambda toks: FactorToken(0, toks[0]))
    omega = (
        Suppress(Literal("Om") + Literal("(") + Literal("a") + Literal("="))
        + _integer()
        + Suppress(Literal(";") + Literal("t") + Literal("="))
        + _integer()
        + Suppress(")")
    )
    omega.set_parse_action(lambda toks: FactorToken(toks[0], toks[1]))

    factor = omega | line
    atom = Group(factor + ZeroOrMore(Suppress("x") + factor))
    term = Group(Opt(count + Suppress("*"), default=1) + atom)
    return term + ZeroOrMore(Suppress("+") + term)


def _variety_grammar() -> ParserElement:
    number = Regex(r"\d+").set_parse_action(lambda toks: int(toks[0]))
    numbers = Group(number + ZeroOrMore(Suppress(",") + number))
    return (
        Suppress(Literal("n") + Literal("="))
        + numbers
        + Suppress(";")
        + Suppress(Literal("k") + Literal("="))
        + numbers
    )


_SHEAF = _sheaf_grammar()
_VARIETY = _variety_grammar()


def _run(grammar: ParserElement, text: str, what: str) -> ParseResults:
    try:
        return grammar.parse_string(text, parse_all=True)
    except ParseBaseException as exc:
        offset = len(text[: exc.loc].encode("utf-8"))
        logger.debug("Failed to parse %s %r: %s", what, text, exc)
        raise ExpressionSyntaxError(f"invalid {what} expression {text!r}: {exc.msg}", text, offset) from exc


def parse_sheaf(text: str, dims: Sequence[int] | SegreVeronese) -> FormalSheaf:
    """Parse a sheaf expression on the product of projective spaces of dimensions ``dims``."""
    n = dims.n if isinstance(dims, SegreVeronese) else tuple(dims)
    atoms: list[tuple[BoxAtom, int]] = []
    for multiplicity, factors in _run(_SHEAF, text, "sheaf"):
        if len(factors) != len(n):
            raise ArityMismatchError(len(n), len(factors))
        for n_i, token in zip(n, factors):
            if not 0 <= token.p <= n_i:
                raise InvalidSheafError(f"Om(a={token.p};...) needs 0 <= a <= {n_i} on P^{n_i}")
        box = BoxAtom(factors=tuple(FactorSheaf(n=n_i, p=token.p, t=token.t) for n_i, token in zip(n, factors)))
        atoms.append((box, multiplicity))
    return FormalSheaf.from_atoms(atoms)


def parse_variety(text: str) -> SegreVeronese:
    """Parse ``n=<list>;k=<list>``."""
    n, k = _run(_VARIETY, text, "variety")
    if len(n) != len(k):
        raise ArityMismatchError(len(n), len(k), "degree list")
    if any(value < 1 for value in [*n, *k]):
        raise InvalidSheafError(f"dimensions and degrees must be >= 1 in {text!r}")
    return SegreVeronese(n=tuple(n), k=tuple(k))


def parse_twist(text: str, s: int) -> tuple[int, ...]:
    """Parse a comma separated twist tuple of length ``s``."""
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ExpressionSyntaxError(f"invalid twist {text!r}", text, 0) from exc
    if len(values) != s:
        raise ArityMismatchError(s, len(values), "twist")
    return values


def format_factor(f: FactorSheaf) -> str:
    return f"O({f.t})" if f.p == 0 else f"Om(a={f.p};t={f.t})"


def format_atom(atom: BoxAtom) -> str:
    return "x".join(format_factor(f) for f in atom.factors)


def format_sheaf(F: FormalSheaf) -> str:
    """Inverse of ``parse_sheaf``: the printed text parses back to an equal sheaf."""
    return " + ".join(
        (f"{term.multiplicity}*" if term.multiplicity > 1 else "") + format_atom(term.atom) for term in F.terms
    )
