"""Parser and evaluator for the little type-expression language.

Grammar (whitespace-insensitive):

    expr  := term (('+' | '-') term)*
    term  := [int '*'] atom
    atom  := 'ord(' int ')' | 'basic(' int ',' int ')' | 'chain(' int {',' int} ')'

Examples: ``ord(4)``, ``2*basic(2,2) - ord(4)``, ``chain(0,0,1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .basictypes import TypeCombo, basic_spectrum, basic_type, chain_type
from .errors import ExpressionError
from .formulas import spectrum_from_graph
from .resolution import ResolutionGraph, build_basic, build_chain, build_ordinary
from .spectrum import SpectrumCombo

@dataclass(frozen=True)
class Atom:
    kind: str  # 'ord' | 'basic' | 'chain'
    args: tuple[int, ...]

    def multiplicity(self) -> int:
        """First-level multiplicity of the germ the atom denotes."""
        if self.kind == "ord":
            return self.args[0]
        if self.kind == "basic":
            return self.args[0] + self.args[1]
        return chain_type(self.args).multiplicity

    def graph(self) -> ResolutionGraph:
        if self.kind == "ord":
            return build_ordinary(*self.args)
        if self.kind == "basic":
            return build_basic(*self.args)
        return build_chain(self.args)

    def spectrum(self) -> SpectrumCombo:
        if self.kind == "ord":
            return basic_spectrum(self.args[0], 0)
        if self.kind == "basic":
            return basic_spectrum(*self.args)
        return spectrum_from_graph(build_chain(self.args))

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.args))})"


_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+)\s*\*\s*)?"
    r"(?P<kind>ord|basic|chain)\s*\(\s*(?P<args>-?\d+(?:\s*,\s*-?\d+)*)\s*\)"
)


def parse_expression(text: str) -> list[tuple[int, Atom]]:
    """Parse into a list of (coefficient, atom) terms."""
    terms: list[tuple[int, Atom]] = []
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match:
            if text[pos:].strip():
                raise ExpressionError(f"cannot parse {text!r} at position {pos}")
            break
        if terms and match.group("sign") is None:
            raise ExpressionError(f"missing '+' or '-' before position {match.start('kind')}")
        sign = -1 if match.group("sign") == "-" else 1
        coeff = int(match.group("coeff")) if match.group("coeff") else 1
        kind = match.group("kind")
        args = tuple(int(x) for x in match.group("args").split(","))
        if kind == "ord" and len(args) != 1:
            raise ExpressionError(f"ord takes one argument, got {args}")
        if kind == "basic" and len(args) != 2:
            raise ExpressionError(f"basic takes two arguments, got {args}")
        terms.append((sign * coeff, Atom(kind, args)))
        pos = match.end()
    if not terms:
        raise ExpressionError(f"no terms in {text!r}")
    return terms


def expression_spectrum(terms: Sequence[tuple[int, Atom]]) -> SpectrumCombo:
    total = SpectrumCombo()
    for coeff, atom in terms:
        total = total + coeff * atom.spectrum()
    return total


def expression_type_combo(terms: Sequence[tuple[int, Atom]]) -> TypeCombo | None:
    """TypeCombo of an expression made of ord/basic atoms; None if chains occur."""
    total = TypeCombo()
    for coeff, atom in terms:
        if atom.kind == "chain":
            return None
        if atom.kind == "ord":
            total = total + TypeCombo.of(atom.args[0], 0, coeff)
        else:
            total = total + TypeCombo({basic_type(*atom.args): coeff})
    return total


def parse_parts(text: str) -> list[ResolutionGraph]:
    """Semicolon-separated single atoms, each a tangential-family graph."""
    graphs = []
    for chunk in text.split(";"):
        terms = parse_expression(chunk)
        if len(terms) != 1 or terms[0][0] != 1:
            raise ExpressionError(f"part {chunk!r} must be a single unweighted atom")
        graphs.append(terms[0][1].graph())
    return graphs
