"""
Equation fixture files.

    # provenance comments
    name family-a
    d 4
    e7: -a32 + a13 + a13*a44 mod p^2
    e00: a31 mod p^(n-2)

Each equation line is an optional label, an integer polynomial in the
unknowns a_ij and a modulus `mod p` or `mod p^<t>`; t may use n.
"""

from typing import Dict, List, Optional, Tuple
import logging
import re

from sympy import Poly, Symbol, ZZ, sympify
from sympy.parsing.sympy_parser import parse_expr

from ..models.symbolic import Equation, FixtureSet, Monomial
from ..utils.validation import FixtureFormatError
from .base import BaseRepository, PathLike

logger = logging.getLogger(__name__)

_EQUATION = re.compile(
    r"^(?:(?P<label>[\w.\-]+)\s*:)?\s*(?P<poly>.+?)\s+mod\s+p(?:\^(?P<exponent>\S+))?\s*$"
)


def _symbols(d: int) -> List[Symbol]:
    return [Symbol(f"a{i + 1}{j + 1}") for i in range(d) for j in range(d)]


class FixtureRepository(BaseRepository[FixtureSet]):
    """
    Reads equation fixtures.

    Args:
        n: Value substituted for n in modulus exponents
    """

    suffix = ".eqs"
    subdirectory = "fixtures"

    def __init__(self, data_dir: Optional[PathLike] = None, n: Optional[int] = None):
        super().__init__(data_dir)
        self.n = n

    def with_n(self, n: Optional[int]) -> "FixtureRepository":
        return FixtureRepository(self.data_dir, n)

    def parse(self, text: str) -> FixtureSet:
        name = ""
        d: Optional[int] = None
        notes: List[str] = []
        equations: List[Equation] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                notes.append(line.lstrip("# "))
                continue
            keyword, _, rest = line.partition(" ")
            if keyword == "name" and not equations:
                name = rest.strip()
            elif keyword == "d" and not equations:
                try:
                    d = int(rest)
                except ValueError:
                    raise FixtureFormatError(f"line {number}: d must be an integer")
            else:
                if d is None:
                    raise FixtureFormatError(f"line {number}: equation before 'd'")
                equations.append(self._equation(line, number, d, len(equations)))
        if d is None:
            raise FixtureFormatError("fixture file declares no 'd'")
        logger.debug(f"Parsed {len(equations)} fixture equations for {name or 'unnamed'}")
        return FixtureSet(name, d, tuple(equations), tuple(notes))

    def _equation(self, line: str, number: int, d: int, position: int) -> Equation:
        match = _EQUATION.match(line)
        if match is None:
            raise FixtureFormatError(f"line {number}: expected '<polynomial> mod p^<t>'")
        symbols = _symbols(d)
        names: Dict[str, Symbol] = {str(s): s for s in symbols}
        try:
            expr = parse_expr(match.group("poly"), local_dict=names)
        except Exception as e:
            raise FixtureFormatError(f"line {number}: cannot parse polynomial: {e}")
        unknown = expr.free_symbols - set(symbols)
        if unknown:
            raise FixtureFormatError(
                f"line {number}: unknown symbols {sorted(str(s) for s in unknown)}"
            )
        try:
            poly = Poly(expr, *symbols, domain=ZZ)
        except Exception as e:
            raise FixtureFormatError(f"line {number}: not an integer polynomial: {e}")
        terms: List[Tuple[int, Monomial]] = []
        for exponents, coefficient in poly.terms():
            monomial = tuple((v, k) for v, k in enumerate(exponents) if k)
            terms.append((int(coefficient), monomial))
        terms.sort(key=lambda term: term[1])
        target = self._target(match.group("exponent"), number)
        label = match.group("label") or f"eq{position + 1}"
        return Equation(tuple(terms), target, label)

    def _target(self, exponent: Optional[str], number: int) -> int:
        if exponent is None:
            return 1
        try:
            value = sympify(exponent, locals={"n": Symbol("n")})
        except Exception as e:
            raise FixtureFormatError(f"line {number}: bad modulus exponent: {e}")
        if value.free_symbols:
            if self.n is None:
                raise FixtureFormatError(
                    f"line {number}: modulus depends on n; load with n set"
                )
            value = value.subs(Symbol("n"), self.n)
        if not value.is_integer or int(value) < 1:
            raise FixtureFormatError(f"line {number}: modulus exponent must be a positive integer")
        return int(value)

    def serialize(self, entity: FixtureSet) -> str:
        symbols = _symbols(entity.d)
        lines = [f"# {note}" for note in entity.notes]
        if entity.name:
            lines.append(f"name {entity.name}")
        lines.append(f"d {entity.d}")
        for eq in entity.equations:
            expr = sum(
                (c * _product(symbols, monomial) for c, monomial in eq.terms),
                sympify(0),
            )
            modulus = "p" if eq.target == 1 else f"p^{eq.target}"
            lines.append(f"{eq.source}: {expr} mod {modulus}")
        return "\n".join(lines) + "\n"


def _product(symbols: List[Symbol], monomial: Monomial):
    out = sympify(1)
    for v, k in monomial:
        out *= symbols[v] ** k
    return out
