"""
Presentation files.

Text format, one directive per line, '#' starts a comment:

    p 3
    d 4
    orders 4 4 4 2
    comm 1 2 = 0 9 0 0

`comm i j = v_1 ... v_d` gives [x_i, x_j] for i < j; missing pairs are
trivial. Files ending in .json are read through PresentationSchema.
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple
import json
import logging
import re

from marshmallow import ValidationError as SchemaValidationError

from ..models.presentation import Element, PcPresentation, Pair
from ..schemas.presentation_schema import PresentationSchema
from ..utils.validation import PresentationError, PresentationValidator
from .base import BaseRepository, PathLike

logger = logging.getLogger(__name__)

Token = Tuple[str, int]

_TOKEN = re.compile(r"\S+")


def _tokens(line: str) -> List[Token]:
    """Whitespace-separated tokens with 1-based columns."""
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _integer(token: Token, line: int, what: str) -> int:
    text, column = token
    try:
        return int(text)
    except ValueError:
        raise PresentationError(f"{what} must be an integer, got {text!r}", line, column)


class PresentationRepository(BaseRepository[PcPresentation]):
    """Reads and writes presentation files."""

    suffix = ".pcp"
    subdirectory = "presentations"

    def parse(self, text: str) -> PcPresentation:
        """
        Parse the line format.

        Raises:
            PresentationError: With the line (and column when known) of the problem
        """
        p: Optional[int] = None
        d: Optional[int] = None
        orders: Optional[Tuple[int, ...]] = None
        printed: Dict[Pair, Element] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = _tokens(raw.split("#", 1)[0])
            if not tokens:
                continue
            keyword, column = tokens[0]
            args = tokens[1:]
            if keyword == "p":
                if p is not None:
                    raise PresentationError("p given twice", number, column)
                p = self._single(args, number, "p")
                PresentationValidator.validate_prime(p, number)
            elif keyword == "d":
                if d is not None:
                    raise PresentationError("d given twice", number, column)
                d = self._single(args, number, "d")
                if d < 1:
                    raise PresentationError(f"d must be positive, got {d}", number, args[0][1])
            elif keyword == "orders":
                if p is None or d is None:
                    raise PresentationError("orders before p and d", number, column)
                if orders is not None:
                    raise PresentationError("orders given twice", number, column)
                orders = tuple(_integer(t, number, "order exponent") for t in args)
                PresentationValidator.validate_orders(orders, d, number)
            elif keyword == "comm":
                if p is None or d is None or orders is None:
                    raise PresentationError("comm before p, d and orders", number, column)
                pair, value = self._commutator(args, number, p, d, orders)
                if pair in printed:
                    raise PresentationError(
                        f"duplicate comm entry {pair[0]} {pair[1]}", number, column
                    )
                printed[pair] = value
            else:
                raise PresentationError(f"unknown directive {keyword!r}", number, column)
        if p is None or d is None or orders is None:
            raise PresentationError("missing p, d or orders directive")
        return PcPresentation.from_printed(p, orders, printed)

    @staticmethod
    def _single(args: Sequence[Token], line: int, what: str) -> int:
        if len(args) != 1:
            column = args[1][1] if len(args) > 1 else None
            raise PresentationError(f"{what} takes exactly one value", line, column)
        return _integer(args[0], line, what)

    @staticmethod
    def _commutator(
        args: Sequence[Token], line: int, p: int, d: int, orders: Tuple[int, ...]
    ) -> Tuple[Pair, Element]:
        if len(args) < 3 or args[2][0] != "=":
            column = args[2][1] if len(args) > 2 else None
            raise PresentationError("expected 'comm <i> <j> = <v_1> ... <v_d>'", line, column)
        i = _integer(args[0], line, "generator index")
        j = _integer(args[1], line, "generator index")
        PresentationValidator.validate_pair(i, j, d, line)
        value = tuple(_integer(t, line, "exponent") for t in args[3:])
        if len(value) != d:
            column = args[3 + d][1] if len(value) > d else None
            raise PresentationError(
                f"comm value needs {d} exponents, got {len(value)}", line, column
            )
        for offset, (v, e) in enumerate(zip(value, orders)):
            if not 0 <= v < p**e:
                raise PresentationError(
                    f"exponent {v} of x_{offset + 1} out of range [0, {p**e})",
                    line,
                    args[3 + offset][1],
                )
        return (i, j), value

    def serialize(self, entity: PcPresentation, comments: Sequence[str] = ()) -> str:
        lines = [f"# {c}" for c in comments]
        lines.append(f"p {entity.p}")
        lines.append(f"d {entity.d}")
        lines.append("orders " + " ".join(str(e) for e in entity.exponents))
        for j, i in sorted(entity.nontrivial_pairs(), key=lambda pair: pair[::-1]):
            value = entity.printed(i + 1, j + 1)
            lines.append(f"comm {i + 1} {j + 1} = " + " ".join(str(v) for v in value))
        return "\n".join(lines) + "\n"

    def parse_json(self, text: str) -> PcPresentation:
        try:
            return PresentationSchema().loads(text)
        except json.JSONDecodeError as e:
            raise PresentationError(f"invalid JSON: {e.msg}", e.lineno, e.colno)
        except SchemaValidationError as e:
            raise PresentationError(f"invalid presentation: {e.messages}")

    def serialize_json(self, entity: PcPresentation) -> str:
        return json.dumps(PresentationSchema().dump(entity), sort_keys=True, indent=2) + "\n"

    def load(self, name: PathLike) -> PcPresentation:
        path = self.resolve(name)
        if path.suffix == ".json":
            return self.parse_json(path.read_text(encoding="utf-8"))
        return super().load(path)

    def save(self, entity: PcPresentation, path: PathLike) -> Path:
        if Path(path).suffix == ".json":
            target = Path(path)
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(self.serialize_json(entity), encoding="utf-8")
            return target
        return super().save(entity, path)
