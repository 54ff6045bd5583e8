"""
Common validation utilities and error types.

Input problems raise ValidationError subclasses; violated operation
preconditions raise PreconditionError; enumerations that would exceed a
configured cap raise CapExceededError.
"""

from typing import Optional, Sequence
import logging

from sympy import isprime

logger = logging.getLogger(__name__)


class ValidationError(ValueError):
    """Custom exception for validation errors."""

    pass


class PresentationError(ValidationError):
    """Malformed or inconsistent presentation input."""

    def __init__(
        self, message: str, line: Optional[int] = None, column: Optional[int] = None
    ):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")


class FixtureFormatError(ValidationError):
    """Malformed equation fixture file."""

    pass


class PreconditionError(ValueError):
    """An operation was called outside its documented precondition."""

    pass


class CapExceededError(RuntimeError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class StructureError(RuntimeError):
    """A structural computation is not available for this presentation."""

    pass


class PresentationValidator:
    """
    Field-level checks for presentation data.

    Every check raises PresentationError with the offending location when
    one is given.
    """

    @staticmethod
    def validate_prime(p: int, line: Optional[int] = None) -> None:
        """
        Validate that p is a prime.

        Raises:
            PresentationError: If p is not prime
        """
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise PresentationError(f"p must be a prime, got {p}", line)

    @staticmethod
    def validate_orders(
        exponents: Sequence[int], d: Optional[int] = None, line: Optional[int] = None
    ) -> None:
        """
        Validate generator order exponents.

        Args:
            exponents: e_1..e_d, generator x_i has order p^{e_i}
            d: Declared generator count, if any

        Raises:
            PresentationError: On a count mismatch or non-positive exponent
        """
        if not exponents:
            raise PresentationError("at least one generator is required", line)
        if d is not None and len(exponents) != d:
            raise PresentationError(
                f"expected {d} order exponents, got {len(exponents)}", line
            )
        for position, e in enumerate(exponents, start=1):
            if not isinstance(e, int) or e < 1:
                raise PresentationError(
                    f"order exponent of x_{position} must be positive, got {e}", line
                )

    @staticmethod
    def validate_vector(
        p: int,
        exponents: Sequence[int],
        vector: Sequence[int],
        line: Optional[int] = None,
    ) -> None:
        """
        Validate an exponent vector against the generator orders.

        Raises:
            PresentationError: If the length is wrong or an entry is out of range
        """
        if len(vector) != len(exponents):
            raise PresentationError(
                f"vector has {len(vector)} entries, expected {len(exponents)}", line
            )
        for m, (value, e) in enumerate(zip(vector, exponents), start=1):
            if not 0 <= value < p**e:
                raise PresentationError(
                    f"exponent {value} of x_{m} out of range [0, {p**e})", line
                )

    @staticmethod
    def validate_pair(i: int, j: int, d: int, line: Optional[int] = None) -> None:
        """
        Validate a printed commutator pair [x_i, x_j] (1-based, i < j).

        Raises:
            PresentationError: On out-of-range or non-increasing indices
        """
        if i == j:
            raise PresentationError(f"self-commutator [x_{i}, x_{j}]", line)
        if not (1 <= i <= d and 1 <= j <= d):
            raise PresentationError(f"generator index out of range 1..{d}", line)
        if i > j:
            raise PresentationError(
                f"commutator pair must be written with i < j, got {i} {j}", line
            )


def require(condition: bool, message: str) -> None:
    """Raise PreconditionError with message unless condition holds."""
    if not condition:
        logger.warning(f"Precondition failed: {message}")
        raise PreconditionError(message)
