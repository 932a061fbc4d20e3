"""
S-graph Workbench - Exact Arithmetic
Rational numbers, linear forms over the coefficient indeterminates c_1..c_n,
and function vectors in the x_k = r^k - r^{k+1} basis.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union


RationalLike = Union[int, str, Fraction]


class InputError(ValueError):
    """Exception raised for invalid user-supplied input."""
    pass


def to_rational(value: RationalLike) -> Fraction:
    """
    Convert an integer, a "p/q" string or a Fraction into a Fraction.

    Raises:
        InputError: If the value cannot be read as a rational number
    """
    if isinstance(value, bool):
        raise InputError(f"Not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Not a rational number: {value!r}") from e
    raise InputError(f"Not a rational number: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when it is an integer."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class LinearForm:
    """
    Exact linear combination of the indeterminates c_1..c_n.

    Terms are kept sorted by index with zero coefficients dropped, so that
    structural equality is mathematical equality.
    """
    terms: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        merged: Dict[int, Fraction] = {}
        for index, coeff in self.terms:
            if index < 1:
                raise InputError(f"Indeterminate index must be >= 1, got {index}")
            merged[index] = merged.get(index, Fraction(0)) + to_rational(coeff)
        canonical = tuple(sorted((i, q) for i, q in merged.items() if q != 0))
        object.__setattr__(self, "terms", canonical)

    @classmethod
    def zero(cls) -> "LinearForm":
        return cls()

    @classmethod
    def variable(cls, index: int) -> "LinearForm":
        """The form c_index (index n+1 is read as the zero form by callers)."""
        return cls(((index, Fraction(1)),))

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, RationalLike]) -> "LinearForm":
        return cls(tuple((i, to_rational(q)) for i, q in coeffs.items()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.terms)

    def coefficient(self, index: int) -> Fraction:
        for i, q in self.terms:
            if i == index:
                return q
        return Fraction(0)

    def single_variable(self) -> Optional[int]:
        """Return j if this form is exactly c_j, else None."""
        if len(self.terms) == 1 and self.terms[0][1] == 1:
            return self.terms[0][0]
        return None

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(self.terms)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.terms + other.terms)

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple((i, -q) for i, q in self.terms))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, factor: RationalLike) -> "LinearForm":
        q = to_rational(factor)
        return LinearForm(tuple((i, q * c) for i, c in self.terms))

    def evaluate(self, coeffs: Sequence[Fraction]) -> Fraction:
        """Substitute numeric values; coeffs[i-1] is the value of c_i."""
        total = Fraction(0)
        for index, q in self.terms:
            if index > len(coeffs):
                raise InputError(
                    f"Form {self} uses c{index} but only {len(coeffs)} coefficients were given"
                )
            total += q * coeffs[index - 1]
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for position, (index, q) in enumerate(self.terms):
            sign = "-" if q < 0 else "+"
            magnitude = abs(q)
            body = f"c{index}" if magnitude == 1 else f"{format_rational(magnitude)}*c{index}"
            if position == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign}{body}")
        return "".join(parts)


ZERO_FORM = LinearForm()


def coefficient_form(index: int, n: int) -> LinearForm:
    """c_index with the convention c_0 = c_{n+1} = 0."""
    if index < 1 or index > n:
        return ZERO_FORM
    return LinearForm.variable(index)


def form_arithmetic(
    a: LinearForm,
    b: Optional[LinearForm],
    op: str,
    factor: RationalLike = 1
) -> Union[LinearForm, bool]:
    """
    Apply one of add, sub, scale or equals.

    Args:
        a: Left operand
        b: Right operand (ignored by scale)
        op: One of "add", "sub", "scale", "equals"
        factor: Scale factor for "scale"

    Returns:
        A canonical LinearForm, or a boolean for "equals"
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "scale":
        return a.scale(factor)
    if op == "equals":
        return a == b
    raise InputError(f"Unknown form operation: {op}")


def evaluate_form(form: LinearForm, coeffs: Sequence[RationalLike]) -> Fraction:
    """Exact value of a form at numeric coefficients c = (c_1, ..., c_n)."""
    return form.evaluate([to_rational(q) for q in coeffs])


@dataclass(frozen=True)
class FunctionVector:
    """
    n-tuple (c'_1, ..., c'_n) of linear forms, the coefficients of x_k.

    The conventions c'_0 = c'_{n+1} = 0 are applied by coord(), never stored.
    """
    coords: Tuple[LinearForm, ...]

    @classmethod
    def zero(cls, n: int) -> "FunctionVector":
        return cls(tuple(ZERO_FORM for _ in range(n)))

    @classmethod
    def of(cls, forms: Iterable[LinearForm]) -> "FunctionVector":
        return cls(tuple(forms))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(form.is_zero for form in self.coords)

    def coord(self, k: int) -> LinearForm:
        """c'_k for k in [0, n+1]; the boundary slots read as zero."""
        if k < 1 or k > self.n:
            return ZERO_FORM
        return self.coords[k - 1]

    def diff(self, k: int) -> LinearForm:
        """c'_{k+1} - c'_k for k in [0, n]."""
        return self.coord(k + 1) - self.coord(k)

    def with_coord(self, k: int, form: LinearForm) -> "FunctionVector":
        if k < 1 or k > self.n:
            raise InputError(f"Slot {k} out of range for n={self.n}")
        coords = list(self.coords)
        coords[k - 1] = form
        return FunctionVector(tuple(coords))

    def _check_length(self, other: "FunctionVector") -> None:
        if other.n != self.n:
            raise InputError(f"Length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "FunctionVector") -> "FunctionVector":
        self._check_length(other)
        return FunctionVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FunctionVector") -> "FunctionVector":
        self._check_length(other)
        return FunctionVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "FunctionVector":
        return FunctionVector(tuple(-a for a in self.coords))

    def evaluate(self, coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """Numeric coordinate vector at c."""
        return tuple(form.evaluate(coeffs) for form in self.coords)

    def __str__(self) -> str:
        return "; ".join(str(form) for form in self.coords)


def r_difference(a: int, b: int, weight: LinearForm, n: int) -> FunctionVector:
    """
    Express weight * (r^a - r^b) in the x-basis.

    Telescoping gives weight on slots a <= i < b, and -weight on b <= i < a.
    """
    if not (1 <= a <= n + 1 and 1 <= b <= n + 1):
        raise InputError(f"r-indices must lie in [1, {n + 1}], got ({a}, {b})")
    coords = []
    for i in range(1, n + 1):
        if a <= i < b:
            coords.append(weight)
        elif b <= i < a:
            coords.append(-weight)
        else:
            coords.append(ZERO_FORM)
    return FunctionVector(tuple(coords))
