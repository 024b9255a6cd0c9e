"""
Trigonometric polynomials with exact rational coefficients.

Products are reduced with the product-to-sum identities, so every operator
expansion of the perturbation engine stays inside the field of rationals.
"""
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

Scalar = Union[int, Fraction]


def _add_cosine(target: Dict[int, Fraction], n: int, value: Fraction) -> None:
    n = abs(n)
    total = target.get(n, Fraction(0)) + value
    if total:
        target[n] = total
    else:
        target.pop(n, None)


def _add_sine(target: Dict[int, Fraction], n: int, value: Fraction) -> None:
    if n == 0:
        return
    if n < 0:
        n, value = -n, -value
    total = target.get(n, Fraction(0)) + value
    if total:
        target[n] = total
    else:
        target.pop(n, None)


class TrigPolynomial:
    """sum_n a_n cos(n phi) + sum_n b_n sin(n phi), n >= 0.

    The n = 0 cosine term is the constant. Zero coefficients are never stored,
    so two polynomials are equal iff their dictionaries are.
    """

    __slots__ = ("cos", "sin")

    def __init__(self, cos: Optional[Mapping[int, Scalar]] = None, sin: Optional[Mapping[int, Scalar]] = None):
        self.cos: Dict[int, Fraction] = {}
        self.sin: Dict[int, Fraction] = {}
        for n, value in (cos or {}).items():
            _add_cosine(self.cos, n, Fraction(value))
        for n, value in (sin or {}).items():
            _add_sine(self.sin, n, Fraction(value))

    @classmethod
    def constant(cls, value: Scalar) -> "TrigPolynomial":
        return cls(cos={0: value})

    @classmethod
    def cosine(cls, n: int, coefficient: Scalar = 1) -> "TrigPolynomial":
        return cls(cos={n: coefficient})

    @classmethod
    def sine(cls, n: int, coefficient: Scalar = 1) -> "TrigPolynomial":
        return cls(sin={n: coefficient})

    def terms(self) -> Iterator[Tuple[str, int, Fraction]]:
        for n, value in self.cos.items():
            yield "cos", n, value
        for n, value in self.sin.items():
            yield "sin", n, value

    def coefficient(self, kind: str, n: int) -> Fraction:
        if kind == "cos":
            return self.cos.get(n, Fraction(0))
        if kind == "sin":
            return self.sin.get(n, Fraction(0))
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")

    @property
    def degree(self) -> int:
        """Highest frequency present; 0 for constants and the zero polynomial."""
        return max(list(self.cos) + list(self.sin), default=0)

    def is_zero(self) -> bool:
        return not self.cos and not self.sin

    def period_integral(self) -> Fraction:
        """Integral over [0, 2 pi] as a multiple of pi."""
        return 2 * self.cos.get(0, Fraction(0))

    def derivative(self) -> "TrigPolynomial":
        result = TrigPolynomial()
        for n, value in self.cos.items():
            _add_sine(result.sin, n, -n * value)
        for n, value in self.sin.items():
            _add_cosine(result.cos, n, n * value)
        return result

    def power(self, exponent: int) -> "TrigPolynomial":
        if exponent < 0:
            raise ValueError(f"exponent must be non-negative, got {exponent}")
        result = TrigPolynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        result = TrigPolynomial(self.cos, self.sin)
        for n, value in other.cos.items():
            _add_cosine(result.cos, n, value)
        for n, value in other.sin.items():
            _add_sine(result.sin, n, value)
        return result

    def __neg__(self) -> "TrigPolynomial":
        return self * -1

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["TrigPolynomial", Scalar]) -> "TrigPolynomial":
        if not isinstance(other, TrigPolynomial):
            factor = Fraction(other)
            return TrigPolynomial({n: v * factor for n, v in self.cos.items()}, {n: v * factor for n, v in self.sin.items()})
        result = TrigPolynomial()
        half = Fraction(1, 2)
        for a, x in self.cos.items():
            for b, y in other.cos.items():
                _add_cosine(result.cos, a - b, half * x * y)
                _add_cosine(result.cos, a + b, half * x * y)
            for b, y in other.sin.items():
                _add_sine(result.sin, a + b, half * x * y)
                _add_sine(result.sin, b - a, half * x * y)
        for a, x in self.sin.items():
            for b, y in other.cos.items():
                _add_sine(result.sin, a + b, half * x * y)
                _add_sine(result.sin, a - b, half * x * y)
            for b, y in other.sin.items():
                _add_cosine(result.cos, a - b, half * x * y)
                _add_cosine(result.cos, a + b, -half * x * y)
        return result

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return self.cos == other.cos and self.sin == other.sin

    def __hash__(self) -> int:
        return hash((frozenset(self.cos.items()), frozenset(self.sin.items())))

    def __repr__(self) -> str:
        parts = [f"{value}*{kind}({n}phi)" for kind, n, value in self.terms()]
        return "TrigPolynomial(" + (" + ".join(parts) or "0") + ")"


COS = TrigPolynomial.cosine(1)
SIN = TrigPolynomial.sine(1)
