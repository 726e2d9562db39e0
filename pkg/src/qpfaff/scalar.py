"""Laurent polynomials in q with exact rational coefficients.

Everything in the package uses :class:`LaurentScalar` as its coefficient
ring.  Values are immutable and hashable; arithmetic never touches floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Tuple, Union

from .errors import DomainError, ParseError, ZeroBase

Rational = Union[int, Fraction]


class LaurentScalar:
    """A finite sum ``sum c_k q^k`` with ``c_k`` rational and ``k`` any integer.

    The zero scalar has no terms.  Stored coefficients are never zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(k)] = c
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c: Rational) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def monomial(cls, coeff: Rational, exponent: int) -> "LaurentScalar":
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, value) -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls({0: value})
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as a LaurentScalar")

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not a constant")
        return self._terms.get(0, Fraction(0))

    def min_exponent(self) -> int:
        return min(self._terms)

    def max_exponent(self) -> int:
        return max(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "LaurentScalar":
        """Multiplicative inverse; only monomials ``c q^k`` are units."""
        mono = as_q_power(self)
        if mono is None:
            raise DomainError(f"{self} is not invertible in the Laurent ring")
        c, k = mono
        return LaurentScalar({-k: 1 / c})

    def divexact(self, other: "LaurentScalar") -> Optional["LaurentScalar"]:
        """Return ``self / other`` when it is a Laurent polynomial, else None."""
        other = LaurentScalar.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        if self.is_zero():
            return ZERO
        # shift both into ordinary polynomials and run long division
        lo_a, lo_b = self.min_exponent(), other.min_exponent()
        num = {k - lo_a: c for k, c in self._terms.items()}
        den = {k - lo_b: c for k, c in other._terms.items()}
        top_b = max(den)
        lead_b = den[top_b]
        quot = {}
        while num:
            top = max(num)
            if top < top_b:
                return None
            c = num[top] / lead_b
            shift = top - top_b
            quot[shift] = c
            for k, d in den.items():
                v = num.get(k + shift, 0) - c * d
                if v:
                    num[k + shift] = v
                else:
                    num.pop(k + shift, None)
        return LaurentScalar({k + lo_a - lo_b: c for k, c in quot.items()})

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation -------------------------------------------------------

    def eval_at(self, q0: Rational) -> Fraction:
        return eval_at(self, q0)

    # -- rendering --------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"LaurentScalar({format_scalar(self)!r})"

    def compact(self) -> str:
        return format_compact(self)

    def latex(self) -> str:
        return format_compact(self, latex=True)


def _raw(terms: dict) -> LaurentScalar:
    # terms already canonical (no zeros, Fraction values)
    s = LaurentScalar.__new__(LaurentScalar)
    s._terms = terms
    s._hash = None
    return s


def _coerce_or_none(value):
    if isinstance(value, LaurentScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return LaurentScalar({0: value})
    return None


ZERO = LaurentScalar()
ONE = LaurentScalar({0: 1})
Q = LaurentScalar({1: 1})
Q_INV = LaurentScalar({-1: 1})


def q_pow(k: int, coeff: Rational = 1) -> LaurentScalar:
    return LaurentScalar({k: coeff})


def add(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    return a + b


def mul(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    return a * b


def eval_at(a: LaurentScalar, q0: Rational) -> Fraction:
    """Substitute ``q := q0`` exactly."""
    q0 = Fraction(q0)
    if q0 == 0:
        if any(k < 0 for k in a._terms):
            raise ZeroBase(f"cannot evaluate {a} at q = 0")
        return a._terms.get(0, Fraction(0))
    total = Fraction(0)
    for k, c in a._terms.items():
        total += c * q0**k
    return total


def as_q_power(a: LaurentScalar) -> Optional[Tuple[Fraction, int]]:
    """Return ``(c, k)`` when ``a == c q^k`` with ``c != 0``, else None."""
    if len(a._terms) != 1:
        return None
    ((k, c),) = a._terms.items()
    return c, k


# -- q-analogs ---------------------------------------------------------------


def q_integer(n: int) -> LaurentScalar:
    """``[n]_q = 1 + q + ... + q^(n-1)``."""
    if n < 0:
        raise DomainError(f"q_integer needs n >= 0, got {n}")
    return LaurentScalar({k: 1 for k in range(n)})


def q_factorial(n: int) -> LaurentScalar:
    if n < 0:
        raise DomainError(f"q_factorial needs n >= 0, got {n}")
    out = ONE
    for i in range(1, n + 1):
        out = out * q_integer(i)
    return out


def q_binomial(n: int, k: int) -> LaurentScalar:
    """Gaussian binomial via ``[n, k] = [n-1, k-1] + q^k [n-1, k]``."""
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    row = [ONE]
    for m in range(1, n + 1):
        nxt = [ONE] * (m + 1)
        for j in range(1, m):
            nxt[j] = row[j - 1] + q_pow(j) * row[j]
        row = nxt
    return row[k]


# -- text --------------------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_power(k: int, latex: bool = False) -> str:
    if k == 1:
        return "q"
    if latex:
        return f"q^{{{k}}}"
    return f"q^{k}"


def format_scalar(a: LaurentScalar) -> str:
    """Canonical text: ascending exponents, explicit coefficients.

    >>> format_scalar(LaurentScalar({-1: -1, 0: 2, 2: 3}))
    '-1*q^-1 + 2 + 3*q^2'
    """
    if a.is_zero():
        return "0"
    parts = []
    for i, (k, c) in enumerate(sorted(a._terms.items())):
        mag = _fmt_coeff(abs(c)) if i else _fmt_coeff(c)
        body = mag if k == 0 else f"{mag}*{_fmt_power(k)}"
        if i:
            parts.append(("- " if c < 0 else "+ ") + body)
        else:
            parts.append(body)
    return " ".join(parts)


def format_compact(a: LaurentScalar, latex: bool = False) -> str:
    """Human-facing text: descending exponents, unit coefficients dropped.

    Matches the usual way these scalars are written, e.g. ``q - q^-1``.
    """
    if a.is_zero():
        return "0"
    parts = []
    for i, (k, c) in enumerate(sorted(a._terms.items(), reverse=True)):
        mag = abs(c)
        if k == 0:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = _fmt_power(k, latex)
        else:
            sep = " " if latex else "*"
            coeff = _fmt_coeff(mag)
            if latex and mag.denominator != 1:
                coeff = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            body = f"{coeff}{sep}{_fmt_power(k, latex)}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coeff>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?P<q>q(?:\s*\^\s*(?P<exp>[+-]?\d+|\{[+-]?\d+\}))?)?
        \s*""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> LaurentScalar:
    """Parse the canonical or compact rendering back into a scalar.

    Accepts sums of terms ``[sign][coeff][*]q^k``; surrounding parentheses
    are allowed.
    """
    s = text.strip()
    while s.startswith("(") and s.endswith(")"):
        s = s[1:-1].strip()
    if not s:
        raise ParseError(f"empty scalar in {text!r}")
    terms: dict = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse scalar {text!r} at offset {pos}")
        sign, coeff, star, qpart, exp = m.group("sign", "coeff", "star", "q", "exp")
        if not first and sign is None:
            raise ParseError(f"missing operator in scalar {text!r} at offset {pos}")
        if coeff is None and qpart is None:
            raise ParseError(f"dangling sign in scalar {text!r}")
        if star and qpart is None:
            raise ParseError(f"'*' must be followed by q in {text!r}")
        c = Fraction(coeff) if coeff is not None else Fraction(1)
        if sign == "-":
            c = -c
        if qpart is None:
            k = 0
        elif exp is None:
            k = 1
        else:
            k = int(exp.strip("{}"))
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
        first = False
    return LaurentScalar(terms)


def scalar_sum(values: Iterable[LaurentScalar]) -> LaurentScalar:
    out: dict = {}
    for v in values:
        for k, c in v._terms.items():
            out[k] = out.get(k, 0) + c
    return LaurentScalar(out)
