"""Sparse polynomials in one and two variables.

Polynomials are immutable and kept in canonical form: like terms merged,
exact zeros dropped, terms sorted by exponent.  Two polynomials therefore
compare equal exactly when their coefficient maps are equal.

:class:`Hypergeom21` is the terminating Gaussian series ``2F1(a, b; c; z)``
with ``a <= 0``, which is a univariate polynomial of degree ``|a|``.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import ParameterError, ParseError
from .textio import format_real, read_records

__all__ = [
    "Monomial1",
    "Monomial2",
    "Polynomial1",
    "Polynomial2",
    "Hypergeom21",
    "format_polynomial",
    "parse_polynomial",
]


def _check_exponent(e):
    if not isinstance(e, numbers.Integral) or e < 0:
        raise ParameterError(f"exponent must be a non-negative integer, got {e!r}")


@dataclass(frozen=True)
class Monomial1:
    """Single term ``coeff * x**exponent``."""

    coeff: float
    exponent: int

    def __post_init__(self):
        _check_exponent(self.exponent)

    def __mul__(self, other):
        if isinstance(other, Monomial1):
            return Monomial1(self.coeff * other.coeff, self.exponent + other.exponent)
        if isinstance(other, numbers.Real):
            return Monomial1(self.coeff * other, self.exponent)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if not isinstance(s, numbers.Real):
            return NotImplemented
        if s == 0:
            raise ZeroDivisionError("monomial divided by zero")
        return Monomial1(self.coeff / s, self.exponent)

    def __neg__(self):
        return Monomial1(-self.coeff, self.exponent)

    def at(self, x):
        return self.coeff * x**self.exponent


@dataclass(frozen=True)
class Monomial2:
    """Single term ``coeff * x**x_exp * y**y_exp``."""

    coeff: float
    x_exp: int
    y_exp: int

    def __post_init__(self):
        _check_exponent(self.x_exp)
        _check_exponent(self.y_exp)

    @property
    def degree(self) -> int:
        return self.x_exp + self.y_exp

    def __mul__(self, other):
        if isinstance(other, Monomial2):
            return Monomial2(
                self.coeff * other.coeff,
                self.x_exp + other.x_exp,
                self.y_exp + other.y_exp,
            )
        if isinstance(other, numbers.Real):
            return Monomial2(self.coeff * other, self.x_exp, self.y_exp)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if not isinstance(s, numbers.Real):
            return NotImplemented
        if s == 0:
            raise ZeroDivisionError("monomial divided by zero")
        return Monomial2(self.coeff / s, self.x_exp, self.y_exp)

    def __neg__(self):
        return Monomial2(-self.coeff, self.x_exp, self.y_exp)

    def at(self, pt):
        return self.coeff * pt.x**self.x_exp * pt.y**self.y_exp


class _SparsePolynomial:
    """Shared machinery: a canonical mapping ``exponent key -> coefficient``."""

    __slots__ = ("_coeffs",)
    _monomial: type

    def __init__(self, terms: Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = ((self._key(t), t.coeff) for t in terms)
        acc: dict = {}
        for key, c in items:
            key = self._check_key(key)
            acc[key] = acc.get(key, 0.0) + float(c)
        self._coeffs = {k: acc[k] for k in sorted(acc) if acc[k] != 0.0}

    @classmethod
    def _from_canonical(cls, coeffs: dict):
        obj = cls.__new__(cls)
        obj._coeffs = {k: coeffs[k] for k in sorted(coeffs) if coeffs[k] != 0.0}
        return obj

    @property
    def terms(self) -> tuple:
        return tuple(self._make(k, c) for k, c in self._coeffs.items())

    def as_dict(self) -> dict:
        return dict(self._coeffs)

    def coeff(self, *key) -> float:
        k = key[0] if len(key) == 1 else key
        return self._coeffs.get(k, 0.0)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash((type(self), tuple(self._coeffs.items())))

    def __repr__(self):
        inner = ", ".join(repr(t) for t in self.terms)
        return f"{type(self).__name__}([{inner}])"

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, self._monomial):
            return type(self)([other])
        if isinstance(other, numbers.Real):
            return type(self)({self._zero_key(): other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._coeffs)
        for k, c in other._coeffs.items():
            acc[k] = acc.get(k, 0.0) + c
        return self._from_canonical(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._from_canonical({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Real) and not isinstance(other, bool):
            return self._from_canonical({k: c * other for k, c in self._coeffs.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: dict = {}
        for k1, c1 in self._coeffs.items():
            for k2, c2 in other._coeffs.items():
                k = self._add_keys(k1, k2)
                acc[k] = acc.get(k, 0.0) + c1 * c2
        return self._from_canonical(acc)

    __rmul__ = __mul__

    def __truediv__(self, s):
        if not isinstance(s, numbers.Real):
            return NotImplemented
        if s == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return self._from_canonical({k: c / s for k, c in self._coeffs.items()})

    def __pow__(self, k: int):
        if not isinstance(k, numbers.Integral) or k < 0:
            return NotImplemented
        result = type(self)({self._zero_key(): 1.0})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


class Polynomial1(_SparsePolynomial):
    """Univariate polynomial ``sum_j c_j x**j``.

    >>> p = Polynomial1([Monomial1(1.0, 0), Monomial1(1.0, 1)])
    >>> (p * p).as_dict()
    {0: 1.0, 1: 2.0, 2: 1.0}
    """

    __slots__ = ()
    _monomial = Monomial1

    @staticmethod
    def _key(t):
        return t.exponent

    @staticmethod
    def _check_key(k):
        _check_exponent(k)
        return int(k)

    @staticmethod
    def _make(k, c):
        return Monomial1(c, k)

    @staticmethod
    def _zero_key():
        return 0

    @staticmethod
    def _add_keys(a, b):
        return a + b

    @property
    def degree(self) -> int:
        """Highest exponent; -1 for the zero polynomial."""
        return max(self._coeffs, default=-1)

    @property
    def lowest_degree(self) -> int:
        return min(self._coeffs, default=-1)

    def at(self, x):
        """Evaluate at `x` (scalar or array) by Horner's rule."""
        if not self._coeffs:
            return 0.0 * x
        deg = self.degree
        acc = 0.0
        for j in range(deg, -1, -1):
            acc = acc * x + self._coeffs.get(j, 0.0)
        return acc

    def substitute_power(self, k: int) -> "Polynomial1":
        """Return ``p(x**k)``."""
        return self._from_canonical({j * k: c for j, c in self._coeffs.items()})

    def shift_degree(self, k: int) -> "Polynomial1":
        """Return ``x**k * p(x)``."""
        return self._from_canonical({j + k: c for j, c in self._coeffs.items()})


class Polynomial2(_SparsePolynomial):
    """Bivariate polynomial ``sum c_{p,q} x**p y**q``, keyed by ``(p, q)``."""

    __slots__ = ()
    _monomial = Monomial2

    @staticmethod
    def _key(t):
        return (t.x_exp, t.y_exp)

    @staticmethod
    def _check_key(k):
        p, q = k
        _check_exponent(p)
        _check_exponent(q)
        return (int(p), int(q))

    @staticmethod
    def _make(k, c):
        return Monomial2(c, k[0], k[1])

    @staticmethod
    def _zero_key():
        return (0, 0)

    @staticmethod
    def _add_keys(a, b):
        return (a[0] + b[0], a[1] + b[1])

    @classmethod
    def x(cls) -> "Polynomial2":
        return cls({(1, 0): 1.0})

    @classmethod
    def y(cls) -> "Polynomial2":
        return cls({(0, 1): 1.0})

    @property
    def degree(self) -> int:
        """Total degree ``max(p + q)``; -1 for the zero polynomial."""
        return max((p + q for p, q in self._coeffs), default=-1)

    def homogeneous_part(self, d: int) -> "Polynomial2":
        return self._from_canonical(
            {k: c for k, c in self._coeffs.items() if k[0] + k[1] == d}
        )

    def at(self, pt) -> float:
        """Evaluate at a point with ``x``/``y`` attributes."""
        return self.evaluate(pt.x, pt.y)

    def evaluate(self, x, y):
        """Evaluate at coordinates; `x` and `y` may be numpy arrays."""
        total = 0.0 * np.asarray(x, dtype=float) if np.ndim(x) else 0.0
        for (p, q), c in self._coeffs.items():
            total = total + c * x**p * y**q
        return total


def format_polynomial(poly: Polynomial2) -> str:
    """Render as ``"p q coeff"`` lines sorted by total degree, then ``p``."""
    items = sorted(poly.as_dict().items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]))
    return "".join(f"{p} {q} {format_real(c)}\n" for (p, q), c in items)


def parse_polynomial(source, name: str = "<input>") -> Polynomial2:
    """Parse ``"p q coeff"`` records; repeated exponent pairs are summed."""
    acc: dict = {}
    for lineno, (p, q, c) in read_records(source, (int, int, float), name):
        if p < 0 or q < 0:
            raise ParseError(f"negative exponent in term ({p}, {q})", name, lineno)
        acc[(p, q)] = acc.get((p, q), 0.0) + c
    return Polynomial2(acc)


class Hypergeom21:
    """Terminating Gaussian hypergeometric series ``2F1(a, b; c; z)``.

    Parameters
    ----------
    a : int
        Non-positive integer; the series stops after ``|a| + 1`` terms.
    b, c : float
        Remaining parameters.  ``(c)_k`` must not vanish for ``k <= |a|``.

    The coefficient of ``z**k`` is ``(a)_k (b)_k / ((c)_k k!)``, built by
    multiplying successive term ratios in exact rational arithmetic.
    """

    __slots__ = ("a", "b", "c", "body")

    def __init__(self, a: int, b: float, c: float):
        if not isinstance(a, numbers.Integral) or a > 0:
            raise ParameterError(f"a must be a non-positive integer, got {a!r}")
        order = -int(a)
        for i in range(order):
            if c + i == 0:
                raise ParameterError(
                    f"(c)_k vanishes at k={i + 1} <= |a| for c={c!r}"
                )
        # exact running product of the term ratios, rounded once per coefficient
        fb, fc = Fraction(b), Fraction(c)
        coeffs = {0: 1.0}
        term = Fraction(1)
        for k in range(order):
            term *= (a + k) * (fb + k) / ((fc + k) * (k + 1))
            coeffs[k + 1] = float(term)
        self.a = int(a)
        self.b = b
        self.c = c
        self.body = Polynomial1(coeffs)

    def at(self, z):
        return self.body.at(z)

    def __repr__(self):
        return f"Hypergeom21(a={self.a}, b={self.b!r}, c={self.c!r})"
