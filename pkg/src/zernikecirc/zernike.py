"""Zernike circle functions over the unit disk.

The basis is orthonormal with respect to ``r dr dphi`` on ``r <= 1``::

    Z_n^(m)(r, phi) = R_n^m(r) * A_m(phi)

with ``R_n^m(1) = sqrt(2n + 2)`` and ``A_m`` a cosine (``m >= 0``) or sine
(``m < 0``) normalised to unit L2 norm over ``[0, 2 pi)``.

Besides evaluation and Noll indexing the module linearises products of
expansions and converts expansions to and from Cartesian polynomials.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Mapping

import numpy as np

from .errors import ParameterError, ParseError
from .geometry import PointDisk
from .polynomials import Hypergeom21, Monomial2, Polynomial2
from .textio import format_real, read_records

__all__ = [
    "PRUNE_TOL",
    "RadialPoly",
    "AzimuthalTerm",
    "AzimuthalSum",
    "ZernikeTerm",
    "ZernikeExpansion",
    "is_valid",
    "radial_build",
    "radial_eval",
    "noll_index",
    "noll_inverse",
    "azimuthal_eval",
    "azimuthal_product",
    "g_coefficient",
    "zernike_eval",
    "expansion_eval",
    "expansion_product",
    "polynomial_to_zernike",
    "zernike_to_polynomial",
    "format_expansion",
    "parse_expansion",
]

#: Accumulated coefficients smaller than this are treated as cancellation noise.
PRUNE_TOL = 1e-12

_SQRT_PI = math.sqrt(math.pi)


def _is_int(v) -> bool:
    return isinstance(v, numbers.Integral) and not isinstance(v, bool)


def is_valid(n, m) -> bool:
    """True when ``(n, m)`` labels a circle function: ``|m| <= n``, ``n - m`` even."""
    return _is_int(n) and _is_int(m) and 0 <= abs(m) <= n and (n - m) % 2 == 0


def _check_nm(n, m):
    if not is_valid(n, m):
        raise ParameterError(
            f"invalid Zernike indices (n={n!r}, m={m!r}): need |m| <= n and n - m even"
        )


def _check_dim(dim):
    if dim != 2:
        raise ParameterError(f"only the D=2 circle functions are available, got D={dim!r}")


def _eps(m: int) -> int:
    return 2 if m == 0 else 1


# -- radial part ------------------------------------------------------------


class RadialPoly:
    """Orthonormal radial polynomial ``R_n^m(r)``, expanded in powers of ``r``.

    The body is built from the terminating series
    ``2F1(-(n-|m|)/2, 1+(n+|m|)/2; 1+|m|; r**2)`` times
    ``sqrt(2n+2) (-1)**((n-|m|)/2) C((n+|m|)/2, (n-|m|)/2) r**|m|``.

    Parameters
    ----------
    n, m : int
        Degree and azimuthal order; only ``|m|`` enters.
    dim : int
        Dimension of the ambient space.  Only ``2`` is supported.
    """

    __slots__ = ("n", "m", "body")

    def __init__(self, n: int, m: int, dim: int = 2):
        _check_dim(dim)
        _check_nm(n, m)
        am = abs(m)
        s = (n - am) // 2
        series = Hypergeom21(-s, 1 + (n + am) // 2, 1 + am)
        scale = math.sqrt(2 * n + 2) * (-1) ** s * math.comb((n + am) // 2, s)
        self.n = int(n)
        self.m = int(m)
        self.body = series.body.substitute_power(2).shift_degree(am) * scale

    def at(self, r):
        return self.body.at(r)

    __call__ = at

    def g(self, n2, m2, n3, m3) -> float:
        """Projection ``int_0^1 r R_n^m R_n2^m2 R_n3^m3 dr``."""
        return g_coefficient(self.n, self.m, n2, m2, n3, m3)

    def __repr__(self):
        return f"RadialPoly(n={self.n}, m={self.m})"


@lru_cache(maxsize=None)
def _radial(n: int, am: int) -> RadialPoly:
    return RadialPoly(n, am)


def radial_build(n: int, m: int, dim: int = 2) -> RadialPoly:
    """Return ``R_n^m``; raises :class:`ParameterError` on invalid indices."""
    _check_dim(dim)
    _check_nm(n, m)
    return _radial(int(n), abs(int(m)))


def radial_eval(radial: RadialPoly, r):
    return radial.at(r)


@lru_cache(maxsize=None)
def _g_cached(key: tuple) -> float:
    (n1, a1), (n2, a2), (n3, a3) = key
    ranges = [range((n - a) // 2 + 1) for n, a in key]
    nsum = n1 + n2 + n3

    def factor(n, a, s):
        return (-1) ** s * math.comb(n - s, s) * math.comb(n - 2 * s, (n - a) // 2 - s)

    total = Fraction(0)
    for s1, s2, s3 in _cartesian(*ranges):
        num = factor(n1, a1, s1) * factor(n2, a2, s2) * factor(n3, a3, s3)
        if num:
            total += Fraction(num, 2 + nsum - 2 * (s1 + s2 + s3))
    return math.sqrt(8 * (n1 + 1) * (n2 + 1) * (n3 + 1)) * float(total)


def g_coefficient(n1, m1, n2, m2, n3, m3, dim: int = 2) -> float:
    """Triple-product integral ``int_0^1 r R_n1^m1 R_n2^m2 R_n3^m3 dr``.

    Evaluated in closed form as a finite triple sum.  The inner sum is
    accumulated in exact rational arithmetic, so the result does not depend
    on the order of the three index pairs.
    """
    _check_dim(dim)
    for n, m in ((n1, m1), (n2, m2), (n3, m3)):
        _check_nm(n, m)
    key = tuple(sorted(((int(n1), abs(int(m1))), (int(n2), abs(int(m2))), (int(n3), abs(int(m3))))))
    return _g_cached(key)


# -- azimuthal part ---------------------------------------------------------


@dataclass(frozen=True)
class AzimuthalTerm:
    """``coeff * A_m(phi)``: ``cos(m phi)/sqrt(eps_m pi)`` or ``sin(|m| phi)/sqrt(pi)``."""

    m: int
    coeff: float = 1.0

    def __post_init__(self):
        if not _is_int(self.m):
            raise ParameterError(f"azimuthal order must be an integer, got {self.m!r}")

    def at(self, phi):
        if self.m >= 0:
            return self.coeff * np.cos(self.m * phi) / math.sqrt(_eps(self.m) * math.pi)
        return self.coeff * np.sin(-self.m * phi) / _SQRT_PI

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return AzimuthalTerm(self.m, self.coeff * other)
        if isinstance(other, AzimuthalTerm):
            return azimuthal_product(self, other)
        if isinstance(other, AzimuthalSum):
            return AzimuthalSum([self]) * other
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return AzimuthalTerm(self.m, self.coeff * other)
        return NotImplemented

    def __truediv__(self, s):
        if s == 0:
            raise ZeroDivisionError("azimuthal term divided by zero")
        return AzimuthalTerm(self.m, self.coeff / s)


def _unit_azimuthal_product(m1: int, m2: int) -> list[tuple[int, float]]:
    """Expand ``A_m1 * A_m2`` as ``[(m, weight), ...]`` (may repeat ``m``)."""
    if m1 < 0 <= m2:
        m1, m2 = m2, m1
    pref = 1.0 / (2.0 * math.sqrt(_eps(m1) * _eps(m2) * math.pi))
    if m1 >= 0 and m2 >= 0:
        d, s = abs(m1 - m2), m1 + m2
        return [(d, math.sqrt(_eps(d)) * pref), (s, math.sqrt(_eps(s)) * pref)]
    if m1 >= 0:
        a = -m2
        out = [(-(m1 + a), pref)]
        sign = (m1 > a) - (m1 < a)
        if sign:
            out.append((-abs(m1 - a), -sign * pref))
        return out
    d = abs(m1 - m2)
    return [(d, math.sqrt(_eps(d)) * pref), (abs(m1 + m2), -pref)]


class AzimuthalSum:
    """Finite sum ``sum_m c_m A_m(phi)`` with distinct orders."""

    __slots__ = ("_coeffs",)

    def __init__(self, terms: Iterable[AzimuthalTerm] | Mapping[int, float] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = ((t.m, t.coeff) for t in terms)
        acc: dict[int, float] = {}
        for m, c in items:
            acc[int(m)] = acc.get(int(m), 0.0) + float(c)
        self._coeffs = {m: acc[m] for m in sorted(acc) if abs(acc[m]) >= PRUNE_TOL}

    @property
    def terms(self) -> tuple[AzimuthalTerm, ...]:
        return tuple(AzimuthalTerm(m, c) for m, c in self._coeffs.items())

    def as_dict(self) -> dict[int, float]:
        return dict(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self.terms)

    def at(self, phi):
        return sum((t.at(phi) for t in self.terms), 0.0 * np.asarray(phi, dtype=float))

    def __add__(self, other):
        if isinstance(other, AzimuthalTerm):
            other = AzimuthalSum([other])
        if not isinstance(other, AzimuthalSum):
            return NotImplemented
        acc = dict(self._coeffs)
        for m, c in other._coeffs.items():
            acc[m] = acc.get(m, 0.0) + c
        return AzimuthalSum(acc)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return AzimuthalSum({m: c * other for m, c in self._coeffs.items()})
        if isinstance(other, AzimuthalTerm):
            other = AzimuthalSum([other])
        if not isinstance(other, AzimuthalSum):
            return NotImplemented
        acc: dict[int, float] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                for m, w in _unit_azimuthal_product(m1, m2):
                    acc[m] = acc.get(m, 0.0) + c1 * c2 * w
        return AzimuthalSum(acc)

    __rmul__ = __mul__

    def __truediv__(self, s):
        if s == 0:
            raise ZeroDivisionError("azimuthal sum divided by zero")
        return self * (1.0 / s)

    def __repr__(self):
        return f"AzimuthalSum({self._coeffs!r})"


def azimuthal_eval(term: AzimuthalTerm, phi):
    return term.at(phi)


def azimuthal_product(t1: AzimuthalTerm, t2: AzimuthalTerm) -> AzimuthalSum:
    """Expand ``(c1 A_m1)(c2 A_m2)`` into a sum of single harmonics.

    When ``m1 = |m2|`` in the mixed cosine-sine case the difference term
    vanishes identically and is omitted.
    """
    c = t1.coeff * t2.coeff
    acc: dict[int, float] = {}
    for m, w in _unit_azimuthal_product(t1.m, t2.m):
        acc[m] = acc.get(m, 0.0) + c * w
    return AzimuthalSum(acc)


# -- Noll indexing ----------------------------------------------------------


def _noll_row(n: int):
    """Yield ``(j, m)`` for every valid ``m`` of degree `n`, in Noll order."""
    j = n * (n + 1) // 2 + 1
    for am in range(n % 2, n + 1, 2):
        if am == 0:
            yield j, 0
            j += 1
            continue
        for jj in (j, j + 1):
            yield jj, (am if jj % 2 == 0 else -am)
        j += 2


def noll_index(n: int, m: int) -> int:
    """Noll's single index ``j >= 1`` of ``Z_n^(m)``.

    >>> noll_index(4, 2)
    12
    """
    _check_nm(n, m)
    for j, mm in _noll_row(int(n)):
        if mm == m:
            return j
    raise AssertionError("unreachable")


def noll_inverse(j: int) -> tuple[int, int]:
    """Map Noll's index back to ``(n, m)``."""
    if not _is_int(j) or j < 1:
        raise ParameterError(f"Noll index must be an integer >= 1, got {j!r}")
    n = (math.isqrt(8 * (j - 1) + 1) - 1) // 2
    for jj, m in _noll_row(n):
        if jj == j:
            return n, m
    raise AssertionError("unreachable")


# -- circle functions -------------------------------------------------------


@dataclass(frozen=True)
class ZernikeTerm:
    """Single circle function ``coeff * Z_n^(m)``.

    An index pair violating ``|m| <= n`` or the parity rule is kept with
    ``coeff = 0`` instead of raising.
    """

    n: int
    m: int
    coeff: float = 1.0

    def __post_init__(self):
        if not (_is_int(self.n) and _is_int(self.m)):
            raise ParameterError(f"indices must be integers, got ({self.n!r}, {self.m!r})")
        if not is_valid(self.n, self.m):
            object.__setattr__(self, "coeff", 0.0)

    @classmethod
    def from_noll(cls, j: int, coeff: float = 1.0) -> "ZernikeTerm":
        n, m = noll_inverse(j)
        return cls(n, m, coeff)

    @property
    def valid(self) -> bool:
        return is_valid(self.n, self.m)

    @property
    def noll(self) -> int:
        return noll_index(self.n, self.m)

    def at(self, pt: PointDisk) -> float:
        r = pt.radius()
        if r > 1.0:
            return 0.0
        return self.at_polar(r, pt.azimuth())

    def at_polar(self, r: float, phi: float) -> float:
        if r > 1.0 or self.coeff == 0.0:
            return 0.0
        radial = _radial(self.n, abs(self.m)).at(r)
        return float(radial * AzimuthalTerm(self.m, self.coeff).at(phi))

    def evaluate(self, x, y):
        return ZernikeExpansion([self]).evaluate(x, y)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return ZernikeTerm(self.n, self.m, self.coeff * other)
        if isinstance(other, (ZernikeTerm, ZernikeExpansion)):
            return expansion_product(ZernikeExpansion([self]), other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return ZernikeTerm(self.n, self.m, self.coeff * other)
        return NotImplemented

    def __truediv__(self, s):
        if s == 0:
            raise ZeroDivisionError("Zernike term divided by zero")
        return ZernikeTerm(self.n, self.m, self.coeff / s)

    def __neg__(self):
        return ZernikeTerm(self.n, self.m, -self.coeff)

    def __add__(self, other):
        return ZernikeExpansion([self]) + other


def _noll_key(nm):
    return noll_index(*nm)


class ZernikeExpansion:
    """Finite sum ``sum c_{n,m} Z_n^(m)``, ordered by Noll index.

    Coefficients with magnitude below :data:`PRUNE_TOL` are dropped.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, terms: Iterable[ZernikeTerm] | Mapping[tuple[int, int], float] = ()):
        if isinstance(terms, Mapping):
            items = []
            for (n, m), c in terms.items():
                t = ZernikeTerm(n, m, c)
                items.append(((t.n, t.m), t.coeff))
        else:
            items = [((t.n, t.m), t.coeff) for t in terms]
        acc: dict[tuple[int, int], float] = {}
        for key, c in items:
            if c == 0.0:
                continue
            acc[key] = acc.get(key, 0.0) + float(c)
        self._coeffs = _canonical(acc)

    @classmethod
    def _wrap(cls, acc: dict) -> "ZernikeExpansion":
        obj = cls.__new__(cls)
        obj._coeffs = _canonical(acc)
        return obj

    @property
    def terms(self) -> tuple[ZernikeTerm, ...]:
        return tuple(ZernikeTerm(n, m, c) for (n, m), c in self._coeffs.items())

    def as_dict(self) -> dict[tuple[int, int], float]:
        return dict(self._coeffs)

    def coeff(self, n: int, m: int) -> float:
        return self._coeffs.get((n, m), 0.0)

    @property
    def max_degree(self) -> int:
        return max((n for n, _ in self._coeffs), default=-1)

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, ZernikeExpansion):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        return f"ZernikeExpansion({self._coeffs!r})"

    def at(self, pt: PointDisk) -> float:
        r = pt.radius()
        if r > 1.0:
            return 0.0
        phi = pt.azimuth()
        return math.fsum(t.at_polar(r, phi) for t in self.terms)

    def evaluate(self, x, y):
        """Vectorised evaluation at Cartesian coordinates (numpy arrays allowed)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r = np.hypot(x, y)
        phi = np.arctan2(y, x)
        total = np.zeros(np.broadcast(x, y).shape)
        for (n, m), c in self._coeffs.items():
            total += _radial(n, abs(m)).at(r) * AzimuthalTerm(m, c).at(phi)
        total = np.where(r > 1.0, 0.0, total)
        return total if total.ndim else float(total)

    def _coerce(self, other):
        if isinstance(other, ZernikeExpansion):
            return other
        if isinstance(other, ZernikeTerm):
            return ZernikeExpansion([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._coeffs)
        for k, c in other._coeffs.items():
            acc[k] = acc.get(k, 0.0) + c
        return self._wrap(acc)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return self._wrap({k: c * other for k, c in self._coeffs.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return expansion_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return self * other
        return NotImplemented

    def __truediv__(self, s):
        if s == 0:
            raise ZeroDivisionError("Zernike expansion divided by zero")
        return self._wrap({k: c / s for k, c in self._coeffs.items()})

    def to_polynomial(self) -> Polynomial2:
        return zernike_to_polynomial(self)

    @classmethod
    def from_polynomial(cls, poly) -> "ZernikeExpansion":
        return polynomial_to_zernike(poly)


def _canonical(acc: dict) -> dict:
    keep = {k: c for k, c in acc.items() if abs(c) >= PRUNE_TOL}
    return {k: keep[k] for k in sorted(keep, key=_noll_key)}


def _as_expansion(e) -> ZernikeExpansion:
    if isinstance(e, ZernikeExpansion):
        return e
    if isinstance(e, ZernikeTerm):
        return ZernikeExpansion([e])
    raise TypeError(f"expected ZernikeTerm or ZernikeExpansion, got {type(e).__name__}")


def zernike_eval(term: ZernikeTerm, pt: PointDisk) -> float:
    """Value of ``coeff * Z_n^(m)`` at `pt`; exactly 0 when ``r > 1``."""
    return term.at(pt)


def expansion_eval(e: ZernikeExpansion, pt: PointDisk) -> float:
    return _as_expansion(e).at(pt)


def expansion_product(e1, e2) -> ZernikeExpansion:
    """Linearise the product of two expansions.

    Each pair of terms first has its azimuthal factors expanded into single
    harmonics ``A_m3``; the radial product is then projected on
    ``R_n3^m3`` for ``n3 = |m3|, |m3| + 2, ..., n1 + n2``.
    """
    e1, e2 = _as_expansion(e1), _as_expansion(e2)
    acc: dict[tuple[int, int], float] = {}
    for (n1, m1), c1 in e1._coeffs.items():
        for (n2, m2), c2 in e2._coeffs.items():
            for m3, w in _unit_azimuthal_product(m1, m2):
                cw = c1 * c2 * w
                for n3 in range(abs(m3), n1 + n2 + 1, 2):
                    key = (n3, m3)
                    acc[key] = acc.get(key, 0.0) + cw * g_coefficient(n1, m1, n2, m2, n3, m3)
    return ZernikeExpansion._wrap(acc)


# -- Cartesian conversions --------------------------------------------------


@lru_cache(maxsize=None)
def _harmonic(am: int) -> tuple[Polynomial2, Polynomial2]:
    """Real and imaginary parts of ``(x + i y)**am``."""
    re: dict = {}
    im: dict = {}
    for k in range(am + 1):
        c = math.comb(am, k)
        # i**k cycles 1, i, -1, -i
        if k % 2 == 0:
            re[(am - k, k)] = c * (-1) ** (k // 2)
        else:
            im[(am - k, k)] = c * (-1) ** ((k - 1) // 2)
    return Polynomial2(re), Polynomial2(im)


@lru_cache(maxsize=None)
def _unit_polynomial(n: int, m: int) -> Polynomial2:
    """Cartesian form of ``Z_n^(m)`` with unit coefficient."""
    am = abs(m)
    radial = _radial(n, am)
    rho2 = Polynomial2({(2, 0): 1.0, (0, 2): 1.0})
    even_part = Polynomial2()
    power = Polynomial2({(0, 0): 1.0})
    for k in range((n - am) // 2 + 1):
        a = radial.body.coeff(am + 2 * k)
        if a:
            even_part = even_part + power * a
        power = power * rho2
    re, im = _harmonic(am)
    angular = re if m >= 0 else im
    return angular * even_part / math.sqrt(_eps(m) * math.pi)


def zernike_to_polynomial(e) -> Polynomial2:
    """Exact conversion of a term or expansion to ``sum c_{p,q} x**p y**q``."""
    e = _as_expansion(e)
    acc: dict = {}
    for (n, m), c in e._coeffs.items():
        for key, v in _unit_polynomial(n, m).as_dict().items():
            acc[key] = acc.get(key, 0.0) + c * v
    return Polynomial2(acc)


def polynomial_to_zernike(p) -> ZernikeExpansion:
    """Exact conversion of a Cartesian polynomial to a Zernike expansion.

    ``Z_n^(m)`` in Cartesian form has total degrees ``n, n-2, ...``, so the
    system is block triangular in the total degree.  Blocks are solved from
    the top degree down, each one a square ``(D+1) x (D+1)`` system for the
    coefficients of ``Z_D^(m)``, ``m = -D, -D+2, ..., D``.
    """
    if isinstance(p, Monomial2):
        p = Polynomial2([p])
    residual = p.as_dict()
    result: dict[tuple[int, int], float] = {}
    for deg in range(p.degree, -1, -1):
        ms = list(range(-deg, deg + 1, 2))
        rhs = np.array([residual.get((i, deg - i), 0.0) for i in range(deg + 1)])
        if not rhs.any():
            continue
        mat = np.empty((deg + 1, deg + 1))
        for col, m in enumerate(ms):
            unit = _unit_polynomial(deg, m)
            mat[:, col] = [unit.coeff(i, deg - i) for i in range(deg + 1)]
        coeffs = np.linalg.solve(mat, rhs)
        for m, c in zip(ms, coeffs):
            c = float(c)
            result[(deg, m)] = c
            for key, v in _unit_polynomial(deg, m).as_dict().items():
                residual[key] = residual.get(key, 0.0) - c * v
    return ZernikeExpansion._wrap(result)


# -- text format ------------------------------------------------------------


def format_expansion(e) -> str:
    """Render as ``"n m coeff"`` lines in Noll order."""
    e = _as_expansion(e)
    return "".join(f"{n} {m} {format_real(c)}\n" for (n, m), c in e._coeffs.items())


def parse_expansion(source, name: str = "<input>") -> ZernikeExpansion:
    """Parse ``"n m coeff"`` records; repeated index pairs are summed.

    Unlike :class:`ZernikeTerm`, an invalid index pair in a file is an error.
    """
    acc: dict[tuple[int, int], float] = {}
    for lineno, (n, m, c) in read_records(source, (int, int, float), name):
        if not is_valid(n, m):
            raise ParseError(f"invalid Zernike indices ({n}, {m})", name, lineno)
        acc[(n, m)] = acc.get((n, m), 0.0) + c
    return ZernikeExpansion(acc)
