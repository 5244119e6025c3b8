"""Least-squares fits of scattered samples to bivariate power polynomials.

The fit is a plain ordinary least-squares problem in the monomials
``x**p y**q`` with ``p + q <= K``, solved through a column-pivoted QR
factorisation of the design matrix.  Converting the result to Zernike
coefficients is a separate, exact step; regressing directly in the
Zernike basis would be cheaper but is not what this module does.

Samples outside the unit disk are fitted like any other sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import scipy.linalg

from .errors import ParseError, RankDeficientError, UnderdeterminedError
from .geometry import Point3
from .polynomials import Polynomial2
from .textio import read_records
from .zernike import ZernikeExpansion, polynomial_to_zernike

__all__ = [
    "RANK_TOL",
    "SampleSet",
    "FitResult",
    "basis_exponents",
    "design_matrix",
    "load_samples",
    "fit",
    "fit_to_zernike",
]

#: |R_kk| / |R_00| below this marks the design matrix as rank deficient.
RANK_TOL = 1e-10


class SampleSet:
    """Immutable collection of ``(x, y, f)`` observations."""

    __slots__ = ("_samples",)

    def __init__(self, samples: Iterable[Point3]):
        pts = tuple(s if isinstance(s, Point3) else Point3(*s) for s in samples)
        if not pts:
            raise ValueError("a sample set needs at least one sample")
        for s in pts:
            if not all(math.isfinite(v) for v in (s.x, s.y, s.z)):
                raise ValueError(f"non-finite sample {s!r}")
        self._samples = pts

    @classmethod
    def from_arrays(cls, x, y, f) -> "SampleSet":
        return cls(Point3(float(a), float(b), float(c)) for a, b, c in zip(x, y, f))

    @property
    def samples(self) -> tuple[Point3, ...]:
        return self._samples

    def __len__(self):
        return len(self._samples)

    def __iter__(self):
        return iter(self._samples)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        a = np.array([(s.x, s.y, s.z) for s in self._samples], dtype=float)
        return a[:, 0], a[:, 1], a[:, 2]


@dataclass(frozen=True)
class FitResult:
    polynomial: Polynomial2
    residual_norm: float
    sample_count: int
    basis_size: int
    max_order: int


def load_samples(source, name: str = "<input>") -> SampleSet:
    """Read ``x y f`` lines from text or a stream.

    Raises
    ------
    ParseError
        On a malformed line (reported with its line number) or when the
        input holds no data lines at all.
    """
    pts = [Point3(x, y, f) for _, (x, y, f) in read_records(source, (float, float, float), name)]
    if not pts:
        raise ParseError("no samples found", name)
    return SampleSet(pts)


def basis_exponents(max_order: int) -> list[tuple[int, int]]:
    """Exponent pairs ``(p, q)`` with ``p + q <= max_order``, by total degree."""
    return [(d - q, q) for d in range(max_order + 1) for q in range(d + 1)]


def design_matrix(x, y, max_order: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.column_stack([x**p * y**q for p, q in basis_exponents(max_order)])


def fit(data: SampleSet, max_order: int) -> FitResult:
    """Ordinary least-squares fit of total order `max_order`.

    Raises
    ------
    UnderdeterminedError
        Fewer samples than basis monomials.
    RankDeficientError
        The sample geometry cannot separate the basis monomials, e.g. all
        samples on one line with ``max_order >= 1``.
    """
    if max_order < 0:
        raise ValueError(f"max_order must be non-negative, got {max_order}")
    exps = basis_exponents(max_order)
    size = len(exps)
    if len(data) < size:
        raise UnderdeterminedError(
            f"underdetermined: {len(data)} samples for {size} coefficients (order {max_order})"
        )
    x, y, f = data.arrays()
    a = design_matrix(x, y, max_order)
    q, r, perm = scipy.linalg.qr(a, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    rank = int(np.sum(diag > RANK_TOL * diag[0])) if diag[0] > 0 else 0
    if rank < size:
        raise RankDeficientError(
            f"rank deficient design matrix: rank {rank} < {size} "
            f"(samples cannot resolve all monomials of order {max_order})",
            rank=rank,
            size=size,
        )
    sol = scipy.linalg.solve_triangular(r, q.T @ f)
    coeffs = np.empty(size)
    coeffs[perm] = sol
    residual = f - a @ coeffs
    poly = Polynomial2({exps[k]: float(coeffs[k]) for k in range(size)})
    return FitResult(
        polynomial=poly,
        residual_norm=float(np.linalg.norm(residual)),
        sample_count=len(data),
        basis_size=size,
        max_order=max_order,
    )


def fit_to_zernike(data: SampleSet, max_order: int) -> ZernikeExpansion:
    return polynomial_to_zernike(fit(data, max_order).polynomial)
