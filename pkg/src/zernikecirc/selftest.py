"""Built-in consistency checks, run by ``zernikecirc selftest``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .polynomials import Polynomial2
from .zernike import (
    ZernikeExpansion,
    ZernikeTerm,
    expansion_product,
    noll_index,
    noll_inverse,
    polynomial_to_zernike,
    zernike_to_polynomial,
)

NOLL_TABLE = [
    (1, 0, 0), (2, 1, 1), (3, 1, -1), (4, 2, 0), (5, 2, -2),
    (6, 2, 2), (7, 3, -1), (8, 3, 1), (9, 3, -3), (10, 3, 3),
    (11, 4, 0), (12, 4, 2), (13, 4, -2), (14, 4, 4), (15, 4, -4),
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _disk_points(count: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    r = 0.98 * np.sqrt(rng.uniform(0.0, 1.0, count))
    phi = rng.uniform(-np.pi, np.pi, count)
    return r * np.cos(phi), r * np.sin(phi)


def _terms(max_n: int):
    return [ZernikeTerm(n, m) for n in range(max_n + 1) for m in range(-n, n + 1, 2)]


def check_noll_forward() -> CheckResult:
    bad = [(j, n, m) for j, n, m in NOLL_TABLE if noll_index(n, m) != j]
    return CheckResult("noll-forward", not bad, f"{len(NOLL_TABLE)} entries, {len(bad)} mismatches")


def check_noll_inverse() -> CheckResult:
    bad = [(j, n, m) for j, n, m in NOLL_TABLE if noll_inverse(j) != (n, m)]
    return CheckResult("noll-inverse", not bad, f"{len(NOLL_TABLE)} entries, {len(bad)} mismatches")


def check_products(max_n: int = 6, points: int = 20, tol: float = 1e-9) -> CheckResult:
    x, y = _disk_points(points, seed=3)
    terms = _terms(max_n)
    values = {(t.n, t.m): t.evaluate(x, y) for t in terms}
    worst = 0.0
    for t1 in terms:
        for t2 in terms:
            prod = expansion_product(ZernikeExpansion([t1]), ZernikeExpansion([t2]))
            direct = values[t1.n, t1.m] * values[t2.n, t2.m]
            worst = max(worst, float(np.max(np.abs(prod.evaluate(x, y) - direct))))
    return CheckResult(
        "product", worst <= tol, f"{len(terms) ** 2} pairs, max deviation {worst:.3g}"
    )


def check_monomials(max_degree: int = 8, points: int = 25, tol: float = 1e-10) -> CheckResult:
    x, y = _disk_points(points, seed=5)
    worst = 0.0
    count = 0
    for d in range(max_degree + 1):
        for p in range(d + 1):
            poly = Polynomial2({(p, d - p): 1.0})
            e = polynomial_to_zernike(poly)
            worst = max(worst, float(np.max(np.abs(e.evaluate(x, y) - poly.evaluate(x, y)))))
            count += 1
    return CheckResult(
        "monomial-to-zernike", worst <= tol, f"{count} monomials, max deviation {worst:.3g}"
    )


def check_zernike_terms(max_n: int = 8, points: int = 25, tol: float = 1e-10) -> CheckResult:
    x, y = _disk_points(points, seed=5)
    worst = 0.0
    terms = _terms(max_n)
    for t in terms:
        poly = zernike_to_polynomial(t)
        worst = max(worst, float(np.max(np.abs(poly.evaluate(x, y) - t.evaluate(x, y)))))
    return CheckResult(
        "zernike-to-polynomial", worst <= tol, f"{len(terms)} terms, max deviation {worst:.3g}"
    )


CHECKS: list[Callable[[], CheckResult]] = [
    check_noll_forward,
    check_noll_inverse,
    check_products,
    check_monomials,
    check_zernike_terms,
]


def noll_table_lines(jmax: int = 15) -> list[str]:
    lines = ["#  j  n  m"]
    for j in range(1, jmax + 1):
        n, m = noll_inverse(j)
        lines.append(f"{j:4d} {n:2d} {m:2d}")
    return lines


def run(out) -> bool:
    for line in noll_table_lines():
        print(line, file=out)
    ok = True
    for check in CHECKS:
        try:
            res = check()
        except Exception as exc:  # a crash is a failed check, not a crashed run
            res = CheckResult(check.__name__.removeprefix("check_"), False, f"raised {exc!r}")
        ok &= res.passed
        print(f"{'PASS' if res.passed else 'FAIL'} {res.name}: {res.detail}", file=out)
    return ok
