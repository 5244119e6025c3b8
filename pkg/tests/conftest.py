"""Independent oracles shared by the test modules.

Nothing here goes through the library's hypergeometric construction,
closed-form projection sums or Noll row logic.
"""

import math

import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss


def radial_oracle(n, m, r):
    """Orthonormal radial polynomial from the classical factorial sum."""
    m = abs(m)
    r = np.asarray(r, dtype=float)
    total = np.zeros_like(r)
    for s in range((n - m) // 2 + 1):
        c = (-1) ** s * math.factorial(n - s) / (
            math.factorial(s)
            * math.factorial((n + m) // 2 - s)
            * math.factorial((n - m) // 2 - s)
        )
        total = total + c * r ** (n - 2 * s)
    return math.sqrt(2 * n + 2) * total


def azimuthal_oracle(m, phi):
    if m > 0:
        return np.cos(m * phi) / math.sqrt(math.pi)
    if m == 0:
        return np.ones_like(np.asarray(phi, dtype=float)) / math.sqrt(2 * math.pi)
    return np.sin(-m * phi) / math.sqrt(math.pi)


def zernike_oracle(n, m, x, y):
    r = np.hypot(x, y)
    phi = np.arctan2(y, x)
    return radial_oracle(n, m, r) * azimuthal_oracle(m, phi)


def gauss_unit(nodes):
    """Gauss-Legendre nodes and weights on [0, 1]."""
    t, w = leggauss(nodes)
    return 0.5 * (t + 1.0), 0.5 * w


def disk_quadrature(radial_nodes=24, angular_nodes=64):
    """Nodes ``(x, y)`` and weights for integrals over the unit disk."""
    r, wr = gauss_unit(radial_nodes)
    phi = 2 * np.pi * np.arange(angular_nodes) / angular_nodes
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    w = np.outer(wr * r, np.full(angular_nodes, 2 * np.pi / angular_nodes))
    return (rr * np.cos(pp)).ravel(), (rr * np.sin(pp)).ravel(), w.ravel()


def noll_enumeration(nmax):
    """j -> (n, m) by walking the ordering rule: n, then |m|, even j gets m >= 0."""
    table = {}
    j = 1
    for n in range(nmax + 1):
        for am in sorted({abs(m) for m in range(-n, n + 1, 2)}):
            if am == 0:
                table[j] = (n, 0)
                j += 1
            else:
                for jj in (j, j + 1):
                    table[jj] = (n, am if jj % 2 == 0 else -am)
                j += 2
    return table


def noll_closed_form(n, m):
    """Textbook closed form of Noll's index."""
    j = n * (n + 1) // 2 + abs(m)
    if m > 0 and n % 4 in (0, 1) or m < 0 and n % 4 in (2, 3):
        return j
    return j + 1


def disk_points(count, seed, rmax=0.99):
    rng = np.random.default_rng(seed)
    r = rmax * np.sqrt(rng.uniform(0, 1, count))
    phi = rng.uniform(-np.pi, np.pi, count)
    return r * np.cos(phi), r * np.sin(phi)


def valid_pairs(nmax):
    return [(n, m) for n in range(nmax + 1) for m in range(-n, n + 1, 2)]


@pytest.fixture
def points25():
    return disk_points(25, seed=11)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
