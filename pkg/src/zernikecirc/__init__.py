"""Zernike circle functions over the unit disk.

Evaluation, Noll indexing, linearisation of products, exact conversion
between Zernike expansions and Cartesian polynomials, and least-squares
fitting of scattered samples.
"""

from .errors import (
    FitError,
    ParameterError,
    ParseError,
    RankDeficientError,
    UnderdeterminedError,
    ZernikeError,
)
from .fitting import FitResult, SampleSet, fit, fit_to_zernike, load_samples
from .geometry import Point3, PointDisk, polar
from .polynomials import (
    Hypergeom21,
    Monomial1,
    Monomial2,
    Polynomial1,
    Polynomial2,
    format_polynomial,
    parse_polynomial,
)
from .zernike import (
    AzimuthalSum,
    AzimuthalTerm,
    RadialPoly,
    ZernikeExpansion,
    ZernikeTerm,
    azimuthal_eval,
    azimuthal_product,
    expansion_eval,
    expansion_product,
    format_expansion,
    g_coefficient,
    noll_index,
    noll_inverse,
    parse_expansion,
    polynomial_to_zernike,
    radial_build,
    radial_eval,
    zernike_eval,
    zernike_to_polynomial,
)

__version__ = "0.1.0"
