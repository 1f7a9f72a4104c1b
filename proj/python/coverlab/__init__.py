"""Exact covering-system verification and non-covering certificates.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface. All measures, bounds and certificate values are exact
`fractions.Fraction` objects, never floats.
"""

import os as _os

from ._coverlab import (  # noqa: F401
    ArithmeticProgression,
    APSystem,
    Catalog,
    CatalogEntry,
    Certificate,
    CoverVerdict,
    APCoverVerdict,
    DistortionTrace,
    Hyperplane,
    Instance,
    MinCResult,
    ap_is_covering,
    ap_to_hyperplane,
    certify,
    distort,
    instance_from_json,
    instance_to_json,
    apsystem_from_json,
    apsystem_to_json,
    is_covering,
    min_c,
    min_modulus_bound,
    primes_upto_index,
    scalar_condition,
    scalar_condition_value,
    search_squarefree_cover,
    system_to_instance,
    uncovered_measure,
    verify_prime_growth,
    nu,
)


def catalog_dir():
    """Directory of the bundled example catalog.

    Honours COVERLAB_CATALOG_DIR, falling back to the copy installed next
    to the package (sdist/wheel builds bundle it).
    """
    env = _os.environ.get("COVERLAB_CATALOG_DIR")
    if env:
        return env
    bundled = _os.path.join(_os.path.dirname(__file__), "catalog")
    if _os.path.isdir(bundled):
        return bundled
    raise FileNotFoundError(
        "no catalog directory found; set COVERLAB_CATALOG_DIR"
    )


__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
