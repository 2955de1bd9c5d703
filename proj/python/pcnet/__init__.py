try:
    from ._pcnet import (
        build_scheme,
        catalog,
        compare,
        generate,
        ndt,
        ndt_baseline,
        simulate,
        sweep,
        verify,
    )
except ImportError:  # extension built by plain CMake, found via PYTHONPATH
    from _pcnet import (
        build_scheme,
        catalog,
        compare,
        generate,
        ndt,
        ndt_baseline,
        simulate,
        sweep,
        verify,
    )

__all__ = [
    "build_scheme",
    "catalog",
    "compare",
    "generate",
    "ndt",
    "ndt_baseline",
    "simulate",
    "sweep",
    "verify",
]
