"""Stationary states and energy minimizers of the aggregation equation with
degenerate diffusion, rho_t = div(rho grad(eps rho^{m-1} - G*rho))."""

try:
    from ._aggstat import *  # noqa: F401,F403  (installed package layout)
    from ._aggstat import __version__  # noqa: F401
except ImportError:
    from _aggstat import *  # noqa: F401,F403  (in-tree build on PYTHONPATH)
    from _aggstat import __version__  # noqa: F401
