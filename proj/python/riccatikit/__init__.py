"""Riccati equations under the SL(2,R) gauge action.

Thin package wrapper over the compiled _core module: symbolic expressions,
gauge transforms of coefficient triples, integrability criteria, reductions
from known particular solutions, quadrature solvers, an RK4 oracle and the
nonlinear superposition rule.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
