"""Exact computations around Arf invariants, Arf closures and Herbrand functions.

Submodules:

* :mod:`arfkit.series` -- truncated power series over Q or GF(p)
* :mod:`arfkit.quadratic` -- quadratic forms over GF(2), Arf invariant
* :mod:`arfkit.semigroup` -- numerical semigroups, Arf closure, characters
* :mod:`arfkit.branch` -- curve branches, blow-ups, Arf ring closure
* :mod:`arfkit.ramification` -- Herbrand function, upper numbering, Hasse-Arf check
"""

from .errors import (
    ArfkitError,
    InconsistencyError,
    InputError,
    PrecisionError,
    ResolutionError,
)
from .series import BeyondPrecision, TruncatedSeries, parse_series
from .quadratic import QuadraticFormF2, arf_democratic, arf_symplectic
from .semigroup import NumericalSemigroup, arf_closure, from_generators
from .branch import BranchParam, branch_report
from .ramification import Filtration, herbrand_phi, herbrand_psi

__version__ = "0.1.0"
