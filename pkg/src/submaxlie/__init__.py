"""Desk-scale verification of commuting root sets and elementary subalgebras
of the type-A nilradical over prime fields.

Core layers:

* roots / ordering / commuting: type-A root combinatorics and the total
  orders driving the leading-term map;
* nilradical / subspaces / actions: exact F_p linear algebra in u, echelon
  subspaces, centralizers, automorphisms;
* solver / replay: exhaustive LT-fiber search with unit propagation and the
  scripted elimination replay;
* checks: the acceptance suite;
* service / cli: FastAPI front end and the thin-client command line.
"""

from .errors import BudgetExceeded, UsageError

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "UsageError", "__version__"]
