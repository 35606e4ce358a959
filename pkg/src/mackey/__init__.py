"""Exact Lie algebra tools for the symplectic Mackey obstruction of primary spaces.

Layers: :mod:`linalg` (exact rational elimination), :mod:`lie` (algebras,
subspaces, stabilizers), :mod:`groups` (catalog matrix groups and their
coadjoint actions), :mod:`cohomology` (Chevalley-Eilenberg complex),
:mod:`obstruction` (theta, the infinitesimal class, the extension),
:mod:`splitting` (verdicts from flags), :mod:`verify` and :mod:`catalog`
(finite-difference checks on the example spaces), :mod:`formats` and
:mod:`cli` (files, reports, command line).
"""

from .errors import ConsistencyError, DomainError, InconsistentFlags, MackeyError, ParseError

__all__ = ["ConsistencyError", "DomainError", "InconsistentFlags", "MackeyError", "ParseError"]
__version__ = "0.1.0"
