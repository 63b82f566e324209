"""Level obstructions for pre-quantizing moduli spaces of flat bundles.

Submodules: ``algebra`` (graded algebras mod p), ``hopf`` (coproduct,
antipode, commutator pullback), ``torsion`` (Bocksteins, Tor of cyclic
groups), ``catalog`` (groups and l0), ``alcove`` (SU(n) alcove and marked
points) and ``cli``.
"""
from .catalog import GroupId, check_level, l0, parse_group_spec, table

__version__ = "0.1.0"
__all__ = ["GroupId", "check_level", "l0", "parse_group_spec", "table"]
