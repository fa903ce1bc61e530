"""Exception hierarchy. Every error carries a distinct CLI exit code."""


class HeckeAdeError(Exception):
    exit_code = 1


class InvalidVertex(HeckeAdeError):
    """Marked vertex is not a vertex of the chosen Dynkin diagram."""
    exit_code = 3


class OrbitTooLarge(HeckeAdeError):
    """Truncated-orbit closure exceeded the requested size bound."""
    exit_code = 4


class NotATableau(HeckeAdeError):
    """A seed sequence does not reconstruct to a standard tableau triplet."""
    exit_code = 5


class NotAdmissible(HeckeAdeError):
    """An orbit member fails tableau reconstruction, so no representation exists."""
    exit_code = 6


class PlaceCollisionAtLimit(HeckeAdeError):
    """Two places collide when q is evaluated at +/-1; the classical limit
    does not exist in this basis."""
    exit_code = 7


class SingularEvaluation(HeckeAdeError):
    """A denominator vanishes when evaluating at q = +/-1."""
    exit_code = 8


class SeedFormatError(HeckeAdeError):
    """Seed JSON could not be parsed."""
    exit_code = 9


class DegenerateSeparation(HeckeAdeError):
    """Two basis members share every content; indicates corrupted orbit data."""
    exit_code = 10


class IndexOutOfRange(HeckeAdeError):
    exit_code = 11
