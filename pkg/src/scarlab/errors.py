"""Exception hierarchy shared by all scarlab modules."""


class ScarlabError(Exception):
    """Base class for all scarlab errors."""


class ModulusOutOfRange(ScarlabError):
    """Elliptic modulus kappa outside [0, 1)."""


class PoleAtQuarterPeriod(ScarlabError):
    """sc(u, kappa) evaluated too close to an odd multiple of K."""


class OrderingViolated(ScarlabError):
    """XYZ couplings do not satisfy Jy >= Jx > Jz."""


class InvalidSpin(ScarlabError):
    """2S is not a non-negative integer."""


class SiteOutOfRange(ScarlabError):
    """Site index outside [0, N)."""


class DimensionMismatch(ScarlabError):
    """Operator/state built on different spin systems."""


class DimensionCap(ScarlabError):
    """Requested Hilbert-space dimension exceeds the configured cap."""


class NoRootFound(ScarlabError):
    """Frame-angle root search failed from every start point."""


class DisconnectedGraph(ScarlabError):
    """Circuit analysis requires a connected graph."""


class InconsistentPhases(ScarlabError):
    """Site-phase propagation met a contradiction (circuit rule violated)."""


class UnsupportedDims(ScarlabError):
    """Lattice generator cannot realize the requested dimensions."""


class IncommensurateQ(ScarlabError):
    """q is not commensurate with the chain/graph wrap."""


class SameSite(ScarlabError):
    """Two-site bosonic bilinear requested with m == n."""


class NotTranslationInvariant(ScarlabError):
    """Momentum-sector reduction requires [H, T] = 0."""
