"""Zero-sum group-magic labelings of loopless multigraphs."""

from .groups import GroupSpec
from .multigraph import Multigraph

__version__ = "0.1.0"

__all__ = ["GroupSpec", "Multigraph", "__version__"]
