"""Two-component link diagrams from their non-self over/under words."""

from .diagram import PlanarDiagram, extract_nonself_ou, linking_number
from .words import CyclicWord, WordPair, phi_cyclic

__all__ = ["CyclicWord", "PlanarDiagram", "WordPair", "extract_nonself_ou", "linking_number", "phi_cyclic"]
