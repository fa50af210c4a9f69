import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import json

from hypothesis import strategies as st

from linkweave.diagram import PlanarDiagram
from linkweave.words import WordPair

FIXTURES = Path(__file__).parent / "fixtures"


def load(name: str) -> PlanarDiagram:
    return PlanarDiagram.from_json(json.loads((FIXTURES / f"{name}.json").read_text()))


@st.composite
def balanced_pairs(draw, max_half=4, min_half=0):
    """Random well-balanced pairs with |w1| = |w2| = 2 * half."""
    half = draw(st.integers(min_half, max_half))
    w1 = draw(st.text("OU", min_size=2 * half, max_size=2 * half))
    letters = "O" * w1.count("U") + "U" * w1.count("O")
    w2 = "".join(draw(st.permutations(letters)))
    return WordPair.of(w1, w2)
