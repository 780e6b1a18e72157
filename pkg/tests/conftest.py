import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import ORDER8  # noqa: E402

from subsq.core import LatinSquare  # noqa: E402


def random_square(n: int, rng: random.Random) -> LatinSquare:
    """Cyclic square under random row, column and symbol permutations."""
    rows, cols, syms = list(range(n)), list(range(n)), list(range(1, n + 1))
    rng.shuffle(rows)
    rng.shuffle(cols)
    rng.shuffle(syms)
    return LatinSquare(tuple(tuple(syms[(rows[r] + cols[c]) % n] for c in range(n)) for r in range(n)))


def random_composition(n: int, rng: random.Random) -> tuple[int, ...]:
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, min(n - 1, 5)))) if n > 1 else []
    bounds = [0, *cuts, n]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


@pytest.fixture
def order8():
    return LatinSquare(ORDER8)
