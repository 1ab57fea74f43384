import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from lorsol.exactfield import QuadScalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-6, max_value=6, max_denominator=6)
quads = st.builds(QuadScalar, small_fractions, small_fractions)
nonzero_quads = quads.filter(bool)


def random_quad(rng: random.Random, den: int = 4, span: int = 5) -> QuadScalar:
    a = Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))
    b = Fraction(rng.randint(-span * den, span * den), rng.randint(1, den)) if rng.random() < 0.5 else 0
    return QuadScalar(a, b)


@pytest.fixture
def rng():
    return random.Random(20240611)
