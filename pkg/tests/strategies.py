import hypothesis.strategies as st

from gk.blades import Multivector
from gk.clifford import CliffordElement, Signature


def coefficients(integer=False):
    if integer:
        return st.builds(complex, st.integers(-5, 5), st.integers(-5, 5))
    real = st.floats(-4, 4, allow_nan=False, allow_infinity=False)
    return st.builds(complex, real, real)


@st.composite
def multivectors(draw, n, max_terms=6, integer=False, grade=None):
    if grade is None:
        masks = st.integers(0, (1 << n) - 1)
    else:
        choices = [m for m in range(1 << n) if bin(m).count("1") == grade]
        masks = st.sampled_from(choices)
    terms = draw(st.dictionaries(masks, coefficients(integer), max_size=max_terms))
    return Multivector(n, terms)


@st.composite
def elements(draw, sig, max_terms=6, integer=False, grade=None):
    return CliffordElement(sig, draw(multivectors(sig.n, max_terms, integer, grade)))


@st.composite
def signatures(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    p = draw(st.integers(0, n))
    return Signature(p, n - p)
