from math import gcd

from hypothesis import strategies as st


@st.composite
def coprime_pairs(draw, p_max=400):
    p = draw(st.integers(2, p_max))
    k = draw(st.integers(1, p - 1).filter(lambda k: gcd(k, p) == 1))
    return p, k
