from hypothesis import given
from hypothesis import strategies as st

from quasimap.rational import R0, R1, Rat, parse_rat, rat_binomial, rat_str


def test_basic_arithmetic():
    assert Rat(1, 2) + Rat(1, 3) == Rat(5, 6)
    assert Rat(2, 4) == Rat(1, 2)
    assert R0 == Rat(0) and R1 == Rat(1)


def test_rat_str_canonical():
    assert rat_str(Rat(3)) == "3"
    assert rat_str(Rat(-9, 4)) == "-9/4"
    assert rat_str(Rat(6, -4)) == "-3/2"


@given(st.integers(-10**12, 10**12), st.integers(1, 10**9))
def test_serialization_round_trip(p, q):
    r = Rat(p, q)
    assert parse_rat(rat_str(r)) == r


def test_generalized_binomial():
    assert rat_binomial(5, 2) == 10
    assert rat_binomial(-1, 3) == -1
    assert rat_binomial(Rat(-2), 2) == 3
    assert rat_binomial(7, 0) == 1
