import pytest
from hypothesis import given, settings, strategies as st

from hilbcoeff.algebra import DEGREVLEX, LEX, FieldScalar, MonomialOrder, Polynomial, is_prime
from hilbcoeff.errors import InputError, ParseError, RingMismatchError
from hilbcoeff.groebner import Ring
from hilbcoeff.parser import format_ring, parse_poly, parse_ring

P = 32003
scalars = st.integers(min_value=0, max_value=P - 1)


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    A, B, C = (FieldScalar(v, P) for v in (a, b, c))
    assert (A + B) + C == A + (B + C)
    assert A * (B + C) == A * B + A * C
    assert A + (-A) == FieldScalar(0, P)
    if a:
        assert A * A.inverse() == FieldScalar(1, P)


def test_inverse_of_zero_fails():
    with pytest.raises(ZeroDivisionError):
        FieldScalar(0, 7).inverse()


def test_mixed_moduli_rejected():
    with pytest.raises(RingMismatchError):
        FieldScalar(1, 5) + FieldScalar(1, 7)


@pytest.mark.parametrize("n,expected", [(2, True), (3, True), (4, False), (32003, True), (1, False), (91, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


# -- monomial orders -------------------------------------------------------------

def test_degrevlex_breaks_ties_on_last_variable():
    assert DEGREVLEX.compare((0, 2, 0), (1, 0, 1)) == 1


def test_lex_prefers_first_variable():
    assert LEX.compare((1, 0), (0, 5)) == 1


@pytest.mark.parametrize("order", [DEGREVLEX, LEX, MonomialOrder("elim", 1)])
def test_reflexive(order):
    assert order.compare((1, 2, 3), (1, 2, 3)) == 0


def test_length_mismatch():
    with pytest.raises(InputError):
        DEGREVLEX.compare((1, 2), (1, 2, 3))


monos = st.tuples(*[st.integers(0, 5)] * 3)
orders = st.sampled_from([DEGREVLEX, LEX, MonomialOrder("elim", 1), MonomialOrder("elim", 2)])


@given(orders, monos, monos, monos)
def test_order_laws(order, a, b, c):
    ab, ba = order.compare(a, b), order.compare(b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert order.compare(ac, bc) == ab
    assert order.compare((0, 0, 0), a) <= 0


@given(orders, monos, monos, monos)
def test_order_transitive(order, a, b, c):
    if order.compare(a, b) <= 0 and order.compare(b, c) <= 0:
        assert order.compare(a, c) <= 0


# -- polynomials -----------------------------------------------------------------

@pytest.fixture
def kxy():
    return Ring(["x", "y"])


def test_difference_of_squares(kxy):
    x, y = kxy.gens()
    assert (x + y) * (x - y) == x ** 2 - y ** 2


def test_square(kxy):
    x, y = kxy.gens()
    assert (x + y) ** 2 == x ** 2 + 2 * x * y + y ** 2


def test_annihilation(kxy):
    x, y = kxy.gens()
    assert ((x + y) * 0).is_zero()


def test_ring_mismatch():
    a, b = Ring(["x"]), Ring(["x"])
    with pytest.raises(RingMismatchError):
        a.var("x") + b.var("x")


# -- parser ----------------------------------------------------------------------

def test_parse_three_terms(kxy):
    f = parse_poly("x^2 - 3*x*y + y", kxy)
    assert len(f.terms) == 3
    assert str(f) == "x^2 - 3*x*y + y"


@pytest.mark.parametrize("text", ["x - x", f"2*x + {P - 2}*x"])
def test_cancellation(kxy, text):
    assert parse_poly(text, kxy).is_zero()


def test_parenthesised_power(kxy):
    assert parse_poly("-(x - y)^2 + 2*x*y", kxy) == parse_poly("-x^2 - y^2 + 4*x*y", kxy)


@pytest.mark.parametrize("text,fragment", [
    ("x + q", "unknown variable"),
    ("x^-2", "negative exponent"),
    ("x + $", "unexpected character"),
    ("x * ", "malformed token"),
])
def test_parse_errors(kxy, text, fragment):
    with pytest.raises(ParseError) as info:
        parse_poly(text, kxy)
    assert fragment in str(info.value)


def test_trivial_ring_document():
    doc = parse_ring("char 32003; vars x,y; rel;")
    assert list(doc.ring.variables) == ["x", "y"]
    assert doc.ring.relations == ()
    assert doc.ring.dim == 2


def test_quadric_document_round_trip():
    text = "char 32003; vars x,y,z,w; rel x*z, x*w, y*z, y*w;"
    doc = parse_ring(text)
    again = parse_ring(format_ring(doc))
    assert list(again.ring.variables) == list(doc.ring.variables)
    assert [str(r) for r in again.ring.relations] == [str(r) for r in doc.ring.relations] == \
        ["x*z", "x*w", "y*z", "y*w"]


def test_non_prime_characteristic():
    with pytest.raises(ParseError, match="not prime"):
        parse_ring("char 4; vars x;")


def test_duplicate_variable():
    with pytest.raises(ParseError, match="duplicate"):
        parse_ring("vars x, y, x;")


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_ring("vars x, y;\nrel x*z;")
    assert (info.value.line, info.value.column) == (2, 7)


def test_characteristic_override_and_default():
    assert parse_ring("char 7; vars x;").ring.characteristic == 7
    assert parse_ring("char 7; vars x;", characteristic=5).ring.characteristic == 5
    assert parse_ring("vars x;", default=11).ring.characteristic == 11
    assert parse_ring("char 7; vars x;", default=11).ring.characteristic == 7
    assert parse_ring("vars x;").ring.characteristic == 32003


_ROUND_TRIP_RING = Ring(["x", "y", "z"], 101)
terms = st.dictionaries(st.tuples(*[st.integers(0, 4)] * 3), st.integers(-200, 200), max_size=6)


@settings(max_examples=500)
@given(terms)
def test_print_parse_round_trip(t):
    f = Polynomial(_ROUND_TRIP_RING, t)
    g = parse_poly(str(f), _ROUND_TRIP_RING)
    assert g.terms == f.terms
