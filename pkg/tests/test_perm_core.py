import pytest
from hypothesis import given, strategies as st

from ribbonhopf.perm_core import Permutation, compose, cycles, inverse, restrict_cycles


@st.composite
def perms(draw, max_size=9):
    n = draw(st.integers(1, max_size))
    img = draw(st.permutations(range(1, n + 1)))
    return Permutation(dict(zip(range(1, n + 1), img)))


def test_parse_and_canonical_text():
    p = Permutation.parse("(4 3 2 1)(8 7 6 5)")
    assert str(p) == "(1 4 3 2)(5 8 7 6)"
    assert p(1) == 4 and p(4) == 3


def test_parse_fills_domain_with_fixed_points():
    p = Permutation.parse("(3 5)", domain=range(1, 6))
    assert p.fixed_points() == [1, 2, 4]
    assert p.is_involution()


@pytest.mark.parametrize("text", ["(1 2", "1 2)", "(a b)", "()", "(1 2)(2 3)"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ValueError):
        Permutation.parse(text)


def test_not_a_bijection():
    with pytest.raises(ValueError):
        Permutation({1: 2, 2: 2})


def test_compose_order():
    # compose(p, q)(x) = p(q(x))
    p = Permutation.parse("(1 2 3)")
    q = Permutation.parse("(1 2)", domain=[1, 2, 3])
    assert compose(p, q)(1) == p(q(1)) == 3


def test_compose_needs_same_domain():
    with pytest.raises(ValueError):
        compose(Permutation.parse("(1 2)"), Permutation.parse("(1 2 3)"))


def test_restrict_cycles_drops_labels():
    p = Permutation.parse("(1 2 3 4 5)")
    assert str(restrict_cycles(p, [1, 3, 5])) == "(1 3 5)"
    with pytest.raises(ValueError):
        restrict_cycles(p, [9])


@given(perms())
def test_inverse_roundtrip(p):
    e = Permutation.identity(p.domain)
    assert compose(p, inverse(p)) == e
    assert compose(inverse(p), p) == e


@given(perms())
def test_text_roundtrip(p):
    assert Permutation.parse(str(p), domain=p.domain) == p


@given(perms())
def test_cycles_partition_domain(p):
    labels = [x for c in cycles(p) for x in c]
    assert sorted(labels) == list(p.domain)
    assert all(c[0] == min(c) for c in cycles(p))


@given(perms(), perms())
def test_composition_is_associative(p, q):
    n = min(len(p), len(q))
    p = restrict_cycles(p, range(1, n + 1))
    q = restrict_cycles(q, range(1, n + 1))
    assert compose(compose(p, q), p) == compose(p, compose(q, p))
