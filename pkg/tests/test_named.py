import pytest

from ribbonhopf import named
from ribbonhopf.enumeration import Filter, enumerate_graphs
from ribbonhopf.hopf import is_generator
from ribbonhopf.ribbon import is_isomorphic, serialize, topology


def test_rotation_system_rejects_triple_use():
    with pytest.raises(ValueError):
        named.rotation_system([["a", "a", "a", "x"]])


def test_tadpoles_are_the_one_loop_graphs():
    got = {serialize(named.tadpole_up()), serialize(named.tadpole_down())}
    assert got == {serialize(G) for G in enumerate_graphs(2, 1, Filter.ONE_PI)}


def test_fishes_are_the_one_loop_four_point_graphs():
    got = {serialize(named.fish_horizontal()), serialize(named.fish_vertical())}
    assert got == {serialize(G) for G in enumerate_graphs(4, 1, Filter.ONE_PI)}


@pytest.mark.parametrize("make,loops,legs", [
    (named.sunrise, 2, 2),
    (named.tadpole_uu, 2, 2),
    (named.tadpole_ud, 2, 2),
    (named.rainbow, 2, 2),
    (named.fish_chain_straight, 2, 4),
    (named.fish_chain_bent_left, 2, 4),
    (named.fish_chain_bent_right, 2, 4),
])
def test_two_loop_graphs(make, loops, legs):
    G = make()
    assert G.loops == loops and len(G.external) == legs
    assert topology(G).genus == 0


def test_generators():
    for make in (named.sunrise, named.tadpole_ud, named.fish_chain_straight):
        assert is_generator(make())
    assert not is_generator(named.two_two_fish())
    assert not is_generator(named.rainbow())  # has a bridge


def test_chains_are_distinct():
    chains = [named.fish_chain_straight(), named.fish_chain_bent_left(), named.fish_chain_bent_right()]
    assert len({serialize(G) for G in chains}) == 3
    for i in range(3):
        for j in range(i + 1, 3):
            assert not is_isomorphic(chains[i], chains[j], rooted=True)


def test_box_chain_sizes():
    G = named.box_chain(1)
    assert len(G.vertices) == 5 and len(G.internal_pairs) == 8
    assert G.loops == 4
    assert named.box_chain(2).loops == 7
    with pytest.raises(ValueError):
        named.box_chain(0)


def test_stacked_double_tadpole_alias():
    assert named.double_tadpole_stacked() == named.tadpole_ud()
