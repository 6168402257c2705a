import pytest
from hypothesis import given, strategies as st

from eden.errors import InvalidInput
from eden.lattice import (
    Configuration, Pattern, Window, distance, folner_box, format_configuration, format_pattern, metric_radius,
    parse_configuration, parse_pattern, separation_radius,
)


def test_window_basics():
    w = Window.interval(-2, 2)
    assert len(w) == 5 and w.is_box
    assert w.bounds() == ((-2,), (2,))
    assert w.translate((3,)) == Window.interval(1, 5)
    assert Window.interval(0, 1).minkowski(Window.interval(-1, 1)) == Window.interval(-1, 2)
    assert Window.interval(-3, 3).erode(Window.interval(-1, 1)) == Window.interval(-2, 2)
    assert len(folner_box(2, 2)) == 25


def test_metric_radii():
    assert metric_radius(1.0) == 0 and separation_radius(1.0) == 0
    assert metric_radius(2 ** -6) == 6 and separation_radius(2 ** -6) == 6
    assert metric_radius(0.1) == 4 and separation_radius(0.1) == 3
    with pytest.raises(InvalidInput):
        metric_radius(0)


def test_distance_is_first_differing_radius():
    x = Configuration.constant(0)
    y = Configuration.finite_support(0, Pattern.word("1", start=3))
    assert distance(x, y) == 2 ** -3
    assert distance(x, x) == 0.0
    z = Configuration.finite_support(0, Pattern.word("1", start=-1))
    assert distance(x, z) == 0.5


def test_pattern_merge_and_restrict():
    p = Pattern.word("0110")
    q = Pattern.word("10", start=2)
    assert p.merge(q) == p
    assert p.merge(Pattern.word("0", start=2)) is None
    assert p.restrict(Window.interval(1, 2)).text == "11"
    assert p.translate((5,)).window == Window.interval(5, 8)


def test_configurations():
    x = Configuration.periodic((3,), "011")
    assert [x.at((i,)) for i in range(-3, 3)] == [0, 1, 1, 0, 1, 1]
    y = Configuration.finite_support(1, Pattern.word("0", start=2))
    assert y.at((2,)) == 0 and y.at((100,)) == 1
    assert x.translate((1,)).at((0,)) == 1


@given(st.lists(st.integers(0, 3), min_size=1, max_size=8), st.integers(-5, 5))
def test_pattern_text_round_trip(symbols, start):
    p = Pattern.word(symbols, start=start)
    assert parse_pattern(format_pattern(p)) == p


@given(st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_configuration_text_round_trip(symbols):
    x = Configuration.periodic((len(symbols),), symbols)
    assert parse_configuration(format_configuration(x)) == x
    y = Configuration.finite_support(0, Pattern.word(symbols, start=-2))
    assert parse_configuration(format_configuration(y)) == y


def test_bad_text_rejected():
    with pytest.raises(InvalidInput):
        parse_pattern("cells=(0):1")
    with pytest.raises(InvalidInput):
        parse_configuration("dim=1; period=(2,); cells=(0):1")
