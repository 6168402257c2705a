import itertools
import random

import pytest

import oracles
from eden.automaton import (
    BlockCode, apply, apply_pattern, balance_oracle, bounded_erasable_search, bounded_goe_search, classify, eca,
    enumerate_endomorphisms, erasable_contexts, identity_code, is_injective, is_pre_injective, is_surjective,
    linear_code, load_rule, parse_rule, replay_erasable, verify_goe,
)
from eden.errors import InvalidInput
from eden.laurent import LaurentPoly
from eden.lattice import Configuration, Pattern, Window
from eden.subshift import Subshift, load_shift

ECA_REPORTS = {n: classify(eca(n), parallel=False) for n in range(256)}


def test_eca_surjectivity_matches_image_coverage():
    """A non-surjective ECA misses some word of length <= 10 in the image of (n+2)-words."""
    for n, report in ECA_REPORTS.items():
        covered = all(len(oracles.eca_image_words(n, m)) == 2 ** m for m in range(1, 11))
        assert report.surjective == covered, n


def test_eca_surjective_count_matches_balance_oracle():
    balanced = [n for n in range(256) if balance_oracle(eca(n))]
    surjective = [n for n, r in ECA_REPORTS.items() if r.surjective]
    assert balanced == surjective
    assert len(surjective) == 30


def test_injective_ecas_are_the_six_trivial_ones():
    assert [n for n, r in ECA_REPORTS.items() if r.injective] == [15, 51, 85, 170, 204, 240]


def test_goe_witnesses_have_no_preimage():
    for n, r in ECA_REPORTS.items():
        if r.goe is None:
            continue
        w = tuple(r.goe.pattern.symbols)
        assert w not in oracles.eca_image_words(n, len(w)), n
        assert verify_goe(eca(n), r.goe.pattern)


def test_rule_110_minimal_goe():
    assert ECA_REPORTS[110].goe.pattern.text == "01010"


def _exhaustive_erasable(rule, w1, w2, span=1):
    """Every context of width 2*span on both sides gives equal images."""
    T = eca(rule)
    for left in itertools.product((0, 1), repeat=2 * span):
        for right in itertools.product((0, 1), repeat=2 * span):
            a = apply_pattern(T, Pattern.word(left + w1 + right))
            b = apply_pattern(T, Pattern.word(left + w2 + right))
            if a != b:
                return False
    return True


def test_erasable_pairs_replay_exhaustively():
    for n, r in ECA_REPORTS.items():
        if r.erasable is None:
            assert r.pre_injective
            continue
        pair = r.erasable
        assert pair.w1 != pair.w2
        assert _exhaustive_erasable(n, pair.w1.symbols, pair.w2.symbols), n
        assert replay_erasable(eca(n), pair, trials=3, seed=n) == 3


def test_collision_witness_gives_two_points_with_equal_image():
    r = ECA_REPORTS[0]
    x, y = r.collision.periodic_points()
    assert x != y
    T = eca(0)
    assert apply(T, x) == apply(T, y)


def test_apply_periodic_and_finite_support():
    T = eca(110)
    x = Configuration.periodic((4,), "0110")
    y = apply(T, x)
    expected = [(110 >> (4 * x.at((i - 1,)) + 2 * x.at((i,)) + x.at((i + 1,)))) & 1 for i in range(4)]
    assert [y.at((i,)) for i in range(4)] == expected
    z = apply(eca(90), Configuration.finite_support(0, Pattern.word("1")))
    assert [z.at((i,)) for i in range(-2, 3)] == [0, 1, 0, 1, 0]
    assert z.background == 0


def test_apply_rejects_points_outside_the_domain():
    gm = load_shift("golden-mean")
    T = BlockCode(gm, [0], {(0,): 0, (1,): 0}, rule_id="zero")
    assert apply(T, Configuration.finite_support(0, Pattern.word("1"))).background == 0
    with pytest.raises(InvalidInput):
        apply(T, Configuration.finite_support(0, Pattern.word("11")))
    with pytest.raises(InvalidInput):
        apply_pattern(T, Pattern.word("11"))


def test_identity_and_linear_codes():
    for name in ("full-2", "golden-mean", "even"):
        r = classify(identity_code(load_shift(name)), parallel=False)
        assert (r.surjective, r.pre_injective, r.injective) == (True, True, True)
    r = classify(linear_code(2, 4), parallel=False)
    assert (r.surjective, r.pre_injective) == (False, False)
    assert r.goe is not None and r.erasable is not None
    r = classify(linear_code(LaurentPoly((1, 1)), 2), parallel=False)
    assert (r.surjective, r.pre_injective, r.injective) == (True, True, False)


def test_enumeration_order_and_count():
    codes = list(enumerate_endomorphisms(Subshift.full(2), Window.interval(-1, 1)))
    assert len(codes) == 256
    assert [c.rule_id for c in codes[:3]] == ["eca:0", "eca:1", "eca:2"]
    assert all(c.table == eca(n).table for n, c in enumerate(codes))
    radius0 = list(enumerate_endomorphisms(Subshift.full(2), Window.interval(0, 0)))
    assert len(radius0) == 4


def test_endomorphisms_map_into_the_shift():
    gm = load_shift("golden-mean")
    rng = random.Random(3)
    for T in enumerate_endomorphisms(gm, Window.interval(-1, 1)):
        for _ in range(10):
            word = rng.choice(gm.allowed_words(12))
            assert gm.is_allowed(apply_pattern(T, Pattern.word(word)))


def test_rule_file_round_trip(tmp_path):
    text = "N=-1,0,1\n" + "".join(f"{a}{b}{c}->{(30 >> (4 * a + 2 * b + c)) & 1}\n"
                                   for a, b, c in itertools.product((0, 1), repeat=3))
    path = tmp_path / "rule30.rule"
    path.write_text(text)
    assert load_rule(str(path)).table == eca(30).table
    with pytest.raises(InvalidInput):
        parse_rule("N=0,1\n0->1\n")
    with pytest.raises(InvalidInput):
        load_rule("eca:x")


def test_missing_table_entries_rejected():
    with pytest.raises(InvalidInput):
        BlockCode(Subshift.full(2), [0, 1], {(0, 0): 0})


def test_pre_injectivity_matches_erasable_contexts():
    T = eca(0)
    ok, pair = is_pre_injective(T)
    assert not ok
    assert erasable_contexts(T, pair.w1.symbols, pair.w2.symbols)


def test_surjective_non_injective_example():
    ok, _ = is_surjective(eca(90))
    inj, coll = is_injective(eca(90))
    assert ok and not inj and coll is not None


def test_two_dimensional_bounded_searches():
    full = Subshift.full(2, 2)
    N = Window(2, [(0, 0), (1, 0), (0, 1)])
    xor = BlockCode(full, N, {b: sum(b) % 2 for b in itertools.product((0, 1), repeat=3)}, rule_id="xor")
    assert bounded_goe_search(xor, 2) is None
    const = BlockCode(full, N, {b: 0 for b in itertools.product((0, 1), repeat=3)}, rule_id="zero")
    assert bounded_goe_search(const, 1).symbols == (1,)
    assert bounded_erasable_search(const, 1) is not None
    with pytest.raises(InvalidInput):
        classify(xor)
    x = Configuration.periodic((2, 2), {(0, 0): 1, (1, 0): 0, (0, 1): 0, (1, 1): 0})
    y = apply(xor, x)
    assert y.at((0, 0)) == 1 and y.at((1, 1)) == 0
