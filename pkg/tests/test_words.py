import pytest
from hypothesis import given, settings, strategies as st

from involgen import rep
from involgen.rep import compose, equal, identity, rotation, twist
from involgen.surface import SurfaceParams, build_registry, lantern_config
from involgen.words import (
    GENERATOR_ORDER, Letter, UnboundLetter, Word, bfs_search, conj, coverage_words,
    evaluate, flavor_generators, lantern_word, verify_coverage,
)

P = SurfaceParams(4, 2)
GENS = flavor_generators(P, "six-inv")


def test_letter_parse_and_inverse():
    assert Letter.parse("R^-1") == Letter("R", -1)
    assert Letter("R").inverse() == Letter("R", -1)
    assert Letter("rho1", -1).inverse() == Letter("rho1", -1)
    assert str(Letter("R", -1)) == "R^-1"


def test_json_round_trip():
    w = Word.of("rho1", "R^-1", "I12")
    assert Word.from_json(w.to_json()) == w


def test_evaluate_examples():
    assert equal(evaluate(Word.of("rho1", "rho1"), GENS), identity(P))
    assert equal(evaluate(Word.of("rho2", "rho1"), GENS), rotation(P))
    assert equal(evaluate(Word.of("R"), GENS), rotation(P))
    assert equal(evaluate(Word.of("R^-1"), GENS), rotation(P).inverse())


def test_unbound_letter():
    with pytest.raises(UnboundLetter):
        evaluate(Word.of("J"), GENS)


def test_reduce():
    assert Word.of("rho1", "rho1").reduce() == Word()
    assert Word.of("R", "R^-1").reduce() == Word()
    assert Word.of("rho3", "R", "rho1", "I").reduce() == Word.of("rho3", "rho2", "I")


def test_census_expands_R():
    assert Word.of("R", "I13").census() == ["I13", "rho1", "rho2"]


letters = st.sampled_from(["rho1", "rho2", "rho3", "I12", "I13", "I", "R", "R^-1"])
words = st.lists(letters, max_size=14).map(lambda xs: Word.of(*xs))


@settings(max_examples=60, deadline=None)
@given(words)
def test_reduce_preserves_evaluation(w):
    assert equal(evaluate(w.reduce(), GENS), evaluate(w, GENS))


@settings(max_examples=60, deadline=None)
@given(words, words)
def test_evaluate_is_a_homomorphism(u, v):
    assert equal(evaluate(u + v, GENS), compose(evaluate(u, GENS), evaluate(v, GENS)))


@settings(max_examples=30, deadline=None)
@given(words)
def test_inverse_word(w):
    assert equal(evaluate(w + w.inverse(), GENS), identity(P))


@pytest.mark.parametrize("g, b, flavor", [(6, 0, "five-inv"), (8, 0, "four-inv"),
                                          (3, 2, "six-inv"), (7, 4, "four-inv")])
def test_lantern_word_is_twist_along_a4(g, b, flavor):
    p = SurfaceParams(g, b)
    gens = flavor_generators(p, flavor)
    w = lantern_word(p, flavor, gens)
    cfg = lantern_config(p)
    assert equal(evaluate(w, gens), twist(p, cfg.boundary[3]))
    reg = build_registry(p)
    assert cfg.boundary[3] == reg[f"gamma{cfg.m}"]


def test_lantern_word_shape_five_six():
    p = SurfaceParams(4, 0)
    w = lantern_word(p, "six-inv")
    f1 = w.letters[:2]
    assert w == Word(f1) + conj(Word.of("I12"), Word(f1)) + conj(Word.of("I13"), Word(f1))


def test_unknown_flavor():
    with pytest.raises(ValueError):
        lantern_word(SurfaceParams(4, 0), "seven-inv")


@pytest.mark.parametrize("g, b, flavor", [(8, 3, "four-inv"), (5, 2, "five-inv"),
                                          (4, 1, "six-inv"), (10, 0, "four-inv")])
def test_coverage(g, b, flavor):
    p = SurfaceParams(g, b)
    gens = flavor_generators(p, flavor)
    ws = coverage_words(p, flavor, gens)
    assert len(ws) == 3 * g - 1
    assert all(verify_coverage(p, ws, gens).values())
    used = set().union(*(w.census() for w in ws.values()))
    assert used <= set(gens)


def test_gamma_words_follow_rotation():
    p = SurfaceParams(6, 0)
    ws = coverage_words(p, "five-inv")
    m = lantern_config(p).m
    lw = lantern_word(p, "five-inv")
    assert ws[f"gamma{m}"] == lw.reduce()


def test_bfs_examples():
    p = SurfaceParams(4, 0)
    r1, r2 = rep.rho1(p).named("rho1"), rep.rho2(p).named("rho2")
    res = bfs_search([r1], [r1, r2], depth=1)
    assert res.words == [Word.of("rho1")]
    q = SurfaceParams(5, 0)
    s1, s2 = rep.rho1(q).named("rho1"), rep.rho2(q).named("rho2")
    res = bfs_search([rep.rotation_power(q, 2)], [s1, s2], depth=4)
    assert res.words == [Word.of("rho2", "rho1", "rho2", "rho1")]


def test_bfs_lexicographic_tie_break():
    # for g = 4 the rotation has order 4, so R^2 = R^-2 has two shortest words
    p = SurfaceParams(4, 0)
    r1, r2 = rep.rho1(p).named("rho1"), rep.rho2(p).named("rho2")
    res = bfs_search([rep.rotation_power(p, 2)], [r1, r2], depth=4)
    assert res.words == [Word.of("rho1", "rho2", "rho1", "rho2")]


def test_bfs_not_found_is_a_value():
    p = SurfaceParams(4, 0)
    r1, r2 = rep.rho1(p).named("rho1"), rep.rho2(p).named("rho2")
    T = twist(p, p.lattice.a(1))
    res = bfs_search([T], [r1, r2], depth=6)
    assert res.words == [None]
    assert not res.truncated


def test_bfs_tie_break_and_budget():
    p = SurfaceParams(4, 0)
    gens = [flavor_generators(p, "six-inv")[n] for n in GENERATOR_ORDER[:6]]
    target = compose(gens[0], gens[1])
    assert bfs_search([target], gens, depth=3).words == [Word.of("rho1", "rho2")]
    res = bfs_search([twist(p, p.lattice.b(1))], gens, depth=20, max_states=200)
    assert res.truncated and res.explored <= 200


def test_bfs_rejects_bad_arguments():
    with pytest.raises(ValueError):
        bfs_search([], list(GENS.values()), depth=0)
    with pytest.raises(ValueError):
        bfs_search([], [], depth=3)
