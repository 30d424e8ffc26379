import warnings

import pytest
from hypothesis import given, settings, strategies as st

from hiccup import (
    AlphabetError,
    Coding,
    ConjugationError,
    DegeneracyError,
    FixedPointError,
    HiccupParams,
    Morphism,
    ParameterError,
    ProlongabilityError,
    ReduceFirstError,
    adjacency_matrix,
    apply,
    characteristic_word,
    cyclic_shift,
    drop_special_letter,
    fixed_point,
    generate_hiccup,
    hiccup_morphism,
    is_primitive,
    ones_positions,
)
from hiccup.morphisms import check_morphic

M = Morphism.parse


def naive_fixed_point(m: Morphism, seed: str, length: int) -> str:
    """Oracle: iterate the whole word until it is long enough and stable."""
    w = seed
    for _ in range(200):
        nxt = apply(m, w)
        if len(nxt) >= length and nxt[:length] == w[:length]:
            return w[:length]
        w = nxt
    raise AssertionError("did not stabilise")


def sweep_params():
    for j in (0, 1):
        for x in range(0, 6):
            for y in range(1, 7):
                for z in range(1, 7):
                    try:
                        p = HiccupParams(j, x, y, z)
                    except ParameterError:
                        continue
                    if not p.degenerate:
                        yield p


def test_parse_round_trip():
    for text in ("0->10, 1->100", "b->b10, 0->10, 1->0010", "c->c, b->b0, 0->10, 1->010"):
        assert str(M(text)) == text


def test_apply():
    assert apply(M("0->10, 1->100"), "10") == "10010"
    assert apply(M("0->010, 1->10"), "0") == "010"
    assert apply(M("0->01, 1->0"), "") == ""
    with pytest.raises(AlphabetError):
        apply(M("0->01, 1->0"), "2")


def test_fixed_points():
    w = fixed_point(M("0->10, 1->100"), "1", 10)
    assert ones_positions(w) == [1, 4, 6, 8]
    assert w == naive_fixed_point(M("0->10, 1->100"), "1", 10)
    assert fixed_point(M("0->10, 1->1000"), "1", 22) == "1000101010100010100010"
    w = fixed_point(M("0->001, 1->1"), "10", 8)
    assert ones_positions(w) == [p for p in generate_hiccup(HiccupParams(0, 1, 1, 3), 8) if p <= 8]


def test_fixed_point_errors():
    with pytest.raises(ProlongabilityError):
        fixed_point(M("0->10, 1->01"), "0", 5)
    with pytest.raises(ProlongabilityError):
        fixed_point(M("0->0, 1->1"), "01", 5)


@settings(max_examples=80, deadline=None)
@given(st.text("01", min_size=1, max_size=4), st.text("01", min_size=1, max_size=4), st.sampled_from("01"))
def test_fixed_point_is_fixed(w0, w1, seed):
    m = Morphism({"0": w0, "1": w1})
    try:
        w = fixed_point(m, seed, 300)
    except (FixedPointError, ParameterError):
        return
    assert apply(m, w)[: len(w)] == w


def test_ones_positions():
    assert ones_positions("100101") == [1, 4, 6]
    assert ones_positions("1000101010100010100010") == [1, 5, 7, 9, 11, 15, 17, 21]
    assert ones_positions("0000") == []


@pytest.mark.parametrize(
    "params, text",
    [
        ((0, 1, 3, 4), "0->0100, 1->100"),
        ((1, 1, 3, 2), "0->10, 1->100"),
        ((1, 1, 2, 1), "0->1, 1->10"),
        ((0, 2, 4, 2), "0->01, 1->0001"),
    ],
)
def test_dispatch_examples(params, text):
    assert str(hiccup_morphism(HiccupParams(*params)).morphism) == text


def test_eq7_form_and_its_conjugate():
    form = hiccup_morphism(HiccupParams(0, 2, 4, 2), prefer_pure=False)
    assert str(form.morphism) == "b->b10, 0->10, 1->0010"
    assert form.coding.table == {"b": "0", "0": "0", "1": "1"}
    once = cyclic_shift(form.morphism)
    assert str(drop_special_letter(once, form.coding)) == "0->01, 1->0001"


def test_dispatch_errors():
    with pytest.raises(DegeneracyError):
        hiccup_morphism(HiccupParams(0, 1, 3, 1))
    with pytest.raises(ReduceFirstError):
        hiccup_morphism(HiccupParams(2, 1, 3, 2))


def test_cyclic_shift_preserves_positions():
    m = M("0->0100, 1->100")
    s = cyclic_shift(m)
    assert str(s) == "0->0010, 1->010"
    # the conjugate is the pure form of (0, 3, 3, 4)
    assert s == hiccup_morphism(HiccupParams(0, 3, 3, 4)).morphism
    for morph, seed, params in ((m, "10", (0, 1, 3, 4)), (s, "0", (0, 3, 3, 4))):
        pos = ones_positions(fixed_point(morph, seed, 10_000))
        assert pos == generate_hiccup(HiccupParams(*params), len(pos))


def test_cyclic_shift_requires_common_last_letter():
    with pytest.raises(ConjugationError):
        cyclic_shift(M("0->01, 1->10"))


def test_adjacency_convention():
    assert adjacency_matrix(M("0->0100, 1->100")).tolist() == [[3, 2], [1, 1]]
    assert adjacency_matrix(M("0->1, 1->10")).tolist() == [[0, 1], [1, 1]]
    m = M("b->b10, 0->10, 1->0010")
    a = adjacency_matrix(m)
    assert a.sum(axis=0).tolist() == [len(m.images[c]) for c in m.alphabet]


def test_adjacency_of_gap_morphisms():
    for p in sweep_params():
        if p.j or p.x < 1:
            continue
        form = hiccup_morphism(p, prefer_pure=False)
        if form.rule.startswith("pure"):
            continue
        a = adjacency_matrix(form.morphism, restrict_to_01=True)
        assert a.tolist() == [[p.z - 1, p.y - 1], [1, 1]], p


def test_primitivity():
    assert is_primitive(hiccup_morphism(HiccupParams(0, 1, 3, 2)).morphism)
    assert not is_primitive(M("0->001, 1->1"))
    assert is_primitive(M("0->01, 1->10"))
    for p in sweep_params():
        if p.j == 0 and p.x >= 1:
            assert is_primitive(hiccup_morphism(p).morphism) == (p.y > 1), p


def test_purity_claims():
    for p in sweep_params():
        if p.j == 0 and (2 <= p.x and p.z - p.y + 1 <= p.x <= p.z or p.x == 1 and p.y < p.z):
            assert hiccup_morphism(p).pure, p


def test_morphic_equivalence_sweep():
    params = list(sweep_params())
    assert len(params) == 315
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        bad = [(p, n) for p in params if (n := check_morphic(p, 10_000)) is not None]
    assert bad == []


def test_x0_form_has_leading_zero():
    form = hiccup_morphism(HiccupParams(0, 0, 3, 2))
    assert form.leading == (0,)
    assert form.terms(2000) == generate_hiccup(HiccupParams(0, 0, 3, 2), 2000)
    w = form.word(50)
    assert set(w) <= {"0", "1"}


def test_coding_must_cover_alphabet():
    assert Coding({"b": "1", "0": "0", "1": "1"}).covers(M("b->b0, 0->10, 1->010"))
    assert not Coding.identity().covers(M("b->b0, 0->10, 1->010"))


def test_characteristic_word_agrees_with_fixed_point():
    p = HiccupParams(1, 1, 4, 2)
    seq = generate_hiccup(p, 5000)
    assert characteristic_word(seq, 10_000) == fixed_point(M("0->10, 1->1000"), "1", 10_000)
