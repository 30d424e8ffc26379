import decimal
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hiccup import (
    BeattyParams,
    DegenerateWarning,
    GeneratorWord,
    HiccupParams,
    MechanicalParams,
    NoFixedPointError,
    NotApplicableError,
    NotSturmianError,
    ParameterError,
    QuadraticNumber,
    beatty_from_mechanical,
    beatty_term,
    beatty_terms,
    compose,
    fixed_point,
    floor_linear,
    format_beatty,
    generate_hiccup,
    generator_morphism,
    golden_ratio,
    hiccup_beatty,
    hiccup_morphism,
    mechanical_word,
    ones_positions,
    parse_beatty,
    sqrt,
    sturmian_decomposition,
    transformation_fixed_point,
)
from hiccup.catalog import load_catalog, reference_formulas
from hiccup.morphisms import Morphism
from hiccup.sturmian import decompose_morphism
from hiccup.sturmian import composite_transform

CTX = decimal.Context(prec=62)  # about 200 bits


def dec(x):
    """Oracle conversion of a quadratic number, via Decimal square roots."""
    d = CTX.sqrt(decimal.Decimal(x.d)) if x.q else decimal.Decimal(0)
    return CTX.divide(CTX.add(decimal.Decimal(x.p), CTX.multiply(decimal.Decimal(x.q), d)), decimal.Decimal(x.r))


def beatty_cases():
    """(params, BeattyParams) for every catalog entry with a Beatty form."""
    out = []
    for e in load_catalog():
        try:
            out.append((e.params, hiccup_beatty(e.params)))
        except NotApplicableError:
            pass
    return out


def sturmian_params():
    for z in range(2, 8):
        for y in (z - 1, z + 1):
            for x in range(1, z + 1):
                if y >= 2 and not (x == 1 and y == z + 1):
                    yield HiccupParams(0, x, y, z)


def test_generators():
    assert str(generator_morphism("G")) == "0->0, 1->01"
    assert str(generator_morphism("H")) == "0->1, 1->01"
    assert str(compose(["E", "E"])) == "0->0, 1->1"
    assert str(compose(["R", "R"])) == "0->010, 1->10"
    assert compose(["L", "E"]) == generator_morphism("G")
    assert str(GeneratorWord(("G", "G", "Gt", "H"))) == "G^2∘Gt∘H"
    with pytest.raises(ParameterError):
        GeneratorWord(())


def test_decomposition_examples():
    g = sturmian_decomposition(HiccupParams(0, 2, 3, 2))
    assert g.letters == ("G", "H")
    w = fixed_point(compose(g), g.seed, 400)
    assert ones_positions(w) == generate_hiccup(HiccupParams(0, 2, 3, 2), len(ones_positions(w)))
    g = sturmian_decomposition(HiccupParams(0, 1, 2, 3))
    assert str(compose(g)) == "0->010, 1->10" and g.seed == "10"
    with pytest.raises(NotSturmianError):
        sturmian_decomposition(HiccupParams(0, 1, 4, 2))


@pytest.mark.parametrize("z", range(2, 7))
def test_x1_y_above_z_goes_through_the_tail(z):
    p = HiccupParams(0, 1, z + 1, z)
    with pytest.raises(NotSturmianError):
        sturmian_decomposition(p)
    tail = generate_hiccup(HiccupParams(0, z, z + 1, z), 2000)
    assert generate_hiccup(p, 2001) == [1] + [t + 1 for t in tail]
    bp = hiccup_beatty(p)
    assert [int(v) for v in beatty_terms(bp, 2001)] == generate_hiccup(p, 2001)


@pytest.mark.parametrize("p", list(sturmian_params()), ids=str)
def test_decomposition_fixed_point_encodes_sequence(p):
    g = sturmian_decomposition(p)
    pos = ones_positions(fixed_point(compose(g), g.seed, 3000))
    assert pos == generate_hiccup(p, len(pos))


def test_rr_parameters():
    mp = transformation_fixed_point(["R", "R"])
    alpha = (3 - sqrt(5)) / 2
    assert mp.alpha == alpha and mp.beta == 1 - alpha
    assert mechanical_word(mp, 6)[0] == "0" and mp.rounding == "ceil"
    assert mechanical_word(MechanicalParams(mp.alpha, mp.beta, "floor"), 6)[0] == "1"


def test_non_primitive_word_has_no_fixed_point():
    with pytest.raises(NoFixedPointError):
        transformation_fixed_point(["E"])


@pytest.mark.parametrize("p", list(sturmian_params()), ids=str)
def test_transformation_fixed_point_is_fixed(p):
    g = sturmian_decomposition(p)
    mp = transformation_fixed_point(g)
    assert composite_transform(g, mp.alpha, mp.beta, mp.rounding)[:2] == (mp.alpha, mp.beta)


@pytest.mark.parametrize("p", [HiccupParams(0, 2, 3, 2), HiccupParams(0, 3, 4, 3), HiccupParams(0, 2, 4, 5)], ids=str)
def test_density(p):
    g = sturmian_decomposition(p)
    mp = transformation_fixed_point(g)
    N = 100_000
    ones = fixed_point(compose(g), g.seed, N).count("1")
    assert abs(ones - float(mp.alpha) * N) < 2


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(0, 40), st.integers(2, 6))
def test_mechanical_word_telescopes(k, m, d):
    alpha = (sqrt(d * d + 4) - d) / 2  # irrational, in (0, 1)
    beta = QuadraticNumber(m, 0, 1, 41)
    for rounding in ("floor", "ceil"):
        w = mechanical_word(MechanicalParams(alpha, beta, rounding), k)
        # letters are indexed from 1, so the sum telescopes from p = 0
        r = (lambda t: t.floor()) if rounding == "floor" else (lambda t: t.ceil())
        assert w.count("1") == r(alpha * k + beta) - r(beta)


@pytest.mark.parametrize("p", list(sturmian_params()), ids=str)
def test_mechanical_beatty_duality(p):
    mp = transformation_fixed_point(sturmian_decomposition(p))
    bp = beatty_from_mechanical(mp)
    N = 10_000
    pos = ones_positions(mechanical_word(mp, N))
    assert [int(v) for v in beatty_terms(bp, len(pos))] == pos
    assert int(beatty_terms(bp, len(pos) + 1)[-1]) > N


def test_reference_beatty_formulas():
    by_id = {e.oeis_id: e.params for e in load_catalog()}
    for item in reference_formulas()["beatty"]:
        bp = parse_beatty(item["formula"], item["first_index"])
        want = generate_hiccup(by_id[item["oeis_id"]], 10_000)
        assert [int(v) for v in beatty_terms(bp, 10_000)] == want, item["oeis_id"]


def test_a086377_formula_and_terms():
    bp = hiccup_beatty(HiccupParams(1, 1, 3, 2))
    assert format_beatty(bp) == "floor((1+sqrt(2))*n - sqrt(2)/2)"
    assert [beatty_term(bp, n) for n in (1, 2, 3)] == [1, 4, 6]
    eq3 = parse_beatty("ceil((1+sqrt(2))*(n-1) + 1/(2+sqrt(2)))")
    assert beatty_term(eq3, 1) == 1
    wythoff = BeattyParams(golden_ratio(), 0)
    assert [beatty_term(wythoff, n) for n in range(1, 6)] == [1, 3, 4, 6, 8]


def test_format_parse_round_trip():
    for _, bp in beatty_cases():
        again = parse_beatty(format_beatty(bp), bp.first_index)
        assert again == bp


def test_floor_and_ceiling_forms_agree():
    for _, bp in beatty_cases():
        try:
            other = bp.to_ceil() if bp.rounding == "floor" else bp.to_floor()
        except ParameterError:
            continue
        assert list(beatty_terms(bp, 2000)) == list(beatty_terms(other, 2000))


def test_a007066_needs_ceiling():
    bp = hiccup_beatty(HiccupParams(0, 1, 2, 3))
    assert bp.rounding == "ceil"
    with pytest.raises(ParameterError):
        bp.to_floor()


def test_not_applicable_cases():
    for params in [(0, 1, 1, 3), (0, 2, 4, 2), (0, 3, 1, 3), (0, 5, 4, 3)]:
        with pytest.raises(NotApplicableError):
            hiccup_beatty(HiccupParams(*params))


def test_j1_cases_beyond_reduction():
    # (1,1,y,z) with y = z + 1 reduces to x = z + 1, so the j = 1 morphism is used
    bp = hiccup_beatty(HiccupParams(1, 1, 2, 1))
    assert format_beatty(bp) == "floor((1+sqrt(5))/2*n)"
    for z in range(1, 7):
        p = HiccupParams(1, 1, z + 1, z)
        bp = hiccup_beatty(p)
        assert [int(v) for v in beatty_terms(bp, 3000)] == generate_hiccup(p, 3000), p
    with pytest.raises(NotApplicableError):
        hiccup_beatty(HiccupParams(2, 1, 2, 1))


def test_decompose_morphism():
    assert decompose_morphism(Morphism({"0": "01", "1": "0"})).letters == ("G", "E")
    for gs in [("G", "Gt", "H"), ("Gt", "Gt", "H", "E"), ("E", "G", "G")]:
        m = compose(gs)
        assert compose(decompose_morphism(m)) == m
    with pytest.raises(NotSturmianError):
        decompose_morphism(Morphism({"0": "0011", "1": "1"}))


def test_four_way_equivalence_on_catalog():
    cases = beatty_cases()
    assert len(cases) == 16
    for p, bp in cases:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DegenerateWarning)
            want = generate_hiccup(p, 10_000)
        start = bp.first_index
        assert [int(v) for v in beatty_terms(bp, 10_000 - start + 1)] == want[start - 1:], p
        assert hiccup_morphism(p).terms(10_000) == want, p


def test_exact_floor_fuzz():
    """10**6 random (n, formula) pairs against a 200-bit decimal evaluation."""
    rng = np.random.default_rng(20240611)
    cases = [bp for _, bp in beatty_cases()]
    cases.append(BeattyParams(golden_ratio(), 0))
    per = 1_000_000 // len(cases) + 1
    total = 0
    eps = decimal.Decimal("1e-50")
    for bp in cases:
        ns = rng.integers(1, 10**7, size=per)
        s, c = dec(bp.slope), dec(bp.intercept)
        if bp.rounding == "floor":
            got = floor_linear(bp.slope, bp.intercept, ns)
        else:
            got = -floor_linear(-bp.slope, -bp.intercept, ns)
        for n, g in zip(ns.tolist(), got.tolist()):
            t = CTX.add(CTX.multiply(s, n), c)
            f = int(t.to_integral_value(rounding=decimal.ROUND_FLOOR))
            assert abs(t - f) > eps and abs(t - f - 1) > eps, "float too close to an integer"
            want = f if bp.rounding == "floor" else f + 1
            assert g == want, (format_beatty(bp), n)
        total += len(ns)
    assert total >= 1_000_000


def test_exact_floor_fuzz_large_arguments():
    rng = np.random.default_rng(7)
    bp = hiccup_beatty(HiccupParams(1, 1, 3, 2))
    s, c = dec(bp.slope), dec(bp.intercept)
    for n in rng.integers(10**12, 10**17, size=200).tolist():
        t = CTX.add(CTX.multiply(s, n), c)
        assert beatty_term(bp, n) == int(t.to_integral_value(rounding=decimal.ROUND_FLOOR))
