import warnings

import pytest
from hypothesis import given, settings, strategies as st

from hiccup import (
    DegenerateWarning,
    EmptyRequestError,
    HiccupParams,
    HorizonError,
    NotHiccupError,
    ParameterError,
    characteristic_word,
    generate_hiccup,
    infer_params,
    lift_from_zero_x,
    reduce_j_to_zero,
)


def naive(j, x, y, z, count):
    """Oracle: literal transcription of the recursion with a list scan."""
    a = [x]
    for n in range(2, count + 1):
        a.append(a[-1] + (y if (n - j) in a else z))
    return a


def valid_params(j_max=3, x_max=5, g_max=6):
    def build(t):
        try:
            p = HiccupParams(*t)
        except ParameterError:
            return None
        return None if p.degenerate else p

    tuples = st.tuples(st.integers(0, j_max), st.integers(0, x_max), st.integers(1, g_max), st.integers(1, g_max))
    return tuples.map(build).filter(lambda p: p is not None)


@pytest.mark.parametrize(
    "params, expected",
    [
        ((1, 1, 3, 2), [1, 4, 6, 8, 11, 13, 16]),
        ((1, 1, 4, 2), [1, 5, 7, 9, 11, 15]),
        ((0, 1, 2, 3), [1, 4, 7, 9, 12]),
        ((0, 1, 4, 2), [1, 3, 7, 9, 11]),
    ],
)
def test_known_prefixes(params, expected):
    assert generate_hiccup(HiccupParams(*params), len(expected)) == expected


def test_degenerate_is_generated_with_warning():
    with pytest.warns(DegenerateWarning):
        assert generate_hiccup(HiccupParams(0, 1, 5, 1), 5) == [1, 2, 3, 4, 5]


@pytest.mark.parametrize(
    "params, fragment",
    [
        ((0, 1, 2, 2), "differ"),
        ((0, 0, 3, 2), None),
        ((1, 0, 3, 2), "x = 0"),
        ((0, 0, 1, 2), "x = 0"),
        ((0, 1, 0, 2), "gaps"),
        ((-1, 1, 3, 2), "j"),
    ],
)
def test_parameter_validation(params, fragment):
    if fragment is None:
        HiccupParams(*params)
        return
    with pytest.raises(ParameterError, match=fragment):
        HiccupParams(*params)


def test_empty_request():
    with pytest.raises(EmptyRequestError):
        generate_hiccup(HiccupParams(1, 1, 3, 2), 0)


def test_parse():
    assert HiccupParams.parse("(1, 1, 3, 2)") == HiccupParams(1, 1, 3, 2)
    with pytest.raises(ParameterError):
        HiccupParams.parse("1,2,3")
    with pytest.raises(ParameterError):
        HiccupParams.parse("1,a,3,2")


@settings(max_examples=150, deadline=None)
@given(valid_params(), st.integers(1, 120))
def test_matches_naive_oracle(p, count):
    assert generate_hiccup(p, count) == naive(*p, count)


@settings(max_examples=100, deadline=None)
@given(valid_params())
def test_gaps_and_self_consistency(p):
    a = generate_hiccup(p, 400)
    members = set(a)
    for n in range(2, len(a) + 1):
        gap = a[n - 1] - a[n - 2]
        assert gap in (p.y, p.z)
        # recompute membership from the finished list
        assert gap == (p.y if (n - p.j) in members and (n - p.j) in a[: n - 1] else p.z)


def test_characteristic_word():
    assert characteristic_word([1, 4, 6], 6) == "100101"
    assert characteristic_word([2, 4], 1) == "0"
    omega = characteristic_word(generate_hiccup(HiccupParams(1, 1, 4, 2), 30), 22)
    assert omega == "1000101010100010100010"
    with pytest.raises(HorizonError):
        characteristic_word([1, 4, 6], 10)


@pytest.mark.parametrize(
    "params, reduced",
    [((1, 1, 3, 2), (0, 2, 3, 2)), ((1, 1, 4, 2), (0, 2, 4, 2)), ((2, 3, 5, 4), (0, 5, 5, 4))],
)
def test_reduce_j_examples(params, reduced):
    out, shift = reduce_j_to_zero(HiccupParams(*params))
    assert tuple(out) == reduced and shift == params[0]
    a = generate_hiccup(HiccupParams(*params), 10_000)
    b = generate_hiccup(out, 10_000)
    assert all(bb == aa + shift for aa, bb in zip(a, b))


def test_reduce_j_round_trip_sweep():
    checked = 0
    for j in range(1, 4):
        for x in range(0, 6):
            for y in range(1, 7):
                for z in range(1, 7):
                    try:
                        p = HiccupParams(j, x, y, z)
                    except ParameterError:
                        continue
                    out, shift = reduce_j_to_zero(p)
                    with warnings.catch_warnings():
                        warnings.simplefilter("ignore", DegenerateWarning)
                        b = generate_hiccup(out, 10_000)
                    assert [t - shift for t in b] == generate_hiccup(p, 10_000)
                    checked += 1
    assert checked > 400


def test_reduce_j_zero_is_an_error():
    with pytest.raises(ParameterError):
        reduce_j_to_zero(HiccupParams(0, 1, 3, 2))


@pytest.mark.parametrize("y, z", [(3, 2), (4, 3), (3, 4), (5, 2)])
def test_lift_from_zero_x(y, z):
    target, rule = lift_from_zero_x(HiccupParams(0, 0, y, z))
    assert tuple(target) == (0, z - 1, y, z)
    a = generate_hiccup(HiccupParams(0, 0, y, z), 10_000)
    b = generate_hiccup(target, 9_999)
    assert a == rule.apply(b)


def test_lift_preconditions():
    with pytest.raises(ParameterError):
        lift_from_zero_x(HiccupParams(0, 1, 3, 2))


def test_infer_params():
    assert HiccupParams(1, 1, 3, 2) in infer_params([1, 4, 6, 8, 11, 13, 16], 1)
    assert HiccupParams(0, 2, 4, 2) in infer_params([2, 6, 8, 10, 12, 16], 0)
    with pytest.raises(NotHiccupError):
        infer_params([1, 2, 4, 8])
    assert infer_params([1, 3, 5, 7]) == []


@settings(max_examples=60, deadline=None)
@given(valid_params(j_max=2))
def test_infer_recovers_generating_params(p):
    prefix = generate_hiccup(p, 60)
    gaps = {b - a for a, b in zip(prefix, prefix[1:])}
    if len(gaps) == 2:
        assert p in infer_params(prefix, 2)


def test_a080578_growth():
    a = generate_hiccup(HiccupParams(0, 1, 1, 3), 2**15 + 1)
    for n in range(1, 16):
        assert a[2**n - 1] == 2 ** (n + 1)
        k = 2**n - n + 1
        assert a[k - 1] == 2 ** (n + 1) - n + 1
        assert a[k - 1] - 2 * k == n - 1
    assert a[0] == 1  # a(2^0) = 2 fails: a(1) = x = 1
    assert max(a[k - 1] - 2 * k for k in range(1, 2**15 + 1)) >= 14
