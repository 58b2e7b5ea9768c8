import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from happygrid import (
    AttractorAtlas,
    CertificationError,
    Cycle,
    DigitSystem,
    brute_bound,
    default_step_budget,
    digit_count,
    digit_power_sum,
    digit_reduction_threshold,
    enumerate_attractors,
    forward_invariance_scan,
    three_digit_identity_check,
    threshold_inequality_check,
    validate_atlas,
    verify_range,
)

from conftest import EIGHT_CYCLE

# (base, exponent) -> (p0, B); B values cross-checked by the invariance scan below
EXPECTED_CONSTANTS = {
    (10, 2): (4, 999),
    (2, 1): (3, 3),
    (2, 2): (3, 3),
    (10, 3): (5, 9999),
    (3, 2): (4, 26),
    (10, 1): (3, 99),
}


def naive_attractors(system: DigitSystem, bound: int):
    """Independent oracle: plain iteration with a visited list from each start."""
    fixed, cycles = set(), set()
    for start in range(bound + 1):
        seen: list[int] = []
        value = start
        while value not in seen:
            seen.append(value)
            value = digit_power_sum(value, system)
        cycle = seen[seen.index(value):]
        pivot = cycle.index(min(cycle))
        members = tuple(cycle[pivot:] + cycle[:pivot])
        if len(members) == 1:
            fixed.add(members[0])
        else:
            cycles.add(members)
    return fixed, cycles


@pytest.mark.parametrize("base,exponent", sorted(EXPECTED_CONSTANTS), ids=str)
def test_threshold_and_bound_constants(base, exponent):
    system = DigitSystem(base, exponent)
    p0, bound = EXPECTED_CONSTANTS[(base, exponent)]
    assert digit_reduction_threshold(system) == p0
    assert brute_bound(system, p0) == bound
    # minimality: the inequality fails just below the threshold
    if p0 > 2:
        assert system.digit_weight * (p0 - 1) >= base ** (p0 - 2)


def test_brute_bound_rejects_wrong_threshold(squares):
    with pytest.raises(ValueError, match="not the digit-reduction threshold"):
        brute_bound(squares, 5)


def test_threshold_inequality_check(squares):
    report = threshold_inequality_check(squares, 100)
    assert report.ok and report.minimal and report.p0 == 4
    assert report.failing_p is None
    # the explicit minimality witness at p = 3
    assert 81 * 3 >= 10**2
    assert threshold_inequality_check(DigitSystem(2, 1), 64).ok
    with pytest.raises(ValueError, match="below the threshold"):
        threshold_inequality_check(squares, 3)


@pytest.mark.parametrize("base,exponent", sorted(EXPECTED_CONSTANTS), ids=str)
def test_forward_invariance_exhaustive(base, exponent):
    system = DigitSystem(base, exponent)
    _, bound = EXPECTED_CONSTANTS[(base, exponent)]
    report = forward_invariance_scan(system, bound)
    assert report.ok
    assert report.checked == bound + 1
    assert report.max_image <= bound


def test_invariance_scan_catches_escapes(cubes):
    # [0, 2187] is NOT forward-invariant for cubes: 1999 -> 1 + 3*729 = 2188
    report = forward_invariance_scan(cubes, 2187)
    assert not report.ok
    assert report.escaping == 1999
    assert report.max_image == 2188


def test_squares_atlas_contents(squares_atlas):
    assert squares_atlas.fixed_points == frozenset({0, 1})
    assert squares_atlas.cycles == frozenset({Cycle(EIGHT_CYCLE)})
    assert squares_atlas.certificate.p0 == 4
    assert squares_atlas.certificate.brute_bound == 999
    assert squares_atlas.certificate.max_transient == 11
    assert [a.identifier for a in squares_atlas.attractors] == [0, 1, 4]
    assert len(squares_atlas.member_to_attractor) == 10


def test_squares_classification_table(squares, squares_atlas):
    table = squares_atlas.classification_table
    assert table is not None and len(table) == 1000
    assert set(table) == {0, 1, 4}
    membership = squares_atlas.member_to_attractor
    for n in range(1000):
        value = n
        while value not in membership:
            value = digit_power_sum(value, squares)
        assert membership[value].identifier == table[n]


@pytest.mark.parametrize("base,exponent", [(2, 1), (2, 2)], ids=str)
def test_binary_atlases_have_only_fixed_points(base, exponent):
    atlas = enumerate_attractors(DigitSystem(base, exponent))
    assert atlas.fixed_points == frozenset({0, 1})
    assert atlas.cycles == frozenset()
    assert atlas.certificate.max_transient == 2


@pytest.mark.parametrize("base,exponent", sorted(EXPECTED_CONSTANTS), ids=str)
def test_enumeration_matches_naive_oracle(base, exponent):
    system = DigitSystem(base, exponent)
    atlas = enumerate_attractors(system)
    fixed, cycles = naive_attractors(system, atlas.certificate.brute_bound)
    assert atlas.fixed_points == fixed
    assert {c.members for c in atlas.cycles} == cycles


def test_verify_range_reports(squares, squares_atlas):
    low = verify_range(squares, squares_atlas, 0, 99)
    assert low.ok and low.checked == 100
    single = verify_range(squares, squares_atlas, 0, 0)
    assert single.ok and single.checked == 1 and single.max_transient == 0
    full = verify_range(squares, squares_atlas, 0, 999)
    assert full.ok and full.checked == 1000
    assert full.max_transient == squares_atlas.certificate.max_transient
    with pytest.raises(ValueError, match="empty range"):
        verify_range(squares, squares_atlas, 5, 4)


def test_three_digit_descent(squares, squares_atlas):
    report = verify_range(squares, squares_atlas, 100, 999)
    assert report.ok and report.checked == 900
    for n in range(100, 1000):
        assert digit_power_sum(n, squares) <= n - 1


def test_three_digit_identity():
    report = three_digit_identity_check()
    assert report.ok
    assert report.checked == 900
    assert report.min_descent >= 18
    assert report.min_descent == 27  # attained at n = 109


def test_verify_range_fails_on_truncated_atlas(squares, squares_atlas):
    for attractor in squares_atlas.attractors:
        truncated = AttractorAtlas(
            system=squares_atlas.system,
            certificate=squares_atlas.certificate,
            fixed_points=squares_atlas.fixed_points - {attractor.identifier},
            cycles=frozenset(
                c for c in squares_atlas.cycles if c.identifier != attractor.identifier
            ),
            classification_table=None,
        )
        report = verify_range(squares, truncated, 0, 200, max_steps=64)
        assert not report.ok
        assert report.failing is not None
        assert "64 steps" in report.reason


def test_validate_atlas_full(squares_atlas):
    validate_atlas(squares_atlas, exhaustive=True)


def test_validate_atlas_catches_tampering(squares_atlas):
    missing_fixed = AttractorAtlas(
        system=squares_atlas.system,
        certificate=squares_atlas.certificate,
        fixed_points=frozenset({0, 2}),  # 2 is not fixed
        cycles=squares_atlas.cycles,
        classification_table=None,
    )
    with pytest.raises(CertificationError, match="not a fixed point"):
        validate_atlas(missing_fixed)
    rotated = AttractorAtlas(
        system=squares_atlas.system,
        certificate=squares_atlas.certificate,
        fixed_points=squares_atlas.fixed_points,
        cycles=frozenset({Cycle(EIGHT_CYCLE[1:] + EIGHT_CYCLE[:1])}),
        classification_table=None,
    )
    with pytest.raises(CertificationError, match="not canonical"):
        validate_atlas(rotated)


def test_default_step_budget(squares):
    assert default_step_budget(0, squares) == 1000
    assert default_step_budget(10**499, squares) == 10 * 500 + 999


@settings(max_examples=60)
@given(n=st.integers(10**4, 10**300))
def test_digit_count_reduction_above_threshold(n):
    # every value with at least p0 = 4 digits loses at least one digit
    squares = DigitSystem(10, 2)
    assert digit_count(n, squares) >= 4
    assert digit_count(digit_power_sum(n, squares), squares) < digit_count(n, squares)


@settings(max_examples=60)
@given(n=st.integers(100, 10**300))
def test_descent_everywhere_above_one_hundred(n):
    # three-digit descent plus digit-count reduction combined: f(n) < n
    squares = DigitSystem(10, 2)
    assert digit_power_sum(n, squares) < n


@settings(max_examples=40)
@given(
    n=st.integers(2**10, 2**200),
    system=st.builds(DigitSystem, base=st.integers(2, 16), exponent=st.integers(1, 4)),
)
def test_digit_count_reduction_generalizes(n, system):
    p0 = digit_reduction_threshold(system)
    if digit_count(n, system) >= p0:
        assert digit_count(digit_power_sum(n, system), system) < digit_count(n, system)
