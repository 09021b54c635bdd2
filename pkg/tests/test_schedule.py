import dataclasses
import itertools

import pytest

import parconcord as pc
from parconcord.schedule import format_rounds


def test_index_pair_normalizes_order():
    pair = pc.IndexPair(5, 2)
    assert (pair.r, pair.s) == (2, 5)
    assert pc.IndexPair(2, 5) == pair
    with pytest.raises(ValueError):
        pc.IndexPair(3, 3)


def test_circle_schedule_p6_rounds():
    sched = pc.build_circle_schedule(6)
    got = [{(q.r, q.s) for q in rnd} for rnd in sched.rounds]
    assert got == [
        {(1, 6), (2, 5), (3, 4)},
        {(1, 5), (4, 6), (2, 3)},
        {(1, 4), (3, 5), (2, 6)},
        {(1, 3), (2, 4), (5, 6)},
        {(1, 2), (3, 6), (4, 5)},
    ]


def test_circle_schedule_shape_even_and_odd():
    for p in range(2, 40):
        sched = pc.build_circle_schedule(p)
        p_even = p + (p % 2)
        assert sched.p == p and sched.p_even == p_even
        assert len(sched.rounds) == p_even - 1
        assert all(len(rnd) == p_even // 2 for rnd in sched.rounds)
        seen = set()
        for rnd in sched.rounds:
            used = set()
            for pair in rnd:
                assert pair not in seen
                seen.add(pair)
                assert pair.r not in used and pair.s not in used
                used.add(pair.r)
                used.add(pair.s)
        assert seen == {
            pc.IndexPair(r, s)
            for r, s in itertools.combinations(range(1, p_even + 1), 2)
        }
        real = {q for q in seen if not sched.is_phantom(q)}
        assert real == {
            pc.IndexPair(r, s) for r, s in itertools.combinations(range(1, p + 1), 2)
        }


def test_phantom_pairs_odd_p():
    sched = pc.build_circle_schedule(3)
    assert sched.p_even == 4
    per_round_real = [sched.active_pairs(k) for k in range(len(sched.rounds))]
    assert all(len(rnd) == 1 for rnd in per_round_real)
    assert {(q.r, q.s) for rnd in per_round_real for q in rnd} == {
        (1, 2),
        (1, 3),
        (2, 3),
    }
    assert sched.active_round_count() == 3


def test_active_round_count_even_p_has_no_idle_rounds():
    for p in (4, 6, 10):
        sched = pc.build_circle_schedule(p)
        assert sched.active_round_count() == p - 1


def test_build_circle_schedule_rejects_small_p():
    with pytest.raises(pc.DimensionError):
        pc.build_circle_schedule(1)


def test_validate_schedule_accepts_all_built():
    for p in range(2, 33):
        rep = pc.validate_schedule(pc.build_circle_schedule(p))
        assert rep.ok, rep.message


def _corrupt(sched, rounds):
    return dataclasses.replace(
        sched, rounds=tuple(tuple(rnd) for rnd in rounds)
    )


def test_validate_schedule_detects_corruption():
    sched = pc.build_circle_schedule(6)
    rounds = [list(rnd) for rnd in sched.rounds]

    dup = [list(rnd) for rnd in rounds]
    dup[1][0] = rounds[0][0]  # pair repeated across rounds
    rep = pc.validate_schedule(_corrupt(sched, dup))
    assert not rep.ok

    clash = [list(rnd) for rnd in rounds]
    clash[0][0] = pc.IndexPair(1, 5)  # shares vertex 5 with (2,5) in round 0
    rep = pc.validate_schedule(_corrupt(sched, clash))
    assert not rep.ok

    short = [list(rnd) for rnd in rounds[:-1]]
    rep = pc.validate_schedule(_corrupt(sched, short))
    assert not rep.ok

    oob = [list(rnd) for rnd in rounds]
    oob[0][0] = pc.IndexPair(1, 9)
    rep = pc.validate_schedule(_corrupt(sched, oob))
    assert not rep.ok

    assert all(isinstance(r.message, str) and r.message for r in [rep])


def test_brute_force_chromatic_index_small_complete_graphs():
    assert [pc.brute_force_chromatic_index(p) for p in range(2, 8)] == [
        1,
        3,
        3,
        5,
        5,
        7,
    ]
    with pytest.raises(pc.DimensionError):
        pc.brute_force_chromatic_index(8)
    with pytest.raises(pc.DimensionError):
        pc.brute_force_chromatic_index(1)


def test_schedule_round_count_is_optimal_where_checkable():
    for p in range(2, 8):
        sched = pc.build_circle_schedule(p)
        assert sched.active_round_count() == pc.brute_force_chromatic_index(p)


def test_format_rounds_marks_phantoms():
    text = format_rounds(pc.build_circle_schedule(3))
    lines = text.splitlines()
    assert len(lines) == 3
    assert any("*" in line for line in lines)
    flat = text.replace("*", "").replace("\n", " ").split()
    assert sorted(flat) == sorted(["1-4", "2-3", "1-3", "2-4", "1-2", "3-4"])
