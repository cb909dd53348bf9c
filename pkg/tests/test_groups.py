"""Group detection, persistence, hull geometry and group scores."""
from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crowdpsych.errors import DegenerateGroupError
from crowdpsych.groups import (
    GroupLinkParams,
    cohesion_score,
    convex_hull_area,
    detect_groups,
    frame_links,
    group_metrics,
    linked,
    orientation_score,
    speed_score,
    summarize_groups,
)
from helpers import make_sample

PARAMS = GroupLinkParams()


def test_side_by_side_walkers_are_linked():
    a = make_sample(x=0.0, speed=0.048, heading=0.0)
    b = make_sample(x=0.8, speed=0.048, heading=0.0)
    assert linked(a, b, PARAMS)


def test_opposite_headings_break_the_link():
    a = make_sample(x=0.0, speed=0.048, heading=0.0)
    b = make_sample(x=0.8, speed=0.048, heading=180.0)
    assert not linked(a, b, PARAMS)


def test_distance_breaks_the_link():
    a = make_sample(x=0.0, speed=0.048, heading=0.0)
    b = make_sample(x=3.0, speed=0.048, heading=0.0)
    assert not linked(a, b, PARAMS)


def test_speed_gap_breaks_the_link():
    a = make_sample(x=0.0, speed=0.04, heading=0.0)  # 1.0 m/s at 25 fps
    b = make_sample(x=0.8, speed=0.064, heading=0.0)  # 1.6 m/s
    assert not linked(a, b, PARAMS)


def test_link_boundaries_are_inclusive():
    a = make_sample(x=0.0, speed=0.048, heading=0.0)
    at_distance = make_sample(x=1.2, speed=0.048, heading=0.0)
    at_heading = make_sample(x=0.8, speed=0.048, heading=30.0)
    assert linked(a, at_distance, PARAMS)
    assert linked(a, at_heading, PARAMS)


def test_frame_links_enumerates_sorted_pairs():
    frame = {
        1: make_sample(x=0.0),
        2: make_sample(x=0.5),
        9: make_sample(x=10.0),
    }
    assert frame_links(frame, PARAMS) == {(1, 2)}


def test_hull_area_of_unit_right_triangle():
    assert convex_hull_area([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]) == pytest.approx(0.5)


def test_hull_area_of_unit_square():
    square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    assert convex_hull_area(square) == pytest.approx(1.0)


def test_hull_interior_points_do_not_change_the_area():
    square = [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (1.0, 1.0), (0.5, 0.5)]
    assert convex_hull_area(square) == pytest.approx(4.0)


def test_hull_degenerate_inputs_are_zero():
    assert convex_hull_area([]) == 0.0
    assert convex_hull_area([(1.0, 1.0)]) == 0.0
    assert convex_hull_area([(0.0, 0.0), (2.0, 2.0)]) == 0.0
    assert convex_hull_area([(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]) == 0.0
    assert convex_hull_area([(1.0, 1.0), (1.0, 1.0), (1.0, 1.0)]) == 0.0


points_strategy = st.lists(
    st.tuples(
        st.floats(min_value=-20.0, max_value=20.0),
        st.floats(min_value=-20.0, max_value=20.0),
    ),
    min_size=3,
    max_size=12,
)


@given(
    points_strategy,
    st.floats(min_value=0.0, max_value=360.0),
    st.floats(min_value=-30.0, max_value=30.0),
    st.floats(min_value=-30.0, max_value=30.0),
)
def test_hull_area_is_rigid_motion_invariant(points, rotation, dx, dy):
    cos_r = math.cos(math.radians(rotation))
    sin_r = math.sin(math.radians(rotation))
    moved = [
        (cos_r * x - sin_r * y + dx, sin_r * x + cos_r * y + dy) for x, y in points
    ]
    original = convex_hull_area(points)
    assert convex_hull_area(moved) == pytest.approx(original, abs=1e-6, rel=1e-6)


def test_score_endpoints():
    assert cohesion_score(0.0) == 100.0
    assert cohesion_score(3.6) == 0.0
    assert cohesion_score(5.0) == 0.0
    assert orientation_score(0.0) == 100.0
    assert orientation_score(180.0) == 0.0
    assert orientation_score(200.0) == 0.0
    assert speed_score(0.0) == 0.0
    assert speed_score(1.0) == 50.0
    assert speed_score(2.0) == 100.0
    assert speed_score(3.0) == 100.0


def _marching_pair(offset_y: float = 0.0, ped_a: int = 0, ped_b: int = 1, frames: int = 10):
    samples = {}
    for ped, y in ((ped_a, offset_y), (ped_b, offset_y + 0.8)):
        samples[ped] = [
            make_sample(frame=f, x=0.04 * f, y=y, speed=0.04, heading=0.0)
            for f in range(frames)
        ]
    return samples


def test_detect_groups_on_two_marching_pairs():
    samples = _marching_pair(0.0, 0, 1)
    samples.update(_marching_pair(50.0, 2, 3))
    samples[4] = [
        make_sample(frame=f, x=-100.0, y=-100.0 - 0.04 * f, speed=0.04, heading=270.0)
        for f in range(10)
    ]
    result = detect_groups(samples)
    assert [sorted(g.member_ids) for g in result.groups] == [[0, 1], [2, 3]]
    assert [g.id for g in result.groups] == [0, 1]
    assert result.grouped_ids == frozenset({0, 1, 2, 3})
    assert result.ungrouped_ids == frozenset({4})


def test_transitive_closure_forms_one_group():
    # chain: 0-1 linked and 1-2 linked, 0-2 too far apart directly
    samples = {
        ped: [
            make_sample(frame=f, x=0.04 * f, y=ped * 1.0, speed=0.04, heading=0.0)
            for f in range(8)
        ]
        for ped in range(3)
    }
    result = detect_groups(samples)
    assert len(result.groups) == 1
    assert result.groups[0].member_ids == frozenset({0, 1, 2})


def test_persistence_below_half_breaks_the_pair():
    # linked for 4 of 10 co-present frames only
    a = [make_sample(frame=f, x=0.0, speed=0.04, heading=0.0) for f in range(10)]
    b = [
        make_sample(
            frame=f,
            x=0.5 if f < 4 else 5.0,
            speed=0.04,
            heading=0.0,
        )
        for f in range(10)
    ]
    assert detect_groups({0: a, 1: b}).groups == ()


def test_persistence_at_half_keeps_the_pair():
    a = [make_sample(frame=f, x=0.0, speed=0.04, heading=0.0) for f in range(10)]
    b = [
        make_sample(frame=f, x=0.5 if f < 5 else 5.0, speed=0.04, heading=0.0)
        for f in range(10)
    ]
    result = detect_groups({0: a, 1: b})
    assert len(result.groups) == 1


def test_stationary_far_apart_pedestrians_form_no_groups():
    samples = {
        ped: [make_sample(frame=f, x=ped * 50.0, speed=0.0) for f in range(5)]
        for ped in range(4)
    }
    result = detect_groups(samples)
    assert result.groups == ()
    assert result.ungrouped_ids == frozenset(range(4))


def test_group_metrics_on_a_right_triangle():
    members = frozenset({0, 1, 2})
    positions = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (0.0, 1.0)}
    samples = {
        ped: [
            make_sample(frame=f, x=x + 0.04 * f, y=y, speed=0.04, heading=0.0)
            for f in range(5)
        ]
        for ped, (x, y) in positions.items()
    }
    group = group_metrics(0, members, samples)
    expected_distance = (1.0 + 1.0 + math.sqrt(2.0)) / 3.0
    assert group.mean_distance == pytest.approx(expected_distance)
    assert group.mean_distance == pytest.approx(1.1380711874576983)
    assert group.mean_area == pytest.approx(0.5)
    assert group.cohesion == pytest.approx(100.0 * (1.0 - expected_distance / 3.6))
    assert group.orientation_score == 100.0
    assert group.speed_score == pytest.approx(50.0)  # 1.0 m/s at 25 fps


def test_group_metrics_requires_a_shared_frame():
    samples = {
        0: [make_sample(frame=0), make_sample(frame=1)],
        1: [make_sample(frame=5), make_sample(frame=6)],
    }
    with pytest.raises(DegenerateGroupError):
        group_metrics(0, frozenset({0, 1}), samples)


def test_summarize_groups_counts():
    samples = _marching_pair(0.0, 0, 1)
    samples.update(_marching_pair(50.0, 2, 3))
    samples[7] = [
        make_sample(frame=f, x=200.0 + 0.04 * f, speed=0.04) for f in range(10)
    ]
    stats = summarize_groups(detect_groups(samples))
    assert stats.group_count == 2
    assert stats.grouped_count == 4
    assert stats.ungrouped_count == 1
    assert stats.mean_size == 2.0
    assert stats.mean_distance == pytest.approx(0.8)
    assert stats.mean_cohesion == pytest.approx(cohesion_score(0.8))


def test_summarize_groups_empty():
    stats = summarize_groups(detect_groups({}))
    assert stats.group_count == 0
    assert stats.mean_size == 0.0
