"""Small builders shared by the test modules."""
from __future__ import annotations

from crowdpsych.kinematics import FeatureVector, KinematicSample


def make_sample(
    frame: int = 0,
    x: float = 0.0,
    y: float = 0.0,
    speed: float = 0.05,
    heading: float = 0.0,
    angular_variation: float = 0.0,
    fps: float = 25.0,
) -> KinematicSample:
    return KinematicSample(
        frame=frame,
        x=x,
        y=y,
        speed=speed,
        speed_mps=speed * fps,
        heading=heading,
        angular_variation=angular_variation,
    )


def make_vector(pedestrian_id: int = 0, **overrides) -> FeatureVector:
    values = dict(
        pedestrian_id=pedestrian_id,
        mean_x=0.0,
        mean_y=0.0,
        mean_speed=0.05,
        mean_speed_mps=1.25,
        mean_angular_variation=10.0,
        path_length=12.0,
        net_displacement=10.0,
        speed_std_dev=0.01,
        heading_std_dev=5.0,
        collectivity=0.5,
        mean_distance_to_others=2.0,
        mean_neighbor_count=1.0,
        socialization=0.5,
        isolation=0.5,
    )
    values.update(overrides)
    return FeatureVector(**values)
