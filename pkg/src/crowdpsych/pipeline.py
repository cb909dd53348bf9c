"""End-to-end orchestration from a tracking file to the profile layers.

The four report dimensions pull in what they need: I uses kinematics
only, II adds the social features, the classifier and group detection,
III builds personality and emotion profiles on top of I and II, and IV
derives the cultural profile from the groups. The per-frame table
requires everything. Social geometry (collectivity, distances, neighbor
counts) is cheap and always computed; the classifier only runs when a
selected layer wants it.
"""
from __future__ import annotations

import functools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import (
    DIM_CULTURAL,
    DIM_PERSONAL_EMOTIONAL,
    DIM_SOCIAL,
    AnalysisConfig,
)
from .culture import HofstedeProfile, hofstede_profile
from .emotions import EmotionProfile, emotions_from_ocean
from .errors import EmptyDatasetError
from .groups import (
    GroupSet,
    GroupStats,
    detect_groups,
    orientation_score,
    speed_score,
    summarize_groups,
)
from .kinematics import (
    FeatureVector,
    KinematicSample,
    SocialAverages,
    per_frame_kinematics,
    summarize_track,
)
from .personality import OceanProfile, default_registry, load_registry, ocean_profiles
from .scg import ScgParams
from .social import FrameSocial, frame_social_features
from .socialization import (
    DEFAULT_SAMPLE_COUNT,
    SocializationNet,
    load_net,
    synthesize_dataset,
    train_socialization_net,
)
from .tracking import TrackingDataset, read_input_pixels, to_world_coords

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrameState:
    """One pedestrian in one frame: motion plus social context."""

    sample: KinematicSample
    collectivity: float
    mean_distance: float
    neighbor_count: int
    socialization: float | None


@dataclass
class VideoSummary:
    video_name: str
    fps: float
    pixels_per_meter: float
    frame_count: int
    pedestrian_count: int
    dataset: TrackingDataset
    pixel_dataset: TrackingDataset
    frame_states: dict[int, list[FrameState]]
    features: dict[int, FeatureVector]
    groups: GroupSet | None
    group_stats: GroupStats | None
    group_of: dict[int, int]
    ocean: dict[int, OceanProfile] | None
    emotions: dict[int, EmotionProfile] | None
    hofstede: HofstedeProfile | None

    @property
    def group_count(self) -> int:
        return len(self.groups.groups) if self.groups is not None else 0


@functools.lru_cache(maxsize=4)
def _default_net_cached(seed: int) -> SocializationNet:
    samples = synthesize_dataset(DEFAULT_SAMPLE_COUNT, seed=seed)
    net, report = train_socialization_net(samples, ScgParams(seed=seed))
    log.info(
        "socialization net trained: %d iterations, validation accuracy %.3f",
        report.iterations,
        report.validation_accuracy,
    )
    return net


def default_socialization_net(seed: int = 7) -> SocializationNet:
    """Train (or reuse) the default classifier for this seed."""
    return _default_net_cached(seed)


def _social_by_frame(
    frame_index: dict[int, dict[int, KinematicSample]], workers: int
) -> dict[int, dict[int, FrameSocial]]:
    frames = sorted(frame_index)
    if workers <= 1 or len(frames) < 2:
        return {f: frame_social_features(frame_index[f]) for f in frames}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = pool.map(lambda f: frame_social_features(frame_index[f]), frames)
        return dict(zip(frames, results))


def run_pipeline(config: AnalysisConfig) -> VideoSummary:
    """Analyze one video per the configuration; pure apart from logging."""
    config.validate()
    pixel_dataset = read_input_pixels(config)
    dataset = to_world_coords(pixel_dataset, config.pixels_per_meter)
    if not dataset.tracks:
        raise EmptyDatasetError("no usable tracks in the input")

    dims = config.dimensions
    need_net = config.all_features or bool(
        {DIM_SOCIAL, DIM_PERSONAL_EMOTIONAL} & dims
    )
    need_groups = config.all_features or bool({DIM_SOCIAL, DIM_CULTURAL} & dims)
    need_psyche = config.all_features or DIM_PERSONAL_EMOTIONAL in dims
    need_culture = DIM_CULTURAL in dims

    samples_by_ped = {
        ped_id: per_frame_kinematics(track, config.fps)
        for ped_id, track in sorted(dataset.tracks.items())
    }
    frame_index: dict[int, dict[int, KinematicSample]] = {}
    for ped_id, samples in samples_by_ped.items():
        for sample in samples:
            frame_index.setdefault(sample.frame, {})[ped_id] = sample

    social_by_frame = _social_by_frame(frame_index, config.workers)

    theta_by_ped_frame: dict[tuple[int, int], float] = {}
    if need_net:
        if config.net_file is not None:
            net = load_net(config.net_file)
        else:
            net = default_socialization_net(config.seed)
        keys = [
            (ped_id, sample.frame)
            for ped_id, samples in samples_by_ped.items()
            for sample in samples
        ]
        rows = np.array(
            [
                [
                    social_by_frame[frame][ped_id].collectivity,
                    social_by_frame[frame][ped_id].mean_distance,
                    social_by_frame[frame][ped_id].neighbor_count,
                ]
                for ped_id, frame in keys
            ]
        )
        probabilities = net.predict_proba(rows)[:, 1]
        theta_by_ped_frame = {
            key: float(p) for key, p in zip(keys, probabilities)
        }

    frame_states: dict[int, list[FrameState]] = {}
    features: dict[int, FeatureVector] = {}
    for ped_id, samples in samples_by_ped.items():
        states: list[FrameState] = []
        for sample in samples:
            social = social_by_frame[sample.frame][ped_id]
            states.append(
                FrameState(
                    sample=sample,
                    collectivity=social.collectivity,
                    mean_distance=social.mean_distance,
                    neighbor_count=social.neighbor_count,
                    socialization=theta_by_ped_frame.get((ped_id, sample.frame)),
                )
            )
        frame_states[ped_id] = states
        n = len(states)
        averages = SocialAverages(
            collectivity=math.fsum(s.collectivity for s in states) / n,
            mean_distance_to_others=math.fsum(s.mean_distance for s in states) / n,
            mean_neighbor_count=math.fsum(s.neighbor_count for s in states) / n,
            socialization=(
                math.fsum(s.socialization for s in states) / n if need_net else None
            ),
        )
        features[ped_id] = summarize_track(ped_id, samples, averages)

    groups: GroupSet | None = None
    group_stats: GroupStats | None = None
    group_of: dict[int, int] = {}
    if need_groups:
        groups = detect_groups(samples_by_ped)
        group_stats = summarize_groups(groups)
        for group in groups.groups:
            for member in group.member_ids:
                group_of[member] = group.id

    ocean: dict[int, OceanProfile] | None = None
    emotion_profiles: dict[int, EmotionProfile] | None = None
    if need_psyche:
        registry = (
            load_registry(config.items_file)
            if config.items_file is not None
            else default_registry()
        )
        ocean = ocean_profiles(features, registry)
        emotion_profiles = {
            ped_id: emotions_from_ocean(profile) for ped_id, profile in ocean.items()
        }

    hofstede: HofstedeProfile | None = None
    if need_culture:
        assert groups is not None
        total = len(features)
        population_orientation = math.fsum(
            orientation_score(v.mean_angular_variation) for v in features.values()
        ) / total
        population_speed = math.fsum(
            speed_score(v.mean_speed_mps) for v in features.values()
        ) / total
        hofstede = hofstede_profile(
            groups, total, population_orientation, population_speed
        )

    return VideoSummary(
        video_name=config.video_name,
        fps=config.fps,
        pixels_per_meter=config.pixels_per_meter,
        frame_count=dataset.frame_count,
        pedestrian_count=len(dataset.tracks),
        dataset=dataset,
        pixel_dataset=pixel_dataset,
        frame_states=frame_states,
        features=features,
        groups=groups,
        group_stats=group_stats,
        group_of=group_of,
        ocean=ocean,
        emotions=emotion_profiles,
        hofstede=hofstede,
    )
