"""Pedestrian trajectory analytics.

Turns plain-text tracking files into four report layers: physical
motion, social behaviour with group structure, personality and emotion
profiles, and video-level cultural dimensions. See the README for the
file formats and the CLI.
"""
from .config import AnalysisConfig
from .culture import HofstedeProfile, hofstede_profile
from .emotions import EmotionProfile, emotions_from_ocean
from .groups import GroupLinkParams, GroupSet, detect_groups
from .kinematics import FeatureVector, KinematicSample, per_frame_kinematics, summarize_track
from .personality import OceanProfile, default_registry, load_registry, ocean_profiles
from .pipeline import VideoSummary, default_socialization_net, run_pipeline
from .report import write_reports
from .scg import ScgParams
from .social import collectivity, frame_social_features, pair_dissimilarity
from .socialization import (
    SocializationNet,
    load_net,
    save_net,
    socialization_level,
    synthesize_dataset,
    train_socialization_net,
)
from .synth import GroundTruth, ScenarioSpec, generate, write_scenario
from .tracking import (
    PedestrianTrack,
    TrackingDataset,
    TrackPoint,
    parse_tracking,
    resolve_input,
    to_world_coords,
    write_tracking,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "EmotionProfile",
    "FeatureVector",
    "GroundTruth",
    "GroupLinkParams",
    "GroupSet",
    "HofstedeProfile",
    "KinematicSample",
    "OceanProfile",
    "PedestrianTrack",
    "ScenarioSpec",
    "ScgParams",
    "SocializationNet",
    "TrackPoint",
    "TrackingDataset",
    "VideoSummary",
    "collectivity",
    "default_registry",
    "default_socialization_net",
    "detect_groups",
    "emotions_from_ocean",
    "frame_social_features",
    "generate",
    "hofstede_profile",
    "load_net",
    "load_registry",
    "ocean_profiles",
    "pair_dissimilarity",
    "parse_tracking",
    "per_frame_kinematics",
    "resolve_input",
    "run_pipeline",
    "save_net",
    "socialization_level",
    "summarize_track",
    "synthesize_dataset",
    "to_world_coords",
    "train_socialization_net",
    "write_reports",
    "write_scenario",
    "write_tracking",
    "__version__",
]
