"""Output files: per-frame table, dimension summaries, charts, overlay.

Text values are written with 6 significant digits. Every file goes
through a temp-then-rename step, so an interrupted run never leaves a
half-written file under its final name. Chart output produces both the
CSV data series and a rendered PNG figure.
"""
from __future__ import annotations

import math
import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .config import (
    DIM_CULTURAL,
    DIM_PERSONAL_EMOTIONAL,
    DIM_PHYSICAL,
    DIM_SOCIAL,
    KIND_CHART,
    KIND_OVERLAY,
    KIND_TEXT,
    AnalysisConfig,
)
from .pipeline import FrameState, VideoSummary

ALL_FEATURES_COLUMNS = (
    "frame",
    "pedId",
    "x",
    "y",
    "speed",
    "speedMps",
    "heading",
    "angvar",
    "collectivity",
    "socialization",
    "isolation",
    "neighborCount",
    "groupId",
    "ocean_O",
    "ocean_C",
    "ocean_E",
    "ocean_A",
    "ocean_N",
    "emo_fear",
    "emo_happiness",
    "emo_sadness",
    "emo_anger",
)

HOFSTEDE_ORDER = ("COL", "IDV", "PDI", "LTO", "STO", "MAS", "IND")


def fmt(value: float) -> str:
    """6 significant digits, the shared numeric format of all outputs."""
    return f"{value:.6g}"


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def _save_figure_atomic(figure, path: Path) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        figure.savefig(tmp, format="png", dpi=100)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    finally:
        plt.close(figure)


def _states_by_frame(summary: VideoSummary) -> dict[int, dict[int, FrameState]]:
    by_frame: dict[int, dict[int, FrameState]] = {}
    for ped_id, states in summary.frame_states.items():
        for state in states:
            by_frame.setdefault(state.sample.frame, {})[ped_id] = state
    return by_frame


def write_all_features(summary: VideoSummary, config: AnalysisConfig) -> Path:
    """The wide per-frame table, one row per pedestrian per sampled frame.

    Frames are sampled at multiples of ``output_every_n``; rows are
    ordered by frame, then pedestrian id. Ungrouped pedestrians carry a
    group id of -1.
    """
    if summary.ocean is None or summary.emotions is None:
        raise ValueError("the all-features table needs every layer computed")
    lines = [" ".join(ALL_FEATURES_COLUMNS)]
    by_frame = _states_by_frame(summary)
    for frame in sorted(by_frame):
        if frame % config.output_every_n != 0:
            continue
        for ped_id in sorted(by_frame[frame]):
            state = by_frame[frame][ped_id]
            sample = state.sample
            ocean = summary.ocean[ped_id]
            emotion = summary.emotions[ped_id]
            assert state.socialization is not None
            socialization = state.socialization
            values = [
                str(frame),
                str(ped_id),
                fmt(sample.x),
                fmt(sample.y),
                fmt(sample.speed),
                fmt(sample.speed_mps),
                fmt(sample.heading),
                fmt(sample.angular_variation),
                fmt(state.collectivity),
                fmt(socialization),
                fmt(1.0 - socialization),
                str(state.neighbor_count),
                str(summary.group_of.get(ped_id, -1)),
                fmt(ocean.openness),
                fmt(ocean.conscientiousness),
                fmt(ocean.extraversion),
                fmt(ocean.agreeableness),
                fmt(ocean.neuroticism),
                fmt(emotion.fear),
                fmt(emotion.happiness),
                fmt(emotion.sadness),
                fmt(emotion.anger),
            ]
            lines.append(" ".join(values))
    path = config.output_dir / f"{summary.video_name}_all_features_frame.txt"
    _write_atomic(path, "\n".join(lines) + "\n")
    return path


def _physical_summary_text(summary: VideoSummary) -> str:
    lines = [
        f"video {summary.video_name}",
        f"frames {summary.frame_count}",
        f"pedestrians {summary.pedestrian_count}",
        f"fps {fmt(summary.fps)}",
        "",
        "pedId meanSpeed meanSpeedMps meanAngVar pathLength netDisplacement"
        " speedStdDev headingStdDev meanDistToOthers",
    ]
    for ped_id in sorted(summary.features):
        v = summary.features[ped_id]
        lines.append(
            " ".join(
                [
                    str(ped_id),
                    fmt(v.mean_speed),
                    fmt(v.mean_speed_mps),
                    fmt(v.mean_angular_variation),
                    fmt(v.path_length),
                    fmt(v.net_displacement),
                    fmt(v.speed_std_dev),
                    fmt(v.heading_std_dev),
                    fmt(v.mean_distance_to_others),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _social_summary_text(summary: VideoSummary) -> str:
    stats = summary.group_stats
    lines = [
        f"video {summary.video_name}",
        f"groups {stats.group_count}",
        f"groupedPedestrians {stats.grouped_count}",
        f"ungroupedPedestrians {stats.ungrouped_count}",
        f"meanGroupSize {fmt(stats.mean_size)}",
        f"meanGroupCohesion {fmt(stats.mean_cohesion)}",
        f"meanGroupArea {fmt(stats.mean_area)}",
        f"meanGroupDistance {fmt(stats.mean_distance)}",
        "",
        "groupId members meanDistance cohesion meanArea orientationScore speedScore",
    ]
    for group in summary.groups.groups:
        members = ",".join(str(m) for m in sorted(group.member_ids))
        lines.append(
            " ".join(
                [
                    str(group.id),
                    members,
                    fmt(group.mean_distance),
                    fmt(group.cohesion),
                    fmt(group.mean_area),
                    fmt(group.orientation_score),
                    fmt(group.speed_score),
                ]
            )
        )
    lines.append("")
    lines.append("pedId collectivity socialization isolation meanNeighbors groupId")
    for ped_id in sorted(summary.features):
        v = summary.features[ped_id]
        lines.append(
            " ".join(
                [
                    str(ped_id),
                    fmt(v.collectivity),
                    fmt(v.socialization),
                    fmt(v.isolation),
                    fmt(v.mean_neighbor_count),
                    str(summary.group_of.get(ped_id, -1)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _personal_summary_text(summary: VideoSummary) -> str:
    lines = [
        f"video {summary.video_name}",
        "",
        "pedId ocean_O ocean_C ocean_E ocean_A ocean_N"
        " emo_fear emo_happiness emo_sadness emo_anger",
    ]
    for ped_id in sorted(summary.ocean):
        o = summary.ocean[ped_id]
        e = summary.emotions[ped_id]
        lines.append(
            " ".join(
                [
                    str(ped_id),
                    fmt(o.openness),
                    fmt(o.conscientiousness),
                    fmt(o.extraversion),
                    fmt(o.agreeableness),
                    fmt(o.neuroticism),
                    fmt(e.fear),
                    fmt(e.happiness),
                    fmt(e.sadness),
                    fmt(e.anger),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _cultural_summary_text(summary: VideoSummary) -> str:
    profile = summary.hofstede
    lines = [f"video {summary.video_name}"]
    for key, value in profile.as_dict().items():
        lines.append(f"{key} {fmt(value)}")
    lines.append(f"groupFallback {'yes' if profile.group_fallback else 'no'}")
    return "\n".join(lines) + "\n"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    out = [",".join(header)]
    out.extend(",".join(row) for row in rows)
    return "\n".join(out) + "\n"


def _per_frame_series(summary: VideoSummary, attribute: str) -> tuple[list[float], list[int]]:
    by_frame = _states_by_frame(summary)
    means: list[float] = []
    counts: list[int] = []
    for frame in range(summary.frame_count):
        states = by_frame.get(frame)
        if not states:
            means.append(0.0)
            counts.append(0)
            continue
        if attribute == "speed_mps":
            values = [s.sample.speed_mps for s in states.values()]
        else:
            values = [s.collectivity for s in states.values()]
        means.append(math.fsum(values) / len(values))
        counts.append(len(states))
    return means, counts


def _write_series_chart(
    summary: VideoSummary,
    config: AnalysisConfig,
    attribute: str,
    stem: str,
    column: str,
    ylabel: str,
) -> list[Path]:
    means, counts = _per_frame_series(summary, attribute)
    rows = [
        [str(frame), fmt(means[frame]), str(counts[frame])]
        for frame in range(summary.frame_count)
    ]
    csv_path = config.output_dir / f"{summary.video_name}_{stem}.csv"
    _write_atomic(csv_path, _csv_text(["frame", column, "presentCount"], rows))

    figure, axis = plt.subplots(figsize=(8, 4))
    axis.plot(range(summary.frame_count), means, lw=1.2)
    axis.set_xlabel("frame")
    axis.set_ylabel(ylabel)
    axis.set_title(f"{summary.video_name}: {ylabel} per frame")
    figure.tight_layout()
    png_path = config.output_dir / f"{summary.video_name}_{stem}.png"
    _save_figure_atomic(figure, png_path)
    return [csv_path, png_path]


def _write_profile_chart(
    summary: VideoSummary,
    config: AnalysisConfig,
    stem: str,
    labels: tuple[str, ...],
    values_of: dict[int, list[float]],
    ylabel: str,
) -> list[Path]:
    ped_ids = sorted(values_of)
    rows = [
        [str(ped_id)] + [fmt(v) for v in values_of[ped_id]] for ped_id in ped_ids
    ]
    csv_path = config.output_dir / f"{summary.video_name}_{stem}.csv"
    _write_atomic(csv_path, _csv_text(["pedId", *labels], rows))

    figure, axis = plt.subplots(figsize=(max(6, len(ped_ids) * 0.9), 4))
    width = 0.8 / len(labels)
    for offset, label in enumerate(labels):
        xs = [i + offset * width for i in range(len(ped_ids))]
        axis.bar(xs, [values_of[p][offset] for p in ped_ids], width=width, label=label)
    axis.set_xticks([i + 0.4 - width / 2 for i in range(len(ped_ids))])
    axis.set_xticklabels([f"P{p}" for p in ped_ids])
    axis.set_ylabel(ylabel)
    axis.set_ylim(0.0, 1.0)
    axis.set_title(f"{summary.video_name}: {ylabel}")
    axis.legend(ncol=len(labels), fontsize="small")
    figure.tight_layout()
    png_path = config.output_dir / f"{summary.video_name}_{stem}.png"
    _save_figure_atomic(figure, png_path)
    return [csv_path, png_path]


def _write_hofstede_chart(summary: VideoSummary, config: AnalysisConfig) -> list[Path]:
    profile = summary.hofstede.as_dict()
    rows = [[key, fmt(profile[key])] for key in HOFSTEDE_ORDER]
    csv_path = config.output_dir / f"{summary.video_name}_hofstede_chart.csv"
    _write_atomic(csv_path, _csv_text(["dimension", "value"], rows))

    figure, axis = plt.subplots(figsize=(7, 4))
    axis.bar(range(len(HOFSTEDE_ORDER)), [profile[k] for k in HOFSTEDE_ORDER])
    axis.set_xticks(range(len(HOFSTEDE_ORDER)))
    axis.set_xticklabels(HOFSTEDE_ORDER)
    axis.set_ylim(0.0, 100.0)
    axis.set_ylabel("score")
    axis.set_title(f"{summary.video_name}: cultural dimensions")
    figure.tight_layout()
    png_path = config.output_dir / f"{summary.video_name}_hofstede_chart.png"
    _save_figure_atomic(figure, png_path)
    return [csv_path, png_path]


def write_overlay(summary: VideoSummary, config: AnalysisConfig) -> Path:
    """Pixel-space positions with display labels for external renderers."""
    rows: list[tuple[int, int, float, float]] = []
    for ped_id, track in summary.pixel_dataset.tracks.items():
        for point in track.points:
            rows.append((point.frame, ped_id, point.x, point.y))
    rows.sort()
    body = [
        ",".join([str(frame), str(ped_id), fmt(x), fmt(y), f"P{ped_id}"])
        for frame, ped_id, x, y in rows
    ]
    path = config.output_dir / f"{summary.video_name}_overlay.csv"
    _write_atomic(
        path, "\n".join([",".join(["frame", "pedId", "x_px", "y_px", "label"]), *body]) + "\n"
    )
    return path


def write_reports(summary: VideoSummary, config: AnalysisConfig) -> list[Path]:
    """Write every selected output and return the paths in write order."""
    config.output_dir.mkdir(parents=True, exist_ok=True)
    paths: list[Path] = []
    text = KIND_TEXT in config.output_kinds
    chart = KIND_CHART in config.output_kinds

    if DIM_PHYSICAL in config.dimensions:
        if text:
            path = config.output_dir / f"{summary.video_name}_physical_summary.txt"
            _write_atomic(path, _physical_summary_text(summary))
            paths.append(path)
        if chart:
            paths.extend(
                _write_series_chart(
                    summary, config, "speed_mps", "speed_chart", "meanSpeedMps", "mean speed (m/s)"
                )
            )
    if DIM_SOCIAL in config.dimensions:
        if text:
            path = config.output_dir / f"{summary.video_name}_social_summary.txt"
            _write_atomic(path, _social_summary_text(summary))
            paths.append(path)
        if chart:
            paths.extend(
                _write_series_chart(
                    summary,
                    config,
                    "collectivity",
                    "collectivity_chart",
                    "meanCollectivity",
                    "mean collectivity",
                )
            )
    if DIM_PERSONAL_EMOTIONAL in config.dimensions:
        if text:
            path = config.output_dir / f"{summary.video_name}_personal_emotional_summary.txt"
            _write_atomic(path, _personal_summary_text(summary))
            paths.append(path)
        if chart:
            ocean_values = {
                ped_id: [p.openness, p.conscientiousness, p.extraversion, p.agreeableness, p.neuroticism]
                for ped_id, p in summary.ocean.items()
            }
            paths.extend(
                _write_profile_chart(
                    summary, config, "ocean_chart", ("O", "C", "E", "A", "N"), ocean_values, "factor score"
                )
            )
            emotion_values = {
                ped_id: [e.fear, e.happiness, e.sadness, e.anger]
                for ped_id, e in summary.emotions.items()
            }
            paths.extend(
                _write_profile_chart(
                    summary,
                    config,
                    "emotion_chart",
                    ("fear", "happiness", "sadness", "anger"),
                    emotion_values,
                    "emotion score",
                )
            )
    if DIM_CULTURAL in config.dimensions:
        if text:
            path = config.output_dir / f"{summary.video_name}_cultural_summary.txt"
            _write_atomic(path, _cultural_summary_text(summary))
            paths.append(path)
        if chart:
            paths.extend(_write_hofstede_chart(summary, config))

    if KIND_OVERLAY in config.output_kinds:
        paths.append(write_overlay(summary, config))
    if config.all_features:
        paths.append(write_all_features(summary, config))
    return paths
