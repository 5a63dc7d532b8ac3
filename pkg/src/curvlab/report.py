"""JSON-compatible report rendering for verdicts and profiles.

All rationals appear as "a/b" strings; serialization is canonical
(sorted keys) so identical inputs give byte-identical reports.
"""

from __future__ import annotations

import json

from .grassmann import PlaneFrame
from .io import rat_to_str
from .spectral import JordanProfile
from .verify import IpProfile, MetricCheckReport, Theorem14Report, Theorem15Report, Verdict

__all__ = [
    "profile_to_dict",
    "frame_to_list",
    "verdict_to_dict",
    "metric_report_to_dict",
    "theorem14_to_dict",
    "theorem15_to_dict",
    "to_json",
    "render_text",
]


def frame_to_list(fr: PlaneFrame) -> list:
    return [[rat_to_str(x) for x in v] for v in fr.vectors]


def profile_to_dict(profile) -> dict:
    if isinstance(profile, IpProfile):
        out = profile_to_dict(profile.square)
        out["raw_power_ranks"] = list(profile.raw_power_ranks)
        return out
    if isinstance(profile, JordanProfile):
        return {
            "charpoly": [rat_to_str(c) for c in profile.charpoly.coeffs],
            "power_ranks": list(profile.power_ranks),
            "eigen_ranks": {
                rat_to_str(lam): list(ranks) for lam, ranks in profile.eigen_ranks
            },
            "square_eigen_ranks": {
                rat_to_str(lam): list(ranks) for lam, ranks in profile.square_eigen_ranks
            },
        }
    raise TypeError(f"unknown profile type {type(profile)!r}")


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "property": v.property,
        "holds": v.holds,
        "samples": v.samples,
        "seed": v.seed,
        "reference_profile": profile_to_dict(v.reference_profile),
        "witnesses": [
            {"frame": frame_to_list(fr), "profile": profile_to_dict(prof)}
            for fr, prof in v.witnesses
        ],
        "notes": list(v.notes),
    }


def metric_report_to_dict(r: MetricCheckReport) -> dict:
    return {
        "property": r.property,
        "holds": r.all_hold,
        "cross_point_consistent": r.cross_point_consistent,
        "seed": r.seed,
        "points": [
            {
                "point": [rat_to_str(x) for x in pr.point],
                "verdict": verdict_to_dict(pr.verdict),
            }
            for pr in r.points
        ],
        "notes": list(r.notes),
    }


def theorem14_to_dict(r: Theorem14Report) -> dict:
    return {
        "ok": r.ok,
        "identity_ok": r.identity_ok,
        "square_identity_ok": r.square_identity_ok,
        "stanilov": verdict_to_dict(r.stanilov),
        "samples": r.samples,
        "notes": list(r.notes),
    }


def theorem15_to_dict(r: Theorem15Report) -> dict:
    return {
        "theta_charpoly_constant": r.theta_charpoly_constant,
        "square_charpoly_constant": r.square_charpoly_constant,
        "bridge_ok": r.bridge_ok,
        "coherent": r.coherent,
        "samples": r.samples,
        "notes": list(r.notes),
    }


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def render_text(doc: dict, indent: int = 0) -> str:
    """Human-readable rendering of a report dictionary."""
    pad = "  " * indent
    lines: list[str] = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(render_text(item, indent + 1))
                lines.append(f"{pad}  -")
            lines.pop()
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)
