"""JSON and DOT artifacts.

Halfspaces in reports are ``[class_id, sign]``. They resolve against the
``theta`` table of the ball artifact: sign +1 is the side of the class that
contains the second endpoint of its listed edge.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import InputError
from .median_core import CubeBall

SCHEMA_VERSION = 1

_PALETTE = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e",
            "#e6ab02", "#a6761d", "#666666", "#1f78b4", "#b2df8a"]


def _plain(x):
    """Recursively convert numpy and Fraction values into JSON-friendly ones."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_plain(v) for v in items]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return _plain(x.to_json())
    return x


def ball_to_json(ball: CubeBall, with_theta=True) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": ball.kind,
        "vertices": [{"id": i, "label": l} for i, l in enumerate(ball.labels)],
        "edges": [[int(a), int(b), lab] for a, b, lab in zip(ball.eu, ball.ev, ball.edge_labels)],
        "base": ball.base,
        "radius": ball.radius,
        "squares": [list(sq) for sq in ball.squares],
        "median_host": ball.median_host,
        "exact": ball.exact,
    }
    if ball.payload is not None:
        doc["payload"] = _plain(ball.payload)
    if with_theta:
        theta = []
        for c in ball.theta:
            e = c.edges[0]
            a, b = int(ball.eu[e]), int(ball.ev[e])
            if not c.plus[b]:
                a, b = b, a
            theta.append({"id": c.id, "edge": [a, b], "size": len(c.edges)})
        doc["theta"] = theta
    meta = {}
    for k, v in ball.meta.items():
        if k == "affine":
            meta[k] = v.to_json()
        else:
            meta[k] = _plain(v)
    doc["meta"] = meta
    return doc


def ball_from_json(doc) -> CubeBall:
    try:
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise InputError(f"unsupported schema version {doc.get('schema_version')!r}")
        labels = [v["label"] for v in sorted(doc["vertices"], key=lambda v: v["id"])]
        payload = doc.get("payload")
        if payload is not None:
            payload = [tuple(p) if isinstance(p, list) else p for p in payload]
        ball = CubeBall(labels, doc["edges"], base=doc["base"], radius=doc.get("radius"),
                        squares=doc.get("squares", ()), payload=payload,
                        median_host=doc.get("median_host", False), exact=doc.get("exact", False),
                        kind=doc.get("kind", ""))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad ball document: {exc}") from None
    meta = dict(doc.get("meta", {}))
    if "action" in meta:
        meta["action"] = {k: np.array(v, dtype=np.int64) for k, v in meta["action"].items()}
    if "affine" in meta:
        from .builders.tilings import AffineAction
        meta["affine"] = AffineAction.from_json(meta["affine"])
    ball.meta.update(meta)
    if ball.kind.startswith("tiling:"):
        from .builders.tilings import _install_box_theta
        _install_box_theta(ball, len(ball.payload[0]), int(meta["halfwidth"]))
    return ball


def report(command: str, config: dict, certification: dict, result, timing=None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "config": _plain(config),
        "certification": _plain(certification),
        "result": _plain(result),
    }
    if timing is not None:
        doc["timing"] = _plain(timing)
    return doc


def dumps(doc) -> str:
    return json.dumps(_plain(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(ball: CubeBall, members=(), halfspaces=(), name="ball") -> str:
    """DOT text with edges coloured by Θ-class.

    ``members`` are drawn filled; each halfspace in ``halfspaces`` gets its
    wall drawn thick in red.
    """
    members = set(int(m) for m in members)
    marked = {int(c) for c, _ in halfspaces}
    lines = [f"graph {_q(name)} {{", "  node [shape=circle, fontsize=8];"]
    for i, l in enumerate(ball.labels):
        style = ', style=filled, fillcolor="#fdd49e"' if i in members else ""
        lines.append(f"  {i} [label={_q(l)}{style}];")
    cls = ball.edge_class
    for e in range(ball.m):
        c = int(cls[e])
        if c in marked:
            attr = 'color="#e31a1c", penwidth=3'
        else:
            attr = f'color="{_PALETTE[c % len(_PALETTE)]}"'
        lines.append(f"  {int(ball.eu[e])} -- {int(ball.ev[e])} [{attr}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
