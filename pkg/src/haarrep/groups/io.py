"""Reading and writing groups as JSON."""

from __future__ import annotations

import json
from pathlib import Path

from .core import FiniteGroup, GroupError
from .named import group_from_generators, make_named


def group_to_dict(G: FiniteGroup) -> dict:
    return {"name": G.name, "kind": "table", "order": G.order, "labels": G.labels, "mul": G.mul}


def group_from_dict(d: dict) -> FiniteGroup:
    kind = d.get("kind")
    if kind == "table":
        G = FiniteGroup(d["mul"], d.get("labels"), name=d.get("name", ""))
    elif kind == "permutation":
        G = group_from_generators(d["degree"], d.get("generators", []), name=d.get("name", ""))
    elif kind == "presentation":
        G = make_named({"family": d["family"], "params": d.get("params", [])})
        if d.get("name"):
            G.name = d["name"]
    else:
        raise GroupError(f"unknown group kind {kind!r}")
    if "order" in d and d["order"] != G.order:
        raise GroupError(f"declared order {d['order']} but the group has order {G.order}")
    return G


def load_group(path: str | Path) -> FiniteGroup:
    text = Path(path).read_text()
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return group_from_dict(d)


def save_group(G: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(json.dumps(group_to_dict(G)) + "\n")
