"""JSON artifacts for codes, byte-stable across runs."""

from __future__ import annotations

import json
from pathlib import Path

from .field import field_from_json
from .nesting import MappedCode, linmap_from_json
from .orbits import CyclicCode, OrbitRep, stabilizer_degree
from .subspaces import from_json as subspace_from_json


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":")) + "\n"


def code_to_json(code: CyclicCode | MappedCode) -> dict:
    if isinstance(code, MappedCode):
        code = code.as_cyclic()
    return code.to_json()


def write_code(code, path: str | Path) -> None:
    Path(path).write_text(dumps(code_to_json(code)))


def code_from_json(obj: dict) -> CyclicCode:
    ctx = field_from_json(obj["field"])
    reps = []
    for r in obj["reps"]:
        V = subspace_from_json(ctx, r)
        t = stabilizer_degree(V)
        if "stab_degree" in r and r["stab_degree"] != t:
            raise ValueError(f"stored stabilizer degree {r['stab_degree']} differs from measured {t}")
        phi = linmap_from_json(ctx, r["map"]) if "map" in r else None
        if phi is not None and phi.image() != V:
            raise ValueError("stored map does not have the stored representative as image")
        reps.append(OrbitRep(V, t, phi, tuple(_freeze(r.get("label", [])))))
    return CyclicCode(
        ctx,
        obj["k"],
        reps,
        m=obj.get("m", ctx.n),
        provenance=obj.get("provenance", {}),
        predicted_size=obj.get("predicted_size"),
        predicted_min_distance=obj.get("predicted_min_distance"),
    )


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(v) for v in x)
    return x


def read_code(path: str | Path) -> CyclicCode:
    return code_from_json(json.loads(Path(path).read_text()))
