"""JSON reading and writing for categories, Reedy categories, functors,
complexes, maps, diagrams, diagram maps and set presheaves.

Every reader rejects unknown fields.  Wherever a category, complex or
diagram is expected, a string is read as a path relative to the file that
contains it.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from . import chainlab as ch
from .chainlab import ChainComplex, ChainMap
from .diagram.core import COVARIANT, PRESHEAF, Diagram, DiagramMap, SetPresheaf, shape_of
from .fincat import FiniteCategory, FunctorData
from .reedy import ReedyCategory, ReedyFunctor


class FormatError(ValueError):
    """Malformed or unrecognised input file."""


CATEGORY_FIELDS = {"objects", "morphisms", "identities", "compose"}
REEDY_FIELDS = CATEGORY_FIELDS | {"degree", "raise", "lower", "factorization"}
FUNCTOR_FIELDS = {"source", "target", "object_map", "morphism_map"}
COMPLEX_FIELDS = {"p", "dims", "d"}
MAP_FIELDS = {"src", "dst", "components"}
DIAGRAM_FIELDS = {"index", "variance", "objects", "morphisms"}
PRESHEAF_FIELDS = {"index", "variance", "sets", "maps"}


def _check_fields(data: Any, allowed: set, required: set, what: str) -> None:
    if not isinstance(data, dict):
        raise FormatError(f"{what}: expected a JSON object")
    unknown = set(data) - allowed
    if unknown:
        raise FormatError(f"{what}: unknown fields {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise FormatError(f"{what}: missing fields {sorted(missing)}")


def _str_list(x, what: str) -> list[str]:
    if not isinstance(x, list) or not all(isinstance(s, str) for s in x):
        raise FormatError(f"{what}: expected an array of strings")
    return list(x)


def _resolve(value, base: Path | None, reader, what: str):
    """Inline object, or a path string relative to ``base``."""
    if isinstance(value, str):
        path = (base / value) if base is not None else Path(value)
        return reader(load_json(path), path.parent, name=path.stem)
    return reader(value, base)


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: invalid JSON ({e})") from None


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- categories ------------------------------------------------------------------

def category_from_json(data, base: Path | None = None, name: str = "") -> FiniteCategory:
    _check_fields(data, CATEGORY_FIELDS, CATEGORY_FIELDS, "category")
    return _category(data, name)


def _category(data, name: str) -> FiniteCategory:
    objects = _str_list(data["objects"], "objects")
    morphisms = {}
    if not isinstance(data["morphisms"], list):
        raise FormatError("morphisms: expected an array")
    for m in data["morphisms"]:
        _check_fields(m, {"id", "src", "dst"}, {"id", "src", "dst"}, "morphism")
        if m["id"] in morphisms:
            raise FormatError(f"duplicate morphism id {m['id']!r}")
        morphisms[m["id"]] = (m["src"], m["dst"])
    identities = data["identities"]
    if not isinstance(identities, dict):
        raise FormatError("identities: expected an object")
    table = {}
    if not isinstance(data["compose"], list):
        raise FormatError("compose: expected an array")
    for e in data["compose"]:
        _check_fields(e, {"g", "f", "gf"}, {"g", "f", "gf"}, "compose entry")
        table[(e["g"], e["f"])] = e["gf"]
    # identity laws may be left implicit
    for f, (s, t) in morphisms.items():
        if t in identities:
            table.setdefault((identities[t], f), f)
        if s in identities:
            table.setdefault((f, identities[s]), f)
    try:
        return FiniteCategory(tuple(objects), morphisms, identities, table, name)
    except ValueError as e:
        raise FormatError(str(e)) from None


def category_to_json(c: FiniteCategory) -> dict:
    ids = set(c.identities.values())
    return {
        "objects": list(c.objects),
        "morphisms": [{"id": m, "src": s, "dst": t} for m, (s, t) in c.morphisms.items()],
        "identities": dict(c.identities),
        "compose": [{"g": g, "f": f, "gf": gf} for (g, f), gf in c.table.items()
                    if g not in ids and f not in ids],
    }


def reedy_from_json(data, base: Path | None = None, name: str = "") -> ReedyCategory:
    _check_fields(data, REEDY_FIELDS, REEDY_FIELDS - {"factorization"}, "Reedy category")
    c = _category(data, name)
    degree = data["degree"]
    if not isinstance(degree, dict):
        raise FormatError("degree: expected an object")
    raising = _str_list(data["raise"], "raise")
    lowering = _str_list(data["lower"], "lower")
    if "factorization" not in data:
        return ReedyCategory.from_classes(c, degree, raising, lowering)
    fact = {}
    if not isinstance(data["factorization"], dict):
        raise FormatError("factorization: expected an object")
    for m, e in data["factorization"].items():
        _check_fields(e, {"lower", "raise"}, {"lower", "raise"}, "factorization entry")
        fact[m] = (e["lower"], e["raise"])
    return ReedyCategory(c, degree, raising, lowering, fact)


def reedy_to_json(r: ReedyCategory) -> dict:
    out = category_to_json(r.base)
    out["degree"] = dict(r.degree)
    order = list(r.base.morphisms)
    out["raise"] = [m for m in order if m in r.raising]
    out["lower"] = [m for m in order if m in r.lowering]
    out["factorization"] = {m: {"lower": lo, "raise": ra} for m, (lo, ra) in r.factorization.items()}
    return out


def functor_from_json(data, base: Path | None = None, name: str = "") -> ReedyFunctor:
    _check_fields(data, FUNCTOR_FIELDS, FUNCTOR_FIELDS, "functor")
    src = _resolve(data["source"], base, reedy_from_json, "source")
    tgt = _resolve(data["target"], base, reedy_from_json, "target")
    if not isinstance(data["object_map"], dict) or not isinstance(data["morphism_map"], dict):
        raise FormatError("functor maps must be JSON objects")
    return ReedyFunctor(src, tgt, FunctorData(src.base, tgt.base, dict(data["object_map"]), dict(data["morphism_map"])))


def functor_to_json(f: ReedyFunctor, source=None, target=None) -> dict:
    """``source``/``target`` may be given as path strings; inline otherwise."""
    return {
        "source": source if source is not None else reedy_to_json(f.source),
        "target": target if target is not None else reedy_to_json(f.target),
        "object_map": dict(f.object_map),
        "morphism_map": dict(f.morphism_map),
    }


# -- complexes and maps ----------------------------------------------------------

def _matrix(x, rows: int, cols: int, p: int, what: str) -> np.ndarray:
    try:
        m = np.array(x, dtype=np.int64).reshape(rows, cols) if rows * cols else np.zeros((rows, cols), dtype=np.int64)
    except (ValueError, TypeError):
        raise FormatError(f"{what}: expected a {rows}x{cols} integer matrix") from None
    if rows * cols and (not isinstance(x, list) or len(x) != rows):
        raise FormatError(f"{what}: expected {rows} rows")
    return m % p


def _degree_dict(x, what: str) -> dict[int, Any]:
    if not isinstance(x, dict):
        raise FormatError(f"{what}: expected an object keyed by degree")
    try:
        return {int(k): v for k, v in x.items()}
    except ValueError:
        raise FormatError(f"{what}: degree keys must be integers") from None


def complex_from_json(data, base: Path | None = None, name: str = "") -> ChainComplex:
    _check_fields(data, COMPLEX_FIELDS, {"p", "dims"}, "complex")
    p = data["p"]
    if not isinstance(p, int) or p < 2:
        raise FormatError("p: expected a prime")
    dims = {n: int(k) for n, k in _degree_dict(data["dims"], "dims").items()}
    d = {}
    for n, m in _degree_dict(data.get("d", {}), "d").items():
        d[n] = _matrix(m, dims.get(n - 1, 0), dims.get(n, 0), p, f"d[{n}]")
    return ChainComplex(p, dims, d)


def complex_to_json(x: ChainComplex) -> dict:
    return {
        "p": x.p,
        "dims": {str(n): k for n, k in x.dims.items()},
        "d": {str(n): m.tolist() for n, m in x.d.items()},
    }


def map_from_json(data, base: Path | None = None, name: str = "", src=None, dst=None) -> ChainMap:
    required = MAP_FIELDS if src is None else {"components"}
    _check_fields(data, MAP_FIELDS, required, "map")
    if "src" in data:
        s = _resolve(data["src"], base, complex_from_json, "src")
        if src is not None and s != src:
            raise FormatError("map source disagrees with the diagram object")
        src = s
    if "dst" in data:
        t = _resolve(data["dst"], base, complex_from_json, "dst")
        if dst is not None and t != dst:
            raise FormatError("map target disagrees with the diagram object")
        dst = t
    comps = {n: _matrix(m, dst.dim(n), src.dim(n), src.p, f"components[{n}]")
             for n, m in _degree_dict(data["components"], "components").items()}
    return ChainMap(src, dst, comps)


def map_to_json(f: ChainMap, with_ends: bool = True) -> dict:
    out = {"components": {str(n): m.tolist() for n, m in f.comps.items()}}
    if with_ends:
        out["src"] = complex_to_json(f.src)
        out["dst"] = complex_to_json(f.dst)
    return out


# -- diagrams --------------------------------------------------------------------

def _variance(v) -> str:
    if v not in (COVARIANT, PRESHEAF):
        raise FormatError(f"variance must be {COVARIANT!r} or {PRESHEAF!r}")
    return v


def diagram_from_json(data, base: Path | None = None, name: str = "") -> Diagram:
    """Morphism entries are map objects whose ``src``/``dst`` may be omitted;
    missing identity morphisms are filled in."""
    _check_fields(data, DIAGRAM_FIELDS, DIAGRAM_FIELDS, "diagram")
    index = _resolve(data["index"], base, reedy_from_json, "index")
    var = _variance(data["variance"])
    shape = shape_of(index, var).base
    objs_raw = data["objects"]
    if not isinstance(objs_raw, dict) or set(objs_raw) != set(shape.objects):
        raise FormatError("objects: expected one complex per index object")
    objs = {a: _resolve(objs_raw[a], base, complex_from_json, f"objects[{a}]") for a in shape.objects}
    maps_raw = data["morphisms"]
    if not isinstance(maps_raw, dict) or not set(maps_raw) <= set(shape.morphisms):
        raise FormatError("morphisms: keys must be morphism ids of the index")
    maps = {}
    for m, (a, b) in shape.morphisms.items():
        if m in maps_raw:
            maps[m] = map_from_json(maps_raw[m], base, src=objs[a], dst=objs[b])
        elif shape.is_identity(m):
            maps[m] = ch.identity(objs[a])
        else:
            raise FormatError(f"morphisms: missing map for {m!r}")
    ps = {x.p for x in objs.values()} or {2}
    if len(ps) != 1:
        raise FormatError("objects live over different primes")
    return Diagram(index, var, objs, maps, ps.pop())


def diagram_to_json(x: Diagram, index=None) -> dict:
    shape = x.shape.base
    return {
        "index": index if index is not None else reedy_to_json(x.index),
        "variance": x.variance,
        "objects": {a: complex_to_json(c) for a, c in x.objects.items()},
        "morphisms": {m: map_to_json(f, with_ends=False) for m, f in x.maps.items() if not shape.is_identity(m)},
    }


def diagram_map_from_json(data, base: Path | None = None, name: str = "") -> DiagramMap:
    """``src``/``dst`` diagrams and ``components`` (object id -> map object)."""
    _check_fields(data, MAP_FIELDS, MAP_FIELDS, "diagram map")
    src = _resolve(data["src"], base, diagram_from_json, "src")
    dst = _resolve(data["dst"], base, diagram_from_json, "dst")
    comps_raw = data["components"]
    if not isinstance(comps_raw, dict) or set(comps_raw) != set(src.shape.objects):
        raise FormatError("components: expected one map per index object")
    comps = {a: map_from_json(comps_raw[a], base, src=src[a], dst=dst[a]) for a in src.shape.objects}
    return DiagramMap(src, dst, comps)


def diagram_map_to_json(phi: DiagramMap) -> dict:
    return {
        "src": diagram_to_json(phi.src),
        "dst": diagram_to_json(phi.dst),
        "components": {a: map_to_json(f, with_ends=False) for a, f in phi.comps.items()},
    }


def presheaf_from_json(data, base: Path | None = None, name: str = "") -> SetPresheaf:
    _check_fields(data, PRESHEAF_FIELDS, PRESHEAF_FIELDS, "set presheaf")
    index = _resolve(data["index"], base, reedy_from_json, "index")
    var = _variance(data["variance"])
    shape = shape_of(index, var).base
    sets = data["sets"]
    if not isinstance(sets, dict) or set(sets) != set(shape.objects):
        raise FormatError("sets: expected one array per index object")
    sets = {a: _str_list(sets[a], f"sets[{a}]") for a in shape.objects}
    maps = data["maps"]
    if not isinstance(maps, dict):
        raise FormatError("maps: expected an object")
    out = {}
    for m, (a, _) in shape.morphisms.items():
        if m in maps:
            if not isinstance(maps[m], dict):
                raise FormatError(f"maps[{m}]: expected an object")
            out[m] = dict(maps[m])
        elif shape.is_identity(m):
            out[m] = {e: e for e in sets[a]}
        else:
            raise FormatError(f"maps: missing function for {m!r}")
    return SetPresheaf(index, sets, out, var)


def presheaf_to_json(k: SetPresheaf, index=None) -> dict:
    shape = k.shape.base
    return {
        "index": index if index is not None else reedy_to_json(k.index),
        "variance": k.variance,
        "sets": {a: list(s) for a, s in k.sets.items()},
        "maps": {m: dict(f) for m, f in k.maps.items() if not shape.is_identity(m)},
    }


# -- dispatch by content ---------------------------------------------------------

KINDS = ("category", "reedy", "functor", "complex", "map", "diagram", "diagram-map", "presheaf")


def detect_kind(data: Any) -> str:
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object at top level")
    keys = set(data)
    if keys & {"degree", "raise", "lower", "factorization"}:
        return "reedy"
    if keys >= {"objects", "identities"}:
        return "category"
    if keys & {"object_map", "morphism_map"}:
        return "functor"
    if "sets" in keys:
        return "presheaf"
    if "variance" in keys:
        return "diagram"
    if "components" in keys:
        src = data.get("src")
        inner = src if isinstance(src, dict) else None
        comps = data["components"]
        if inner is not None and "variance" in inner:
            return "diagram-map"
        if isinstance(comps, dict) and comps and all(isinstance(v, dict) and "components" in v for v in comps.values()):
            return "diagram-map"
        return "map"
    if "p" in keys:
        return "complex"
    raise FormatError(f"unrecognised file with fields {sorted(keys)}")


READERS = {
    "category": category_from_json,
    "reedy": reedy_from_json,
    "functor": functor_from_json,
    "complex": complex_from_json,
    "map": map_from_json,
    "diagram": diagram_from_json,
    "diagram-map": diagram_map_from_json,
    "presheaf": presheaf_from_json,
}


def read_any(path: str | Path) -> tuple[str, Any]:
    path = Path(path)
    data = load_json(path)
    kind = detect_kind(data)
    try:
        return kind, READERS[kind](data, path.parent, name=path.stem)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"{path}: {e}") from None


def read(path: str | Path, kind: str) -> Any:
    path = Path(path)
    try:
        return READERS[kind](load_json(path), path.parent, name=path.stem)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"{path}: {e}") from None


def write(path: str | Path, data: Mapping) -> None:
    Path(path).write_text(dumps(data), encoding="utf-8")
