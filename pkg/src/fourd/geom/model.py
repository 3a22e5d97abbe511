"""Layered 2D geometry with attribute records.

A layer groups features of one geometry kind (point / polyline / polygon)
and carries a field schema.  Features link to schedule activities through
the ``Activity_ID`` attribute and to extrusion through ``Base_Height`` and
``Feature_Height``.

Layer files are JSON (see ``parse_layer_file`` / ``serialize_layer``);
serialization is canonical so that parse -> serialize round-trips are
byte-identical.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from fourd.errors import LayerError
from fourd.geom import kernels

Point = tuple[float, float]
Ring = tuple[Point, ...]            # closed: first vertex repeated at the end
PolygonPart = tuple[Ring, ...]      # rings[0] outer (CCW), rest holes (CW)

GEOMETRY_KINDS = ("point", "polyline", "polygon")
FIELD_TYPES = ("string", "number")
REQUIRED_FIELDS = ("Activity_ID", "Base_Height", "Feature_Height")

# vertex-snapping / collinearity tolerance, in meters
DEFAULT_EPSILON = 1e-6


@dataclass(frozen=True)
class Geometry:
    """A point, polyline, or polygon, possibly multipart.

    ``parts`` holds, per kind:
      point    -- tuple of (x, y)
      polyline -- tuple of paths, each a tuple of >= 2 (x, y)
      polygon  -- tuple of ring groups, each ``(outer, hole, ...)`` with
                  closed rings, outer CCW and holes CW
    """

    kind: str
    parts: tuple

    @property
    def is_multipart(self) -> bool:
        return len(self.parts) > 1


@dataclass(frozen=True)
class FieldDef:
    name: str
    type: str  # "string" | "number"


@dataclass(frozen=True)
class Feature:
    geometry: Geometry
    attributes: dict


@dataclass(frozen=True)
class Layer:
    name: str
    geometry_kind: str
    fields: tuple[FieldDef, ...]
    features: tuple[Feature, ...] = field(default_factory=tuple)

    def field_names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.fields)


@dataclass(frozen=True)
class Measurements:
    """Geometry-derived dimensions; zero where not applicable to the kind."""

    area: float = 0.0
    perimeter: float = 0.0
    length: float = 0.0
    count: int = 0


def flat_ring(ring: Ring) -> list[float]:
    out: list[float] = []
    for x, y in ring:
        out.append(x)
        out.append(y)
    return out


def ring_signed_area(ring: Ring) -> float:
    return kernels.ring_signed_area(flat_ring(ring))


def orient_ring(ring: Ring, ccw: bool) -> Ring:
    area = ring_signed_area(ring)
    if (area > 0.0) != ccw and area != 0.0:
        return tuple(reversed(ring))
    return ring


def normalize_polygon_part(rings) -> PolygonPart:
    """Orient ring 0 CCW and the remaining rings CW."""
    out = [orient_ring(tuple(rings[0]), ccw=True)]
    for hole in rings[1:]:
        out.append(orient_ring(tuple(hole), ccw=False))
    return tuple(out)


# ---------------------------------------------------------------------------
# validation

def _check_finite(values, what: str) -> None:
    for v in values:
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise LayerError(f"{what}: coordinates must be finite numbers")


def _proper_crossing(a0: Point, a1: Point, b0: Point, b1: Point) -> bool:
    """True when the open interiors of two segments cross transversally."""
    dax = a1[0] - a0[0]
    day = a1[1] - a0[1]
    dbx = b1[0] - b0[0]
    dby = b1[1] - b0[1]
    den = dax * dby - day * dbx
    if den == 0.0:
        return False
    ex = b0[0] - a0[0]
    ey = b0[1] - a0[1]
    t = (ex * dby - ey * dbx) / den
    u = (ex * day - ey * dax) / den
    lim = 1e-12
    return lim < t < 1.0 - lim and lim < u < 1.0 - lim


def _validate_ring(ring, what: str) -> Ring:
    pts = tuple((float(x), float(y)) for x, y in (tuple(p) for p in ring))
    _check_finite([c for p in pts for c in p], what)
    if len(pts) < 4:
        raise LayerError(f"{what}: ring needs at least 4 stored vertices, got {len(pts)}")
    fx, fy = pts[0]
    lx, ly = pts[-1]
    if abs(fx - lx) > 1e-9 or abs(fy - ly) > 1e-9:
        raise LayerError(f"{what}: unclosed ring (first vertex must equal last)")
    pts = pts[:-1] + (pts[0],)
    seen = set()
    for p in pts[:-1]:
        if p in seen:
            raise LayerError(f"{what}: repeated vertex {p} in ring")
        seen.add(p)
    if abs(ring_signed_area(pts)) < 1e-12:
        raise LayerError(f"{what}: zero-area ring")
    segs: list[float] = []
    for i in range(len(pts) - 1):
        segs.extend((pts[i][0], pts[i][1], pts[i + 1][0], pts[i + 1][1]))
    splits = kernels.segment_split_params(segs, 1e-9)
    if any(splits):
        raise LayerError(f"{what}: self-intersecting ring")
    return pts


def _validate_polygon_part(rings, what: str) -> PolygonPart:
    if not rings:
        raise LayerError(f"{what}: polygon part has no rings")
    validated = [_validate_ring(r, what) for r in rings]
    part = normalize_polygon_part(validated)
    outer_flat = flat_ring(part[0])
    for hi, hole in enumerate(part[1:], start=1):
        for p in hole[:-1]:
            if kernels.point_in_ring(p[0], p[1], outer_flat, 1e-12) != 1:
                raise LayerError(f"{what}: hole ring {hi} not strictly inside outer ring")
    return part


def _parts_overlap(a: PolygonPart, b: PolygonPart) -> bool:
    for ring_a in a:
        for ring_b in b:
            for i in range(len(ring_a) - 1):
                for j in range(len(ring_b) - 1):
                    if _proper_crossing(ring_a[i], ring_a[i + 1], ring_b[j], ring_b[j + 1]):
                        return True
    # containment without edge crossings: test a vertex of each in the other
    for first, second in ((a, b), (b, a)):
        px, py = first[0][0]
        if kernels.point_in_ring(px, py, flat_ring(second[0]), 1e-12) == 1:
            if all(kernels.point_in_ring(px, py, flat_ring(h), 1e-12) != 1 for h in second[1:]):
                return True
    return False


def validate_polygon_geometry(parts_in, what: str = "polygon") -> Geometry:
    parts = tuple(_validate_polygon_part(p, what) for p in parts_in)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if _parts_overlap(parts[i], parts[j]):
                raise LayerError(f"{what}: multipart parts {i} and {j} overlap")
    return Geometry("polygon", parts)


def validate_point_geometry(points, what: str = "point") -> Geometry:
    pts = tuple((float(x), float(y)) for x, y in (tuple(p) for p in points))
    if not pts:
        raise LayerError(f"{what}: no coordinates")
    _check_finite([c for p in pts for c in p], what)
    return Geometry("point", pts)


def validate_polyline_geometry(paths, what: str = "polyline") -> Geometry:
    out = []
    for path in paths:
        pts = tuple((float(x), float(y)) for x, y in (tuple(p) for p in path))
        if len(pts) < 2:
            raise LayerError(f"{what}: polyline path needs at least 2 vertices")
        _check_finite([c for p in pts for c in p], what)
        out.append(pts)
    if not out:
        raise LayerError(f"{what}: no paths")
    return Geometry("polyline", tuple(out))


# ---------------------------------------------------------------------------
# measurement

def measure(geometry: Geometry) -> Measurements:
    """Dimensions of a geometry: area/perimeter, length, or point count."""
    if geometry.kind == "polygon":
        area = 0.0
        perimeter = 0.0
        for part in geometry.parts:
            for ring in part:
                flat = flat_ring(ring)
                area += kernels.ring_signed_area(flat)  # holes are CW, negative
                perimeter += kernels.polyline_length(flat)
        return Measurements(area=area, perimeter=perimeter)
    if geometry.kind == "polyline":
        length = 0.0
        for path in geometry.parts:
            length += kernels.polyline_length(flat_ring(path))
        return Measurements(length=length)
    if geometry.kind == "point":
        return Measurements(count=len(geometry.parts))
    raise LayerError(f"unknown geometry kind {geometry.kind!r}")


# ---------------------------------------------------------------------------
# layer file parsing

def _parse_geometry(doc, kind: str, what: str) -> Geometry:
    if not isinstance(doc, dict):
        raise LayerError(f"{what}: geometry must be an object")
    if kind == "polygon":
        if "rings" in doc:
            return validate_polygon_geometry([doc["rings"]], what)
        if "parts" in doc:
            return validate_polygon_geometry(
                [p.get("rings", ()) for p in doc["parts"]], what)
        raise LayerError(f"{what}: polygon geometry needs 'rings' or 'parts'")
    if kind == "polyline":
        if "path" in doc:
            return validate_polyline_geometry([doc["path"]], what)
        if "paths" in doc:
            return validate_polyline_geometry(doc["paths"], what)
        raise LayerError(f"{what}: polyline geometry needs 'path' or 'paths'")
    if kind == "point":
        if "point" in doc:
            return validate_point_geometry([doc["point"]], what)
        if "points" in doc:
            return validate_point_geometry(doc["points"], what)
        raise LayerError(f"{what}: point geometry needs 'point' or 'points'")
    raise LayerError(f"{what}: unknown geometry kind {kind!r}")


def _validate_attribute(name: str, value, ftype: str, what: str):
    if value is None:
        return None
    if ftype == "string":
        if not isinstance(value, str):
            raise LayerError(f"{what}: field {name!r} must be a string")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise LayerError(f"{what}: field {name!r} must be a number")
    if not math.isfinite(value):
        raise LayerError(f"{what}: field {name!r} must be finite")
    return value


def _parse_feature(doc, kind: str, fields: tuple[FieldDef, ...], index: int) -> Feature:
    what = f"feature {index}"
    if not isinstance(doc, dict) or "geometry" not in doc or "attributes" not in doc:
        raise LayerError(f"{what}: feature needs 'geometry' and 'attributes'")
    geometry = _parse_geometry(doc["geometry"], kind, what)
    raw = doc["attributes"]
    if not isinstance(raw, dict):
        raise LayerError(f"{what}: attributes must be an object")
    by_name = {f.name: f for f in fields}
    for key in raw:
        if key not in by_name:
            raise LayerError(f"{what}: attribute {key!r} not in field schema")
    attributes = {}
    for f in fields:
        attributes[f.name] = _validate_attribute(f.name, raw.get(f.name), f.type, what)
    for req in REQUIRED_FIELDS:
        if req not in raw:
            raise LayerError(f"{what}: missing required attribute {req!r}")
    if attributes.get("Activity_ID") in (None, ""):
        raise LayerError(f"{what}: Activity_ID must be a non-empty string")
    fh = attributes.get("Feature_Height")
    if fh is not None and fh < 0:
        raise LayerError(f"{what}: Feature_Height must be >= 0, got {fh}")
    return Feature(geometry=geometry, attributes=attributes)


def parse_layer_file(json_text: str) -> Layer:
    """Parse and validate a ``.layer.json`` document.

    Ring orientations are normalized (outer CCW, holes CW); every schema
    or geometry violation raises :class:`LayerError` naming the feature.
    """
    try:
        doc = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise LayerError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise LayerError("layer document must be a JSON object")
    for key in ("name", "geometry_kind", "fields", "features"):
        if key not in doc:
            raise LayerError(f"layer document missing {key!r}")
    kind = doc["geometry_kind"]
    if kind not in GEOMETRY_KINDS:
        raise LayerError(f"unknown geometry_kind {kind!r}")
    fields = []
    names = set()
    for i, f in enumerate(doc["fields"]):
        if not isinstance(f, dict) or "name" not in f or "type" not in f:
            raise LayerError(f"field {i}: needs 'name' and 'type'")
        if f["type"] not in FIELD_TYPES:
            raise LayerError(f"field {f['name']!r}: unknown type {f['type']!r}")
        if f["name"] in names:
            raise LayerError(f"field {f['name']!r}: duplicate field name")
        names.add(f["name"])
        fields.append(FieldDef(name=f["name"], type=f["type"]))
    for req, rtype in zip(REQUIRED_FIELDS, ("string", "number", "number")):
        if req not in names:
            raise LayerError(f"field schema missing required field {req!r}")
        ftype = next(f.type for f in fields if f.name == req)
        if ftype != rtype:
            raise LayerError(f"field {req!r} must have type {rtype!r}")
    features = tuple(
        _parse_feature(fd, kind, tuple(fields), i)
        for i, fd in enumerate(doc["features"])
    )
    return Layer(name=str(doc["name"]), geometry_kind=kind,
                 fields=tuple(fields), features=features)


# ---------------------------------------------------------------------------
# layer file serialization (canonical; round-trips byte-identically)

def _geometry_doc(geometry: Geometry):
    if geometry.kind == "point":
        if geometry.is_multipart:
            return {"points": [[x, y] for x, y in geometry.parts]}
        (x, y), = geometry.parts
        return {"point": [x, y]}
    if geometry.kind == "polyline":
        paths = [[[x, y] for x, y in path] for path in geometry.parts]
        if geometry.is_multipart:
            return {"paths": paths}
        return {"path": paths[0]}
    parts = [{"rings": [[[x, y] for x, y in ring] for ring in part]}
             for part in geometry.parts]
    if geometry.is_multipart:
        return {"parts": parts}
    return {"rings": parts[0]["rings"]}


def layer_document(layer: Layer) -> dict:
    return {
        "name": layer.name,
        "geometry_kind": layer.geometry_kind,
        "fields": [{"name": f.name, "type": f.type} for f in layer.fields],
        "features": [
            {
                "geometry": _geometry_doc(f.geometry),
                "attributes": {fd.name: f.attributes.get(fd.name) for fd in layer.fields},
            }
            for f in layer.features
        ],
    }


def serialize_layer(layer: Layer) -> str:
    return json.dumps(layer_document(layer), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# merge / append

def _group_sort_key(value):
    if value is None:
        return (2, "")
    if isinstance(value, (int, float)):
        return (0, float(value))
    return (1, str(value))


def merge_features(layer: Layer, group_by: str,
                   epsilon: float = DEFAULT_EPSILON) -> tuple[Layer, list[str]]:
    """Fuse features that share a ``group_by`` value into one feature each.

    Polygon groups go through the boolean union (adjacent boundaries
    removed, disjoint footprints kept as multipart); polyline and point
    groups become multipart collections.  Attribute fields that disagree
    within a group are nulled, and a warning naming field and group is
    returned alongside the merged layer.
    """
    from fourd.geom.union import polygon_union  # local import: union depends on model

    if group_by not in layer.field_names():
        raise LayerError(f"unknown group_by field {group_by!r}")
    groups: dict = {}
    for f in layer.features:
        groups.setdefault(f.attributes.get(group_by), []).append(f)

    warnings: list[str] = []
    merged: list[Feature] = []
    for value in sorted(groups, key=_group_sort_key):
        group = groups[value]
        if len(group) == 1:
            geometry = group[0].geometry
        elif layer.geometry_kind == "polygon":
            geometry = polygon_union([f.geometry for f in group], epsilon)
        else:
            parts: list = []
            for f in group:
                parts.extend(f.geometry.parts)
            geometry = Geometry(layer.geometry_kind, tuple(parts))
        attributes = {}
        for fd in layer.fields:
            if fd.name == group_by:
                attributes[fd.name] = value
                continue
            values = [f.attributes.get(fd.name) for f in group]
            if all(v == values[0] for v in values[1:]):
                attributes[fd.name] = values[0]
            else:
                attributes[fd.name] = None
                warnings.append(
                    f"conflicting values for field {fd.name!r} in group {value!r}; set to null")
        merged.append(Feature(geometry=geometry, attributes=attributes))
    out = Layer(name=layer.name, geometry_kind=layer.geometry_kind,
                fields=layer.fields, features=tuple(merged))
    return out, warnings


def append_layers(layers, name: str) -> Layer:
    """Concatenate layers of one geometry kind; schemas are unioned."""
    layers = list(layers)
    if len(layers) < 2:
        raise LayerError("append_layers needs at least 2 layers")
    kinds = {layer.geometry_kind for layer in layers}
    if len(kinds) > 1:
        offenders = ", ".join(f"{layer.name!r} ({layer.geometry_kind})" for layer in layers)
        raise LayerError(f"geometry kind mismatch: {offenders}")
    fields: list[FieldDef] = []
    by_name: dict[str, FieldDef] = {}
    for layer in layers:
        for fd in layer.fields:
            if fd.name not in by_name:
                by_name[fd.name] = fd
                fields.append(fd)
            elif by_name[fd.name].type != fd.type:
                raise LayerError(
                    f"field {fd.name!r} has conflicting types across layers")
    features = []
    for layer in layers:
        for f in layer.features:
            features.append(Feature(
                geometry=f.geometry,
                attributes={fd.name: f.attributes.get(fd.name) for fd in fields}))
    return Layer(name=name, geometry_kind=layers[0].geometry_kind,
                 fields=tuple(fields), features=tuple(features))
