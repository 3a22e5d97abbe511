"""Vertical extrusion of 2D features into 3D primitives.

Points become thin columns, polylines become zero-thickness walls, and
polygons become watertight blocks (side walls plus triangulated caps,
holes respected).  Heights come from the feature's ``Base_Height`` and
``Feature_Height`` attributes.
"""
from __future__ import annotations

from dataclasses import dataclass

from fourd.errors import ExtrusionError
from fourd.geom import kernels
from fourd.geom.model import Feature, Geometry, Layer, measure
from fourd.geom.triangulate import triangulate_part

# rendered footprint of a point column, meters; the logical primitive is a
# vertical segment and height stays the only derived quantity
POINT_COLUMN_SIDE = 0.05


@dataclass(frozen=True)
class Mesh:
    positions: tuple[float, ...]  # flat x, y, z
    indices: tuple[int, ...]      # flat triangle index triples

    @property
    def triangle_count(self) -> int:
        return len(self.indices) // 3

    def signed_volume(self) -> float:
        return kernels.mesh_signed_volume(list(self.positions), list(self.indices))


@dataclass(frozen=True)
class Prism:
    activity_id: str | None
    kind: str          # "column" | "wall" | "block"
    mesh: Mesh
    base_z: float
    top_z: float
    volume: float = 0.0          # blocks
    footprint_area: float = 0.0  # blocks
    wall_area: float = 0.0       # walls
    base_length: float = 0.0     # walls
    point_count: int = 0         # columns

    @property
    def height(self) -> float:
        return self.top_z - self.base_z


@dataclass(frozen=True)
class ExtrusionIssue:
    feature_index: int
    activity_id: str | None
    message: str


class _MeshBuilder:
    def __init__(self):
        self.positions: list[float] = []
        self.indices: list[int] = []

    def add_vertex(self, x: float, y: float, z: float) -> int:
        idx = len(self.positions) // 3
        self.positions.extend((x, y, z))
        return idx

    def add_triangle(self, a: int, b: int, c: int) -> None:
        self.indices.extend((a, b, c))

    def add_quad(self, a: int, b: int, c: int, d: int) -> None:
        self.add_triangle(a, b, c)
        self.add_triangle(a, c, d)

    def build(self) -> Mesh:
        return Mesh(tuple(self.positions), tuple(self.indices))


def _ring_walls(builder: _MeshBuilder, ring, base_z: float, top_z: float) -> None:
    # CCW outer rings and CW holes both yield outward-facing side quads
    for i in range(len(ring) - 1):
        ax, ay = ring[i]
        bx, by = ring[i + 1]
        b0 = builder.add_vertex(ax, ay, base_z)
        b1 = builder.add_vertex(bx, by, base_z)
        t1 = builder.add_vertex(bx, by, top_z)
        t0 = builder.add_vertex(ax, ay, top_z)
        builder.add_quad(b0, b1, t1, t0)


def _extrude_polygon(geometry: Geometry, base_z: float, top_z: float) -> Mesh:
    builder = _MeshBuilder()
    for part in geometry.parts:
        for ring in part:
            _ring_walls(builder, ring, base_z, top_z)
        verts, triangles = triangulate_part(part)
        bottom = [builder.add_vertex(x, y, base_z) for x, y in verts]
        top = [builder.add_vertex(x, y, top_z) for x, y in verts]
        for a, b, c in triangles:
            builder.add_triangle(bottom[a], bottom[c], bottom[b])  # normal -z
            builder.add_triangle(top[a], top[b], top[c])           # normal +z
    return builder.build()


def _extrude_polyline(geometry: Geometry, base_z: float, top_z: float) -> Mesh:
    builder = _MeshBuilder()
    for path in geometry.parts:
        for i in range(len(path) - 1):
            ax, ay = path[i]
            bx, by = path[i + 1]
            b0 = builder.add_vertex(ax, ay, base_z)
            b1 = builder.add_vertex(bx, by, base_z)
            t1 = builder.add_vertex(bx, by, top_z)
            t0 = builder.add_vertex(ax, ay, top_z)
            builder.add_quad(b0, b1, t1, t0)
    return builder.build()


def _extrude_points(geometry: Geometry, base_z: float, top_z: float) -> Mesh:
    builder = _MeshBuilder()
    h = POINT_COLUMN_SIDE / 2.0
    for x, y in geometry.parts:
        corners = ((x - h, y - h), (x + h, y - h), (x + h, y + h), (x - h, y + h))
        ring = corners + (corners[0],)
        _ring_walls(builder, ring, base_z, top_z)
        bottom = [builder.add_vertex(px, py, base_z) for px, py in corners]
        top = [builder.add_vertex(px, py, top_z) for px, py in corners]
        builder.add_quad(bottom[0], bottom[3], bottom[2], bottom[1])
        builder.add_quad(top[0], top[1], top[2], top[3])
    return builder.build()


def _height_attr(feature: Feature, name: str) -> float:
    if name not in feature.attributes:
        raise ExtrusionError(f"missing height attribute {name!r}")
    value = feature.attributes[name]
    if value is None:
        raise ExtrusionError(f"height attribute {name!r} is null")
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ExtrusionError(f"height attribute {name!r} is not a number")
    return float(value)


def extrude_feature(feature: Feature) -> Prism:
    """Extrude one feature into a prism using its height attributes."""
    base_z = _height_attr(feature, "Base_Height")
    height = _height_attr(feature, "Feature_Height")
    if height < 0:
        raise ExtrusionError(f"negative Feature_Height {height}")
    top_z = base_z + height
    activity_id = feature.attributes.get("Activity_ID")
    geometry = feature.geometry
    dims = measure(geometry)

    if geometry.kind == "polygon":
        mesh = _extrude_polygon(geometry, base_z, top_z)
        return Prism(activity_id=activity_id, kind="block", mesh=mesh,
                     base_z=base_z, top_z=top_z,
                     volume=dims.area * height, footprint_area=dims.area)
    if geometry.kind == "polyline":
        mesh = _extrude_polyline(geometry, base_z, top_z)
        return Prism(activity_id=activity_id, kind="wall", mesh=mesh,
                     base_z=base_z, top_z=top_z,
                     wall_area=dims.length * height, base_length=dims.length)
    if geometry.kind == "point":
        mesh = _extrude_points(geometry, base_z, top_z)
        return Prism(activity_id=activity_id, kind="column", mesh=mesh,
                     base_z=base_z, top_z=top_z, point_count=dims.count)
    raise ExtrusionError(f"cannot extrude geometry kind {geometry.kind!r}")


def extrude_layer(layer: Layer) -> tuple[list[Prism], list[ExtrusionIssue]]:
    """Extrude every feature; bad features become issues, not failures."""
    prisms: list[Prism] = []
    issues: list[ExtrusionIssue] = []
    for i, feature in enumerate(layer.features):
        try:
            prisms.append(extrude_feature(feature))
        except ExtrusionError as exc:
            issues.append(ExtrusionIssue(
                feature_index=i,
                activity_id=feature.attributes.get("Activity_ID"),
                message=str(exc)))
    return prisms, issues


def combine_meshes(meshes: list[Mesh]) -> Mesh:
    """Concatenate meshes into one (for activities spanning several layers)."""
    positions: list[float] = []
    indices: list[int] = []
    for mesh in meshes:
        offset = len(positions) // 3
        positions.extend(mesh.positions)
        indices.extend(i + offset for i in mesh.indices)
    return Mesh(tuple(positions), tuple(indices))
