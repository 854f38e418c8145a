"""Named measurement sets with known success probabilities, and their geometry.

Each named construction fixes the measurement directions; the encodings are
always derived as the normalized signed direction sums.  The geometry
helpers expose the polyhedra those encodings land on, count the regions the
measurement great circles cut the sphere into, and check the algebraic
equations satisfied by the encoding amplitudes.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .bloch import BlochVector, Measurement, state_from_bloch
from .classical import BitString
from .codes import QracCode, optimal_code, sign_pattern_norm_sum

#: Golden ratio; vertex coordinate of the icosahedral solids.
_TAU = (1.0 + math.sqrt(5.0)) / 2.0

#: Intersection points closer than this (chordal distance) are one vertex.
CLUSTER_TOLERANCE = 1e-9

#: Circles whose normals are parallel within this are considered coincident.
COINCIDENT_TOLERANCE = 1e-9

#: Residual tolerance factor for encoding_polynomial_check.
POLYNOMIAL_TOLERANCE = 1e-6


@dataclass(frozen=True)
class NamedConstruction:
    """A named measurement set with its known average success probability.

    `expected_probability` is the closed-form value when one is known, or is
    computed from the directions at registration time; `expected_form` says
    which, in plain text.
    """

    name: str
    measurements: tuple[BlochVector, ...]
    expected_probability: float
    expected_form: str

    @property
    def n(self) -> int:
        return len(self.measurements)


def _unit(x: float, y: float, z: float) -> BlochVector:
    return BlochVector.normalized(x, y, z)


_X = BlochVector(1.0, 0.0, 0.0)
_Y = BlochVector(0.0, 1.0, 0.0)
_Z = BlochVector(0.0, 0.0, 1.0)

#: Pair representatives of the cuboctahedron's twelve vertices (six axes).
_CUBOCTAHEDRON_AXES = (
    _unit(0.0, 1.0, 1.0),
    _unit(0.0, -1.0, 1.0),
    _unit(1.0, 0.0, 1.0),
    _unit(1.0, 0.0, -1.0),
    _unit(1.0, 1.0, 0.0),
    _unit(-1.0, 1.0, 0.0),
)

#: Pair representatives of the icosahedron's twelve vertices (six axes),
#: chosen with the first nonzero coordinate positive.
_ICOSAHEDRON_AXES = (
    _unit(0.0, _TAU, 1.0),
    _unit(0.0, _TAU, -1.0),
    _unit(1.0, 0.0, _TAU),
    _unit(1.0, 0.0, -_TAU),
    _unit(_TAU, 1.0, 0.0),
    _unit(_TAU, -1.0, 0.0),
)


def _icosidodecahedron_axes() -> tuple[BlochVector, ...]:
    """Pair representatives of the icosidodecahedron's thirty vertices."""
    axes = [_X, _Y, _Z]
    for s1 in (1.0, -1.0):
        for s2 in (1.0, -1.0):
            axes.append(_unit(1.0, s1 * _TAU, s2 * _TAU * _TAU))
            axes.append(_unit(_TAU * _TAU, s1 * 1.0, s2 * _TAU))
            axes.append(_unit(_TAU, s1 * _TAU * _TAU, s2 * 1.0))
    return tuple(axes)


def _computed_probability(measurements: Sequence[BlochVector]) -> float:
    n = len(measurements)
    dirs = np.array([(v.x, v.y, v.z) for v in measurements])
    return 0.5 * (1.0 + sign_pattern_norm_sum(dirs) / (n * (1 << n)))


def _registry() -> dict[str, NamedConstruction]:
    entries: list[tuple[str, tuple[BlochVector, ...], float | None, str]] = [
        (
            "qrac2",
            (_X, _Y),
            0.5 + 0.5 / math.sqrt(2.0),
            "1/2 + 1/(2*sqrt(2))",
        ),
        (
            "qrac3",
            (_X, _Y, _Z),
            0.5 + 0.5 / math.sqrt(3.0),
            "1/2 + 1/(2*sqrt(3))",
        ),
        (
            "qrac4",
            (_X, _Y, _Z, _Z),
            0.5 + (1.0 + math.sqrt(3.0)) / (8.0 * math.sqrt(2.0)),
            "1/2 + (1+sqrt(3))/(8*sqrt(2))",
        ),
        (
            "qrac5",
            (_X, _Y, _Z, _unit(1.0, 1.0, 0.0), _unit(-1.0, 1.0, 0.0)),
            0.5 + math.sqrt(2.0 * (5.0 + math.sqrt(17.0))) / 20.0,
            "1/2 + sqrt(2*(5+sqrt(17)))/20",
        ),
        (
            "qrac6",
            _CUBOCTAHEDRON_AXES,
            0.5 + (2.0 + math.sqrt(3.0) + math.sqrt(15.0)) / (16.0 * math.sqrt(6.0)),
            "1/2 + (2+sqrt(3)+sqrt(15))/(16*sqrt(6))",
        ),
        (
            "qrac9",
            (_X, _Y, _Z, _X, _Y, _Z, _X, _Y, _Z),
            0.5
            + (10.0 * math.sqrt(3.0) + 9.0 * math.sqrt(11.0) + 3.0 * math.sqrt(19.0))
            / 384.0,
            "1/2 + (10*sqrt(3)+9*sqrt(11)+3*sqrt(19))/384",
        ),
        (
            "sym4",
            (
                _unit(1.0, -1.0, -1.0),
                _unit(-1.0, 1.0, -1.0),
                _unit(-1.0, -1.0, 1.0),
                _unit(1.0, 1.0, 1.0),
            ),
            0.5 + (2.0 + math.sqrt(3.0)) / 16.0,
            "1/2 + (2+sqrt(3))/16",
        ),
        (
            "sym6",
            _ICOSAHEDRON_AXES,
            0.5
            + math.sqrt(5.0) / 32.0
            + math.sqrt(75.0 + 30.0 * math.sqrt(5.0)) / 96.0,
            "1/2 + sqrt(5)/32 + sqrt(75+30*sqrt(5))/96",
        ),
        (
            "sym9",
            (_X, _Y, _Z) + _CUBOCTAHEDRON_AXES,
            None,
            "computed from the measurement directions",
        ),
        (
            "sym15",
            _icosidodecahedron_axes(),
            None,
            "computed from the measurement directions",
        ),
    ]
    registry: dict[str, NamedConstruction] = {}
    for name, measurements, value, form in entries:
        if value is None:
            value = _computed_probability(measurements)
        registry[name] = NamedConstruction(name, measurements, value, form)
    return registry


CONSTRUCTIONS: dict[str, NamedConstruction] = _registry()


def construction_names() -> tuple[str, ...]:
    return tuple(CONSTRUCTIONS)


def known_construction(name: str) -> NamedConstruction:
    try:
        return CONSTRUCTIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown construction {name!r}; known names: {', '.join(CONSTRUCTIONS)}"
        ) from None


def known_code(name: str) -> QracCode:
    """Build the named construction as a full code with optimal encodings."""
    construction = known_construction(name)
    return optimal_code(tuple(Measurement(v) for v in construction.measurements))


def _signed_permutations(base: tuple[float, float, float]) -> list[BlochVector]:
    """Every coordinate permutation of `base` with every sign choice, deduplicated."""
    seen: set[tuple[float, float, float]] = set()
    out: list[BlochVector] = []
    for perm in itertools.permutations(base):
        nonzero = [i for i, t in enumerate(perm) if t != 0.0]
        for signs in range(1 << len(nonzero)):
            coords = list(perm)
            for pos, axis in enumerate(nonzero):
                if (signs >> pos) & 1:
                    coords[axis] = -coords[axis]
            key = (coords[0], coords[1], coords[2])
            if key not in seen:
                seen.add(key)
                out.append(_unit(*key))
    return out


_POLYHEDRA: dict[str, tuple[BlochVector, ...]] = {
    "cube": tuple(_signed_permutations((1.0, 1.0, 1.0))),
    "octahedron": (_X, _Y, _Z, -_X, -_Y, -_Z),
    "cuboctahedron": tuple(v for axis in _CUBOCTAHEDRON_AXES for v in (axis, -axis)),
    "truncated_octahedron": tuple(_signed_permutations((0.0, 1.0, 2.0))),
    "truncated_cube": tuple(_signed_permutations((1.0, 3.0, 3.0))),
    "small_rhombicuboctahedron": tuple(_signed_permutations((3.0, 1.0, 1.0))),
    "icosahedron": tuple(v for axis in _ICOSAHEDRON_AXES for v in (axis, -axis)),
    "icosidodecahedron": tuple(
        v for axis in _icosidodecahedron_axes() for v in (axis, -axis)
    ),
}


def polyhedron_names() -> tuple[str, ...]:
    return tuple(_POLYHEDRA)


def polyhedron_vertices(name: str) -> tuple[BlochVector, ...]:
    """Unit-normalized vertices of a named polyhedron."""
    key = name.strip().lower().replace(" ", "_").replace("-", "_")
    try:
        return _POLYHEDRA[key]
    except KeyError:
        raise ValueError(
            f"unknown polyhedron {name!r}; known names: {', '.join(_POLYHEDRA)}"
        ) from None


@dataclass(frozen=True)
class GreatCircleArrangement:
    """Great circles on the unit sphere, one per normal; antipodes identified."""

    normals: tuple[BlochVector, ...]

    def __post_init__(self) -> None:
        if not self.normals:
            raise ValueError("need at least one circle")
        object.__setattr__(self, "normals", tuple(self.normals))
        arr = [v.as_array() for v in self.normals]
        for i in range(len(arr)):
            for j in range(i + 1, len(arr)):
                if float(np.linalg.norm(np.cross(arr[i], arr[j]))) < COINCIDENT_TOLERANCE:
                    raise ValueError(
                        f"circles {i + 1} and {j + 1} coincide (parallel normals)"
                    )


def _cluster_labels(points: list[np.ndarray], tolerance: float) -> list[int]:
    """Union-find labels merging points within chordal `tolerance`."""
    parent = list(range(len(points)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if float(np.linalg.norm(points[i] - points[j])) < tolerance:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    return [find(i) for i in range(len(points))]


def count_sphere_regions(arr: GreatCircleArrangement) -> int:
    """Number of regions the circles cut the sphere into, by Euler's formula.

    Vertices are clustered intersection points (so three or more circles
    through one point count it once); each circle contributes one edge per
    distinct vertex on it; regions = edges - vertices + 2.  A single circle
    has no intersections and cuts the sphere into two parts.
    """
    normals = [v.as_array() for v in arr.normals]
    k = len(normals)
    if k == 1:
        return 2
    points: list[np.ndarray] = []
    generators: list[tuple[int, int]] = []
    for i in range(k):
        for j in range(i + 1, k):
            cross = np.cross(normals[i], normals[j])
            point = cross / float(np.linalg.norm(cross))
            points.extend((point, -point))
            generators.extend(((i, j), (i, j)))
    labels = _cluster_labels(points, CLUSTER_TOLERANCE)
    vertices = len(set(labels))
    incident: list[set[int]] = [set() for _ in range(k)]
    for label, (i, j) in zip(labels, generators):
        incident[i].add(label)
        incident[j].add(label)
    edges = sum(len(s) for s in incident)
    return edges - vertices + 2


def encoding_polynomial_check(name: str, poly: Sequence[int]) -> bool:
    """Check every encoding amplitude of a named code against a polynomial.

    `poly[d]` is the integer coefficient of the d-th power.  For each input
    string the code's encoding state contributes its amplitude on the second
    basis state; the check passes iff every such amplitude b satisfies
    |poly(b)| <= POLYNOMIAL_TOLERANCE * sum_d |poly[d]| * |b|^d.  The
    comparison is inclusive so that b = 0 (a pole encoding) passes exactly
    when the constant term vanishes: both sides are then zero.
    """
    if not poly or all(c == 0 for c in poly):
        raise ValueError("polynomial must have a nonzero coefficient")
    code = known_code(name)
    for point in code.encodings.values():
        b = state_from_bloch(point).beta
        value = complex(poly[-1])
        scale = float(abs(poly[-1]))
        magnitude = abs(b)
        for coefficient in reversed(poly[:-1]):
            value = value * b + coefficient
            scale = scale * magnitude + abs(coefficient)
        if abs(value) > POLYNOMIAL_TOLERANCE * scale:
            return False
    return True


#: Wildcard patterns over the six positions; "*" matches either bit.  Strings
#: with pair-difference count 1 or 2 match exactly one list.
_FLAT_PATTERNS = (
    "**1110",
    "**0001",
    "10**11",
    "01**00",
    "1110**",
    "0001**",
)
_AXIS_PATTERNS = (
    "**1101",
    "**0010",
    "01**11",
    "10**00",
    "1101**",
    "0010**",
)


def _matches(pattern: str, text: str) -> bool:
    return all(p in ("*", c) for p, c in zip(pattern, text))


def classify_string(name: str, x: BitString) -> str:
    """Which polyhedron the optimal encoding of x lands on, for qrac6 or qrac9.

    For qrac6 the measurements come in three pairs whose signed sums either
    reinforce (equal bits) or swap axis (differing bits); counting differing
    pairs and matching the cancellation patterns sorts the 64 strings onto
    the cube, the truncated octahedron, or the octahedron.  For qrac9 each
    coordinate axis carries three measurements, so each axis triple is either
    unanimous (component 3) or split (component 1); the number t of split
    triples sorts the 512 strings onto the cube (t in {0, 3}), the truncated
    cube (t = 1), or the small rhombicuboctahedron (t = 2).
    """
    if name == "qrac6":
        if len(x) != 6:
            raise ValueError(f"qrac6 strings have 6 bits, got {len(x)}")
        bits = x.bits
        differing = sum(abs(bits[2 * k] - bits[2 * k + 1]) for k in range(3))
        if differing in (0, 3):
            return "cube"
        if any(_matches(p, x.text) for p in _FLAT_PATTERNS):
            return "truncated_octahedron"
        if any(_matches(p, x.text) for p in _AXIS_PATTERNS):
            return "octahedron"
        raise ValueError(f"string {x.text!r} matches no classification pattern")
    if name == "qrac9":
        if len(x) != 9:
            raise ValueError(f"qrac9 strings have 9 bits, got {len(x)}")
        bits = x.bits
        split_triples = sum(
            0 if bits[axis] == bits[axis + 3] == bits[axis + 6] else 1
            for axis in range(3)
        )
        if split_triples in (0, 3):
            return "cube"
        if split_triples == 1:
            return "truncated_cube"
        return "small_rhombicuboctahedron"
    raise ValueError(f"classification is defined for qrac6 and qrac9, not {name!r}")
