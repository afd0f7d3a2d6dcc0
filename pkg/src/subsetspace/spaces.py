"""Builders for the spaces quantified over in the verification suite:
minimal spheres, wedges of spheres, and subdivided circles for
triangulation-invariance tests."""

from __future__ import annotations

from dataclasses import dataclass

from .simplicial import FormalSimplex, SimplicialSet, SimplicialError


@dataclass(frozen=True)
class WedgeSpec:
    """A wedge of spheres: one entry per summand, giving its dimension.
    model='subdivided' is only available when every summand is a circle."""
    sphere_dims: tuple[int, ...]
    model: str = "minimal"

    def __post_init__(self):
        if not self.sphere_dims:
            raise SimplicialError("wedge spec must have at least one summand")
        if any(d < 1 for d in self.sphere_dims):
            raise SimplicialError("sphere dimensions must be >= 1")
        if self.model not in ("minimal", "subdivided"):
            raise SimplicialError(f"unknown model {self.model!r}")
        if self.model == "subdivided" and any(d != 1 for d in self.sphere_dims):
            raise SimplicialError("subdivided model only applies to circles")


def _degenerate_vertex(v: int, dim: int) -> FormalSimplex:
    """The unique degenerate simplex over a vertex at the given dimension:
    s_{dim-1} ... s_1 s_0 v."""
    return FormalSimplex(v, tuple(range(dim - 1, -1, -1)), dim)


def sphere(m: int) -> SimplicialSet:
    """Minimal m-sphere: one vertex, one m-generator, every face of the
    generator the fully degenerate vertex."""
    if m < 1:
        raise SimplicialError("sphere dimension must be >= 1")
    S = SimplicialSet()
    v = S.add_generator(0, "v")
    g = S.add_generator(m, f"c{m}")
    S.set_faces(g, [_degenerate_vertex(v, m - 1)] * (m + 1))
    return S


def wedge(spec: WedgeSpec) -> SimplicialSet:
    """Wedge of minimal spheres sharing a single vertex."""
    if spec.model == "subdivided":
        return _subdivided_wedge_of_circles(len(spec.sphere_dims))
    S = SimplicialSet()
    v = S.add_generator(0, "v")
    for idx, m in enumerate(spec.sphere_dims):
        g = S.add_generator(m, f"c{m}_{idx}")
        S.set_faces(g, [_degenerate_vertex(v, m - 1)] * (m + 1))
    return S


def subdivided_circle(v: int) -> SimplicialSet:
    """Boundary-of-polygon circle: v vertices, v edges, no degenerate faces.
    Edge i runs from vertex i (face d_1) to vertex i+1 mod v (face d_0)."""
    if v < 3:
        raise SimplicialError("subdivided circle needs at least 3 vertices")
    S = SimplicialSet()
    verts = [S.add_generator(0, f"p{i}") for i in range(v)]
    for i in range(v):
        e = S.add_generator(1, f"e{i}")
        S.set_faces(e, [S.simplex(verts[(i + 1) % v]), S.simplex(verts[i])])
    return S


def _subdivided_wedge_of_circles(count: int) -> SimplicialSet:
    # each circle gets 3 vertices, one of them the shared basepoint
    S = SimplicialSet()
    b = S.add_generator(0, "b")
    for c in range(count):
        p = S.add_generator(0, f"p{c}")
        q = S.add_generator(0, f"q{c}")
        cyc = [b, p, q]
        for i in range(3):
            e = S.add_generator(1, f"e{c}_{i}")
            S.set_faces(e, [S.simplex(cyc[(i + 1) % 3]), S.simplex(cyc[i])])
    return S


def parse_space(descriptor: str) -> tuple[str, SimplicialSet]:
    """Parse a CLI space descriptor: 's1', 's2', ..., 'wedge:1,1', 'circle:4'.
    Returns (canonical name, simplicial set)."""
    d = descriptor.strip().lower()
    if d.startswith("s") and d[1:].isdigit():
        m = int(d[1:])
        return d, sphere(m)
    if d.startswith("wedge:"):
        try:
            dims = tuple(int(t) for t in d[len("wedge:"):].split(","))
        except ValueError:
            raise SimplicialError(f"bad wedge descriptor {descriptor!r}")
        return d, wedge(WedgeSpec(dims))
    if d.startswith("circle:"):
        try:
            v = int(d[len("circle:"):])
        except ValueError:
            raise SimplicialError(f"bad circle descriptor {descriptor!r}")
        return d, subdivided_circle(v)
    raise SimplicialError(f"unrecognized space descriptor {descriptor!r}")
