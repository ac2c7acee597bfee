"""A few standard complexes, handy for tests and demos."""
from __future__ import annotations

from .complexes import SimplicialComplex, make_complex

__all__ = [
    "simplex_complex",
    "boundary_sphere",
    "cone_over_circle",
    "two_triangles",
    "moebius_torus",
]

_NAMES = "abcdefghij"


def simplex_complex(dim: int) -> SimplicialComplex:
    """The closed dim-simplex on atoms a, b, c, ..."""
    return make_complex([list(_NAMES[: dim + 1])])


def boundary_sphere(dim: int) -> SimplicialComplex:
    """The boundary of the (dim+1)-simplex: a combinatorial dim-sphere."""
    verts = _NAMES[: dim + 2]
    return make_complex([list(verts[:i] + verts[i + 1:]) for i in range(len(verts))])


def cone_over_circle() -> SimplicialComplex:
    """Cone with apex v over the boundary of a triangle; collapsible."""
    return make_complex([["v", "a", "b"], ["v", "b", "c"], ["v", "a", "c"]])


def two_triangles() -> SimplicialComplex:
    """Two triangles sharing exactly one vertex."""
    return make_complex([["a", "b", "c"], ["c", "d", "e"]])


def moebius_torus() -> SimplicialComplex:
    """The 7-vertex triangulated torus on the complete graph K7."""
    facets = []
    for i in range(7):
        facets.append([f"t{i}", f"t{(i + 1) % 7}", f"t{(i + 3) % 7}"])
        facets.append([f"t{i}", f"t{(i + 2) % 7}", f"t{(i + 3) % 7}"])
    return make_complex(facets)
