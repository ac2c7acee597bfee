"""Morse shellings of second barycentric subdivisions, built from discrete
Morse functions and independently certified."""

from .labels import Label, LabelRegistry, atom, bary
from .complexes import (
    EMPTY,
    RelativeComplex,
    Simplex,
    SimplicialComplex,
    VertexMap,
    apply_map,
    barycentric,
    barycentric_complex,
    derived_neighborhood,
    join,
    link_iso_sd,
    link_iso_sd2,
    make_complex,
    star_link,
)
from .tiles import (
    CanonicalTriple,
    MorseTile,
    NotAMorseTileError,
    TileClass,
    canonical_triple,
    classify,
    cone,
    recompose,
    tile_faces,
    tile_join,
    tile_vertex_link,
)
from .morse import (
    DiscreteMorseFunction,
    Filtration,
    FiltrationStep,
    canonicalize,
    critical_faces,
    filtration,
    greedy_collapse_dmf,
    trivial_dmf,
    validate,
)
from .engine import (
    BoundaryShelling,
    Census,
    Tiling,
    cone_shelling,
    shell_boundary_sd,
    shell_sd2_from_dmf,
    shell_sd_join,
    shell_sd_relative,
    shell_sd_tile,
)
from .verify import Certificate, audit, critical_census, mod2_betti, verify_tiling

__version__ = "0.1.0"
