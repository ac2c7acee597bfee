"""Finite relative simplicial complexes.

Everything here is purely combinatorial: a simplex is a finite set of labels,
a complex is a downward closed family of simplices given by its facets, and a
relative complex is a pair K \\ L with L a subcomplex of K containing no facet
of K.  The module provides joins, barycentric subdivision (the complex of
flags of non-empty faces), stars and links (absolute and relative), first
derived neighborhoods, and the vertex maps identifying links in first and
second subdivisions with joins of subdivided boundaries and links.

Conventions for degenerate complexes matter throughout and are fixed here:

* the *void* complex has no faces at all;
* the *empty* complex ``{∅}`` has the empty simplex as its only face;
* every non-void complex contains the empty simplex.
"""
from __future__ import annotations

from itertools import combinations, permutations
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple

from .labels import Label, LabelLike, as_label, bary

__all__ = [
    "Simplex",
    "EMPTY",
    "SimplicialComplex",
    "RelativeComplex",
    "VertexMap",
    "make_complex",
    "closure_complex",
    "void_complex",
    "empty_complex",
    "boundary_complex",
    "join_complexes",
    "join",
    "barycentric",
    "barycentric_complex",
    "star_complex",
    "link_complex",
    "star_link",
    "derived_neighborhood",
    "link_iso_sd",
    "link_iso_sd2",
    "star_intersection_sd2",
    "apply_map",
]


class Simplex:
    """A finite set of labels in canonical order; the empty simplex is EMPTY."""

    __slots__ = ("vertices", "_vset", "_hash")

    def __init__(self, vertices: Iterable[LabelLike] = ()):
        vs = tuple(sorted({as_label(v) for v in vertices}))
        self.vertices = vs
        self._vset = frozenset(vs)
        self._hash = hash(vs)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.vertices)

    def __contains__(self, v: Label) -> bool:
        return v in self._vset

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Simplex) and self.vertices == other.vertices

    def __le__(self, other: "Simplex") -> bool:
        """Face relation: self is a face of other."""
        return self._vset <= other._vset

    def __lt__(self, other: "Simplex") -> bool:
        return self._vset < other._vset

    @property
    def key(self):
        """Canonical sort key: by cardinality, then lexicographically."""
        return (len(self.vertices), tuple(v.key for v in self.vertices))

    def union(self, other: "Simplex") -> "Simplex":
        return Simplex(self.vertices + other.vertices)

    def minus(self, other: "Simplex") -> "Simplex":
        return Simplex(v for v in self.vertices if v not in other._vset)

    def without(self, v: Label) -> "Simplex":
        return Simplex(w for w in self.vertices if w != v)

    def faces(self) -> Iterator["Simplex"]:
        """All faces, the empty simplex and self included."""
        for r in range(len(self.vertices) + 1):
            for c in combinations(self.vertices, r):
                yield Simplex(c)

    def ridges(self) -> Tuple["Simplex", ...]:
        """Codimension-one faces; the empty simplex for a vertex."""
        return tuple(self.without(v) for v in self.vertices)

    def __repr__(self) -> str:
        if self.is_empty:
            return "{}"
        return "{" + " ".join(repr(v) for v in self.vertices) + "}"


EMPTY = Simplex(())


class SimplicialComplex:
    """A finite simplicial complex, stored as facets plus an eager face index.

    The face index maps every face (the empty one included) to the facets
    containing it.  Instances are immutable by discipline; all derived data
    is computed at construction.
    """

    __slots__ = ("facets", "_index", "_hash")

    def __init__(self, facets: Iterable[Simplex], _absorb: bool = True):
        fs = sorted(set(facets), key=lambda s: s.key)
        if _absorb:
            fs = [f for f in fs if not any(f < g for g in fs)]
        self.facets: Tuple[Simplex, ...] = tuple(fs)
        index: Dict[Simplex, list] = {}
        for f in self.facets:
            for face in f.faces():
                index.setdefault(face, []).append(f)
        self._index: Dict[Simplex, Tuple[Simplex, ...]] = {
            face: tuple(owners) for face, owners in index.items()
        }
        self._hash = hash(self.facets)

    # -- basic queries ---------------------------------------------------

    @property
    def is_void(self) -> bool:
        return not self.facets

    def faces(self) -> FrozenSet[Simplex]:
        return frozenset(self._index)

    def __contains__(self, s: Simplex) -> bool:
        return s in self._index

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self._index, key=lambda s: s.key))

    def facets_containing(self, s: Simplex) -> Tuple[Simplex, ...]:
        return self._index.get(s, ())

    @property
    def dim(self) -> int:
        return max((f.dim for f in self.facets), default=-2)

    def vertices(self) -> Tuple[Label, ...]:
        return tuple(sorted({v for f in self.facets for v in f}))

    def f_vector(self) -> Tuple[int, ...]:
        """Counts of faces by dimension, starting at dimension 0."""
        counts = [0] * (self.dim + 1) if self.dim >= 0 else []
        for s in self._index:
            if not s.is_empty:
                counts[s.dim] += 1
        return tuple(counts)

    def euler(self) -> int:
        """Euler characteristic, summed over non-empty faces."""
        return sum((-1) ** s.dim for s in self._index if not s.is_empty)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other for f in self.facets)

    def restrict(self, keep: Iterable[Simplex]) -> "SimplicialComplex":
        """Subcomplex generated by the given faces of this complex."""
        gens = [s for s in keep if s in self._index]
        if not gens:
            return void_complex()
        return SimplicialComplex(gens)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.facets)} facets, dim {self.dim})"


def void_complex() -> SimplicialComplex:
    return SimplicialComplex(())


def empty_complex() -> SimplicialComplex:
    """The complex whose only face is the empty simplex."""
    return SimplicialComplex((EMPTY,), _absorb=False)


def closure_complex(s: Simplex) -> SimplicialComplex:
    """The closed simplex s as a complex (the empty complex for s = ∅)."""
    return SimplicialComplex((s,), _absorb=False)


def boundary_complex(s: Simplex) -> SimplicialComplex:
    """The boundary of a simplex: the empty complex when s is a vertex."""
    if s.is_empty:
        raise ValueError("the empty simplex has no boundary complex")
    if s.dim == 0:
        return empty_complex()
    return SimplicialComplex(s.ridges())


def make_complex(facet_list: Iterable[Iterable[LabelLike]]) -> SimplicialComplex:
    """Build a complex from vertex lists; redundant facets are absorbed."""
    facets = []
    for raw in facet_list:
        f = Simplex(raw)
        if f.is_empty:
            raise ValueError("facets must be non-empty")
        facets.append(f)
    return SimplicialComplex(facets)


def join_complexes(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    """Literal join {σ ∪ τ}; void if either factor is void."""
    if a.is_void or b.is_void:
        return void_complex()
    return SimplicialComplex(
        tuple(fa.union(fb) for fa in a.facets for fb in b.facets)
    )


class RelativeComplex:
    """A pair K \\ L with L ⊆ K a subcomplex containing no facet of K.

    Facets of K lying in L are deleted from both sides at construction, so
    the invariant holds for every instance.  The faces of the relative
    complex are the faces of K not in L; the empty simplex is a face exactly
    when L is void.
    """

    __slots__ = ("ambient", "missing", "_faces")

    def __init__(self, ambient: SimplicialComplex, missing: SimplicialComplex = None):
        if missing is None:
            missing = void_complex()
        while True:
            shared = {f for f in ambient.facets if f in missing}
            if not shared:
                break
            rim = [r for f in shared for r in f.ridges()]
            ambient = SimplicialComplex(
                [f for f in ambient.facets if f not in shared] + rim
            )
            missing = SimplicialComplex(
                [f for f in missing.facets if f not in shared] + rim
            )
            if ambient.is_void:
                missing = void_complex()
                break
        if not missing.is_void and not missing.is_subcomplex_of(ambient):
            raise ValueError("missing part must be a subcomplex of the ambient complex")
        self.ambient = ambient
        self.missing = missing
        self._faces = frozenset(ambient.faces() - missing.faces())

    def faces(self) -> FrozenSet[Simplex]:
        return self._faces

    @property
    def is_absolute(self) -> bool:
        return self.missing.is_void

    @property
    def has_empty_face(self) -> bool:
        return EMPTY in self._faces

    def euler(self) -> int:
        return sum((-1) ** s.dim for s in self._faces if not s.is_empty)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RelativeComplex)
            and self.ambient == other.ambient
            and self.missing == other.missing
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.missing))

    def __repr__(self) -> str:
        return f"RelativeComplex({self.ambient!r} minus {self.missing!r})"


def join(s1: RelativeComplex, s2: RelativeComplex) -> RelativeComplex:
    """Join of relative complexes.

    The ambient part is the join of the ambients and the missing part is
    (L1 ∗ K2) ∪ (K1 ∗ L2).  Joining with a void complex is the identity.
    """
    if s1.ambient.is_void:
        return s2
    if s2.ambient.is_void:
        return s1
    shared = set(s1.ambient.vertices()) & set(s2.ambient.vertices())
    if shared:
        raise ValueError(f"join factors share vertex labels: {sorted(shared)!r}")
    amb = join_complexes(s1.ambient, s2.ambient)
    m1 = join_complexes(s1.missing, s2.ambient)
    m2 = join_complexes(s1.ambient, s2.missing)
    facets = list(m1.facets) + list(m2.facets)
    missing = SimplicialComplex(facets) if facets else void_complex()
    return RelativeComplex(amb, missing)


# -- barycentric subdivision ----------------------------------------------


def _flag_label(face: Simplex) -> Label:
    return bary(face.vertices)


def barycentric_complex(k: SimplicialComplex) -> SimplicialComplex:
    """The complex of flags of non-empty faces of k.

    Vertices are barycenter labels of the non-empty faces; facets are the
    maximal flags, one per ordering of each facet's vertices.
    """
    if k.is_void:
        return void_complex()
    if k.facets == (EMPTY,):
        return empty_complex()
    flags = set()
    for f in k.facets:
        if f.is_empty:
            continue
        for perm in permutations(f.vertices):
            chain = []
            for i in range(len(perm)):
                chain.append(_flag_label(Simplex(perm[: i + 1])))
            flags.add(Simplex(chain))
    return SimplicialComplex(tuple(flags), _absorb=False)


def barycentric(s: RelativeComplex) -> RelativeComplex:
    """sd(K \\ L) = sd(K) \\ sd(L)."""
    return RelativeComplex(
        barycentric_complex(s.ambient), barycentric_complex(s.missing)
    )


# -- stars, links, derived neighborhoods -----------------------------------


def star_complex(k: SimplicialComplex, s: Simplex) -> SimplicialComplex:
    """st_K(s) = {τ | s ∪ τ ∈ K}, the subcomplex on facets containing s."""
    if s not in k:
        raise ValueError(f"{s!r} is not a face of the complex")
    return SimplicialComplex(k.facets_containing(s), _absorb=False)


def link_complex(k: SimplicialComplex, s: Simplex) -> SimplicialComplex:
    """lk_K(s); the empty complex {∅} when s is a facet."""
    if s not in k:
        raise ValueError(f"{s!r} is not a face of the complex")
    opp = tuple(f.minus(s) for f in k.facets_containing(s))
    if all(o.is_empty for o in opp):
        return empty_complex()
    return SimplicialComplex(opp)


def star_link(s: RelativeComplex, sigma: Simplex) -> Tuple[RelativeComplex, RelativeComplex]:
    """Relative star and link of a face of the ambient complex.

    st_S(σ) = st_K(σ) \\ st_L(σ) and lk_S(σ) = lk_K(σ) \\ lk_L(σ), with the
    L-side void whenever σ is not a face of L.  Both depend on the pair
    (K, L), not just on the face set of S.
    """
    st_k = star_complex(s.ambient, sigma)
    lk_k = link_complex(s.ambient, sigma)
    if not s.missing.is_void and sigma in s.missing:
        st_l = star_complex(s.missing, sigma)
        lk_l = link_complex(s.missing, sigma)
    else:
        st_l = void_complex()
        lk_l = void_complex()
    return RelativeComplex(st_k, st_l), RelativeComplex(lk_k, lk_l)


def derived_neighborhood(l: SimplicialComplex, k: SimplicialComplex) -> SimplicialComplex:
    """First derived neighborhood N(L, K) ⊆ sd(K).

    The union of the closed stars, in sd(K), of the barycenters of the
    vertices of L.  Its facets are the maximal flags of K whose minimal
    face is a vertex of L.
    """
    if not l.is_void and not l.is_subcomplex_of(k):
        raise ValueError("first argument must be a subcomplex of the second")
    sd_k = barycentric_complex(k)
    l_vertices = set(l.vertices())
    if not l_vertices:
        return void_complex()
    chosen = []
    for flag in sd_k.facets:
        bottom = min(flag.vertices, key=lambda lab: len(lab.members))
        if len(bottom.members) == 1 and bottom.members[0] in l_vertices:
            chosen.append(flag)
    return SimplicialComplex(chosen, _absorb=False)


# -- vertex maps ------------------------------------------------------------


class VertexMap:
    """A total injective label map, acting on simplices, complexes and more."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: Mapping[Label, Label]):
        self.mapping = dict(mapping)
        if len(set(self.mapping.values())) != len(self.mapping):
            raise ValueError("vertex map must be injective")

    def __getitem__(self, v: Label) -> Label:
        try:
            return self.mapping[v]
        except KeyError:
            raise KeyError(f"label outside the domain of the map: {v!r}") from None

    def domain(self) -> FrozenSet[Label]:
        return frozenset(self.mapping)

    def image(self) -> FrozenSet[Label]:
        return frozenset(self.mapping.values())

    def on_simplex(self, s: Simplex) -> Simplex:
        return Simplex(self[v] for v in s)

    def on_complex(self, k: SimplicialComplex) -> SimplicialComplex:
        if k.is_void:
            return k
        return SimplicialComplex(
            tuple(self.on_simplex(f) for f in k.facets), _absorb=False
        )

    def on_relative(self, s: RelativeComplex) -> RelativeComplex:
        return RelativeComplex(self.on_complex(s.ambient), self.on_complex(s.missing))

    def compose(self, inner: "VertexMap") -> "VertexMap":
        return VertexMap({v: self[w] for v, w in inner.mapping.items()})


def link_iso_sd(k: SimplicialComplex, sigma: Simplex) -> VertexMap:
    """Vertex map realizing sd(∂σ) ∗ sd(lk_K(σ)) ≅ lk_{sd K}(σ̂).

    Barycenters of proper faces of σ map to themselves; the barycenter of a
    link face λ maps to the barycenter of σ ∪ λ.
    """
    if sigma not in k or sigma.is_empty:
        raise ValueError(f"{sigma!r} is not a non-empty face of the complex")
    mapping: Dict[Label, Label] = {}
    for face in sigma.faces():
        if not face.is_empty and face != sigma:
            lab = _flag_label(face)
            mapping[lab] = lab
    for lam in link_complex(k, sigma).faces():
        if not lam.is_empty:
            mapping[_flag_label(lam)] = _flag_label(sigma.union(lam))
    return VertexMap(mapping)


def link_model_sd(k: SimplicialComplex, sigma: Simplex) -> SimplicialComplex:
    """The model complex sd(∂σ) ∗ sd(lk_K(σ)), domain of link_iso_sd."""
    bd = barycentric_complex(boundary_complex(sigma))
    lk = barycentric_complex(link_complex(k, sigma))
    return join_complexes(bd, lk)


def link_iso_sd2(k: SimplicialComplex, sigma: Simplex) -> VertexMap:
    """Vertex map realizing sd(sd(∂σ) ∗ sd(lk_K σ)) ≅ lk_{sd²K}(σ̂̂).

    A vertex of the domain is the barycenter of a face Y of the model join;
    it maps to the barycenter of the sd(K)-simplex obtained by pushing Y
    through link_iso_sd and adjoining the barycenter of σ itself.
    """
    inner = link_iso_sd(k, sigma)
    sigma_hat = _flag_label(sigma)
    model = link_model_sd(k, sigma)
    mapping: Dict[Label, Label] = {}
    for face in model.faces():
        if face.is_empty:
            continue
        pushed = [inner[v] for v in face]
        mapping[bary(face.vertices)] = bary(pushed + [sigma_hat])
    return VertexMap(mapping)


def star_intersection_sd2(
    k: SimplicialComplex, sigma: Simplex, tau: Simplex
) -> Tuple[SimplicialComplex, Optional[SimplicialComplex]]:
    """Intersection of the closed stars of σ̂̂ and τ̂̂ in sd²(K), with model.

    Returns the intersection subcomplex of sd²(K) and, when σ is a proper
    face of τ, its model N(τ̂, sd(∂σ) ∗ sd(lk_K σ)) inside the domain of
    link_iso_sd2(K, σ): the image of the model under that map is the
    intersection.  The intersection is void unless one face contains the
    other.
    """
    if sigma not in k or tau not in k or sigma.is_empty or tau.is_empty:
        raise ValueError("both arguments must be non-empty faces of the complex")
    sd2 = barycentric_complex(barycentric_complex(k))
    s_hat = bary([_flag_label(sigma)])
    t_hat = bary([_flag_label(tau)])
    st_s = star_complex(sd2, Simplex([s_hat]))
    st_t = star_complex(sd2, Simplex([t_hat]))
    inter_faces = (st_s.faces() & st_t.faces()) - {EMPTY}
    inter = sd2.restrict(inter_faces) if inter_faces else void_complex()
    model: Optional[SimplicialComplex] = None
    if sigma < tau:
        # the vertex of sd(lk_K(σ)) identified with τ̂ is the barycenter of
        # the opposite face of σ in τ
        w = _flag_label(tau.minus(sigma))
        model = derived_neighborhood(
            SimplicialComplex((Simplex([w]),)), link_model_sd(k, sigma)
        )
    return inter, model


def apply_map(x, m: VertexMap):
    """Structure-preserving relabeling of simplices, complexes and tilings."""
    from .tiles import MorseTile
    from .engine import Tiling

    if isinstance(x, Simplex):
        return m.on_simplex(x)
    if isinstance(x, SimplicialComplex):
        return m.on_complex(x)
    if isinstance(x, RelativeComplex):
        return m.on_relative(x)
    if isinstance(x, MorseTile):
        return x.relabel(m)
    if isinstance(x, Tiling):
        return Tiling(m.on_relative(x.space), tuple(t.relabel(m) for t in x.tiles))
    raise TypeError(f"cannot apply a vertex map to {type(x).__name__}")
