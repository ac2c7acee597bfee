"""Discrete Morse functions: validation, canonical form, critical faces,
and the step filtration (single critical face or free-ridge collapse pair
per step) that drives the shelling constructions.

Values are exact rationals throughout; all comparisons are exact.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .complexes import EMPTY, Simplex, SimplicialComplex

__all__ = [
    "DiscreteMorseFunction",
    "ValidationReport",
    "FiltrationStep",
    "Filtration",
    "validate",
    "canonicalize",
    "critical_faces",
    "filtration",
    "trivial_dmf",
    "greedy_collapse_dmf",
    "dmf_from_matching",
]


@dataclass(frozen=True)
class DiscreteMorseFunction:
    """A total map from non-empty faces to rationals."""

    values: Mapping[Simplex, Fraction]

    def __getitem__(self, s: Simplex) -> Fraction:
        return self.values[s]

    def items(self):
        return self.values.items()


def _check_total(k: SimplicialComplex, f: DiscreteMorseFunction) -> None:
    for s in k.faces():
        if not s.is_empty and s not in f.values:
            raise ValueError(f"function not defined on the face {s!r}")


@dataclass
class ValidationReport:
    is_dmf: bool = True
    is_monotone: bool = True
    is_semi_injective: bool = True
    is_generic: bool = True
    witnesses: Dict[str, Tuple[Simplex, ...]] = field(default_factory=dict)

    @property
    def is_canonical(self) -> bool:
        return self.is_dmf and self.is_monotone and self.is_semi_injective and self.is_generic


def validate(k: SimplicialComplex, f: DiscreteMorseFunction) -> ValidationReport:
    """Check the two cardinality conditions plus the three canonical-form
    properties (monotone, semi-injective, generic), with witnesses."""
    _check_total(k, f)
    report = ValidationReport()
    faces = sorted((s for s in k.faces() if not s.is_empty), key=lambda s: s.key)
    for s in faces:
        up = [t for t in faces if s < t and f[s] >= f[t]]
        down = [t for t in faces if t < s and f[s] <= f[t]]
        if len(up) > 1:
            report.is_dmf = False
            report.witnesses.setdefault("dmf_up", (s, *up))
        if len(down) > 1:
            report.is_dmf = False
            report.witnesses.setdefault("dmf_down", (s, *down))
        for t in faces:
            if s < t and f[s] > f[t] and not report.witnesses.get("monotone"):
                report.is_monotone = False
                report.witnesses["monotone"] = (s, t)
    by_value: Dict[Fraction, List[Simplex]] = {}
    for s in faces:
        by_value.setdefault(f[s], []).append(s)
    for val, group in sorted(by_value.items()):
        if len(group) > 2 and not report.witnesses.get("semi_injective"):
            report.is_semi_injective = False
            report.witnesses["semi_injective"] = tuple(group)
        for a in group:
            for b in group:
                if a.key < b.key and not (a < b or b < a):
                    report.is_generic = False
                    report.witnesses.setdefault("generic", (a, b))
    return report


def _matching(k: SimplicialComplex, f: DiscreteMorseFunction) -> Dict[Simplex, Simplex]:
    """Codimension-one pairs (σ, τ) with f(τ) ≤ f(σ); each face in ≤ 1 pair."""
    pairs: Dict[Simplex, Simplex] = {}
    used = set()
    for s in sorted((x for x in k.faces() if not x.is_empty), key=lambda x: x.key):
        for t in sorted(k.faces(), key=lambda x: x.key):
            if t.dim == s.dim + 1 and s < t and f[t] <= f[s]:
                if s in used or t in used:
                    raise ValueError("function does not induce a matching; not a dmf")
                pairs[s] = t
                used.add(s)
                used.add(t)
    return pairs


def _assign_values(
    k: SimplicialComplex, pairs: Dict[Simplex, Simplex]
) -> DiscreteMorseFunction:
    """Values from a matching: topologically sort the matched Hasse diagram
    (pairs contracted, all other cover relations pointing up) with a
    canonical tie-break; matched pairs share one value."""
    partner: Dict[Simplex, Simplex] = {}
    for s, t in pairs.items():
        partner[s] = t
        partner[t] = s
    faces = [s for s in k.faces() if not s.is_empty]
    node_of: Dict[Simplex, Simplex] = {}
    for s in faces:
        mate = partner.get(s)
        node_of[s] = s if mate is None or s.key < mate.key else mate
    members: Dict[Simplex, List[Simplex]] = {}
    for s in faces:
        members.setdefault(node_of[s], []).append(s)
    succs: Dict[Simplex, set] = {n: set() for n in members}
    indeg: Dict[Simplex, int] = {n: 0 for n in members}
    for s in faces:
        for t in faces:
            if t.dim == s.dim + 1 and s < t and pairs.get(s) != t:
                a, b = node_of[s], node_of[t]
                if a != b and b not in succs[a]:
                    succs[a].add(b)
                    indeg[b] += 1
    heap = [n.key for n in members if indeg[n] == 0]
    key_to_node = {n.key: n for n in members}
    heapq.heapify(heap)
    values: Dict[Simplex, Fraction] = {}
    counter = 0
    while heap:
        n = key_to_node[heapq.heappop(heap)]
        for s in members[n]:
            values[s] = Fraction(counter)
        counter += 1
        for b in succs[n]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, b.key)
    if len(values) != len(faces):
        raise ValueError("matched Hasse diagram has a cycle; not an acyclic matching")
    return DiscreteMorseFunction(values)


def canonicalize(k: SimplicialComplex, f: DiscreteMorseFunction) -> DiscreteMorseFunction:
    """Reassign values so the function is monotone, semi-injective and
    generic, preserving the induced pairing and so the critical faces."""
    report = validate(k, f)
    if not report.is_dmf:
        raise ValueError(f"not a discrete Morse function: {report.witnesses}")
    return _assign_values(k, _matching(k, f))


def critical_faces(k: SimplicialComplex, f: DiscreteMorseFunction) -> Dict[Simplex, int]:
    """Faces where a canonical function is injective, with index = dimension."""
    _check_total(k, f)
    count: Dict[Fraction, int] = {}
    for s, v in f.items():
        count[v] = count.get(v, 0) + 1
    return {
        s: s.dim
        for s, v in f.items()
        if count[v] == 1
    }


def critical_census(k: SimplicialComplex, f: DiscreteMorseFunction) -> Dict[int, int]:
    census: Dict[int, int] = {}
    for _, idx in critical_faces(k, f).items():
        census[idx] = census.get(idx, 0) + 1
    return census


@dataclass(frozen=True)
class FiltrationStep:
    """A single critical face, or a collapse pair (ridge, coface)."""

    critical: Optional[Simplex] = None
    collapse: Optional[Tuple[Simplex, Simplex]] = None

    @property
    def is_critical(self) -> bool:
        return self.critical is not None

    def faces(self) -> Tuple[Simplex, ...]:
        if self.critical is not None:
            return (self.critical,)
        return self.collapse


@dataclass(frozen=True)
class Filtration:
    steps: Tuple[FiltrationStep, ...]


def filtration(k: SimplicialComplex, f: DiscreteMorseFunction) -> Filtration:
    """Order the faces by value into critical and collapse steps.

    Every prefix union must be a subcomplex and every pair must be a ridge
    and a coface; violations signal a non-canonical function.
    """
    _check_total(k, f)
    groups: Dict[Fraction, List[Simplex]] = {}
    for s, v in f.items():
        groups.setdefault(v, []).append(s)
    steps: List[FiltrationStep] = []
    seen = {EMPTY}
    for v in sorted(groups):
        group = sorted(groups[v], key=lambda s: s.key)
        if len(group) == 1:
            steps.append(FiltrationStep(critical=group[0]))
        elif len(group) == 2:
            theta, tau = group
            if not (theta < tau and tau.dim == theta.dim + 1):
                raise ValueError(f"level set {group!r} is not a collapse pair")
            steps.append(FiltrationStep(collapse=(theta, tau)))
        else:
            raise ValueError("level set with more than two faces; not semi-injective")
        for s in group:
            for r in s.ridges():
                if r not in seen:
                    raise ValueError(f"prefix is not a subcomplex at {s!r}")
            seen.add(s)
    return Filtration(tuple(steps))


def trivial_dmf(k: SimplicialComplex) -> DiscreteMorseFunction:
    """Dimension as a Morse function, canonicalized; every face critical."""
    raw = DiscreteMorseFunction(
        {s: Fraction(s.dim) for s in k.faces() if not s.is_empty}
    )
    return canonicalize(k, raw)


def dmf_from_matching(
    k: SimplicialComplex, pairs: Sequence[Tuple[Simplex, Simplex]]
) -> DiscreteMorseFunction:
    """Synthesize a canonical function whose pairing is the given matching;
    fails when the matching is not acyclic."""
    seen = set()
    mapping: Dict[Simplex, Simplex] = {}
    for s, t in pairs:
        if s not in k.faces() or t not in k.faces():
            raise ValueError(f"({s!r}, {t!r}) is not a pair of faces")
        if not (s < t and t.dim == s.dim + 1):
            raise ValueError(f"({s!r}, {t!r}) is not a ridge/coface pair")
        if s in seen or t in seen:
            raise ValueError("matching reuses a face")
        seen.update((s, t))
        mapping[s] = t
    return _assign_values(k, mapping)


def greedy_collapse_dmf(k: SimplicialComplex) -> DiscreteMorseFunction:
    """Repeated free-ridge collapses with deterministic tie-breaks.

    Whenever some facet has a free ridge, collapse the canonically smallest
    such pair; otherwise remove the canonically smallest facet as a critical
    face.  On complexes the greedy order fully collapses, the result has a
    single critical vertex.
    """
    remaining = {s for s in k.faces() if not s.is_empty}
    removal: List[Tuple[Simplex, ...]] = []
    while remaining:
        maximal = [s for s in remaining if not any(s < t for t in remaining)]
        best: Optional[Tuple[Simplex, Simplex]] = None
        for tau in maximal:
            for theta in tau.ridges():
                if theta.is_empty or theta not in remaining:
                    continue
                cofaces = [t for t in remaining if theta < t]
                if cofaces == [tau]:
                    cand = (theta, tau)
                    if best is None or (cand[0].key, cand[1].key) < (best[0].key, best[1].key):
                        best = cand
        if best is not None:
            removal.append(best)
            remaining.difference_update(best)
        else:
            crit = min(maximal, key=lambda s: s.key)
            removal.append((crit,))
            remaining.discard(crit)
    values: Dict[Simplex, Fraction] = {}
    total = len(removal)
    for step, faces in enumerate(removal):
        for s in faces:
            values[s] = Fraction(total - step)
    return canonicalize(k, DiscreteMorseFunction(values))
