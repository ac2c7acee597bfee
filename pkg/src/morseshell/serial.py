"""File formats: complexes, Morse functions, tilings, certificates.

Complexes travel either as a facet-list text file (one facet per line,
whitespace-separated atom names, ``#`` comments) or as JSON
``{"facets": [[...]], "missing": [[...]]}``.  A label serializes as a string
(atom) or as an array of labels (a barycenter).  Morse functions are JSON
maps from faces of an atom-labeled complex (space-joined names) to rational
strings, or a matching file ``{"pairs": [[face, coface], ...]}``.  Tilings
are JSON lines, one tile per line in shelling order, closed by a summary
record carrying depth, census and a checksum of the tile lines.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import EMPTY, RelativeComplex, Simplex, SimplicialComplex, make_complex, void_complex
from .engine import Census, Tiling
from .labels import Label, atom, bary
from .morse import DiscreteMorseFunction, dmf_from_matching
from .tiles import MorseTile
from .verify import Certificate

__all__ = [
    "label_to_json",
    "label_from_json",
    "simplex_to_json",
    "simplex_from_json",
    "load_complex_text",
    "dump_complex_text",
    "load_complex_json",
    "dump_complex_json",
    "load_complex",
    "load_morse_json",
    "dump_morse_json",
    "tile_to_json",
    "tile_from_json",
    "tiling_to_lines",
    "tiling_from_lines",
    "certificate_to_json",
]


def label_to_json(lab: Label):
    if lab.is_atom:
        return lab.name
    return [label_to_json(m) for m in lab.members]


def label_from_json(data) -> Label:
    if isinstance(data, str):
        return atom(data)
    if isinstance(data, list):
        return bary(label_from_json(x) for x in data)
    raise ValueError(f"not a label: {data!r}")


def simplex_to_json(s: Simplex) -> List:
    return [label_to_json(v) for v in s.vertices]


def simplex_from_json(data) -> Simplex:
    if not isinstance(data, list):
        raise ValueError(f"not a simplex: {data!r}")
    return Simplex(label_from_json(x) for x in data)


# -- complexes ---------------------------------------------------------------


def load_complex_text(text: str) -> RelativeComplex:
    facets = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        facets.append(line.split())
    if not facets:
        raise ValueError("no facets in input")
    return RelativeComplex(make_complex(facets))


def dump_complex_text(s: RelativeComplex) -> str:
    if not s.missing.is_void:
        raise ValueError("text format carries absolute complexes only")
    lines = []
    for f in s.ambient.facets:
        if any(not v.is_atom for v in f):
            raise ValueError("text format carries atom labels only")
        lines.append(" ".join(v.name for v in f))
    return "\n".join(lines) + "\n"


def load_complex_json(text: str) -> RelativeComplex:
    data = json.loads(text)
    if not isinstance(data, dict) or "facets" not in data:
        raise ValueError('complex JSON needs a "facets" array')
    ambient = SimplicialComplex([simplex_from_json(f) for f in data["facets"]])
    missing_raw = data.get("missing") or []
    if missing_raw:
        missing = SimplicialComplex([simplex_from_json(f) for f in missing_raw])
    else:
        missing = void_complex()
    return RelativeComplex(ambient, missing)


def dump_complex_json(s: RelativeComplex) -> str:
    data = {"facets": [simplex_to_json(f) for f in s.ambient.facets]}
    if not s.missing.is_void:
        data["missing"] = [simplex_to_json(f) for f in s.missing.facets]
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def load_complex(text: str) -> RelativeComplex:
    """Sniff JSON versus facet-list text."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return load_complex_json(text)
    return load_complex_text(text)


# -- Morse functions ---------------------------------------------------------


def _face_key(s: Simplex) -> str:
    return " ".join(v.name for v in s.vertices)


def _face_from_key(key) -> Simplex:
    if isinstance(key, str):
        return Simplex(key.split())
    return Simplex(key)


def load_morse_json(text: str, k: SimplicialComplex) -> DiscreteMorseFunction:
    data = json.loads(text)
    if "pairs" in data:
        pairs = [
            (_face_from_key(p[0]), _face_from_key(p[1])) for p in data["pairs"]
        ]
        return dmf_from_matching(k, pairs)
    if "values" not in data:
        raise ValueError('Morse JSON needs "values" or "pairs"')
    values: Dict[Simplex, Fraction] = {}
    for key, raw in data["values"].items():
        values[_face_from_key(key)] = Fraction(raw)
    return DiscreteMorseFunction(values)


def dump_morse_json(f: DiscreteMorseFunction) -> str:
    values = {}
    for s, v in f.items():
        if any(not lab.is_atom for lab in s.vertices):
            raise ValueError("Morse files carry functions on atom-labeled complexes")
        values[_face_key(s)] = f"{v.numerator}/{v.denominator}"
    return json.dumps({"values": values}, sort_keys=True, separators=(",", ":")) + "\n"


# -- tiles and tilings ---------------------------------------------------------


def tile_to_json(t: MorseTile) -> dict:
    """Standalone tile record, keyed by its simplex."""
    if t.morse_face is None:
        morse = None
    elif t.morse_face.is_empty:
        morse = "empty"
    else:
        morse = simplex_to_json(t.morse_face)
    return {
        "simplex": simplex_to_json(t.underlying),
        "ridges": sorted(
            (simplex_to_json(r) for r in t.missing_ridges), key=json.dumps
        ),
        "morse_face": morse,
    }


def tile_from_json(data: dict) -> MorseTile:
    raw = data.get("morse_face")
    if raw is None:
        morse: Optional[Simplex] = None
    elif raw == "empty":
        morse = EMPTY
    else:
        morse = simplex_from_json(raw)
    return MorseTile(
        simplex_from_json(data["simplex"]),
        frozenset(simplex_from_json(r) for r in data.get("ridges", ())),
        morse,
    )


def _tile_to_json(t: MorseTile) -> dict:
    if t.morse_face is None:
        morse = None
    elif t.morse_face.is_empty:
        morse = "empty"
    else:
        morse = simplex_to_json(t.morse_face)
    cls = t.tile_class()
    return {
        "facet": simplex_to_json(t.underlying),
        "ridges": sorted(
            (simplex_to_json(r) for r in t.missing_ridges), key=json.dumps
        ),
        "morse_face": morse,
        "class": {"critical": cls.index} if cls.is_critical else "regular",
    }


def _tile_from_json(data: dict) -> MorseTile:
    underlying = simplex_from_json(data["facet"])
    ridges = frozenset(simplex_from_json(r) for r in data.get("ridges", ()))
    raw = data.get("morse_face")
    if raw is None:
        morse: Optional[Simplex] = None
    elif raw == "empty":
        morse = EMPTY
    else:
        morse = simplex_from_json(raw)
    return MorseTile(underlying, ridges, morse)


def tiling_to_lines(t: Tiling, depth: int, census: Census) -> List[str]:
    """Tile lines in shelling order plus the trailing summary record."""
    lines = [
        json.dumps(_tile_to_json(tile), sort_keys=True, separators=(",", ":"))
        for tile in t.tiles
    ]
    digest = hashlib.sha256(("\n".join(lines) + "\n").encode()).hexdigest()
    summary = {
        "summary": {
            "depth": depth,
            "tiles": len(t.tiles),
            "census": {str(k): v for k, v in sorted(census.critical.items())},
            "regular": census.regular,
            "checksum": f"sha256:{digest}",
        }
    }
    lines.append(json.dumps(summary, sort_keys=True, separators=(",", ":")))
    return lines


def tiling_from_lines(lines: Sequence[str]) -> Tuple[List[MorseTile], dict, bool]:
    """Parse tile lines and the summary; also report checksum validity."""
    tiles: List[MorseTile] = []
    summary: dict = {}
    tile_lines: List[str] = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        data = json.loads(line)
        if "summary" in data:
            summary = data["summary"]
        else:
            tiles.append(_tile_from_json(data))
            tile_lines.append(line)
    digest = hashlib.sha256(("\n".join(tile_lines) + "\n").encode()).hexdigest()
    checksum_ok = summary.get("checksum") == f"sha256:{digest}"
    return tiles, summary, checksum_ok


def certificate_to_json(cert: Certificate) -> str:
    data = {
        "ok": cert.ok,
        "partition_ok": cert.partition_ok,
        "shelling_ok": cert.shelling_ok,
        "tiles_ok": cert.tiles_ok,
        "euler_ok": cert.euler_ok,
        "morse_inequalities_ok": cert.morse_inequalities_ok,
        "census": {str(k): v for k, v in sorted(cert.census.critical.items())},
        "regular": cert.census.regular,
        "failures": [
            {
                "tile": idx,
                "reason": reason,
                "witness": None if witness is None else simplex_to_json(witness),
            }
            for idx, reason, witness in cert.failures
        ],
    }
    if cert.strong_ok is not None:
        data["strong_ok"] = cert.strong_ok
    if cert.census_matches_function is not None:
        data["census_matches_function"] = cert.census_matches_function
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
