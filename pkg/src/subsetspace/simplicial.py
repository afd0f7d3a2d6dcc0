"""Finite simplicial sets with exact face/degeneracy calculus.

A simplicial set is presented by its non-degenerate generators and a face
table.  Every simplex is written uniquely as a strictly decreasing word of
degeneracy operators applied to a generator (Eilenberg-Zilber normal form),
and all face/degeneracy algebra is done on these normal forms with the usual
simplicial identities.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from math import comb


class SimplicialError(Exception):
    """Malformed simplicial data: bad word, bad face table, bad index."""


# A degeneracy word is a strictly decreasing tuple of operator indices,
# outermost first: (i_1, ..., i_p) denotes s_{i_1} . ... . s_{i_p}.
DegeneracyWord = tuple[int, ...]


def word_is_valid(word: tuple[int, ...], base_dim: int) -> bool:
    """True if ``word`` is a normal-form degeneracy word applicable to a base
    of dimension ``base_dim``.

    Normal form means strictly decreasing indices i_1 > ... > i_p, with the
    t-th index (1-based) at most base_dim + p - t.
    """
    p = len(word)
    for t, i in enumerate(word):
        if i < 0 or i > base_dim + p - 1 - t:
            return False
        if t + 1 < p and word[t + 1] >= i:
            return False
    return True


def compose_degeneracy(word: tuple[int, ...], j: int,
                       base_dim: int | None = None) -> tuple[int, ...]:
    """Normal form of s_j composed after ``word`` (i.e. s_j applied last).

    Uses the identity s_j s_i = s_{i+1} s_j for j <= i to push the new
    operator into its sorted slot.  If ``base_dim`` is given, the index is
    range-checked against the word's target dimension.
    """
    if j < 0:
        raise SimplicialError(f"degeneracy index {j} out of range")
    if base_dim is not None and j > base_dim + len(word):
        raise SimplicialError(
            f"degeneracy index {j} out of range for target dimension "
            f"{base_dim + len(word)}")
    bumped = [i + 1 for i in word if i >= j]
    kept = [i for i in word if i < j]
    return tuple(bumped) + (j,) + tuple(kept)


def degeneracy_words(base_dim: int, length: int) -> list[tuple[int, ...]]:
    """All valid normal-form words of the given length over a base of
    dimension ``base_dim``, in lexicographic order.

    There are C(base_dim + length, length) of them.
    """
    n = base_dim + length
    out = [w for w in combinations(range(n - 1, -1, -1), length)
           if all(w[t] <= base_dim + length - 1 - t for t in range(length))]
    out.sort()
    assert len(out) == comb(n, length)
    return out


@dataclass(frozen=True, order=True)
class FormalSimplex:
    """A (possibly degenerate) simplex: a degeneracy word applied to a
    non-degenerate generator.  Ordering is (base id, word), the canonical
    total order used everywhere for determinism.
    """
    base: int
    word: tuple[int, ...]
    dim: int

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)

    def degenerate(self, j: int) -> "FormalSimplex":
        """s_j applied to this simplex, in normal form."""
        if not 0 <= j <= self.dim:
            raise SimplicialError(f"degeneracy index {j} out of range")
        return FormalSimplex(self.base, compose_degeneracy(self.word, j),
                             self.dim + 1)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: tuple[int, int, int] | None = None  # (generator, i, j)

    def __bool__(self) -> bool:
        return self.ok


class SimplicialSet:
    """A finite simplicial set: non-degenerate generators with dense integer
    identifiers, and for each generator of positive dimension a face table of
    FormalSimplexes in normal form.

    Build with add_generator/set_faces, then treat as immutable.
    """

    def __init__(self) -> None:
        self.dim_of: list[int] = []
        self.faces: list[list[FormalSimplex] | None] = []
        self.labels: list[str] = []
        self.by_dim: list[list[int]] = []

    # -- construction ------------------------------------------------------

    def add_generator(self, dim: int, label: str | None = None) -> int:
        if dim < 0:
            raise SimplicialError("generator dimension must be >= 0")
        g = len(self.dim_of)
        self.dim_of.append(dim)
        self.faces.append(None)
        self.labels.append(label if label is not None else f"g{g}")
        while len(self.by_dim) <= dim:
            self.by_dim.append([])
        self.by_dim[dim].append(g)
        return g

    def set_faces(self, g: int, faces: list[FormalSimplex]) -> None:
        n = self.dim_of[g]
        if n == 0:
            raise SimplicialError("vertices have no faces")
        if len(faces) != n + 1:
            raise SimplicialError(
                f"generator {g} of dimension {n} needs {n + 1} faces")
        for f in faces:
            if not 0 <= f.base < len(self.dim_of):
                raise SimplicialError(f"face base {f.base} does not exist")
            if not word_is_valid(f.word, self.dim_of[f.base]):
                raise SimplicialError(f"face word {f.word} not in normal form")
            if f.dim != n - 1 or self.dim_of[f.base] + len(f.word) != n - 1:
                raise SimplicialError("face dimension mismatch")
        self.faces[g] = list(faces)

    # -- accessors ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.by_dim) - 1

    @property
    def n_generators(self) -> int:
        return len(self.dim_of)

    def generators(self, n: int) -> list[int]:
        return self.by_dim[n] if 0 <= n <= self.dim else []

    def f_vector(self) -> list[int]:
        return [len(gs) for gs in self.by_dim]

    def simplex(self, g: int) -> FormalSimplex:
        return FormalSimplex(g, (), self.dim_of[g])

    def label_of(self, x: FormalSimplex) -> str:
        name = self.labels[x.base]
        prefix = " ".join(f"s_{i}" for i in x.word)
        return f"{prefix} {name}" if prefix else name


def apply_face(x: FormalSimplex, i: int, S: SimplicialSet) -> FormalSimplex:
    """d_i applied to x, commuted through the degeneracy word.

    Identities used: d_i s_j = s_{j-1} d_i (i < j), = id (i in {j, j+1}),
    = s_j d_{i-1} (i > j + 1).  If the face index survives to the base, the
    stored face of the generator is substituted and the remaining word is
    recomposed into normal form.
    """
    if x.dim < 1:
        raise SimplicialError("cannot take a face of a vertex")
    if not 0 <= i <= x.dim:
        raise SimplicialError(f"face index {i} out of range for dim {x.dim}")
    survivors: list[int] = []
    idx = i
    for pos, j in enumerate(x.word):
        if idx < j:
            survivors.append(j - 1)
        elif idx in (j, j + 1):
            word = x.word[pos + 1:]
            for op in reversed(survivors):
                word = compose_degeneracy(word, op)
            return FormalSimplex(x.base, word, x.dim - 1)
        else:
            survivors.append(j)
            idx -= 1
    face_table = S.faces[x.base]
    if face_table is None:
        raise SimplicialError(f"generator {x.base} has no face table")
    f = face_table[idx]
    word = f.word
    for op in reversed(survivors):
        word = compose_degeneracy(word, op)
    return FormalSimplex(f.base, word, x.dim - 1)


def enumerate_level(S: SimplicialSet, n: int) -> list[FormalSimplex]:
    """All simplices of S in dimension n, degenerate ones included, in the
    canonical (base id, word) order."""
    if n < 0:
        raise SimplicialError("dimension must be >= 0")
    out: list[FormalSimplex] = []
    for g in range(S.n_generators):
        m = S.dim_of[g]
        if m <= n:
            out.extend(FormalSimplex(g, w, n)
                       for w in degeneracy_words(m, n - m))
    out.sort()
    return out


def validate(S: SimplicialSet) -> ValidationReport:
    """Check the simplicial identity d_i d_j = d_{j-1} d_i (i < j) on every
    generator; report the first violation if any."""
    for g in range(S.n_generators):
        n = S.dim_of[g]
        if n < 1 and S.faces[g] is not None:
            return ValidationReport(False, (g, 0, 0))
        if n >= 1 and S.faces[g] is None:
            return ValidationReport(False, (g, 0, 0))
        if n < 2:
            continue
        x = S.simplex(g)
        for j in range(1, n + 1):
            dj = apply_face(x, j, S)
            for i in range(j):
                if apply_face(dj, i, S) != apply_face(apply_face(x, i, S),
                                                      j - 1, S):
                    return ValidationReport(False, (g, i, j))
    return ValidationReport(True)


# -- JSON ingestion ---------------------------------------------------------
#
# Format: {"generators": [["v"], ["e"]], "faces": {"e": ["v", "v"]}}
# where "generators" lists names per dimension (index 0 = vertices) and each
# face expression is "s_{i1} ... s_{ip} name" with i1 > ... > ip (the empty
# prefix is allowed).  Words not in normal form are rejected.

_DEGEN_TOKEN = re.compile(r"^s_(\d+)$")


def parse_face_expression(expr: str, name_to_id: dict[str, int],
                          dim_of: list[int]) -> FormalSimplex:
    tokens = expr.split()
    if not tokens:
        raise SimplicialError("empty face expression")
    name = tokens[-1]
    if name not in name_to_id:
        raise SimplicialError(f"unknown generator name {name!r}")
    word = []
    for tok in tokens[:-1]:
        m = _DEGEN_TOKEN.match(tok)
        if not m:
            raise SimplicialError(f"bad token {tok!r} in face expression")
        word.append(int(m.group(1)))
    base = name_to_id[name]
    if not word_is_valid(tuple(word), dim_of[base]):
        raise SimplicialError(
            f"word {tuple(word)} is not in normal form for {name!r}")
    return FormalSimplex(base, tuple(word), dim_of[base] + len(word))


def simplicial_set_from_dict(data: dict) -> SimplicialSet:
    try:
        gen_lists = data["generators"]
        face_map = data.get("faces", {})
    except (TypeError, KeyError) as exc:
        raise SimplicialError("missing 'generators' key") from exc
    S = SimplicialSet()
    name_to_id: dict[str, int] = {}
    for dim, names in enumerate(gen_lists):
        for name in names:
            if name in name_to_id:
                raise SimplicialError(f"duplicate generator name {name!r}")
            name_to_id[name] = S.add_generator(dim, name)
    for name, exprs in face_map.items():
        if name not in name_to_id:
            raise SimplicialError(f"face table for unknown generator {name!r}")
        g = name_to_id[name]
        S.set_faces(g, [parse_face_expression(e, name_to_id, S.dim_of)
                        for e in exprs])
    for g in range(S.n_generators):
        if S.dim_of[g] >= 1 and S.faces[g] is None:
            raise SimplicialError(
                f"generator {S.labels[g]!r} has no face table")
    return S


def load_simplicial_set(path: str) -> SimplicialSet:
    with open(path) as fh:
        return simplicial_set_from_dict(json.load(fh))


# -- isomorphism testing ----------------------------------------------------

def find_isomorphism(A: SimplicialSet, B: SimplicialSet) -> dict[int, int] | None:
    """Search for a simplicial isomorphism A -> B; returns the generator map
    or None.  Backtracking over generators in order of increasing dimension,
    pruning on face compatibility (faces only reference lower dimensions)."""
    if A.f_vector() != B.f_vector():
        return None
    order = sorted(range(A.n_generators), key=lambda g: (A.dim_of[g], g))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def image(x: FormalSimplex) -> FormalSimplex:
        return FormalSimplex(mapping[x.base], x.word, x.dim)

    def compatible(g: int, h: int) -> bool:
        if A.dim_of[g] != B.dim_of[h]:
            return False
        if A.dim_of[g] == 0:
            return True
        fa, fb = A.faces[g], B.faces[h]
        return all(image(fa[i]) == fb[i] for i in range(len(fa)))

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        g = order[pos]
        for h in B.generators(A.dim_of[g]):
            if h in used:
                continue
            mapping[g] = h
            if compatible(g, h):
                used.add(h)
                if extend(pos + 1):
                    return True
                used.discard(h)
            del mapping[g]
        return False

    return dict(mapping) if extend(0) else None
