"""The finite subset functor on finite simplicial sets.

Primary construction: levelwise subsets of size <= k of the simplices of S,
with faces computed elementwise and renormalized.  Oracle: the colimit of
cartesian products of at most k factors under diagonal insertions and factor
permutations, whose classes must biject with the subsets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import comb

from .simplicial import (FormalSimplex, SimplicialSet, SimplicialError,
                         apply_face, compose_degeneracy, enumerate_level)

DEFAULT_MAX_CELLS = 200_000


class ResourceCapError(Exception):
    """A per-level enumeration exceeded the configured cell cap."""

    def __init__(self, level: int, level_size: int, projected: int, cap: int):
        self.level = level
        self.level_size = level_size
        self.projected = projected
        self.cap = cap
        super().__init__(
            f"level {level}: projected {projected} cells from {level_size} "
            f"simplices exceeds cap {cap}")

    def sizing_report(self) -> dict:
        return {"level": self.level, "level_size": self.level_size,
                "projected_cells": self.projected, "cap": self.cap}


@dataclass(frozen=True)
class SubsetSimplex:
    """A canonically sorted nonempty set of distinct same-dimension
    FormalSimplexes; the simplices of exp_k S."""
    elements: tuple[FormalSimplex, ...]

    @staticmethod
    def of(elements) -> "SubsetSimplex":
        elems = tuple(sorted(set(elements)))
        if not elems:
            raise SimplicialError("subset simplex must be nonempty")
        if len({e.dim for e in elems}) != 1:
            raise SimplicialError("subset elements must have equal dimension")
        return SubsetSimplex(elems)

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    def __len__(self) -> int:
        return len(self.elements)


def degeneracy_set(x: FormalSimplex, S: SimplicialSet) -> frozenset[int]:
    """Indices i with x in the image of s_i, by the exact membership test
    s_i(d_i(x)) == x."""
    if x.dim == 0:
        return frozenset()
    return frozenset(i for i in range(x.dim)
                     if apply_face(x, i, S).degenerate(i) == x)


def subset_degeneracy_set(A, S: SimplicialSet) -> frozenset[int]:
    """Common degeneracy indices of all elements; nonempty iff the subset is
    degenerate as a simplex of exp_k S."""
    out: frozenset[int] | None = None
    for a in A:
        d = degeneracy_set(a, S)
        out = d if out is None else out & d
        if not out:
            return frozenset()
    return out if out is not None else frozenset()


def strip_degeneracies(A, S: SimplicialSet,
                       order: str = "min") -> tuple[tuple[int, ...], SubsetSimplex]:
    """Express a set of equal-dimension simplices as word . core with core a
    non-degenerate subset.  Strips the smallest common index first (order
    'min'); order 'random:<seed>' exists for the confluence property test."""
    elems = sorted(set(A))
    if not elems:
        raise SimplicialError("cannot strip an empty subset")
    rng = None
    if order.startswith("random:"):
        rng = random.Random(int(order.split(":", 1)[1]))
    stripped: list[int] = []
    while True:
        common = subset_degeneracy_set(elems, S)
        if not common:
            break
        i = rng.choice(sorted(common)) if rng else min(common)
        stripped.append(i)
        elems = sorted({apply_face(a, i, S) for a in elems})
    word: tuple[int, ...] = ()
    for j in reversed(stripped):
        word = compose_degeneracy(word, j)
    return word, SubsetSimplex.of(elems)


@dataclass
class ExpkSpace:
    k: int
    base: SimplicialSet
    result: SimplicialSet
    subset_of: dict[int, SubsetSimplex]      # result generator id -> subset
    id_of: dict[SubsetSimplex, int]
    cells_enumerated: int


def _nondegenerate_subsets(level: list[FormalSimplex], dsets: list[frozenset[int]],
                           k: int) -> tuple[list[tuple[int, ...]], int]:
    """Depth-first enumeration of index subsets of size <= k whose D-set
    intersection is empty.  No pruning on the D-set: a superset of a
    degenerate set can be non-degenerate.  Returns (subsets, visited)."""
    found: list[tuple[int, ...]] = []
    visited = 0
    n = len(level)
    stack: list[int] = []

    def extend(start: int, inter: frozenset[int]):
        nonlocal visited
        for idx in range(start, n):
            stack.append(idx)
            visited += 1
            new_inter = inter & dsets[idx] if stack[:-1] else dsets[idx]
            if not new_inter:
                found.append(tuple(stack))
            if len(stack) < k:
                extend(idx + 1, new_inter)
            stack.pop()

    extend(0, frozenset())
    return found, visited


def build_expk(S: SimplicialSet, k: int,
               max_cells: int = DEFAULT_MAX_CELLS) -> ExpkSpace:
    """Construct exp_k S level by level up to the hard dimension bound
    k * dim(S); generators are the non-degenerate subset simplices, faces are
    elementwise faces renormalized through strip_degeneracies."""
    if k < 1:
        raise SimplicialError("k must be >= 1")
    result = SimplicialSet()
    id_of: dict[SubsetSimplex, int] = {}
    subset_of: dict[int, SubsetSimplex] = {}
    cells = 0
    top = k * S.dim
    pending_faces: list[tuple[int, SubsetSimplex]] = []
    for n in range(top + 1):
        level = enumerate_level(S, n)
        m = len(level)
        projected = sum(comb(m, j) for j in range(1, k + 1))
        if projected > max_cells:
            raise ResourceCapError(n, m, projected, max_cells)
        dsets = [degeneracy_set(x, S) for x in level]
        subsets, visited = _nondegenerate_subsets(level, dsets, k)
        cells += visited
        for idxs in sorted(subsets, key=lambda t: tuple(level[i] for i in t)):
            sub = SubsetSimplex(tuple(level[i] for i in idxs))
            label = "{" + ",".join(S.label_of(e) for e in sub.elements) + "}"
            g = result.add_generator(n, label)
            id_of[sub] = g
            subset_of[g] = sub
            if n >= 1:
                pending_faces.append((g, sub))
    for g, sub in pending_faces:
        faces = []
        for i in range(sub.dim + 1):
            word, core = strip_degeneracies(
                [apply_face(a, i, S) for a in sub.elements], S)
            faces.append(FormalSimplex(id_of[core], word, sub.dim - 1))
        result.set_faces(g, faces)
    while len(result.by_dim) > 1 and not result.by_dim[-1]:
        result.by_dim.pop()
    return ExpkSpace(k=k, base=S, result=result, subset_of=subset_of,
                     id_of=id_of, cells_enumerated=cells)


@dataclass
class OracleSummary:
    level: int
    k: int
    level_size: int
    class_count: int
    expected_classes: int
    bijection_ok: bool
    arrows_checked: int
    arrows_ok: bool

    @property
    def ok(self) -> bool:
        return (self.class_count == self.expected_classes
                and self.bijection_ok and self.arrows_ok)


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def colimit_level_oracle(S: SimplicialSet, k: int, n: int,
                         max_cells: int = DEFAULT_MAX_CELLS,
                         seed: int = 0, samples: int = 50) -> OracleSummary:
    """Build the level-n colimit of tuples of length <= k under diagonal
    insertions and factor permutations, and compare its classes with the
    nonempty subsets of size <= k of S_n.

    Also samples face/degeneracy arrows and checks they commute with the
    class -> subset bijection.
    """
    if k < 1:
        raise SimplicialError("k must be >= 1")
    level = enumerate_level(S, n)
    m = len(level)
    total = sum(m ** j for j in range(1, k + 1))
    if total > max_cells:
        raise ResourceCapError(n, m, total, max_cells)

    tuples: list[tuple[int, ...]] = []
    index: dict[tuple[int, ...], int] = {}
    for j in range(1, k + 1):
        for t in product(range(m), repeat=j):
            index[t] = len(tuples)
            tuples.append(t)

    ds = _DisjointSet(len(tuples))
    for t in tuples:
        j = len(t)
        # adjacent transpositions generate all permutations of the factors
        for p in range(j - 1):
            swapped = t[:p] + (t[p + 1], t[p]) + t[p + 2:]
            ds.union(index[t], index[swapped])
        # diagonal insertions: duplicate one coordinate
        if j < k:
            for p in range(j):
                dup = t[:p] + (t[p],) + t[p:]
                ds.union(index[t], index[dup])

    classes: dict[int, list[tuple[int, ...]]] = {}
    for t in tuples:
        classes.setdefault(ds.find(index[t]), []).append(t)
    expected = sum(comb(m, j) for j in range(1, k + 1))

    # bijection witness: every class must consist exactly of the tuples whose
    # coordinate set is one fixed subset of size <= k
    witnessed: set[frozenset[int]] = set()
    bijection_ok = True
    for members in classes.values():
        sets = {frozenset(t) for t in members}
        if len(sets) != 1:
            bijection_ok = False
            break
        witnessed.add(sets.pop())
    if bijection_ok:
        bijection_ok = (len(witnessed) == len(classes)
                        and all(1 <= len(s) <= k for s in witnessed))

    # sampled arrows: elementwise d_i / s_i on a tuple must land in the class
    # of the elementwise image of its subset
    rng = random.Random(seed)
    arrows_ok = True
    checked = 0
    if tuples:
        for _ in range(samples):
            t = rng.choice(tuples)
            subset = frozenset(level[c] for c in t)
            if n >= 1:
                i = rng.randrange(n + 1)
                faces_t = frozenset(apply_face(level[c], i, S) for c in t)
                faces_subset = frozenset(apply_face(x, i, S) for x in subset)
                checked += 1
                if faces_t != faces_subset:
                    arrows_ok = False
            i = rng.randrange(n + 1)
            degen_t = frozenset(level[c].degenerate(i) for c in t)
            degen_subset = frozenset(x.degenerate(i) for x in subset)
            checked += 1
            if degen_t != degen_subset:
                arrows_ok = False

    return OracleSummary(level=n, k=k, level_size=m,
                         class_count=len(classes), expected_classes=expected,
                         bijection_ok=bijection_ok, arrows_checked=checked,
                         arrows_ok=arrows_ok)
