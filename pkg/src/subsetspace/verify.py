"""Executable checks of the connectivity statements on concrete spaces.

Connectivity is verified homologically: a space passes when its reduced
integer homology vanishes through the claimed bound.  Simple connectivity,
needed to upgrade homological vanishing to actual connectivity, is supplied
by citation and not computed here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .simplicial import SimplicialSet
from .spaces import WedgeSpec, wedge
from .expk import DEFAULT_MAX_CELLS, build_expk
from .homology import (HomologyResult, homology, restricted_chains,
                       space_homology)

PASS = "pass"
FAIL = "fail"
HYPOTHESES_NOT_MET = "hypotheses-not-met"


@dataclass
class ConnectivityClaim:
    k: int
    m: int
    bound: int  # k + m - 2
    verdict: str
    offending_degree: int | None
    homology: HomologyResult


def _reduced_vanishes_through(h: HomologyResult, bound: int) -> int | None:
    """First degree <= bound with nonzero reduced homology, or None."""
    for i in range(0, bound + 1):
        if not h.is_trivial_in(i):
            return i
    return None


def theorem1_check(spec: WedgeSpec, k: int,
                   max_cells: int = DEFAULT_MAX_CELLS) -> ConnectivityClaim:
    """Check that exp_k of a homogeneous wedge of (m+1)-spheres has vanishing
    reduced homology through degree k + m - 2."""
    dims = set(spec.sphere_dims)
    if len(dims) != 1:
        raise ValueError("theorem1_check needs a homogeneous wedge")
    m = dims.pop() - 1
    bound = k + m - 2
    space = build_expk(wedge(spec), k, max_cells=max_cells)
    h = space_homology(space.result, reduced=True)
    offending = _reduced_vanishes_through(h, bound)
    return ConnectivityClaim(k=k, m=m, bound=bound,
                             verdict=PASS if offending is None else FAIL,
                             offending_degree=offending, homology=h)


@dataclass
class ConcentrationVerdict:
    k: int
    verdict: str
    offending_degree: int | None
    homology: HomologyResult


def tuffley_check(spec: WedgeSpec, k: int,
                  max_cells: int = DEFAULT_MAX_CELLS) -> ConcentrationVerdict:
    """For a wedge of circles, reduced homology of exp_k must be concentrated
    in degrees k-1 and k."""
    if any(d != 1 for d in spec.sphere_dims):
        raise ValueError("tuffley_check needs a wedge of circles")
    space = build_expk(wedge(spec), k, max_cells=max_cells)
    h = space_homology(space.result, reduced=True)
    offending = None
    for i in range(len(h.betti)):
        if i in (k - 1, k):
            continue
        if not h.is_trivial_in(i):
            offending = i
            break
    return ConcentrationVerdict(k=k,
                                verdict=PASS if offending is None else FAIL,
                                offending_degree=offending, homology=h)


@dataclass
class Lemma1Instance:
    """A simplicial set with a cover by generator-closed subsets and the
    vanishing degree parameter j."""
    Y: SimplicialSet
    cover: list[set[int]]
    j: int


@dataclass
class Lemma1Verdict:
    verdict: str
    detail: str


def _reduced_homology_of(Y: SimplicialSet, gens: set[int]) -> HomologyResult:
    return homology(restricted_chains(Y, gens), reduced=True)


def lemma1_check(inst: Lemma1Instance) -> Lemma1Verdict:
    """Evaluate the cover-vanishing implication: if the total intersection is
    nonempty, every s-fold intersection (s >= 2) has vanishing reduced
    homology below degree j, and every cover member has vanishing reduced
    homology below degree j+1, then so does the whole space.

    Failed hypotheses yield 'hypotheses-not-met', never a failure.
    """
    Y, cover, j = inst.Y, inst.cover, inst.j
    if not cover:
        raise ValueError("cover must be nonempty")
    union: set[int] = set()
    for idx, U in enumerate(cover):
        for g in U:
            if Y.dim_of[g] >= 1:
                for f in Y.faces[g]:
                    if f.base not in U:
                        raise ValueError(
                            f"cover member {idx} is not generator-closed")
        union |= U
    if union != set(range(Y.n_generators)):
        raise ValueError("cover does not exhaust the space")

    total = set.intersection(*cover)
    if not total:
        return Lemma1Verdict(HYPOTHESES_NOT_MET, "total intersection empty")
    for s in range(2, len(cover) + 1):
        for idxs in combinations(range(len(cover)), s):
            inter = set.intersection(*(cover[i] for i in idxs))
            if not inter:
                return Lemma1Verdict(
                    HYPOTHESES_NOT_MET,
                    f"intersection {idxs} empty")
            h = _reduced_homology_of(Y, inter)
            for i in range(0, j):
                if not h.is_trivial_in(i):
                    return Lemma1Verdict(
                        HYPOTHESES_NOT_MET,
                        f"intersection {idxs} has homology in degree {i}")
    for idx, U in enumerate(cover):
        h = _reduced_homology_of(Y, U)
        for i in range(0, j + 1):
            if not h.is_trivial_in(i):
                return Lemma1Verdict(
                    HYPOTHESES_NOT_MET,
                    f"cover member {idx} has homology in degree {i}")

    h = _reduced_homology_of(Y, union)
    for i in range(0, j + 1):
        if not h.is_trivial_in(i):
            return Lemma1Verdict(
                FAIL, f"conclusion violated in degree {i}")
    return Lemma1Verdict(PASS, "hypotheses and conclusion hold")


def close_under_faces(S: SimplicialSet, gens: set[int]) -> set[int]:
    """Smallest generator-closed set containing gens."""
    out = set(gens)
    stack = list(gens)
    while stack:
        g = stack.pop()
        if S.dim_of[g] >= 1:
            for f in S.faces[g]:
                if f.base not in out:
                    out.add(f.base)
                    stack.append(f.base)
    return out


def random_lemma1_instance(Y: SimplicialSet, rng: random.Random) -> Lemma1Instance:
    """A random generator-closed cover of Y (2 or 3 members) with a random
    vanishing parameter."""
    n = Y.n_generators
    r = rng.choice([2, 3])
    cover = []
    for _ in range(r):
        seed = {g for g in range(n) if rng.random() < 0.6}
        cover.append(close_under_faces(Y, seed))
    missing = set(range(n)) - set.union(*cover) if cover else set()
    if missing:
        i = rng.randrange(r)
        cover[i] = close_under_faces(Y, cover[i] | missing)
    return Lemma1Instance(Y=Y, cover=cover, j=rng.choice([0, 1, 2]))


@dataclass
class InvarianceVerdict:
    verdict: str
    homology_a: HomologyResult
    homology_b: HomologyResult


def invariance_check(A: SimplicialSet, B: SimplicialSet, k: int,
                     max_cells: int = DEFAULT_MAX_CELLS) -> InvarianceVerdict:
    """Homology tables of exp_k of two models of the same homotopy type must
    agree degree-wise in betti and torsion."""
    ha = space_homology(build_expk(A, k, max_cells=max_cells).result)
    hb = space_homology(build_expk(B, k, max_cells=max_cells).result)
    return InvarianceVerdict(
        verdict=PASS if ha.groups_equal(hb) else FAIL,
        homology_a=ha, homology_b=hb)
