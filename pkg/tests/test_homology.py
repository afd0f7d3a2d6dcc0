import random
from math import gcd, prod

import pytest

from subsetspace.simplicial import FormalSimplex
from subsetspace.spaces import WedgeSpec, sphere, subdivided_circle, wedge
from subsetspace.expk import build_expk
from subsetspace.homology import (ChainComplex, ChainComplexError,
                                  SparseIntMatrix, homology,
                                  normalized_chains, restricted_chains,
                                  smith_normal_form, space_homology)

from oracles import minors_gcd, rank_over_q


def test_snf_single_entry():
    res = smith_normal_form([[2]])
    assert (res.rank, res.divisors) == (1, [2])


def test_snf_rank_one():
    res = smith_normal_form([[1, 0], [0, 0]])
    assert (res.rank, res.divisors) == (1, [1])


def test_snf_two_by_two():
    # d1 = gcd of entries = 2, d1*d2 = |det| = 8
    res = smith_normal_form([[2, 4], [6, 8]])
    assert (res.rank, res.divisors) == (2, [2, 4])


def test_snf_empty_and_zero():
    assert smith_normal_form([]).rank == 0
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0


def test_snf_does_not_mutate_input():
    M = SparseIntMatrix.from_dense([[2, 4], [6, 8]])
    before = M.to_dense()
    smith_normal_form(M)
    assert M.to_dense() == before


def test_snf_known_torsion():
    # boundary of the real projective plane's 2-cell picture
    res = smith_normal_form([[2]])
    assert res.divisors == [2]
    res = smith_normal_form([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert res.divisors == [1, 1, 2]


def _random_matrix(rng, max_side=5, bound=9):
    nrows = rng.randint(1, max_side)
    ncols = rng.randint(1, max_side)
    return [[rng.randint(-bound, bound) for _ in range(ncols)]
            for _ in range(nrows)]


@pytest.mark.parametrize("seed", range(5))
def test_snf_against_minor_oracle(seed):
    """Divisor chain, rank over Q, and the minor-gcd products, on 100 random
    matrices per seed (500 total across the parametrization)."""
    rng = random.Random(seed)
    for _ in range(100):
        m = _random_matrix(rng)
        res = smith_normal_form(m)
        assert res.rank == rank_over_q(m)
        for a, b in zip(res.divisors, res.divisors[1:]):
            assert b % a == 0
        for r in range(1, res.rank + 1):
            assert prod(res.divisors[:r]) == abs(minors_gcd(m, r))


def test_chains_minimal_sphere_boundaries_vanish():
    C = normalized_chains(sphere(2))
    assert all(M.nnz() == 0 for M in C.boundaries)
    h = homology(C)
    assert h.betti == [1, 0, 1]


def test_chains_exp2_circle_boundary():
    space = build_expk(sphere(1), 2)
    C = normalized_chains(space.result)
    assert C.f_vector() == [1, 2, 1]
    # d(top cell) = 2b - a where a = {e} and b = {e, s_0 v}
    col = C.boundaries[2].cols[0]
    assert sorted(col.values()) == [-1, 2]
    assert C.boundaries[1].nnz() == 0


def test_chains_exp1_equal_base_chains():
    S = wedge(WedgeSpec((1, 1)))
    C_base = normalized_chains(S)
    C_exp = normalized_chains(build_expk(S, 1).result)
    assert C_base.f_vector() == C_exp.f_vector()
    for M, N in zip(C_base.boundaries, C_exp.boundaries):
        assert M.to_dense() == N.to_dense()


def test_homology_exp2_circle_is_moebius():
    h = space_homology(build_expk(sphere(1), 2).result)
    assert h.betti == [1, 1, 0]
    assert h.torsion == [[], [], []]
    assert h.euler == 0


def test_homology_minimal_spheres():
    for m in (1, 2, 3):
        h = space_homology(sphere(m), reduced=True)
        assert h.betti == [0] * m + [1]
        assert all(not t for t in h.torsion)


def test_homology_figure_eight():
    assert space_homology(wedge(WedgeSpec((1, 1)))).betti == [1, 2]


def test_homology_rejects_broken_complex():
    bad = ChainComplex(
        bases=[[0], [1]],
        boundaries=[SparseIntMatrix(0, 1), SparseIntMatrix.from_dense([[1]])])
    # d.d = 0 trivially here; break it with a second boundary
    bad2 = ChainComplex(
        bases=[[0], [1], [2]],
        boundaries=[SparseIntMatrix(0, 1),
                    SparseIntMatrix.from_dense([[1]]),
                    SparseIntMatrix.from_dense([[1]])])
    homology(bad)
    with pytest.raises(ChainComplexError):
        homology(bad2)


def test_euler_identity_everywhere():
    spaces = [sphere(1), sphere(2), wedge(WedgeSpec((1, 1, 1))),
              subdivided_circle(4),
              build_expk(sphere(1), 3).result,
              build_expk(wedge(WedgeSpec((1, 1))), 2).result]
    for S in spaces:
        h = space_homology(S)
        assert h.euler == sum((-1) ** n * f for n, f in enumerate(h.f_vector))
        assert h.euler == sum((-1) ** n * b for n, b in enumerate(h.betti))


def test_direct_sum_is_degreewise_sum():
    """Block-diagonal assembly of two complexes adds betti and concatenates
    torsion degree-wise."""
    A = normalized_chains(build_expk(sphere(1), 2).result)
    B = normalized_chains(sphere(2))
    top = max(A.top, B.top)

    def basis(C, n):
        return C.bases[n] if n <= C.top else []

    def mat(C, n):
        if n <= C.top:
            return C.boundaries[n]
        return SparseIntMatrix(len(basis(C, n - 1)), 0)

    bases, boundaries = [], []
    for n in range(top + 1):
        bases.append([("a", g) for g in basis(A, n)]
                     + [("b", g) for g in basis(B, n)])
        MA, MB = mat(A, n), mat(B, n)
        M = SparseIntMatrix(len(bases[n - 1]) if n else 0, len(bases[n]))
        for r, c, v in MA.entries():
            M.add(r, c, v)
        off_r, off_c = MA.nrows, MA.ncols
        for r, c, v in MB.entries():
            M.add(r + off_r, c + off_c, v)
        boundaries.append(M)
    h = homology(ChainComplex(bases=bases, boundaries=boundaries))
    ha = homology(A)
    hb = homology(B)
    for n in range(top + 1):
        ba = ha.betti[n] if n <= A.top else 0
        bb = hb.betti[n] if n <= B.top else 0
        assert h.betti[n] == ba + bb


def test_restricted_chains_requires_closure():
    S = subdivided_circle(3)
    with pytest.raises(Exception):
        restricted_chains(S, {S.by_dim[1][0]})  # edge without its vertices


def test_parallel_snf_matches_serial():
    S = build_expk(wedge(WedgeSpec((1, 1))), 3).result
    h1 = space_homology(S, jobs=1)
    h4 = space_homology(S, jobs=4)
    assert h1 == h4
