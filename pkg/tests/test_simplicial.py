from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subsetspace.simplicial import (FormalSimplex, SimplicialError,
                                    apply_face, compose_degeneracy,
                                    degeneracy_words, enumerate_level,
                                    find_isomorphism,
                                    simplicial_set_from_dict, validate,
                                    word_is_valid)
from subsetspace.spaces import sphere, subdivided_circle, wedge, WedgeSpec

from oracles import all_degenerate_tuples, eval_word, s_on_tuple


def test_compose_identity_word():
    assert compose_degeneracy((), 0) == (0,)


def test_compose_s0_s0():
    assert compose_degeneracy((0,), 0) == (1, 0)


def test_compose_into_longer_word():
    # checked below against the standard-simplex action as well
    assert compose_degeneracy((2, 0), 1) == (3, 1, 0)


def test_compose_matches_standard_simplex_action():
    # s_j after (2,0) over a base of dimension 1
    for base_dim, word, j in [(1, (2, 0), 1), (0, (0,), 0), (2, (), 0),
                              (1, (1, 0), 2), (2, (3, 1), 0)]:
        expected = s_on_tuple(eval_word(word, base_dim), j)
        assert eval_word(compose_degeneracy(word, j), base_dim) == expected


def test_compose_rejects_bad_index():
    with pytest.raises(SimplicialError):
        compose_degeneracy((), -1)
    with pytest.raises(SimplicialError):
        compose_degeneracy((0,), 3, base_dim=0)


@given(st.lists(st.integers(0, 6), max_size=6), st.integers(0, 3))
@settings(max_examples=300)
def test_compose_normal_form_confluence(ops, base_dim):
    """Composing any operator sequence in order yields a valid normal form
    matching the brute-force standard-simplex action."""
    word = ()
    t = tuple(range(base_dim + 1))
    for j in ops:
        if j > base_dim + len(word):
            j = j % (base_dim + len(word) + 1)
        word = compose_degeneracy(word, j)
        t = s_on_tuple(t, j)
    assert word_is_valid(word, base_dim)
    assert eval_word(word, base_dim) == t


def test_apply_face_d0_s0_vertex():
    S = sphere(1)
    v = S.simplex(0)
    x = v.degenerate(0)
    assert apply_face(x, 0, S) == v


def test_apply_face_d2_s1_edge():
    S = sphere(1)
    e = S.simplex(1)
    assert apply_face(e.degenerate(1), 2, S) == e


def test_apply_face_through_word_to_base():
    # minimal circle: d_0(s_1 e) = s_0(d_0 e) = s_0 v
    S = sphere(1)
    x = S.simplex(1).degenerate(1)
    assert apply_face(x, 0, S) == FormalSimplex(0, (0,), 1)


def test_face_indices_out_of_range():
    S = sphere(1)
    with pytest.raises(SimplicialError):
        apply_face(S.simplex(0), 0, S)
    with pytest.raises(SimplicialError):
        apply_face(S.simplex(1), 2, S)


@pytest.mark.parametrize("space", [sphere(1), sphere(2), sphere(3),
                                   wedge(WedgeSpec((1, 2))),
                                   subdivided_circle(3)])
def test_simplicial_identity_on_all_levels(space):
    for n in range(1, space.dim + 3):
        for x in enumerate_level(space, n):
            if x.dim < 2:
                continue
            for j in range(1, x.dim + 1):
                for i in range(j):
                    lhs = apply_face(apply_face(x, j, space), i, space)
                    rhs = apply_face(apply_face(x, i, space), j - 1, space)
                    assert lhs == rhs


def test_enumerate_level_circle():
    S = sphere(1)
    lvl1 = enumerate_level(S, 1)
    assert [(x.base, x.word) for x in lvl1] == [(0, (0,)), (1, ())]
    lvl2 = enumerate_level(S, 2)
    assert [(x.base, x.word) for x in lvl2] == [(0, (1, 0)), (1, (0,)),
                                                (1, (1,))]


def test_enumerate_level_two_sphere():
    assert len(enumerate_level(sphere(2), 2)) == 2


def test_enumerate_level_counts_closed_form():
    for space in [sphere(1), sphere(3), wedge(WedgeSpec((1, 1, 2)))]:
        for n in range(0, 6):
            expected = sum(comb(n, n - space.dim_of[g])
                           for g in range(space.n_generators)
                           if space.dim_of[g] <= n)
            assert len(enumerate_level(space, n)) == expected


def test_enumerate_level_matches_degeneracy_closure():
    """Independent oracle: the words of a level correspond one-to-one with
    the tuples reachable by repeated degeneracy applications."""
    for base_dim in range(0, 3):
        for length in range(0, 4):
            words = degeneracy_words(base_dim, length)
            tuples = all_degenerate_tuples(base_dim, length)
            images = {eval_word(w, base_dim) for w in words}
            assert images == tuples
            assert len(words) == len(images)  # words act faithfully


def test_validate_builders_pass():
    for space in [sphere(1), sphere(2), sphere(3), subdivided_circle(4)]:
        assert validate(space).ok


def test_validate_reports_corrupted_face_table():
    S = subdivided_circle(3)
    t = S.add_generator(2, "t")
    e0, e1 = S.simplex(S.by_dim[1][0]), S.simplex(S.by_dim[1][1])
    # faces violating d_0 d_1 = d_0 d_0 compatibility on purpose
    S.set_faces(t, [e0, e1, e0])
    report = validate(S)
    assert not report.ok
    assert report.violation[0] == t


def test_json_ingestion_minimal_circle():
    S = simplicial_set_from_dict({
        "generators": [["v"], ["e"]],
        "faces": {"e": ["v", "v"]},
    })
    assert validate(S).ok
    assert S.f_vector() == [1, 1]
    assert find_isomorphism(S, sphere(1)) is not None


def test_json_ingestion_degenerate_faces():
    S = simplicial_set_from_dict({
        "generators": [["v"], [], ["c"]],
        "faces": {"c": ["s_0 v", "s_0 v", "s_0 v"]},
    })
    assert find_isomorphism(S, sphere(2)) is not None


def test_json_ingestion_rejects_non_normal_words():
    with pytest.raises(SimplicialError):
        simplicial_set_from_dict({
            "generators": [["v"], [], ["c"]],
            "faces": {"c": ["s_0 s_1 v", "s_0 v", "s_0 v"]},
        })


def test_json_ingestion_rejects_missing_faces():
    with pytest.raises(SimplicialError):
        simplicial_set_from_dict({"generators": [["v"], ["e"]], "faces": {}})


def test_isomorphism_distinguishes_spaces():
    assert find_isomorphism(sphere(1), sphere(2)) is None
    assert find_isomorphism(wedge(WedgeSpec((1, 1))), sphere(1)) is None
