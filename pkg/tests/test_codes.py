import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from lcdkit import gf
from lcdkit.codes import (
    CodeRecord,
    DomainError,
    MultiplicityVector,
    PreconditionError,
    dual_distance,
    dual_distance_at_least,
    extend_by_one,
    generator_from_multiplicity,
    gram,
    gram_normalize,
    is_lcd,
    juxtapose_with_simplex,
    min_weight,
    min_weight_bruteforce,
    pad_zero,
    weight_vector,
)
from lcdkit.gf import GFMatrix
from lcdkit.simplex import points_count, simplex_matrix

T11 = MultiplicityVector(3, 2, (4, 4, 3, 0))
B20 = MultiplicityVector(2, 4, (2, 2, 1, 2, 1, 1, 1, 2, 1, 1, 1, 1, 1, 1, 2))
B17 = MultiplicityVector(2, 4, (2, 2, 1, 2, 1, 0, 1, 2, 0, 1, 1, 1, 1, 1, 1))


@st.composite
def full_rank(draw, max_k=4, max_n=12):
    q = draw(st.sampled_from([2, 3]))
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(k, max_n))
    flat = draw(st.lists(st.integers(0, q - 1), min_size=k * n, max_size=k * n))
    g = GFMatrix(q, np.array(flat).reshape(k, n))
    assume(gf.rank(g) == k)
    return g


def lcd_by_intersection(g):
    words = gf.row_space(g)
    return int((~((words @ g.entries.T) % g.q).any(axis=1)).sum()) == 1


def test_generator_examples():
    assert generator_from_multiplicity(MultiplicityVector(2, 3, (1,) * 7)) == simplex_matrix(2, 3).matrix
    g = generator_from_multiplicity(T11)
    assert g.shape == (2, 11)
    assert g.tolist()[0] == [1] * 4 + [0] * 4 + [1] * 3
    assert generator_from_multiplicity(B20).shape == (4, 20)
    with pytest.raises(DomainError):
        generator_from_multiplicity(MultiplicityVector(3, 2, (0, 0, 0, 0)))


def test_multiplicity_vector_validation():
    with pytest.raises(ValueError):
        MultiplicityVector(3, 2, (1, 1, 1))
    with pytest.raises(ValueError):
        MultiplicityVector(3, 2, (1, 1, 1, -1))


def test_is_lcd_examples():
    assert is_lcd(GFMatrix.identity(2, 3))
    assert not is_lcd(simplex_matrix(3, 2).matrix)
    assert is_lcd(T11)


def test_weights_and_min_weight():
    assert sorted(weight_vector(T11).tolist()) == [7, 7, 8, 11]
    assert weight_vector(MultiplicityVector(2, 3, (1,) * 7)).tolist() == [4] * 7
    assert min_weight(B20) == 10
    assert min_weight(MultiplicityVector(2, 3, (1,) * 7)) == 4
    assert min_weight(T11) == 7
    assert min_weight(MultiplicityVector(3, 3, (3, 3, 2, 2, 3, 2, 2, 3, 2, 2, 2, 2, 2))) == 20
    assert min_weight_bruteforce(GFMatrix.identity(2, 3)) == 1
    assert min_weight_bruteforce(simplex_matrix(2, 3).matrix) == 4
    assert min_weight_bruteforce(B20) == 10
    with pytest.raises(DomainError):
        min_weight(MultiplicityVector(2, 3, (3, 3, 3, 0, 0, 0, 0)))


def test_code_record():
    rec = CodeRecord.from_multiplicity(T11)
    assert (rec.n, rec.d, rec.dual_ge2) == (11, 7, True)


@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_min_weight_matches_bruteforce(q, k, rng):
    v = points_count(q, k)
    done = 0
    while done < 200:
        mv = MultiplicityVector(q, k, tuple(rng.integers(0, 4, size=v)))
        if mv.n == 0 or mv.rank() < k:
            continue
        assert min_weight(mv) == min_weight_bruteforce(mv)
        done += 1


@settings(max_examples=300, deadline=None)
@given(full_rank(max_k=4, max_n=12))
def test_is_lcd_matches_intersection(g):
    assume(g.q ** g.rows <= 81)
    assert is_lcd(g) == lcd_by_intersection(g)


def test_dual_distance_predicates():
    t431 = MultiplicityVector(3, 3, (1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1))
    assert dual_distance_at_least(t431, 3)
    assert dual_distance_at_least(t431.generator(), 3)
    assert not dual_distance_at_least(T11, 3)
    assert not dual_distance_at_least(T11.generator(), 3)
    padded = pad_zero(T11.generator())
    assert not dual_distance_at_least(padded, 2)
    assert dual_distance_at_least(padded, 1)
    with pytest.raises(NotImplementedError):
        dual_distance_at_least(T11, 4)


def test_exact_dual_distance():
    assert dual_distance(T11) == 2
    assert dual_distance(pad_zero(T11)) == 1
    assert dual_distance(simplex_matrix(2, 3).matrix) == 3
    with pytest.raises(DomainError):
        dual_distance(GFMatrix.identity(2, 3))


def test_pad_zero():
    g = pad_zero(GFMatrix.identity(2, 2))
    assert g.tolist() == [[1, 0, 0], [0, 1, 0]]
    p = pad_zero(T11)
    assert p.shape == (2, 12) and is_lcd(p) and min_weight_bruteforce(p) == 7
    assert pad_zero(pad_zero(T11)).shape == (2, 13)


def test_juxtapose_examples():
    out = juxtapose_with_simplex(T11, 1)
    assert out.m == (5, 5, 4, 1)
    assert is_lcd(out) and min_weight(out) == 10
    assert juxtapose_with_simplex(T11, 0) == T11
    b = juxtapose_with_simplex(B17, 1)
    assert b.n == 32 and min_weight(b) == 16


def test_juxtapose_preconditions():
    with pytest.raises(PreconditionError):
        juxtapose_with_simplex(MultiplicityVector(3, 2, (1, 1, 1, 1)), 1)
    with pytest.raises(PreconditionError):
        juxtapose_with_simplex(MultiplicityVector(2, 2, (1, 1, 0)), 1)
    with pytest.raises(ValueError):
        juxtapose_with_simplex(T11, -1)


@pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (3, 2), (3, 3)])
def test_juxtapose_weight_additive(q, k, rng):
    v = points_count(q, k)
    done = 0
    while done < 50:
        mv = MultiplicityVector(q, k, tuple(rng.integers(0, 3, size=v)))
        if mv.n == 0 or mv.rank() < k or not is_lcd(mv):
            continue
        s = int(rng.integers(1, 4))
        out = juxtapose_with_simplex(mv, s)
        assert is_lcd(out)
        assert min_weight(out) == min_weight(mv) + q ** (k - 1) * s
        done += 1


def check_gram_form(g, out):
    q, k = g.q, g.rows
    assert gf.rref(out)[0] == gf.rref(g)[0]
    gm = gram(out).entries
    if q == 3:
        assert (np.diag(gm) != 0).all()
        assert not (gm - np.diag(np.diag(gm))).any()
    elif np.diag(gram(g).entries).any():
        assert (gm == np.eye(k, dtype=int)).all()
    else:
        j2 = np.kron(np.eye(k // 2, dtype=int), np.array([[0, 1], [1, 0]]))
        assert (gm == j2).all()


def test_gram_normalize_examples():
    assert gram_normalize(GFMatrix.identity(2, 3)) == GFMatrix.identity(2, 3)
    # (0,1,1) is self-orthogonal over GF(2), so this code is not LCD
    with pytest.raises(PreconditionError):
        gram_normalize(GFMatrix.from_rows(2, [[1, 0, 0], [0, 1, 1]]))
    g = GFMatrix.from_rows(2, [[1, 0, 0], [1, 1, 1]])
    assert not is_lcd(g)
    g = GFMatrix.from_rows(2, [[1, 1, 1], [1, 1, 0], [0, 1, 1]])
    assert is_lcd(g)
    assert gram(gram_normalize(g)) == GFMatrix.identity(2, 3)
    out = gram_normalize(T11)
    check_gram_form(T11.generator(), out)
    with pytest.raises(PreconditionError):
        gram_normalize(simplex_matrix(3, 2).matrix)


def test_gram_normalize_even_binary():
    # x.x = 0 for every codeword: only hyperbolic pairs are available
    g = GFMatrix.from_rows(2, [[1, 1, 0, 0], [0, 1, 1, 0]])
    assert is_lcd(g)
    check_gram_form(g, gram_normalize(g))


@settings(max_examples=300, deadline=None)
@given(full_rank(max_k=4, max_n=10))
def test_gram_normalize_property(g):
    assume(is_lcd(g))
    check_gram_form(g, gram_normalize(g))


def check_extension(g, out):
    d0 = min_weight_bruteforce(g)
    assert out.shape == (g.rows, g.cols + 1)
    assert is_lcd(out)
    assert dual_distance_at_least(out, 2)
    assert min_weight_bruteforce(out) in (d0, d0 + 1)


def test_extend_examples():
    g = GFMatrix.from_rows(2, [[1, 0, 1, 1], [0, 1, 0, 1]])
    assert is_lcd(g) and min_weight_bruteforce(g) == 2
    check_extension(g, extend_by_one(g))
    out = extend_by_one(GFMatrix.identity(3, 2))
    assert out.tolist() == [[1, 0, 1], [0, 1, 0]]
    check_extension(GFMatrix.identity(3, 2), out)
    with pytest.raises(PreconditionError):
        extend_by_one(pad_zero(GFMatrix.identity(3, 2)))
    with pytest.raises(NotImplementedError):
        extend_by_one(GFMatrix.from_rows(2, [[1, 1, 1]]))


@settings(max_examples=300, deadline=None)
@given(full_rank(max_k=4, max_n=10))
def test_extend_property(g):
    assume(g.rows >= 2 and is_lcd(g) and dual_distance_at_least(g, 2))
    check_extension(g, extend_by_one(g))
