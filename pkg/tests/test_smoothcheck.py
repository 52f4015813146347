import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import minor_rank
from tailstrata.dualgraph import DualGraph, Vertex
from tailstrata.smoothcheck import (
    ConfigurationError,
    ParamTail,
    TangentConfig,
    combination,
    dependence_relation,
    is_smoothable,
    matrix_rank,
    rank,
    resolve_edge,
    shared_attachment_point,
    tangent_vector,
    tangent_verdict,
    to_rational,
)

F = Fraction


def T(*coords):
    return ParamTail(tuple(tuple(c) for c in coords))


class TestTails:
    def test_attachment_point(self):
        assert shared_attachment_point([T((0, 1), (0, 0, 1)), T((0, 1), (0,))]) == (0, 0)
        assert shared_attachment_point([T((1, 1), (2, 0, 1)), T((1, -1), (2,))]) == (1, 2)

    def test_attachment_mismatch(self):
        with pytest.raises(ConfigurationError, match="common point"):
            shared_attachment_point([T((0, 1), (0,)), T((1, 1), (0,))])

    @pytest.mark.parametrize("tail,vec", [
        (((0, 0, 1), (0, 0, 0, 1)), (0, 0)),
        (((0, 1), (0, 0, 1)), (1, 0)),
        (((0, 2, 3), (0, 5)), (2, 5)),
        (((0, 0, 0, 1), (0, 0, 0, 0, 1)), (0, 0)),
    ])
    def test_tangent_vector(self, tail, vec):
        assert tangent_vector(T(*tail)) == vec

    def test_constant_tail_rejected(self):
        with pytest.raises(ConfigurationError):
            T((1,), (2, 0))

    def test_rationals(self):
        assert to_rational("3/4") == F(3, 4)
        assert to_rational(-2) == -2
        for bad in (0.5, "x", True, None, "1/0"):
            with pytest.raises(ConfigurationError):
                to_rational(bad)


class TestRank:
    @pytest.mark.parametrize("vectors,n,expected", [
        ([(1, 0), (0, 1)], 2, 2),
        ([(1, 0), (1, 0)], 2, 1),
        ([(1, 2, 3), (2, 4, 6), (0, 0, 1)], 3, 2),
        ([(0, 0)], 2, 0),
        ([("1/2", "1/3"), ("3", "2")], 2, 1),
    ])
    def test_examples(self, vectors, n, expected):
        assert rank(TangentConfig(n, tuple(vectors))) == expected
        assert minor_rank([[to_rational(x) for x in v] for v in vectors]) == expected

    def test_config_validation(self):
        with pytest.raises(ConfigurationError):
            TangentConfig(2, ((1, 0, 0),))
        with pytest.raises(ConfigurationError):
            TangentConfig(2, ())

    @pytest.mark.parametrize("m,n,values", [
        (1, 1, range(-2, 3)), (1, 2, range(-2, 3)), (2, 1, range(-2, 3)), (2, 2, range(-2, 3)),
        (2, 3, range(-2, 3)), (3, 2, range(-2, 3)), (3, 3, range(-1, 2)),
    ])
    def test_exhaustive_against_minors(self, m, n, values):
        for flat in itertools.product(values, repeat=m * n):
            rows = [flat[i * n:(i + 1) * n] for i in range(m)]
            assert matrix_rank(rows) == minor_rank(rows), rows

    def test_sampled_four_by_four(self):
        rng = random.Random(11)
        for _ in range(1500):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            # low-rank products turn up often this way
            inner = rng.randint(1, 4)
            a = [[rng.randint(-2, 2) for _ in range(inner)] for _ in range(m)]
            b = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(inner)]
            rows = [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(n)] for i in range(m)]
            assert matrix_rank(rows) == minor_rank(rows)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def rational_matrices(draw):
    m = draw(st.integers(1, 6))
    n = draw(st.integers(1, 6))
    return [draw(st.lists(rationals, min_size=n, max_size=n)) for _ in range(m)]


@settings(max_examples=300, deadline=None)
@given(rational_matrices(), st.data())
def test_rank_invariances(rows, data):
    r = matrix_rank(rows)
    assert 0 <= r <= min(len(rows), len(rows[0]))
    scales = data.draw(st.lists(rationals.filter(bool), min_size=len(rows), max_size=len(rows)))
    assert matrix_rank([[c * x for x in row] for c, row in zip(scales, rows)]) == r
    perm = data.draw(st.permutations(range(len(rows))))
    assert matrix_rank([rows[i] for i in perm]) == r
    coeffs = data.draw(st.lists(rationals, min_size=len(rows), max_size=len(rows)))
    extra = [sum((c * row[j] for c, row in zip(coeffs, rows)), F(0)) for j in range(len(rows[0]))]
    assert matrix_rank(rows + [extra]) == r


@settings(max_examples=300, deadline=None)
@given(rational_matrices())
def test_dependence_relation_sound(rows):
    rel = dependence_relation(rows)
    if matrix_rank(rows) == len(rows):
        assert rel is None
    else:
        assert any(rel)
        assert all(x == 0 for x in combination(rel, rows))


class TestVerdicts:
    def test_cusp(self):
        v = tangent_verdict([T((0, 0, 1), (0, 0, 0, 1))])
        assert v.smoothable and v.case == "ii" and v.rank == 0
        assert v.certificate["kind"] == "zero tangent vector"

    def test_tangent_conic_and_line(self):
        v = tangent_verdict([T((0, 1), (0, 0, 1)), T((0, 1), (0,))])
        assert v.smoothable and v.rank == 1 and v.m == 2

    def test_transverse_conic_and_line(self):
        v = tangent_verdict([T((0, 1), (0, 0, 1)), T((0,), (0, 1))])
        assert not v.smoothable and v.rank == 2
        assert v.certificate["minor"] != "0"

    def test_three_tails_in_plane(self):
        rng = random.Random(3)
        for _ in range(50):
            tails = [T((0, rng.randint(-3, 3), 1), (0, rng.randint(-3, 3), rng.randint(-3, 3))) for _ in range(3)]
            assert tangent_verdict(tails).smoothable

    def test_coplanarity_in_space(self):
        co = [T((0, 1), (0,), (0,)), T((0,), (0, 1), (0,)), T((0, 1), (0, 1), (0,))]
        non = [T((0, 1), (0,), (0,)), T((0,), (0, 1), (0,)), T((0,), (0,), (0, 1))]
        assert tangent_verdict(co).smoothable
        assert not tangent_verdict(non).smoothable

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 4), st.data())
    def test_more_tails_than_dimensions(self, n, data):
        m = data.draw(st.integers(n + 1, n + 3))
        tails = []
        for _ in range(m):
            lin = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
            tails.append(T(*[(0, c, 1) for c in lin]))
        v = tangent_verdict(tails)
        assert v.smoothable and v.case == "ii"

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-2, 2), min_size=1, max_size=4))
    def test_single_tail_iff_zero_tangent(self, lin):
        tail = T(*[(0, c, 1) for c in lin])
        assert tangent_verdict([tail]).smoothable == (not any(lin))


def two_tail_graph():
    return DualGraph((Vertex("E", 1, 0), Vertex("Q", 0, 2), Vertex("L", 0, 1)),
                     (("E", "Q"), ("E", "L")), n=2)


class TestIsSmoothable:
    def test_case_i(self):
        v = is_smoothable(DualGraph((Vertex("E", 1, 3),), (), n=2), {})
        assert v.smoothable and v.case == "i"

    def test_case_i_rejects_tails(self):
        with pytest.raises(ConfigurationError):
            is_smoothable(DualGraph((Vertex("E", 1, 3),), (), n=2), {"0": T((0, 1), (0,))})

    def test_edge_labels(self):
        g = two_tail_graph()
        assert resolve_edge(g, "E-L") == 1 and resolve_edge(g, "Q~E") == 0 and resolve_edge(g, "0") == 0
        with pytest.raises(ConfigurationError):
            resolve_edge(g, "Q-L")
        with pytest.raises(ConfigurationError):
            resolve_edge(g, "5")

    def test_parallel_edges_need_indices(self):
        g = DualGraph((Vertex("a", 0, 0), Vertex("b", 0, 0), Vertex("t", 0, 2), Vertex("u", 0, 1)),
                      (("a", "b"), ("a", "b"), ("a", "t"), ("b", "u")), n=2)
        with pytest.raises(ConfigurationError):
            resolve_edge(g, "a-b")
        v = is_smoothable(g, {"2": T((0, 1), (0,)), "3": T((0, 2), (0,))})
        assert v.smoothable and v.m == 2 and v.certificate["contracted"] == ["a", "b"]

    def test_tangent_and_transverse(self):
        g = two_tail_graph()
        assert is_smoothable(g, {"0": T((0, 1), (0, 0, 1)), "1": T((0, 1), (0,))}).smoothable
        assert not is_smoothable(g, {"E-Q": T((0, 1), (0, 0, 1)), "E-L": T((0,), (0, 1))}).smoothable

    def test_mismatched_tails(self):
        g = two_tail_graph()
        with pytest.raises(ConfigurationError, match="missing"):
            is_smoothable(g, {"0": T((0, 1), (0, 0, 1))})
        with pytest.raises(ConfigurationError):
            is_smoothable(g, {"0": T((0, 1), (0, 0, 1)), "E-Q": T((0, 1), (0,))})
        with pytest.raises(ConfigurationError, match="common point"):
            is_smoothable(g, {"0": T((0, 1), (0, 0, 1)), "1": T((1, 1), (0,))})
        with pytest.raises(ConfigurationError):
            is_smoothable(g, {"0": T((0, 1), (0,), (0,)), "1": T((0, 1), (0,), (0,))})

    def test_marks_on_elliptic_curve_are_inert(self):
        g = DualGraph((Vertex("E", 1, 0, (1,)), Vertex("C", 0, 3)), (("E", "C"),), k=1, n=2)
        v = is_smoothable(g, {"0": T((0, 1), (0, 0, 1))})
        assert v.m == 1 and not v.smoothable
