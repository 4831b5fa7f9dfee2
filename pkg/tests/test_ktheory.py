import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scaled_crystal.exceptions import InputError, UnknownNameError
from scaled_crystal.ktheory import (
    AbelianInvariants,
    IntMatrix,
    ModulePresentation,
    PolyMatrix,
    Substitution,
    Term,
    circle_theorem_check,
    cokernel,
    compose_substitutions,
    crystal_substitution_matrix,
    dynam_cokernels,
    edge_move_substitution,
    graph_e,
    graph_f,
    graph_substitution_matrix,
    named_graph,
    qt_smith,
    rank,
    smith_normal_form,
    truncation_maps,
    zt_quotients,
)
from scaled_crystal.ktheory.graph import EDGE_RANGE, VERTEX

square_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)
)
rectangular_matrices = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda shape: st.lists(
        st.lists(st.integers(-6, 6), min_size=shape[1], max_size=shape[1]), min_size=shape[0], max_size=shape[0]
    )
)


def test_smith_examples():
    _, d, _ = smith_normal_form(IntMatrix.identity(3))
    assert d == IntMatrix.identity(3)
    _, d, _ = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert d.diagonal() == (2, 4)
    _, d, _ = smith_normal_form(IntMatrix.from_rows([[0]]))
    assert d.diagonal() == (0,)


def test_cokernel_examples():
    assert cokernel(IntMatrix.from_rows([], 3)) == AbelianInvariants(3, ())
    assert cokernel(IntMatrix.from_rows([[2]])) == AbelianInvariants(0, (2,))
    six = cokernel(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert six == AbelianInvariants(0, (6,))
    assert str(six) == "Z/6"
    assert six.order == 6
    assert str(cokernel(IntMatrix.from_rows([[1]]))) == "0"
    assert cokernel(IntMatrix.from_rows([[0, 0]])).is_cyclic_free() is False


def test_int_matrix_errors():
    with pytest.raises(InputError):
        IntMatrix.from_rows([])
    with pytest.raises(InputError):
        IntMatrix.from_rows([[1, 2], [3]])


@settings(max_examples=100)
@given(rectangular_matrices)
def test_smith_form_properties(rows):
    a = IntMatrix.from_rows(rows)
    u, d, v = smith_normal_form(a)
    assert u @ a @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    assert all(d[i, j] == 0 for i in range(d.nrows) for j in range(d.ncols) if i != j)
    diagonal = d.diagonal()
    assert all(x >= 0 for x in diagonal)
    for x, y in zip(diagonal, diagonal[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)
    assert rank(a) == sum(1 for x in diagonal if x)


@settings(max_examples=100)
@given(square_matrices)
def test_cokernel_order_is_determinant(rows):
    a = IntMatrix.from_rows(rows)
    determinant = a.det()
    invariants = cokernel(a)
    if determinant == 0:
        assert invariants.free_rank > 0
    else:
        assert invariants.order == abs(determinant)


def test_zt_quotients():
    quotients = zt_quotients(ModulePresentation.from_rows([[(2, -2)]]))
    assert quotients.at_t_equals_1 == AbelianInvariants(1, ())
    assert quotients.at_t_equals_0 == AbelianInvariants(0, (2,))
    quotients = zt_quotients(ModulePresentation.from_rows([[(0, 1)]]))
    assert quotients.at_t_equals_0 == AbelianInvariants(1, ())
    assert str(quotients.at_t_equals_1) == "0"


def test_qt_smith():
    assert qt_smith(PolyMatrix.diagonal([(0, 1), (-1, 1)])) == [(1,), (0, -1, 1)]
    assert qt_smith(PolyMatrix.from_rows([[(-2, 0, 1)]])) == [(-2, 0, 1)]
    assert qt_smith(PolyMatrix.from_rows([[0]])) == [()]
    assert qt_smith(PolyMatrix((), 2)) == [(), ()]


def test_circle_check_free_module():
    report = circle_theorem_check(ModulePresentation.free(2))
    assert (report.dim_M_mod_1_minus_t, report.dim_M_mod_t) == (2, 2)
    assert report.hypothesis_t_regular and report.isomorphic


def test_circle_check_regular_torsion():
    report = circle_theorem_check(ModulePresentation.from_rows([[(-2, 0, 1)]]))
    assert (report.dim_M_mod_1_minus_t, report.dim_M_mod_t) == (0, 0)
    assert report.hypothesis_t_regular
    assert report.to_json()["invariant_factors"] == ["t**2 - 2"]


def test_circle_check_fixed_point():
    report = circle_theorem_check(ModulePresentation.from_rows([[(-1, 1)]]))
    assert (report.dim_M_mod_1_minus_t, report.dim_M_mod_t) == (1, 0)
    assert not report.hypothesis_t_regular
    assert not report.isomorphic
    assert report.failing_factors == [(-1, 1)]


def test_presentation_errors():
    with pytest.raises(InputError):
        ModulePresentation(3, PolyMatrix.from_rows([[1, 0]]))
    with pytest.raises(InputError):
        PolyMatrix.from_json({"rows": [["t + 1"]]})
    with pytest.raises(InputError):
        zt_quotients(ModulePresentation.from_rows([[("1/2",)]]))


def test_poly_matrix_json():
    matrix = PolyMatrix.from_json({"rows": [[2, "poly:[0, 1]"], [0, 'poly:["1/2", 0, 1]']]})
    assert matrix.rows[0] == ((2,), (0, 1))
    assert PolyMatrix.from_json(matrix.to_json()) == matrix
    assert not matrix.is_integral


def test_edge_move_matrix():
    graph = graph_e()
    matrix = graph_substitution_matrix(graph, edge_move_substitution())
    expected = [[int(i == j) for j in range(6)] for i in range(6)]
    expected[0][1] = 1
    expected[0][2] = -1
    assert matrix == IntMatrix.from_rows(expected)
    assert crystal_substitution_matrix(graph, edge_move_substitution()) == IntMatrix.identity(6)


def test_range_projection_counts_source_class():
    graph = graph_e()
    substitution = Substitution({"v2": (Term(1, VERTEX, "v2"), Term(1, EDGE_RANGE, "f"))})
    matrix = graph_substitution_matrix(graph, substitution)
    assert [matrix[i, 1] for i in range(6)] == [0, 2, 0, 0, 0, 0]


def test_identity_substitution():
    graph = graph_f()
    assert graph_substitution_matrix(graph, Substitution()) == IntMatrix.identity(6)
    assert crystal_substitution_matrix(graph, Substitution()) == IntMatrix.identity(6)


def test_substitution_functoriality():
    graph = graph_e()
    first = edge_move_substitution()
    second = Substitution({"v4": (Term(1, VERTEX, "v4"), Term(1, EDGE_RANGE, "h45"), Term(-1, VERTEX, "v5"))})
    composed = compose_substitutions(graph, first, second)
    expected = graph_substitution_matrix(graph, second) @ graph_substitution_matrix(graph, first)
    assert graph_substitution_matrix(graph, composed) == expected


def test_unknown_graph_names():
    graph = graph_e()
    with pytest.raises(UnknownNameError):
        graph_substitution_matrix(graph, Substitution({"v9": ()}))
    with pytest.raises(UnknownNameError):
        graph_substitution_matrix(graph, Substitution({"v1": (Term(1, EDGE_RANGE, "zz"),)}))
    with pytest.raises(UnknownNameError):
        named_graph("G")
    assert named_graph("F").edge("e").range == "v3"


def test_graph_json_round_trip():
    graph = graph_e()
    assert graph.from_json(graph.to_json()) == graph
    substitution = edge_move_substitution()
    assert Substitution.from_json(substitution.to_json()) == substitution
    with pytest.raises(InputError):
        Substitution.from_json([{"vertex": "v1", "terms": [{"kind": "loop", "name": "e"}]}])


def test_dynamics_fixed_point():
    result = dynam_cokernels(1, 4)
    assert result.coker_one_minus_t == AbelianInvariants(1, ())
    assert result.coker_t == AbelianInvariants(1, ())


@pytest.mark.parametrize("truncation", range(3, 13))
def test_dynamics_cycle_is_stable(truncation):
    result = dynam_cokernels(3, truncation)
    assert result.coker_one_minus_t.is_cyclic_free()
    assert result.coker_t.is_cyclic_free()
    assert result.kernel_rank_one_minus_t == 0


def test_truncation_maps_shape():
    inclusion, shift = truncation_maps(2, 5)
    assert inclusion.shape == (7, 8)
    assert shift.shape == (7, 8)


def test_dynamics_errors():
    with pytest.raises(InputError):
        dynam_cokernels(0, 4)
    with pytest.raises(InputError):
        dynam_cokernels(4, 2)
