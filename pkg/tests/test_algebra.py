"""Structure validation: Jacobi, nilpotency, center, layers, the pairing matrix."""

from fractions import Fraction

import pytest

from nilpoisson import (AlgebraSpec, CenterDimensionError, IndexOutOfRange,
                        JacobiViolation, NotNilpotent, d_rho_matrix, layers, validate)
from nilpoisson.catalog import (double_heisenberg, heisenberg_ext, p_family, torus,
                                w_family)
from nilpoisson.rationals import gauss
from nilpoisson.sparse import rank

HALF = Fraction(1, 2)


def test_torus_is_abelian():
    report = validate(torus(2))
    assert report.step == 1
    assert report.dim_center == 2
    assert report.center_indices == (1, 2)
    assert report.t_layer_indices == ((1, 2),)


def test_heisenberg_extension_structure(heis1):
    report = validate(heis1)
    assert report.step == 2
    assert report.dim_center == 1
    assert report.center_indices == (2,)          # V
    assert report.jacobi_ok


def test_not_nilpotent():
    # [X1bar, X1] = X1 - X1bar: the series stabilizes at a nonzero ideal
    spec = AlgebraSpec("bad", 1, ("X1",), {(1, 1, 1): gauss(1)})
    with pytest.raises(NotNilpotent):
        validate(spec)


def test_jacobi_violation():
    # [X1bar, X1] = X2 - X2bar and [X2bar, X2] = X1 - X1bar break Jacobi
    spec = AlgebraSpec("nonjacobi", 2, ("X1", "X2"),
                       {(1, 1, 2): gauss(1), (2, 2, 1): gauss(1)})
    with pytest.raises(JacobiViolation):
        validate(spec)


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        AlgebraSpec("oob", 2, ("X1", "X2"), {(1, 3, 2): gauss(1)})


@pytest.mark.parametrize("spec_builder,expected_layers", [
    (lambda: torus(2), ((1, 2),)),
    (lambda: heisenberg_ext(2), ((1, 2), (3,))),
    (lambda: w_family(0), ((1, 2), (3,))),
])
def test_layer_index_sets(spec_builder, expected_layers):
    report = validate(spec_builder())
    assert report.t_layer_indices == expected_layers


def test_three_step_layers(three_step):
    report = validate(three_step)
    assert report.step == 3
    assert report.dim_center == 2
    assert report.center_indices == (3, 4)
    assert report.t_layer_indices == ((1, 4), (2,), (3,))


def test_layers_sum_to_dimension(three_step):
    for spec in (torus(3), heisenberg_ext(3), p_family(2), w_family(1), three_step):
        report = validate(spec)
        assert sum(len(layer) for layer in report.t_layers) == spec.n


def test_lower_central_series_length(w6):
    """g^{step-1} != 0 = g^{step}: the last nonzero term sits in the center."""
    for spec in (heisenberg_ext(1), w6, p_family(1)):
        report = validate(spec)
        assert report.step == 2
        # for the 2-step families the top layer is exactly the center
        assert report.t_layer_indices[-1] == report.center_indices


def test_series_brackets_match_the_step(w6, three_step):
    """Recompute [g^{step-1}, g] = 0 and [g^{step-2}, g] != 0 directly."""
    from nilpoisson.sparse import SpanBuilder

    for spec in (heisenberg_ext(2), w6, three_step):
        report = validate(spec)
        basis = [{i: gauss(1)} for i in range(2 * spec.n)]

        def series_term(power):
            span = SpanBuilder()
            if power == 0:
                for v in basis:
                    span.add(v)
                return span
            prev = series_term(power - 1)
            out = SpanBuilder()
            for u in prev.basis():
                for v in basis:
                    w = spec.bracket(u, v)
                    if w:
                        out.add(w)
            return out

        assert series_term(report.step).dimension == 0
        assert series_term(report.step - 1).dimension > 0


def test_derived_coefficients_are_an_involution(w6):
    """Re-deriving A from the derived B coefficients returns A."""
    for spec in (heisenberg_ext(2), double_heisenberg(1, 1), p_family(1), w6):
        for (k, j, m), value in spec.constants.items():
            assert -spec.b(j, k, m).conjugate() == value


# -- the pairing matrix ------------------------------------------------------


def test_d_rho_heisenberg(heis1):
    matrix = d_rho_matrix(heis1, 2)
    assert matrix.rows == matrix.cols == 1
    assert matrix.entry(0, 0) == gauss(0, -HALF)
    assert rank(matrix) == 1


def test_d_rho_p6_block():
    matrix = d_rho_matrix(p_family(1), 3)
    dense = [[matrix.entry(r, c) for c in range(2)] for r in range(2)]
    assert dense == [[gauss(0, Fraction(1, 4)), gauss(Fraction(-1, 4))],
                     [gauss(Fraction(-1, 4)), gauss(0)]]
    assert rank(matrix) == 2


def test_d_rho_w6_degenerate(w6):
    matrix = d_rho_matrix(w6, 3)
    assert matrix.entry(0, 1) == gauss(-HALF)
    assert matrix.nnz() == 1
    assert rank(matrix) == 1


def test_d_rho_requires_one_dimensional_center():
    with pytest.raises(CenterDimensionError):
        d_rho_matrix(torus(2), 1)


def test_d_rho_rejects_non_central_index(w6):
    with pytest.raises(CenterDimensionError):
        d_rho_matrix(w6, 1)


@pytest.mark.parametrize("spec_builder,v_index", [
    (lambda: heisenberg_ext(2), 3),
    (lambda: double_heisenberg(1, 1), 3),
    (lambda: p_family(1), 3),
    (lambda: w_family(1), 5),
])
def test_d_rho_agrees_with_raw_brackets(spec_builder, v_index):
    """Entry (b, j) must equal -rho([X_j, Xbar_b]) from the raw constants."""
    spec = spec_builder()
    matrix = d_rho_matrix(spec, v_index)
    t_idx = [i for i in range(1, spec.n + 1) if i != v_index]
    for bi, b in enumerate(t_idx):
        for ji, j in enumerate(t_idx):
            bracket = spec.bracket({j - 1: gauss(1)}, {spec.n + b - 1: gauss(1)})
            rho_value = -bracket.get(v_index - 1, gauss(0))
            assert matrix.entry(bi, ji) == rho_value


def test_layers_operation_matches_report(w6):
    assert layers(w6) == validate(w6).t_layers
