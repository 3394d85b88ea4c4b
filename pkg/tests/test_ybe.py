from collections import Counter
from fractions import Fraction

import pytest

from triweb.errors import ValidationError
from triweb.gf import PrimeField
from triweb.webfun import PASS, make_context
from triweb.ybe import (check_closed_form, check_column_structure, check_involutive, check_ybe,
                        column_census, density_report, rhat, rhat_closed_form, signed_swap, summary)


@pytest.fixture(scope="module")
def sol_15_1(ctx_15_1):
    return rhat(ctx_15_1)


def test_involutive_and_braided(sol_15_1):
    assert check_involutive(sol_15_1).status == PASS
    assert check_ybe(sol_15_1).status == PASS
    assert check_ybe(sol_15_1, negate=True).status == PASS


def test_closed_form(sol_15_1):
    assert check_closed_form(sol_15_1).status == PASS


def test_column_structure(sol_15_1):
    assert check_column_structure(sol_15_1).status == PASS
    # 13 * 4 incident columns carry q = 3 entries, the other 117 a single one
    assert column_census(sol_15_1) == Counter({3: 52, 1: 117})


def test_density_bound(sol_15_1):
    report = density_report(sol_15_1)
    assert report.nnz == 52 * 3 + 117
    assert report.total == 13 ** 4
    assert report.satisfied is True


def test_summary_keys(sol_15_1):
    out = summary(sol_15_1)
    assert out["N"] == 13 and out["p"] == 2 and out["q"] == 3
    assert out["involutive"] and out["ybe"] and out["closed_form"]
    assert out["density_bound_ok"] is True
    assert "signed_swap" not in out


@pytest.mark.parametrize("N", [3, 4])
def test_degenerate_is_signed_swap(N):
    from triweb.presentation import degenerate

    sol = rhat(make_context(degenerate(N), 0))
    assert sol.matrix == signed_swap(N, PrimeField(0))
    out = summary(sol)
    assert out["signed_swap"] is True
    assert out["density_bound_ok"] is None
    assert out["involutive"] and out["ybe"]


def test_signed_swap_shape():
    r = signed_swap(2, PrimeField(3), eps1=1, eps2=1)
    assert r.to_dense() == [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]


def test_closed_form_needs_rank_3(tp_degenerate_4):
    with pytest.raises(ValidationError):
        rhat_closed_form(tp_degenerate_4, 0)


class TestPlaneOfOrderFour:
    @pytest.fixture(scope="class")
    def sol(self, ctx_q4):
        return rhat(ctx_q4)

    def test_involutive_and_braided(self, sol):
        assert sol.matrix.shape == (441, 441)
        assert check_involutive(sol).status == PASS
        assert check_ybe(sol).status == PASS

    def test_closed_form_and_columns(self, sol):
        assert check_closed_form(sol).status == PASS
        assert check_column_structure(sol).status == PASS
        assert column_census(sol) == Counter({4: 21 * 5, 1: 441 - 21 * 5})

    def test_density_below_q_over_n_squared(self, sol):
        report = density_report(sol)
        assert report.bound == Fraction(4, 441)
        assert report.density < report.bound
        assert report.satisfied is True


def test_fano_in_char_2_is_not_involutive(tp_fano):
    sol = rhat(make_context(tp_fano, 2, override=True))
    report = check_involutive(sol)
    assert not report.passed
    assert report.witness == {"row": 1, "col": 1, "lhs": 0, "rhs": 1}
