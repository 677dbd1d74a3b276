"""Top-level pipeline: reports, conventions, graded multiplicity tables.

The q = 1 anchor is Young's rule via pure combinatorics: decomposing the
fixed-word permutation character gives the Kostka numbers, which must equal
the summed graded multiplicities.
"""

import pytest

from springerloc.errors import GuardrailError, MalformedInputError
from springerloc.springer import (
    equivariance_check,
    gaussian_factorial,
    irreducible_dimension,
    kostka_foulkes_table,
    springer_compute,
)
from springerloc.symgroup import (
    Partition,
    conjugacy_classes,
    count_fixed_words,
    decompose_class_function,
    fixed_point_set,
    partitions_of,
)

_REPORTS = {}


def report_for(parts, **kw):
    key = (tuple(parts), tuple(sorted(kw.items())))
    if key not in _REPORTS:
        _REPORTS[key] = springer_compute(Partition(parts), **kw)
    return _REPORTS[key]


def P(*parts):
    return Partition(list(parts))


def test_gaussian_factorial_values():
    assert gaussian_factorial(1) == (1,)
    assert gaussian_factorial(2) == (1, 1)
    assert gaussian_factorial(3) == (1, 2, 2, 1)
    assert gaussian_factorial(4) == (1, 3, 5, 6, 5, 3, 1)
    assert sum(gaussian_factorial(5)) == 120


def test_frozen_poincare_polynomials():
    assert report_for([2, 1]).poincare == (1, 2)
    assert report_for([1, 1]).poincare == (1, 1)
    assert report_for([1, 1, 1]).poincare == (1, 2, 2, 1)
    assert report_for([2, 2]).poincare == (1, 3, 2)
    assert report_for([3]).poincare == (1,)


def test_mode_selection_in_reports():
    assert report_for([1, 1, 1]).mode == "syzygy-free"
    assert report_for([2, 2]).mode == "echelon"


def test_all_certificates_and_conventions_hold_up_to_rank_four():
    for n in range(1, 5):
        for lam in partitions_of(n):
            rep = report_for(list(lam.parts))
            assert all(ok for _, ok in rep.certificates), lam
            assert all(ok for _, ok in rep.conventions), lam
            assert rep.certificate("freeness")
            assert rep.fixed_point_count == lam.multinomial()
            assert len(rep.poincare) == lam.top_degree() + 1


def test_multiplicities_weighted_by_dimension_fill_the_word_count():
    for n in range(1, 5):
        for lam in partitions_of(n):
            rep = report_for(list(lam.parts))
            total = sum(m * irreducible_dimension(mu)
                        for row in rep.multiplicities for mu, m in row)
            assert total == rep.fixed_point_count, lam


def test_summed_multiplicities_obey_youngs_rule():
    # q = 1: decomposing the fixed-word permutation character combinatorially
    for n in range(2, 5):
        for lam in partitions_of(n):
            rep = report_for(list(lam.parts))
            Pset = fixed_point_set(lam)
            perm_char = {cls.cycle_type: count_fixed_words(Pset, cls.rep)
                         for cls in conjugacy_classes(n)}
            kostka = decompose_class_function(perm_char, n)
            expected = {mu: int(c) for mu, c in kostka.items() if c}
            assert rep.total_multiplicities() == expected, lam


def test_degree_zero_is_trivial_and_top_is_the_shape_itself():
    for parts in ([2, 1], [2, 2], [1, 1, 1], [3, 1]):
        rep = report_for(parts)
        shape = P(*parts)
        assert rep.multiplicities[0] == ((P(shape.n), 1),)
        assert rep.multiplicities[-1] == ((shape, 1),)
        assert rep.multiplicity(rep.degree_bound, shape) == 1
        assert rep.multiplicity(0, shape) == (1 if len(parts) == 1 else 0)


def test_graded_table_rank_three():
    table = kostka_foulkes_table(3)
    assert table.row_shapes == (P(3), P(2, 1), P(1, 1, 1))
    assert table.entry(P(3), P(3)) == (1,)
    assert table.entry(P(2, 1), P(3)) == ()
    assert table.entry(P(3), P(2, 1)) == (1,)
    assert table.entry(P(2, 1), P(2, 1)) == (0, 1)
    assert table.entry(P(1, 1, 1), P(2, 1)) == ()
    assert table.entry(P(3), P(1, 1, 1)) == (1,)
    assert table.entry(P(2, 1), P(1, 1, 1)) == (0, 1, 1)
    assert table.entry(P(1, 1, 1), P(1, 1, 1)) == (0, 0, 0, 1)
    assert table.entry_at_one(P(2, 1), P(1, 1, 1)) == 2


def test_graded_table_rank_two():
    table = kostka_foulkes_table(2)
    assert table.entry(P(2), P(2)) == (1,)
    assert table.entry(P(2), P(1, 1)) == (1,)
    assert table.entry(P(1, 1), P(1, 1)) == (0, 1)
    assert table.entry(P(1, 1), P(2)) == ()


def test_table_columns_count_words_at_q_equals_one():
    table = kostka_foulkes_table(4)
    for lam in table.column_shapes:
        total = sum(table.entry_at_one(mu, lam) * irreducible_dimension(mu)
                    for mu in table.row_shapes)
        assert total == lam.multinomial()


def test_equivariance_check_reports_clean():
    for parts in ([2, 1], [2, 2], [1, 1, 1, 1], [3, 1]):
        rep = equivariance_check(P(*parts))
        assert rep.passed
        assert rep.failures == ()
        assert rep.checked_classes > 0


def test_padded_degree_bound_keeps_certificates():
    rep = springer_compute(P(2, 1), degree_bound=3)
    assert rep.poincare == (1, 2, 0, 0)
    assert all(ok for _, ok in rep.conventions)
    assert rep.multiplicities[2] == () and rep.multiplicities[3] == ()


def test_irreducible_dimension_hand_values():
    assert irreducible_dimension(P(4)) == 1
    assert irreducible_dimension(P(1, 1, 1, 1)) == 1
    assert irreducible_dimension(P(2, 1)) == 2
    assert irreducible_dimension(P(2, 2)) == 2
    assert irreducible_dimension(P(3, 1)) == 3
    assert irreducible_dimension(P(2, 1, 1)) == 3


def test_rank_guardrail_and_bound_validation():
    with pytest.raises(GuardrailError):
        springer_compute(P(7), max_n=6)
    with pytest.raises(MalformedInputError):
        springer_compute(P(2, 1), degree_bound=0)


def test_timings_cover_every_stage():
    rep = report_for([2, 2])
    stages = [name for name, _ in rep.timings_ms]
    assert stages == ["generators", "relations", "build", "quotient",
                      "freeness", "stability", "character", "decompose"]
    assert all(ms >= 0 for _, ms in rep.timings_ms)
