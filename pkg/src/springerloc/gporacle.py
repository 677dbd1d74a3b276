"""Independent oracle: the Garsia–Procesi quotient by the Tanisaki ideal.

For a partition λ of n, the Tanisaki ideal I_λ ⊆ Q[y_1..y_n] is generated by
the partial elementary symmetric polynomials e_r(S) over all k-element
variable subsets S with k − d_k(λ) < r <= k, where d_k(λ) is the sum of the
last k entries of the conjugate partition padded to length n.  The quotient
R_λ = Q[y]/I_λ is the Garsia–Procesi module: a graded S_n-module of total
dimension n!/∏λ_i! whose graded character matches the Springer representation
computed by localization.  Everything here works directly in Q[y] with sparse
echelon spans of the graded ideal pieces — no fixed-point words, no Q[z], no
shared code path with the localization engine — so agreement between the two
graded characters is a genuine cross-check.

The subset convention is applied to λ itself, not its conjugate.  This
orientation is frozen in ``TANISAKI_CONJUGATE = False`` and pinned by both the
dimension check inside ``gp_graded_character`` (the quotient must have total
dimension n!/∏λ_i!) and ``verify_orientation_convention``.  Flipping the
convention is caught at rank 3 already: (3) and (1,1,1) would trade ideals,
and their quotient dimensions 1 and 6 cannot both survive the check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConventionError, MalformedInputError
from .exactalg import (Exponent, SparseEchelon, SparsePoly, monomial_count,
                       monomials_of_degree)
from .locengine import GradedCharacter
from .symgroup import Partition, Permutation, conjugacy_classes, partitions_of

TANISAKI_CONJUGATE = False

_ZERO = Fraction(0)


def resolve_orientation(shape: Partition) -> Partition:
    """The partition whose subset recipe is used (frozen: λ itself)."""
    return shape.conjugate() if TANISAKI_CONJUGATE else shape


def tanisaki_defects(shape: Partition) -> tuple[int, ...]:
    """d_k(λ) for k = 1..n: sum of the last k entries of padded conjugate."""
    n = shape.n
    conj = list(shape.conjugate().parts)
    conj += [0] * (n - len(conj))
    return tuple(sum(conj[n - k:]) for k in range(1, n + 1))


def _partial_elementary(n: int, subset: tuple[int, ...], r: int) -> SparsePoly:
    terms: dict[Exponent, Fraction] = {}
    for choice in combinations(subset, r):
        exps = [0] * n
        for i in choice:
            exps[i] = 1
        terms[tuple(exps)] = Fraction(1)
    return SparsePoly(n, terms)


def tanisaki_generators(shape: Partition) -> list[SparsePoly]:
    """Generators of the Tanisaki ideal, deduplicated, degree-sorted."""
    lam = resolve_orientation(shape)
    n = lam.n
    if n == 0:
        raise MalformedInputError("empty shape")
    defects = tanisaki_defects(lam)
    seen: dict[SparsePoly, None] = {}
    for k in range(1, n + 1):
        low = max(1, k - defects[k - 1] + 1)
        if low > k:
            continue
        for subset in combinations(range(n), k):
            for r in range(low, k + 1):
                seen.setdefault(_partial_elementary(n, subset, r))
    gens = list(seen)
    gens.sort(key=lambda g: (g.total_degree(), sorted(g.terms)))
    return gens


def _ideal_echelon(n: int, gens: list[SparsePoly], degree: int,
                   imap: dict[Exponent, int]) -> SparseEchelon:
    ech = SparseEchelon()
    for g in gens:
        e = g.total_degree()
        if e > degree:
            continue
        for shift in monomials_of_degree(n, degree - e):
            vec = {imap[tuple(a + b for a, b in zip(exps, shift))]: c
                   for exps, c in g.terms.items()}
            ech.insert(vec)
    return ech


def gp_graded_character(shape: Partition,
                        degree_bound: int | None = None) -> GradedCharacter:
    """Graded character of Q[y]/I_λ on standard-monomial bases.

    Raises :class:`ConventionError` when the quotient dimensions do not sum to
    n!/∏λ_i! by the top degree n(λ), or when the piece just above the top
    degree fails to vanish — both are sharp detectors of a flipped convention.
    """
    if not isinstance(shape, Partition):
        shape = Partition(shape)
    n = shape.n
    top = shape.top_degree()
    if degree_bound is None:
        degree_bound = top
    gens = tanisaki_generators(shape)
    classes = conjugacy_classes(n)

    dims: list[int] = []
    values: list[list[Fraction]] = []
    for d in range(degree_bound + 1):
        monos = monomials_of_degree(n, d)
        imap = {exps: i for i, exps in enumerate(monos)}
        ech = _ideal_echelon(n, gens, d, imap)
        standard = [i for i in range(len(monos)) if i not in ech.rows]
        dims.append(len(standard))
        row: list[Fraction] = []
        for cls in classes:
            row.append(_quotient_trace(monos, standard, imap, ech, cls.rep))
        values.append(row)

    total = sum(dims)
    expected = shape.multinomial()
    if total != expected:
        raise ConventionError(
            f"Tanisaki quotient for {shape!r} has total dimension {total} "
            f"through degree {degree_bound}, expected {expected}; the subset "
            "convention orientation is wrong or the recipe is corrupted")
    if degree_bound == top and n > 1:
        monos = monomials_of_degree(n, top + 1)
        imap = {exps: i for i, exps in enumerate(monos)}
        ech = _ideal_echelon(n, gens, top + 1, imap)
        if ech.rank != monomial_count(n, top + 1):
            raise ConventionError(
                f"Tanisaki quotient for {shape!r} does not vanish in degree "
                f"{top + 1}")

    return GradedCharacter(shape, tuple(range(degree_bound + 1)),
                           tuple(cls.cycle_type for cls in classes),
                           tuple(tuple(row) for row in values), tuple(dims))


def _quotient_trace(monos: list[Exponent], standard: list[int],
                    imap: dict[Exponent, int], ech: SparseEchelon,
                    w: Permutation) -> Fraction:
    """Trace of w on the quotient piece in its standard-monomial basis."""
    trace = _ZERO
    for idx in standard:
        exps = monos[idx]
        moved = [0] * len(exps)
        for i in range(1, len(exps) + 1):
            moved[w(i) - 1] = exps[i - 1]
        residual = ech.reduce({imap[tuple(moved)]: Fraction(1)})
        trace += residual.get(idx, _ZERO)
    return trace


def verify_orientation_convention(max_rank: int = 3) -> None:
    """Re-run the dimension resolution at small rank; raises ConventionError.

    Kept as a cheap regression so the frozen ``TANISAKI_CONJUGATE`` flag can
    never drift silently: with the flipped orientation the quotients for (n)
    and (1^n) trade places and the dimension check fails immediately.
    """
    for n in range(2, max_rank + 1):
        for lam in partitions_of(n):
            gp_graded_character(lam)


@dataclass(frozen=True)
class CrossCheckReport:
    shape: Partition
    passed: bool
    engine_dims: tuple[int, ...]
    oracle_dims: tuple[int, ...]
    mismatches: tuple[str, ...]


def oracle_cross_check(shape: Partition, *, mode: str = "auto",
                       ) -> CrossCheckReport:
    """Exact equality of the localization character and the oracle character.

    Compares graded dimensions and every trace value at every degree and
    conjugacy class.  Traces are class functions, so the two action
    orientations (left on functions, variable permutation on the quotient)
    are directly comparable.
    """
    from .springer import springer_compute

    if not isinstance(shape, Partition):
        shape = Partition(shape)
    engine = springer_compute(shape, mode=mode).character
    oracle = gp_graded_character(shape)
    mismatches: list[str] = []
    if engine.q_dims != oracle.q_dims:
        mismatches.append(
            f"graded dimensions differ: engine {engine.q_dims} vs oracle "
            f"{oracle.q_dims}")
    else:
        for d in engine.degrees:
            for ct in engine.cycle_types:
                ev = engine.value(d, ct)
                ov = oracle.value(d, ct)
                if ev != ov:
                    mismatches.append(
                        f"degree {d}, class {ct.to_string()}: engine {ev} "
                        f"vs oracle {ov}")
    return CrossCheckReport(shape, not mismatches, engine.q_dims,
                            oracle.q_dims, tuple(mismatches))
