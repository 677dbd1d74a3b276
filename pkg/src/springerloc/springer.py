"""End-to-end Springer representation reports for one nilpotent Jordan type.

``springer_compute`` runs the whole pipeline for a partition λ of n:

1. enumerate the fixed-point word set P of content λ;
2. restrict the staircase cohomology classes y^a (a_i <= n−i) of degree up to
   the bound to P, giving the generator family of the image module M;
3. certify that the staircase rewriting relations vanish at every word, build
   M with the localization engine, take the augmentation quotient, and certify
   completeness, freeness and W-stability;
4. extract the graded character and decompose every degree into irreducible
   multiplicities (which must be non-negative integers).

The graded multiplicity of the irreducible of shape μ inside the quotient is
the Kostka–Foulkes entry for (μ, λ); ``kostka_foulkes_table`` collects those
polynomials for all shapes of one rank.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import CertificateError, GuardrailError, MalformedInputError
from .exactalg import Exponent
from .flagmodel import (artin_basis, equivariance_failures,
                        springer_restriction)
from .locengine import (ExpressionProvider, GradedCharacter,
                        augmentation_quotient, build_image_module,
                        freeness_certificate, graded_character,
                        verify_w_stability)
from .straighten import StaircaseReducer
from .symgroup import (FixedPointSet, Partition, Permutation,
                       decompose_class_function, fixed_point_set,
                       mn_character, partitions_of)

HARD_MAX_N = 8


def gaussian_factorial(n: int) -> tuple[int, ...]:
    """Coefficients of [n]_q! = prod_{i=1..n} (1 + q + ... + q^{i-1})."""
    coeffs = [1]
    for i in range(2, n + 1):
        new = [0] * (len(coeffs) + i - 1)
        for d, c in enumerate(coeffs):
            for j in range(i):
                new[d + j] += c
        coeffs = new
    return tuple(coeffs)


def staircase_family(shape: Partition, degree_bound: int,
                     ) -> tuple[FixedPointSet, list, list[Exponent]]:
    """Word set plus restrictions of all staircase classes within the bound."""
    P = fixed_point_set(shape)
    gens = []
    exps: list[Exponent] = []
    for c in artin_basis(shape.n):
        if c.degree > degree_bound:
            continue
        gens.append(springer_restriction(c, P))
        exps.append(next(iter(c.poly.terms)))
    return P, gens, exps


def make_expression_provider(reducer: StaircaseReducer,
                             exps: list[Exponent]) -> ExpressionProvider:
    """Rewrite w·y^a over the staircase family via normal forms.

    The moved monomial has exponents a'' with a''_{w(i)} = a_i; its normal
    form references only staircase monomials of no larger degree, so every
    referenced exponent is inside the family whenever the family is
    degree-saturated.
    """
    index_of = {e: i for i, e in enumerate(exps)}
    n = reducer.n

    def provider(gen_index: int, w: Permutation):
        a = exps[gen_index]
        moved = [0] * n
        for i in range(1, n + 1):
            moved[w(i) - 1] = a[i - 1]
        out = {}
        for bexp, zp in reducer.nf_monomial(tuple(moved)).items():
            out[index_of[bexp]] = zp
        return out

    return provider


@dataclass(frozen=True)
class SpringerReport:
    """Everything computed for one shape, with certificates and timings."""

    shape: Partition
    fixed_point_count: int
    degree_bound: int
    mode: str
    poincare: tuple[int, ...]
    character: GradedCharacter
    multiplicities: tuple[tuple[tuple[Partition, int], ...], ...]
    certificates: tuple[tuple[str, bool], ...]
    conventions: tuple[tuple[str, bool], ...]
    timings_ms: tuple[tuple[str, float], ...]

    def multiplicity(self, degree: int, mu: Partition) -> int:
        for shape_, m in self.multiplicities[degree]:
            if shape_ == mu:
                return m
        return 0

    def total_multiplicities(self) -> dict[Partition, int]:
        out: dict[Partition, int] = {}
        for row in self.multiplicities:
            for mu, m in row:
                out[mu] = out.get(mu, 0) + m
        return {mu: m for mu, m in out.items() if m}

    def certificate(self, name: str) -> bool:
        return dict(self.certificates)[name]


def springer_compute(shape: Partition, degree_bound: int | None = None, *,
                     mode: str = "auto", max_n: int = HARD_MAX_N,
                     ) -> SpringerReport:
    """Full localization pipeline for one Jordan type; raises on any failed
    certificate (:class:`CertificateError` names the stage and degree)."""
    if not isinstance(shape, Partition):
        shape = Partition(shape)
    if shape.n > max_n:
        raise GuardrailError("rank n", shape.n, max_n)
    if degree_bound is None:
        degree_bound = shape.top_degree()
    if degree_bound < shape.top_degree():
        raise MalformedInputError(
            f"degree bound {degree_bound} is below the completion degree "
            f"{shape.top_degree()}")

    timings: list[tuple[str, float]] = []

    def clock(label: str, start: float) -> None:
        timings.append((label, (time.perf_counter() - start) * 1000.0))

    t = time.perf_counter()
    P, gens, exps = staircase_family(shape, degree_bound)
    clock("generators", t)

    t = time.perf_counter()
    reducer = StaircaseReducer(shape)
    relations_ok = reducer.relations_vanish_on(P)
    clock("relations", t)
    if not relations_ok:
        raise CertificateError(
            "relations", "staircase rewriting relations do not vanish on the "
            "fixed-point words")
    provider = make_expression_provider(reducer, exps)

    t = time.perf_counter()
    M = build_image_module(P, gens, degree_bound, mode=mode,
                           expression_provider=provider)
    clock("build", t)

    t = time.perf_counter()
    Q = augmentation_quotient(M)
    clock("quotient", t)

    t = time.perf_counter()
    free = freeness_certificate(M, Q)
    clock("freeness", t)
    if not free.passed:
        raise CertificateError("freeness", "; ".join(free.failures),
                               partial=M.q_dims)

    t = time.perf_counter()
    stability = verify_w_stability(M)
    clock("stability", t)
    if not stability.passed:
        raise CertificateError("stability", "; ".join(stability.failures[:5]),
                               partial=M.q_dims)

    t = time.perf_counter()
    char = graded_character(Q)
    clock("character", t)

    t = time.perf_counter()
    mults = []
    for d in char.degrees:
        decomp = decompose_class_function(char.degree_row(d), shape.n)
        row = []
        for mu, coeff in sorted(decomp.items(), key=lambda kv: kv[0].parts,
                                reverse=True):
            if coeff == 0:
                continue
            if coeff != int(coeff) or coeff < 0:
                raise CertificateError(
                    "decomposition",
                    f"multiplicity of {mu!r} is {coeff}, not a non-negative "
                    "integer", degree=d)
            row.append((mu, int(coeff)))
        mults.append(tuple(row))
    clock("decompose", t)

    trivial = Partition([shape.n])
    conventions = (
        ("degree0_trivial", mults[0] == ((trivial, 1),)),
        ("top_matches_shape", mults[degree_bound] == ((shape, 1),)
         if degree_bound == shape.top_degree() else
         all(not row for row in mults[shape.top_degree() + 1:])
         and mults[shape.top_degree()] == ((shape, 1),)),
    )
    certificates = (
        ("relations", relations_ok),
        ("completeness", True),
        ("freeness", free.passed),
        ("stability", stability.passed),
    )
    return SpringerReport(shape, P.size, degree_bound, M.mode,
                          M.q_dims, char, tuple(mults),
                          certificates, conventions, tuple(timings))


@dataclass(frozen=True)
class EquivarianceReport:
    shape: Partition
    passed: bool
    checked_classes: int
    failures: tuple[tuple[Exponent, int], ...]


def equivariance_check(shape: Partition) -> EquivarianceReport:
    """Restriction-level equivariance: w · ι*(c) = ι*(w · c) for every
    staircase class and every adjacent transposition."""
    if not isinstance(shape, Partition):
        shape = Partition(shape)
    P = fixed_point_set(shape)
    failures = tuple(equivariance_failures(P))
    n_classes = len(artin_basis(shape.n))
    return EquivarianceReport(shape, not failures, n_classes, failures[:20])


@dataclass(frozen=True)
class KostkaFoulkesTable:
    """Graded multiplicity polynomials for all shapes of one rank.

    ``entry(mu, lam)`` maps degree -> multiplicity of the irreducible of shape
    μ in that degree of the quotient for Jordan type λ.  Convention note: with
    rows μ and columns λ, the entry is the Kostka–Foulkes polynomial for
    (μ, λ); at q = 1 each column's entries weighted by irreducible dimensions
    sum to the multinomial of λ.
    """

    n: int
    row_shapes: tuple[Partition, ...]
    column_shapes: tuple[Partition, ...]
    entries: tuple[tuple[tuple[int, ...], ...], ...]  # [row][col] -> q-coeffs
    note: str

    def entry(self, mu: Partition, lam: Partition) -> tuple[int, ...]:
        return self.entries[self.row_shapes.index(mu)][
            self.column_shapes.index(lam)]

    def entry_at_one(self, mu: Partition, lam: Partition) -> int:
        return sum(self.entry(mu, lam))


def kostka_foulkes_table(n: int, *, max_n: int = HARD_MAX_N,
                         ) -> KostkaFoulkesTable:
    shapes = partitions_of(n, max_n=max_n)
    reports = {lam: springer_compute(lam, max_n=max_n) for lam in shapes}
    rows = []
    for mu in shapes:
        row = []
        for lam in shapes:
            rep = reports[lam]
            coeffs = [rep.multiplicity(d, mu)
                      for d in range(rep.degree_bound + 1)]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            row.append(tuple(coeffs))
        rows.append(tuple(row))
    note = ("rows are irreducible shapes mu, columns are Jordan types lambda; "
            "entry [d] is the multiplicity of chi^mu in quotient degree d "
            "(the Kostka-Foulkes polynomial), so column lambda at q=1 counts "
            "fixed words: sum_mu entry(mu,lambda)(1) * dim chi^mu = "
            "n!/prod(lambda_i!)")
    return KostkaFoulkesTable(n, tuple(shapes), tuple(shapes),
                              tuple(rows), note)


def irreducible_dimension(mu: Partition) -> int:
    """dim of the irreducible S_n module of shape μ (character at identity)."""
    return mn_character(mu, Partition([1] * mu.n))
