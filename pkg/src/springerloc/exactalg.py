"""Exact sparse polynomials over Q and degree-graded echelon linear algebra.

Polynomials are dictionaries mapping exponent tuples to nonzero ``Fraction``
coefficients; all arithmetic is exact.  Two echelon structures are provided:

* :class:`GradedBasis` — a small, dense, fully reduced (RREF) basis of a graded
  piece of a vector space, with pure functional updates.  Pivot order is the
  coordinate order, i.e. lexicographic once coordinates enumerate monomials.
* :class:`SparseEchelon` — an internal forward-reduced (REF) echelon with sparse
  rows, used for the larger spans that arise inside the localization engine and
  the ideal oracle.  Reduction against it computes the unique normal form
  supported on non-pivot coordinates.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ContainmentError, MalformedInputError

Exponent = tuple[int, ...]
Rational = Fraction | int

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SparsePoly:
    """An exact multivariate polynomial with Fraction coefficients.

    Immutable by convention: ``terms`` is copied at construction and never
    mutated afterwards, so instances can be shared and hashed freely.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Rational] | None = None):
        if nvars < 0:
            raise MalformedInputError("nvars must be non-negative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise MalformedInputError(f"bad exponent tuple {exps!r} for nvars={nvars}")
                c = Fraction(coeff)
                if c:
                    clean[tuple(exps)] = c
        self.nvars = nvars
        self.terms = clean
        self._hash: int | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: Rational) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "SparsePoly":
        """The variable with 0-based index ``i``."""
        if not 0 <= i < nvars:
            raise MalformedInputError(f"variable index {i} out of range for nvars={nvars}")
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exps: _ONE})

    @classmethod
    def monomial(cls, nvars: int, exps: Exponent, coeff: Rational = 1) -> "SparsePoly":
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "SparsePoly":
        # Fast path: caller guarantees canonical terms (no zeros, right arity).
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Maximum total degree of a term; 0 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self, degree: int) -> bool:
        """True when every term has the given total degree (vacuously for 0)."""
        return all(sum(e) == degree for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, _ZERO)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_arity(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps, _ZERO) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return SparsePoly._raw(self.nvars, terms)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "SparsePoly | Rational") -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return SparsePoly._raw(self.nvars, {})
            return SparsePoly._raw(self.nvars, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_arity(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, _ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return SparsePoly._raw(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise MalformedInputError("negative power")
        result = SparsePoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def substitute(self, images: Sequence["SparsePoly"]) -> "SparsePoly":
        """Substitute ``images[i]`` for variable i; ring homomorphism.

        All images must share one arity, which becomes the result's arity.
        """
        if len(images) != self.nvars:
            raise MalformedInputError(
                f"expected {self.nvars} images, got {len(images)}")
        if self.nvars == 0:
            return SparsePoly._raw(0, dict(self.terms))
        m = images[0].nvars
        if any(im.nvars != m for im in images):
            raise MalformedInputError("images have mixed arities")
        power_cache: dict[tuple[int, int], SparsePoly] = {}

        def power(i: int, e: int) -> SparsePoly:
            key = (i, e)
            got = power_cache.get(key)
            if got is None:
                got = power_cache[key] = images[i] ** e
            return got

        acc = SparsePoly.zero(m)
        for exps, coeff in self.terms.items():
            term = SparsePoly.const(m, coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        if len(point) != self.nvars:
            raise MalformedInputError("point arity mismatch")
        vals = [Fraction(v) for v in point]
        total = _ZERO
        for exps, coeff in self.terms.items():
            prod = coeff
            for v, e in zip(vals, exps):
                if e:
                    prod *= v ** e
            total += prod
        return total

    # -- dunder plumbing ---------------------------------------------------

    def _check_arity(self, other: "SparsePoly") -> None:
        if self.nvars != other.nvars:
            raise MalformedInputError(
                f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SparsePoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms, reverse=True):
            c = self.terms[exps]
            mono = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}"
                            for i, e in enumerate(exps) if e)
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def poly_substitute(p: SparsePoly, images: Sequence[SparsePoly]) -> SparsePoly:
    """Functional alias for :meth:`SparsePoly.substitute`."""
    return p.substitute(images)


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of the given total degree, in lexicographic order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out: list[Exponent] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    out.sort()
    return out


def monomial_count(nvars: int, degree: int) -> int:
    """dim of the degree-d piece of a polynomial ring in ``nvars`` variables."""
    if nvars == 0:
        return 1 if degree == 0 else 0
    return math.comb(degree + nvars - 1, nvars - 1)


# ---------------------------------------------------------------------------
# Dense reduced echelon bases (small ambient spaces).
# ---------------------------------------------------------------------------

Vector = tuple[Fraction, ...]


class GradedBasis:
    """A reduced row-echelon basis of a subspace of one graded piece.

    Invariants: pivot columns strictly increase down the rows, every pivot
    entry is 1, and a pivot column is zero in every other row.  Instances are
    immutable; :func:`echelon_insert` returns a new basis.
    """

    __slots__ = ("degree", "ambient_dim", "rows", "pivots")

    def __init__(self, degree: int, ambient_dim: int,
                 rows: Sequence[Sequence[Rational]] = ()):
        self.degree = degree
        self.ambient_dim = ambient_dim
        base = GradedBasis._empty(degree, ambient_dim)
        for row in rows:
            base, _ = echelon_insert(base, row)
        self.rows = base.rows
        self.pivots = base.pivots

    @classmethod
    def _make(cls, degree: int, ambient_dim: int, rows: tuple[Vector, ...],
              pivots: tuple[int, ...]) -> "GradedBasis":
        b = cls.__new__(cls)
        b.degree = degree
        b.ambient_dim = ambient_dim
        b.rows = rows
        b.pivots = pivots
        return b

    @classmethod
    def _empty(cls, degree: int, ambient_dim: int) -> "GradedBasis":
        return cls._make(degree, ambient_dim, (), ())

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[Rational]) -> Vector:
        """Residual of ``v`` after subtracting its projection onto the span."""
        if len(v) != self.ambient_dim:
            raise MalformedInputError("vector/ambient dimension mismatch")
        w = [Fraction(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                for j, rj in enumerate(row):
                    if rj:
                        w[j] -= c * rj
        return tuple(w)

    def contains(self, v: Sequence[Rational]) -> bool:
        return not any(self.reduce(v))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, GradedBasis) and self.degree == other.degree
                and self.ambient_dim == other.ambient_dim and self.rows == other.rows)

    def __repr__(self) -> str:
        return f"GradedBasis(degree={self.degree}, rank={self.rank}, dim={self.ambient_dim})"


def echelon_insert(basis: GradedBasis, v: Sequence[Rational]) -> tuple[GradedBasis, bool]:
    """Insert ``v`` into a reduced echelon basis.

    Returns ``(new_basis, was_new)``; ``was_new`` is False when ``v`` already
    lies in the span (the basis object is returned unchanged).
    """
    residual = list(basis.reduce(v))
    pivot = next((j for j, x in enumerate(residual) if x), None)
    if pivot is None:
        return basis, False
    inv = _ONE / residual[pivot]
    new_row = tuple(x * inv for x in residual)
    # Back-reduce existing rows so the new pivot column is zero elsewhere.
    rows = []
    for row in basis.rows:
        c = row[pivot]
        rows.append(tuple(x - c * y for x, y in zip(row, new_row)) if c else row)
    pivots = list(basis.pivots)
    at = next((i for i, p in enumerate(pivots) if p > pivot), len(pivots))
    rows.insert(at, new_row)
    pivots.insert(at, pivot)
    return GradedBasis._make(basis.degree, basis.ambient_dim,
                             tuple(rows), tuple(pivots)), True


def complement_basis(sub: GradedBasis, ambient: GradedBasis) -> list[Vector]:
    """Vectors of ``ambient`` whose classes form a basis of ambient/sub.

    Every row of ``sub`` must lie in the span of ``ambient``; raises
    :class:`ContainmentError` otherwise.  Returned vectors are original
    ``ambient`` rows, scanned in order (earliest-pivot first).
    """
    if sub.ambient_dim != ambient.ambient_dim or sub.degree != ambient.degree:
        raise MalformedInputError("sub/ambient grading mismatch")
    for row in sub.rows:
        if not ambient.contains(row):
            raise ContainmentError(f"subspace row with pivot {row.index(_ONE)} "
                                   "is not contained in the ambient span")
    work = GradedBasis._make(sub.degree, sub.ambient_dim, sub.rows, sub.pivots)
    out: list[Vector] = []
    for row in ambient.rows:
        work, fresh = echelon_insert(work, row)
        if fresh:
            out.append(row)
    return out


# ---------------------------------------------------------------------------
# Sparse forward echelon (internal; large ambient spaces).
# ---------------------------------------------------------------------------

SparseVec = dict[int, Fraction]


class SparseEchelon:
    """Forward-reduced echelon with sparse rows keyed by pivot column.

    Rows are stored with leading coefficient 1 at their pivot; reduction
    processes coordinates in increasing order, which yields the unique normal
    form supported on non-pivot columns.
    """

    __slots__ = ("rows",)

    def __init__(self) -> None:
        self.rows: dict[int, SparseVec] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Normal form of ``vec`` modulo the span (input not mutated).

        Coordinates are processed in increasing order; subtracting a row only
        touches columns past its pivot, so each column is settled exactly once.
        """
        w = dict(vec)
        heap = list(w)
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            j = heapq.heappop(heap)
            queued.discard(j)
            c = w.get(j)
            if not c:
                w.pop(j, None)
                continue
            row = self.rows.get(j)
            if row is None:
                continue  # non-pivot column: part of the normal form
            del w[j]
            for col, rc in row.items():
                if col == j:
                    continue
                s = w.get(col, _ZERO) - c * rc
                if s:
                    w[col] = s
                    if col not in queued:
                        heapq.heappush(heap, col)
                        queued.add(col)
                else:
                    w.pop(col, None)
        return {j: c for j, c in w.items() if c}

    def insert(self, vec: SparseVec) -> bool:
        """Reduce and, when a residual survives, adopt it as a new row."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = min(r)
        inv = _ONE / r[pivot]
        self.rows[pivot] = {j: c * inv for j, c in r.items()}
        return True


class TrackedEchelon:
    """Sparse echelon that remembers each row's expression over inserted sources.

    Used to extract quotient lifts: inserting source i either adds a pivot row
    (recording that the row *is* source i minus a combination of earlier kept
    sources) or proves source i dependent, returning its exact coefficients
    over the kept sources.
    """

    __slots__ = ("rows", "combos", "kept")

    def __init__(self) -> None:
        self.rows: dict[int, SparseVec] = {}
        self.combos: dict[int, dict[int, Fraction]] = {}  # pivot -> {source: coeff}
        self.kept: list[int] = []

    def solve(self, vec: SparseVec) -> tuple[dict[int, Fraction], SparseVec]:
        """Express ``vec`` over the kept sources without inserting.

        Returns ``(combo, residual)`` with ``vec == residual + sum(combo * source
        vector)`` exactly; an empty residual certifies membership in the span.
        """
        w = dict(vec)
        combo: dict[int, Fraction] = {}
        heap = list(w)
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            hit = heapq.heappop(heap)
            queued.discard(hit)
            c = w.get(hit)
            if not c:
                w.pop(hit, None)
                continue
            row = self.rows.get(hit)
            if row is None:
                continue
            del w[hit]
            for j, rj in row.items():
                if j == hit:
                    continue
                s = w.get(j, _ZERO) - c * rj
                if s:
                    w[j] = s
                    if j not in queued:
                        heapq.heappush(heap, j)
                        queued.add(j)
                else:
                    w.pop(j, None)
            for src, k in self.combos[hit].items():
                s = combo.get(src, _ZERO) + c * k
                if s:
                    combo[src] = s
                else:
                    combo.pop(src, None)
        return combo, {j: c for j, c in w.items() if c}

    def insert(self, source: int, vec: SparseVec) -> dict[int, Fraction] | None:
        """Insert source ``source``; return None if kept, else its dependence.

        The returned mapping expresses the inserted vector exactly as
        sum(coeff * kept-source vector).
        """
        w = dict(vec)
        combo: dict[int, Fraction] = {}
        heap = list(w)
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            hit = heapq.heappop(heap)
            queued.discard(hit)
            c = w.get(hit)
            if not c:
                w.pop(hit, None)
                continue
            row = self.rows.get(hit)
            if row is None:
                continue
            del w[hit]
            for j, rj in row.items():
                if j == hit:
                    continue
                s = w.get(j, _ZERO) - c * rj
                if s:
                    w[j] = s
                    if j not in queued:
                        heapq.heappush(heap, j)
                        queued.add(j)
                else:
                    w.pop(j, None)
            for src, k in self.combos[hit].items():
                s = combo.get(src, _ZERO) + c * k
                if s:
                    combo[src] = s
                else:
                    combo.pop(src, None)
        w = {j: c for j, c in w.items() if c}
        if not w:
            return combo
        pivot = min(w)
        inv = _ONE / w[pivot]
        self.rows[pivot] = {j: c * inv for j, c in w.items()}
        own = {src: -k * inv for src, k in combo.items()}
        own[source] = inv
        self.combos[pivot] = own
        self.kept.append(source)
        return None
