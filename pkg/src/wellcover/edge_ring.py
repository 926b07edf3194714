"""Exact arithmetic in quotients of K[x_1..x_n] by monomial ideals, K = Q.

Monomials are exponent tuples of length ``n`` (index 0 is x_1).  Square-free
monomials are also handled as vertex bitmasks, which is how the edge ring
talks to the graph side.  Lexicographic order with x_1 > x_2 > ... is plain
tuple comparison on exponent vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Rational
from typing import Iterable, Mapping, Optional, Sequence, Union

from .enumeration import enumerate_maximal_independent_sets
from .errors import DegenerateInputError, InvalidCoverError
from .graph import Graph, VertexSet, VertexSetLike, is_clique_cover, lowest, members, to_mask

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_from_mask(n: int, mask: VertexSet) -> Monomial:
    return tuple((mask >> i) & 1 for i in range(n))


def support(m: Monomial) -> VertexSet:
    return to_mask(i for i, e in enumerate(m) if e)


def format_monomial(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by a minimal generating set."""

    n: int
    generators: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, n: int, monomials: Iterable[Sequence[int]]) -> "MonomialIdeal":
        gens = sorted({tuple(m) for m in monomials}, reverse=True)
        for m in gens:
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {n} variables")
        minimal = [
            m for m in gens if not any(o != m and _divides(o, m) for o in gens)
        ]
        return cls(n, tuple(minimal))

    @classmethod
    def from_supports(cls, n: int, masks: Iterable[VertexSetLike]) -> "MonomialIdeal":
        """Square-free ideal generated by the products over each support set."""
        return cls.from_monomials(n, (monomial_from_mask(n, to_mask(s)) for s in masks))

    @property
    def squarefree(self) -> bool:
        return all(e <= 1 for m in self.generators for e in m)

    @property
    def support_masks(self) -> tuple[VertexSet, ...]:
        return tuple(support(m) for m in self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(_divides(gen, m) for gen in self.generators)

    def __str__(self) -> str:
        return "<" + ", ".join(format_monomial(m) for m in self.generators) + ">"


def edge_ideal(g: Graph) -> MonomialIdeal:
    """Ideal generated by x_i x_j for every edge ij."""
    return MonomialIdeal.from_supports(g.n, ((1 << u) | (1 << v) for u, v in g.edges()))


def monomial_in_ideal(m: Sequence[int], ideal: MonomialIdeal) -> bool:
    m = tuple(m)
    if len(m) != ideal.n:
        raise ValueError("monomial and ideal disagree on the number of variables")
    return ideal.contains(m)


def is_zero_in_ring(m: Sequence[int], ideal: MonomialIdeal) -> bool:
    """A monomial vanishes in K[x]/I exactly when it lies in I."""
    return monomial_in_ideal(m, ideal)


class Polynomial:
    """Polynomial with exact rational coefficients, kept merged and zero-free."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Sequence[int], Scalar] = ()):
        self.n = n
        merged: dict[Monomial, Fraction] = {}
        for m, c in dict(terms).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"exponent vector {m} does not have {n} entries")
            merged[m] = merged.get(m, Fraction(0)) + Fraction(c)
        self.terms = {m: c for m, c in merged.items() if c != 0}

    @classmethod
    def constant(cls, n: int, c: Scalar = 1) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        return cls(n, {tuple(int(k == i) for k in range(n)): 1})

    @classmethod
    def monomial(cls, m: Sequence[int], c: Scalar = 1) -> "Polynomial":
        return cls(len(m), {tuple(m): c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms from the lexicographically largest monomial down."""
        return sorted(self.terms.items(), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise DegenerateInputError("the zero polynomial has no leading term")
        return max(self.terms.items())

    def reduce(self, ideal: MonomialIdeal) -> "Polynomial":
        """Drop every term lying in ``ideal`` (canonical form in K[x]/I)."""
        return Polynomial(self.n, {m: c for m, c in self.terms.items() if not ideal.contains(m)})

    def _coerce(self, other: object) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError("polynomials live in rings with different variable counts")
            return other
        if isinstance(other, LinearForm):
            return other.to_polynomial()
        if isinstance(other, Rational):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other: object) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Polynomial(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: object) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.n, terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            mono = format_monomial(m)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(out)


def multiply_and_reduce(f: Polynomial, g: Polynomial, ideal: MonomialIdeal) -> Polynomial:
    if isinstance(f, LinearForm):
        f = f.to_polynomial()
    if isinstance(g, LinearForm):
        g = g.to_polynomial()
    if f.n != ideal.n or g.n != ideal.n:
        raise ValueError("operands and ideal disagree on the number of variables")
    return (f.reduce(ideal) * g.reduce(ideal)).reduce(ideal)


@dataclass(frozen=True)
class LinearForm:
    """Homogeneous linear polynomial ``sum c_i x_i`` with every listed c_i nonzero."""

    n: int
    coefficients: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_dict(cls, n: int, coefficients: Mapping[int, Scalar]) -> "LinearForm":
        items = []
        for i, c in sorted(coefficients.items()):
            if not 0 <= i < n:
                raise ValueError(f"variable index {i} out of range")
            c = Fraction(c)
            if c == 0:
                raise ValueError(f"coefficient of x{i + 1} is zero")
            items.append((i, c))
        if not items:
            raise DegenerateInputError("a linear form needs at least one variable")
        return cls(n, tuple(items))

    @classmethod
    def sum_of(cls, n: int, variables: VertexSetLike) -> "LinearForm":
        return cls.from_dict(n, {i: 1 for i in members(to_mask(variables))})

    @property
    def support(self) -> VertexSet:
        return to_mask(i for i, _ in self.coefficients)

    def scaled(self, c: Scalar) -> "LinearForm":
        return LinearForm.from_dict(self.n, {i: a * c for i, a in self.coefficients})

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.n, {tuple(int(k == i) for k in range(self.n)): c for i, c in self.coefficients})

    def __str__(self) -> str:
        return str(self.to_polynomial())


def theta(g: Graph, cover: Sequence[VertexSetLike], i: int) -> LinearForm:
    """Sum of the variables of the ``i``-th clique of ``cover``."""
    if not 0 <= i < len(cover):
        raise IndexError(f"cover has {len(cover)} parts, no part {i}")
    return LinearForm.sum_of(g.n, cover[i])


# -- zero divisors ----------------------------------------------------------


def linear_zero_divisor_witness(f: LinearForm, ideal: MonomialIdeal) -> Optional[VertexSet]:
    """Support of a square-free monomial ``m`` with ``m != 0`` and ``m*f = 0`` in K[x]/I.

    Only supports disjoint from ``f`` can work: if x_j divides m and m is not
    in a square-free I, neither is m*x_j.  So the search wants a set S outside
    supp(f) containing no generator such that S + {j} contains one for every
    j in supp(f).  It branches on the lowest unsatisfied j, trying generator
    remainders in ascending mask order, and excludes remainders whose
    subtree failed, which is the same order the graph-side dominator search
    uses on edge ideals.  Returns None when f is a non-zero-divisor.
    """
    if not ideal.squarefree:
        raise ValueError("the monomial criterion only holds for square-free ideals")
    if f.n != ideal.n:
        raise ValueError("form and ideal disagree on the number of variables")
    supp = f.support
    gens = ideal.support_masks
    if all(any(gm == 1 << j for gm in gens) for j in members(supp)):
        raise DegenerateInputError("linear form is zero in the quotient ring")
    full = (1 << f.n) - 1
    outside = full & ~supp
    options = {
        j: sorted({gm & ~(1 << j) for gm in gens if gm >> j & 1 and not gm & ~(1 << j) & ~outside})
        for j in members(supp)
    }
    inner_gens = [gm for gm in gens if not gm & ~outside]

    def valid(s: int) -> bool:
        return not any(gm & s == gm for gm in inner_gens)

    def satisfied(j: int, s: int) -> bool:
        return any(d & s == d for d in options[j])

    def search(s: int, excluded: list[int], pending: int) -> Optional[int]:
        pending = to_mask(j for j in members(pending) if not satisfied(j, s))
        if not pending:
            return s

        def admissible(d: int) -> bool:
            t = s | d
            return valid(t) and not any(e & t == e for e in excluded)

        for j in members(pending):
            if not any(admissible(d) for d in options[j]):
                return None
        j = lowest(pending)
        excluded = list(excluded)
        for d in options[j]:
            if not admissible(d):
                continue
            found = search(s | d, excluded, pending)
            if found is not None:
                return found
            excluded.append(d)
        return None

    return search(0, [], supp)


@dataclass
class CliqueSumResult:
    verdict: bool
    thetas: tuple[LinearForm, ...]
    witnesses: dict[int, VertexSet]


def clique_sum_check(g: Graph, cover: Sequence[VertexSetLike]) -> CliqueSumResult:
    """Well-coveredness through the clique sums: the graph is well-covered
    exactly when no clique sum is a zero-divisor of the edge ring."""
    cover = tuple(to_mask(c) for c in cover)
    if not is_clique_cover(g, cover):
        raise InvalidCoverError("cover must partition V(G) into maximal cliques")
    if len(cover) not in enumerate_maximal_independent_sets(g).sizes:
        raise InvalidCoverError(
            f"cover has {len(cover)} parts but no maximal independent set has that size"
        )
    ideal = edge_ideal(g)
    thetas = tuple(theta(g, cover, i) for i in range(len(cover)))
    witnesses = {}
    for i, form in enumerate(thetas):
        m = linear_zero_divisor_witness(form, ideal)
        if m is not None:
            witnesses[i] = m
    return CliqueSumResult(not witnesses, thetas, witnesses)


def monomial_annihilators(
    f: LinearForm, ideal: MonomialIdeal, max_degree: int
) -> list[Monomial]:
    """Every monomial ``m`` of degree <= ``max_degree`` with m not in I and m*f in I.

    Exhaustive; no square-free assumption.
    """
    vars_ = range(f.n)
    out = []
    for k in range(max_degree + 1):
        for combo in combinations_with_replacement(vars_, k):
            m = [0] * f.n
            for i in combo:
                m[i] += 1
            m = tuple(m)
            if ideal.contains(m):
                continue
            if multiply_and_reduce(f.to_polynomial(), Polynomial.monomial(m), ideal).is_zero():
                out.append(m)
    return out


def _nullspace(matrix: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace by exact row reduction, pivoting on the
    first nonzero column."""
    rows = [list(r) for r in matrix]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][col]
        if lead != 1:
            rows[r] = [x / lead if x else x for x in rows[r]]
        live = [k for k, b in enumerate(rows[r]) if b]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor, row = rows[i][col], rows[i]
                for k in live:  # the pivot row is sparse
                    row[k] -= factor * rows[r][k]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][free]
        basis.append(vec)
    return basis


def annihilator_basis(f: LinearForm, ideal: MonomialIdeal, degree: int) -> list[Polynomial]:
    """Basis of ``{g homogeneous of the given degree, g != 0 in R : f*g = 0 in R}``.

    Multiplication by ``f`` leaves the exponents of variables outside
    supp(f) untouched, so the map splits into one block per outside
    monomial; each block is solved by exact elimination.
    """
    n = f.n
    supp = members(f.support)
    outside = [i for i in range(n) if i not in supp]
    coeffs = dict(f.coefficients)
    basis = []
    for e in range(degree + 1):
        for outer in combinations_with_replacement(outside, e):
            base = [0] * n
            for i in outer:
                base[i] += 1
            if ideal.contains(tuple(base)):
                continue
            domain = []
            for inner in combinations_with_replacement(supp, degree - e):
                m = list(base)
                for i in inner:
                    m[i] += 1
                m = tuple(m)
                if not ideal.contains(m):
                    domain.append(m)
            if not domain:
                continue
            domain.sort(reverse=True)
            images: dict[Monomial, dict[int, Fraction]] = {}
            for col, m in enumerate(domain):
                for i, c in coeffs.items():
                    t = m[:i] + (m[i] + 1,) + m[i + 1 :]
                    if not ideal.contains(t):
                        row = images.setdefault(t, {})
                        row[col] = row.get(col, Fraction(0)) + c
            codomain = sorted(images, reverse=True)
            matrix = [[images[t].get(c, Fraction(0)) for c in range(len(domain))] for t in codomain]
            for vec in _nullspace(matrix, len(domain)):
                basis.append(Polynomial(n, {m: c for m, c in zip(domain, vec)}))
    return basis


def kernel_zero_divisor_oracle(
    f: LinearForm, ideal: MonomialIdeal, degree: Optional[int] = None
) -> Optional[Polynomial]:
    """Nonzero ``g`` of degree <= ``degree`` with ``f*g = 0`` in K[x]/I, or None.

    Pure linear algebra, independent of the monomial criterion.  Because I is
    monomial and f homogeneous, the kernel is graded, so degrees are scanned
    from 0 upward and the first basis vector found is returned.  The degree
    bound defaults to ``n`` for square-free ideals and must be given otherwise.
    """
    if degree is None:
        if not ideal.squarefree:
            raise ValueError("a degree bound is required for non-square-free ideals")
        degree = ideal.n
    if degree < 0:
        raise ValueError("degree bound must be non-negative")
    for k in range(degree + 1):
        basis = annihilator_basis(f, ideal, k)
        if basis:
            return basis[0]
    return None
