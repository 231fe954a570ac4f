"""Piecewise polynomial functions on a characteristic pair.

An element stores one polynomial on the cocharacter space per maximal cone;
adjacent cones must agree on the span of the lattice vectors of their shared
facet.  The graded pieces, the quotient by global linear functions, and the
base-tensored quotient are all computed by exact rank; the results match the
Stanley-Reisner graded dimensions degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import exact
from .charpair import CharacteristicPair, dual_edge_frame
from .errors import MalformedInputError, PairMismatchError
from .poly import MultiPoly, monomials_of_degree
from .srbundle import BundleRing


@dataclass(frozen=True)
class PPElement:
    """Per maximal cone, a homogeneous degree-d polynomial on the
    cocharacter space (graded degree 2d)."""

    cp: CharacteristicPair
    degree: int
    polys: tuple[MultiPoly, ...]

    def __post_init__(self):
        if len(self.polys) != len(self.cp.max_cones):
            raise MalformedInputError("need one polynomial per maximal cone")
        for g in self.polys:
            if g.nvars != self.cp.n or not g.is_homogeneous(self.degree):
                raise MalformedInputError(
                    f"cone polynomials must be homogeneous of degree {self.degree}")


@lru_cache(maxsize=None)
def facet_pairs(cp: CharacteristicPair) -> tuple[tuple[tuple[int, ...], int, int], ...]:
    """(facet, cone index, cone index) for every shared facet."""
    owners: dict[tuple[int, ...], list[int]] = {}
    for ci, cone in enumerate(cp.max_cones):
        for drop in range(cp.n):
            facet = cone[:drop] + cone[drop + 1:]
            owners.setdefault(facet, []).append(ci)
    out = []
    for facet, cones in sorted(owners.items()):
        if len(cones) != 2:
            raise MalformedInputError("facet pairing fails; validate the pair first")
        out.append((facet, cones[0], cones[1]))
    return tuple(out)


def _restrict_to_facet_span(cp: CharacteristicPair, facet: tuple[int, ...],
                            g: MultiPoly) -> MultiPoly:
    """Restriction of g to the span of the facet's lattice vectors, as a
    polynomial in one parameter per facet ray."""
    t = len(facet)
    images = []
    for r in range(cp.n):
        images.append(MultiPoly.linear_form([cp.lam[j][r] for j in facet])
                      if t else MultiPoly.zero(0))
    return g.substitute(images)


def is_compatible(el: PPElement) -> bool:
    for facet, c1, c2 in facet_pairs(el.cp):
        diff = el.polys[c1] - el.polys[c2]
        if diff and _restrict_to_facet_span(el.cp, facet, diff):
            return False
    return True


def multiply(f: PPElement, g: PPElement) -> PPElement:
    if f.cp != g.cp:
        raise PairMismatchError("elements live over different pairs")
    out = PPElement(f.cp, f.degree + g.degree,
                    tuple(a * b for a, b in zip(f.polys, g.polys)))
    if not is_compatible(out):
        raise MalformedInputError("product violates facet compatibility")
    return out


def global_character(cp: CharacteristicPair, chi) -> PPElement:
    """The global linear function of a character, same on every cone."""
    g = MultiPoly.linear_form([Fraction(exact.as_scalar(c)) for c in chi])
    return PPElement(cp, 1, tuple(g for _ in cp.max_cones))


def courant_basis(cp: CharacteristicPair) -> list[PPElement]:
    """One piecewise linear function per ray: value 1 on its own lattice
    vector, 0 on the other rays of each cone containing it, 0 elsewhere."""
    out = []
    for i in range(cp.s):
        polys = []
        for cone in cp.max_cones:
            if i in cone:
                frame = dual_edge_frame(cp, cone)
                w = frame[cone.index(i)]
                polys.append(MultiPoly.linear_form(list(w)))
            else:
                polys.append(MultiPoly.zero(cp.n))
        el = PPElement(cp, 1, tuple(polys))
        if not is_compatible(el):
            raise MalformedInputError("courant function violates compatibility")
        out.append(el)
    return out


# ---------------------------------------------------------------------------
# Graded pieces as kernels of the compatibility system.

def _coefficient_layout(cp: CharacteristicPair, d: int):
    monos = monomials_of_degree(cp.n, d)
    ncones = len(cp.max_cones)
    return monos, ncones, len(monos) * ncones


def _to_vector(el: PPElement) -> list[Fraction]:
    monos, _, width = _coefficient_layout(el.cp, el.degree)
    vec = [Fraction(0)] * width
    per = len(monos)
    for ci, g in enumerate(el.polys):
        for k, m in enumerate(monos):
            c = g.coefficient(m)
            if c:
                vec[ci * per + k] = c
    return vec


def _from_vector(cp: CharacteristicPair, d: int, vec) -> PPElement:
    monos, ncones, _ = _coefficient_layout(cp, d)
    per = len(monos)
    polys = []
    for ci in range(ncones):
        terms = {m: vec[ci * per + k] for k, m in enumerate(monos) if vec[ci * per + k]}
        polys.append(MultiPoly(cp.n, terms))
    return PPElement(cp, d, tuple(polys))


def _compatibility_rows(cp: CharacteristicPair, d: int) -> list[list[Fraction]]:
    monos, ncones, width = _coefficient_layout(cp, d)
    per = len(monos)
    rows = []
    for facet, c1, c2 in facet_pairs(cp):
        t = len(facet)
        smonos = monomials_of_degree(t, d)
        if not smonos:
            continue
        sindex = {m: i for i, m in enumerate(smonos)}
        # restriction of each coefficient monomial to the facet span
        cols = {}
        for k, m in enumerate(monos):
            restricted = _restrict_to_facet_span(cp, facet, MultiPoly.monomial(m, 1))
            cols[k] = restricted
        for sm, si in sorted(sindex.items()):
            row = [Fraction(0)] * width
            nonzero = False
            for k in range(per):
                c = cols[k].coefficient(sm)
                if c:
                    row[c1 * per + k] += c
                    row[c2 * per + k] -= c
                    nonzero = True
            if nonzero:
                rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _pp_kernel(cp: CharacteristicPair, d: int) -> tuple[tuple[Fraction, ...], ...]:
    _, _, width = _coefficient_layout(cp, d)
    rows = _compatibility_rows(cp, d)
    if not rows:
        basis = [[Fraction(int(i == j)) for j in range(width)] for i in range(width)]
    else:
        basis = exact.kernel_basis(rows)
    return tuple(tuple(v) for v in basis)


def pp_graded_dim(cp: CharacteristicPair, d: int) -> int:
    """Dimension of the compatible piecewise polynomials of degree d."""
    if d < 0:
        raise MalformedInputError("degree must be non-negative")
    return len(_pp_kernel(cp, d))


def pp_basis(cp: CharacteristicPair, d: int) -> list[PPElement]:
    return [_from_vector(cp, d, vec) for vec in _pp_kernel(cp, d)]


# ---------------------------------------------------------------------------
# Quotient dimensions.

def brion_quotient_dims(cp: CharacteristicPair, max_degree: int | None = None) -> list[int]:
    """Graded dimensions of piecewise polynomials modulo global linear
    functions; entry d sits in cohomological degree 2d."""
    if max_degree is None:
        max_degree = 2 * cp.n
    out = []
    for d in range(max_degree // 2 + 1):
        dim_all = pp_graded_dim(cp, d)
        if d == 0:
            out.append(dim_all)
            continue
        lower = pp_basis(cp, d - 1)
        products = []
        for a in range(cp.n):
            chi = [Fraction(int(r == a)) for r in range(cp.n)]
            char = global_character(cp, chi)
            for q in lower:
                products.append(_to_vector(multiply(char, q)))
        r = exact.rank(products) if products else 0
        out.append(dim_all - r)
    return out


def brion_bundle_dims(ring: BundleRing, max_degree: int | None = None) -> list[int]:
    """Graded dimensions of (base tensor piecewise polynomials) modulo the
    relations identifying each character's image with its global linear
    function; full list over cohomological degrees 0..max_degree."""
    cp, base = ring.cp, ring.base
    if max_degree is None:
        max_degree = ring.total_degree
    dims = []
    for total in range(max_degree + 1):
        blocks = []  # (base index, pp degree, offset, ambient width)
        offset = 0
        for b in range(base.dim):
            rem = total - base.degrees[b]
            if rem < 0 or rem % 2:
                continue
            d = rem // 2
            _, _, width = _coefficient_layout(cp, d)
            blocks.append((b, d, offset, width))
            offset += width
        if not blocks:
            dims.append(0)
            continue
        space_dim = sum(len(_pp_kernel(cp, d)) for _, d, _, _ in blocks)
        block_of = {b: (d, off, width) for b, d, off, width in blocks}
        rows = []
        for a in range(cp.n):
            chi = [Fraction(int(r == a)) for r in range(cp.n)]
            char = global_character(cp, chi)
            c_el = ring.chern.evaluate(chi)
            for b in range(base.dim):
                rem = total - 2 - base.degrees[b]
                if rem < 0 or rem % 2:
                    continue
                dq = rem // 2
                for q in pp_basis(cp, dq):
                    vec = [Fraction(0)] * offset
                    used = False
                    # (c(chi) * b) tensor q
                    for b2, coeff in ring.base.mul(c_el, {b: Fraction(1)}).items():
                        if b2 not in block_of:
                            continue
                        d2, off2, _ = block_of[b2]
                        qv = _to_vector(q)
                        for k, v in enumerate(qv):
                            if v:
                                vec[off2 + k] += coeff * v
                                used = True
                    # minus b tensor (chi * q)
                    if b in block_of:
                        d2, off2, _ = block_of[b]
                        pv = _to_vector(multiply(char, q))
                        for k, v in enumerate(pv):
                            if v:
                                vec[off2 + k] -= v
                                used = True
                    if used:
                        rows.append(vec)
        r = exact.rank(rows) if rows else 0
        dims.append(space_dim - r)
    return dims
