"""Stanley-Reisner model of the cohomology of a quasitoric bundle.

The ring is base[x_1..x_s] modulo (i) monomials whose ray set spans no cone
and (ii) the linear relations c(lambda) - sum_i <lam_i, lambda> x_i.  Elements
are sparse dicts mapping an x-exponent tuple to a base-algebra element; a
term's degree is the base degree plus twice the x-degree.

`reduce` rewrites any element into square-free face form by repeatedly
eliminating one factor of a repeated variable through a dual character; the
multiplicity of every produced monomial drops by one, so it terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from . import exact
from .basealg import (ChernData, Element, GradedBaseAlgebra, el_add, el_scale,
                      el_str)
from .charpair import (CharacteristicPair, cone_sign, dual_character, faces,
                       is_face)
from .errors import DegreeMismatchError, MalformedInputError

Expo = tuple[int, ...]
BundleElement = dict[Expo, Element]


@dataclass(frozen=True)
class BundleRing:
    cp: CharacteristicPair
    base: GradedBaseAlgebra
    chern: ChernData

    def __post_init__(self):
        if self.chern.n != self.cp.n:
            raise MalformedInputError("chern rank does not match fan dimension")
        for name in self.base.names:
            if name[:1] in ("x", "h") and name[1:].isdigit():
                raise MalformedInputError(
                    f"base name {name!r} collides with divisor or support variables")

    @property
    def total_degree(self) -> int:
        return self.base.top + 2 * self.cp.n

    def zero_expo(self) -> Expo:
        return (0,) * self.cp.s


# ---------------------------------------------------------------------------
# Element constructors and arithmetic.

def lift(ring: BundleRing, gamma: Element) -> BundleElement:
    """Base element viewed in the bundle ring."""
    return {ring.zero_expo(): dict(gamma)} if gamma else {}

def one(ring: BundleRing) -> BundleElement:
    return lift(ring, ring.base.unit())


def x_class(ring: BundleRing, i: int) -> BundleElement:
    if not 0 <= i < ring.cp.s:
        raise MalformedInputError(f"no divisor variable x{i + 1}")
    expo = [0] * ring.cp.s
    expo[i] = 1
    return {tuple(expo): ring.base.unit()}


def rho(ring: BundleRing, h: Sequence) -> BundleElement:
    """The degree-2 class of a multi-polytope: sum_i h_i x_i."""
    out: BundleElement = {}
    for i, v in enumerate(h):
        v = Fraction(exact.as_scalar(v))
        if v:
            expo = [0] * ring.cp.s
            expo[i] = 1
            out[tuple(expo)] = el_scale(ring.base.unit(), v)
    return out


def bel_add(a: BundleElement, b: BundleElement) -> BundleElement:
    out = {k: dict(v) for k, v in a.items()}
    for expo, el in b.items():
        merged = el_add(out.get(expo, {}), el)
        if merged:
            out[expo] = merged
        else:
            out.pop(expo, None)
    return out


def bel_scale(a: BundleElement, c) -> BundleElement:
    c = Fraction(c)
    if not c:
        return {}
    return {expo: el_scale(el, c) for expo, el in a.items()}


def bel_mul(ring: BundleRing, a: BundleElement, b: BundleElement) -> BundleElement:
    out: BundleElement = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            coeff = ring.base.mul(c1, c2)
            if not coeff:
                continue
            expo = tuple(x + y for x, y in zip(e1, e2))
            merged = el_add(out.get(expo, {}), coeff)
            if merged:
                out[expo] = merged
            else:
                out.pop(expo, None)
    return out


def bel_str(ring: BundleRing, a: BundleElement) -> str:
    if not a:
        return "0"
    parts = []
    for expo in sorted(a):
        coeff = el_str(ring.base, a[expo])
        xs = "*".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                      for i, e in enumerate(expo) if e)
        if not xs:
            parts.append(f"({coeff})")
        elif coeff == "1":
            parts.append(xs)
        else:
            parts.append(f"({coeff})*{xs}")
    return " + ".join(parts)


def term_degrees(ring: BundleRing, a: BundleElement) -> set[int]:
    degs = set()
    for expo, el in a.items():
        xdeg = 2 * sum(expo)
        for idx, c in el.items():
            if c:
                degs.add(ring.base.degrees[idx] + xdeg)
    return degs


# ---------------------------------------------------------------------------
# Square-free reduction.

def _support(expo: Expo) -> tuple[int, ...]:
    return tuple(i for i, e in enumerate(expo) if e)

CharacterChooser = Callable[[tuple[int, ...], int], tuple[int, ...]]


def reduce(ring: BundleRing, el: BundleElement,
           chooser: CharacterChooser | None = None) -> BundleElement:
    """Normal form: only square-free monomials supported on faces survive.

    `chooser(face, j)` supplies the dual character used to eliminate one
    factor of x_j; the default is the canonical minimal one.  Any valid
    choice yields the same pairings (not necessarily the same terms).
    """
    cp = ring.cp
    if chooser is None:
        chooser = lambda face, j: dual_character(cp, face, j)
    out: BundleElement = {}
    work: list[tuple[Expo, Element]] = [(e, dict(c)) for e, c in el.items()]
    while work:
        expo, coeff = work.pop()
        if not coeff:
            continue
        supp = _support(expo)
        if not is_face(cp, supp):
            continue
        repeated = [i for i in supp if expo[i] > 1]
        if not repeated:
            merged = el_add(out.get(expo, {}), coeff)
            if merged:
                out[expo] = merged
            else:
                out.pop(expo, None)
            continue
        j = repeated[0]
        chi = chooser(supp, j)
        lowered = list(expo)
        lowered[j] -= 1
        lowered = tuple(lowered)
        c_chi = ring.chern.evaluate(chi)
        if c_chi:
            work.append((lowered, ring.base.mul(coeff, c_chi)))
        for i in range(cp.s):
            if i in supp:
                continue
            pairing = sum(a * b for a, b in zip(cp.lam[i], chi))
            if pairing:
                bumped = list(lowered)
                bumped[i] += 1
                work.append((tuple(bumped), el_scale(coeff, -pairing)))
    return out


# ---------------------------------------------------------------------------
# Evaluation against the fundamental class.

def evaluate_top(ring: BundleRing, el: BundleElement,
                 chooser: CharacterChooser | None = None) -> Fraction:
    """Pairing of a top-degree element with the fundamental class.

    After reduction, a square-free face monomial on a maximal cone J with
    base coefficient g contributes sign(J) * <g, [B]>; smaller supports force
    the coefficient above the base's top degree, hence vanish.
    """
    degs = term_degrees(ring, el)
    if degs - {ring.total_degree}:
        raise DegreeMismatchError(
            f"element has degrees {sorted(degs)}, expected {ring.total_degree}")
    total = Fraction(0)
    for expo, coeff in reduce(ring, el, chooser).items():
        supp = _support(expo)
        if len(supp) != ring.cp.n:
            continue
        sign = cone_sign(ring.cp, supp).value
        total += sign * ring.base.integrate(coeff)
    return total


def intersection_number(ring: BundleRing, classes: Sequence[BundleElement],
                        gamma: Element | None = None) -> Fraction:
    """Top evaluation of a product of classes times a base class."""
    acc = lift(ring, gamma) if gamma is not None else one(ring)
    for cl in classes:
        acc = bel_mul(ring, acc, cl)
    return evaluate_top(ring, acc)


# ---------------------------------------------------------------------------
# Graded dimensions by exact linear algebra.

@lru_cache(maxsize=None)
def _face_monomials(cp: CharacteristicPair, xdeg: int) -> tuple[Expo, ...]:
    """x-monomials of the given degree whose support is a face, sorted."""
    if xdeg == 0:
        return ((0,) * cp.s,)
    out = []
    for face in faces(cp):
        t = len(face)
        if t > xdeg:
            continue
        # compositions of xdeg into t positive parts, placed on the face
        for cut in combinations(range(1, xdeg), t - 1):
            parts = [b - a for a, b in zip((0,) + cut, cut + (xdeg,))]
            expo = [0] * cp.s
            for i, p in zip(face, parts):
                expo[i] = p
            out.append(tuple(expo))
    return tuple(sorted(out))


def graded_basis(ring: BundleRing, d: int) -> list[tuple[Expo, int]]:
    """Spanning monomial basis of degree d before the linear relations:
    pairs (x-exponent with face support, base basis index)."""
    out = []
    for xdeg in range(d // 2 + 1):
        base_deg = d - 2 * xdeg
        idxs = ring.base.indices_of_degree(base_deg)
        if not idxs:
            continue
        for expo in _face_monomials(ring.cp, xdeg):
            for idx in idxs:
                out.append((expo, idx))
    return out


def _linear_relations(ring: BundleRing) -> list[BundleElement]:
    """The relations c(e_a) - sum_i lam_i[a] x_i for the standard characters."""
    rels = []
    for a in range(ring.cp.n):
        lam_vec = [0] * ring.cp.n
        lam_vec[a] = 1
        rel = lift(ring, ring.chern.evaluate(lam_vec))
        for i in range(ring.cp.s):
            coeff = ring.cp.lam[i][a]
            if coeff:
                rel = bel_add(rel, bel_scale(x_class(ring, i), -coeff))
        rels.append(rel)
    return rels


def _expand(ring: BundleRing, el: BundleElement,
            index: dict[tuple[Expo, int], int]) -> list[Fraction]:
    """Coordinates of an element in a graded spanning basis (non-face terms
    are zero in the ring and are dropped)."""
    vec = [Fraction(0)] * len(index)
    for expo, coeff in el.items():
        if not is_face(ring.cp, _support(expo)):
            continue
        for idx, c in coeff.items():
            if not c:
                continue
            vec[index[(expo, idx)]] += c
    return vec


def relation_vectors(ring: BundleRing, d: int) -> tuple[list[tuple[Expo, int]], list[list[Fraction]]]:
    """Spanning basis of degree d and the relation span inside it."""
    basis = graded_basis(ring, d)
    index = {pair: i for i, pair in enumerate(basis)}
    vectors = []
    if d >= 2:
        rels = _linear_relations(ring)
        for expo, idx in graded_basis(ring, d - 2):
            mono: BundleElement = {expo: {idx: Fraction(1)}}
            for rel in rels:
                prod = bel_mul(ring, rel, mono)
                vec = _expand(ring, prod, index)
                if any(vec):
                    vectors.append(vec)
    return basis, vectors


def betti(ring: BundleRing) -> list[int]:
    """Graded dimensions of the quotient in degrees 0..(base top + 2n)."""
    dims = []
    for d in range(ring.total_degree + 1):
        basis, vectors = relation_vectors(ring, d)
        r = exact.rank(vectors) if vectors else 0
        dims.append(len(basis) - r)
    return dims


# ---------------------------------------------------------------------------
# Explicit quotient algebra (basis, products, functional).

def _quotient_reps(basis_len: int, vectors: list[list[Fraction]]) -> tuple[list[int], list[list[Fraction]]]:
    """Greedy representative columns extending the relation span to everything."""
    base_rank = exact.rank(vectors) if vectors else 0
    chosen: list[int] = []
    current = list(vectors)
    rank_now = base_rank
    for j in range(basis_len):
        unit = [Fraction(0)] * basis_len
        unit[j] = Fraction(1)
        r = exact.rank(current + [unit])
        if r > rank_now:
            chosen.append(j)
            current.append(unit)
            rank_now = r
    return chosen, current


def quotient_algebra(ring: BundleRing) -> GradedBaseAlgebra:
    """The quotient ring as explicit algebra data with the top functional
    given by evaluation against the fundamental class.

    Representatives are monomials (base element times square-free-or-not
    x-monomial); products are re-expanded exactly through the relations.
    """
    top = ring.total_degree
    per_degree: dict[int, dict] = {}
    names: list[str] = []
    degrees: list[int] = []
    rep_elements: list[BundleElement] = []
    for d in range(top + 1):
        basis, vectors = relation_vectors(ring, d)
        chosen, _ = _quotient_reps(len(basis), vectors)
        rel_rank = exact.rank(vectors) if vectors else 0
        rows = _echelon_rows(vectors, len(basis))
        info = {"basis": basis, "index": {p: i for i, p in enumerate(basis)},
                "rows": rows, "chosen": chosen, "offset": len(names),
                "rank": rel_rank}
        per_degree[d] = info
        for j in chosen:
            expo, idx = basis[j]
            names.append(_pair_name(ring, expo, idx))
            degrees.append(d)
            rep_elements.append({expo: {idx: Fraction(1)}})

    def coords(el: BundleElement, d: int) -> list[Fraction]:
        info = per_degree[d]
        vec = _expand(ring, el, info["index"])
        if not info["basis"]:
            return []
        cols = [list(row) for row in info["rows"]]
        for j in info["chosen"]:
            unit = [Fraction(0)] * len(info["basis"])
            unit[j] = Fraction(1)
            cols.append(unit)
        if not cols:
            if any(vec):
                raise MalformedInputError("nonzero element in empty quotient degree")
            return []
        a = [[cols[c][r] for c in range(len(cols))] for r in range(len(vec))]
        sol = exact.solve_exact(a, vec)
        return sol[len(info["rows"]):]

    high_degree_rows: dict[int, tuple[dict, list[list[Fraction]], int]] = {}

    def assert_zero_above_top(prod: BundleElement, d: int) -> None:
        # Degrees above the formal dimension must die in the quotient; verify
        # membership in the relation span rather than assuming it.
        if d not in high_degree_rows:
            basis, vectors = relation_vectors(ring, d)
            index = {p: i for i, p in enumerate(basis)}
            high_degree_rows[d] = (index, vectors, exact.rank(vectors) if vectors else 0)
        index, vectors, r = high_degree_rows[d]
        vec = _expand(ring, prod, index)
        if any(vec) and exact.rank(vectors + [vec]) != r:
            raise MalformedInputError("quotient does not vanish above top degree")

    products: dict[tuple[int, int], Element] = {}
    for p, u in enumerate(rep_elements):
        for q, v in enumerate(rep_elements):
            d = degrees[p] + degrees[q]
            prod = bel_mul(ring, u, v)
            el: Element = {}
            if d <= top:
                info = per_degree[d]
                for local, c in enumerate(coords(prod, d)):
                    if c:
                        el[info["offset"] + local] = c
            elif prod:
                assert_zero_above_top(prod, d)
            if el:
                products[(p, q)] = el
    fundamental = [evaluate_top(ring, rep) if degrees[p] == top else Fraction(0)
                   for p, rep in enumerate(rep_elements)]
    return GradedBaseAlgebra(names, degrees, products, fundamental)


def _echelon_rows(vectors: list[list[Fraction]], width: int) -> list[list[Fraction]]:
    """Independent rows spanning the same space as the given vectors."""
    if not vectors:
        return []
    from .kernels import echelon_int
    r, ech, _, _ = echelon_int(exact._int_rows(vectors, width), width)
    return [[Fraction(v) for v in row] for row in ech[:r]]


def _pair_name(ring: BundleRing, expo: Expo, idx: int) -> str:
    xs = "*".join(f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
                  for i, e in enumerate(expo) if e)
    base = ring.base.names[idx]
    if not xs:
        return base
    if base == "1":
        return xs
    return f"{base}*{xs}"
