"""Blowup surfaces built from point-configuration scripts.

A surface carries its Picard lattice, canonical class, the collinearity
pattern extracted from the script, and a derived catalog of negative
curves.  Effectivity and section counts are delegated to the interpolation
oracle; irreducibility of a candidate class uses the standard criterion
that an effective class meeting a known irreducible negative curve
negatively must contain it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import oracle
from .lattice import BlowupLattice, DivisorClass, blowup_lattice, format_class
from .oracle import Realization, SeedPolicy, check_script, collinear_sets

KIND_MINUS_ONE = "minus-one"
KIND_MINUS_TWO = "minus-two"
KIND_OTHER = "other"

DEFAULT_DEGREE_BOUND = 3


class SurfaceError(Exception):
    pass


@dataclass(frozen=True)
class CurveRecord:
    name: str
    cls: DivisorClass
    self_int: int
    k_degree: int
    genus: Fraction
    kind: str
    provenance: str

    def __post_init__(self):
        if self.kind == KIND_MINUS_ONE:
            assert (self.self_int, self.k_degree, self.genus) == (-1, -1, 0)
        if self.kind == KIND_MINUS_TWO:
            assert (self.self_int, self.k_degree, self.genus) == (-2, 0, 0)


@dataclass
class Pencil:
    cls: DivisorClass
    singular_members: list[tuple[tuple[CurveRecord, int], ...]] | None = None


@dataclass(frozen=True)
class ContractionRecord:
    target_kind: str  # "nodal-surface" | "smooth-blowdown" | "identity"
    contracted: tuple[CurveRecord, ...]
    nodes: int
    k2_delta: int
    k2_before: Fraction
    k2_after: Fraction


class BlowupSurface:
    """Blowup of the plane at the marked points of a construction script."""

    def __init__(self, script, blowups, name: str = "S", line_symbol: str = "L",
                 seed_policy: SeedPolicy | None = None):
        point_names, _lines, _inc = check_script(script)
        seen_points: set[str] = set()
        seen_symbols: set[str] = set()
        for point, symbol in blowups:
            if point not in point_names:
                raise SurfaceError(f"blown-up point {point!r} is not defined by the script")
            if point in seen_points:
                raise SurfaceError(f"point {point!r} blown up twice")
            if symbol in seen_symbols or symbol == line_symbol:
                raise SurfaceError(f"duplicate basis symbol {symbol!r}")
            seen_points.add(point)
            seen_symbols.add(symbol)
        self.name = name
        self.script = list(script)
        self.blowups = [(p, s) for p, s in blowups]
        self.point_of_symbol = {s: p for p, s in blowups}
        self.symbol_of_point = {p: s for p, s in blowups}
        self.lattice: BlowupLattice = blowup_lattice(line_symbol, (s for _, s in blowups))
        self.canonical = self.lattice.canonical_class()
        self.collinear_sets = tuple(
            frozenset(self.symbol_of_point[p] for p in group)
            for group in collinear_sets(script, seen_points)
        )
        self.seed_policy = seed_policy or SeedPolicy()
        self._realizations: dict[int, Realization] = {}
        self._h0_cache: dict[tuple, int] = {}
        self._catalog_cache: dict[int, list[CurveRecord]] = {}

    # -- oracle plumbing ---------------------------------------------------

    def realization(self, seed: int) -> Realization:
        if seed not in self._realizations:
            self._realizations[seed] = oracle.realize_configuration(
                self.script, seed, marked_points=self.point_of_symbol.values()
            )
        return self._realizations[seed]

    def h0(self, d: DivisorClass, policy: SeedPolicy | None = None) -> int:
        """Consensus h^0 of an integral class (negative multiplicities are
        relaxed to no condition)."""
        if d.lattice != self.lattice:
            raise SurfaceError("class does not live on this surface")
        if not d.is_integral:
            raise SurfaceError("h^0 requires an integral class")
        policy = policy or self.seed_policy
        key = (d.coeffs, policy.seeds())
        if key not in self._h0_cache:
            degree = int(d.coeffs[0])
            mults = {
                self.point_of_symbol[s]: -int(d.coeff(s))
                for s in self.lattice.exceptional_names
            }
            values = {
                seed: oracle.h0_from_realization(self.realization(seed), degree, mults)
                for seed in policy.seeds()
            }
            self._h0_cache[key] = oracle.h0_consensus(values)
        return self._h0_cache[key]

    # -- catalog -----------------------------------------------------------

    def k_squared(self) -> Fraction:
        return self.canonical.dot(self.canonical)

    def catalog(self, degree_bound: int = DEFAULT_DEGREE_BOUND) -> list[CurveRecord]:
        if degree_bound not in self._catalog_cache:
            self._catalog_cache[degree_bound] = catalog_negative_curves(self, degree_bound)
        return self._catalog_cache[degree_bound]

    def catalog_by_class(self, degree_bound: int = DEFAULT_DEGREE_BOUND) -> dict[tuple, CurveRecord]:
        return {rec.cls.coeffs: rec for rec in self.catalog(degree_bound)}

    def __repr__(self):
        return f"BlowupSurface({self.name!r}, basis={self.lattice.names})"


def build_surface(script, blowups, name: str = "S", line_symbol: str = "L",
                  seed_policy: SeedPolicy | None = None) -> BlowupSurface:
    return BlowupSurface(script, blowups, name=name, line_symbol=line_symbol,
                         seed_policy=seed_policy)


def _candidate_multiplicity_vectors(n_symbols: int, total: int, square_sum: int):
    """Nonnegative integer vectors with given sum and sum of squares."""
    # multiplicities are tiny here (<= 2 for degree <= 3), so a direct
    # search over multisets is plenty
    max_m = 1
    while (max_m + 1) ** 2 <= square_sum:
        max_m += 1
    def rec(prefix, rem_total, rem_sq, start):
        if rem_total == 0 and rem_sq == 0:
            yield prefix + [0] * (n_symbols - len(prefix))
            return
        if len(prefix) == n_symbols:
            return
        for m in range(min(start, rem_total, max_m), 0, -1):
            if m * m > rem_sq:
                continue
            yield from rec(prefix + [m], rem_total - m, rem_sq - m * m, m)
    yield from rec([], total, square_sum, max_m)


def _negative_curve_candidates(surface: BlowupSurface, degree_bound: int):
    """Classes d*L - sum(m_i E_i) with the right numerics for a (-1) or (-2)
    rational curve, in deterministic order (degree, then kind, then coeffs)."""
    n = len(surface.lattice.exceptional_names)
    for degree in range(1, degree_bound + 1):
        # (-2)-candidates first: a reducible (-1)-candidate of the same
        # degree is recognized by meeting one of them negatively
        for self_int in (-2, -1):
            total = 3 * degree - 2 - self_int  # sum(m) = 3d + K.C, K.C = -2 - C^2
            square_sum = degree * degree - self_int
            shapes = set()
            for vec in _candidate_multiplicity_vectors(n, total, square_sum):
                shapes.add(tuple(vec))
            for shape in sorted(shapes, reverse=True):
                for perm in sorted(set(itertools.permutations(shape))):
                    coeffs = (Fraction(degree),) + tuple(Fraction(-m) for m in perm)
                    yield DivisorClass(surface.lattice, coeffs)


def catalog_negative_curves(surface: BlowupSurface, degree_bound: int = DEFAULT_DEGREE_BOUND):
    """All irreducible (-1)- and (-2)-curves of L-degree <= degree_bound,
    plus the exceptional curves themselves.

    A candidate is kept when it has exactly one section and does not meet a
    previously catalogued irreducible curve negatively (which would force a
    shared component).
    """
    if degree_bound < 1:
        raise SurfaceError("degree bound must be >= 1")
    k = surface.canonical
    records: list[CurveRecord] = []
    for sym in surface.lattice.exceptional_names:
        cls = surface.lattice.exceptional(sym)
        records.append(CurveRecord(
            name=sym,
            cls=cls,
            self_int=-1,
            k_degree=-1,
            genus=Fraction(0),
            kind=KIND_MINUS_ONE,
            provenance=f"exceptional curve over {surface.point_of_symbol[sym]}",
        ))
    for cand in _negative_curve_candidates(surface, degree_bound):
        if any(cand.dot(rec.cls) < 0 for rec in records):
            continue
        if surface.h0(cand) != 1:
            continue
        self_int = int(cand.dot(cand))
        kind = KIND_MINUS_ONE if self_int == -1 else KIND_MINUS_TWO
        points = [surface.point_of_symbol[s] for s in surface.lattice.exceptional_names
                  if cand.coeff(s) != 0]
        records.append(CurveRecord(
            name=format_class(cand).replace(" ", ""),
            cls=cand,
            self_int=self_int,
            k_degree=int(k.dot(cand)),
            genus=Fraction(0),
            kind=kind,
            provenance=f"degree-{int(cand.coeffs[0])} curve through {', '.join(points)}",
        ))
    return records


def minus_two_curves(surface: BlowupSurface, degree_bound: int = DEFAULT_DEGREE_BOUND):
    return [r for r in surface.catalog(degree_bound) if r.kind == KIND_MINUS_TWO]


def minus_one_curves(surface: BlowupSurface, degree_bound: int = DEFAULT_DEGREE_BOUND):
    return [r for r in surface.catalog(degree_bound) if r.kind == KIND_MINUS_ONE]


def isolated_minus_one_curves(surface: BlowupSurface, degree_bound: int = DEFAULT_DEGREE_BOUND):
    """The (-1)-curves disjoint from every catalogued (-2)-curve."""
    twos = minus_two_curves(surface, degree_bound)
    return [
        r for r in minus_one_curves(surface, degree_bound)
        if all(r.cls.dot(z.cls) == 0 for z in twos)
    ]


def _pencil_candidates(surface: BlowupSurface, degree_bound: int):
    n = len(surface.lattice.exceptional_names)
    for degree in range(1, degree_bound + 1):
        total = 3 * degree - 2
        square_sum = degree * degree
        shapes = set()
        for vec in _candidate_multiplicity_vectors(n, total, square_sum):
            shapes.add(tuple(vec))
        for shape in sorted(shapes, reverse=True):
            for perm in sorted(set(itertools.permutations(shape))):
                coeffs = (Fraction(degree),) + tuple(Fraction(-m) for m in perm)
                yield DivisorClass(surface.lattice, coeffs)


def find_pencils(surface: BlowupSurface, degree_bound: int = DEFAULT_DEGREE_BOUND) -> list[Pencil]:
    """Classes F with F^2 = 0, K.F = -2, two sections, and F.C >= 0 for
    every catalogued curve (base-point-freeness proxy)."""
    catalog = surface.catalog(degree_bound)
    out = []
    for cand in _pencil_candidates(surface, degree_bound):
        if any(cand.dot(rec.cls) < 0 for rec in catalog):
            continue
        if surface.h0(cand) != 2:
            continue
        out.append(Pencil(cls=cand))
    return out


def singular_members(surface: BlowupSurface, pencil: Pencil,
                     degree_bound: int = DEFAULT_DEGREE_BOUND):
    """All multisets of catalogued curves orthogonal to the pencil class
    that sum to it; each is a complete decomposition of a singular member.

    The positive-degree multiplicities are enumerated (bounded by the
    pencil degree); the exceptional multiplicities are then forced by
    coefficient balance.
    """
    f = pencil.cls
    catalog = surface.catalog(degree_bound)
    orth = [r for r in catalog if f.dot(r.cls) == 0]
    positive = [r for r in orth if r.cls.coeffs[0] > 0]
    exceptional = {r.cls.coeffs: r for r in orth if r.cls.coeffs[0] == 0}
    degree = int(f.coeffs[0])

    decomps = []
    seen = set()

    def close_with_exceptionals(chosen: list[tuple[CurveRecord, int]]):
        rest = f
        for rec, mult in chosen:
            rest = rest - mult * rec.cls
        parts = dict(chosen)
        for sym in surface.lattice.exceptional_names:
            c = rest.coeff(sym)
            if c == 0:
                continue
            if c < 0 or c.denominator != 1:
                return
            e_cls = surface.lattice.exceptional(sym)
            rec = exceptional.get(e_cls.coeffs)
            if rec is None:
                return
            parts[rec] = int(c)
            rest = rest - int(c) * e_cls
        if not rest.is_zero:
            return
        key = tuple(sorted((r.name, m) for r, m in parts.items()))
        if key not in seen:
            seen.add(key)
            decomps.append(tuple(sorted(parts.items(), key=lambda kv: kv[0].name)))

    def rec_choose(idx: int, remaining_degree: int, chosen):
        if remaining_degree == 0:
            close_with_exceptionals(chosen)
            return
        if idx == len(positive):
            return
        curve = positive[idx]
        d_c = int(curve.cls.coeffs[0])
        max_mult = remaining_degree // d_c
        for mult in range(max_mult, -1, -1):
            rec_choose(idx + 1, remaining_degree - mult * d_c,
                       chosen + ([(curve, mult)] if mult else []))

    rec_choose(0, degree, [])
    decomps.sort(key=lambda parts: tuple((r.name, m) for r, m in parts))
    pencil.singular_members = decomps
    return decomps


def contract(surface: BlowupSurface, curves) -> ContractionRecord:
    """Bookkeeping for contracting pairwise disjoint curves of a uniform kind.

    Contracting (-2)-curves produces a nodal surface (one node each, K^2
    unchanged); contracting (-1)-curves is a smooth blowdown (K^2 rises by
    one each).  The lattice is never rewritten.
    """
    recs = list(curves)
    k2 = surface.k_squared()
    if not recs:
        return ContractionRecord("identity", (), 0, 0, k2, k2)
    kinds = {r.kind for r in recs}
    if len(kinds) != 1 or kinds & {KIND_OTHER}:
        raise SurfaceError("contraction needs a uniform kind of (-1)- or (-2)-curves")
    for a, b in itertools.combinations(recs, 2):
        if a.cls.dot(b.cls) != 0:
            raise SurfaceError(f"curves {a.name} and {b.name} are not disjoint")
    kind = kinds.pop()
    if kind == KIND_MINUS_TWO:
        return ContractionRecord("nodal-surface", tuple(recs), len(recs), 0, k2, k2)
    return ContractionRecord("smooth-blowdown", tuple(recs), 0, len(recs), k2, k2 + len(recs))
