"""Synthetic global layer: finite place sets with unramified local data.

A "global field" here is nothing but a finite list of places, each carrying
the residue degree f_v of the degree-d cyclic extension above it; the local
picture at v is the cyclic algebra with e_v = d/f_v factors.  A discrete
datum u(Lambda, q) stores its cuspidal local parameters at every place and
derives the Speh local components by the staircase construction.  The global
lifting map, rigidity, the Rankin-Selberg local factors and the separation
argument are then all placewise-checkable statements.

The Galois generator acts at a place by rotating the e_v local blocks; the
twist character acts by the place's root of unity zeta_v of order f_v.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .arith import Coordinate, primitive_root
from .errors import (
    BadOrbit,
    HypothesisViolated,
    LocalMismatch,
    PlaceSetMismatch,
    ShapeError,
)
from .satake import (
    CyclicAlgebra,
    SatakeParam,
    SphericalRepE,
    check_ia_bc_compat,
    delta_map,
)


@dataclass(frozen=True)
class Place:
    """A place of the base field: residue degree f of the extension above it."""

    label: str
    d: int
    f: int

    def __post_init__(self):
        if self.f < 1 or self.d % self.f:
            raise BadOrbit(f"residue degree {self.f} does not divide d={self.d}")

    @property
    def e(self) -> int:
        """Number of places above: blocks of the local algebra."""
        return self.d // self.f

    @property
    def zeta(self) -> Coordinate:
        return primitive_root(self.f)

    @property
    def algebra(self) -> CyclicAlgebra:
        return CyclicAlgebra(self.d, self.e, self.f)

    def to_json(self):
        return {"label": self.label, "f": self.f}


def _staircase(c: Coordinate, q: int, qscale: int):
    half = Fraction(q - 1, 2)
    return [c * Coordinate.of(0, qscale * (j - half)) for j in range(q)]


def speh_local_e(z: SphericalRepE, q: int, qscale: int) -> SphericalRepE:
    """Blockwise staircase: local component of u(Lambda, q) from that of Lambda."""
    blocks = tuple(
        SatakeParam(tuple(x for c in b.coords for x in _staircase(c, q, qscale)))
        for b in z.blocks
    )
    return SphericalRepE(z.algebra, blocks)


def speh_local_f(y: SatakeParam, q: int) -> SatakeParam:
    return SatakeParam(tuple(x for c in y.coords for x in _staircase(c, q, 1)))


@dataclass(frozen=True)
class GlobalDiscrete:
    """Discrete datum u(Lambda, q) (side E) or u(rho, q) (side F).

    ``orbit`` is the Galois-stabilizer cardinality r(Lambda) on the E side
    and the twist-orbit cardinality x(rho) on the F side.  ``cusp_locals``
    maps place labels to the cuspidal local parameter; :meth:`local` builds
    the Speh component.  ``translate`` indexes a Galois translate (E) or a
    twist translate (F).
    """

    label: str
    side: str
    d: int
    orbit: int
    q: int
    places: Tuple[Place, ...]
    cusp_locals: Dict[str, object]
    translate: int = 0

    def __post_init__(self):
        if self.side not in ("E", "F"):
            raise ValueError("side must be 'E' or 'F'")
        if self.orbit < 1 or self.d % self.orbit:
            raise BadOrbit(f"orbit {self.orbit} does not divide d={self.d}")
        if self.q < 1:
            raise ValueError("q must be >= 1")
        for v in self.places:
            if v.label not in self.cusp_locals:
                raise PlaceSetMismatch(f"no local datum at place {v.label!r}")
            self._validate_local(v)

    def _validate_local(self, v: Place):
        z = self.cusp_locals[v.label]
        if self.side == "E":
            if not isinstance(z, SphericalRepE) or z.algebra != v.algebra:
                raise LocalMismatch(v.label, "local datum has the wrong algebra")
            # the stabilizer of cardinality r is generated by sigma^g
            if z.rotate(self.g) != z:
                raise LocalMismatch(
                    v.label, f"local datum not stable under sigma^{self.g}"
                )
        else:
            if not isinstance(z, SatakeParam):
                raise LocalMismatch(v.label, "expected a parameter over F")
            if z.twist(v.zeta**self.orbit) != z:
                raise LocalMismatch(
                    v.label, f"local datum not stable under the order-x twist"
                )

    @property
    def g(self) -> int:
        return self.d // self.orbit

    @property
    def cusp_rank(self) -> int:
        v = self.places[0]
        z = self.cusp_locals[v.label]
        return z.block_rank if self.side == "E" else z.rank

    @property
    def rank(self) -> int:
        return self.cusp_rank * self.q

    def translated(self, j: int) -> "GlobalDiscrete":
        return GlobalDiscrete(
            self.label,
            self.side,
            self.d,
            self.orbit,
            self.q,
            self.places,
            self.cusp_locals,
            self.translate + j,
        )

    def cusp_local(self, v: Place):
        """Cuspidal local parameter, with the translate applied."""
        z = self.cusp_locals[v.label]
        if self.side == "E":
            return z.rotate(self.translate % v.e)
        return z.twist(v.zeta**self.translate)

    def local(self, v: Place):
        """Local component of the Speh datum at v."""
        z = self.cusp_local(v)
        if self.side == "E":
            return speh_local_e(z, self.q, v.f)
        return speh_local_f(z, self.q)

    def sort_key(self):
        return (self.label, self.translate, self.q, self.orbit)

    def __eq__(self, other):
        if not isinstance(other, GlobalDiscrete):
            return NotImplemented
        if (self.label, self.side, self.d, self.orbit, self.q) != (
            other.label,
            other.side,
            other.d,
            other.orbit,
            other.q,
        ):
            return False
        if self.places != other.places:
            return False
        return all(self.cusp_local(v) == other.cusp_local(v) for v in self.places)

    def __hash__(self):
        raise TypeError("GlobalDiscrete is not hashable")


@dataclass(frozen=True)
class InducedGlobal:
    """Parabolically induced product of discrete data, in canonical order."""

    factors: Tuple[GlobalDiscrete, ...]

    def __post_init__(self):
        if not self.factors:
            raise ShapeError("empty induced product")
        sides = {f.side for f in self.factors}
        if len(sides) > 1:
            raise ShapeError("factors must live on one side")
        if len({f.places for f in self.factors}) > 1:
            raise PlaceSetMismatch("factors must share the place set")
        object.__setattr__(
            self, "factors", tuple(sorted(self.factors, key=lambda f: f.sort_key()))
        )

    @property
    def side(self) -> str:
        return self.factors[0].side

    @property
    def places(self) -> Tuple[Place, ...]:
        return self.factors[0].places

    def local(self, v: Place):
        parts = [f.local(v) for f in self.factors]
        if self.side == "F":
            out = parts[0]
            for p in parts[1:]:
                out = out.concat(p)
            return out
        blocks = tuple(
            SatakeParam(tuple(c for p in parts for c in p.blocks[i].coords))
            for i in range(v.e)
        )
        return SphericalRepE(v.algebra, blocks)

    def __eq__(self, other):
        if not isinstance(other, InducedGlobal):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        raise TypeError("InducedGlobal is not hashable")


# ---------------------------------------------------------------------------
# Global lifting


def _twist_split(pi: SatakeParam, zeta: Coordinate, r: int) -> Optional[Tuple[Coordinate, ...]]:
    """Find A with the union of zeta^i A (i < r) equal to pi, or None.

    Backtracking on the largest remaining coordinate: it must land in some
    zeta^i A, so A must contain one of its zeta^(-i) translates.
    """
    if pi.rank % r:
        return None
    size = pi.rank // r
    counter = Counter(pi.coords)

    def rec(acc):
        if len(acc) == size:
            return tuple(acc)
        c = max((x for x in counter if counter[x] > 0), key=lambda x: x.sort_key)
        cands = []
        for i in range(r):
            a = c * zeta ** (-i)
            if a not in cands:
                cands.append(a)
        for a in cands:
            members = [zeta**i * a for i in range(r)]
            need = Counter(members)
            if all(counter[m] >= k for m, k in need.items()):
                counter.subtract(need)
                acc.append(a)
                got = rec(acc)
                if got is not None:
                    return got
                acc.pop()
                counter.update(need)
        return None

    return rec([])


def global_ai_lift(Pi: GlobalDiscrete) -> InducedGlobal:
    """The r-fold twisted product lifting a discrete datum over E.

    Builds the F-side discrete delta placewise by splitting the lifted
    cuspidal multiset into r twist-translates, then verifies placewise that
    the induced local datum equals the lifting map of Pi's local datum.
    """
    if Pi.side != "E":
        raise ShapeError("global lift is defined on E-side data")
    r = Pi.orbit
    cusp_locals: Dict[str, SatakeParam] = {}
    for v in Pi.places:
        lifted = delta_map(Pi.cusp_local(v))
        a = _twist_split(lifted, v.zeta, r)
        if a is None:
            raise LocalMismatch(
                v.label, "lifted local datum does not split into twist translates"
            )
        cusp_locals[v.label] = SatakeParam(a)
    delta = GlobalDiscrete(
        label=f"ai:{Pi.label}",
        side="F",
        d=Pi.d,
        orbit=r,
        q=Pi.q,
        places=Pi.places,
        cusp_locals=cusp_locals,
    )
    out = InducedGlobal(tuple(delta.translated(i) for i in range(r)))
    for v in Pi.places:
        if out.local(v) != delta_map(Pi.local(v)):
            raise LocalMismatch(v.label, "placewise lift coherence failed")
    return out


def rigidity_check(a: InducedGlobal, b: InducedGlobal) -> bool:
    """Local Satake data agree at every stored place (the model's isomorphism)."""
    if a.places != b.places:
        raise PlaceSetMismatch("place sets differ")
    return all(a.local(v) == b.local(v) for v in a.places)


# ---------------------------------------------------------------------------
# Rankin-Selberg local factors


@dataclass(frozen=True)
class LocalRSFactor:
    """Data of det(1 - A q^(-s))^(-1): the multiset of inverse roots of A."""

    inverse_roots: Tuple[Coordinate, ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "inverse_roots",
            tuple(sorted(self.inverse_roots, key=lambda c: c.sort_key)),
        )

    def pole_order_at_1(self) -> int:
        """Multiplicity of the inverse root q (the only source of a pole at s=1)."""
        target = Coordinate.of(0, 1)
        return sum(1 for c in self.inverse_roots if c == target)


def rs_local_factor(p1: SatakeParam, p2: SatakeParam) -> LocalRSFactor:
    """Inverse roots of the pair (p1, contragredient of p2): all quotients a/b."""
    return LocalRSFactor(
        tuple(a * b.inverse() for a in p1.coords for b in p2.coords)
    )


def lemma46_local_identity(
    delta: SatakeParam, l: int, delta_p: SatakeParam, l_p: int, d: int
) -> bool:
    """Local shadow of the separation lemma's Euler-factor identity.

    Requires l copies of delta and l_p copies of delta_p to agree as one
    multiset; then d*l_p copies of the (delta_p, delta) inverse roots must
    equal d*l copies of the (delta, delta) inverse roots.
    """
    left = Counter()
    for c in delta.coords:
        left[c] += l
    right = Counter()
    for c in delta_p.coords:
        right[c] += l_p
    if left != right:
        raise HypothesisViolated("l copies of delta and l' of delta' differ")
    lhs = Counter()
    for c in rs_local_factor(delta_p, delta).inverse_roots:
        lhs[c] += d * l_p
    rhs = Counter()
    for c in rs_local_factor(delta, delta).inverse_roots:
        rhs[c] += d * l
    return lhs == rhs


# ---------------------------------------------------------------------------
# Separation


@dataclass(frozen=True)
class Verdict:
    distinct: bool
    l: Optional[int] = None
    gamma: Optional[int] = None


def separate(Pi: InducedGlobal, Pi_p: InducedGlobal) -> Verdict:
    """Decide whether two isotypic products share their twisted weak lift.

    Both inputs must be of the shape Delta^l (all factors equal).  If the
    lift data agree at every stored place, the factor counts match and some
    Galois power gamma carries Delta to Delta'; otherwise the products are
    distinct.  The Euler-factor identity is cross-checked at every place.
    """
    for p in (Pi, Pi_p):
        if p.side != "E":
            raise ShapeError("separation argument applies to E-side products")
        if any(f != p.factors[0] for f in p.factors[1:]):
            raise ShapeError("input is not of the shape Delta^l")
    if Pi.places != Pi_p.places:
        raise PlaceSetMismatch("place sets differ")
    delta, delta_p = Pi.factors[0], Pi_p.factors[0]
    l, l_p = len(Pi.factors), len(Pi_p.factors)

    lift_agrees = all(
        delta_map(Pi.local(v)) == delta_map(Pi_p.local(v)) for v in Pi.places
    )
    if not lift_agrees or l != l_p:
        return Verdict(distinct=True)
    for j in range(delta.d):
        cand = delta.translated(j)
        if cand.q == delta_p.q and all(
            cand.cusp_local(v) == delta_p.cusp_local(v) for v in Pi.places
        ):
            for v in Pi.places:
                y = delta.local(v).flatten()
                y_p = delta_p.local(v).flatten()
                if not lemma46_local_identity(y, l, y_p, l_p, delta.d):
                    raise LocalMismatch(v.label, "Euler-factor cross-check failed")
            return Verdict(distinct=False, l=l, gamma=j % delta.d)
    return Verdict(distinct=True)


# ---------------------------------------------------------------------------
# Compatibility of the two lifting maps


def check_global_compat(Pi: GlobalDiscrete) -> bool:
    """Base change of the lift matches the Galois-spread product, placewise."""
    if Pi.side != "E":
        raise ShapeError("compatibility check is defined on E-side data")
    if Pi.orbit * Pi.g != Pi.d:
        raise BadOrbit("orbit bookkeeping inconsistent")
    for v in Pi.places:
        ok, report = check_ia_bc_compat(Pi.local(v))
        if not ok:
            raise LocalMismatch(v.label, f"composite identity failed: {report}")
    return True
