"""Satake parameters for GL(n) over F and over cyclic unramified algebras.

An unramified cyclic algebra E over F of degree d splits as r field factors of
degree s = d/r.  Spherical representations of GL_m(E) are r-tuples of rank-m
parameter multisets; the lifting map ``delta_map`` sends such a tuple to a
twist-stable rank-(m d) multiset over F by taking canonical s-th roots and
spreading them along the powers of the twist root zeta.

All maps here are the parameter-level (weak-lift) versions; fibers are
computed constructively and are exponential in the rank, so a hard cap
(rank <= 12) protects against runaway enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Tuple

from .arith import ONE, Coordinate, coord_root, primitive_root
from .errors import BlocksDiffer, BudgetExceeded, NotStable, RankMismatch

MAX_FIBER_RANK = 12


@dataclass(frozen=True)
class CyclicAlgebra:
    """Extension datum: degree d = r*s, r field factors of degree s each.

    ``zeta`` is the twist root kappa(pi_F), of exact multiplicative order s.
    r = 1 is the field case; s = 1 the split algebra (zeta = 1).
    """

    d: int
    r: int
    s: int
    zeta: Coordinate = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.d != self.r * self.s or self.d < 1:
            raise ValueError(f"need d = r*s, got d={self.d}, r={self.r}, s={self.s}")
        if self.zeta is None:
            object.__setattr__(self, "zeta", primitive_root(self.s))
        if self.zeta.torsion_order() != self.s:
            raise ValueError(f"zeta must have exact order s={self.s}")

    @classmethod
    def field(cls, d: int, zeta: Coordinate = None) -> "CyclicAlgebra":
        return cls(d, 1, d, zeta)

    @classmethod
    def split(cls, r: int) -> "CyclicAlgebra":
        return cls(r, r, 1)

    def to_json(self):
        return {"d": self.d, "r": self.r, "s": self.s, "zeta": self.zeta.to_json()["zeta"]}

    @classmethod
    def from_json(cls, doc) -> "CyclicAlgebra":
        zeta = None
        if "zeta" in doc:
            a, n = doc["zeta"]
            zeta = Coordinate(Fraction(a, n), Fraction(0))
        return cls(doc["d"], doc["r"], doc["s"], zeta)


@dataclass(frozen=True)
class SatakeParam:
    """Canonical multiset of Satake eigenvalues: the class of pi_y.

    Equality is multiset equality; the stored tuple is always sorted, so the
    canonical form is unique.
    """

    coords: Tuple[Coordinate, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(sorted(self.coords, key=lambda c: c.sort_key))
        )

    @property
    def rank(self) -> int:
        return len(self.coords)

    def twist(self, zeta: Coordinate) -> "SatakeParam":
        return SatakeParam(tuple(zeta * c for c in self.coords))

    def power(self, k: int) -> "SatakeParam":
        return SatakeParam(tuple(c**k for c in self.coords))

    def contragredient(self) -> "SatakeParam":
        return SatakeParam(tuple(c.inverse() for c in self.coords))

    def concat(self, other: "SatakeParam") -> "SatakeParam":
        return SatakeParam(self.coords + other.coords)

    def central_character(self) -> Coordinate:
        out = ONE
        for c in self.coords:
            out = out * c
        return out

    def to_json(self):
        return {"rank": self.rank, "coords": [c.to_json() for c in self.coords]}

    @classmethod
    def from_json(cls, doc) -> "SatakeParam":
        return cls(tuple(Coordinate.from_json(c) for c in doc["coords"]))

    @classmethod
    def of(cls, coords: Iterable[Coordinate]) -> "SatakeParam":
        return cls(tuple(coords))


@dataclass(frozen=True)
class SphericalRepE:
    """Spherical class over the algebra E: one rank-m parameter per field factor."""

    algebra: CyclicAlgebra
    blocks: Tuple[SatakeParam, ...]

    def __post_init__(self):
        if len(self.blocks) != self.algebra.r:
            raise ValueError(
                f"expected {self.algebra.r} blocks, got {len(self.blocks)}"
            )
        ranks = {b.rank for b in self.blocks}
        if len(ranks) > 1:
            raise ValueError("all blocks must have the same rank")

    @property
    def block_rank(self) -> int:
        return self.blocks[0].rank

    def flatten(self) -> SatakeParam:
        out: tuple[Coordinate, ...] = ()
        for b in self.blocks:
            out = out + b.coords
        return SatakeParam(out)

    def rotate(self, j: int) -> "SphericalRepE":
        """The Galois translate sigma^j: cyclic rotation of the field factors."""
        r = self.algebra.r
        j %= r
        return SphericalRepE(self.algebra, self.blocks[j:] + self.blocks[:j])

    def galois_orbit(self) -> set["SphericalRepE"]:
        return {self.rotate(j) for j in range(self.algebra.r)}

    def to_json(self):
        return {
            "algebra": self.algebra.to_json(),
            "blocks": [[c.to_json() for c in b.coords] for b in self.blocks],
        }

    @classmethod
    def from_json(cls, doc) -> "SphericalRepE":
        alg = CyclicAlgebra.from_json(doc["algebra"])
        blocks = tuple(
            SatakeParam(tuple(Coordinate.from_json(c) for c in b))
            for b in doc["blocks"]
        )
        return cls(alg, blocks)


# ---------------------------------------------------------------------------
# Parameter constructions


def param_of_unramified_character(xi: Coordinate, n: int, qscale: int = 1) -> SatakeParam:
    """Parameter of the character xi o det of GL_n: the staircase
    ``{xi * q^(qscale*(j - (n-1)/2))}``.  ``qscale`` is the residue-degree
    factor (s over a field factor of degree s; 1 over F).  xi = 1 gives the
    trivial representation.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    half = Fraction(n - 1, 2)
    return SatakeParam(
        tuple(xi * Coordinate(Fraction(0), qscale * (j - half)) for j in range(n))
    )


def kappa_twist(y: SatakeParam, zeta: Coordinate) -> SatakeParam:
    return y.twist(zeta)


def x_of(y: SatakeParam, d: int, zeta_d: Coordinate) -> int:
    """Cardinality of the twist orbit: the least k >= 1 with zeta_d^k y = y."""
    if zeta_d.torsion_order() != d:
        raise ValueError(f"zeta must have exact order d={d}")
    for k in range(1, d + 1):
        if y.twist(zeta_d**k) == y:
            return k
    return d  # unreachable: zeta_d^d = 1


# ---------------------------------------------------------------------------
# Automorphic induction at the Satake level


def delta_map(y: SphericalRepE) -> SatakeParam:
    """The lifting map: flatten, take canonical s-th roots t, return
    ``{zeta^j t_i : 0 <= j < s}``.  Independent of root choice and block order.
    """
    alg = y.algebra
    t = [coord_root(c, alg.s) for c in y.flatten().coords]
    out = []
    for j in range(alg.s):
        zj = alg.zeta**j
        out.extend(zj * ti for ti in t)
    return SatakeParam(tuple(out))


def _multiset_remove_orbit(counter, c: Coordinate, zeta: Coordinate, s: int) -> bool:
    """Remove one copy of the zeta-orbit of c; False if some member is missing."""
    members = [zeta**j * c for j in range(s)]
    for m in members:
        if counter.get(m, 0) <= 0:
            return False
    for m in members:
        counter[m] -= 1
    return True


def _multiset_splits(items: tuple, r: int, size: int):
    """All ways to split the sorted multiset into r ordered blocks of `size`."""
    if r == 1:
        yield (items,)
        return
    for head in _multiset_combinations(items, size):
        rest = _multiset_difference(items, head)
        for tail in _multiset_splits(rest, r - 1, size):
            yield (head,) + tail


def _multiset_combinations(items: tuple, k: int):
    """Distinct k-combinations of a sorted tuple (multiset-aware)."""
    if k == 0:
        yield ()
        return
    seen = None
    for i, it in enumerate(items):
        if it == seen:
            continue
        seen = it
        for rest in _multiset_combinations(items[i + 1 :], k - 1):
            yield (it,) + rest


def _multiset_difference(items: tuple, sub: tuple) -> tuple:
    out = list(items)
    for s in sub:
        out.remove(s)
    return tuple(out)


def ai_fiber(pi: SatakeParam, algebra: CyclicAlgebra) -> set[SphericalRepE]:
    """All y over E with ``delta_map(y) == pi``, computed constructively.

    Decompose pi into zeta-orbits, raise orbit representatives to the s-th
    power, then enumerate all distributions of the resulting multiset into r
    blocks.  For r = 1 the map is injective and the fiber is a singleton.
    """
    alg = algebra
    if pi.rank % alg.d:
        raise RankMismatch(f"rank {pi.rank} not divisible by d={alg.d}")
    if pi.rank > MAX_FIBER_RANK:
        raise BudgetExceeded(f"rank {pi.rank} exceeds fiber cap {MAX_FIBER_RANK}")
    if pi.twist(alg.zeta) != pi:
        raise NotStable("parameter is not stable under the zeta twist")

    counter: dict[Coordinate, int] = {}
    for c in pi.coords:
        counter[c] = counter.get(c, 0) + 1
    reps = []
    for c in pi.coords:  # sorted, so representatives are orbit minima
        if counter.get(c, 0) > 0:
            ok = _multiset_remove_orbit(counter, c, alg.zeta, alg.s)
            if not ok:
                raise NotStable("parameter is not stable under the zeta twist")
            reps.append(c**alg.s)
    pool = tuple(sorted(reps, key=lambda c: c.sort_key))
    m = len(pool) // alg.r
    out = set()
    for split in _multiset_splits(pool, alg.r, m):
        out.add(SphericalRepE(alg, tuple(SatakeParam(b) for b in split)))
    return out


# ---------------------------------------------------------------------------
# Base change at the Satake level


def bc_map(y: SatakeParam, algebra: CyclicAlgebra) -> SphericalRepE:
    """sigma-lift of pi_y: every block is the coordinatewise s-th power of y."""
    block = y.power(algebra.s)
    return SphericalRepE(algebra, (block,) * algebra.r)


def bc_fiber(z: SphericalRepE) -> set[SatakeParam]:
    """All y over F with ``bc_map(y) == z``; requires all blocks equal.

    Fiber members differ by coordinatewise multiplication by s-th roots of
    unity, up to permutation.
    """
    alg = z.algebra
    if any(b != z.blocks[0] for b in z.blocks[1:]):
        raise BlocksDiffer("blocks differ: parameter is not a base-change image")
    block = z.blocks[0]
    if block.rank > MAX_FIBER_RANK:
        raise BudgetExceeded(f"rank {block.rank} exceeds fiber cap {MAX_FIBER_RANK}")
    if alg.s**block.rank > 2_000_000:
        raise BudgetExceeded("root-choice enumeration too large")
    roots = [coord_root(c, alg.s) for c in block.coords]
    mu = [primitive_root(alg.s) ** j for j in range(alg.s)]
    out = set()

    def rec(i, acc):
        if i == len(roots):
            out.add(SatakeParam(tuple(acc)))
            return
        for z_j in mu:
            acc.append(z_j * roots[i])
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def check_ia_bc_compat(y: SphericalRepE):
    """Lifting then base-changing reproduces the Galois-spread of y.

    Every block of ``bc_map(delta_map(y))`` must equal s concatenated copies
    of the union of y's blocks (the parameter of the d-fold Galois-twisted
    product of Pi_y).  Returns (True, None) or (False, report).
    """
    alg = y.algebra
    lifted = delta_map(y)
    back = bc_map(lifted, alg)
    flat = y.flatten()
    expected = flat
    for _ in range(alg.s - 1):
        expected = expected.concat(flat)
    for i, b in enumerate(back.blocks):
        if b != expected:
            return False, {"block": i, "got": b, "expected": expected}
    return True, None
