"""Seeded property suites: randomized oracles for every library invariant.

Each criterion function draws its own deterministic generator from a seed,
runs the stated number of cases and returns a :class:`PropertyResult`; the
CLI `verify` verb and the acceptance tests both call these directly, so the
pass/fail logic lives in exactly one place.

All comparisons are exact (Coordinate / QCyclo equality); there are no
tolerances anywhere.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List

from .arith import ONE, Coordinate, QCyclo, primitive_root
from .satake import (
    CyclicAlgebra,
    SatakeParam,
    SphericalRepE,
    ai_fiber,
    bc_fiber,
    bc_map,
    check_ia_bc_compat,
    delta_map,
)
from .hecke import SymLaurent, ai_transfer, bc_transfer, constant_term, satake_eval
from .reps import (
    CuspidalAtom,
    Elliptic,
    EssDiscrete,
    Product,
    Speh,
    TwistedPair,
    compositions,
    fiber_unitary,
    is_generic,
    lift_elliptic,
    lift_unitary,
    specialize,
)
from .adelic import (
    GlobalDiscrete,
    InducedGlobal,
    Place,
    check_global_compat,
    global_ai_lift,
    lemma46_local_identity,
    rigidity_check,
    separate,
)


@dataclass
class PropertyResult:
    name: str
    cases: int
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{status} {self.name} [{self.cases} cases]{tail}"


# ---------------------------------------------------------------------------
# Pool builders


def random_coordinate(rng: random.Random, max_order: int = 24, qspan: int = 3) -> Coordinate:
    n = rng.randint(1, max_order)
    a = rng.randrange(n)
    qexp = Fraction(rng.randint(-qspan * 2, qspan * 2), rng.choice((1, 2)))
    return Coordinate.of(Fraction(a, n), qexp)


def random_spherical(
    rng: random.Random, algebra: CyclicAlgebra, m: int, max_order: int = 24
) -> SphericalRepE:
    blocks = tuple(
        SatakeParam(tuple(random_coordinate(rng, max_order) for _ in range(m)))
        for _ in range(algebra.r)
    )
    return SphericalRepE(algebra, blocks)


def random_algebra(rng: random.Random, d: int) -> CyclicAlgebra:
    divisors = [r for r in range(1, d + 1) if d % r == 0]
    r = rng.choice(divisors)
    return CyclicAlgebra(d, r, d // r)


def random_qcyclo(rng: random.Random) -> QCyclo:
    c = QCyclo.rational(Fraction(rng.randint(-5, 5) or 1, rng.choice((1, 2, 3))))
    if rng.random() < 0.3:
        n = rng.choice((2, 3, 4, 6))
        c = c * QCyclo.from_coordinate(Coordinate.of(Fraction(rng.randrange(n), n)))
    return c


def random_symlaurent(rng: random.Random, n: int, maxdeg: int = 6) -> SymLaurent:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(0, maxdeg)
        parts = []
        while deg > 0 and len(parts) < n:
            p = rng.randint(1, deg)
            parts.append(p)
            deg -= p
        lam = tuple(sorted(parts, reverse=True)) + (0,) * (n - len(parts))
        terms[lam] = random_qcyclo(rng)
    shift = rng.randint(0, 2)
    return SymLaurent(n, shift, terms)


def random_unramified_atom(rng: random.Random, d: int, uid: str) -> CuspidalAtom:
    return CuspidalAtom(uid, "E", 1, d, d, random_coordinate(rng, max_order=12))


def random_unitary_product(rng: random.Random, d: int, max_rank: int = 6) -> Product:
    """Unramified unitary product over E of total rank <= max_rank."""
    factors = []
    rank = 0
    i = 0
    while rank < max_rank and (not factors or rng.random() < 0.7):
        atom = random_unramified_atom(rng, d, f"x{rng.randrange(10**6)}.{i}")
        i += 1
        budget = max_rank - rank
        if budget >= 2 and rng.random() < 0.3:
            q = rng.randint(1, budget // 2)
            twist = Fraction(rng.randint(-2, 2), 2)
            alpha = Fraction(1, rng.choice((3, 4, 5)))
            f = TwistedPair(Speh(EssDiscrete(atom, 1, twist), q), alpha)
        else:
            q = rng.randint(1, budget)
            twist = Fraction(rng.randint(-2, 2), 2)
            f = Speh(EssDiscrete(atom, 1, twist), q)
        factors.append(f)
        rank += f.rank
    return Product(tuple(factors))


def random_symbolic_product(rng: random.Random, d: int) -> Product:
    """Symbolic (payload-free) unitary product mixing all factor kinds."""
    factors = []
    for i in range(rng.randint(1, 3)):
        divisors = [r for r in range(1, d + 1) if d % r == 0]
        r = rng.choice(divisors)
        atom = CuspidalAtom(f"s{rng.randrange(10**6)}.{i}", "E", rng.randint(1, 2), d, r)
        kind = rng.random()
        k = rng.randint(1, 3)
        if kind < 0.4:
            factors.append(Speh(EssDiscrete(atom, k, Fraction(rng.randint(-1, 1))), rng.randint(1, 3)))
        elif kind < 0.6:
            factors.append(
                TwistedPair(Speh(EssDiscrete(atom, k), rng.randint(1, 2)), Fraction(1, 3))
            )
        else:
            levi = rng.choice(list(compositions(k)))
            factors.append(Elliptic(atom, k, levi, rng.randrange(max(atom.g, 1))))
    return Product(tuple(factors))


def random_places(rng: random.Random, d: int, count: int = None) -> tuple:
    count = count or rng.randint(1, 3)
    out = []
    divisors = [f for f in range(1, d + 1) if d % f == 0]
    for i in range(count):
        out.append(Place(f"v{i}", d, rng.choice(divisors)))
    return tuple(out)


def random_global_discrete(
    rng: random.Random, d: int, r: int, places, m0: int = None, q: int = None, label=None
) -> GlobalDiscrete:
    """E-side discrete datum with sigma^g-stable local data at every place."""
    g = d // r
    m0 = m0 or rng.randint(1, 2)
    q = q or rng.randint(1, 2)
    locals_ = {}
    for v in places:
        p = gcd(v.e, g)
        base = [
            SatakeParam(tuple(random_coordinate(rng, 12) for _ in range(m0)))
            for _ in range(p)
        ]
        blocks = tuple(base[i % p] for i in range(v.e))
        locals_[v.label] = SphericalRepE(v.algebra, blocks)
    return GlobalDiscrete(
        label or f"L{rng.randrange(10**6)}", "E", d, r, q, places, locals_
    )


# ---------------------------------------------------------------------------
# Criterion 1: the lifting map does not depend on the choice of roots


def crit1_delta_well_defined(seed: int = 0, cases: int = 500) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3, 4, 6))
        alg = random_algebra(rng, d)
        m = rng.randint(1, 3)
        y = random_spherical(rng, alg, m)
        ref = delta_map(y)
        s = alg.s
        base = [c.root(s) for c in y.flatten().coords]
        mu = primitive_root(s)
        for choice in itertools.product(range(s), repeat=len(base)):
            roots = [mu**j * t for j, t in zip(choice, base)]
            spread = [alg.zeta**j * t for j in range(s) for t in roots]
            if SatakeParam(tuple(spread)) != ref:
                return PropertyResult(
                    "delta well-definedness", i + 1, False, f"case {i}"
                )
    return PropertyResult("delta well-definedness", cases, True)


# ---------------------------------------------------------------------------
# Criteria 2/3: transfer homomorphisms against the substitution oracle


def crit2_hecke_oracle(seed: int = 0, cases: int = 100) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3))
        alg = random_algebra(rng, d)
        m = rng.randint(1, 6 // d)
        n = m * d
        f = random_symlaurent(rng, n)
        y = random_spherical(rng, alg, m, max_order=12)
        lhs = satake_eval(f, delta_map(y))
        rhs = satake_eval(ai_transfer(f, alg), y.flatten())
        if lhs != rhs:
            return PropertyResult("induction transfer oracle", i + 1, False, f"case {i}")
    return PropertyResult("induction transfer oracle", cases, True)


def crit3_bc_oracle(seed: int = 0, cases: int = 100) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3))
        alg = random_algebra(rng, d)
        n = rng.randint(1, 3)
        y = SatakeParam(tuple(random_coordinate(rng, 12) for _ in range(n)))
        factors = [random_symlaurent(rng, n, maxdeg=4) for _ in range(alg.r)]
        z = bc_map(y, alg)
        lhs = QCyclo.rational(1)
        for g, b in zip(factors, z.blocks):
            lhs = lhs * satake_eval(g, b)
        rhs = satake_eval(bc_transfer(factors, alg), y)
        if lhs != rhs:
            return PropertyResult("base-change transfer oracle", i + 1, False, f"case {i}")
    return PropertyResult("base-change transfer oracle", cases, True)


# ---------------------------------------------------------------------------
# Criterion 4: central character of the lift


def crit4_central_character(seed: int = 0, cases: int = 500) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3, 4, 6))
        alg = random_algebra(rng, d)
        m = rng.randint(1, 3)
        y = random_spherical(rng, alg, m)
        lhs = delta_map(y).central_character()
        c = m * alg.r * (alg.s * (alg.s - 1) // 2)
        rhs = alg.zeta**c * y.flatten().central_character()
        if lhs != rhs:
            return PropertyResult("central-character identity", i + 1, False, f"case {i}")
    return PropertyResult("central-character identity", cases, True)


# ---------------------------------------------------------------------------
# Criterion 5: fibers against brute-force enumeration


def _brute_ai_fiber(pi: SatakeParam, alg: CyclicAlgebra):
    cands = sorted({c**alg.s for c in pi.coords}, key=lambda c: c.sort_key)
    m = pi.rank // alg.d
    out = set()
    block_choices = list(itertools.combinations_with_replacement(cands, m))
    for blocks in itertools.product(block_choices, repeat=alg.r):
        y = SphericalRepE(alg, tuple(SatakeParam(b) for b in blocks))
        if delta_map(y) == pi:
            out.add(y)
    return out


def _brute_bc_fiber(z: SphericalRepE):
    alg = z.algebra
    block = z.blocks[0]
    cands = sorted(
        {primitive_root(alg.s) ** j * c.root(alg.s) for c in block.coords for j in range(alg.s)},
        key=lambda c: c.sort_key,
    )
    out = set()
    for coords in itertools.combinations_with_replacement(cands, block.rank):
        y = SatakeParam(coords)
        if bc_map(y, alg) == z:
            out.add(y)
    return out


def crit5_fibers(seed: int = 0, cases: int = 200) -> PropertyResult:
    rng = random.Random(seed)
    per = max(1, cases // 2)
    for i in range(per):
        d = rng.choice((2, 3, 4))
        alg = random_algebra(rng, d)
        m = max(1, min(rng.randint(1, 2), 4 // d))
        y = random_spherical(rng, alg, m, max_order=8)
        pi = delta_map(y)
        fib = ai_fiber(pi, alg)
        if y not in fib or fib != _brute_ai_fiber(pi, alg):
            return PropertyResult("fiber enumeration", i + 1, False, f"ai case {i}")
    for i in range(per):
        d = rng.choice((2, 3, 4))
        alg = random_algebra(rng, d)
        n = rng.randint(1, 3)
        y = SatakeParam(tuple(random_coordinate(rng, 8) for _ in range(n)))
        z = bc_map(y, alg)
        fib = bc_fiber(z)
        if y not in fib or fib != _brute_bc_fiber(z):
            return PropertyResult("fiber enumeration", per + i + 1, False, f"bc case {i}")
    return PropertyResult("fiber enumeration", 2 * per, True)


# ---------------------------------------------------------------------------
# Criteria 6/7: specialization consistency


def crit6_trivial_chain() -> PropertyResult:
    n = 0
    for d in (1, 2, 3, 4):
        for m in (1, 2, 3, 4):
            atom = CuspidalAtom(f"triv:{d}", "E", 1, d, d, ONE)
            tau = Product((Speh(EssDiscrete(atom, 1), m),))
            n += 1
            if specialize(lift_unitary(tau)) != delta_map(specialize(tau)):
                return PropertyResult("trivial-character chain", n, False, f"d={d} m={m}")
    return PropertyResult("trivial-character chain", n, True)


def crit7_consistency_square(seed: int = 0, cases: int = 200) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3, 4))
        tau = random_unitary_product(rng, d)
        if specialize(lift_unitary(tau)) != delta_map(specialize(tau)):
            return PropertyResult("specialization square", i + 1, False, f"case {i}")
    return PropertyResult("specialization square", cases, True)


# ---------------------------------------------------------------------------
# Criterion 8: elliptic combinatorics


def crit8_elliptic(kmax: int = 5) -> PropertyResult:
    n = 0
    for d, r in ((2, 1), (2, 2), (4, 2), (6, 3)):
        atom = CuspidalAtom(f"ell:{d}.{r}", "E", 1, d, r)
        for k in range(1, kmax + 1):
            levis = list(compositions(k))
            if len(levis) != 2 ** (k - 1):
                return PropertyResult("elliptic combinatorics", n, False, f"count k={k}")
            images = [lift_elliptic(Elliptic(atom, k, lv)) for lv in levis]
            seen = set()
            for im in images:
                key = tuple((f.k, f.levi, f.translate) for f in im.factors)
                seen.add(key)
            if len(seen) != len(levis):
                return PropertyResult("elliptic combinatorics", n, False, f"injectivity k={k}")
            square = [
                im
                for im in images
                if all(f.is_square_integrable() for f in im.factors)
            ]
            if len(square) != 1:
                return PropertyResult("elliptic combinatorics", n, False, f"sq-int k={k}")
            n += len(levis)
    return PropertyResult("elliptic combinatorics", n, True)


# ---------------------------------------------------------------------------
# Criterion 9: separation lemma shadow


def crit9_lemma46(seed: int = 0, cases: int = 1000) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.randint(1, 4)
        l = rng.randint(1, 4)
        l_p = rng.randint(1, 4)
        g = gcd(l, l_p)
        # l copies of delta and l_p of delta_p must agree as one multiset, so
        # both are repetitions of a common core; ranks stay <= 8
        core_size = rng.randint(1, max(1, 8 * g // max(l, l_p)))
        core = [random_coordinate(rng, 8) for _ in range(core_size)]
        delta = SatakeParam(tuple(core * (l_p // g)))
        delta_p = SatakeParam(tuple(core * (l // g)))
        if not lemma46_local_identity(delta, l, delta_p, l_p, d):
            return PropertyResult("Euler-factor identity", i + 1, False, f"case {i}")
    return PropertyResult("Euler-factor identity", cases, True)


def crit9_separate(seed: int = 0, cases: int = 200) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3, 4))
        divisors = [r for r in range(1, d + 1) if d % r == 0]
        r = rng.choice(divisors)
        places = random_places(rng, d)
        delta = random_global_discrete(rng, d, r, places)
        l = rng.randint(1, 3)
        Pi = InducedGlobal((delta,) * l)
        j = rng.randrange(d)
        twisted = InducedGlobal((delta.translated(j),) * l)
        v = separate(Pi, twisted)
        if v.distinct or v.l != l:
            return PropertyResult("separation verdicts", i + 1, False, f"twist case {i}")
        if delta.translated(v.gamma) != delta.translated(j):
            return PropertyResult("separation verdicts", i + 1, False, f"gamma case {i}")
        other = random_global_discrete(rng, d, r, places, m0=delta.cusp_rank, q=delta.q)
        v2 = separate(Pi, InducedGlobal((other,) * l))
        if not v2.distinct:
            # astronomically unlikely random collision; treat as failure
            return PropertyResult("separation verdicts", i + 1, False, f"distinct case {i}")
    return PropertyResult("separation verdicts", cases, True)


# ---------------------------------------------------------------------------
# Criterion 10: global compatibility


def crit10_compat(seed: int = 0, cases: int = 200) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3, 4))
        r = rng.choice((1, d))
        places = random_places(rng, d)
        Pi = random_global_discrete(rng, d, r, places)
        try:
            if not check_global_compat(Pi):
                return PropertyResult("global compatibility", i + 1, False, f"case {i}")
        except Exception as exc:
            return PropertyResult("global compatibility", i + 1, False, repr(exc))
        lift = global_ai_lift(Pi)
        for v in places:
            if lift.local(v) != delta_map(Pi.local(v)):
                return PropertyResult("global compatibility", i + 1, False, f"lift at {v.label}")
        if not rigidity_check(lift, lift):
            return PropertyResult("global compatibility", i + 1, False, f"rigidity case {i}")
    return PropertyResult("global compatibility", cases, True)


# ---------------------------------------------------------------------------
# Criterion 11: genericity


def crit11_genericity(seed: int = 0, cases: int = 200) -> PropertyResult:
    rng = random.Random(seed)
    for i in range(cases):
        d = rng.choice((2, 3, 4, 6))
        tau = random_symbolic_product(rng, d)
        if is_generic(tau) != is_generic(lift_unitary(tau)):
            return PropertyResult("genericity equivalence", i + 1, False, f"case {i}")
        pi = lift_unitary(tau)
        for fib in fiber_unitary(pi, tau):
            if lift_unitary(fib) != pi:
                return PropertyResult("genericity equivalence", i + 1, False, f"fiber case {i}")
    return PropertyResult("genericity equivalence", cases, True)


# ---------------------------------------------------------------------------
# Suites


def _suite(fns):
    def run(seed: int = 0, cases: int = None) -> List[PropertyResult]:
        out = []
        for fn, default in fns:
            kwargs = {}
            params = fn.__code__.co_varnames[: fn.__code__.co_argcount]
            if "seed" in params:
                kwargs["seed"] = seed
            if "cases" in params:
                kwargs["cases"] = cases if cases is not None else default
            out.append(fn(**kwargs))
        return out

    return run


SUITES: Dict[str, Callable] = {
    "satake": _suite(
        [(crit1_delta_well_defined, 100), (crit4_central_character, 100), (crit5_fibers, 60)]
    ),
    "hecke": _suite([(crit2_hecke_oracle, 50), (crit3_bc_oracle, 50)]),
    "reps": _suite(
        [
            (crit6_trivial_chain, None),
            (crit7_consistency_square, 60),
            (crit8_elliptic, None),
            (crit11_genericity, 60),
        ]
    ),
    "global": _suite([(crit9_lemma46, 200), (crit9_separate, 60), (crit10_compat, 60)]),
}


def run_suite(name: str, seed: int = 0, cases: int = None) -> List[PropertyResult]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key](seed=seed, cases=cases))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return SUITES[name](seed=seed, cases=cases)
