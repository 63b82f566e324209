"""Non-simply-connected compact simple groups and their level obstruction l0.

Each family supplies, per relevant prime, a mod-p Hopf algebra presentation
of H*(G), Bockstein rules on low-degree generators, and a description of how
the degree-3 class z3 is pulled back along the commutator map.  Some cases
rest on homotopy-theoretic reductions that are not symbolic computations;
those are stored as pinned records with a short citation string and, where
the rules allow, re-checked by the Bockstein solver.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from typing import Dict, List, Optional, Tuple, Union

from .algebra import (EXTERIOR, SQUARE_LINKED, TRUNCATED, Element, GeneratorSpec,
                      Presentation, TensorElement, default_degree_cap)
from .errors import (ConsistencyFailure, DomainError, IrrelevantPrime, NotHit,
                     UsageError)
from .hopf import CoproductTable, HopfAlgebra
from .torsion import (BocksteinRules, assemble_l0, integral_order,
                      tor_pushforward_order, valuation)

FAMILIES = ("PU", "SUmodZk", "PSp", "SO", "PO_even", "Ss", "PE6", "PE7")


def prime_factors(n: int) -> List[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True, order=True)
class GroupId:
    family: str
    n: int = 0
    k: int = 0

    def __post_init__(self):
        f, n, k = self.family, self.n, self.k
        if f not in FAMILIES:
            raise DomainError(f"unknown family {f!r}")
        floors = {"PU": 2, "SUmodZk": 2, "PSp": 1, "SO": 7, "PO_even": 4, "Ss": 2}
        if f in floors and n < floors[f]:
            raise DomainError(f"{f} needs n >= {floors[f]}, got {n}")
        if f == "SUmodZk" and not (1 < k <= n and n % k == 0):
            raise DomainError(f"SU(n)/Z_k needs 1 < k | n, got n={n}, k={k}")
        if f != "SUmodZk" and k:
            raise DomainError(f"{f} takes no k parameter")
        if f in ("PE6", "PE7") and n:
            raise DomainError(f"{f} takes no parameters")

    def __str__(self):
        f, n = self.family, self.n
        return {"PU": f"PU({n})", "SUmodZk": f"SU({n})/Z_{self.k}", "PSp": f"PSp({n})",
                "SO": f"SO({n})", "PO_even": f"PO({2 * n})", "Ss": f"Ss({4 * n})",
                "PE6": "PE6", "PE7": "PE7"}[f]

    @property
    def spec(self) -> str:
        f, n = self.family, self.n
        return {"PU": f"PU:{n}", "SUmodZk": f"SU:{n}/{self.k}", "PSp": f"PSp:{n}",
                "SO": f"SO:{n}", "PO_even": f"PO:{2 * n}", "Ss": f"Ss:{4 * n}",
                "PE6": "PE6", "PE7": "PE7"}[f]

    @property
    def pi1_order(self) -> int:
        return {"PU": self.n, "SUmodZk": self.k, "PSp": 2, "SO": 2, "PO_even": 4,
                "Ss": 2, "PE6": 3, "PE7": 2}[self.family]

    @property
    def center_order(self) -> int:
        """Order of the center of the universal cover."""
        f, n = self.family, self.n
        if f in ("PU", "SUmodZk"):
            return n
        if f == "SO":
            return 2 if n % 2 else 4
        return {"PSp": 2, "PO_even": 4, "Ss": 4, "PE6": 3, "PE7": 2}[f]

    @property
    def relevant_primes(self) -> List[int]:
        return prime_factors(self.pi1_order)

    def r_max(self, p: int) -> int:
        return valuation(self.center_order, p) + 2


_SPEC_RE = re.compile(r"^(PU|SU|PSp|SO|PO|Ss):(\d+)(?:/(\d+))?$|^(PE6|PE7)$")


def parse_group_spec(text: str) -> GroupId:
    """``PU:n``, ``SU:n/k``, ``PSp:n``, ``SO:n``, ``PO:m``, ``Ss:m``, ``PE6``, ``PE7``."""
    m = _SPEC_RE.match(text.strip())
    if not m:
        raise UsageError(f"cannot parse group spec {text!r}")
    if m.group(4):
        return GroupId(m.group(4))
    fam, a, b = m.group(1), int(m.group(2)), m.group(3)
    if (b is not None) != (fam == "SU"):
        raise UsageError(f"cannot parse group spec {text!r}")
    try:
        if fam == "SU":
            k = int(b)
            if k == a:
                return GroupId("PU", a)
            return GroupId("SUmodZk", a, k)
        if fam == "PO":
            if a % 2 or a < 8:
                raise UsageError(f"PO:m needs m even and >= 8, got {a}")
            return GroupId("PO_even", a // 2)
        if fam == "Ss":
            if a % 4 or a < 8:
                raise UsageError(f"Ss:m needs m divisible by 4 and >= 8, got {a}")
            return GroupId("Ss", a // 4)
        return GroupId(fam, a)
    except DomainError as e:
        raise UsageError(str(e)) from None


# ---------------------------------------------------------------------------
# lift descriptors

@dataclass(frozen=True)
class AlgebraicLift:
    """A degree-3 mod-p class restricting to the reduction of z3."""

    cls: Element
    prime: int

    def __post_init__(self):
        if self.cls.degree != 3:
            raise ValueError("lift must have degree 3")


@dataclass(frozen=True)
class PinnedReduction:
    """Image and order taken from a reduction argument rather than computed."""

    result: Optional[TensorElement]
    order: int
    citation: str

    def __post_init__(self):
        if len(prime_factors(self.order)) > 1:
            raise ValueError("pinned order must be a prime power")


@dataclass(frozen=True)
class TorFormula:
    """SU(n)/Z_k at p: order is the p-part of ord_k(n/k)."""

    n: int
    k: int


Z3LiftDescriptor = Union[AlgebraicLift, PinnedReduction, TorFormula]


@dataclass
class PrimeData:
    hopf: HopfAlgebra
    rules: BocksteinRules
    lift: Z3LiftDescriptor

    @property
    def pres(self) -> Presentation:
        return self.hopf.pres


@dataclass
class CatalogEntry:
    group: GroupId
    primes: List[int]
    per_prime: Dict[int, PrimeData]


CITE_PU2 = ("diagonal SU(2) -> SU(n) reduces to PU(2); the commutator class there is "
            "x1⊗x1^2 + x1^2⊗x1 (x1^2 = y2), essential on RP^3")
CITE_PSP_ODD = "PSp(1) = PU(2); odd n reduces to the PU(2) case through Sp(1) -> Sp(n)"
CITE_SS_ODD = "Ss(4n), n odd: RP^3 -> Ss(4n) reduces to the PU(2) case"
CITE_PO_4K = ("PO(4k), k odd: u3 is absent; the obstruction is read off from the Ss(4k) "
              "quotient, which only has 2-torsion")
CITE_PE7 = "PE7: low-degree skeleton agrees with RP^3, so l0 matches PU(2)"
CITE_TOR = "SU(n)/Z_k: Tor(Z_n,Z_n) -> Tor(Z_k,Z_k) sends a generator to n/k times a generator"


# ---------------------------------------------------------------------------
# presentations per family

class _Builder:
    """Collects generators, keeps only those at or below the degree cap."""

    def __init__(self, p: int, cap: int, name: str):
        self.p, self.cap, self.name = p, cap, name
        self.gens: List[GeneratorSpec] = []

    def add(self, name, degree, relation=EXTERIOR, height=None, square=None):
        if degree <= self.cap:
            self.gens.append(GeneratorSpec(name, degree, relation, height, square))

    def build(self) -> Presentation:
        gens = sorted(self.gens, key=lambda g: g.degree)
        return Presentation(self.p, gens, self.cap, self.name)


def _term(pres: Presentation, coef: int, left, right) -> TensorElement:
    """``coef * left ⊗ right`` with words of (name, exp); absent generators give 0."""
    if coef % pres.prime == 0:
        return TensorElement(pres, 2, {})
    for name, _ in list(left) + list(right):
        if not pres.has(name):
            return TensorElement(pres, 2, {})
    return (pres.normal_form(left) @ pres.normal_form(right)).scale(coef)


def _table(pres: Presentation, formulas) -> CoproductTable:
    """``formulas`` maps a generator name to a list of (coef, left, right)."""
    table = CoproductTable.primitive(pres)
    for name, terms in formulas.items():
        if not pres.has(name):
            continue
        total = TensorElement(pres, 2, {})
        for coef, left, right in terms:
            total = total + _term(pres, coef, left, right)
        table[name] = total
    return table


def _su_quotient(n: int, l: int, p: int, cap: int, label: str):
    """H*(SU(n)/Z_l; Z/p) for p | l."""
    r, s = valuation(n, p), valuation(l, p)
    pr = p ** r
    b = _Builder(p, cap, label)
    if p == 2 and s == 1:
        b.add("x1", 1, SQUARE_LINKED, square="y2")
    else:
        b.add("x1", 1)
    b.add("y2", 2, TRUNCATED, height=pr)
    for i in range(2, n + 1):
        if 2 * i - 1 != 2 * pr - 1:
            b.add(f"x{2 * i - 1}", 2 * i - 1)
    pres = b.build()
    formulas = {}
    for i in range(2, n + 1):
        terms = [(1 if r == s else 0, [("x1", 1)], [("y2", i - 1)])]
        for j in range(2, i):
            terms.append((comb(i - 1, j - 1), [(f"x{2 * j - 1}", 1)], [("y2", i - j)]))
        formulas[f"x{2 * i - 1}"] = terms
    table = _table(pres, formulas)
    rules = BocksteinRules(pres)
    if pres.has("x1"):
        for h in range(1, s):
            rules.set("x1", h, 0)
        rules.set("x1", s, pres.gen("y2"))
    for h in range(1, valuation(n, p) + 3):
        rules.set("y2", h, 0)
    return pres, table, rules


def _psp(n: int, cap: int):
    r = valuation(n, 2)
    top = 2 ** (r + 2)
    b = _Builder(2, cap, f"PSp({n})")
    b.add("v1", 1, TRUNCATED, height=top)
    for i in range(n):
        if 4 * i + 3 != top - 1:
            b.add(f"b{4 * i + 3}", 4 * i + 3)
    pres = b.build()
    # the sum starts at i = 0: this gives b7 = b3⊗v1^4 and keeps b11, b15, ...
    # coassociative (starting at i = 1 breaks coassociativity from degree 15 on)
    formulas = {}
    for k in range(1, n):
        formulas[f"b{4 * k + 3}"] = [(comb(k, i), [(f"b{4 * i + 3}", 1)], [("v1", 4 * k - 4 * i)])
                                     for i in range(0, k)]
    table = _table(pres, formulas)
    rules = BocksteinRules(pres)
    rules.set("v1", 1, pres.gen("v1") ** 2)
    if pres.has("b3"):
        for h in range(1, 4):
            rules.set("b3", h, 0)
    return pres, table, rules


def _so(n: int, cap: int):
    b = _Builder(2, cap, f"SO({n})")
    for i in range(1, n):
        b.add(f"x{i}", i, SQUARE_LINKED)
    pres = b.build()
    table = CoproductTable.primitive(pres)
    rules = BocksteinRules(pres)
    rules.set("x1", 1, pres.gen("x2"))
    rules.set("x2", 1, 0)
    return pres, table, rules


def _po(n: int, cap: int):
    m = 2 * n
    r = valuation(m, 2)
    b = _Builder(2, cap, f"PO({m})")
    b.add("v1", 1, TRUNCATED, height=2 ** r)
    for i in range(1, m):
        if i != 2 ** r - 1:
            b.add(f"u{i}", i, SQUARE_LINKED)
    pres = b.build()
    formulas = {f"u{k}": [(comb(k, i), [(f"u{i}", 1)], [("v1", k - i)]) for i in range(1, k)]
                for k in range(2, m)}
    table = _table(pres, formulas)
    rules = BocksteinRules(pres)
    if n % 2:
        rules.set("v1", 1, 0)
        rules.set("v1", 2, pres.gen("u2"))
        for h in range(1, 5):
            rules.set("u2", h, 0)
    else:
        rules.set("v1", 1, pres.gen("v1") ** 2)
        rules.set("u1", 1, pres.gen("u2"))
        rules.set("u2", 1, 0)
    return pres, table, rules


def _ss(n: int, cap: int):
    m = 4 * n
    r = valuation(m, 2)
    s = (m - 1).bit_length()  # 2^(s-1) < m <= 2^s
    excluded = {2 ** r - 1} | {2 ** i for i in range(m.bit_length() + 1)}
    b = _Builder(2, cap, f"Ss({m})")
    b.add("y1", 1, TRUNCATED, height=2 ** r)
    for i in range(1, m):
        if i not in excluded:
            b.add(f"x{i}", i, SQUARE_LINKED)
    b.add(f"z{2 ** (s - 1)}", 2 ** (s - 1), SQUARE_LINKED)
    pres = b.build()
    formulas = {}
    for j in range(1, m // 2 + 1):
        if 2 * j < m:
            formulas[f"x{2 * j}"] = [(comb(j, k), [("y1", 2 * k)], [(f"x{2 * j - 2 * k}", 1)])
                                     for k in range(1, j)]
        terms = [(1, [(f"x{2 * j - 2}", 1)], [("y1", 1)])] if j > 1 else []
        terms += [(comb(j - 1, k), [("y1", 2 * k)], [(f"x{2 * j - 2 * k - 1}", 1)])
                  for k in range(1, j)]
        formulas[f"x{2 * j - 1}"] = terms
    table = _table(pres, formulas)
    rules = BocksteinRules(pres)
    rules.set("y1", 1, pres.gen("y1") ** 2)
    return pres, table, rules


def _pe6(cap: int):
    b = _Builder(3, cap, "PE6")
    b.add("x1", 1)
    b.add("y2", 2, TRUNCATED, height=9)
    for d in (3, 7, 9, 11, 15):
        b.add(f"x{d}", d)
    b.add("y8", 8, TRUNCATED, height=3)
    pres = b.build()
    formulas = {
        "x3": [(1, [("y2", 1)], [("x1", 1)])],
        "x7": [(1, [("y2", 3)], [("x1", 1)])],
        "y8": [(1, [("y2", 3)], [("y2", 1)])],
        "x9": [(1, [("y2", 1)], [("x7", 1)]), (-1, [("y2", 3)], [("x3", 1)]),
               (1, [("y8", 1)], [("x1", 1)]), (1, [("y2", 4)], [("x1", 1)])],
        "x11": [(1, [("y2", 1)], [("x9", 1)]), (-1, [("y2", 2)], [("x7", 1)]),
                (1, [("y8", 1)], [("x3", 1)]), (-1, [("y2", 4)], [("x3", 1)]),
                (1, [("y8", 1), ("y2", 1)], [("x1", 1)]), (-1, [("y2", 5)], [("x1", 1)])],
        "x15": [(1, [("y2", 3)], [("x9", 1)]), (1, [("y8", 1)], [("x7", 1)]),
                (1, [("y2", 6)], [("x3", 1)]), (1, [("y8", 1), ("y2", 3)], [("x1", 1)])],
    }
    table = _table(pres, formulas)
    rules = BocksteinRules(pres)
    rules.set("x1", 1, pres.gen("y2"))
    rules.set("y2", 1, 0)
    return pres, table, rules


def _pe7(cap: int):
    b = _Builder(2, cap, "PE7")
    for d in (1, 5, 9):
        b.add(f"x{d}", d, TRUNCATED, height=4)
    for d in (6, 15, 17, 23, 27):
        b.add(f"x{d}", d)
    pres = b.build()
    table = _table(pres, {
        "x15": [(1, [("x5", 2)], [("x5", 1)])],
        "x23": [(1, [("x9", 2)], [("x5", 1)]), (1, [("x6", 1)], [("x17", 1)])],
        "x27": [(1, [("x9", 2)], [("x9", 1)]), (1, [("x5", 2)], [("x17", 1)])],
    })
    rules = BocksteinRules(pres)
    rules.set("x1", 1, pres.gen("x1") ** 2)
    return pres, table, rules


def _symmetric_square(pres: Presentation, a: str, e: int) -> TensorElement:
    """``a⊗a^e + a^e⊗a``."""
    return _term(pres, 1, [(a, 1)], [(a, e)]) + _term(pres, 1, [(a, e)], [(a, 1)])


def _prime_data(g: GroupId, p: int, cap: int) -> PrimeData:
    f, n = g.family, g.n
    if f == "PU":
        pres, table, rules = _su_quotient(n, n, p, cap, str(g))
        if p == 2 and n % 4 == 2:
            lift = PinnedReduction(_term(pres, 1, [("x1", 1)], [("y2", 1)])
                                   + _term(pres, 1, [("y2", 1)], [("x1", 1)]), 2, CITE_PU2)
        else:
            lift = AlgebraicLift(pres.gen("x3"), p)
    elif f == "SUmodZk":
        pres, table, rules = _su_quotient(n, g.k, p, cap, str(g))
        lift = TorFormula(n, g.k)
    elif f == "PSp":
        pres, table, rules = _psp(n, cap)
        if n % 2 == 0:
            lift = AlgebraicLift(pres.gen("b3"), p)
        else:
            lift = PinnedReduction(_symmetric_square(pres, "v1", 2), 2, CITE_PSP_ODD)
    elif f == "SO":
        pres, table, rules = _so(n, cap)
        lift = AlgebraicLift(pres.gen("x3"), p)
    elif f == "PO_even":
        pres, table, rules = _po(n, cap)
        if n % 4 == 2:
            lift = PinnedReduction(None, 2, CITE_PO_4K)
        else:
            lift = AlgebraicLift(pres.gen("u3"), p)
    elif f == "Ss":
        pres, table, rules = _ss(n, cap)
        if n % 2 == 0:
            lift = AlgebraicLift(pres.gen("x3"), p)
        else:
            lift = PinnedReduction(_symmetric_square(pres, "y1", 2), 2, CITE_SS_ODD)
    elif f == "PE6":
        pres, table, rules = _pe6(cap)
        lift = AlgebraicLift(pres.gen("x3"), p)
    else:
        pres, table, rules = _pe7(cap)
        lift = PinnedReduction(_symmetric_square(pres, "x1", 2), 2, CITE_PE7)
    return PrimeData(HopfAlgebra(table), rules, lift)


@lru_cache(maxsize=None)
def _entry(g: GroupId, cap: int) -> CatalogEntry:
    primes = g.relevant_primes
    return CatalogEntry(g, primes, {p: _prime_data(g, p, cap) for p in primes})


def catalog_entry(g: GroupId, degree_cap: Optional[int] = None) -> CatalogEntry:
    return _entry(g, default_degree_cap() if degree_cap is None else degree_cap)


def presentation(g: GroupId, p: int, degree_cap: Optional[int] = None) -> PrimeData:
    if p not in g.relevant_primes:
        raise IrrelevantPrime(f"{p} does not divide |pi1({g})| = {g.pi1_order}")
    return catalog_entry(g, degree_cap).per_prime[p]


# ---------------------------------------------------------------------------
# l0

@dataclass(frozen=True)
class PrimeResult:
    prime: int
    order: int
    provenance: str
    witness: Optional[str] = None


@dataclass(frozen=True)
class L0Result:
    group: GroupId
    value: int
    breakdown: Tuple[PrimeResult, ...] = ()

    @property
    def citations(self) -> List[str]:
        out = []
        for b in self.breakdown:
            m = re.match(r"^pinned\((.*)\)$", b.provenance)
            if m and m.group(1) not in out:
                out.append(m.group(1))
        if any(b.provenance == "tor-formula" for b in self.breakdown):
            out.append(CITE_TOR)
        return out


def ord_mod(x: int, k: int) -> int:
    """Order of ``x`` in ``Z_k``, closed form."""
    return k // gcd(k, x % k) if x % k else 1


def su_quotient_l0(n: int, k: int) -> int:
    """ord_k(n/k), cross-checked against the Tor pipeline."""
    closed = ord_mod(n // k, k)
    piped = tor_pushforward_order(n, k)
    if closed != piped:
        raise ConsistencyFailure(f"SU({n})/Z_{k}: closed form {closed} != Tor pipeline {piped}")
    return closed


def _algebraic_order(g: GroupId, p: int, data: PrimeData) -> Tuple[int, Optional[str]]:
    hopf = data.hopf
    t = hopf.phi_star(data.lift.cls)
    one = hopf.pres.one
    if any(a == one or b == one for a, b in t.terms):
        raise ConsistencyFailure(f"{g}: phi* of the lift has a unit leg at p={p}")
    if not t:
        return 1, None
    try:
        res = integral_order(t, data.rules, r_max=g.r_max(p))
    except NotHit as e:
        raise ConsistencyFailure(f"{g}: {e}") from None
    return res.order, str(res.witness)


def _pinned_order(g: GroupId, p: int, data: PrimeData) -> Tuple[int, Optional[str]]:
    lift = data.lift
    if lift.result is not None:
        res = integral_order(lift.result, data.rules, r_max=g.r_max(p))
        if res.order != lift.order:
            raise ConsistencyFailure(f"{g}: pinned order {lift.order} but rules give {res.order}")
        return lift.order, str(res.witness)
    return lift.order, None


def l0(g: GroupId, degree_cap: Optional[int] = None) -> L0Result:
    entry = catalog_entry(g, degree_cap)
    parts = []
    for p in entry.primes:
        data = entry.per_prime[p]
        lift = data.lift
        if isinstance(lift, AlgebraicLift):
            order, wit = _algebraic_order(g, p, data)
            prov = "computed"
        elif isinstance(lift, PinnedReduction):
            order, wit = _pinned_order(g, p, data)
            prov = f"pinned({lift.citation})"
        else:
            total = su_quotient_l0(lift.n, lift.k)
            order, wit = p ** valuation(total, p) if total % p == 0 else 1, None
            r, s = valuation(lift.n, p), valuation(lift.k, p)
            if order != p ** max(0, 2 * s - r):
                raise ConsistencyFailure(f"{g}: p-part mismatch at p={p}")
            prov = "tor-formula"
        parts.append(PrimeResult(p, order, prov, wit))
    value = assemble_l0({b.prime: b.order for b in parts})
    if g.family == "PU":
        # PU(n) is the k = n case of the SU quotient formula
        if su_quotient_l0(g.n, g.n) != value:
            raise ConsistencyFailure(f"{g}: Bockstein and Tor routes disagree")
    return L0Result(g, value, tuple(parts))


def check_level(g: GroupId, level: int, genus: int) -> Tuple[bool, str]:
    """Whether level ``level`` admits a pre-quantization on a genus-``genus`` surface."""
    if level < 1:
        raise DomainError("level must be positive")
    if genus < 1:
        raise DomainError("genus must be at least 1")
    v = l0(g).value
    ok = level % v == 0
    verb = "divides" if ok else "does not divide"
    why = f"l0 = {v} {verb} {level}"
    return ok, f"{why}; the answer is the same for every genus >= 1 (asked for g = {genus})"


def catalog_groups(n_max: int) -> List[GroupId]:
    """Every catalog group with parameters at most ``n_max``, in a fixed order."""
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    out = [GroupId("PU", n) for n in range(2, n_max + 1)]
    out += [GroupId("SUmodZk", n, k) for n in range(2, n_max + 1)
            for k in range(2, n) if n % k == 0]
    out += [GroupId("PSp", n) for n in range(1, n_max + 1)]
    out += [GroupId("SO", n) for n in range(7, n_max + 1)]
    out += [GroupId("PO_even", n) for n in range(4, n_max + 1)]
    out += [GroupId("Ss", n) for n in range(2, n_max + 1)]
    out += [GroupId("PE6"), GroupId("PE7")]
    return out


def table(n_max: int) -> List[L0Result]:
    return [l0(g) for g in catalog_groups(n_max)]
