"""Bockstein spectral sequence bookkeeping and Tor computations for cyclic groups.

Integral orders are detected the usual way: a mod-p class ``t`` that is the
image of the r-th Bockstein of some surviving class (and of no lower one)
comes from an integral class of order ``p^r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .algebra import Element, Monomial, Presentation, TensorElement, _as_tensor
from .errors import DomainError, NotDefined, NotHit


@dataclass(frozen=True)
class BocksteinRule:
    """``beta^(height)(source) = image`` for a single generator ``source``."""

    prime: int
    height: int
    source: Element
    image: Element

    def __post_init__(self):
        if self.height < 1:
            raise ValueError("Bockstein height starts at 1")
        if self.source.pres.prime != self.prime:
            raise ValueError("rule prime does not match the algebra")
        terms = list(self.source.terms.items())
        pres = self.source.pres
        if len(terms) != 1 or terms[0][1] != 1 or sum(terms[0][0]) != 1:
            raise ValueError("rule source must be a single generator")
        src_deg = self.source.degree
        if self.image and self.image.degree != src_deg + 1:
            raise ValueError(f"Bockstein image must have degree {src_deg + 1}")
        if self.image.pres != pres:
            raise ValueError("rule image lives in another algebra")

    @property
    def generator(self) -> str:
        m = next(iter(self.source.terms))
        return self.source.pres.generators[m.index(1)].name


class BocksteinRules:
    """Collection of rules indexed by generator and height."""

    def __init__(self, pres: Presentation, rules: Iterable[BocksteinRule] = ()):
        self.pres = pres
        self._rules: Dict[Tuple[int, int], Element] = {}
        for r in rules:
            self.add(r)

    def add(self, rule: BocksteinRule):
        if rule.source.pres != self.pres:
            raise ValueError("rule belongs to another algebra")
        i = self.pres.index[rule.generator]
        self._rules[(i, rule.height)] = rule.image

    def set(self, name: str, height: int, image: Union[Element, str, int]):
        pres = self.pres
        img = pres.element(image) if not isinstance(image, Element) else image
        self.add(BocksteinRule(pres.prime, height, pres.gen(name), img))

    def lookup(self, i: int, height: int) -> Optional[Element]:
        return self._rules.get((i, height))

    def __iter__(self):
        for (i, h), img in sorted(self._rules.items()):
            yield BocksteinRule(self.pres.prime, h, self.pres.gen(self.pres.generators[i].name), img)

    def max_height(self) -> int:
        return max((h for _, h in self._rules), default=1)

    def survives(self, i: int, r: int) -> bool:
        """Generator ``i`` is a permanent cycle through ``E_r``: rules 1..r-1 all zero."""
        for h in range(1, r):
            img = self.lookup(i, h)
            if img is None or img:
                return False
        return True

    def defined_at(self, i: int, r: int) -> bool:
        return self.lookup(i, r) is not None and self.survives(i, r)


def _mono_bockstein(rules: BocksteinRules, mono: Monomial, r: int) -> Element:
    pres = rules.pres
    word: List[int] = []
    for i, e in enumerate(mono):
        word.extend([i] * e)
    for i in set(word):
        if not rules.defined_at(i, r):
            name = pres.generators[i].name
            raise NotDefined(f"beta^({r}) not defined on {name}")
    out = pres.zero()
    deg_before = 0
    for pos, i in enumerate(word):
        left = pres.unit()
        for j in word[:pos]:
            left = left * pres.gen(pres.generators[j].name)
        right = pres.unit()
        for j in word[pos + 1:]:
            right = right * pres.gen(pres.generators[j].name)
        term = left * rules.lookup(i, r) * right
        out = out + (term if deg_before % 2 == 0 else -term)
        deg_before += pres.degrees[i]
    return out


def bockstein_apply(rules: BocksteinRules, x: Union[Element, TensorElement], r: int = 1):
    """Apply ``beta^(r)`` as a graded derivation, across tensor factors as well.

    Raises :class:`NotDefined` if some generator involved has no rule at
    height ``r`` or a nonzero rule below it.
    """
    pres = rules.pres
    if isinstance(x, Element):
        out = pres.zero()
        for m, c in x.terms.items():
            out = out + _mono_bockstein(rules, m, r).scale(c)
        return out
    out: Dict = {}
    for key, coef in x.terms.items():
        deg_before = 0
        for pos, m in enumerate(key):
            img = _mono_bockstein(rules, m, r)
            sign = -1 if deg_before % 2 and pres.prime != 2 else 1
            for im, ic in img.terms.items():
                nk = key[:pos] + (im,) + key[pos + 1:]
                out[nk] = out.get(nk, 0) + sign * coef * ic
            deg_before += pres.degree(m)
    return TensorElement(pres, x.arity, out)


def solve_mod_p(columns: Sequence[Mapping], target: Mapping, p: int) -> Optional[List[int]]:
    """Solve ``sum c_i columns[i] = target`` over Z/p; free variables are 0."""
    keys = sorted({k for col in columns for k in col} | set(target))
    rows = [[col.get(k, 0) % p for col in columns] + [target.get(k, 0) % p] for k in keys]
    ncol = len(columns)
    pivots = []
    row = 0
    for c in range(ncol):
        piv = next((i for i in range(row, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = pow(rows[row][c], -1, p)
        rows[row] = [v * inv % p for v in rows[row]]
        for i in range(len(rows)):
            if i != row and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[row])]
        pivots.append(c)
        row += 1
    if any(r[-1] for r in rows[row:]):
        return None
    sol = [0] * ncol
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


@dataclass(frozen=True)
class IntegralOrderResult:
    order: int
    witness: Union[Element, TensorElement]
    height: int


def default_search_space(target: TensorElement) -> List[TensorElement]:
    """Degree ``|t| - 1`` basis of the tensor power that ``t`` lives in."""
    pres = target.pres
    d = target.degree - 1
    return [TensorElement(pres, target.arity, {k: 1}) for k in pres.tensor_basis(d, target.arity)]


def integral_order(target: Union[Element, TensorElement], rules: BocksteinRules,
                   search_space: Optional[Sequence] = None,
                   r_max: Optional[int] = None) -> IntegralOrderResult:
    """Order ``p^r`` of the integral class reducing to ``target``.

    Heights are tried upward from 1; at height ``r`` only candidates built
    from generators surviving to ``E_r`` are used.
    """
    pres = rules.pres
    t = _as_tensor(target)
    if not t:
        raise DomainError("target is zero; there is no torsion class to detect")
    space = default_search_space(t) if search_space is None else [_as_tensor(c) for c in search_space]
    r_max = rules.max_height() + 1 if r_max is None else r_max
    for r in range(1, r_max + 1):
        cols, cands = [], []
        for cand in space:
            try:
                img = bockstein_apply(rules, cand, r)
            except NotDefined:
                continue
            cands.append(cand)
            cols.append(img.terms)
        if not cands:
            continue
        sol = solve_mod_p(cols, t.terms, pres.prime)
        if sol is not None:
            w = TensorElement(pres, t.arity, {})
            for c, cand in zip(sol, cands):
                if c:
                    w = w + cand.scale(c)
            if isinstance(target, Element):
                from .algebra import as_element
                w = as_element(w)
            return IntegralOrderResult(pres.prime ** r, w, r)
    raise NotHit(f"{target} is not a Bockstein image at heights 1..{r_max}")


# ---------------------------------------------------------------------------
# Tor of cyclic groups

def tor_cyclic(a: int, b: int) -> int:
    """``|Tor(Z_a, Z_b)|``."""
    if a < 1 or b < 1:
        raise DomainError("cyclic orders must be positive")
    return gcd(a, b)


@dataclass(frozen=True)
class CyclicMap:
    """Homomorphism ``Z_source -> Z_target`` sending 1 to ``multiplier``."""

    source: int
    target: int
    multiplier: int

    def __post_init__(self):
        if self.source < 1 or self.target < 1:
            raise DomainError("cyclic orders must be positive")
        if (self.source * self.multiplier) % self.target:
            raise DomainError(f"1 -> {self.multiplier} is not well defined Z_{self.source} -> Z_{self.target}")

    def __call__(self, x: int) -> int:
        return (x * self.multiplier) % self.target

    def then(self, other: "CyclicMap") -> "CyclicMap":
        """``other ∘ self``."""
        if other.source != self.target:
            raise DomainError("maps do not compose")
        return CyclicMap(self.source, other.target, (self.multiplier * other.multiplier) % other.target)


def additive_order(x: int, n: int) -> int:
    """Order of ``x`` in ``Z_n`` by direct search."""
    x %= n
    k, acc = 1, x
    while acc:
        acc = (acc + x) % n
        k += 1
    return k


def tor_pushforward_order(n: int, k: int) -> int:
    """Order of the image of the generator of ``Tor(Z_n, Z_n)`` in ``Tor(Z_k, Z_k)``.

    Computed by composing ``Tor(f*, 1)`` and ``Tor(1, f*)`` for the
    reduction ``f*: Z_n -> Z_k`` and ``Ext(f*) : Z_n -> Z_k``.
    """
    if n < 1 or k < 1 or n % k:
        raise DomainError(f"need k | n, got n={n}, k={k}")
    t_nn, t_kn, t_kk = tor_cyclic(n, n), tor_cyclic(k, n), tor_cyclic(k, k)
    # Tor(Z_n,Z_n) = Z_n --Tor(f*,1)--> Tor(Z_k,Z_n) = Z_k --Tor(1,f*)--> Tor(Z_k,Z_k) = Z_k
    left = CyclicMap(t_nn, t_kn, 1)
    right = CyclicMap(t_kn, t_kk, n // k)
    return additive_order(left.then(right)(1), t_kk)


def assemble_l0(per_prime: Mapping[int, int]) -> int:
    out = 1
    for p, order in per_prime.items():
        q = order
        while q % p == 0:
            q //= p
        if q != 1:
            raise DomainError(f"order {order} at p={p} is not a power of p")
        out = out * order // gcd(out, order)
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
