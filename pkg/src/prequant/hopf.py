"""Presented Hopf algebras and the commutator pullback.

The coproduct is stored only on generators, as the reduced part
``mubar(x) = mu(x) - x⊗1 - 1⊗x``, and extended multiplicatively.  All maps
applied factorwise here have degree zero, so no Koszul signs appear except
in :func:`prequant.algebra.koszul_swap` and in products.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Union

from .algebra import (Element, Monomial, Presentation, TensorElement, as_element,
                      koszul_swap, tensor_mul)
from .errors import DegreeCapExceeded, MissingTableEntry

Linear = Union[Element, TensorElement]


class CoproductTable(dict):
    """Map from generator name to its reduced coproduct (an arity-2 tensor)."""

    def __init__(self, pres: Presentation, entries: Mapping[str, TensorElement] = ()):
        super().__init__()
        self.pres = pres
        for name, value in dict(entries).items():
            self[name] = value

    def __setitem__(self, name, value):
        pres = self.pres
        if not pres.has(name):
            raise KeyError(f"no generator {name!r}")
        if not value:
            value = TensorElement(pres, 2, {})
        if value.arity != 2 or value.pres != pres:
            raise ValueError(f"entry for {name} must be an arity-2 tensor over {pres!r}")
        deg = pres.degrees[pres.index[name]]
        for key in value.terms:
            a, b = (pres.degree(m) for m in key)
            if a == 0 or b == 0:
                raise ValueError(f"reduced coproduct of {name} has a term with a unit leg")
            if a + b != deg:
                raise ValueError(f"reduced coproduct of {name} is not homogeneous of degree {deg}")
        super().__setitem__(name, value)

    @classmethod
    def primitive(cls, pres: Presentation) -> "CoproductTable":
        return cls(pres, {g.name: None for g in pres.generators})


class HopfAlgebra:
    """A presentation together with its coproduct table and an antipode cache."""

    def __init__(self, table: CoproductTable):
        self.pres = table.pres
        self.table = table
        self._delta_cache: Dict[Monomial, TensorElement] = {}
        self.antipode_cache: Dict[Monomial, Element] = {}

    def __repr__(self):
        return f"<HopfAlgebra over {self.pres!r}>"

    # coproduct ---------------------------------------------------------------
    def _gen_coproduct(self, i: int) -> TensorElement:
        pres = self.pres
        g = pres.generators[i]
        if g.name not in self.table:
            raise MissingTableEntry(f"no coproduct rule for generator {g.name}")
        m = pres.gen_monomial(g.name)
        one = pres.one
        prim = TensorElement(pres, 2, {(m, one): 1, (one, m): 1})
        return prim + self.table[g.name]

    def mono_coproduct(self, mono: Monomial) -> TensorElement:
        if mono in self._delta_cache:
            return self._delta_cache[mono]
        pres = self.pres
        pres._check_cap(pres.degree(mono))
        out = TensorElement(pres, 2, {(pres.one, pres.one): 1})
        for i, e in enumerate(mono):
            if e:
                d = self._gen_coproduct(i)
                for _ in range(e):
                    out = tensor_mul(out, d)
        self._delta_cache[mono] = out
        return out

    def coproduct(self, x: Element) -> TensorElement:
        out = TensorElement(self.pres, 2, {})
        for m, c in x.terms.items():
            out = out + self.mono_coproduct(m).scale(c)
        return out

    def reduced_coproduct(self, x: Element) -> TensorElement:
        pres = self.pres
        out = dict(self.coproduct(x).terms)
        for m, c in x.terms.items():
            if m == pres.one:
                out[(m, m)] = out.get((m, m), 0) + c  # mubar(1) = -1⊗1
                continue
            out[(m, pres.one)] = out.get((m, pres.one), 0) - c
            out[(pres.one, m)] = out.get((pres.one, m), 0) - c
        return TensorElement(pres, 2, out)

    def is_primitive(self, x: Element) -> bool:
        return not self.reduced_coproduct(x)

    # antipode ----------------------------------------------------------------
    def mono_antipode(self, mono: Monomial) -> Element:
        cache = self.antipode_cache
        if mono in cache:
            return cache[mono]
        pres = self.pres
        if mono == pres.one:
            out = pres.unit()
        else:
            # c(x) = -x - sum x' c(x'')
            out = Element(pres, {mono: -1})
            for (a, b), coef in self.mono_coproduct(mono).terms.items():
                if a == pres.one or b == pres.one:
                    continue
                out = out - Element(pres, {a: coef}) * self.mono_antipode(b)
        cache[mono] = out
        return out

    def antipode(self, x: Element) -> Element:
        out = self.pres.zero()
        for m, c in x.terms.items():
            out = out + self.mono_antipode(m).scale(c)
        return out

    # factorwise machinery --------------------------------------------------------
    def apply_factorwise(self, t: TensorElement,
                         maps: Sequence[Optional[Callable[[Monomial], Linear]]]) -> TensorElement:
        """Apply degree-zero linear maps to each factor and concatenate.

        ``maps[i]`` takes a monomial and returns an Element or TensorElement;
        ``None`` means the identity.
        """
        if len(maps) != t.arity:
            raise ValueError("one map per factor expected")
        pres = self.pres
        out: Dict = {}
        arity = None
        for key, coef in t.terms.items():
            partial = {(): coef}
            for m, f in zip(key, maps):
                if f is None:
                    img = {(m,): 1}
                else:
                    v = f(m)
                    img = ({(k,): c for k, c in v.terms.items()}
                           if isinstance(v, Element) else v.terms)
                nxt = {}
                for pk, pc in partial.items():
                    for ik, ic in img.items():
                        nk = pk + ik
                        nxt[nk] = nxt.get(nk, 0) + pc * ic
                partial = nxt
            for k, c in partial.items():
                arity = len(k)
                out[k] = out.get(k, 0) + c
        if arity is None:
            arity = sum(self._map_arity(f) for f in maps)
        return TensorElement(pres, arity, out)

    def _map_arity(self, f) -> int:
        if f is None:
            return 1
        return getattr(f(self.pres.one), "arity", 1)

    def multiply_pairs(self, t: TensorElement) -> TensorElement:
        """Multiply adjacent factors: ``a⊗b⊗c⊗d -> ab⊗cd``."""
        if t.arity % 2:
            raise ValueError("multiply_pairs needs even arity")
        pres = self.pres
        out = {}
        for key, coef in t.terms.items():
            sign, nk = 1, []
            for a, b in zip(key[0::2], key[1::2]):
                r = pres.mono_mul(a, b)
                if r is None:
                    break
                sign *= r[0]
                nk.append(r[1])
            else:
                nk = tuple(nk)
                out[nk] = out.get(nk, 0) + sign * coef
        return TensorElement(pres, t.arity // 2, out)

    def multiply(self, t: TensorElement) -> Element:
        return as_element(self.multiply_pairs(t))

    # commutator pullback ---------------------------------------------------------------
    def phi_star(self, x: Element) -> TensorElement:
        """Pullback of ``x`` along the commutator map ``(g, h) -> g h g^-1 h^-1``."""
        mu, s = self.mono_coproduct, self.mono_antipode
        t = self.coproduct(x)
        t = self.apply_factorwise(t, [mu, mu])
        t = self.apply_factorwise(t, [None, None, s, s])
        t = koszul_swap(t, 1)
        return self.multiply_pairs(t)

    def counit_left(self, t: TensorElement) -> Element:
        """``(eps ⊗ id)``: keep terms whose first leg is the unit."""
        one = self.pres.one
        return Element(self.pres, {k[1]: c for k, c in t.terms.items() if k[0] == one})

    def counit_right(self, t: TensorElement) -> Element:
        one = self.pres.one
        return Element(self.pres, {k[0]: c for k, c in t.terms.items() if k[1] == one})


@dataclass
class AxiomReport:
    checks: Dict[str, int] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, axiom: str, passed: bool, detail: str = ""):
        self.checks[axiom] = self.checks.get(axiom, 0) + 1
        if not passed:
            self.failures.append(f"{axiom}: {detail}")


def verify_axioms(hopf: HopfAlgebra, max_degree: Optional[int] = None) -> AxiomReport:
    """Run the Hopf axiom suite on every basis element up to ``max_degree``."""
    pres = hopf.pres
    top = pres.degree_cap if max_degree is None else min(max_degree, pres.degree_cap)
    rep = AxiomReport()
    one = pres.one
    mu = hopf.mono_coproduct
    s = hopf.mono_antipode
    for d in range(1, top + 1):
        for m in pres.basis(d):
            x = Element(pres, {m: 1})
            label = pres.mono_str(m)
            dx = mu(m)
            left = hopf.apply_factorwise(dx, [mu, None])
            right = hopf.apply_factorwise(dx, [None, mu])
            rep.record("coassociativity", left == right, label)
            rep.record("counit", hopf.counit_left(dx) == x and hopf.counit_right(dx) == x, label)
            r1 = hopf.multiply(hopf.apply_factorwise(dx, [None, s]))
            r2 = hopf.multiply(hopf.apply_factorwise(dx, [s, None]))
            rep.record("antipode", not r1 and not r2, label)
            rep.record("antipode_involution", hopf.antipode(hopf.mono_antipode(m)) == x, label)
            if hopf.is_primitive(x):
                rep.record("primitive_phi_vanishes", not hopf.phi_star(x), label)
            phi = hopf.phi_star(x)
            wedge = all(a != one and b != one for a, b in phi.terms)
            rep.record("phi_star_wedge", wedge, label)
    gens = [g.name for g in pres.generators]
    for a in gens:
        for b in gens:
            ea, eb = pres.gen(a), pres.gen(b)
            if (ea.degree or 0) + (eb.degree or 0) > top:
                continue
            prod = ea * eb
            lhs = hopf.coproduct(prod)
            rhs = tensor_mul(hopf.coproduct(ea), hopf.coproduct(eb))
            rep.record("algebra_map", lhs == rhs, f"{a}*{b}")
    return rep


__all__ = ["CoproductTable", "HopfAlgebra", "AxiomReport", "verify_axioms",
           "DegreeCapExceeded"]
