"""Graded-commutative algebras over Z/p and their tensor powers.

A :class:`Presentation` fixes a prime, an ordered list of generators and a
degree cap.  Monomials are exponent tuples in declaration order; elements
are sparse dicts from monomials (or tuples of monomials, for tensors) to
coefficients in ``range(p)``.

Signs follow the Koszul rule ``ab = (-1)^{|a||b|} ba`` and are skipped
entirely at ``p = 2``.
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import DegreeCapExceeded, UsageError

EXTERIOR = "exterior"
TRUNCATED = "truncated"
SQUARE_LINKED = "square_linked"

DEFAULT_DEGREE_CAP = 8
DEGREE_CAP_ENV = "PREQUANT_DEGREE_CAP"

Monomial = Tuple[int, ...]


def default_degree_cap() -> int:
    """Degree cap from ``PREQUANT_DEGREE_CAP``, falling back to 8."""
    raw = os.environ.get(DEGREE_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_DEGREE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{DEGREE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < DEFAULT_DEGREE_CAP:
        raise UsageError(f"{DEGREE_CAP_ENV} must be >= {DEFAULT_DEGREE_CAP}, got {cap}")
    return cap


@dataclass(frozen=True)
class GeneratorSpec:
    """One algebra generator.

    ``relation`` is one of ``EXTERIOR`` (g^2 = 0), ``TRUNCATED`` (g^height = 0)
    or ``SQUARE_LINKED`` (g^2 equals another generator, or zero).  A square
    target can be named explicitly; otherwise the name with doubled index
    is used when such a generator exists.
    """

    name: str
    degree: int
    relation: str = EXTERIOR
    height: Optional[int] = None
    square: Optional[str] = None

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"generator {self.name}: degree must be positive")
        if self.relation not in (EXTERIOR, TRUNCATED, SQUARE_LINKED):
            raise ValueError(f"generator {self.name}: unknown relation {self.relation!r}")
        if self.relation == TRUNCATED and (self.height is None or self.height < 2):
            raise ValueError(f"generator {self.name}: truncation height must be >= 2")


_NAME_RE = re.compile(r"^([A-Za-z_]+)(\d+)$")


class Presentation:
    """A graded-commutative algebra over Z/p given by generators and relations."""

    def __init__(self, prime: int, generators: Sequence[GeneratorSpec],
                 degree_cap: Optional[int] = None, name: str = ""):
        if prime < 2 or any(prime % q == 0 for q in range(2, int(prime ** 0.5) + 1)):
            raise ValueError(f"{prime} is not prime")
        self.prime = prime
        self.generators: Tuple[GeneratorSpec, ...] = tuple(generators)
        self.degree_cap = default_degree_cap() if degree_cap is None else degree_cap
        self.name = name
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.index: Dict[str, int] = {g.name: i for i, g in enumerate(self.generators)}
        self.degrees: Tuple[int, ...] = tuple(g.degree for g in self.generators)
        for g in self.generators:
            if prime != 2 and g.degree % 2 == 1 and g.relation != EXTERIOR:
                raise ValueError(f"odd generator {g.name} must be exterior at odd p")
            if prime != 2 and g.relation == SQUARE_LINKED:
                raise ValueError("square-linked generators only make sense at p = 2")
        self._square_target = tuple(self._resolve_square(g) for g in self.generators)
        # generators processed in increasing degree so carries settle in one pass
        self._reduce_order = sorted(range(len(self.generators)), key=lambda i: self.degrees[i])
        self._mul_cache: Dict[Tuple[Monomial, Monomial], Optional[Tuple[int, Monomial]]] = {}
        self._basis_cache: Dict[int, List[Monomial]] = {}

    def _resolve_square(self, g: GeneratorSpec) -> Optional[int]:
        if g.relation != SQUARE_LINKED:
            return None
        if g.square is not None:
            target = g.square
        else:
            m = _NAME_RE.match(g.name)
            if not m:
                return None
            target = f"{m.group(1)}{2 * int(m.group(2))}"
        i = self.index.get(target)
        if i is None or self.degrees[i] != 2 * g.degree:
            return None
        return i

    # identity ------------------------------------------------------------
    def _key(self):
        return (self.prime, self.generators, self.degree_cap)

    def __eq__(self, other):
        return isinstance(other, Presentation) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        gens = ", ".join(f"{g.name}" for g in self.generators)
        label = f"{self.name} " if self.name else ""
        return f"<Presentation {label}p={self.prime} [{gens}] D={self.degree_cap}>"

    # monomials -----------------------------------------------------------
    @property
    def one(self) -> Monomial:
        return (0,) * len(self.generators)

    def degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def has(self, name: str) -> bool:
        return name in self.index

    def gen_monomial(self, name: str) -> Monomial:
        if name not in self.index:
            raise KeyError(f"no generator {name!r} in {self!r}")
        e = [0] * len(self.generators)
        e[self.index[name]] = 1
        return tuple(e)

    def _check_cap(self, deg: int):
        if deg > self.degree_cap:
            raise DegreeCapExceeded(f"degree {deg} exceeds cap {self.degree_cap}")

    def _reduce(self, exps: List[int]) -> Optional[Monomial]:
        """Apply the relations in place; None means the product vanished."""
        for i in self._reduce_order:
            e = exps[i]
            if e == 0:
                continue
            g = self.generators[i]
            if g.relation == EXTERIOR:
                if e > 1:
                    return None
            elif g.relation == TRUNCATED:
                if e >= g.height:
                    return None
            else:
                if e > 1:
                    t = self._square_target[i]
                    if t is None:
                        return None
                    exps[t] += e // 2
                    exps[i] = e % 2
        return tuple(exps)

    def mono_mul(self, a: Monomial, b: Monomial) -> Optional[Tuple[int, Monomial]]:
        """Product of two normal-form monomials as ``(sign, monomial)`` or None."""
        key = (a, b)
        if key in self._mul_cache:
            return self._mul_cache[key]
        self._check_cap(self.degree(a) + self.degree(b))
        sign = 1
        if self.prime != 2:
            # move each generator of b left past the later generators of a
            odd_a_after = 0
            parity = 0
            for j in range(len(a) - 1, -1, -1):
                if b[j] % 2 and self.degrees[j] % 2:
                    parity ^= odd_a_after
                if a[j] % 2 and self.degrees[j] % 2:
                    odd_a_after ^= 1
            sign = -1 if parity else 1
        red = self._reduce([x + y for x, y in zip(a, b)])
        out = None if red is None else (sign, red)
        self._mul_cache[key] = out
        return out

    def basis(self, d: int) -> List[Monomial]:
        """Normal-form monomials of degree ``d`` in ascending tuple order."""
        self._check_cap(d)
        if d in self._basis_cache:
            return list(self._basis_cache[d])
        ranges = []
        for g in self.generators:
            if g.relation == TRUNCATED:
                top = g.height - 1
            else:
                top = 1
            ranges.append(range(0, min(top, d // g.degree) + 1))
        out = sorted(e for e in itertools.product(*ranges) if self.degree(e) == d)
        self._basis_cache[d] = out
        return list(out)

    def tensor_basis(self, d: int, arity: int) -> List[Tuple[Monomial, ...]]:
        out = []
        for parts in _compositions(d, arity):
            out.extend(itertools.product(*(self.basis(k) for k in parts)))
        return out

    # element construction -------------------------------------------------
    def element(self, text) -> "Element":
        if isinstance(text, Element):
            return text
        if isinstance(text, int):
            return Element(self, {self.one: text})
        return _parse(self, str(text), tensor=False)

    def tensor(self, text) -> "TensorElement":
        return _parse(self, str(text), tensor=True)

    def gen(self, name: str) -> "Element":
        return Element(self, {self.gen_monomial(name): 1})

    def unit(self) -> "Element":
        return Element(self, {self.one: 1})

    def zero(self) -> "Element":
        return Element(self, {})

    def normal_form(self, word: Iterable[Tuple[str, int]]) -> "Element":
        """Reduce a word of ``(generator, exponent)`` pairs to normal form."""
        word = list(word)
        self._check_cap(sum(self.degrees[self.index[g]] * e for g, e in word))
        coef, mono = 1, self.one
        for g, e in word:
            gm = self.gen_monomial(g)
            for _ in range(e):
                r = self.mono_mul(mono, gm)
                if r is None:
                    return self.zero()
                coef *= r[0]
                mono = r[1]
        return Element(self, {mono: coef})

    # rendering ------------------------------------------------------------
    def mono_str(self, mono: Monomial, ascii: bool = False) -> str:
        parts = []
        for g, e in zip(self.generators, mono):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return ("*" if ascii else "·").join(parts) if parts else "1"


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class _Linear:
    """Sparse Z/p-linear combination of keys."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms=None):
        self.pres = pres
        p = pres.prime
        clean = {}
        for k, c in (terms or {}).items():
            c %= p
            if c:
                clean[k] = c
        self.terms: Dict = clean

    def _new(self, terms):
        raise NotImplementedError

    def _key_degree(self, key) -> int:
        raise NotImplementedError

    def _check(self, other):
        if not isinstance(other, type(self)) or other.pres != self.pres:
            raise TypeError(f"cannot combine {type(self).__name__} with {other!r}")
        if getattr(self, "arity", 1) != getattr(other, "arity", 1):
            raise TypeError("arity mismatch")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        return self._new({k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            if other % self.pres.prime == 0:
                return not self.terms
            return NotImplemented
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.pres == other.pres and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coefficient(self, key) -> int:
        return self.terms.get(key, 0)

    @property
    def degree(self) -> Optional[int]:
        """Common degree of all terms; None for zero, ValueError if mixed."""
        degs = {self._key_degree(k) for k in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element {self}")
        return degs.pop()

    def is_unit_multiple(self, other) -> bool:
        """True when ``self == u * other`` for some unit u of Z/p."""
        if not self or not other:
            return not self and not other
        return any(self == other.scale(u) for u in range(1, self.pres.prime))

    def _coef_str(self, c: int) -> Tuple[str, int]:
        p = self.pres.prime
        c = c - p if c > p // 2 else c
        return ("-" if c < 0 else "+"), abs(c)

    def _render(self, key_str, sort_key) -> str:
        if not self.terms:
            return "0"
        out = []
        for k in sorted(self.terms, key=sort_key):
            sign, mag = self._coef_str(self.terms[k])
            body = key_str(k)
            if mag != 1:
                body = f"{mag}*{body}" if body != "1" else str(mag)
            if not out:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)


def _mono_sort_key(pres: Presentation, m: Monomial):
    return (pres.degree(m), tuple(-e for e in m))


class Element(_Linear):
    """Element of a presented algebra."""

    __slots__ = ()
    arity = 1

    def _new(self, terms):
        return Element(self.pres, terms)

    def _key_degree(self, key):
        return self.pres.degree(key)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        out = self.pres.unit()
        for _ in range(e):
            out = out * self
        return out

    def __matmul__(self, other):
        """Tensor product ``a ⊗ b`` of elements (or tensors)."""
        return tensor_product(self, other)

    def to_str(self, ascii: bool = False) -> str:
        return self._render(lambda m: self.pres.mono_str(m, ascii),
                            lambda m: _mono_sort_key(self.pres, m))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Element({self})"


class TensorElement(_Linear):
    """Element of the arity-fold tensor power of a presented algebra."""

    __slots__ = ("arity",)

    def __init__(self, pres: Presentation, arity: int, terms=None):
        super().__init__(pres, terms)
        self.arity = arity
        for k in self.terms:
            if len(k) != arity:
                raise ValueError(f"term {k} does not have arity {arity}")

    def _new(self, terms):
        return TensorElement(self.pres, self.arity, terms)

    def _key_degree(self, key):
        return sum(self.pres.degree(m) for m in key)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return tensor_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __matmul__(self, other):
        return tensor_product(self, other)

    def to_str(self, ascii: bool = False) -> str:
        sep = " (x) " if ascii else "⊗"
        pres = self.pres
        return self._render(
            lambda k: sep.join(pres.mono_str(m, ascii) for m in k),
            lambda k: tuple(_mono_sort_key(pres, m) for m in k))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"TensorElement({self})"

    def factor_degrees(self):
        return {tuple(self.pres.degree(m) for m in k) for k in self.terms}


def _as_tensor(x) -> TensorElement:
    if isinstance(x, TensorElement):
        return x
    return TensorElement(x.pres, 1, {(m,): c for m, c in x.terms.items()})


def as_element(t: TensorElement) -> Element:
    if t.arity != 1:
        raise ValueError("only arity-1 tensors convert to elements")
    return Element(t.pres, {k[0]: c for k, c in t.terms.items()})


def mul(a: Element, b: Element) -> Element:
    """Graded-commutative product in normal form."""
    if a.pres != b.pres:
        raise TypeError("elements live in different algebras")
    pres = a.pres
    out: Dict[Monomial, int] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            r = pres.mono_mul(ma, mb)
            if r is None:
                continue
            out[r[1]] = out.get(r[1], 0) + r[0] * ca * cb
    return Element(pres, out)


def tensor_product(a, b) -> TensorElement:
    """Concatenate tensor factors: ``(a1⊗..⊗ai) ⊗ (b1⊗..⊗bj)``."""
    a, b = _as_tensor(a), _as_tensor(b)
    if a.pres != b.pres:
        raise TypeError("elements live in different algebras")
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            out[ka + kb] = out.get(ka + kb, 0) + ca * cb
    return TensorElement(a.pres, a.arity + b.arity, out)


def koszul_sign(pres: Presentation, a: Sequence[Monomial], b: Sequence[Monomial]) -> int:
    """Sign of ``(a1⊗..⊗an)(b1⊗..⊗bn)`` relative to factorwise product."""
    if pres.prime == 2:
        return 1
    parity = 0
    acc = 0  # parity of sum |a_j| for j > i, built right to left
    for i in range(len(a) - 1, -1, -1):
        parity ^= (pres.degree(b[i]) & 1) & acc
        acc ^= pres.degree(a[i]) & 1
    return -1 if parity else 1


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    """Product in the tensor power, with sign ``(-1)^{sum_{i<j} |b_i||a_j|}``."""
    a, b = _as_tensor(a), _as_tensor(b)
    if a.pres != b.pres or a.arity != b.arity:
        raise TypeError("tensor_mul needs equal algebras and arities")
    pres = a.pres
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign = koszul_sign(pres, ka, kb)
            key = []
            for ma, mb in zip(ka, kb):
                r = pres.mono_mul(ma, mb)
                if r is None:
                    break
                sign *= r[0]
                key.append(r[1])
            else:
                key = tuple(key)
                out[key] = out.get(key, 0) + sign * ca * cb
    return TensorElement(pres, a.arity, out)


def koszul_swap(t: TensorElement, i: int) -> TensorElement:
    """Swap factors ``i`` and ``i + 1`` (0-based) with the Koszul sign."""
    if not 0 <= i < t.arity - 1:
        raise IndexError(f"cannot swap factors {i}, {i + 1} of an arity-{t.arity} tensor")
    pres = t.pres
    out = {}
    for k, c in t.terms.items():
        u, v = k[i], k[i + 1]
        s = -1 if (pres.prime != 2 and pres.degree(u) % 2 and pres.degree(v) % 2) else 1
        nk = k[:i] + (v, u) + k[i + 2:]
        out[nk] = out.get(nk, 0) + s * c
    return TensorElement(pres, t.arity, out)


def basis(pres: Presentation, d: int) -> List[Element]:
    return [Element(pres, {m: 1}) for m in pres.basis(d)]


def normal_form(pres: Presentation, word) -> Element:
    return pres.normal_form(word)


# --------------------------------------------------------------------------
# a small text syntax: "x1*y2 - 2*x3", "x1⊗y2 - y2⊗x1", "x1 (x) y2^2"

_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_]*\d*)(?:\^(\d+))?$")


def _parse_leg(pres: Presentation, leg: str) -> Element:
    leg = leg.strip()
    word = []
    coef = 1
    for tok in re.split(r"[*·\s]+", leg):
        if not tok:
            continue
        if tok.isdigit():
            coef *= int(tok)
            continue
        m = _FACTOR.match(tok)
        if not m or not pres.has(m.group(1)):
            raise UsageError(f"cannot parse factor {tok!r} in {pres!r}")
        word.append((m.group(1), int(m.group(2) or 1)))
    return pres.normal_form(word).scale(coef)


def _parse(pres: Presentation, text: str, tensor: bool):
    text = text.replace("(x)", "⊗").replace("@", "⊗").replace("−", "-")
    text = text.strip()
    if not text.startswith(("+", "-")):
        text = "+" + text
    pieces = _TERM_SPLIT.split(text)[1:]
    total = None
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        body = body.strip()
        if body == "0":
            continue
        legs = body.split("⊗")
        if not tensor and len(legs) > 1:
            raise UsageError(f"unexpected tensor sign in {text!r}")
        term = _as_tensor(_parse_leg(pres, legs[0]))
        for leg in legs[1:]:
            term = tensor_product(term, _parse_leg(pres, leg))
        if sign == "-":
            term = -term
        total = term if total is None else total + term
    if total is None:
        return TensorElement(pres, 1, {}) if tensor else pres.zero()
    return total if tensor else as_element(total)
