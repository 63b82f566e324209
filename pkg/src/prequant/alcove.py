"""Alcove combinatorics for SU(n) and marked-point pre-quantization checks.

Points of the Cartan subalgebra are exact rational n-tuples summing to zero.
The fundamental alcove is

    x_1 >= x_2 >= ... >= x_n,   x_1 - x_n <= 1,

and the center Z_n of SU(n) acts on it by translating with v_1 and
reducing back into the alcove.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from .errors import ConsistencyFailure, DomainError, NotInAlcove, UsageError

Rational = Union[int, Fraction, str]


@dataclass(frozen=True)
class CartanPoint:
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if sum(coords) != 0:
            raise DomainError(f"coordinates must sum to 0, got {sum(coords)}")

    @classmethod
    def of(cls, *coords: Rational) -> "CartanPoint":
        return cls(tuple(Fraction(c) for c in coords))

    @classmethod
    def parse(cls, text: str, n: int = None) -> "CartanPoint":
        try:
            coords = tuple(Fraction(tok) for tok in text.split())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse rationals from {text!r}") from None
        if n is not None and len(coords) != n:
            raise UsageError(f"expected {n} coordinates, got {len(coords)}")
        try:
            return cls(coords)
        except DomainError as e:
            raise UsageError(str(e)) from None

    @property
    def n(self) -> int:
        return len(self.coords)

    def __add__(self, other: "CartanPoint") -> "CartanPoint":
        return CartanPoint(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CartanPoint") -> "CartanPoint":
        return CartanPoint(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, c) -> "CartanPoint":
        return CartanPoint(tuple(c * a for a in self.coords))

    __rmul__ = __mul__

    def dot(self, other: "CartanPoint") -> Fraction:
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def simple_root(n: int, i: int) -> CartanPoint:
    """``e_i - e_{i+1}`` with 1-based ``i``."""
    c = [0] * n
    c[i - 1], c[i] = 1, -1
    return CartanPoint.of(*c)


def vertex(n: int, k: int) -> CartanPoint:
    """``v_k = (n-k)/n (e_1+..+e_k) - k/n (e_{k+1}+..+e_n)``."""
    return CartanPoint(tuple(Fraction(n - k, n) if j < k else Fraction(-k, n) for j in range(n)))


@dataclass(frozen=True)
class AlcoveData:
    n: int
    vertices: Tuple[CartanPoint, ...]
    barycenter: CartanPoint


def alcove_vertices(n: int) -> AlcoveData:
    if n < 2:
        raise DomainError("n must be at least 2")
    vs = tuple(vertex(n, k) for k in range(n))
    bary = CartanPoint(tuple(sum(v.coords[j] for v in vs) / n for j in range(n)))
    return AlcoveData(n, vs, bary)


def barycenter(n: int) -> CartanPoint:
    return alcove_vertices(n).barycenter


def in_alcove(x: CartanPoint) -> bool:
    c = x.coords
    return all(c[i] >= c[i + 1] for i in range(len(c) - 1)) and c[0] - c[-1] <= 1


@dataclass(frozen=True)
class Reduction:
    """``point[i] = x[perm[i]] + shift[i]`` with ``shift`` in the coroot lattice."""

    point: CartanPoint
    perm: Tuple[int, ...]
    shift: Tuple[int, ...]


def alcove_reduce_tracked(x: CartanPoint) -> Reduction:
    n = x.n
    cur = list(x.coords)
    perm = list(range(n))
    shift = [0] * n
    cap = 10 * n * (1 + math.ceil(sum(abs(c) for c in cur)))
    for _ in range(cap):
        order = sorted(range(n), key=lambda i: -cur[i])
        cur = [cur[i] for i in order]
        perm = [perm[i] for i in order]
        shift = [shift[i] for i in order]
        if cur[0] - cur[-1] <= 1:
            return Reduction(CartanPoint(tuple(cur)), tuple(perm), tuple(shift))
        # translate by the coroot e_n - e_1
        cur[0] -= 1
        cur[-1] += 1
        shift[0] -= 1
        shift[-1] += 1
    raise ConsistencyFailure(f"alcove reduction of {x} did not terminate in {cap} steps")


def alcove_reduce(n: int, x: CartanPoint) -> CartanPoint:
    if x.n != n:
        raise DomainError(f"point has {x.n} coordinates, expected {n}")
    return alcove_reduce_tracked(x).point


def center_action(n: int, j: int, x: CartanPoint) -> CartanPoint:
    """Action of ``z^j`` in ``Z(SU(n))`` on an alcove point."""
    if not in_alcove(x):
        raise NotInAlcove(f"{x} is not in the alcove")
    j %= n
    if j == 0:
        return x
    return alcove_reduce(n, x + vertex(n, 1) * j)


def is_coroot_lattice(n: int, x: CartanPoint) -> bool:
    return x.n == n and all(c.denominator == 1 for c in x.coords)


def conjclass_preq_check(n: int, zeta: CartanPoint, k: int) -> bool:
    """Whether the conjugacy class of ``exp(zeta)`` is pre-quantizable at level ``k``."""
    if zeta.n != n:
        raise DomainError(f"point has {zeta.n} coordinates, expected {n}")
    if not in_alcove(zeta):
        raise NotInAlcove(f"{zeta} is not in the alcove")
    if k < 1:
        raise DomainError("level must be positive")
    return all((k * zeta.dot(simple_root(n, i))).denominator == 1 for i in range(1, n))


# ---------------------------------------------------------------------------
# integer matrices

class IntMatrix:
    """Integer matrix stored as a tuple of row tuples.

    Parameters
    ----------
    rows : sequence of sequences of int
    """

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows = tuple(tuple(int(v) for v in r) for r in rows)
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.shape = (len(self.rows), widths.pop() if widths else 0)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[int(i == j) for j in range(n)] for i in range(n)])

    def smith_normal_form(self) -> Tuple[List[int], "IntMatrix", "IntMatrix"]:
        """Diagonal ``d`` and unimodular ``U``, ``V`` with ``U A V = diag(d)``.

        Returns
        -------
        d : list of int
            Nonnegative invariant factors, ``d[i] | d[i+1]``; length min(m, n).
        U, V : IntMatrix
        """
        m, n = self.shape
        a = [list(r) for r in self.rows]
        u = [list(r) for r in IntMatrix.identity(m).rows]
        v = [list(r) for r in IntMatrix.identity(n).rows]

        def swap_rows(i, j):
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

        def swap_cols(i, j):
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

        def add_row(dst, src, c):  # row_dst += c * row_src
            a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

        def add_col(dst, src, c):
            for row in a:
                row[dst] += c * row[src]
            for row in v:
                row[dst] += c * row[src]

        for t in range(min(m, n)):
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            while True:
                done = True
                for i in range(t + 1, m):
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
                for j in range(t + 1, n):
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
                if not done:
                    continue
                # divisibility: fold any offending row into row t
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
        d = [a[i][i] for i in range(min(m, n))]
        return d, IntMatrix(u), IntMatrix(v)

    def rank(self) -> int:
        return sum(1 for x in self.smith_normal_form()[0] if x)

    def kernel_rank(self) -> int:
        return self.shape[1] - self.rank()

    def cokernel(self) -> Tuple[int, List[int]]:
        """``(free rank, torsion orders > 1)`` of ``Z^m / image``."""
        d = self.smith_normal_form()[0]
        torsion = [x for x in d if x > 1]
        return self.shape[0] - sum(1 for x in d if x), torsion


def flag_sigma_matrix(n: int) -> IntMatrix:
    """``sigma - 1`` on degree-2 classes of SU(n)/T, basis t_1..t_{n-1}.

    ``sigma`` sends t_i to t_{i+1}, and t_n = -(t_1 + ... + t_{n-1}).
    """
    if n < 2:
        raise DomainError("n must be at least 2")
    m = n - 1
    cols = []
    for i in range(m):
        img = [0] * m
        if i + 1 < m:
            img[i + 1] += 1
        else:
            img = [-1] * m
        img[i] -= 1
        cols.append(img)
    return IntMatrix([[cols[j][i] for j in range(m)] for i in range(m)])


# ---------------------------------------------------------------------------
# marked points

class Verdict(enum.Enum):
    YES = "Yes"
    NO = "No"
    OPEN = "NecessaryMetSufficiencyOpen"


@dataclass(frozen=True)
class MarkedVerdict:
    verdict: Verdict
    reasons: Tuple[str, ...] = field(default_factory=tuple)


def _barycenter_core(n: int, k: int, m: int) -> Tuple[Verdict, str]:
    if n == 2:
        v = Verdict.YES if k % 2 == 0 else Verdict.NO
        return v, f"n = 2 with {m} barycentric points: pre-quantizable iff k is even"
    if n % 2:
        v = Verdict.YES if k % n == 0 else Verdict.NO
        return v, f"n odd with {m} barycentric points: pre-quantizable iff {n} | k"
    if k % n:
        return Verdict.NO, f"necessary condition {n} | k fails"
    if k % (2 * n) == 0:
        return Verdict.YES, f"sufficient condition {2 * n} | k holds"
    return Verdict.OPEN, f"{n} | k holds but {2 * n} does not divide k; sufficiency is not settled"


def marked_points_check(n: int, k: int, classes: Iterable[CartanPoint]) -> MarkedVerdict:
    """Pre-quantization verdict for PU(n) with marked conjugacy classes at level ``k``."""
    if n < 2 or k < 1:
        raise DomainError("need n >= 2 and k >= 1")
    classes = list(classes)
    if not classes:
        raise DomainError("at least one marked class is required")
    for c in classes:
        if c.n != n:
            raise DomainError(f"class {c} has {c.n} coordinates, expected {n}")
        if not in_alcove(c):
            raise NotInAlcove(f"{c} is not in the alcove")
    zeta0 = barycenter(n)
    core = [c for c in classes if c == zeta0]
    rest = [c for c in classes if c != zeta0]
    verdicts, reasons = [], []
    for c in rest:
        ok = conjclass_preq_check(n, c, k)
        verdicts.append(Verdict.YES if ok else Verdict.NO)
        reasons.append(f"class {c}: k*B(zeta, alpha_i) {'all' if ok else 'not all'} integral")
    if core:
        v, why = _barycenter_core(n, k, len(core))
        verdicts.append(v)
        reasons.append(why)
    if Verdict.NO in verdicts:
        out = Verdict.NO
    elif Verdict.OPEN in verdicts:
        out = Verdict.OPEN
    else:
        out = Verdict.YES
    return MarkedVerdict(out, tuple(reasons))


def read_classes(text: str, n: int) -> List[CartanPoint]:
    """Parse a classes file: one point per line, ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(CartanPoint.parse(line, n))
        except UsageError as e:
            raise UsageError(f"line {lineno}: {e}") from None
    return out
