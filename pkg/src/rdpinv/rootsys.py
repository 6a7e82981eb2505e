"""ADE root-system combinatorics on distinguished functionals.

Types are pairs (family, n) where n counts the distinguished functionals
t_1..t_n; the Lie-theoretic rank is n-1 for the A family and n otherwise.
The degenerate type A0 (one functional, identically zero) and the
reducible types D2 and E3 are first-class values, and isomorphic types
such as E4 / A4 are never conflated: every construction here depends on
the declared family.

The module knows three layers:

* the ambient basis e_0..e_n with <e_0,e_0> = 1, <e_i,e_i> = -1, in which
  simple roots and the orthogonal-splitting vectors live;
* the dual-basis coordinates vs0..vsn, in which the distinguished
  functionals are expressed and inverted;
* the functionals t_1..t_n themselves, on which the reflection generators
  act by linear substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .poly import Polynomial, VarTable
from .solvelist import RuleSet

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Spec:
    """A root-system type: family in {A, D, E} plus functional count n."""

    family: str
    n: int

    def __post_init__(self):
        if self.family == "A":
            if self.n < 1:
                raise ValueError("A family needs n >= 1")
        elif self.family == "D":
            if self.n < 2:
                raise ValueError("D family needs n >= 2")
        elif self.family == "E":
            if not 3 <= self.n <= 8:
                raise ValueError("E family needs 3 <= n <= 8")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def lie_rank(self) -> int:
        return self.n - 1 if self.family == "A" else self.n

    @property
    def name(self) -> str:
        return f"{self.family}{self.lie_rank}"

    @staticmethod
    def from_name(name: str) -> "Spec":
        family, rank = name[0].upper(), int(name[1:])
        return Spec(family, rank + 1 if family == "A" else rank)

    def __str__(self) -> str:
        return self.name

    def generators(self) -> tuple[int, ...]:
        if self.family == "A":
            return tuple(range(1, self.n))
        if self.family == "D":
            return tuple(range(1, self.n + 1))
        return (0,) + tuple(range(1, self.n))

    # variable tables -----------------------------------------------------

    def t_table(self) -> VarTable:
        return VarTable([f"t{i}" for i in range(1, self.n + 1)], [1] * self.n)

    def dual_table(self) -> VarTable:
        hi = self.n + 1
        return VarTable([f"vs{i}" for i in range(hi)], [1] * hi)

    def s_table(self) -> VarTable:
        return VarTable([f"s{i}" for i in range(1, self.n + 1)], list(range(1, self.n + 1)))


def t_vars(spec: Spec) -> list[Polynomial]:
    t = spec.t_table()
    return [t.var(f"t{i}") for i in range(1, spec.n + 1)]


# -- ambient basis ------------------------------------------------------------


def inner(u: Vector, v: Vector) -> Fraction:
    """Pairing with signature (+1, -1, ..., -1)."""
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total -= a * b
    return total


def _basis_vector(dim: int, coeffs: dict[int, Fraction]) -> Vector:
    v = [Fraction(0)] * dim
    for i, c in coeffs.items():
        v[i] = Fraction(c)
    return tuple(v)


def root_basis(spec: Spec) -> dict[int, Vector]:
    """Simple roots as vectors in the ambient span of e_0..e_n."""
    dim = spec.n + 1
    basis: dict[int, Vector] = {}
    for i in range(1, spec.n):
        basis[i] = _basis_vector(dim, {i: 1, i + 1: -1})
    if spec.family == "D":
        basis[spec.n] = _basis_vector(dim, {spec.n - 1: 1, spec.n: 1})
    elif spec.family == "E":
        basis[0] = _basis_vector(dim, {0: 1, 1: -1, 2: -1, 3: -1})
    return basis


def combine(dim: int, parts: list[tuple[Fraction, Vector]]) -> Vector:
    out = [Fraction(0)] * dim
    for c, v in parts:
        for i, x in enumerate(v):
            out[i] += c * x
    return tuple(out)


# -- distinguished functionals and the dual basis -----------------------------


def distinguished_functionals(spec: Spec) -> list[Polynomial]:
    """t_1..t_n as linear forms in the dual-basis coordinates vs*."""
    table = spec.dual_table()
    vs = lambda i: table.var(f"vs{i}")
    n = spec.n
    out: list[Polynomial] = []
    if spec.family == "A":
        # vs0 and vsn are identically zero here
        for i in range(1, n + 1):
            t = table.zero()
            if i > 1:
                t = t - vs(i - 1)
            if i < n:
                t = t + vs(i)
            out.append(t)
    elif spec.family == "D":
        # vs0 is identically zero here
        for i in range(1, n - 1):
            t = vs(i)
            if i > 1:
                t = t - vs(i - 1)
            out.append(t)
        tail = vs(n - 1) + vs(n)
        if n > 2:
            tail = tail - vs(n - 2)
        out.append(tail)
        out.append(-vs(n - 1) + vs(n))
    else:
        # vsn is identically zero here
        out.append(vs(1) - Fraction(2, 3) * vs(0))
        out.append(-Fraction(2, 3) * vs(0) - vs(1) + vs(2))
        t3 = -Fraction(2, 3) * vs(0) - vs(2)
        if n > 3:
            t3 = t3 + vs(3)
        out.append(t3)
        for i in range(4, n + 1):
            t = Fraction(1, 3) * vs(0) - vs(i - 1)
            if i < n:
                t = t + vs(i)
            out.append(t)
    return out


def dual_basis_in_t(spec: Spec) -> RuleSet:
    """Each dual-basis coordinate as a linear form in t_1..t_n."""
    table = spec.t_table()
    t = lambda i: table.var(f"t{i}")
    n = spec.n
    s1 = table.zero()
    for i in range(1, n + 1):
        s1 = s1 + t(i)
    rules: list[tuple[str, Polynomial]] = []
    if spec.family == "A":
        acc = table.zero()
        for i in range(1, n):
            acc = acc + t(i)
            rules.append((f"vs{i}", acc))
    elif spec.family == "D":
        for i in range(1, n - 1):
            v = s1
            for j in range(i + 1, n + 1):
                v = v - t(j)
            rules.append((f"vs{i}", v))
        rules.append((f"vs{n-1}", Fraction(1, 2) * s1 - t(n)))
        rules.append((f"vs{n}", Fraction(1, 2) * s1))
    else:
        rules.append(("vs0", Fraction(3, n - 9) * s1))
        rules.append(("vs1", Fraction(2, n - 9) * s1 + t(1)))
        rules.append(("vs2", Fraction(4, n - 9) * s1 + t(1) + t(2)))
        acc = t(1) + t(2)
        for i in range(3, n):
            acc = acc + t(i)
            rules.append((f"vs{i}", Fraction(9 - i, n - 9) * s1 + acc))
    return RuleSet.of(rules)


def weyl_action(spec: Spec, generator: int) -> RuleSet:
    """The reflection in the given simple root, as a substitution on t's."""
    if generator not in spec.generators():
        raise ValueError(f"{generator} is not a generator index of {spec.name}")
    table = spec.t_table()
    t = lambda i: table.var(f"t{i}")
    n = spec.n
    if 1 <= generator <= n - 1:
        i = generator
        return RuleSet.of([(f"t{i}", t(i + 1)), (f"t{i+1}", t(i))])
    if spec.family == "D":
        return RuleSet.of([(f"t{n-1}", -t(n)), (f"t{n}", -t(n - 1))])
    sigma = t(1) + t(2) + t(3)
    rules = [(f"t{i}", t(i) - Fraction(2, 3) * sigma) for i in (1, 2, 3)]
    rules += [(f"t{i}", t(i) + Fraction(1, 3) * sigma) for i in range(4, n + 1)]
    return RuleSet.of(rules)


# -- orthogonal splitting at a vertex ------------------------------------------


def split_table(left: Optional[Spec], right: Optional[Spec]) -> VarTable:
    names = ["mu1"]
    if left is not None:
        names += [f"tp{i}" for i in range(1, left.n + 1)]
    if right is not None:
        names += [f"tq{i}" for i in range(1, right.n + 1)]
    return VarTable(names, [1] * len(names))


@dataclass(frozen=True)
class VertexSplit:
    """Orthogonal decomposition of a root space at one vertex.

    ``rules`` rewrites each t_i of the parent system in terms of mu1 (the
    dual coordinate of the removed vertex) and the distinguished
    functionals tp*/tq* of the two complementary parts.  ``missing`` is
    the extra linear factor that the k = 2 splitting of the E family
    divides out.
    """

    spec: Spec
    k: int
    left: Optional[Spec]
    right: Optional[Spec]
    rules: RuleSet
    tilde_v: Vector
    left_map: tuple[int, ...]
    right_map: tuple[int, ...]
    missing: Optional[Polynomial]

    def part_vectors(self) -> tuple[list[Vector], list[Vector]]:
        basis = root_basis(self.spec)
        return (
            [basis[i] for i in self.left_map],
            [basis[i] for i in self.right_map],
        )


class UnsupportedSplitError(ValueError):
    pass


def _part_functionals(part: Optional[Spec], prefix: str, table: VarTable) -> list[Polynomial]:
    if part is None:
        return []
    if part.family == "A" and part.n == 1:
        return [table.zero()]
    return [table.var(f"{prefix}{i}") for i in range(1, part.n + 1)]


def vertex_split(spec: Spec, k: int) -> VertexSplit:
    family, n = spec.family, spec.n
    dim = n + 1
    basis = root_basis(spec)

    def frac(a, b):
        return Fraction(a, b)

    if family == "A":
        if not 1 <= k <= n - 1:
            raise UnsupportedSplitError(f"no splitting of {spec.name} at vertex {k}")
        left, right = Spec("A", k), Spec("A", n - k)
        table = split_table(left, right)
        mu = table.var("mu1")
        tps = _part_functionals(left, "tp", table)
        tqs = _part_functionals(right, "tq", table)
        rules = [(f"t{i}", frac(1, k) * mu + tps[i - 1]) for i in range(1, k + 1)]
        rules += [(f"t{k+i}", -frac(1, n - k) * mu + tqs[i - 1]) for i in range(1, n - k + 1)]
        left_map = tuple(range(1, k))
        right_map = tuple(range(k + 1, n))
        tilde = combine(dim, [(Fraction(1), basis[k])]
                        + [(frac(i, k), basis[i]) for i in range(1, k)]
                        + [(frac(n - k - i, n - k), basis[k + i]) for i in range(1, n - k)])
        return VertexSplit(spec, k, left, right, RuleSet.of(rules), tilde,
                           left_map, right_map, None)

    if family == "D":
        if k == n - 1 or not 1 <= k <= n:
            raise UnsupportedSplitError(f"no splitting of {spec.name} at vertex {k}")
        if k <= n - 2:
            left, right = Spec("A", k), Spec("D", n - k)
            table = split_table(left, right)
            mu = table.var("mu1")
            tps = _part_functionals(left, "tp", table)
            tqs = _part_functionals(right, "tq", table)
            rules = [(f"t{i}", frac(1, k) * mu + tps[i - 1]) for i in range(1, k + 1)]
            rules += [(f"t{k+i}", tqs[i - 1]) for i in range(1, n - k + 1)]
            left_map = tuple(range(1, k))
            right_map = tuple(range(k + 1, n + 1))
            parts = [(Fraction(1), basis[k])]
            parts += [(frac(i, k), basis[i]) for i in range(1, k)]
            parts += [(Fraction(1), basis[k + i]) for i in range(1, n - k - 1)]
            parts += [(frac(1, 2), basis[n - 1]), (frac(1, 2), basis[n])]
            tilde = combine(dim, parts)
            return VertexSplit(spec, k, left, right, RuleSet.of(rules), tilde,
                               left_map, right_map, None)
        left = Spec("A", n)
        table = split_table(left, None)
        mu = table.var("mu1")
        tps = _part_functionals(left, "tp", table)
        rules = [(f"t{i}", frac(2, n) * mu + tps[i - 1]) for i in range(1, n + 1)]
        left_map = tuple(range(1, n))
        parts = [(Fraction(1), basis[n])]
        parts += [(frac(2 * i, n), basis[i]) for i in range(1, n - 1)]
        parts += [(frac(n - 2, n), basis[n - 1])]
        tilde = combine(dim, parts)
        return VertexSplit(spec, k, left, None, RuleSet.of(rules), tilde,
                           left_map, (), None)

    if not 0 <= k <= n - 1:
        raise UnsupportedSplitError(f"no splitting of {spec.name} at vertex {k}")
    if k == 0:
        left = Spec("A", n)
        table = split_table(left, None)
        mu = table.var("mu1")
        tps = _part_functionals(left, "tp", table)
        shift = -frac(9 - n, 3 * n) * mu
        rules = [(f"t{i}", shift + tps[i - 1]) for i in range(1, n + 1)]
        left_map = tuple(range(1, n))
        parts = [(Fraction(1), basis[0]),
                 (frac(n - 3, n), basis[1]), (frac(2 * n - 6, n), basis[2])]
        parts += [(frac(3 * n - 3 * i, n), basis[i]) for i in range(3, n)]
        tilde = combine(dim, parts)
        return VertexSplit(spec, k, left, None, RuleSet.of(rules), tilde,
                           left_map, (), None)
    if k == 1:
        left = Spec("D", n - 1)
        table = split_table(left, None)
        mu = table.var("mu1")
        tps = _part_functionals(left, "tp", table)
        sp1 = table.zero()
        for p in tps:
            sp1 = sp1 + p
        rules = [("t1", frac(9 - n, 6) * mu - frac(1, 3) * sp1)]
        for i in range(1, n):
            rules.append((f"t{i+1}",
                          frac(n - 9, 12) * mu + frac(1, 6) * sp1 - tps[n - i - 1]))
        left_map = tuple(n - i for i in range(1, n - 1)) + (0,)
        parts = [(Fraction(1), basis[1])]
        parts += [(frac(i, 2), basis[n - i]) for i in range(1, n - 2)]
        parts += [(frac(n - 1, 4), basis[2]), (frac(n - 3, 4), basis[0])]
        tilde = combine(dim, parts)
        return VertexSplit(spec, k, left, None, RuleSet.of(rules), tilde,
                           left_map, (), None)
    if k == 2:
        left, right = Spec("A", 2), Spec("A", n - 1)
        table = split_table(left, right)
        mu = table.var("mu1")
        tps = _part_functionals(left, "tp", table)
        tq1 = table.var("tq1")
        tqs = _part_functionals(right, "tq", table)
        rules = [(f"t{i}", frac(9 - n, 6 * n - 6) * mu - frac(2, 3) * tq1 + tps[i - 1])
                 for i in (1, 2)]
        for i in range(2, n):
            rules.append((f"t{i+1}",
                          frac(n - 9, 3 * n - 3) * mu + frac(1, 3) * tq1 + tqs[i - 1]))
        missing = frac(n - 9, 3 * n - 3) * mu + frac(4, 3) * tq1
        left_map = (1,)
        right_map = (0,) + tuple(range(3, n))
        parts = [(Fraction(1), basis[2]), (frac(1, 2), basis[1]),
                 (frac(n - 3, n - 1), basis[0])]
        parts += [(frac(2 * n - 2 * i - 2, n - 1), basis[i + 1]) for i in range(2, n - 1)]
        tilde = combine(dim, parts)
        return VertexSplit(spec, k, left, right, RuleSet.of(rules), tilde,
                           left_map, right_map, missing)
    # 3 <= k <= n-1
    left, right = Spec("E", k), Spec("A", n - k)
    table = split_table(left, right)
    mu = table.var("mu1")
    tps = _part_functionals(left, "tp", table)
    tqs = _part_functionals(right, "tq", table)
    sp1 = table.zero()
    for p in tps:
        sp1 = sp1 + p
    rules = [(f"t{i}", tps[i - 1]) for i in range(1, k + 1)]
    shift = frac(n - 9, (9 - k) * (n - k)) * mu - frac(1, 9 - k) * sp1
    for i in range(1, n - k + 1):
        rules.append((f"t{k+i}", shift + tqs[i - 1]))
    left_map = tuple(range(0, k))
    right_map = tuple(range(k + 1, n))
    parts = [(Fraction(1), basis[k]),
             (frac(3, 9 - k), basis[0]), (frac(2, 9 - k), basis[1]),
             (frac(4, 9 - k), basis[2])]
    parts += [(frac(9 - i, 9 - k), basis[i]) for i in range(3, k)]
    parts += [(frac(n - k - i, n - k), basis[k + i]) for i in range(1, n - k)]
    tilde = combine(dim, parts)
    return VertexSplit(spec, k, left, right, RuleSet.of(rules), tilde,
                       left_map, right_map, None)


def supported_splits(spec: Spec) -> list[int]:
    if spec.family == "A":
        return list(range(1, spec.n))
    if spec.family == "D":
        return [k for k in range(1, spec.n + 1) if k != spec.n - 1]
    return list(range(0, spec.n))
