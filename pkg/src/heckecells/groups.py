"""Small concrete finite groups, 2-cocycles, and their (projective)
irreducible representations with exact cyclotomic matrices.

Groups are stored as explicit element sets with a multiplication map, so
subgroups (stabilizers, intersections) are plain subsets.  Irreducible
representations are produced by structure detection, which covers every
group of order at most 6 and the Klein four-group:

  * cyclic groups (any generator): 1-dim characters zeta_n^k,
  * Z2 x Z2: four sign characters,
  * S3-type (order 6, nonabelian): trivial, sign, and the integral
    2-dimensional reflection representation,
  * nontrivial +-1-valued cocycles on Z2 x Z2: the single 2-dim
    projective representation (Pauli-type matrices).

Projective representations satisfy rho(g) rho(h) = alpha(g,h) rho(gh)
for the given cocycle table, always verified after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclo import Cyc, solve_linear


class GroupError(Exception):
    pass


class FiniteGroup:
    """Explicit finite group: hashable elements plus a multiplication map."""

    def __init__(self, name: str, elements, mult, identity):
        self.name = name
        self.elements = tuple(sorted(elements, key=repr))
        self.mult = mult
        self.identity = identity
        self._index = {g: i for i, g in enumerate(self.elements)}
        if identity not in self._index:
            raise GroupError("identity not among the elements")
        self.inv = {}
        for g in self.elements:
            for h in self.elements:
                if mult(g, h) == identity:
                    self.inv[g] = h
                    break
            else:
                raise GroupError(f"no inverse for {g!r}")
        for g in self.elements:
            for h in self.elements:
                if mult(g, h) not in self._index:
                    raise GroupError("element set not closed")

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_order(self, g) -> int:
        n = 1
        cur = g
        while cur != self.identity:
            cur = self.mult(cur, g)
            n += 1
        return n

    def is_abelian(self) -> bool:
        return all(self.mult(g, h) == self.mult(h, g)
                   for g in self.elements for h in self.elements)

    def subgroup(self, elements, name=None) -> "FiniteGroup":
        elements = set(elements)
        if not elements <= set(self.elements):
            raise GroupError("subgroup elements must belong to the group")
        return FiniteGroup(name or f"{self.name}-sub{len(elements)}",
                           elements, self.mult, self.identity)

    def conjugacy_classes(self):
        seen = set()
        classes = []
        for g in self.elements:
            if g in seen:
                continue
            orbit = {self.mult(self.mult(h, g), self.inv[h])
                     for h in self.elements}
            seen |= orbit
            classes.append(tuple(sorted(orbit, key=repr)))
        return classes

    def contains_subgroup(self, other: "FiniteGroup") -> bool:
        return set(other.elements) <= set(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(f"Z{n}", range(n), lambda a, b: (a + b) % n, 0)


def product_group(g1: FiniteGroup, g2: FiniteGroup, name=None) -> FiniteGroup:
    els = [(a, b) for a in g1.elements for b in g2.elements]

    def mult(x, y):
        return (g1.mult(x[0], y[0]), g2.mult(x[1], y[1]))

    return FiniteGroup(name or f"{g1.name}x{g2.name}", els, mult,
                       (g1.identity, g2.identity))


def symmetric_group_3() -> FiniteGroup:
    els = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]

    def mult(p, q):  # (p*q)(i) = p(q(i))
        return tuple(p[q[i]] for i in range(3))

    return FiniteGroup("S3", els, mult, (0, 1, 2))


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


BUILTIN_GROUPS = {
    "trivial": trivial_group,
    "Z1": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z6": lambda: cyclic_group(6),
    "Z2xZ2": lambda: product_group(cyclic_group(2), cyclic_group(2)),
    "S3": symmetric_group_3,
}


def builtin_group(name: str) -> FiniteGroup:
    if name not in BUILTIN_GROUPS:
        raise GroupError(f"unknown group name {name!r}")
    return BUILTIN_GROUPS[name]()


# ----- cocycles ---------------------------------------------------------------


class Cocycle:
    """Normalized 2-cocycle on a group, with values in roots of unity."""

    def __init__(self, group: FiniteGroup, table=None, name="trivial"):
        self.group = group
        self.name = name
        self.table = dict(table or {})
        self._validate()

    def __call__(self, g, h) -> Cyc:
        val = self.table.get((g, h))
        return Cyc.rational(1) if val is None else val

    def is_trivial_table(self) -> bool:
        return all((v - 1).is_zero() if isinstance(v, Cyc) else v == 1
                   for v in self.table.values())

    def _validate(self):
        G = self.group
        e = G.identity
        for g in G.elements:
            if not (self(e, g) == 1 and self(g, e) == 1):
                raise GroupError("cocycle is not normalized")
        for g in G.elements:
            for h in G.elements:
                for k in G.elements:
                    lhs = self(g, h) * self(G.mult(g, h), k)
                    rhs = self(h, k) * self(g, G.mult(h, k))
                    if not lhs == rhs:
                        raise GroupError("2-cocycle identity fails")

    def restrict(self, sub: FiniteGroup) -> "Cocycle":
        table = {(g, h): self(g, h)
                 for g in sub.elements for h in sub.elements}
        return Cocycle(sub, table, name=f"{self.name}|{sub.name}")

    def product(self, other: "Cocycle") -> "Cocycle":
        if set(self.group.elements) != set(other.group.elements):
            raise GroupError("cocycle product needs a common group")
        table = {(g, h): self(g, h) * other(g, h)
                 for g in self.group.elements for h in self.group.elements}
        return Cocycle(self.group, table, name=f"{self.name}*{other.name}")

    def inverse_cocycle(self) -> "Cocycle":
        table = {(g, h): self(g, h).inverse()
                 for g in self.group.elements for h in self.group.elements}
        return Cocycle(self.group, table, name=f"{self.name}^-1")


def trivial_cocycle(group: FiniteGroup) -> Cocycle:
    return Cocycle(group)


def klein_nontrivial_cocycle(group: FiniteGroup) -> Cocycle:
    """The standard nontrivial class on Z2 x Z2: alpha((a,b),(c,d)) = (-1)^(b c)."""
    table = {}
    for g in group.elements:
        for h in group.elements:
            table[(g, h)] = Cyc.rational((-1) ** (g[1] * h[0]))
    return Cocycle(group, table, name="klein-nontrivial")


# ----- representations -----------------------------------------------------------


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(m)),
                           Cyc.rational(0))
                       for j in range(p)) for i in range(n))


def _mat_scale(a, s):
    return tuple(tuple(x * s for x in row) for row in a)


def _mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _identity_mat(n):
    return tuple(tuple(Cyc.rational(int(i == j)) for j in range(n))
                 for i in range(n))


@dataclass
class Irrep:
    label: str
    dim: int
    mat: dict  # g -> matrix (tuple of tuples of Cyc)

    def character(self, g) -> Cyc:
        m = self.mat[g]
        return sum((m[i][i] for i in range(self.dim)), Cyc.rational(0))

    def __repr__(self):
        return f"Irrep({self.label}, dim={self.dim})"


def _check_projective(group, cocycle, irreps):
    for rep in irreps:
        for g in group.elements:
            for h in group.elements:
                lhs = _mat_mul(rep.mat[g], rep.mat[h])
                rhs = _mat_scale(rep.mat[group.mult(g, h)], cocycle(g, h))
                if not _mat_eq(lhs, rhs):
                    raise GroupError(
                        f"{rep.label}: projective relation fails at {(g, h)}")
    total = sum(rep.dim ** 2 for rep in irreps)
    if total != group.order:
        raise GroupError("sum of squared dimensions misses the group order")


def _cyclic_irreps(group: FiniteGroup, gen) -> list[Irrep]:
    n = group.order
    powers = [group.identity]
    for _ in range(n - 1):
        powers.append(group.mult(powers[-1], gen))
    out = []
    for k in range(n):
        mat = {}
        for i, g in enumerate(powers):
            mat[g] = ((Cyc.zeta(n, (k * i) % n),),)
        out.append(Irrep(f"chi{k}", 1, mat))
    return out


def _klein_irreps(group: FiniteGroup, gens) -> list[Irrep]:
    a, b = gens
    e = group.identity
    ab = group.mult(a, b)
    out = []
    for sa in (1, -1):
        for sb in (1, -1):
            mat = {e: ((Cyc.rational(1),),),
                   a: ((Cyc.rational(sa),),),
                   b: ((Cyc.rational(sb),),),
                   ab: ((Cyc.rational(sa * sb),),)}
            out.append(Irrep(f"chi{(1 - sa) // 2}{(1 - sb) // 2}", 1, mat))
    return out


def _s3_irreps(group: FiniteGroup) -> list[Irrep]:
    """Pull back the canonical S3 irreps along an iso built on generators."""
    canon = symmetric_group_3()
    tau = next(g for g in group.elements if group.element_order(g) == 3)
    sigma = next(g for g in group.elements if group.element_order(g) == 2)
    ctau, csigma = (1, 2, 0), (1, 0, 2)
    iso = {}
    for i in range(3):
        for j in range(2):
            src = group.identity
            dst = canon.identity
            for _ in range(i):
                src = group.mult(src, tau)
                dst = canon.mult(dst, ctau)
            for _ in range(j):
                src = group.mult(src, sigma)
                dst = canon.mult(dst, csigma)
            iso[src] = dst
    if len(iso) != 6:
        raise GroupError("failed to build an S3 isomorphism")
    sign = {p: 1 if p in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
            for p in canon.elements}
    # reflection representation on the span of e0-e1, e1-e2
    def std_mat(p):
        cols = []
        for basis in ((1, -1, 0), (0, 1, -1)):
            img = [0, 0, 0]
            for i, c in enumerate(basis):
                img[p[i]] += c
            # express img in the basis (1,-1,0), (0,1,-1): x = img[0], y = -img[2]
            cols.append((img[0], -img[2]))
        return tuple(tuple(Cyc.rational(cols[j][i]) for j in range(2))
                     for i in range(2))

    triv = Irrep("triv", 1, {g: ((Cyc.rational(1),),) for g in group.elements})
    sgn = Irrep("sgn", 1, {g: ((Cyc.rational(sign[iso[g]]),),)
                           for g in group.elements})
    std = Irrep("std", 2, {g: std_mat(iso[g]) for g in group.elements})
    return [triv, sgn, std]


def _klein_projective(group: FiniteGroup, cocycle: Cocycle) -> list[Irrep]:
    e = group.identity
    gens = [g for g in group.elements if g != e][:2]
    a, b = gens
    if group.mult(a, b) == e or group.mult(a, b) in (a, b):
        raise GroupError("could not pick independent Klein generators")
    comm = cocycle(a, b) * cocycle(b, a).inverse()
    if not comm == -1:
        raise GroupError("cocycle class not the nondegenerate Klein one")

    def sqrt_mat(base, val):
        # val is +-1; sqrt(-1) needs zeta_4
        if val == 1:
            return base
        if val == -1:
            return _mat_scale(base, Cyc.zeta(4))
        raise GroupError("only +-1 cocycle values are supported")

    sx = ((Cyc.rational(0), Cyc.rational(1)),
          (Cyc.rational(1), Cyc.rational(0)))
    sz = ((Cyc.rational(1), Cyc.rational(0)),
          (Cyc.rational(0), Cyc.rational(-1)))
    A = sqrt_mat(sx, cocycle(a, a).to_int())
    B = sqrt_mat(sz, cocycle(b, b).to_int())
    ab = group.mult(a, b)
    mat = {e: _identity_mat(2), a: A, b: B,
           ab: _mat_scale(_mat_mul(A, B), cocycle(a, b).inverse())}
    return [Irrep("proj2", 2, mat)]


def _ordinary_irreps(group: FiniteGroup) -> list[Irrep]:
    n = group.order
    if n == 1:
        return [Irrep("triv", 1, {group.identity: _identity_mat(1)})]
    if group.is_abelian():
        gen = max(group.elements, key=group.element_order)
        if group.element_order(gen) == n:
            return _cyclic_irreps(group, gen)
        if n == 4:
            others = [g for g in group.elements
                      if g != group.identity and g != gen]
            return _klein_irreps(group, (gen, others[0]))
        raise GroupError(f"unsupported abelian structure of order {n}")
    if n == 6:
        return _s3_irreps(group)
    raise GroupError(f"unsupported group of order {n}")


def solve_coboundary(group: FiniteGroup, delta: Cocycle) -> dict:
    """A 1-cochain mu with mu(g)mu(h)/mu(gh) = delta(g,h), for +-1-valued
    class-trivial tables on groups of order <= 6."""
    e = group.identity
    n = group.order
    if delta.is_trivial_table():
        return {g: Cyc.rational(1) for g in group.elements}
    if group.is_abelian() and n == 4 and \
            max(group.element_order(g) for g in group.elements) == 2:
        units = [Cyc.rational(1), Cyc.rational(-1), Cyc.zeta(4), -Cyc.zeta(4)]
        gens = [g for g in group.elements if g != e]
        for va in units:
            for vb in units:
                for vc in units:
                    mu = {e: Cyc.rational(1), gens[0]: va,
                          gens[1]: vb, gens[2]: vc}
                    if all((mu[g] * mu[h] - delta(g, h) * mu[group.mult(g, h)])
                           .is_zero()
                           for g in group.elements for h in group.elements):
                        return mu
        raise GroupError("no coboundary trivialization found on Klein group")
    gen = max(group.elements, key=group.element_order)
    if group.element_order(gen) != n:
        raise GroupError("coboundary solving supported for cyclic groups only")
    powers = [e]
    for _ in range(n - 1):
        powers.append(group.mult(powers[-1], gen))
    prod = Cyc.rational(1)
    for k in range(n):
        prod = prod * delta(powers[k], gen)
    # t^n = prod with prod in {+-1}; pick the smallest-conductor root
    if prod == 1:
        t = Cyc.rational(1)
    elif prod == -1:
        t = Cyc.zeta(2 * n)
    else:
        raise GroupError("coboundary solving needs +-1-valued tables")
    mu = {e: Cyc.rational(1)}
    for k in range(n - 1):
        g = powers[k]
        mu[powers[k + 1]] = mu[g] * t / delta(g, gen)
    return mu


def _twist_by_cochain(irreps: list[Irrep], mu: dict) -> list[Irrep]:
    return [Irrep(rep.label, rep.dim,
                  {g: _mat_scale(m, mu[g]) for g, m in rep.mat.items()})
            for rep in irreps]


def twisted_irreps(group: FiniteGroup, cocycle: Cocycle | None = None):
    """Complete list of alpha-projective irreducibles, verified exactly.

    Trivial tables give ordinary irreducibles; class-trivial tables are
    trivialized by a 1-cochain; the nondegenerate Klein class gives the
    single 2-dimensional Pauli-type representation, corrected by a
    cochain when the table differs from the standard one.
    """
    if cocycle is None:
        cocycle = trivial_cocycle(group)
    if cocycle.is_trivial_table():
        irreps = _ordinary_irreps(group)
    else:
        commutator_trivial = all(
            (cocycle(g, h) - cocycle(h, g)).is_zero()
            for g in group.elements for h in group.elements)
        if commutator_trivial:
            mu = solve_coboundary(group, cocycle)
            irreps = _twist_by_cochain(_ordinary_irreps(group), mu)
        else:
            if not (group.order == 4 and group.is_abelian()):
                raise GroupError(
                    "nondegenerate cocycles supported on Z2xZ2 only")
            canonical = klein_nontrivial_cocycle_on(group)
            delta = cocycle.product(canonical.inverse_cocycle())
            mu = solve_coboundary(group, delta)
            irreps = _twist_by_cochain(_klein_projective(group, canonical), mu)
    _check_projective(group, cocycle, irreps)
    return irreps


def klein_nontrivial_cocycle_on(group: FiniteGroup) -> Cocycle:
    """The standard nondegenerate table on any concrete Klein four-group."""
    e = group.identity
    gens = [g for g in group.elements if g != e][:2]
    a, b = gens
    coords = {e: (0, 0), a: (1, 0), b: (0, 1), group.mult(a, b): (1, 1)}
    table = {}
    for g in group.elements:
        for h in group.elements:
            table[(g, h)] = Cyc.rational((-1) ** (coords[g][1] * coords[h][0]))
    return Cocycle(group, table, name="klein-std")


def decompose_by_trace(group: FiniteGroup, cocycle, irreps, action_mats):
    """Multiplicities of the irreps in a projective module given by its
    action matrices, solved exactly from traces."""
    rows = []
    rhs = []
    for g in group.elements:
        rows.append([rep.character(g) for rep in irreps])
        m = action_mats[g]
        rhs.append(sum((m[i][i] for i in range(len(m))), Cyc.rational(0)))
    sol = solve_linear(rows, rhs)
    out = []
    for rep, val in zip(irreps, sol):
        mult = val.to_int()
        if mult < 0:
            raise GroupError("negative multiplicity in decomposition")
        out.append(mult)
    return out
