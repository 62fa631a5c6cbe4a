"""Fusion data: representation rings of small connected reductive groups,
finite groups (optionally with a 2-cocycle twist), and finite-index
induction/restriction.

Connected reductive groups enter purely through their fusion rules (no
group elements), since only the based ring matters once the action on a
finite set is trivial.  Finite kinds work either from a concrete group
(exact cyclotomic characters) or from an integer character table loaded
from JSON.  Twisted kinds grade irreducibles by cocycle degree; tensor
products add degrees, and all decompositions are trace-solves in the
target sector.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import Cyc, solve_linear
from .groups import (Cocycle, FiniteGroup, GroupError, Irrep, builtin_group,
                     klein_nontrivial_cocycle, symmetric_group_3,
                     trivial_cocycle, twisted_irreps)


class RepRingError(Exception):
    pass


# ----- fusion rings of connected reductive groups -------------------------------


class SL2Fusion:
    """Irreducibles V(n), n >= 0, dim n + 1, Clebsch-Gordan fusion."""

    name = "SL2"
    sector_order = 2  # central character of the center {+-1}

    def unit(self):
        return 0

    def labels_up_to(self, bound: int):
        return list(range(bound + 1))

    def dim(self, n: int) -> int:
        return n + 1

    def dual(self, n: int) -> int:
        return n

    def sector(self, n: int) -> int:
        return n % 2

    def tensor(self, m: int, n: int) -> Counter:
        return Counter({k: 1 for k in range(abs(m - n), m + n + 1, 2)})

    def label_str(self, n) -> str:
        return f"V({n})"


class PGL2Fusion(SL2Fusion):
    """The even-label subring of SL2 fusion."""

    name = "PGL2"
    sector_order = 1

    def labels_up_to(self, bound: int):
        return list(range(0, bound + 1, 2))

    def sector(self, n: int) -> int:
        if n % 2:
            raise RepRingError("odd label in PGL2 fusion")
        return 0


class GL2Fusion:
    """Labels (a, b) with a >= b; V(a,b) = Sym^(a-b) x det^b."""

    name = "GL2"
    sector_order = None  # infinite center; extended points unsupported

    def unit(self):
        return (0, 0)

    def labels_up_to(self, bound: int):
        out = [(a, b) for a in range(-bound, bound + 1)
               for b in range(-bound, bound + 1) if a >= b]
        return sorted(out)

    def dim(self, label) -> int:
        a, b = label
        return a - b + 1

    def dual(self, label):
        a, b = label
        return (-b, -a)

    def sector(self, label):
        raise RepRingError("GL2 has no finite central grading")

    def tensor(self, l1, l2) -> Counter:
        a, b = l1
        c, d = l2
        out = Counter()
        for k in range(min(a - b, c - d) + 1):
            out[(a + c - k, b + d + k)] += 1
        return out

    def label_str(self, label) -> str:
        return f"V{label}"


class TorusFusion:
    """Characters of a rank-r torus; fusion is addition."""

    sector_order = None

    def __init__(self, rank: int):
        if rank < 1 or rank > 2:
            raise RepRingError("torus rank must be 1 or 2")
        self.rank = rank
        self.name = f"T{rank}"

    def unit(self):
        return (0,) * self.rank

    def labels_up_to(self, bound: int):
        box = [()]
        for _ in range(self.rank):
            box = [v + (k,) for v in box for k in range(-bound, bound + 1)]
        return sorted(box)

    def dim(self, label) -> int:
        return 1

    def dual(self, label):
        return tuple(-x for x in label)

    def sector(self, label):
        raise RepRingError("torus has no finite central grading")

    def tensor(self, l1, l2) -> Counter:
        return Counter({tuple(a + b for a, b in zip(l1, l2)): 1})

    def label_str(self, label) -> str:
        return f"chi{label}"


FUSION_RINGS = {
    "SL2": SL2Fusion,
    "PGL2": PGL2Fusion,
    "GL2": GL2Fusion,
    "T1": lambda: TorusFusion(1),
    "T2": lambda: TorusFusion(2),
}


# ----- finite and twisted-finite specs ---------------------------------------------


@dataclass
class RepRingSpec:
    kind: str  # connected_reductive | finite | finite_table | twisted_finite | product
    fusion: object = None
    group: FiniteGroup = None
    cocycle: Cocycle = None
    sector_irreps: dict = field(default_factory=dict)  # degree -> [Irrep]
    char_table: list = None  # finite_table kind: rows = irreps, cols = classes
    class_sizes: list = None
    factors: list = field(default_factory=list)
    name: str = ""

    @property
    def sector_count(self) -> int:
        if self.kind != "twisted_finite":
            return 1
        return len(self.sector_irreps)


def connected_reductive_spec(name: str) -> RepRingSpec:
    if name not in FUSION_RINGS:
        raise RepRingError(f"unknown fusion ring {name!r}")
    return RepRingSpec(kind="connected_reductive", fusion=FUSION_RINGS[name](),
                       name=name)


def finite_spec(group: FiniteGroup | str, name: str = "") -> RepRingSpec:
    if isinstance(group, str):
        group = builtin_group(group)
    irreps = twisted_irreps(group)
    return RepRingSpec(kind="finite", group=group,
                       cocycle=trivial_cocycle(group),
                       sector_irreps={0: irreps}, name=name or group.name)


def twisted_finite_spec(group: FiniteGroup | str, cocycle) -> RepRingSpec:
    if isinstance(group, str):
        group = builtin_group(group)
    if cocycle == "klein-nontrivial":
        cocycle = klein_nontrivial_cocycle(group)
    order = 1
    power = cocycle
    while not power.is_trivial_table():
        order += 1
        power = power.product(cocycle)
        if order > 8:
            raise RepRingError("cocycle order too large")
    sector_irreps = {}
    power = trivial_cocycle(group)
    for d in range(order):
        sector_irreps[d] = twisted_irreps(group, power)
        power = power.product(cocycle)
    return RepRingSpec(kind="twisted_finite", group=group, cocycle=cocycle,
                       sector_irreps=sector_irreps,
                       name=f"{group.name};{cocycle.name}")


def finite_table_spec(char_table, class_sizes, name="table") -> RepRingSpec:
    table = [[int(x) for x in row] for row in char_table]
    sizes = [int(s) for s in class_sizes]
    n = sum(sizes)
    if sum(row[0] ** 2 for row in table) != n:
        raise RepRingError("character table fails the dimension count")
    return RepRingSpec(kind="finite_table", char_table=table,
                       class_sizes=sizes, name=name)


def product_spec(factors: list) -> RepRingSpec:
    return RepRingSpec(kind="product", factors=list(factors),
                       name="x".join(f.name for f in factors))


# ----- operations ---------------------------------------------------------------------


def spec_labels(spec: RepRingSpec, bound: int = 0):
    if spec.kind == "connected_reductive":
        return spec.fusion.labels_up_to(bound)
    if spec.kind in ("finite", "twisted_finite"):
        return [(d, rep.label) for d in sorted(spec.sector_irreps)
                for rep in spec.sector_irreps[d]]
    if spec.kind == "finite_table":
        return [f"chi{i}" for i in range(len(spec.char_table))]
    if spec.kind == "product":
        parts = [spec_labels(f, bound) for f in spec.factors]
        out = [()]
        for p in parts:
            out = [v + (x,) for v in out for x in p]
        return out
    raise RepRingError(f"unknown spec kind {spec.kind}")


def spec_dim(spec: RepRingSpec, label) -> int:
    if spec.kind == "connected_reductive":
        return spec.fusion.dim(label)
    if spec.kind in ("finite", "twisted_finite"):
        d, name = label
        return _irrep_by_label(spec, d, name).dim
    if spec.kind == "finite_table":
        return spec.char_table[int(label[3:])][0]
    if spec.kind == "product":
        out = 1
        for f, x in zip(spec.factors, label):
            out *= spec_dim(f, x)
        return out
    raise RepRingError(f"unknown spec kind {spec.kind}")


def _irrep_by_label(spec, degree, name) -> Irrep:
    for rep in spec.sector_irreps[degree]:
        if rep.label == name:
            return rep
    raise RepRingError(f"no irrep {name!r} in sector {degree}")


def tensor_decompose(spec: RepRingSpec, l1, l2) -> Counter:
    """Exact decomposition of the tensor product of two irreducibles."""
    if spec.kind == "connected_reductive":
        return spec.fusion.tensor(l1, l2)
    if spec.kind in ("finite", "twisted_finite"):
        d1, n1 = l1
        d2, n2 = l2
        target = (d1 + d2) % max(spec.sector_count, 1)
        if target not in spec.sector_irreps:
            raise RepRingError("cocycle-degree mismatch")
        r1 = _irrep_by_label(spec, d1, n1)
        r2 = _irrep_by_label(spec, d2, n2)
        targets = spec.sector_irreps[target]
        rows = []
        rhs = []
        for g in spec.group.elements:
            rows.append([rep.character(g) for rep in targets])
            rhs.append(r1.character(g) * r2.character(g))
        sol = solve_linear(rows, rhs)
        out = Counter()
        for rep, val in zip(targets, sol):
            m = val.to_int()
            if m < 0:
                raise RepRingError("negative fusion multiplicity")
            if m:
                out[(target, rep.label)] = m
        return out
    if spec.kind == "finite_table":
        return _table_tensor(spec, l1, l2)
    if spec.kind == "product":
        parts = [tensor_decompose(f, x, y)
                 for f, x, y in zip(spec.factors, l1, l2)]
        out = Counter()
        acc = [((), 1)]
        for part in parts:
            acc = [(v + (lab,), c * m) for v, c in acc
                   for lab, m in part.items()]
        for v, c in acc:
            out[v] = c
        return out
    raise RepRingError(f"unknown spec kind {spec.kind}")


def _table_tensor(spec: RepRingSpec, l1, l2) -> Counter:
    i1, i2 = int(l1[3:]), int(l2[3:])
    table = spec.char_table
    sizes = spec.class_sizes
    n = sum(sizes)
    out = Counter()
    for k, row_k in enumerate(table):
        total = Fraction(0)
        for c, size in enumerate(sizes):
            total += Fraction(size * table[i1][c] * table[i2][c] * row_k[c])
        mult = total / n
        if mult.denominator != 1 or mult < 0:
            raise RepRingError("character table gives a bad multiplicity")
        if mult:
            out[f"chi{k}"] = int(mult)
    return out


def spec_dual(spec: RepRingSpec, label):
    if spec.kind == "connected_reductive":
        return spec.fusion.dual(label)
    if spec.kind == "finite":
        _, name = label
        rep = _irrep_by_label(spec, 0, name)
        target = [r for r in spec.sector_irreps[0]
                  if all((r.character(g) - rep.character(spec.group.inv[g]))
                         .is_zero() for g in spec.group.elements)]
        if len(target) != 1:
            raise RepRingError("dual irrep not found")
        return (0, target[0].label)
    raise RepRingError(f"dual unsupported for kind {spec.kind}")


def restrict(spec: RepRingSpec, sub_spec: RepRingSpec, label) -> Counter:
    """Restriction along an inclusion of concrete finite groups."""
    _require_finite(spec, sub_spec)
    _, name = label
    rep = _irrep_by_label(spec, 0, name)
    targets = sub_spec.sector_irreps[0]
    rows = []
    rhs = []
    for g in sub_spec.group.elements:
        rows.append([r.character(g) for r in targets])
        rhs.append(rep.character(g))
    sol = solve_linear(rows, rhs)
    out = Counter()
    for r, val in zip(targets, sol):
        m = val.to_int()
        if m < 0:
            raise RepRingError("negative restriction multiplicity")
        if m:
            out[(0, r.label)] = m
    return out


def induce(sub_spec: RepRingSpec, spec: RepRingSpec, label) -> Counter:
    """Induction, computed through Frobenius reciprocity."""
    _require_finite(spec, sub_spec)
    out = Counter()
    for big_label in spec_labels(spec):
        res = restrict(spec, sub_spec, big_label)
        m = res.get(label, 0)
        if m:
            out[big_label] = m
    # dimension check: dim Ind = index * dim
    index = spec.group.order // sub_spec.group.order
    want = index * spec_dim(sub_spec, label)
    got = sum(m * spec_dim(spec, lab) for lab, m in out.items())
    if got != want:
        raise RepRingError("induced dimension mismatch")
    return out


def _require_finite(spec, sub_spec):
    if spec.kind != "finite" or sub_spec.kind != "finite":
        raise RepRingError("induction/restriction is for finite kinds only")
    if not spec.group.contains_subgroup(sub_spec.group):
        raise RepRingError("not a subgroup inclusion")


# ----- JSON loading -----------------------------------------------------------------------


def spec_from_json(data: dict) -> RepRingSpec:
    kind = data.get("kind")
    if kind == "connected_reductive":
        return connected_reductive_spec(data["group"])
    if kind == "finite":
        if "character_table" in data:
            return finite_table_spec(data["character_table"],
                                     data["class_sizes"],
                                     data.get("name", "table"))
        return finite_spec(data["group"])
    if kind == "twisted_finite":
        group = builtin_group(data["group"])
        cocycle = data.get("cocycle", "klein-nontrivial")
        return twisted_finite_spec(group, cocycle)
    if kind == "product":
        return product_spec([spec_from_json(f) for f in data["factors"]])
    raise RepRingError(f"unknown spec kind in JSON: {kind!r}")
