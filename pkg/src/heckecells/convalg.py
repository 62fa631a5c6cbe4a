"""Based convolution algebras of equivariant sheaves on X x X for finite
sets X of (possibly centrally extended) points.

Finite groups.  A centrally extended set is stored per orbit: a
stabilizer subgroup H of the base point and a 2-cocycle on H (trivial
allowed).  Points are cosets with fixed transversals, and the extension
data is carried by the transported groupoid cocycle

    kappa(g, h, x) = alpha(h_{g,hx}, h_{h,x}),   h_{g,x} = s_{gx}^-1 g s_x,

so a sheaf on an orbit is exactly an induced module over the twisted
groupoid algebra.  On X x X the second factor carries the opposite
extension: kappa2(g,h,(x,z)) = kappa(g,h,x) / kappa(g,h,z).  Basis
elements are (pair orbit, projective irreducible of the base-pair
stabilizer for the restricted cocycle).

Convolution is implemented twice, by design:

  * `convolve` runs the Mackey formula: for each result orbit, the
    pr_13 fiber over the base pair splits into stabilizer orbits, each
    contributing a twisted induction of the tensor of stalk actions from
    the intersected stabilizer.
  * `convolve_oracle` realizes both sheaves as explicit modules, forms
    the full direct-sum stalk over the fiber with its block action, and
    decomposes by exact trace-solving - no induction, no Mackey step.

The two must agree; the acceptance suite compares them on whole
algebras.  Connected reductive groups force a trivial action, where the
algebra is matrix units over the fusion ring with a per-point central
character ("sector") twist for centrally extended points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .based import BasedAlgebra
from .cyclo import Cyc
from .groups import (Cocycle, FiniteGroup, GroupError, Irrep, builtin_group,
                     klein_nontrivial_cocycle, trivial_cocycle, twisted_irreps,
                     _identity_mat, _mat_mul, _mat_scale)
from .repring import RepRingSpec, RepRingError, connected_reductive_spec


class ConvAlgebraError(Exception):
    pass


# ----- centrally extended finite sets ---------------------------------------------


@dataclass
class OrbitSpec:
    stabilizer: FiniteGroup
    cocycle: Cocycle

    def __post_init__(self):
        if set(self.cocycle.group.elements) != set(self.stabilizer.elements):
            raise ConvAlgebraError("cocycle group differs from the stabilizer")


class CentrallyExtendedSet:
    """Finite F-set with per-orbit central extension data."""

    def __init__(self, group: FiniteGroup, orbits: list[OrbitSpec]):
        self.group = group
        self.orbit_specs = orbits
        self.points = []   # (orbit_index, coset_index)
        self.transversal = {}  # point -> group element (sigma)
        self.coset_of = []  # per orbit: dict element -> coset index
        for oi, spec in enumerate(orbits):
            if not group.contains_subgroup(spec.stabilizer):
                raise ConvAlgebraError("orbit stabilizer is not a subgroup")
            hset = set(spec.stabilizer.elements)
            seen = {}
            for g in group.elements:
                key = frozenset(group.mult(g, h) for h in hset)
                if key not in seen:
                    idx = len(seen)
                    seen[key] = idx
                    self.transversal[(oi, idx)] = g
                    self.points.append((oi, idx))
            # identity must represent the base coset
            base_key = frozenset(hset)
            if seen[base_key] != 0 or self.transversal[(oi, 0)] != group.identity:
                base_idx = seen[base_key]
                raise ConvAlgebraError("base coset not discovered first")
            self.coset_of.append({})
            for g in group.elements:
                key = frozenset(group.mult(g, h) for h in hset)
                self.coset_of[oi][g] = seen[key]
        self.size = len(self.points)

    def act(self, g, point):
        oi, ci = point
        moved = self.group.mult(g, self.transversal[point])
        return (oi, self.coset_of[oi][moved])

    def stab_transfer(self, g, point):
        """h_{g, point} = sigma_{g point}^-1 g sigma_point, in the base
        stabilizer of the orbit."""
        target = self.act(g, point)
        gp = self.group.mult(g, self.transversal[point])
        return self.group.mult(self.group.inv[self.transversal[target]], gp)

    def kappa(self, g, h, point) -> Cyc:
        """Transported groupoid 2-cocycle at a point."""
        oi, _ = point
        alpha = self.orbit_specs[oi].cocycle
        return alpha(self.stab_transfer(g, self.act(h, point)),
                     self.stab_transfer(h, point))

    def stabilizer_of(self, point) -> FiniteGroup:
        els = [g for g in self.group.elements
               if self.act(g, point) == point]
        return self.group.subgroup(els, name=f"Stab{point}")


def set_from_json(group: FiniteGroup, data: dict) -> CentrallyExtendedSet:
    """Orbit list format: [{"stabilizer": "full"|"trivial"|[elements],
    "cocycle": "trivial"|"klein-nontrivial"}, ...]."""
    orbits = []
    for orb in data["orbits"]:
        stab = orb.get("stabilizer", "full")
        if stab == "full":
            sub = group.subgroup(group.elements, "full")
        elif stab == "trivial":
            sub = group.subgroup([group.identity], "trivial")
        else:
            els = [_element_from_json(group, e) for e in stab]
            sub = group.subgroup(els)
        coc = orb.get("cocycle", "trivial")
        if coc == "trivial":
            cocycle = trivial_cocycle(sub)
        elif coc == "klein-nontrivial":
            cocycle = klein_nontrivial_cocycle(sub)
        else:
            raise ConvAlgebraError(f"unknown cocycle spec {coc!r}")
        orbits.append(OrbitSpec(sub, cocycle))
    return CentrallyExtendedSet(group, orbits)


def _element_from_json(group, e):
    if isinstance(e, list):
        e = tuple(tuple(x) if isinstance(x, list) else x for x in e)
    if e not in set(group.elements):
        raise ConvAlgebraError(f"element {e!r} not in group {group.name}")
    return e


# ----- pair orbits -----------------------------------------------------------------


@dataclass
class PairOrbit:
    index: int
    base: tuple
    members: tuple
    transversal: dict  # pair -> group element tau with tau(base) = pair
    stabilizer: FiniteGroup
    cocycle: Cocycle  # on the stabilizer, from kappa2 at the base
    irreps: list[Irrep] = field(default_factory=list)


class FiniteConvAlgebra:
    """K_F(X x X) for a finite group F, as explicit data."""

    def __init__(self, xset: CentrallyExtendedSet):
        self.x = xset
        self.group = xset.group
        self._build_pair_orbits()
        self.basis = []
        for orbit in self.pair_orbits:
            for ri in range(len(orbit.irreps)):
                self.basis.append((orbit.index, ri))
        self.index = {b: i for i, b in enumerate(self.basis)}

    def kappa2(self, g, h, pair) -> Cyc:
        x, z = pair
        return self.x.kappa(g, h, x) * self.x.kappa(g, h, z).inverse()

    def _build_pair_orbits(self):
        pts = self.x.points
        pairs = [(p, q) for p in pts for q in pts]
        seen = {}
        self.pair_orbits = []
        for pair in pairs:
            if pair in seen:
                continue
            members = {}
            for g in self.group.elements:
                moved = (self.x.act(g, pair[0]), self.x.act(g, pair[1]))
                if moved not in members:
                    members[moved] = g
            base = pair
            idx = len(self.pair_orbits)
            stab_els = [g for g in self.group.elements
                        if (self.x.act(g, base[0]), self.x.act(g, base[1]))
                        == base]
            stab = self.group.subgroup(stab_els, name=f"PairStab{idx}")
            table = {(k, kp): self.kappa2(k, kp, base)
                     for k in stab.elements for kp in stab.elements}
            beta = Cocycle(stab, table, name=f"beta{idx}")
            orbit = PairOrbit(idx, base, tuple(sorted(members, key=repr)),
                              dict(members), stab, beta,
                              twisted_irreps(stab, beta))
            self.pair_orbits.append(orbit)
            for m in members:
                seen[m] = idx
        self.pair_orbit_of = seen

    # ----- stalk actions ------------------------------------------------------------

    def stalk_action(self, basis_elt, g, pair):
        """Matrix of the arrow g: stalk(pair) -> stalk(g pair) for the
        induced-module realization of a basis sheaf, together with the
        target pair."""
        oi, ri = basis_elt
        orbit = self.pair_orbits[oi]
        rep = orbit.irreps[ri]
        tau = orbit.transversal[pair]
        target = (self.x.act(g, pair[0]), self.x.act(g, pair[1]))
        tau2 = orbit.transversal[target]
        k_hat = self.group.mult(self.group.inv[tau2], self.group.mult(g, tau))
        scalar = (self.kappa2(g, tau, orbit.base)
                  * self.kappa2(tau2, k_hat, orbit.base).inverse())
        return target, _mat_scale(rep.mat[k_hat], scalar)

    # ----- Mackey convolution ----------------------------------------------------------

    def convolve(self, b1, b2) -> Counter:
        """pr_13 pushforward over stabilizer orbits of the fiber."""
        o1 = self.pair_orbits[b1[0]]
        o2 = self.pair_orbits[b2[0]]
        out = Counter()
        for o3 in self.pair_orbits:
            xbar, zbar = o3.base
            members1 = set(o1.members)
            members2 = set(o2.members)
            fiber = [y for y in self.x.points
                     if (xbar, y) in members1 and (y, zbar) in members2]
            if not fiber:
                continue
            k3 = o3.stabilizer
            remaining = set(fiber)
            while remaining:
                y = min(remaining, key=repr)
                orbit_y = {}
                for k in k3.elements:
                    ky = self.x.act(k, y)
                    if ky not in orbit_y:
                        orbit_y[ky] = k
                remaining -= set(orbit_y)
                ky_els = [k for k in k3.elements if self.x.act(k, y) == y]
                ky_group = self.group.subgroup(ky_els, name="FiberStab")
                mats = {}
                for k in ky_els:
                    _, m1 = self.stalk_action(b1, k, (xbar, y))
                    _, m2 = self.stalk_action(b2, k, (y, zbar))
                    mats[k] = _kron(m1, m2)
                induced = _twisted_induction(k3, ky_group, o3.cocycle, mats)
                from .groups import decompose_by_trace
                mult = decompose_by_trace(k3, o3.cocycle, o3.irreps, induced)
                for rep_i, m in enumerate(mult):
                    if m:
                        out[self.index[(o3.index, rep_i)]] += m
        return out

    # ----- brute-force oracle ------------------------------------------------------------

    def convolve_oracle(self, b1, b2) -> Counter:
        """Direct sheaf-level convolution: stalk at each result base is
        the direct sum over the whole fiber with its block action."""
        o1 = self.pair_orbits[b1[0]]
        o2 = self.pair_orbits[b2[0]]
        d1 = o1.irreps[b1[1]].dim
        d2 = o2.irreps[b2[1]].dim
        out = Counter()
        for o3 in self.pair_orbits:
            xbar, zbar = o3.base
            members1 = set(o1.members)
            members2 = set(o2.members)
            fiber = sorted((y for y in self.x.points
                            if (xbar, y) in members1 and (y, zbar) in members2),
                           key=repr)
            if not fiber:
                continue
            k3 = o3.stabilizer
            pos = {y: i for i, y in enumerate(fiber)}
            dim = len(fiber) * d1 * d2
            mats = {}
            for k in k3.elements:
                big = [[Cyc.rational(0)] * dim for _ in range(dim)]
                for y in fiber:
                    t1, m1 = self.stalk_action(b1, k, (xbar, y))
                    t2, m2 = self.stalk_action(b2, k, (y, zbar))
                    ky = t1[1]
                    block = _kron(m1, m2)
                    r0 = pos[ky] * d1 * d2
                    c0 = pos[y] * d1 * d2
                    for i in range(d1 * d2):
                        for j in range(d1 * d2):
                            big[r0 + i][c0 + j] = block[i][j]
                mats[k] = tuple(tuple(r) for r in big)
            _assert_projective_module(k3, o3.cocycle, mats)
            from .groups import decompose_by_trace
            mult = decompose_by_trace(k3, o3.cocycle, o3.irreps, mats)
            for rep_i, m in enumerate(mult):
                if m:
                    out[self.index[(o3.index, rep_i)]] += m
        return out

    def identity_indices(self):
        out = []
        for orbit in self.pair_orbits:
            if orbit.base[0] != orbit.base[1]:
                continue
            for ri, rep in enumerate(orbit.irreps):
                if rep.dim == 1 and all(
                        (rep.character(k) - 1).is_zero()
                        for k in orbit.stabilizer.elements):
                    out.append(self.index[(orbit.index, ri)])
                    break
            else:
                raise ConvAlgebraError("diagonal orbit has no trivial summand")
        return out


def _kron(a, b):
    n1, n2 = len(a), len(b)
    out = []
    for i1 in range(n1):
        for i2 in range(n2):
            row = []
            for j1 in range(n1):
                for j2 in range(n2):
                    row.append(a[i1][j1] * b[i2][j2])
            out.append(tuple(row))
    return tuple(out)


def _twisted_induction(big: FiniteGroup, small: FiniteGroup, beta: Cocycle,
                       mats: dict) -> dict:
    """Induce a beta|small-projective module to a beta-projective one."""
    small_set = set(small.elements)
    reps = []
    covered = set()
    for g in big.elements:
        if g in covered:
            continue
        reps.append(g)
        covered |= {big.mult(g, h) for h in small_set}
    dim_w = len(next(iter(mats.values())))
    rep_index = {}
    for j, c in enumerate(reps):
        for h in small_set:
            rep_index[big.mult(c, h)] = j
    out = {}
    n = len(reps) * dim_w
    for k in big.elements:
        big_mat = [[Cyc.rational(0)] * n for _ in range(n)]
        for j, c in enumerate(reps):
            kc = big.mult(k, c)
            j2 = rep_index[kc]
            kprime = big.mult(big.inv[reps[j2]], kc)
            scalar = beta(k, c) * beta(reps[j2], kprime).inverse()
            block = _mat_scale(mats[kprime], scalar)
            for i in range(dim_w):
                for jj in range(dim_w):
                    big_mat[j2 * dim_w + i][j * dim_w + jj] = block[i][jj]
        out[k] = tuple(tuple(r) for r in big_mat)
    _assert_projective_module(big, beta, out)
    return out


def _assert_projective_module(group, cocycle, mats):
    for g in group.elements:
        for h in group.elements:
            lhs = _mat_mul(mats[g], mats[h])
            rhs = _mat_scale(mats[group.mult(g, h)], cocycle(g, h))
            if not all(x == y for ra, rb in zip(lhs, rhs)
                       for x, y in zip(ra, rb)):
                raise ConvAlgebraError("module violates the cocycle relation")


# ----- based-algebra assembly ---------------------------------------------------------


def build_conv_algebra(spec: RepRingSpec, xdesc, bound: int = 0,
                       oracle: bool = False, name: str = "") -> BasedAlgebra:
    """The based algebra K_F(X x X), truncated by the irrep-label bound
    for connected reductive F (finite F is always complete)."""
    if spec.kind == "connected_reductive":
        return _reductive_conv_algebra(spec, xdesc, bound, name)
    if spec.kind != "finite" and spec.kind != "twisted_finite":
        raise ConvAlgebraError(
            "conv algebras need a finite group or a connected reductive one")
    if not isinstance(xdesc, CentrallyExtendedSet):
        xdesc = set_from_json(spec.group, xdesc)
    alg = FiniteConvAlgebra(xdesc)
    conv = alg.convolve_oracle if oracle else alg.convolve
    sc = {}
    n = len(alg.basis)
    for i in range(n):
        for j in range(n):
            row = conv(alg.basis[i], alg.basis[j])
            if row:
                sc[(i, j)] = dict(sorted(row.items()))
    labels = []
    for oi, ri in alg.basis:
        orbit = alg.pair_orbits[oi]
        labels.append(f"O{oi}:{orbit.irreps[ri].label}")
    xorbit = []
    for oi, ri in alg.basis:
        base = alg.pair_orbits[oi].base
        xorbit.append((base[0][0], base[1][0]))
    return BasedAlgebra(
        name=name or f"K[{spec.name};|X|={xdesc.size}]",
        labels=tuple(labels),
        sc=sc,
        complete={(i, j) for i in range(n) for j in range(n)},
        distinguished=frozenset(alg.identity_indices()),
        row_of=tuple(r for r, _ in xorbit),
        col_of=tuple(c for _, c in xorbit),
        order_key=tuple((alg.basis[i][0], alg.pair_orbits[alg.basis[i][0]]
                         .irreps[alg.basis[i][1]].dim, alg.basis[i][1])
                        for i in range(n)),
        meta={"kind": "conv-finite", "group": spec.name,
              "points": xdesc.size, "oracle": bool(oracle)},
    )


def _reductive_conv_algebra(spec: RepRingSpec, xdesc, bound: int,
                            name: str) -> BasedAlgebra:
    # a connected group acting on a finite set acts trivially, and for the
    # simply connected kinds every central G_m-extension of F splits, so
    # the points are plain and each block carries all labels up to bound
    fusion = spec.fusion
    npts = _points_from_desc(xdesc)
    labels_all = fusion.labels_up_to(bound)
    basis = [(i, j, lab) for i in range(npts) for j in range(npts)
             for lab in labels_all]
    index = {b: k for k, b in enumerate(basis)}
    allowed = set(labels_all)
    sc = {}
    complete = set()
    for a, (i, j, v) in enumerate(basis):
        for b, (k, l, w) in enumerate(basis):
            if j != k:
                complete.add((a, b))
                continue
            fus = fusion.tensor(v, w)
            row = {}
            ok = True
            for lab, m in fus.items():
                if lab in allowed:
                    row[index[(i, l, lab)]] = m
                else:
                    ok = False
            if row:
                sc[(a, b)] = row
            if ok:
                complete.add((a, b))
    dist = frozenset(index[(i, i, fusion.unit())] for i in range(npts))
    return BasedAlgebra(
        name=name or f"M{npts}(Rep {fusion.name};<= {bound})",
        labels=tuple(f"E{i}{j}*{fusion.label_str(v)}" for i, j, v in basis),
        sc=sc,
        complete=complete,
        distinguished=dist,
        row_of=tuple(i for i, _, _ in basis),
        col_of=tuple(j for _, j, _ in basis),
        order_key=tuple((labels_all.index(v), i, j) for i, j, v in basis),
        meta={"kind": "conv-reductive", "fusion": fusion.name,
              "points": npts, "bound": bound},
    )


def _points_from_desc(xdesc) -> int:
    if isinstance(xdesc, int):
        return xdesc
    if isinstance(xdesc, dict):
        pts = xdesc.get("points")
        if isinstance(pts, int):
            return pts
        if isinstance(pts, list):
            for p in pts:
                if isinstance(p, dict) and p.get("sector", 0):
                    raise ConvAlgebraError(
                        "connected kinds admit no extended points")
            return len(pts)
    raise ConvAlgebraError("bad point description for a reductive group")


def target_from_json(data: dict, bound: int, oracle: bool = False):
    """Build (spec, BasedAlgebra) from a target description file."""
    from .repring import spec_from_json
    spec = spec_from_json(data["fusion"])
    if spec.kind == "connected_reductive":
        alg = build_conv_algebra(spec, data["set"], bound)
    else:
        xset = set_from_json(spec.group, data["set"])
        alg = build_conv_algebra(spec, xset, bound, oracle=oracle)
    return spec, alg
