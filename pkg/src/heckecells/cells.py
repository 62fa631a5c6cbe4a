"""Cell structure of a length ball: preorders, cells, a-function, gamma.

Everything is derived from one `CellTables` bundle.  Its working ball has
radius 2L so that every product C_x C_y with l(x), l(y) <= L has full
support inside it; the reported objects live on the radius-L sub-ball.

Preorder edges come from two exact sources: generator multiplications
(read off the mu-table, no products formed) and the supports of the
products C_x C_y over pairs in the ball, since h_{x,y,z} != 0 forces
z <=_L y and z <=_R x.  Generator edges alone leave ball-truncation
artifacts (left cells of the lowest cell split at moderate radii), while
the product-support edges restore the connections without any inexact
step.  Cells are the strongly connected components; a cell counts as
stabilized when its partition agrees with the one recomputed at radius
L-2 from pairs of that smaller ball.

The a-function is the ball maximum of deg_v h_{x,y,z} over pairs in the
radius-L ball (h is bar-symmetric, so the v- and v^-1-degrees agree),
tracked simultaneously for radius L-2 to get per-element stabilization
flags.  gamma values are the coefficients of v^{a(z)} in h_{x,y,z},
stored as the multiplication table t_x t_y = sum_u gamma_{x,y,u^-1} t_u.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .hecke import KLTable
from .weyl import Ball, RootDatum, WeylElement, WeylError


class CellError(Exception):
    pass


class UnstabilizedError(CellError):
    pass


class InvariantViolation(CellError):
    """An exact structural property failed; results cannot be trusted."""


@dataclass
class Cell:
    cid: int
    kind: str  # "left" | "right" | "two_sided"
    members: tuple[int, ...]  # big-ball ids, sorted
    stabilized: bool
    a_value: int | None = None
    a_stabilized: bool = False


@dataclass
class CellDecomposition:
    radius: int
    left_cells: list[Cell]
    right_cells: list[Cell]
    two_sided_cells: list[Cell]
    left_of: dict[int, int] = field(repr=False, default_factory=dict)
    right_of: dict[int, int] = field(repr=False, default_factory=dict)
    two_sided_of: dict[int, int] = field(repr=False, default_factory=dict)


def _tarjan_scc(n_nodes, successors):
    """Iterative Tarjan; components listed in deterministic order."""
    index = [None] * n_nodes
    low = [0] * n_nodes
    on_stack = [False] * n_nodes
    stack = []
    sccs = []
    counter = 0
    for root in range(n_nodes):
        if index[root] is not None:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if index[nxt] is None:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, iter(successors(nxt))))
                    advanced = True
                    break
                elif on_stack[nxt]:
                    if index[nxt] < low[node]:
                        low[node] = index[nxt]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == node:
                        break
                sccs.append(sorted(comp))
    sccs.sort(key=lambda c: c[0])
    return sccs


class CellTables:
    """Cells, a-function and gamma-table of a radius-L ball."""

    def __init__(self, datum: RootDatum, L: int, extended: bool = False,
                 cache=None, threads: int = 1, with_gamma: bool = True):
        if L < 2:
            raise CellError("need radius at least 2 for stabilization tracking")
        self.datum = datum
        self.L = L
        self.extended = extended
        self.with_gamma = with_gamma
        self.ball = Ball(datum, 2 * L, extended=extended)
        self.table = KLTable(self.ball, cache=cache)
        self.kernel = self.table.kernel()
        self.n_big = self.ball.size
        self.lengths = np.array(self.ball.lengths, dtype=np.int64)
        self.inv = np.array(self.ball.inverse, dtype=np.int64)
        self.n_L = int(np.searchsorted(self.lengths, L + 1))
        self.n_Lm2 = int(np.searchsorted(self.lengths, L - 1))
        self._omega_identity_slot = self.ball.omega_of[
            self.ball.id_of[datum.identity]]
        self._recursion = self._prepare_recursion()
        self._generator_edges()
        self.a_raw = None
        self.a_stable = None
        self.jcoeff = {}
        self.complete_pairs = None
        self.dist_involutions = None
        if with_gamma:
            self._scan_a(threads)
            self._scan_gamma(threads)
        self.decomposition = self._build_cells()
        if with_gamma:
            self._attach_a_values()
            self._find_distinguished()

    # ----- preorder edges ----------------------------------------------------

    def _generator_edges(self):
        """x <=_L y edges with x in the support of C_g C_y, g a generator."""
        ball = self.ball
        nslots = len(self.datum.simple_reflections)
        left_succ = [set() for _ in range(self.n_L)]
        right_succ = [set() for _ in range(self.n_L)]
        for y in range(self.n_L):
            for slot in range(nslots):
                sy = ball.left_mul[y][slot]
                if 0 <= sy < self.n_L and ball.lengths[sy] > ball.lengths[y]:
                    left_succ[y].add(sy)
                ys = ball.right_mul[y][slot]
                if 0 <= ys < self.n_L and ball.lengths[ys] > ball.lengths[y]:
                    right_succ[y].add(ys)
        for (u, w), m in self.table.mu.items():
            if w >= self.n_L or u >= self.n_L:
                continue
            for slot in range(nslots):
                su = self.ball.left_mul[u][slot]
                if su >= 0 and self.ball.lengths[su] < self.ball.lengths[u]:
                    sw = self.ball.left_mul[w][slot]
                    if not (sw >= 0 and self.ball.lengths[sw] < self.ball.lengths[w]):
                        left_succ[w].add(u)
                us = self.ball.right_mul[u][slot]
                if us >= 0 and self.ball.lengths[us] < self.ball.lengths[u]:
                    ws = self.ball.right_mul[w][slot]
                    if not (ws >= 0 and self.ball.lengths[ws] < self.ball.lengths[w]):
                        right_succ[w].add(u)
        for om_slot in range(self.ball.omega_slot_count()):
            if om_slot == self._omega_identity_slot:
                continue
            lp = self.table._omega_left[om_slot]
            rp = self.table._omega_right[om_slot]
            for y in range(self.n_L):
                if 0 <= lp[y] < self.n_L:
                    left_succ[y].add(int(lp[y]))
                if 0 <= rp[y] < self.n_L:
                    right_succ[y].add(int(rp[y]))
        self._left_succ = left_succ
        self._right_succ = right_succ
        # independent edge copies for the radius-(L-2) comparison run
        self._left_succ_m2 = [set(x for x in s if x < self.n_Lm2)
                              for s in left_succ[:self.n_Lm2]]
        self._right_succ_m2 = [set(x for x in s if x < self.n_Lm2)
                               for s in right_succ[:self.n_Lm2]]

    # ----- structure-constant scans -----------------------------------------

    def _prepare_recursion(self):
        """(slot, parent, corrections) per W-part element of the small ball."""
        ball = self.ball
        plan = {}
        order = []
        for y in range(self.n_L):
            if ball.omega_of[y] != self._omega_identity_slot:
                continue
            order.append(y)
            if ball.lengths[y] == 0:
                plan[y] = None
                continue
            slot = next(s for s in range(len(self.datum.simple_reflections))
                        if ball.right_mul[y][s] >= 0
                        and ball.lengths[ball.right_mul[y][s]] < ball.lengths[y])
            parent = ball.right_mul[y][slot]
            plan[y] = (slot, parent, self.kernel.corrections(parent, slot))
        order.sort(key=lambda y: (ball.lengths[y], y))
        self._w_order = order
        self._omega_translates = {}
        for om_slot in range(ball.omega_slot_count()):
            if om_slot == self._omega_identity_slot:
                continue
            self._omega_translates[om_slot] = self.table._omega_right[om_slot]
        return plan

    def _states_for_x(self, x: int):
        """Yield (y, state) with state = C_x C_y in the C-basis."""
        k = self.kernel
        store = {}
        for y in self._w_order:
            plan = self._recursion[y]
            if plan is None:
                state = k.seed(x)
            else:
                slot, parent, corr = plan
                state = k.mul_cs(store[parent], slot)
                for u, m in corr:
                    state = state - m * store[u]
            store[y] = state
            yield y, state
            for om_slot, perm in self._omega_translates.items():
                yom = perm[y]
                if 0 <= yom < self.n_L:
                    yield int(yom), k.mul_omega(state, om_slot)

    def _scan_a(self, threads: int):
        levels = (self.L, self.L - 2)
        off = self.table.off

        def scan(x):
            local = {lev: np.full(self.n_big, -1, dtype=np.int64)
                     for lev in levels}
            lx = self.lengths[x]
            for y, state in self._states_for_x(x):
                body = state[:self.n_big]
                nz = body != 0
                rows = np.nonzero(nz.any(axis=1))[0]
                if not len(rows):
                    continue
                sub = nz[rows]
                maxexp = (self.table.D - 1 - sub[:, ::-1].argmax(axis=1)) - off
                minexp = sub.argmax(axis=1) - off
                if not np.array_equal(minexp, -maxexp):
                    raise InvariantViolation("h_{x,y,z} is not bar-symmetric")
                level = max(lx, self.lengths[y])
                for lev in levels:
                    if level <= lev:
                        np.maximum.at(local[lev], rows, maxexp)
            return x, local

        results = self._run_over_x(scan, threads)
        amax = {lev: np.full(self.n_big, -1, dtype=np.int64) for lev in levels}
        for _x, local in results:
            for lev in levels:
                np.maximum(amax[lev], local[lev], out=amax[lev])
        a_full = amax[self.L]
        a_prev = amax[self.L - 2]
        for z in range(self.n_L):
            zi = int(self.inv[z])
            if zi < self.n_L and a_full[z] != a_full[zi]:
                raise InvariantViolation("a(z) != a(z^-1) on the ball")
        self.a_raw = a_full
        stable = np.zeros(self.n_big, dtype=bool)
        stable[:self.n_Lm2] = (a_full[:self.n_Lm2] >= 0) & (
            a_full[:self.n_Lm2] == a_prev[:self.n_Lm2])
        self.a_stable = stable

    def _scan_gamma(self, threads: int):
        off = self.table.off
        a_full = self.a_raw
        stable = self.a_stable
        lm2 = self.L - 2

        def scan(x):
            out_rows = {}
            out_complete = np.zeros(self.n_L, dtype=bool)
            supports = {}
            lx = self.lengths[x]
            for y, state in self._states_for_x(x):
                body = state[:self.n_big]
                nz = body != 0
                rows = np.nonzero(nz.any(axis=1))[0]
                if not len(rows):
                    out_complete[y] = True
                    continue
                sub = nz[rows]
                maxexp = (self.table.D - 1 - sub[:, ::-1].argmax(axis=1)) - off
                out_complete[y] = bool(stable[rows].all())
                # the coefficient of t_u in t_x t_y is the top coefficient
                # of h_{x,y,u} (rows are bar-symmetric); readouts are only
                # trustworthy where a(u) is stabilized, so incomplete
                # products can miss terms but never contain wrong ones
                hits = rows[(maxexp == a_full[rows]) & stable[rows]]
                if len(hits):
                    vals = body[hits, a_full[hits] + off]
                    if vals.min() < 0:
                        raise InvariantViolation("negative gamma coefficient")
                    out_rows[y] = {int(z): int(c) for z, c in zip(hits, vals)}
                supports[y] = (max(lx, self.lengths[y]),
                               rows[rows < self.n_L].astype(np.int64))
            return x, out_rows, out_complete, supports

        results = self._run_over_x(scan, threads)
        jcoeff = {}
        complete = np.zeros((self.n_L, self.n_L), dtype=bool)
        for x, out_rows, out_complete, supports in results:
            complete[x] = out_complete
            for y, trow in out_rows.items():
                jcoeff[(x, y)] = trow
            for y, (level, rows) in supports.items():
                self._left_succ[y].update(int(z) for z in rows)
                self._right_succ[x].update(int(z) for z in rows)
                if level <= lm2:
                    small = (int(z) for z in rows if z < self.n_Lm2)
                    self._left_succ_m2[y].update(small)
                    self._right_succ_m2[x].update(
                        int(z) for z in rows if z < self.n_Lm2)
        self.jcoeff = jcoeff
        self.complete_pairs = complete

    def _run_over_x(self, fn, threads):
        xs = list(range(self.n_L))
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as ex:
                results = list(ex.map(fn, xs))
        else:
            results = [fn(x) for x in xs]
        results.sort(key=lambda t: t[0])
        return results

    # ----- cells ---------------------------------------------------------------

    def _build_cells(self) -> CellDecomposition:
        def runs(n, left, right):
            def succ_left(y):
                return [x for x in left[y] if x < n]

            def succ_right(y):
                return [x for x in right[y] if x < n]

            def succ_both(y):
                return [x for x in left[y] | right[y] if x < n]

            return tuple(_tarjan_scc(n, f)
                         for f in (succ_left, succ_right, succ_both))

        parts_L = runs(self.n_L, self._left_succ, self._right_succ)
        parts_m2 = runs(self.n_Lm2, self._left_succ_m2, self._right_succ_m2)
        lists = []
        maps = []
        for kind_idx, kind in enumerate(("left", "right", "two_sided")):
            small = {frozenset(c) for c in parts_m2[kind_idx]}
            cells = []
            of = {}
            for cid, members in enumerate(parts_L[kind_idx]):
                trace = frozenset(m for m in members if m < self.n_Lm2)
                stab = bool(trace) and trace in small
                cells.append(Cell(cid, kind, tuple(members), stab))
                for m in members:
                    of[m] = cid
            lists.append(cells)
            maps.append(of)
        return CellDecomposition(self.L, lists[0], lists[1], lists[2],
                                 maps[0], maps[1], maps[2])

    def leq_left(self, x: int, y: int) -> bool:
        """x <=_L y on the radius-L ball (transitive closure)."""
        return self._leq(x, y, "left")

    def leq_right(self, x: int, y: int) -> bool:
        return self._leq(x, y, "right")

    def _leq(self, x, y, kind):
        attr = f"_reach_{kind}"
        reach = getattr(self, attr, None)
        if reach is None:
            reach = self._materialize_reach(kind)
            setattr(self, attr, reach)
        dec = self.decomposition
        of = dec.left_of if kind == "left" else dec.right_of
        return bool(reach[of[y]] >> of[x] & 1)

    def _materialize_reach(self, kind):
        dec = self.decomposition
        if kind == "left":
            cells, of, succ = dec.left_cells, dec.left_of, self._left_succ
        else:
            cells, of, succ = dec.right_cells, dec.right_of, self._right_succ
        ncells = len(cells)
        cell_succ = [set() for _ in range(ncells)]
        for y in range(self.n_L):
            for x in succ[y]:
                if x < self.n_L and of[x] != of[y]:
                    cell_succ[of[y]].add(of[x])
        reach = [1 << i for i in range(ncells)]
        changed = True
        while changed:
            changed = False
            for c in range(ncells):
                acc = reach[c]
                for d in cell_succ[c]:
                    acc |= reach[d]
                if acc != reach[c]:
                    reach[c] = acc
                    changed = True
        return reach

    # ----- a, gamma, distinguished involutions ---------------------------------

    def _attach_a_values(self):
        dec = self.decomposition
        for cell in dec.two_sided_cells:
            vals = {int(self.a_raw[m]) for m in cell.members}
            stab = all(bool(self.a_stable[m]) for m in cell.members
                       if m < self.n_Lm2) and any(m < self.n_Lm2
                                                  for m in cell.members)
            if cell.stabilized and stab and len(vals) != 1:
                raise InvariantViolation(
                    "a-function not constant on a stabilized two-sided cell")
            cell.a_value = max(vals)
            cell.a_stabilized = stab and len(vals) == 1

    def a_function(self, z) -> tuple[int, bool]:
        """(a(z), stabilized) for a ball id or WeylElement."""
        zid = self._to_id(z)
        if zid >= self.n_L:
            raise UnstabilizedError("element beyond the reported radius")
        return int(self.a_raw[zid]), bool(self.a_stable[zid])

    def gamma(self, x, y, z) -> int:
        """gamma_{x,y,z}; refuses values whose a-input is not stabilized."""
        xid, yid, zid = (self._to_id(t) for t in (x, y, z))
        zinv = int(self.inv[zid])
        if not self.a_stable[zinv]:
            raise UnstabilizedError("a(z^-1) not stabilized on this ball")
        return self.jcoeff.get((xid, yid), {}).get(zinv, 0)

    def t_product(self, xid: int, yid: int) -> dict[int, int]:
        """Coefficients of t_x t_y in the t-basis (big-ball ids)."""
        return dict(self.jcoeff.get((xid, yid), {}))

    def pair_complete(self, xid: int, yid: int) -> bool:
        return bool(self.complete_pairs[xid, yid])

    def _to_id(self, z) -> int:
        if isinstance(z, WeylElement):
            zid = self.ball.id_of.get(z)
            if zid is None:
                raise WeylError("element outside the working ball")
            return zid
        return int(z)

    def _find_distinguished(self):
        """The unique involution d per stabilized left cell with
        gamma_{x^-1, x, d} != 0 for every x in the cell.

        Two candidates in one left cell contradict the uniqueness property
        and abort.  Zero candidates abort only when the whole cell sits in
        the a-stabilized region (then the involution had to be visible);
        otherwise the cell's involution is recorded as undetected, which
        downstream queries report as unstabilized rather than wrong.
        """
        dec = self.decomposition
        dist = set()
        self.dist_by_left_cell = {}
        self.dist_undetected_left_cells = set()
        for cell in dec.left_cells:
            if not cell.stabilized:
                continue
            two = dec.two_sided_cells[dec.two_sided_of[cell.members[0]]]
            if not (two.stabilized and two.a_stabilized):
                continue
            candidates = []
            for d in cell.members:
                if int(self.inv[d]) != d or not self.a_stable[d]:
                    continue
                ok = True
                for x in cell.members:
                    xi = int(self.inv[x])
                    if self.jcoeff.get((xi, x), {}).get(d, 0) == 0:
                        ok = False
                        break
                if ok:
                    candidates.append(d)
            if len(candidates) > 1:
                raise InvariantViolation(
                    f"left cell {cell.cid} has {len(candidates)} distinguished "
                    f"involution candidates: "
                    f"{[self.ball.word_string(c) for c in candidates]}")
            if not candidates:
                if all(bool(self.a_stable[m]) for m in cell.members):
                    raise InvariantViolation(
                        f"stabilized left cell {cell.cid} has no distinguished "
                        "involution candidate")
                self.dist_undetected_left_cells.add(cell.cid)
                continue
            dist.add(candidates[0])
            self.dist_by_left_cell[cell.cid] = candidates[0]
        self.dist_involutions = frozenset(dist)

    def distinguished_involutions(self, two_sided_cell: Cell) -> set[int]:
        if not (two_sided_cell.stabilized and two_sided_cell.a_stabilized):
            raise UnstabilizedError("cell not stabilized at this radius")
        member_set = set(two_sided_cell.members)
        for cid in self.dist_undetected_left_cells:
            if self.decomposition.left_cells[cid].members[0] in member_set:
                raise UnstabilizedError(
                    "a left cell of this two-sided cell has an undetected "
                    "distinguished involution at this radius")
        return {d for d in self.dist_involutions if d in member_set}

    def canonical_left_cell(self, two_sided_cell: Cell) -> tuple[int, ...]:
        """Members of the cell that are minimal coset representatives."""
        mins = tuple(m for m in two_sided_cell.members if self.ball.min_rep[m])
        if two_sided_cell.stabilized and mins:
            cids = {self.decomposition.left_of[m] for m in mins}
            if len(cids) != 1:
                raise InvariantViolation(
                    "minimal representatives meet several left cells")
        return mins

    def canonical_distinguished(self, two_sided_cell: Cell) -> int:
        dset = self.distinguished_involutions(two_sided_cell)
        mins = [d for d in dset if self.ball.min_rep[d]]
        if len(mins) != 1:
            raise InvariantViolation("canonical distinguished involution "
                                     "is not unique")
        return mins[0]

    # ----- selectors ------------------------------------------------------------

    def two_sided_cell_of(self, el) -> Cell:
        return self.decomposition.two_sided_cells[
            self.decomposition.two_sided_of[self._to_id(el)]]

    def lowest_cell(self) -> Cell:
        """The stabilized two-sided cell with the maximal a-value."""
        best = None
        for cell in self.decomposition.two_sided_cells:
            if not (cell.stabilized and cell.a_stabilized):
                continue
            if best is None or cell.a_value > best.a_value:
                best = cell
        if best is None:
            raise UnstabilizedError("no stabilized two-sided cell found")
        if best.a_value != self.datum.n_pos:
            raise UnstabilizedError(
                "lowest cell not stabilized at this radius: maximal "
                "stabilized a-value differs from the positive-root count")
        return best

    def cell_by_selector(self, selector: str) -> Cell:
        if selector == "lowest":
            return self.lowest_cell()
        if selector in ("e", "identity"):
            return self.two_sided_cell_of(self.ball.id_of[self.datum.identity])
        from .weyl import parse_element
        return self.two_sided_cell_of(
            self.ball.id_of[parse_element(self.datum, selector)])


def build_cell_tables(datum: RootDatum, L: int, extended: bool = False,
                      cache=None, threads: int = 1,
                      with_gamma: bool = True) -> CellTables:
    return CellTables(datum, L, extended=extended, cache=cache,
                      threads=threads, with_gamma=with_gamma)
