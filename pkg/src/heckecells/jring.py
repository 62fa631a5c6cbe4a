"""The asymptotic ring on a ball: t-basis products, truncated unit,
cell subalgebras, and the intersection-witness search for pairs of left
cells in one two-sided cell.

All products are read from the gamma-table of a `CellTables` bundle:

    t_x t_y = sum_u gamma_{x,y,u^-1} t_u.

A product is certified complete when the full support of C_x C_y lies in
the region where the a-function is stabilized, so the stored row is the
whole product.  Incomplete rows are still exact termwise (coefficients
are never wrong, only possibly missing), which together with positivity
lets nonzero-ness be certified from partial data.
"""

from __future__ import annotations

from .based import BasedAlgebra
from .cells import Cell, CellTables, InvariantViolation, UnstabilizedError


class JElt:
    """Integer combination of t-basis symbols, keyed by big-ball ids."""

    __slots__ = ("tables", "coeffs")

    def __init__(self, tables: CellTables, coeffs=None):
        self.tables = tables
        self.coeffs = {k: int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def basis(cls, tables: CellTables, el) -> "JElt":
        return cls(tables, {tables._to_id(el): 1})

    def __add__(self, other: "JElt") -> "JElt":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                del out[k]
        return JElt(self.tables, out)

    def __eq__(self, other):
        return isinstance(other, JElt) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        terms = " + ".join(
            (f"{v}*" if v != 1 else "") + f"t[{self.tables.ball.word_string(k)}]"
            for k, v in sorted(self.coeffs.items()))
        return terms or "0"


def j_mul(a: JElt, b: JElt) -> tuple[JElt, bool]:
    """Bilinear product with a completeness certificate."""
    tables = a.tables
    if tables is not b.tables:
        raise ValueError("operands live over different tables")
    out: dict[int, int] = {}
    complete = True
    for x, cx in a.coeffs.items():
        for y, cy in b.coeffs.items():
            if x >= tables.n_L or y >= tables.n_L:
                complete = False
                continue
            if not tables.pair_complete(x, y):
                complete = False
            for u, g in tables.jcoeff.get((x, y), {}).items():
                w = out.get(u, 0) + cx * cy * g
                if w:
                    out[u] = w
                else:
                    del out[u]
    return JElt(tables, out), complete


def truncated_unit(tables: CellTables) -> JElt:
    """Sum of t_d over the distinguished involutions found on the ball."""
    return JElt(tables, {d: 1 for d in tables.dist_involutions})


def cell_orthogonality_check(tables: CellTables) -> dict:
    """Assert gamma_{x,y,.} = 0 across distinct two-sided cells.

    Only complete products between stabilized cells are binding; a
    violation raises with the offending triple.
    """
    dec = tables.decomposition
    of = dec.two_sided_of
    checked = 0
    for x in range(tables.n_L):
        cx = dec.two_sided_cells[of[x]]
        for y in range(tables.n_L):
            cy = dec.two_sided_cells[of[y]]
            if cx.cid == cy.cid:
                continue
            if not (cx.stabilized and cy.stabilized
                    and tables.pair_complete(x, y)):
                continue
            checked += 1
            row = tables.jcoeff.get((x, y))
            if row:
                u = next(iter(row))
                raise InvariantViolation(
                    "nonzero gamma across two-sided cells at "
                    f"({tables.ball.word_string(x)}, "
                    f"{tables.ball.word_string(y)}, "
                    f"{tables.ball.word_string(u)})")
    return {"cross_cell_pairs_checked": checked, "violations": 0}


def gamma_cyclic_report(tables: CellTables) -> list:
    """Diagnostic: gamma_{x,y,z} = gamma_{y,z,x}, observed not assumed."""
    mismatches = []
    inv = tables.inv
    for (x, y), row in tables.jcoeff.items():
        for u, g in row.items():
            z = int(inv[u])  # gamma_{x,y,z} with z = u^-1
            if z >= tables.n_L or not tables.a_stable[u]:
                continue
            other = tables.jcoeff.get((y, z), {}).get(int(inv[x]), 0)
            if int(inv[x]) < tables.n_big and not tables.a_stable[int(inv[x])]:
                continue
            if x >= tables.n_L or other != g:
                mismatches.append((x, y, z, g, other))
    return mismatches


def lemma_witness(tables: CellTables, gamma1: Cell, gamma2: Cell):
    """An element of Gamma1 intersect (Gamma2)^-1 for left cells in one
    two-sided cell, found by searching y with t_w t_y t_w' != 0.

    Returns (ball id, "found") or (None, "inconclusive"); exhaustion of
    the ball is never a refutation.
    """
    if gamma1.kind != "left" or gamma2.kind != "left":
        raise ValueError("witness search expects left cells")
    dec = tables.decomposition
    if (dec.two_sided_of[gamma1.members[0]]
            != dec.two_sided_of[gamma2.members[0]]):
        raise ValueError("left cells lie in different two-sided cells")
    if not (gamma1.stabilized and gamma2.stabilized):
        raise UnstabilizedError("witness search needs stabilized cells")
    w = min(gamma1.members, key=lambda m: (tables.lengths[m], m))
    wp = min((int(tables.inv[m]) for m in gamma2.members),
             key=lambda m: (tables.lengths[m], m))
    for y in sorted(range(tables.n_L), key=lambda m: (tables.lengths[m], m)):
        first = tables.jcoeff.get((w, y))
        if not first:
            continue
        total = 0
        for u, c in first.items():
            if u >= tables.n_L:
                continue
            row2 = tables.jcoeff.get((u, wp))
            if row2:
                total += c * sum(row2.values())
        if total == 0:
            continue
        # positivity certifies t_w t_y t_w' != 0 from the partial sum
        witness = int(tables.inv[y])
        if (dec.left_of.get(witness) == gamma1.cid
                and dec.left_of.get(y) == gamma2.cid):
            return witness, "found"
    return None, "inconclusive"


def j_cell_algebra(tables: CellTables, cell: Cell,
                   name: str | None = None) -> BasedAlgebra:
    """The cell subalgebra as a based algebra.

    Basis: cell members on the radius-L ball.  Row blocks are left cells,
    column blocks right cells.  A pair is complete when its gamma-row is
    certified complete and supported inside the cell basis.
    """
    if not (cell.stabilized and cell.a_stabilized):
        raise UnstabilizedError("cell subalgebra requires a stabilized cell")
    dec = tables.decomposition
    members = sorted(cell.members, key=lambda m: (tables.lengths[m], m))
    index = {m: i for i, m in enumerate(members)}
    row_ids = sorted({dec.left_of[m] for m in members})
    col_ids = sorted({dec.right_of[m] for m in members})
    row_map = {r: i for i, r in enumerate(row_ids)}
    col_map = {c: i for i, c in enumerate(col_ids)}
    sc = {}
    complete = set()
    member_set = set(members)
    for xi, x in enumerate(members):
        for yi, y in enumerate(members):
            row = tables.jcoeff.get((x, y), {})
            inside = {index[u]: g for u, g in row.items() if u in member_set}
            if inside:
                sc[(xi, yi)] = inside
            if (tables.pair_complete(x, y)
                    and all(u in member_set for u in row)):
                complete.add((xi, yi))
    dist = frozenset(index[d] for d in tables.dist_involutions
                     if d in member_set)
    return BasedAlgebra(
        name=name or f"J[{tables.datum.key()};cell{cell.cid};L={tables.L}]",
        labels=tuple(tables.ball.word_string(m) for m in members),
        sc=sc,
        complete=complete,
        distinguished=dist,
        row_of=tuple(row_map[dec.left_of[m]] for m in members),
        col_of=tuple(col_map[dec.right_of[m]] for m in members),
        order_key=tuple((int(tables.lengths[m]), m) for m in members),
        meta={
            "kind": "jring-cell",
            "datum": tables.datum.key(),
            "radius": tables.L,
            "extended": tables.extended,
            "cell": cell.cid,
            "a_value": cell.a_value,
            "members": [tables.ball.word_string(m) for m in members],
        },
    )
