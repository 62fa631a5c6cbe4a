"""The affine Hecke algebra over Z[v, v^-1] and its canonical basis.

Normalization ("soergel-v1"): the standard basis H_w satisfies

    H_w H_w' = H_{ww'}            when lengths add,
    (H_s + v)(H_s - v^-1) = 0     for simple reflections s,

and the canonical basis element C_w is the unique bar-invariant element
C_w = sum_y p_{y,w} H_y with p_{w,w} = 1 and p_{y,w} in v*Z[v] for y != w;
all p-coefficients are nonnegative.  In particular C_s = H_s + v and
mu(y, w) is the coefficient of v^1 in p_{y,w}.  (The variable is the
inverse of the one in the other common normalization; structure-constant
polynomials h_{x,y,z} are bar-symmetric, so the a-function and all
leading coefficients are the same under either choice.)

Two representations coexist: `HeckeElt` is a plain sparse map from group
elements to Laurent polynomials (convenient, exact, slow), while
`KLTable` stores the canonical-basis rows of a whole ball as integer
arrays with an exponent axis (offset-encoded Laurent polynomials), which
is what every large table build runs on.
"""

from __future__ import annotations

import numpy as np

from .laurent import LaurentPoly
from .weyl import Ball, MixedDatumError, RootDatum, WeylElement, WeylError

COEFF_LIMIT = 1 << 40  # guard against silent int64 overflow


class HeckeError(Exception):
    pass


class OutsideBallError(HeckeError):
    pass


class PositivityError(HeckeError):
    """A canonical-basis quantity came out with a negative coefficient."""


class HeckeElt:
    """Sparse map WeylElement -> LaurentPoly; zero values are dropped."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: RootDatum, terms=None):
        self.datum = datum
        self.terms: dict[WeylElement, LaurentPoly] = {}
        if terms:
            for w, p in (terms.items() if isinstance(terms, dict) else terms):
                if p:
                    self.terms[w] = p

    @classmethod
    def basis(cls, datum: RootDatum, w: WeylElement, coeff=None) -> "HeckeElt":
        return cls(datum, {w: coeff if coeff is not None else LaurentPoly.one()})

    @classmethod
    def unit(cls, datum: RootDatum) -> "HeckeElt":
        return cls.basis(datum, datum.identity)

    def copy(self) -> "HeckeElt":
        return HeckeElt(self.datum, dict(self.terms))

    def add_term(self, w: WeylElement, p: LaurentPoly):
        q = self.terms.get(w)
        q = p if q is None else q + p
        if q:
            self.terms[w] = q
        else:
            self.terms.pop(w, None)

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        out = self.copy()
        for w, p in other.terms.items():
            out.add_term(w, p)
        return out

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        out = self.copy()
        for w, p in other.terms.items():
            out.add_term(w, -p)
        return out

    def scale(self, p: LaurentPoly) -> "HeckeElt":
        return HeckeElt(self.datum, {w: q * p for w, q in self.terms.items()})

    def coeff(self, w: WeylElement) -> LaurentPoly:
        return self.terms.get(w, LaurentPoly.zero())

    def support(self):
        return set(self.terms)

    def __eq__(self, other):
        return (isinstance(other, HeckeElt) and self.datum is other.datum
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def specialize_v1(self) -> dict[WeylElement, int]:
        """Image in the group algebra under v -> 1."""
        out = {}
        for w, p in self.terms.items():
            val = p(1)
            if val:
                out[w] = val
        return out

    def __repr__(self):
        if not self.terms:
            return "HeckeElt(0)"
        bits = [f"({p})*H[{w.wf},{w.tr}]" for w, p in list(self.terms.items())[:6]]
        more = "..." if len(self.terms) > 6 else ""
        return "HeckeElt(" + " + ".join(bits) + more + ")"


def _mul_gen_right(a: HeckeElt, s: WeylElement) -> HeckeElt:
    """a * H_s for a simple reflection s."""
    d = a.datum
    v_minus = LaurentPoly({-1: 1, 1: -1})  # H_s^2 = 1 + (v^-1 - v) H_s
    out = HeckeElt(d)
    for w, p in a.terms.items():
        ws = w * s
        out.add_term(ws, p)
        if d.length(ws) < d.length(w):
            out.add_term(w, p * v_minus)
    return out


def _mul_omega_right(a: HeckeElt, om: WeylElement) -> HeckeElt:
    return HeckeElt(a.datum, {w * om: p for w, p in a.terms.items()})


def h_mul(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product in the standard basis, by splitting b into generator words."""
    if a.datum is not b.datum:
        raise MixedDatumError("operands live over different root data")
    d = a.datum
    out = HeckeElt(d)
    for y, q in b.terms.items():
        om, u = d.omega_part(y)
        word = d.reduced_word(u)
        acc = a
        # H_y = H_om * H_word; om commutes into the left factor first
        acc = _mul_omega_right(acc, om)
        for slot in word:
            acc = _mul_gen_right(acc, d.simple_reflections[slot])
        for w, p in acc.terms.items():
            out.add_term(w, p * q)
    return out


def bar(a: HeckeElt) -> HeckeElt:
    """Ring involution with v -> v^-1 and H_w -> (H_{w^-1})^-1."""
    d = a.datum
    out = HeckeElt(d)
    gen_bar = LaurentPoly({1: 1, -1: -1})  # H_s^-1 = H_s + (v - v^-1)
    for y, q in a.terms.items():
        om, u = d.omega_part(y)
        word = d.reduced_word(u)
        acc = HeckeElt.basis(d, om)
        for slot in word:
            s = d.simple_reflections[slot]
            acc = _mul_gen_right(acc, s) + acc.scale(gen_bar)
        for w, p in acc.terms.items():
            out.add_term(w, p * q.bar())
    return out


class KLTable:
    """Canonical-basis rows p_{., w} for every element of a ball.

    Rows are dicts {y_id: int64[D]} with exponent e stored at index
    e + off.  Building runs by increasing length; elements with a
    length-zero part om are filled in by translating the row of their
    W-part, since C_{om w} = H_om C_w.
    """

    def __init__(self, ball: Ball, cache=None, progress=False):
        self.ball = ball
        self.datum = ball.datum
        self.L = ball.L
        self.D = 2 * ball.L + 3
        self.off = ball.L + 1
        self.rows: list[dict[int, np.ndarray]] = [None] * ball.size
        self.mu: dict[tuple[int, int], int] = {}
        self._omega_left = self._omega_perms(left=True)
        self._omega_right = self._omega_perms(left=False)
        self._build(cache)
        self._extract_mu()
        self._kernel = None

    # ----- construction ----------------------------------------------------

    def _omega_perms(self, left: bool):
        ball = self.ball
        perms = []
        for om in ball.omega_elements_interned():
            if left:
                perm = [ball.id_of.get(om * e, -1) for e in ball.elements]
            else:
                perm = [ball.id_of.get(e * om, -1) for e in ball.elements]
            perms.append(np.array(perm, dtype=np.int64))
        return perms

    def _build(self, cache):
        ball = self.ball
        datum = self.datum
        order = sorted(range(ball.size), key=lambda i: (ball.lengths[i], i))
        cached_rows = cache.load_rows(self) if cache is not None else {}
        new_records = []
        for w in order:
            om_slot = ball.omega_of[w]
            if ball.lengths[w] == 0:
                vec = np.zeros(self.D, dtype=np.int64)
                vec[self.off] = 1
                self.rows[w] = {w: vec}
                continue
            if om_slot != self.ball.omega_of[self.ball.id_of[self.datum.identity]]:
                u = ball.wpart[w]
                perm = self._omega_left[om_slot]
                self.rows[w] = {int(perm[y]): vec for y, vec in self.rows[u].items()}
                continue
            got = cached_rows.get(w)
            if got is not None:
                self.rows[w] = got
                continue
            self.rows[w] = self._compute_row(w)
            if cache is not None:
                new_records.append(w)
        if cache is not None and new_records:
            cache.append_rows(self, new_records)
        self._assert_invariants()

    def _compute_row(self, w):
        ball = self.ball
        slot = self._left_descent_slot(w)
        wp = ball.left_mul[w][slot]
        base = self.rows[wp]
        out: dict[int, np.ndarray] = {}
        # H_s * C_{w'}
        for y, vec in base.items():
            sy = ball.left_mul[y][slot]
            if sy < 0:
                raise OutsideBallError("canonical-basis support left the ball")
            prev = out.get(sy)
            out[sy] = vec.copy() if prev is None else prev + vec
            if ball.lengths[sy] < ball.lengths[y]:
                cur = out.get(y)
                if cur is None:
                    cur = np.zeros(self.D, dtype=np.int64)
                    out[y] = cur
                cur[:-1] += vec[1:]
                cur[1:] -= vec[:-1]
        # + v C_{w'}
        for y, vec in base.items():
            cur = out.get(y)
            if cur is None:
                cur = np.zeros(self.D, dtype=np.int64)
                out[y] = cur
            cur[1:] += vec[:-1]
        # mu-corrections: u < w' with s*u < u
        for u, vec in base.items():
            if u == wp:
                continue
            m = int(vec[self.off + 1])
            if m == 0:
                continue
            su = ball.left_mul[u][slot]
            if su < 0 or ball.lengths[su] > ball.lengths[u]:
                continue
            for y, uvec in self.rows[u].items():
                cur = out.get(y)
                if cur is None:
                    out[y] = -m * uvec
                else:
                    cur -= m * uvec
        return {y: vec for y, vec in out.items() if vec.any()}

    def _left_descent_slot(self, w):
        ball = self.ball
        for slot in range(len(self.datum.simple_reflections)):
            t = ball.left_mul[w][slot]
            if t >= 0 and ball.lengths[t] < ball.lengths[w]:
                return slot
        raise HeckeError("no left descent found inside the ball")

    def _assert_invariants(self):
        off = self.off
        for w, row in enumerate(self.rows):
            diag = row.get(w)
            if diag is None or int(diag[off]) != 1 or diag.sum() != 1:
                raise HeckeError("p_{w,w} != 1 in canonical-basis row")
            for y, vec in row.items():
                if vec.min() < 0:
                    raise PositivityError("negative coefficient in p_{y,w}")
                if vec.max() >= COEFF_LIMIT:
                    raise HeckeError("coefficient overflow risk in p-table")
                if y != w and (vec[:off + 1].any()):
                    raise HeckeError("p_{y,w} not in v*Z[v] for y != w")

    def _extract_mu(self):
        off1 = self.off + 1
        for w, row in enumerate(self.rows):
            for y, vec in row.items():
                if y != w and vec[off1]:
                    self.mu[(y, w)] = int(vec[off1])

    # ----- accessors --------------------------------------------------------

    def p(self, y, w) -> LaurentPoly:
        """p_{y,w}; arguments are ball ids."""
        vec = self.rows[w].get(y)
        if vec is None:
            return LaurentPoly.zero()
        return self._vec_to_poly(vec)

    def _vec_to_poly(self, vec) -> LaurentPoly:
        nz = np.nonzero(vec)[0]
        return LaurentPoly({int(e) - self.off: int(vec[e]) for e in nz})

    def _poly_to_vec(self, p: LaurentPoly) -> np.ndarray:
        vec = np.zeros(self.D, dtype=np.int64)
        for e, c in p.items():
            vec[e + self.off] = c
        return vec

    def _poly_to_vec_checked(self, poly_dict):
        """Exponent-dict to vector; None if out of range (cache loading)."""
        vec = np.zeros(self.D, dtype=np.int64)
        for e_str, c in poly_dict.items():
            idx = int(e_str) + self.off
            if not 0 <= idx < self.D:
                return None
            vec[idx] = int(c)
        return vec

    def c_elt(self, w) -> HeckeElt:
        """C_w as a HeckeElt, for a ball id w."""
        els = self.ball.elements
        return HeckeElt(self.datum,
                        {els[y]: self._vec_to_poly(vec)
                         for y, vec in self.rows[w].items()})

    def kl_element(self, w: WeylElement) -> HeckeElt:
        i = self.ball.id_of.get(w)
        if i is None:
            raise OutsideBallError("element outside the constructed ball")
        return self.kl_by_id(i)

    def kl_by_id(self, i: int) -> HeckeElt:
        return self.c_elt(i)

    def kernel(self) -> "CKernel":
        if self._kernel is None:
            self._kernel = CKernel(self)
        return self._kernel


class CKernel:
    """Vectorized right multiplication by C_s and H_om in the C-basis.

    States are int64 arrays of shape (n + 1, D): one row per ball element
    plus a trailing overflow row that must stay zero (it absorbs writes
    whose target falls outside the ball, which certifies in-ball support).
    """

    def __init__(self, table: KLTable):
        self.table = table
        ball = table.ball
        self.n = ball.size
        self.D = table.D
        nslots = len(table.datum.simple_reflections)
        lengths = np.array(ball.lengths)
        self.asc = []
        self.perm = []
        self.mu_parts = []
        self.corr = [[] for _ in range(ball.size)]
        right = np.array(ball.right_mul, dtype=np.int64)
        for slot in range(nslots):
            tgt = right[:, slot]
            tgt_len = np.where(tgt >= 0, lengths[np.maximum(tgt, 0)], lengths + 1)
            asc = tgt_len > lengths
            self.asc.append(asc)
            self.perm.append(np.where(tgt >= 0, tgt, self.n))
            rows_u, cols_w, vals = [], [], []
            for (u, w), m in table.mu.items():
                wu = ball.right_mul[u][slot]
                ww = ball.right_mul[w][slot]
                u_desc = wu >= 0 and ball.lengths[wu] < ball.lengths[u]
                w_asc = not (ww >= 0 and ball.lengths[ww] < ball.lengths[w])
                if u_desc and w_asc:
                    rows_u.append(u)
                    cols_w.append(w)
                    vals.append(m)
            self.mu_parts.append((np.array(rows_u, dtype=np.int64),
                                  np.array(cols_w, dtype=np.int64),
                                  np.array(vals, dtype=np.int64)))
        # correction data for the right-descent recursion on a C-basis state:
        # for each w with right descent s at `slot`, the list over u with
        # mu(u, w) != 0 and u*s < u
        for (u, w), m in table.mu.items():
            for slot in range(nslots):
                wu = ball.right_mul[u][slot]
                if wu >= 0 and ball.lengths[wu] < ball.lengths[u]:
                    self.corr[w].append((slot, u, m))
        self.omega_right = table._omega_right

    def new_state(self) -> np.ndarray:
        return np.zeros((self.n + 1, self.D), dtype=np.int64)

    def seed(self, x: int) -> np.ndarray:
        state = self.new_state()
        state[x, self.table.off] = 1
        return state

    def mul_cs(self, state: np.ndarray, slot: int) -> np.ndarray:
        asc = self.asc[slot]
        perm = self.perm[slot]
        out = self.new_state()
        body = state[:self.n]
        idx = np.nonzero(asc)[0]
        out[perm[idx]] += body[idx]
        didx = np.nonzero(~asc)[0]
        out[didx, 1:] += body[didx, :-1]
        out[didx, :-1] += body[didx, 1:]
        rows_u, cols_w, vals = self.mu_parts[slot]
        if len(rows_u):
            np.add.at(out, rows_u, vals[:, None] * body[cols_w])
        if out[self.n].any():
            raise OutsideBallError("product support left the working ball")
        return out

    def corrections(self, w: int, slot: int):
        return [(u, m) for (sl, u, m) in self.corr[w] if sl == slot]

    def mul_omega(self, state: np.ndarray, om_slot: int) -> np.ndarray:
        perm = self.omega_right[om_slot]
        out = self.new_state()
        body = state[:self.n]
        ok = perm >= 0
        if not ok.all() and state[:self.n][~ok].any():
            raise OutsideBallError("omega translate left the working ball")
        out[perm[ok]] = body[ok]
        return out


def kl_polynomial(table: KLTable, y: WeylElement, w: WeylElement) -> LaurentPoly:
    """p_{y,w} for raw group elements inside the table's ball."""
    ball = table.ball
    iy, iw = ball.id_of.get(y), ball.id_of.get(w)
    if iy is None or iw is None:
        raise OutsideBallError("element outside the constructed ball")
    return table.p(iy, iw)


def structure_constants(table: KLTable, x: WeylElement, y: WeylElement,
                        cache=None):
    """h_{x,y,.} of C_x C_y as {z: LaurentPoly}, with a completeness flag.

    The change of basis is exact: if the product's support does not fit in
    the table's ball, a larger working ball is built internally and the
    returned map is restricted to the requested ball with complete=False.
    """
    datum = table.datum
    ball = table.ball
    need = datum.length(x) + datum.length(y)
    work = table
    if need > ball.L:
        big = Ball(datum, need, extended=ball.extended,
                   omega_window=ball.omega_window)
        work = KLTable(big, cache=cache)
    prod = h_mul(work.kl_element(x), work.kl_element(y))
    consts = _eliminate(work, prod)
    restricted = {}
    complete = True
    for z, h in consts.items():
        if z in ball.id_of:
            restricted[z] = h
        else:
            complete = False
    return restricted, complete


def _eliminate(table: KLTable, elt: HeckeElt) -> dict[WeylElement, LaurentPoly]:
    """Expand a Hecke element in the canonical basis by downward elimination."""
    ball = table.ball
    remaining = {}
    for w, p in elt.terms.items():
        wid = ball.id_of.get(w)
        if wid is None:
            raise OutsideBallError("support outside the working ball")
        remaining[wid] = p
    out = {}
    while remaining:
        wid = max(remaining)
        h = remaining.pop(wid)
        if not h:
            continue
        out[ball.elements[wid]] = h
        for yid, vec in table.rows[wid].items():
            if yid == wid:
                continue
            q = remaining.get(yid, LaurentPoly.zero()) - table._vec_to_poly(vec) * h
            if q:
                remaining[yid] = q
            else:
                remaining.pop(yid, None)
    return out
