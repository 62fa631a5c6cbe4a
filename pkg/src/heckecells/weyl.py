"""Extended affine Weyl groups of low-rank root data.

An element is kept in the normal form (w, lam) = w * t_lam with w in the
finite Weyl group W_f and lam a weight-lattice vector, so that

    (w, lam) * (w', lam') = (w w', w'^-1(lam) + lam').

Lengths come from the hyperplane-counting formula

    l(w * t_lam) = sum_{b > 0, w(b) > 0} |<lam, b^>|
                 + sum_{b > 0, w(b) < 0} |<lam, b^> + 1|

over positive roots b with coroots b^.  The affine simple reflection of
each irreducible component is the reflection in the wall <v, theta^> = 1,
where theta^ is the highest coroot of the component; this is the unique
choice that has length one in every type (convention id: see CONVENTION).

Supported types: A1, A2, B2, C2, G2, A1xA1 with simply-connected or
adjoint lattices, and GL1/GL2/GL3 with the gl lattice.  For gl lattices
the length-zero subgroup Omega is infinite cyclic and extended balls
truncate it to a finite power window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import re

CONVENTION = "soergel-v1"

CARTAN = {
    # entry [i][j] = <alpha_j, alpha_i^>
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],  # alpha1 long, alpha2 short
    "C2": [[2, -2], [-1, 2]],  # alpha1 short, alpha2 long
    "G2": [[2, -3], [-1, 2]],  # alpha1 short, alpha2 long
    "A1xA1": [[2, 0], [0, 2]],
    "GL1": [],
    "GL2": [[2]],
    "GL3": [[2, -1], [-1, 2]],
}

WF_ORDER = {"A1": 2, "A2": 6, "B2": 8, "C2": 8, "G2": 12,
            "A1xA1": 4, "GL1": 1, "GL2": 2, "GL3": 6}

# (simple_roots, simple_coroots) per (label, lattice); vectors in the
# coordinates of the chosen lattice X = Z^rank.
_REALIZATIONS = {
    ("A1", "sc"): ([(2,)], [(1,)]),
    ("A1", "adjoint"): ([(1,)], [(2,)]),
    ("A2", "sc"): ([(2, -1), (-1, 2)], [(1, 0), (0, 1)]),
    ("A2", "adjoint"): ([(1, 0), (0, 1)], [(2, -1), (-1, 2)]),
    ("B2", "sc"): ([(2, -2), (-1, 2)], [(1, 0), (0, 1)]),
    ("B2", "adjoint"): ([(1, 0), (0, 1)], [(2, -1), (-2, 2)]),
    ("C2", "sc"): ([(1, -1), (0, 2)], [(1, -1), (0, 1)]),
    ("C2", "adjoint"): ([(1, 0), (0, 1)], [(2, -2), (-1, 2)]),
    ("G2", "sc"): ([(1, 0), (0, 1)], [(2, -3), (-1, 2)]),
    ("G2", "adjoint"): ([(1, 0), (0, 1)], [(2, -3), (-1, 2)]),
    ("A1xA1", "sc"): ([(2, 0), (0, 2)], [(1, 0), (0, 1)]),
    ("A1xA1", "adjoint"): ([(1, 0), (0, 1)], [(2, 0), (0, 2)]),
    ("GL1", "gl"): ([], []),
    ("GL2", "gl"): ([(1, -1)], [(1, -1)]),
    ("GL3", "gl"): ([(1, -1, 0), (0, 1, -1)], [(1, -1, 0), (0, 1, -1)]),
}

_RANKS = {"A1": 1, "A2": 2, "B2": 2, "C2": 2, "G2": 2, "A1xA1": 2,
          "GL1": 1, "GL2": 2, "GL3": 3}


class WeylError(Exception):
    pass


class UnsupportedDatumError(WeylError):
    pass


class MixedDatumError(WeylError):
    pass


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _mat_vec(m, v):
    return tuple(_dot(row, v) for row in m)


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def _identity_matrix(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _solve_fractions(cols, target):
    """Solve sum_i x_i * cols[i] = target exactly; None if inconsistent."""
    rows = len(target)
    k = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, rows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][k]
    # consistency
    for i in range(rows):
        if sum(sol[j] * cols[j][i] for j in range(k)) != target[i]:
            return None
    return sol


def _smith_normal_form(mat):
    """Return (U, D) with U unimodular and U*M*V = D diagonal for some
    unimodular V; only U and the diagonal of D are needed here."""
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    c = 0
    while r < rows and c < cols:
        piv = None
        for i in range(r, rows):
            for j in range(c, cols):
                if m[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        m[r], m[i0] = m[i0], m[r]
        u[r], u[i0] = u[i0], u[r]
        for row in m:
            row[c], row[j0] = row[j0], row[c]
        while True:
            done = True
            for i in range(r + 1, rows):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if m[i][c]:
                        m[r], m[i] = m[i], m[r]
                        u[r], u[i] = u[i], u[r]
                        done = False
            for j in range(c + 1, cols):
                if m[r][j]:
                    q = m[r][j] // m[r][c]
                    for row in m:
                        row[j] -= q * row[c]
                    if m[r][j]:
                        for row in m:
                            row[c], row[j] = row[j], row[c]
                        done = False
            if done:
                break
        r += 1
        c += 1
    diag = [m[i][i] for i in range(min(rows, cols))]
    return u, diag


class WeylElement:
    """Group element (w, lam) = w * t_lam; immutable and hashable."""

    __slots__ = ("datum", "wf", "tr", "_hash")

    def __init__(self, datum: "RootDatum", wf: int, tr: tuple):
        self.datum = datum
        self.wf = wf
        self.tr = tr
        self._hash = hash((wf, tr))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.datum is not other.datum:
            raise MixedDatumError("elements from different root data")
        d = self.datum
        w2inv = d.wf_inv[other.wf]
        lam = tuple(a + b for a, b in zip(d.act(w2inv, self.tr), other.tr))
        return WeylElement(d, d.wf_mult[self.wf][other.wf], lam)

    def inverse(self) -> "WeylElement":
        d = self.datum
        winv = d.wf_inv[self.wf]
        lam = tuple(-x for x in d.act(self.wf, self.tr))
        return WeylElement(d, winv, lam)

    def length(self) -> int:
        return self.datum.length(self)

    def is_identity(self) -> bool:
        return self.wf == 0 and not any(self.tr)

    def __eq__(self, other):
        return (isinstance(other, WeylElement) and self.wf == other.wf
                and self.tr == other.tr and self.datum is other.datum)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"WeylElement(wf={self.wf}, tr={self.tr})"


class RootDatum:
    """A root datum plus all precomputed finite-Weyl-group tables."""

    def __init__(self, type_label: str, lattice_choice: str):
        if type_label not in CARTAN:
            raise UnsupportedDatumError(f"unsupported type label {type_label!r}")
        is_gl = type_label.startswith("GL")
        if is_gl != (lattice_choice == "gl"):
            raise UnsupportedDatumError(
                f"lattice {lattice_choice!r} incompatible with {type_label!r}")
        if not is_gl and lattice_choice not in ("sc", "adjoint"):
            raise UnsupportedDatumError(f"unknown lattice choice {lattice_choice!r}")
        self.type_label = type_label
        self.lattice_choice = lattice_choice
        self.rank = _RANKS[type_label]
        self.simple_roots, self.simple_coroots = _REALIZATIONS[
            (type_label, lattice_choice)]
        self.nsimple = len(self.simple_roots)
        self.cartan = CARTAN[type_label]
        self._check_cartan()
        self._build_positive_roots()
        self._build_finite_group()
        self._build_affine_generators()
        self._build_omega()
        self._bruhat_cache: dict = {}

    # ----- construction ---------------------------------------------------

    def _check_cartan(self):
        for i, co in enumerate(self.simple_coroots):
            for j, al in enumerate(self.simple_roots):
                if _dot(al, co) != self.cartan[i][j]:
                    raise WeylError("realization does not reproduce the Cartan matrix")

    def _build_positive_roots(self):
        # orbit closure of the simple (root, coroot) pairs
        seen = {}
        frontier = list(zip(self.simple_roots, self.simple_coroots))
        for root, co in frontier:
            seen[root] = co
        while frontier:
            new = []
            for root, co in frontier:
                for i in range(self.nsimple):
                    ai, ci = self.simple_roots[i], self.simple_coroots[i]
                    r2 = tuple(x - _dot(root, ci) * y for x, y in zip(root, ai))
                    c2 = tuple(x - _dot(ai, co) * y for x, y in zip(co, ci))
                    if r2 not in seen:
                        seen[r2] = c2
                        new.append((r2, c2))
            frontier = new
        pos = []
        for root, co in seen.items():
            sol = _solve_fractions(self.simple_roots, root)
            if sol is not None and all(x >= 0 for x in sol):
                pos.append((root, co, tuple(sol)))
        pos.sort(key=lambda t: (sum(t[2]), t[0]))
        self.positive_roots = [p[0] for p in pos]
        self.positive_coroots = [p[1] for p in pos]
        self._pos_expansions = [p[2] for p in pos]
        self.n_pos = len(pos)
        self._pos_index = {r: i for i, r in enumerate(self.positive_roots)}

    def _build_finite_group(self):
        n = self.rank
        gens = []
        for al, co in zip(self.simple_roots, self.simple_coroots):
            gens.append(tuple(tuple(int(a == b) - al[a] * co[b] for b in range(n))
                              for a in range(n)))
        ident = _identity_matrix(n)
        mats = [ident]
        index = {ident: 0}
        words = [[]]
        frontier = [0]
        while frontier:
            new = []
            for wi in frontier:
                for gi, g in enumerate(gens):
                    m2 = _mat_mul(mats[wi], g)
                    if m2 not in index:
                        index[m2] = len(mats)
                        mats.append(m2)
                        words.append(words[wi] + [gi + 1])
                        new.append(index[m2])
            frontier = new
        if len(mats) != WF_ORDER[self.type_label]:
            raise WeylError("finite Weyl group has unexpected order")
        self.wf_order = len(mats)
        self._wf_mats = mats
        self._wf_index = index
        self.wf_words = [tuple(w) for w in words]
        size = len(mats)
        self.wf_mult = [[index[_mat_mul(mats[i], mats[j])] for j in range(size)]
                        for i in range(size)]
        self.wf_inv = [next(j for j in range(size)
                            if self.wf_mult[i][j] == 0) for i in range(size)]
        # sign of w(beta) for each positive root beta
        self._root_sign = []
        for m in mats:
            row = []
            for root in self.positive_roots:
                img = _mat_vec(m, root)
                row.append(img in self._pos_index)
            self._root_sign.append(tuple(row))

    def _components(self):
        """Connected components of the Coxeter graph, as index sets."""
        n = self.nsimple
        comp = []
        unassigned = set(range(n))
        while unassigned:
            stack = [min(unassigned)]
            cur = set()
            while stack:
                i = stack.pop()
                if i in cur:
                    continue
                cur.add(i)
                unassigned.discard(i)
                for j in range(n):
                    if j != i and self.cartan[i][j] and j in unassigned:
                        stack.append(j)
            comp.append(sorted(cur))
        return comp

    def _build_affine_generators(self):
        ident = WeylElement(self, 0, (0,) * self.rank)
        self.identity = ident
        finite = [WeylElement(self, self._wf_index[g], (0,) * self.rank)
                  for g in (self._reflection_matrix(i) for i in range(self.nsimple))]
        affine = []
        for comp in self._components():
            # highest coroot of the component: the dominant one of maximal
            # height in the simple-coroot expansion
            best = None
            for idx in range(self.n_pos):
                exp = self._pos_expansions[idx]
                if any(exp[i] for i in range(self.nsimple) if i not in comp):
                    continue
                co = self.positive_coroots[idx]
                sol = _solve_fractions(self.simple_coroots, co)
                height = sum(sol)
                if best is None or height > best[0]:
                    best = (height, idx)
            idx = best[1]
            beta = self.positive_roots[idx]
            refl = self._wf_index[self._reflection_matrix_for(idx)]
            lam = tuple(-x for x in beta)
            affine.append(WeylElement(self, refl, lam))
        # generator list: s0 (first component's affine), finite s1..sr,
        # further affine reflections appended for extra components
        self.simple_reflections = [affine[0]] + finite + affine[1:]
        self.gen_names = (["s0"] + [f"s{i+1}" for i in range(self.nsimple)]
                          + [f"s{self.nsimple + 1 + k}" for k in range(len(affine) - 1)])
        self.finite_gen_slots = list(range(1, 1 + self.nsimple))
        for s in self.simple_reflections:
            if self.length(s) != 1:
                raise WeylError("affine generator does not have length 1")

    def _reflection_matrix(self, i):
        n = self.rank
        al, co = self.simple_roots[i], self.simple_coroots[i]
        return tuple(tuple(int(a == b) - al[a] * co[b] for b in range(n))
                     for a in range(n))

    def _reflection_matrix_for(self, pos_idx):
        n = self.rank
        al = self.positive_roots[pos_idx]
        co = self.positive_coroots[pos_idx]
        return tuple(tuple(int(a == b) - al[a] * co[b] for b in range(n))
                     for a in range(n))

    def _build_omega(self):
        # lattice index [X : ZR] via Smith normal form of the root matrix
        if self.nsimple == 0:
            self._snf_u, self._snf_diag = _identity_matrix(self.rank), []
        else:
            mat = [[self.simple_roots[j][i] for j in range(self.nsimple)]
                   for i in range(self.rank)]
            self._snf_u, self._snf_diag = _smith_normal_form(mat)
        full_rank = self.nsimple == self.rank
        if full_rank:
            expected = 1
            for d in self._snf_diag:
                expected *= abs(d)
        else:
            expected = None  # infinite cyclic (gl types)
        found = []
        box = range(-2, 3)
        vecs = [()]
        for _ in range(self.rank):
            vecs = [v + (b,) for v in vecs for b in box]
        for wf in range(self.wf_order):
            for lam in vecs:
                el = WeylElement(self, wf, lam)
                if self.length(el) == 0:
                    found.append(el)
        if expected is not None:
            if len(found) != expected:
                raise WeylError("length-zero subgroup has unexpected order")
            found.sort(key=lambda e: (e.wf, e.tr))
            ident = self.identity
            found.remove(ident)
            self.omega_finite = [ident] + found
            self.omega_infinite_gen = None
        else:
            gens = [e for e in found if self.omega_key(e.tr)[-1] == 1]
            if len(gens) != 1:
                raise WeylError("could not isolate a generator of Omega")
            self.omega_finite = None
            self.omega_infinite_gen = gens[0]

    # ----- elementwise operations ------------------------------------------

    def act(self, wf: int, vec: tuple) -> tuple:
        return _mat_vec(self._wf_mats[wf], vec)

    def length(self, el: WeylElement) -> int:
        total = 0
        signs = self._root_sign[el.wf]
        lam = el.tr
        for i in range(self.n_pos):
            c = _dot(lam, self.positive_coroots[i])
            total += abs(c) if signs[i] else abs(c + 1)
        return total

    def element(self, wf: int = 0, tr=None) -> WeylElement:
        return WeylElement(self, wf, tuple(tr) if tr is not None else (0,) * self.rank)

    def translation(self, lam) -> WeylElement:
        return WeylElement(self, 0, tuple(lam))

    def omega_key(self, lam) -> tuple:
        """Invariant of the coset lam + ZR, from the Smith normal form."""
        u = _mat_vec(self._snf_u, lam)
        key = []
        for i, x in enumerate(u):
            if i < len(self._snf_diag) and self._snf_diag[i]:
                key.append(x % abs(self._snf_diag[i]))
            else:
                key.append(x)
        return tuple(key)

    def omega_elements(self, window: int = 0):
        """Length-zero elements; for gl lattices, powers -window..window."""
        if self.omega_finite is not None:
            return list(self.omega_finite)
        gen = self.omega_infinite_gen
        out = [self.identity]
        fwd = self.identity
        bwd = self.identity
        geninv = gen.inverse()
        for _ in range(window):
            fwd = fwd * gen
            bwd = bwd * geninv
            out.extend([fwd, bwd])
        return out

    def min_coset_rep(self, el: WeylElement) -> WeylElement:
        """Unique shortest element of el * W_f."""
        best = None
        best_len = None
        tie = False
        for wf in range(self.wf_order):
            cand = el * WeylElement(self, wf, (0,) * self.rank)
            ln = self.length(cand)
            if best_len is None or ln < best_len:
                best, best_len, tie = cand, ln, False
            elif ln == best_len:
                tie = True
        if tie:
            raise WeylError("coset minimum is not unique")
        return best

    def is_min_rep(self, el: WeylElement) -> bool:
        ln = self.length(el)
        for slot in self.finite_gen_slots:
            if self.length(el * self.simple_reflections[slot]) < ln:
                return False
        return True

    def left_descent(self, el: WeylElement):
        """Smallest generator slot s with l(s*el) < l(el); None if l=0."""
        ln = self.length(el)
        for slot, s in enumerate(self.simple_reflections):
            if self.length(s * el) < ln:
                return slot
        return None

    def right_descent(self, el: WeylElement):
        ln = self.length(el)
        for slot, s in enumerate(self.simple_reflections):
            if self.length(el * s) < ln:
                return slot
        return None

    def reduced_word(self, el: WeylElement) -> list[int]:
        """Generator slots of one reduced word for an element of W."""
        word = []
        cur = el
        while True:
            slot = self.left_descent(cur)
            if slot is None:
                break
            word.append(slot)
            cur = self.simple_reflections[slot] * cur
        if not cur.is_identity():
            raise WeylError("element is not in the unextended affine group")
        return word

    def omega_part(self, el: WeylElement):
        """(omega, u) with el = omega * u, u in W; omega has length zero."""
        key = self.omega_key(el.tr)
        if self.omega_finite is not None:
            for om in self.omega_finite:
                if self.omega_key(om.tr) == key:
                    return om, om.inverse() * el
            raise WeylError("no length-zero element in the coset")
        shift = key[-1]
        gen = self.omega_infinite_gen
        om = self.identity
        step = gen if shift > 0 else gen.inverse()
        for _ in range(abs(shift)):
            om = om * step
        return om, om.inverse() * el

    def bruhat_leq(self, x: WeylElement, y: WeylElement) -> bool:
        """Subword order; False across distinct Omega-cosets."""
        if x.datum is not self or y.datum is not self:
            raise MixedDatumError("elements from different root data")
        if self.omega_key(x.tr) != self.omega_key(y.tr):
            return False
        omx, ux = self.omega_part(x)
        _, uy = self.omega_part(y)
        return self._bruhat_w(ux, uy)

    def _bruhat_w(self, x, y):
        if x == y:
            return True
        lx, ly = self.length(x), self.length(y)
        if lx >= ly:
            return False
        key = (x, y)
        cached = self._bruhat_cache.get(key)
        if cached is not None:
            return cached
        slot = self.left_descent(y)
        s = self.simple_reflections[slot]
        sy = s * y
        sx = s * x
        if self.length(sx) < lx:
            res = self._bruhat_w(sx, sy)
        else:
            res = self._bruhat_w(x, sy)
        self._bruhat_cache[key] = res
        return res

    def key(self) -> str:
        return f"{self.type_label}:{self.lattice_choice}"

    def __repr__(self):
        return f"RootDatum({self.key()})"


@lru_cache(maxsize=None)
def build_root_datum(type_label: str, lattice_choice: str = "sc") -> RootDatum:
    return RootDatum(type_label, lattice_choice)


def datum_from_key(key: str) -> RootDatum:
    """Parse CLI strings like 'A2:sc', 'A1:adjoint', 'GL2:gl'."""
    if ":" in key:
        label, lattice = key.split(":", 1)
    else:
        label = key
        lattice = "gl" if key.startswith("GL") else "sc"
    return build_root_datum(label, lattice)


class Ball:
    """All elements of length <= L, interned with dense integer ids.

    Ids are sorted by (length, omega coset, finite part, translation), so
    they are stable across runs.  Generator multiplication tables map into
    the ball and use -1 for out-of-ball targets.
    """

    def __init__(self, datum: RootDatum, L: int, extended: bool = False,
                 omega_window=None):
        if L < 0:
            raise WeylError("ball radius must be nonnegative")
        self.datum = datum
        self.L = L
        self.extended = extended
        if extended:
            if datum.omega_finite is None and omega_window is None:
                omega_window = L
            seeds = datum.omega_elements(omega_window or 0)
        else:
            seeds = [datum.identity]
        self.omega_window = omega_window
        seen = set(seeds)
        frontier = sorted(seeds, key=lambda e: (e.wf, e.tr))
        gens = datum.simple_reflections
        while frontier:
            new = []
            for el in frontier:
                ln = datum.length(el)
                for s in gens:
                    nxt = el * s
                    if nxt in seen:
                        continue
                    ln2 = datum.length(nxt)
                    if abs(ln2 - ln) != 1:
                        raise WeylError("length changed by more than one")
                    if ln2 == ln + 1 and ln2 <= L:
                        seen.add(nxt)
                        new.append(nxt)
            frontier = sorted(new, key=lambda e: (e.wf, e.tr))
        els = sorted(seen, key=lambda e: (datum.length(e),
                                          datum.omega_key(e.tr), e.wf, e.tr))
        self.elements = els
        self.size = len(els)
        self.id_of = {e: i for i, e in enumerate(els)}
        self.lengths = [datum.length(e) for e in els]
        self.inverse = [self.id_of[e.inverse()] for e in els]
        ngens = len(gens)
        self.right_mul = [[-1] * ngens for _ in range(self.size)]
        self.left_mul = [[-1] * ngens for _ in range(self.size)]
        for i, e in enumerate(els):
            for k, s in enumerate(gens):
                self.right_mul[i][k] = self.id_of.get(e * s, -1)
                self.left_mul[i][k] = self.id_of.get(s * e, -1)
        self.omega_of = []
        self.wpart = []
        self._omega_list = []
        self._omega_index = {}
        for i, e in enumerate(els):
            om, u = datum.omega_part(e)
            if om not in self._omega_index:
                self._omega_index[om] = len(self._omega_list)
                self._omega_list.append(om)
            self.omega_of.append(self._omega_index[om])
            self.wpart.append(self.id_of.get(u, -1))
        self.min_rep = [datum.is_min_rep(e) for e in els]
        self.words = self._build_words()

    def _build_words(self):
        datum = self.datum
        words = [None] * self.size
        order = sorted(range(self.size), key=lambda i: (self.lengths[i], i))
        for i in order:
            e = self.elements[i]
            if self.lengths[i] == 0:
                words[i] = (self.omega_of[i], ())
                continue
            slot = datum.right_descent(e)
            parent = self.id_of[e * datum.simple_reflections[slot]]
            om, w = words[parent]
            words[i] = (om, w + (slot,))
        return words

    def omega_elements_interned(self):
        return list(self._omega_list)

    def omega_slot_count(self):
        return len(self._omega_list)

    def word_string(self, i: int) -> str:
        """Canonical word like 'pi^2.s0s1' identifying element i."""
        om_idx, word = self.words[i]
        om = self._omega_list[om_idx]
        parts = []
        if not om.is_identity():
            parts.append(_omega_name(self.datum, om))
        parts.extend(self.datum.gen_names[s] for s in word)
        return "".join(parts) if parts else "e"

    def to_json(self) -> list[dict]:
        out = []
        for i, e in enumerate(self.elements):
            out.append({
                "id": i,
                "finite_part_word": list(self.datum.wf_words[e.wf]),
                "translation": list(e.tr),
                "length": self.lengths[i],
                "omega": list(self.datum.omega_key(e.tr)),
            })
        return out


def _omega_name(datum: RootDatum, om: WeylElement) -> str:
    if datum.omega_finite is not None:
        elems = datum.omega_finite
        idx = elems.index(om)
        if len(elems) <= 2:
            return "pi"
        # cyclic or Klein-four naming by position in the sorted listing
        return f"pi{idx}"
    gen = datum.omega_infinite_gen
    power = datum.omega_key(om.tr)[-1]
    return "pi" if power == 1 else f"pi^{power}"


_TOKEN = re.compile(r"(e|s\d+|pi\d*(?:\^-?\d+)?)")


def parse_element(datum: RootDatum, text: str) -> WeylElement:
    """Parse words like 'e', 's0s1s0', 'pi.s0' (dots/spaces optional)."""
    cleaned = text.replace(".", "").replace(" ", "")
    if not cleaned:
        raise WeylError("empty element word")
    pos = 0
    result = datum.identity
    name_to_slot = {n: i for i, n in enumerate(datum.gen_names)}
    while pos < len(cleaned):
        m = _TOKEN.match(cleaned, pos)
        if not m:
            raise WeylError(f"cannot parse element word {text!r} at {cleaned[pos:]!r}")
        tok = m.group(0)
        pos = m.end()
        if tok == "e":
            continue
        if tok.startswith("pi"):
            body = tok[2:]
            power = 1
            if "^" in body:
                head, _, p = body.partition("^")
                power = int(p)
                body = head
            if datum.omega_finite is not None:
                elems = datum.omega_finite
                if body:
                    om = elems[int(body)]
                else:
                    if len(elems) < 2:
                        raise WeylError("trivial Omega has no generator 'pi'")
                    om = elems[1]
            else:
                om = datum.omega_infinite_gen
            step = om if power >= 0 else om.inverse()
            for _ in range(abs(power)):
                result = result * step
        else:
            slot = name_to_slot.get(tok)
            if slot is None:
                raise WeylError(f"unknown generator {tok!r}")
            result = result * datum.simple_reflections[slot]
    return result
