"""Based algebras with nonnegative integer structure constants, and
basis-respecting isomorphism checking and search.

A `BasedAlgebra` is a finite (possibly truncated) multiplication table:
structure-constant rows per ordered basis pair, a completeness flag per
pair (False when the true product may have support outside the stored
basis), a distinguished subset whose sum is the (truncated) unit, and a
row/column block partition that products must respect like matrix units.

`iso_check` compares constants on every pair complete in both algebras;
a mismatch on such a pair is a genuine refutation of the candidate
bijection, while "consistent" is always truncated evidence only.
`iso_search` backtracks over partition-respecting bijections, anchoring
on the distinguished elements and pruning with per-element product
fingerprints against already-assigned elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations


class BasedAlgebraError(Exception):
    pass


@dataclass
class BasedAlgebra:
    name: str
    labels: tuple[str, ...]
    sc: dict  # (i, j) -> {k: positive int}
    complete: set  # pairs (i, j) with exact in-basis rows
    distinguished: frozenset
    row_of: tuple[int, ...]
    col_of: tuple[int, ...]
    order_key: tuple  # deterministic per-element sort key (trimming, search)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for (i, j), row in self.sc.items():
            for k, c in row.items():
                if c <= 0:
                    raise BasedAlgebraError(
                        f"structure constant not positive at {(i, j, k)}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def blocks(self) -> dict:
        out = {}
        for i in range(self.size):
            out.setdefault((self.row_of[i], self.col_of[i]), []).append(i)
        for key in out:
            out[key].sort(key=lambda i: self.order_key[i])
        return out

    def truncate(self, keep: list) -> "BasedAlgebra":
        """Restriction to a subset; pairs whose support leaves it become
        incomplete (their rows are restricted, never altered)."""
        keep = sorted(keep, key=lambda i: self.order_key[i])
        old_to_new = {o: n for n, o in enumerate(keep)}
        kept = set(keep)
        sc = {}
        complete = set()
        for (i, j), row in self.sc.items():
            if i in kept and j in kept:
                sc[(old_to_new[i], old_to_new[j])] = {
                    old_to_new[k]: c for k, c in row.items() if k in kept}
        for (i, j) in self.complete:
            if i in kept and j in kept:
                row = self.sc.get((i, j), {})
                if all(k in kept for k in row):
                    complete.add((old_to_new[i], old_to_new[j]))
        return BasedAlgebra(
            name=self.name,
            labels=tuple(self.labels[o] for o in keep),
            sc=sc,
            complete=complete,
            distinguished=frozenset(old_to_new[d] for d in self.distinguished
                                    if d in kept),
            row_of=tuple(self.row_of[o] for o in keep),
            col_of=tuple(self.col_of[o] for o in keep),
            order_key=tuple(self.order_key[o] for o in keep),
            meta=dict(self.meta, truncated_from=self.size),
        )

    def opposite(self) -> "BasedAlgebra":
        sc = {(j, i): row for (i, j), row in self.sc.items()}
        complete = {(j, i) for (i, j) in self.complete}
        return BasedAlgebra(self.name + "^op", self.labels, sc, complete,
                            self.distinguished, self.col_of, self.row_of,
                            self.order_key, dict(self.meta, opposite=True))


@dataclass
class IsoReport:
    verdict: str  # "consistent" | "refuted-on-ball" | "exhausted"
    bijection: list  # [(label_A, label_B), ...]
    checked_triples: int
    mismatches: list
    convention: str = "direct"
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "bijection": [[a, b] for a, b in self.bijection],
            "checked_triples": self.checked_triples,
            "mismatches": self.mismatches,
            "convention": self.convention,
            "meta": self.meta,
        }


def _block_maps(a: BasedAlgebra, b: BasedAlgebra, f: dict):
    row_map = {}
    col_map = {}
    for i, bi in f.items():
        r = a.row_of[i]
        if row_map.setdefault(r, b.row_of[bi]) != b.row_of[bi]:
            return None
        c = a.col_of[i]
        if col_map.setdefault(c, b.col_of[bi]) != b.col_of[bi]:
            return None
    if len(set(row_map.values())) != len(row_map):
        return None
    if len(set(col_map.values())) != len(col_map):
        return None
    return row_map, col_map


def iso_check(a: BasedAlgebra, b: BasedAlgebra, bijection: dict,
              convention: str = "direct", opposite: bool = False) -> IsoReport:
    """Verify a total bijection (dict of A-index -> B-index).

    With opposite=True the target product is taken in reversed order
    (constants of x*y in A against f(y)*f(x) in B); the convention field
    of the report records which composition was used.
    """
    if len(bijection) != a.size or set(bijection) != set(range(a.size)):
        raise BasedAlgebraError("bijection is not total on the source basis")
    if sorted(bijection.values()) != list(range(b.size)):
        raise BasedAlgebraError("bijection is not onto the target basis")
    if {bijection[d] for d in a.distinguished} != set(b.distinguished):
        return IsoReport("refuted-on-ball", _pairs(a, b, bijection), 0,
                         [{"reason": "distinguished sets do not correspond"}],
                         convention)
    if _block_maps(a, b, bijection) is None:
        raise BasedAlgebraError("bijection does not respect the partitions")
    checked = 0
    for (i, j) in sorted(a.complete):
        fi, fj = bijection[i], bijection[j]
        pair_b = (fj, fi) if opposite else (fi, fj)
        if pair_b not in b.complete:
            continue
        got = {bijection[k]: c for k, c in a.sc.get((i, j), {}).items()}
        want = b.sc.get(pair_b, {})
        checked += 1
        if got != want:
            return IsoReport(
                "refuted-on-ball", _pairs(a, b, bijection), checked,
                [{"pair": [a.labels[i], a.labels[j]],
                  "image": [b.labels[pair_b[0]], b.labels[pair_b[1]]],
                  "mapped_row": {b.labels[k]: c for k, c in sorted(got.items())},
                  "target_row": {b.labels[k]: c for k, c in sorted(want.items())}}],
                convention)
    return IsoReport("consistent", _pairs(a, b, bijection), checked, [],
                     convention)


def _pairs(a, b, f):
    return [(a.labels[i], b.labels[f[i]]) for i in sorted(f)]


def _partial_ok(a: BasedAlgebra, b: BasedAlgebra, f: dict, i: int, j: int,
                opposite: bool = False):
    """Compare the (i, j) product on the assigned part of the bases."""
    fi, fj = f[i], f[j]
    pair_b = (fj, fi) if opposite else (fi, fj)
    if (i, j) not in a.complete or pair_b not in b.complete:
        return True
    row_a = a.sc.get((i, j), {})
    row_b = b.sc.get(pair_b, {})
    inv = {v: k for k, v in f.items()}
    for k, c in row_a.items():
        fk = f.get(k)
        if fk is not None and row_b.get(fk, 0) != c:
            return False
    for kb, c in row_b.items():
        ka = inv.get(kb)
        if ka is not None and row_a.get(ka, 0) != c:
            return False
    return True


def iso_search(a: BasedAlgebra, b: BasedAlgebra, trim: bool = False,
               convention: str = "direct",
               opposite: bool = False) -> IsoReport:
    """Backtracking search for a partition-respecting based isomorphism.

    Anchored on bijections of the distinguished sets, which fix the block
    correspondence.  With trim=True, blocks of unequal size are first cut
    back to their common size along the canonical element order (the
    result is reported as evidence for the common truncation only).
    With opposite=True the target multiplication is reversed.
    """
    if len(a.distinguished) != len(b.distinguished):
        return IsoReport("exhausted", [], 0,
                         [{"reason": "distinguished-set sizes differ"}],
                         convention)
    d_a = sorted(a.distinguished, key=lambda i: a.order_key[i])
    attempts = 0
    for d_perm in permutations(sorted(b.distinguished,
                                      key=lambda i: b.order_key[i])):
        anchor = dict(zip(d_a, d_perm))
        maps = _block_maps(a, b, anchor)
        if maps is None:
            continue
        row_map, col_map = maps
        blocks_a = a.blocks()
        blocks_b = b.blocks()
        if set(row_map) != {r for r, _ in blocks_a}:
            # distinguished elements must anchor every row/column block
            continue
        if set(col_map) != {c for _, c in blocks_a}:
            continue
        pairing = {}
        ok = True
        for (r, c), elems in blocks_a.items():
            target = blocks_b.get((row_map[r], col_map[c]))
            if target is None:
                ok = False
                break
            pairing[(r, c)] = (elems, target)
        if not ok:
            continue
        if not trim and any(len(e) != len(t) for e, t in pairing.values()):
            continue
        work_a, work_b = a, b
        if trim:
            keep_a, keep_b = [], []
            for elems, target in pairing.values():
                m = min(len(elems), len(target))
                keep_a.extend(elems[:m])
                keep_b.extend(target[:m])
            if (not set(a.distinguished) <= set(keep_a)
                    or not set(b.distinguished) <= set(keep_b)):
                continue
            work_a = a.truncate(keep_a)
            work_b = b.truncate(keep_b)
        attempts += 1
        found = _search_one(work_a, work_b, opposite)
        if found is not None:
            report = iso_check(work_a, work_b, found, convention, opposite)
            report.meta["search_attempts"] = attempts
            if trim:
                report.meta["truncated_to"] = work_a.size
            if report.verdict == "consistent":
                return report
    return IsoReport("exhausted", [], 0,
                     [{"reason": "no partition-respecting bijection found",
                       "anchor_attempts": attempts}], convention)


def _search_one(a: BasedAlgebra, b: BasedAlgebra, opposite: bool = False):
    blocks_a = a.blocks()
    blocks_b = b.blocks()
    if sorted(len(v) for v in blocks_a.values()) != sorted(
            len(v) for v in blocks_b.values()):
        return None
    order = [i for _, elems in sorted(blocks_a.items()) for i in elems]
    # block images are pinned by the first assignment inside each block
    def candidates(i, f):
        maps = _block_maps(a, b, f) if f else ({}, {})
        if maps is None:
            return []
        row_map, col_map = maps
        r, c = a.row_of[i], a.col_of[i]
        used = set(f.values())
        out = []
        for (rb, cb), elems in sorted(blocks_b.items()):
            if r in row_map and row_map[r] != rb:
                continue
            if c in col_map and col_map[c] != cb:
                continue
            if rb in row_map.values() and r not in row_map:
                continue
            if cb in col_map.values() and c not in col_map:
                continue
            for e in elems:
                if e in used:
                    continue
                if (i in a.distinguished) != (e in b.distinguished):
                    continue
                out.append(e)
        return out

    assignment: dict = {}

    def backtrack(pos: int):
        if pos == len(order):
            return True
        i = order[pos]
        for cand in candidates(i, assignment):
            assignment[i] = cand
            good = True
            for j in list(assignment):
                for (p, q) in ((i, j), (j, i)):
                    if not _partial_ok(a, b, assignment, p, q, opposite):
                        good = False
                        break
                if not good:
                    break
            if good and backtrack(pos + 1):
                return True
            del assignment[i]
        return False

    if backtrack(0):
        return dict(assignment)
    return None
