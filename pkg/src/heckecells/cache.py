"""Persistent cache of canonical-basis rows.

One JSON-lines file per (root datum, convention id).  Every record holds
the full row of one unextended element, keyed by canonical reduced words
rather than ball ids, so a cache written against one ball is readable
from any other.  A sidecar .sha256 file detects corruption; a bad digest
discards the file and everything is recomputed.
"""

from __future__ import annotations

import hashlib
import json
import os

from .weyl import CONVENTION, parse_element


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


class KLCache:
    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, datum) -> str:
        name = datum.key().replace(":", "_") + "." + CONVENTION + ".jsonl"
        return os.path.join(self.root, name)

    def _verify(self, path: str) -> bool:
        sig = path + ".sha256"
        if not os.path.exists(path):
            return False
        if not os.path.exists(sig):
            return False
        with open(sig) as fh:
            want = fh.read().strip()
        return _digest(path) == want

    def _write_digest(self, path: str):
        with open(path + ".sha256", "w") as fh:
            fh.write(_digest(path) + "\n")

    def load_rows(self, table) -> dict:
        """Rows usable for the given KLTable, keyed by ball id."""
        datum = table.datum
        ball = table.ball
        path = self._path(datum)
        if not self._verify(path):
            if os.path.exists(path):
                os.remove(path)  # corrupt or unsigned: recompute
            return {}
        out = {}
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                try:
                    w = parse_element(datum, rec["w"])
                except Exception:
                    continue
                wid = ball.id_of.get(w)
                if wid is None:
                    continue
                row = {}
                good = True
                for y_word, poly in rec["row"].items():
                    y = parse_element(datum, y_word)
                    yid = ball.id_of.get(y)
                    if yid is None:
                        good = False
                        break
                    vec = table._poly_to_vec_checked(poly)
                    if vec is None:
                        good = False
                        break
                    row[yid] = vec
                if good and row:
                    out[wid] = row
                    self.hits += 1
        return out

    def append_rows(self, table, ids):
        datum = table.datum
        ball = table.ball
        path = self._path(datum)
        mode = "a" if self._verify(path) else "w"
        if mode == "w" and os.path.exists(path):
            os.remove(path)
        self.misses += len(ids)
        with open(path, mode) as fh:
            for w in sorted(ids, key=lambda i: (ball.lengths[i], i)):
                row = {
                    ball.word_string(y): table._vec_to_poly(vec).to_dict()
                    for y, vec in sorted(table.rows[w].items())
                }
                rec = {"w": ball.word_string(w), "row": row}
                fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")))
                fh.write("\n")
        self._write_digest(path)
