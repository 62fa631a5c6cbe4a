"""Command-line driver: balls, canonical-basis polynomials, cells,
a-function, gamma tables, cell subalgebra dumps, convolution algebras,
and the isomorphism harness.

Every subcommand writes one JSON artifact (sorted keys, fixed layout, no
timestamps) plus a short human summary on stdout, so repeated runs with
the same configuration and cache state are byte-identical.  Module-level
failures exit with status 2 and a machine-readable error record.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources

from .based import iso_check, iso_search
from .cache import KLCache
from .cells import CellError, CellTables, build_cell_tables
from .convalg import ConvAlgebraError, target_from_json
from .groups import GroupError
from .hecke import HeckeError, KLTable, kl_polynomial
from .jring import j_cell_algebra
from .repring import RepRingError
from .verify import conjecture_harness, digest_of
from .weyl import (CONVENTION, Ball, WeylError, datum_from_key, parse_element)

PACKAGE_ERRORS = (WeylError, HeckeError, CellError, ConvAlgebraError,
                  GroupError, RepRingError, ValueError, KeyError)


@dataclass
class JobConfig:
    datum_key: str
    radius: int
    extended: bool
    cell: str
    target: str
    bound: int
    cache_dir: str | None
    out: str | None
    threads: int
    seed: int
    pair: str | None = None

    @classmethod
    def from_args(cls, args) -> "JobConfig":
        return cls(
            datum_key=args.datum,
            radius=args.radius,
            extended=args.extended,
            cell=getattr(args, "cell", "lowest"),
            target=getattr(args, "target", ""),
            bound=getattr(args, "bound", 0),
            cache_dir=args.cache_dir,
            out=args.out,
            threads=args.threads,
            seed=args.seed,
            pair=getattr(args, "pair", None),
        )

    def header(self) -> dict:
        return {
            "datum": self.datum_key,
            "convention": CONVENTION,
            "radius": self.radius,
            "extended": self.extended,
            "threads": self.threads,
            "seed": self.seed,
        }


def _cache(cfg: JobConfig):
    root = cfg.cache_dir or os.environ.get("HECKECELLS_CACHE")
    return KLCache(root) if root else None


def _write_artifact(cfg: JobConfig, payload: dict, default_name: str) -> str:
    path = cfg.out or default_name
    blob = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    with open(path, "w") as fh:
        fh.write(blob)
    return path


def _load_target(cfg: JobConfig) -> dict:
    name = cfg.target
    if os.path.exists(name):
        with open(name) as fh:
            return json.load(fh)
    builtin = f"{name}.json" if not name.endswith(".json") else name
    try:
        ref = resources.files("heckecells").joinpath("data", builtin)
        return json.loads(ref.read_text())
    except FileNotFoundError:
        raise ValueError(f"target description {name!r} not found")


def _tables(cfg: JobConfig, with_gamma=True) -> CellTables:
    datum = datum_from_key(cfg.datum_key)
    return build_cell_tables(datum, cfg.radius, extended=cfg.extended,
                             cache=_cache(cfg), threads=cfg.threads,
                             with_gamma=with_gamma)


def cmd_ball(cfg: JobConfig) -> dict:
    datum = datum_from_key(cfg.datum_key)
    ball = Ball(datum, cfg.radius, extended=cfg.extended)
    payload = dict(cfg.header(), size=ball.size, elements=ball.to_json())
    print(f"ball({cfg.datum_key}, L={cfg.radius}, extended={cfg.extended}): "
          f"{ball.size} elements")
    return payload


def cmd_klpoly(cfg: JobConfig) -> dict:
    if not cfg.pair:
        raise ValueError("klpoly needs --pair y,w")
    datum = datum_from_key(cfg.datum_key)
    ball = Ball(datum, cfg.radius, extended=cfg.extended)
    table = KLTable(ball, cache=_cache(cfg))
    y_word, w_word = cfg.pair.split(",")
    y = parse_element(datum, y_word.strip())
    w = parse_element(datum, w_word.strip())
    p = kl_polynomial(table, y, w)
    payload = dict(cfg.header(), pair=[y_word.strip(), w_word.strip()],
                   p=p.to_dict())
    print(f"p_({y_word.strip()},{w_word.strip()}) = {p}")
    return payload


def _cells_payload(tables: CellTables) -> list:
    out = []
    dec = tables.decomposition
    for kind, cells in (("two_sided", dec.two_sided_cells),
                        ("left", dec.left_cells),
                        ("right", dec.right_cells)):
        for cell in cells:
            rec = {
                "cell_id": cell.cid,
                "type": kind,
                "stabilized": cell.stabilized,
                "member_ids": list(cell.members),
                "members": [tables.ball.word_string(m) for m in cell.members],
            }
            if kind == "two_sided" and tables.a_raw is not None:
                rec["a_value"] = cell.a_value
                rec["a_stabilized"] = cell.a_stabilized
            out.append(rec)
    return out


def cmd_cells(cfg: JobConfig) -> dict:
    tables = _tables(cfg)
    dec = tables.decomposition
    payload = dict(cfg.header(), cells=_cells_payload(tables),
                   two_sided_count=len(dec.two_sided_cells),
                   stabilized_two_sided=sum(
                       c.stabilized for c in dec.two_sided_cells),
                   distinguished=[tables.ball.word_string(d)
                                  for d in sorted(tables.dist_involutions)])
    print(f"{len(dec.two_sided_cells)} two-sided cells "
          f"({payload['stabilized_two_sided']} stabilized), "
          f"{len(dec.left_cells)} left cells; "
          f"distinguished: {', '.join(payload['distinguished'])}")
    return payload


def cmd_afn(cfg: JobConfig) -> dict:
    tables = _tables(cfg)
    rows = []
    for z in range(tables.n_L):
        a, stab = tables.a_function(z)
        rows.append({"id": z, "word": tables.ball.word_string(z),
                     "a": a, "stabilized": stab})
    payload = dict(cfg.header(), a_function=rows)
    stable = sum(r["stabilized"] for r in rows)
    print(f"a-function on {len(rows)} elements ({stable} stabilized); "
          f"max a = {max(r['a'] for r in rows)}")
    return payload


def cmd_gamma(cfg: JobConfig) -> dict:
    tables = _tables(cfg)
    triples = []
    for (x, y), row in sorted(tables.jcoeff.items()):
        for u, g in sorted(row.items()):
            triples.append([tables.ball.word_string(x),
                            tables.ball.word_string(y),
                            tables.ball.word_string(u), g])
    payload = dict(cfg.header(), product_triples=triples,
                   note="entries are coefficients of t_u in t_x t_y")
    print(f"gamma table: {len(triples)} nonzero product entries")
    return payload


def cmd_jring(cfg: JobConfig) -> dict:
    tables = _tables(cfg)
    cell = tables.cell_by_selector(cfg.cell)
    alg = j_cell_algebra(tables, cell)
    products = []
    for (i, j), row in sorted(alg.sc.items()):
        products.append([alg.labels[i], alg.labels[j],
                         sorted([alg.labels[k], c] for k, c in row.items()),
                         (i, j) in alg.complete])
    payload = dict(cfg.header(), cell=cfg.cell, basis=list(alg.labels),
                   a_value=cell.a_value, products=products)
    print(f"J_c for cell {cfg.cell!r}: {alg.size} basis elements, "
          f"{len(products)} nonzero products, a = {cell.a_value}")
    return payload


def cmd_convalg(cfg: JobConfig) -> dict:
    data = _load_target(cfg)
    _, alg = target_from_json(data, cfg.bound)
    sc = []
    for (i, j), row in sorted(alg.sc.items()):
        sc.append([alg.labels[i], alg.labels[j],
                   sorted([alg.labels[k], c] for k, c in row.items()),
                   (i, j) in alg.complete])
    payload = dict(cfg.header(), target=cfg.target, bound=cfg.bound,
                   basis=list(alg.labels),
                   distinguished=[alg.labels[d]
                                  for d in sorted(alg.distinguished)],
                   products=sc)
    print(f"convolution algebra {alg.name}: {alg.size} basis elements")
    return payload


def cmd_verify(cfg: JobConfig) -> dict:
    datum = datum_from_key(cfg.datum_key)
    data = _load_target(cfg)
    report = conjecture_harness(datum, cfg.cell, data, cfg.radius, cfg.bound,
                                extended=cfg.extended, cache=_cache(cfg),
                                threads=cfg.threads)
    payload = dict(cfg.header(), report=report.to_json())
    print(f"verify: verdict={report.verdict} convention={report.convention} "
          f"checked_triples={report.checked_triples}")
    return payload


COMMANDS = {
    "ball": cmd_ball,
    "klpoly": cmd_klpoly,
    "cells": cmd_cells,
    "afn": cmd_afn,
    "gamma": cmd_gamma,
    "jring": cmd_jring,
    "convalg": cmd_convalg,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckecells",
        description="Exact cell structure and asymptotic multiplication "
                    "tables for low-rank extended affine Weyl groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--datum", default="A1:sc",
                       help="root datum key, e.g. A2:sc, A1:adjoint, GL2:gl")
        p.add_argument("--radius", type=int, default=8)
        p.add_argument("--extended", action="store_true")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        if name == "klpoly":
            p.add_argument("--pair", required=True,
                           help="comma-separated pair of words, e.g. e,s0s1s0")
        if name in ("jring", "verify"):
            p.add_argument("--cell", default="lowest")
        if name in ("convalg", "verify"):
            p.add_argument("--target", required=True,
                           help="JSON file or builtin name (sl2-2pt, ...)")
            p.add_argument("--bound", type=int, default=4)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = JobConfig.from_args(args)
    try:
        payload = COMMANDS[args.command](cfg)
        payload["config_digest"] = digest_of(cfg.header())
        path = _write_artifact(cfg, payload,
                               f"heckecells-{args.command}.json")
        print(f"artifact: {path}")
        return 0
    except PACKAGE_ERRORS as exc:
        record = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(record, sort_keys=True))
        return 2


if __name__ == "__main__":
    sys.exit(main())
