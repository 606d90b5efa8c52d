"""Exhaustive and randomized searches over centroid-zero bodies.

Every body in the stream is run through all applicable checks and the
per-body records are merged in stream order, so a summary depends only on
the configuration and never on the worker count.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .barycentric import bary_of_point, max_separation
from .bounds import (
    center,
    conjecture_bound,
    equality_case_check,
    gruenbaum_check,
    milman_pajor_check,
    symmetric_bound,
    verify_prop1,
    verify_simplex_bound,
)
from .exact import int_det, qstr
from .io import body_to_json, jsonable
from .lattice import enumerate_lattice_points, lambda1, unbounded_family
from .planar import ehrhart_planar_check, verify_thm3
from .polytope import HalfSpace, Polytope, Simplex, centroid, reflect

log = logging.getLogger(__name__)

MODES = ("exhaustive_simplices", "random_polytopes", "family_triangles")


@dataclass
class SearchConfig:
    dim: int = 2
    coordinate_bound: int = 2
    modes: tuple = ("exhaustive_simplices",)
    sample_count: int = 0
    rng_seed: int = 0
    parallelism: int = 1
    gruenbaum_samples: int = 50
    family_max_m: int = 20
    symmetrized: bool = False  # random mode: also test the hull of +-points
    pairwise_dedup_check: bool = False

    def __post_init__(self):
        self.modes = tuple(self.modes)
        if self.coordinate_bound < 1:
            raise ValueError("coordinate_bound must be >= 1")
        if self.sample_count < 0:
            raise ValueError("sample_count must be >= 0")
        unknown = set(self.modes) - set(MODES)
        if unknown:
            raise ValueError(f"unknown modes {sorted(unknown)}")
        if not 1 <= self.dim <= 4:
            raise ValueError("dim must be in 1..4")

    @classmethod
    def from_json(cls, data: dict) -> "SearchConfig":
        return cls(**data)

    def to_json(self) -> dict:
        d = asdict(self)
        d["modes"] = list(self.modes)
        return d


@dataclass
class SearchSummary:
    config: dict
    bodies_tested: int = 0
    violations: list = field(default_factory=list)
    equality_cases: list = field(default_factory=list)
    max_G_by_lambda1: dict = field(default_factory=dict)
    min_mp_ratio: Optional[Fraction] = None
    thm3_max_G: Optional[int] = None
    conjecture_counterexamples: list = field(default_factory=list)
    remark_exceedances: int = 0
    family: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    duplicate_classes: int = 0
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.errors

    def to_json(self, include_runtime=True) -> dict:
        out = {
            "config": self.config,
            "bodies_tested": self.bodies_tested,
            "violations": self.violations,
            "equality_cases": self.equality_cases,
            "max_G_by_lambda1": dict(sorted(self.max_G_by_lambda1.items(), key=lambda kv: Fraction(kv[0]))),
            "min_mp_ratio": None if self.min_mp_ratio is None else qstr(self.min_mp_ratio),
            "thm3_max_G": self.thm3_max_G,
            "conjecture_counterexamples": self.conjecture_counterexamples,
            "conjecture_status": "no counterexample found" if not self.conjecture_counterexamples else "counterexample found",
            "remark_exceedances": self.remark_exceedances,
            "family": self.family,
            "errors": self.errors,
            "duplicate_classes": self.duplicate_classes,
        }
        if include_runtime:
            out["runtime"] = round(self.runtime, 3)
        return jsonable(out)


# --------------------------------------------------------------------------
# body streams


def hnf_rows(w) -> tuple:
    """Hermite normal form of a nonsingular integer matrix under row operations."""
    a = [list(r) for r in w]
    n = len(a)
    for j in range(n):
        while True:
            piv = min((i for i in range(j, n) if a[i][j] != 0), key=lambda i: abs(a[i][j]))
            a[j], a[piv] = a[piv], a[j]
            clean = True
            for i in range(j + 1, n):
                if a[i][j]:
                    q = a[i][j] // a[j][j]
                    a[i] = [x - q * y for x, y in zip(a[i], a[j])]
                    if a[i][j]:
                        clean = False
            if clean:
                break
        if a[j][j] < 0:
            a[j] = [-x for x in a[j]]
        for i in range(j):
            q = a[i][j] // a[j][j]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[j])]
    return tuple(map(tuple, a))


def canonical_form(vertices) -> tuple:
    """Invariant of a centroid-zero lattice simplex under unimodular maps.

    For such simplices an equivalence ``A = U B + z`` forces ``z = 0``, so
    the classes are orbits of ``GL_d(Z)`` acting on the vertex matrix; the
    minimum Hermite normal form over vertex orderings picks one orbit
    representative.
    """
    d = len(vertices[0])
    return min(hnf_rows(tuple(zip(*cols))) for cols in itertools.permutations(vertices, d))


def enumerate_centroid_simplices(cfg: SearchConfig) -> Iterator[Simplex]:
    """One representative per unimodular class of lattice simplices with vertices in ``[-N, N]^d`` and centroid 0.

    Representatives are the first class members met in lexicographic
    vertex-set order.
    """
    d, n = cfg.dim, cfg.coordinate_bound
    if d not in (2, 3):
        raise ValueError("exhaustive enumeration supports d = 2 or 3")
    pts = list(itertools.product(range(-n, n + 1), repeat=d))
    index = {p: i for i, p in enumerate(pts)}
    seen: set = set()
    for combo in itertools.combinations(range(len(pts)), d):
        verts = [pts[i] for i in combo]
        last = tuple(-sum(c) for c in zip(*verts))
        j = index.get(last)
        if j is None or j <= combo[-1]:
            continue
        # the affine hull passes through the centroid 0, so it is the span
        if int_det(verts) == 0:
            continue
        verts.append(last)
        key = canonical_form(verts)
        if key in seen:
            continue
        seen.add(key)
        yield Simplex(d, verts)


def count_raw_centroid_simplices(cfg: SearchConfig) -> int:
    d, n = cfg.dim, cfg.coordinate_bound
    pts = list(itertools.product(range(-n, n + 1), repeat=d))
    index = {p: i for i, p in enumerate(pts)}
    total = 0
    for combo in itertools.combinations(range(len(pts)), d):
        verts = [pts[i] for i in combo]
        j = index.get(tuple(-sum(c) for c in zip(*verts)))
        if j is not None and j > combo[-1] and int_det(verts) != 0:
            total += 1
    return total


def _rng(seed: int, *tags) -> random.Random:
    return random.Random(":".join(str(t) for t in (seed,) + tags))


def random_centroid_body(cfg: SearchConfig, draw: int, max_retries: int = 100) -> Polytope:
    """Hull of a few random rational points, translated so its centroid is 0.

    A pure function of ``(cfg.rng_seed, cfg.dim, draw)``; flat draws are redrawn.
    """
    d = cfg.dim
    if d > 4:
        raise ValueError("dimension above 4")
    for attempt in range(max_retries):
        rng = _rng(cfg.rng_seed, "body", d, draw, attempt)
        q = rng.choice((1, 2, 3))
        npts = rng.randint(d + 1, d + 4)
        pts = [tuple(Fraction(rng.randint(-3 * q, 3 * q), q) for _ in range(d)) for _ in range(npts)]
        if cfg.symmetrized:
            pts += [tuple(-x for x in p) for p in pts]
        body = Polytope.hull(pts, d)
        if body.is_full:
            return center(body)
    raise RuntimeError(f"could not draw a full-dimensional body for draw {draw}")


def random_halfspaces(seed: int, tag, d: int, count: int) -> list[HalfSpace]:
    rng = _rng(seed, "halfspace", tag)
    out = []
    while len(out) < count:
        a = tuple(rng.randint(-9, 9) for _ in range(d))
        if any(a):
            out.append(HalfSpace(a, 0))
    return out


def facet_parallel_halfspaces(s: Simplex) -> list[HalfSpace]:
    """For each vertex, the halfspace through the centroid parallel to the opposite facet, containing the vertex."""
    out = []
    for hs in s.hrep.halfspaces:
        # the opposite vertex minimizes a.x, so it lies on the side a.x <= 0
        out.append(HalfSpace(hs.normal, 0))
    return out


# --------------------------------------------------------------------------
# per-body checks


def _violation(check: str, body, detail) -> dict:
    return {"check": check, "body": body_to_json(body), "detail": jsonable(detail)}


def check_body(kind: str, body, cfg: SearchConfig, index: int) -> dict:
    """Run every applicable verification on one body; returns a plain record."""
    rec: dict = {"index": index, "kind": kind, "violations": [], "equality": [], "conjecture": []}
    poly = body.polytope if isinstance(body, Simplex) else body
    d = poly.dim
    try:
        lat = enumerate_lattice_points(poly)
        lam = lambda1(poly)
        rec.update(G=lat.count, interior=lat.interior_count, lambda1=lam.value)

        p1 = verify_prop1(poly)
        if not p1.passed:
            rec["violations"].append(_violation("prop1", poly, p1))

        mp = milman_pajor_check(poly)
        rec["mp_ratio"] = mp.value
        if not mp.passed:
            rec["violations"].append(_violation("milman_pajor", poly, mp))
        symmetric = reflect(poly).same_set(poly)
        if (mp.value == 1) != symmetric:
            rec["violations"].append(_violation("milman_pajor_symmetry", poly, mp))
        if symmetric and lat.count > symmetric_bound(d, lam.value):
            rec["violations"].append(_violation("symmetric_bound", poly, lat.count))

        for hs in random_halfspaces(cfg.rng_seed, index, d, cfg.gruenbaum_samples):
            g = gruenbaum_check(poly, hs)
            if not g.passed:
                rec["violations"].append(_violation("gruenbaum", poly, {"halfspace": hs, "fraction": g.value}))

        if lam.value >= 1 and lat.count > 2 ** (d + 1) - 1:
            rec["remark_exceeds"] = True

        if isinstance(body, Simplex):
            _check_simplex(body, lat, lam.value, rec)
        elif lat.count > conjecture_bound(d, lam.value):
            rec["conjecture"].append(body_to_json(poly))

        if d == 2:
            e = ehrhart_planar_check(poly)
            if e is False:
                rec["violations"].append(_violation("ehrhart_planar", poly, e))
            if lat.interior_count == 1:
                t3 = verify_thm3(poly)
                rec["thm3_G"] = t3.actual
                if not t3.passed:
                    rec["violations"].append(_violation("thm3", poly, t3))
                if t3.actual == 10:
                    rec["equality"].append(
                        {"theorem": "thm3", "body": body_to_json(poly), "certificate": t3.witnesses.get("certificate")}
                    )
    except Exception as exc:  # recorded, not fatal
        rec["error"] = {"body": body_to_json(poly), "error": f"{type(exc).__name__}: {exc}"}
    return jsonable(rec)


def _check_simplex(s: Simplex, lat, lam: Fraction, rec: dict) -> None:
    res = verify_simplex_bound(s, with_equality=False)
    if not res.passed:
        rec["violations"].append(_violation("simplex_bound", s.polytope, res))
    eq = equality_case_check(s, lam)
    if eq.applicable and (res.status == "equal") != eq.equivalent:
        rec["violations"].append(_violation("simplex_equality_case", s.polytope, eq))
    if res.status == "equal":
        if not (eq.applicable and eq.m_unimodular and eq.bary_is_grid):
            rec["violations"].append(_violation("simplex_equality_m_matrix", s.polytope, eq))
        rec["equality"].append({"theorem": "thm2", "body": body_to_json(s.polytope), "certificate": eq.certificate})

    d = s.dim
    floor = lam / (d + 1)
    barys = {x: bary_of_point(s, x) for x in lat.points}
    for u, w in itertools.permutations(lat.points, 2):
        k, value = max_separation(barys[u], barys[w])
        if value < floor:
            rec["violations"].append(_violation("lemma1", s.polytope, {"u": u, "w": w, "k": k, "value": value}))

    for hs in facet_parallel_halfspaces(s):
        g = gruenbaum_check(s.polytope, hs)
        if g.value != Fraction(d, d + 1) ** d:
            rec["violations"].append(_violation("gruenbaum_equality", s.polytope, {"halfspace": hs, "fraction": g.value}))


def _check_family(m: int) -> dict:
    body = unbounded_family(m)
    lat = enumerate_lattice_points(body)
    return {"m": m, "G": lat.count, "interior": lat.interior_count}


def _run_chunk(args) -> list[dict]:
    items, cfg = args
    return [check_body(kind, body, cfg, i) for i, kind, body in items]


def body_stream(cfg: SearchConfig) -> list[tuple[int, str, object]]:
    items = []
    if "exhaustive_simplices" in cfg.modes:
        for s in enumerate_centroid_simplices(cfg):
            items.append((len(items), "simplex", s))
    if "random_polytopes" in cfg.modes:
        for draw in range(cfg.sample_count):
            items.append((len(items), "random", random_centroid_body(cfg, draw)))
    return items


def run_suite(cfg: SearchConfig) -> SearchSummary:
    start = time.perf_counter()
    items = body_stream(cfg)
    log.info("checking %d bodies with %d worker(s)", len(items), cfg.parallelism)
    jobs = max(1, cfg.parallelism)
    if jobs == 1 or len(items) < 2:
        records = _run_chunk((items, cfg))
    else:
        chunks = [(items[k::jobs], cfg) for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = [r for chunk in pool.map(_run_chunk, chunks) for r in chunk]
    records.sort(key=lambda r: r["index"])

    summary = SearchSummary(config=cfg.to_json())
    for rec in records:
        summary.bodies_tested += 1
        if "error" in rec:
            summary.errors.append(rec["error"])
            continue
        summary.violations.extend(rec["violations"])
        summary.equality_cases.extend(rec["equality"])
        summary.conjecture_counterexamples.extend(rec["conjecture"])
        key = rec["lambda1"]
        summary.max_G_by_lambda1[key] = max(summary.max_G_by_lambda1.get(key, 0), rec["G"])
        mp = Fraction(rec["mp_ratio"])
        if summary.min_mp_ratio is None or mp < summary.min_mp_ratio:
            summary.min_mp_ratio = mp
        if "thm3_G" in rec and rec["kind"] == "simplex":
            summary.thm3_max_G = max(summary.thm3_max_G or 0, rec["thm3_G"])
        summary.remark_exceedances += bool(rec.get("remark_exceeds"))

    if "family_triangles" in cfg.modes:
        prev = None
        for m in range(2, cfg.family_max_m + 1):
            row = _check_family(m)
            summary.family.append(row)
            if row["interior"] != 1 or row["G"] < 2 * m + 1 or (prev is not None and row["G"] < prev):
                summary.violations.append({"check": "family", "body": body_to_json(unbounded_family(m)), "detail": row})
            prev = row["G"]

    if cfg.pairwise_dedup_check and "exhaustive_simplices" in cfg.modes:
        from .bounds import unimodular_equivalent

        reps = [body for _, kind, body in items if kind == "simplex"]
        summary.duplicate_classes = sum(
            1 for a, b in itertools.combinations(reps, 2) if unimodular_equivalent(a, b) is not None
        )
        if summary.duplicate_classes:
            summary.violations.append({"check": "dedup", "body": None, "detail": summary.duplicate_classes})

    summary.runtime = time.perf_counter() - start
    return summary


def write_replays(summary: SearchSummary, directory) -> list:
    """One polytope JSON per violation, loadable by the CLI."""
    from pathlib import Path

    out = []
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for i, v in enumerate(summary.violations):
        if v.get("body") is None:
            continue
        path = directory / f"violation_{i:04d}_{v['check']}.json"
        path.write_text(json.dumps(v["body"], indent=1))
        out.append(path)
    return out
