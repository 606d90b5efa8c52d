"""Command-line front end.

Every subcommand prints one JSON report::

    {"command", "input_digest", "input", "computed", "status",
     "certificates", "version", "timing"}

The exit code carries the verdict: 0 pass, 1 violation, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__
from .barycentric import build_grid
from .bounds import (
    center,
    gruenbaum_check,
    milman_pajor_check,
    verify_prop1,
    verify_simplex_bound,
)
from .exact import Q
from .harness import SearchConfig, random_halfspaces, run_suite, write_replays
from .io import InputError, body_from_json, body_to_json, digest, jsonable, parse_point
from .lattice import enumerate_lattice_points, lambda1, unbounded_family
from .planar import pick_identity, scott_deficit, verify_thm3
from .polytope import GeometryError, HalfSpace, PreconditionError, Simplex, centroid, gauge, volume

EXIT_PASS, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

VERIFY_KINDS = ("prop1", "simplex", "thm3", "pick", "scott", "mp", "gruenbaum")


class Outcome:
    """What a subcommand hands back: computed values, a status and certificates."""

    def __init__(self, computed, status="pass", certificates=(), input_extra=None):
        self.computed = computed
        self.status = status
        self.certificates = list(certificates)
        self.input_extra = input_extra or {}

    @property
    def passed(self) -> bool:
        return self.status != "violated"


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _floats(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, dict):
        return {k: _floats(v) for k, v in obj.items()}
    if isinstance(obj, list) or (isinstance(obj, tuple) and not hasattr(obj, "_asdict")):
        return [_floats(x) for x in obj]
    return jsonable(obj)


# --------------------------------------------------------------------------
# subcommands


def cmd_count(args, body):
    lat = enumerate_lattice_points(body)
    computed = {"G": lat.count, "interior": lat.interior_count}
    if args.points:
        computed["points"] = lat.points
    return Outcome(computed)


def cmd_lambda1(args, body):
    lam = lambda1(body)
    return Outcome({"lambda1": lam.value, "witness": lam.witness})


def cmd_centroid(args, body):
    return Outcome({"centroid": centroid(body)})


def cmd_volume(args, body):
    return Outcome({"volume": volume(body)})


def cmd_gauge(args, body):
    z = parse_point(args.point, body.dim)
    return Outcome({"gauge": gauge(body.hrep, z)}, input_extra={"point": list(z)})


def _parse_halfspace(text, dim) -> HalfSpace:
    """``"a1,...,ad;b"`` for ``a.x <= b``."""
    try:
        normal, offset = text.split(";")
    except ValueError:
        raise InputError(f"halfspace must look like 'a1,...,ad;b', got {text!r}") from None
    a = parse_point(normal, dim)
    try:
        b = Q(offset.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad offset {offset!r}") from exc
    if not any(a):
        raise InputError("halfspace normal must be nonzero")
    return HalfSpace(a, b)


def _bound_outcome(res):
    certs = []
    for key in ("certificate",):
        if res.witnesses.get(key) is not None:
            certs.append(res.witnesses[key])
    eq = res.witnesses.get("equality")
    if eq is not None and eq.certificate is not None:
        certs.append(eq.certificate)
    computed = {"G": res.actual, "bound": res.bound, "strict_required": res.strict_required, **res.witnesses}
    status = res.status if res.passed else "violated"
    return Outcome(computed, status, certs)


def cmd_verify(args, body):
    kind = args.kind
    if kind == "prop1":
        return _bound_outcome(verify_prop1(body))
    if kind == "simplex":
        if len(body.vertices) != body.dim + 1:
            raise InputError(f"body has {len(body.vertices)} vertices, a simplex needs {body.dim + 1}")
        return _bound_outcome(verify_simplex_bound(Simplex(body.dim, body.vertices)))
    if kind == "thm3":
        return _bound_outcome(verify_thm3(body))
    if kind == "pick":
        pc = pick_identity(body)
        c = pc.counts
        computed = {
            "G": c.total,
            "boundary": c.boundary,
            "interior": c.interior,
            "area": c.area,
            "edge_gcd_boundary": pc.edge_gcd_boundary,
            "pick_holds": pc.holds,
        }
        ok = pc.holds and pc.edge_gcd_boundary == c.boundary
        return Outcome(computed, "pass" if ok else "violated")
    if kind == "scott":
        sc = scott_deficit(body)
        computed = {"deficit": sc.deficit, "bound": 7, "equality": sc.equality, "certified": sc.certificate is not None}
        if not sc.passed:
            status = "violated"
        elif sc.equality:
            status = "equal"
        else:
            status = "strict"
        return Outcome(computed, status, [sc.certificate] if sc.certificate else [])
    if kind == "mp":
        mp = milman_pajor_check(body)
        bound = Fraction(1, 2**body.dim)
        return Outcome({"ratio": mp.value, "bound": bound}, "pass" if mp.passed else "violated")
    if kind == "gruenbaum":
        bound = Fraction(body.dim, body.dim + 1) ** body.dim
        if args.halfspace:
            hss = [_parse_halfspace(args.halfspace, body.dim)]
        else:
            hss = random_halfspaces(args.seed, "cli", body.dim, args.samples)
        rows = []
        ok = True
        for hs in hss:
            g = gruenbaum_check(body, hs)
            rows.append({"halfspace": hs, "fraction": g.value, "holds": g.passed})
            ok &= g.passed
        computed = {"bound": bound, "min_fraction": min(r["fraction"] for r in rows), "checks": rows}
        extra = {"halfspace": args.halfspace} if args.halfspace else {"seed": args.seed, "samples": args.samples}
        return Outcome(computed, "pass" if ok else "violated", input_extra=extra)
    raise InputError(f"unknown verification {kind!r}")


def cmd_grid(args):
    rho = Q(args.rho)
    grid = build_grid(args.dim, rho)
    expected = math.comb(args.dim + grid.n, args.dim)
    computed = {"n": grid.n, "size": len(grid.residues), "expected_size": expected}
    if args.residues:
        computed["residues"] = grid.to_json()["residues"]
    return Outcome(computed, "pass" if len(grid.residues) == expected else "violated")


def cmd_family(args):
    m = args.m
    body = unbounded_family(m)
    lat = enumerate_lattice_points(body)
    computed = {"m": m, "G": lat.count, "interior": lat.interior_count, "lower_bound": 2 * m + 1}
    ok = lat.interior_count == 1 and lat.count >= 2 * m + 1
    return Outcome(computed, "pass" if ok else "violated", input_extra={"body": body_to_json(body)})


def cmd_search(args, cfg_data):
    data = dict(cfg_data)
    if args.jobs is not None:
        data["parallelism"] = args.jobs
    if args.seed_given:
        data["rng_seed"] = args.seed
    try:
        cfg = SearchConfig.from_json(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad search config: {exc}") from exc
    summary = run_suite(cfg)
    if args.replays:
        write_replays(summary, args.replays)
    computed = summary.to_json(include_runtime=False)
    return Outcome(computed, "pass" if summary.ok else "violated")


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--float-preview", action="store_true", help="add decimal approximations next to exact values")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (gruenbaum sampling, search)")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for search")

    parser = argparse.ArgumentParser(prog="centroid-lattice", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("count", "lattice points G and interior count"),
        ("lambda1", "first successive minimum with a witness"),
        ("centroid", "exact centroid"),
        ("volume", "exact volume"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("body")
        if name == "count":
            p.add_argument("--points", action="store_true", help="list the lattice points")

    p = sub.add_parser("gauge", parents=[common], help="gauge function of a body at a point")
    p.add_argument("body")
    p.add_argument("point", help="comma-separated coordinates, e.g. 1,-1/2")

    p = sub.add_parser("verify", parents=[common], help="run one verification")
    p.add_argument("kind", choices=VERIFY_KINDS)
    p.add_argument("body")
    p.add_argument("--center", action="store_true", help="translate the centroid to the origin first")
    p.add_argument("--halfspace", help="gruenbaum: 'a1,...,ad;b' meaning a.x <= b")
    p.add_argument("--samples", type=int, default=50, help="gruenbaum: random halfspaces when none is given")

    p = sub.add_parser("grid", parents=[common], help="residue grid of the covering")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rho", required=True, help="positive rational p/q")
    p.add_argument("--residues", action="store_true", help="list the residues")

    p = sub.add_parser("search", parents=[common], help="run the search harness")
    p.add_argument("--config", required=True)
    p.add_argument("--replays", help="directory for per-violation body files")

    p = sub.add_parser("family", parents=[common], help="member m of the unbounded triangle family")
    p.add_argument("--m", type=int, required=True)
    return parser


def run(argv=None) -> tuple[int, dict]:
    """Parse ``argv``, run the command and return ``(exit code, report)``."""
    parser = build_parser()
    args = parser.parse_args(argv)
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    start = time.perf_counter()
    report = {"command": args.command if args.command != "verify" else f"verify {args.kind}"}
    if args.out:
        report["_out"] = args.out
    try:
        if args.command in ("count", "lambda1", "centroid", "volume", "gauge", "verify"):
            raw = _read_json(args.body)
            body = body_from_json(raw)
            if getattr(args, "center", False):
                body = center(body)
            handler = {
                "count": cmd_count,
                "lambda1": cmd_lambda1,
                "centroid": cmd_centroid,
                "volume": cmd_volume,
                "gauge": cmd_gauge,
                "verify": cmd_verify,
            }[args.command]
            inp = {"body": raw}
            if getattr(args, "center", False):
                inp["center"] = True
            outcome = handler(args, body)
        elif args.command == "grid":
            if args.dim < 1 or args.dim > 4:
                raise InputError("dim must be in 1..4")
            inp = {"dim": args.dim, "rho": args.rho}
            outcome = cmd_grid(args)
        elif args.command == "family":
            if args.m < 2:
                raise InputError("m must be at least 2")
            inp = {"m": args.m}
            outcome = cmd_family(args)
        else:
            cfg = _read_json(args.config)
            if not isinstance(cfg, dict):
                raise InputError("search config must be a JSON object")
            outcome = cmd_search(args, cfg)
            inp = {"config": {**cfg, **({"rng_seed": args.seed} if args.seed_given else {})}}
    except (InputError, PreconditionError, GeometryError, ValueError, ZeroDivisionError) as exc:
        report.update(status="input_error", error=f"{type(exc).__name__}: {exc}", version=__version__)
        return EXIT_INPUT, report

    inp.update(outcome.input_extra)
    report["input_digest"] = digest(jsonable(inp))
    report["input"] = jsonable(inp)
    report["computed"] = jsonable(outcome.computed)
    if args.float_preview:
        report["computed_float"] = _floats(outcome.computed)
    report["status"] = outcome.status
    report["certificates"] = jsonable(outcome.certificates)
    report["version"] = __version__
    report["timing"] = {"seconds": round(time.perf_counter() - start, 4)}
    return (EXIT_PASS if outcome.passed else EXIT_VIOLATION), report


def main(argv=None) -> int:
    code, report = run(argv)
    out = report.pop("_out", None)
    text = json.dumps(report, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if code == EXIT_INPUT:
        print(report.get("error", "input error"), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
