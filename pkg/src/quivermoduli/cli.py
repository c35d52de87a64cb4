"""Command-line front door.

Exit codes: 0 success, 1 invalid input, 2 size guard, 3 integrality failure
or a failed oracle certification.  Output is JSON (sorted keys) or CSV.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .counting import (enumerate_cycle_classes, simple_count_poly, sst_count_poly,
                       stable_count_poly, conjecture_scan)
from .exactq import IntegralityError, PolyQ
from .existence import simple_nonempty, sst_nonempty, st_nonempty, st_nonempty_al
from .framed import (SizeGuardError, count_forests, enumerate_forests, forest_genfun,
                     hilb_betti, hilb_nonempty, smooth_model_poincare)
from .hn import betti_coprime, hn_rational
from .oracle import DEFAULT_BUDGET, census_csv, point_counts, verify
from .quiver import Quiver, QuiverError, parse_builtin, theta_coprime
from .roots import classify_root

CACHE_ENV = "QUIVERMODULI_CACHE"

SUBCOMMANDS = {
    "roots": ("classify",),
    "euler-form": (),
    "coprime": (),
    "hn-poly": (),
    "betti": (),
    "count": ("stable", "sst", "simple"),
    "exists": ("sst", "st", "simple", "al"),
    "hilb": ("betti", "nonempty", "forests", "genfun"),
    "smooth-model": (),
    "cycles": ("primitive",),
    "conjecture-scan": (),
    "oracle": ("verify", "census"),
}


class InputError(ValueError):
    pass


class VerificationFailed(Exception):
    def __init__(self, doc):
        super().__init__("verification failed")
        self.doc = doc


def load_quiver(source: str) -> Quiver:
    path = Path(source)
    if path.is_file():
        try:
            return Quiver.from_json(json.loads(path.read_text()))
        except json.JSONDecodeError as exc:
            raise InputError(f"--quiver: {path} is not valid JSON ({exc})") from None
    return parse_builtin(source)


def _vector(Q: Quiver, raw: str | None, flag: str, default=None):
    if raw is None:
        if default is None:
            raise InputError(f"{flag} is required")
        return default
    try:
        try:
            data = json.loads(raw)
        except json.JSONDecodeError:
            # bare comma list such as 2,3
            data = [int(x) for x in raw.split(",")]
        v = Q.vector(data, flag)
    except (json.JSONDecodeError, QuiverError, TypeError, ValueError) as exc:
        raise InputError(f"{flag}: {exc}") from None
    return v


def _dim(Q, raw, flag="--d"):
    v = _vector(Q, raw, flag)
    if min(v) < 0:
        raise InputError(f"{flag}: entries must be non-negative, got {list(v)}")
    return v


def poly_doc(p: PolyQ) -> dict:
    return {"poly": p.pretty(), "coeffs": p.to_json()["coeffs"], "at_q_1": str(p(1))}


# handlers return (document, csv rows or None)

def _roots(Q, a):
    d = _dim(Q, a.d)
    return classify_root(Q, d, allow_cycles=a.allow_cycles).to_json(Q), None


def _euler(Q, a):
    d, e = _vector(Q, a.d, "--d"), _vector(Q, a.e, "--e")
    return {"d": list(d), "e": list(e), "value": Q.euler_form(d, e)}, None


def _coprime(Q, a):
    d, th = _dim(Q, a.d), _vector(Q, a.theta, "--theta")
    return {"coprime": theta_coprime(Q, th, d)}, None


def _theta(Q, a):
    return _vector(Q, a.theta, "--theta", default=(0,) * Q.n)


def _hn_poly(Q, a):
    d = _dim(Q, a.d)
    r = hn_rational(Q, _theta(Q, a), d, method=a.method or "recursive")
    return {**r.to_json(), "pretty": r.pretty()}, None


def _betti(Q, a):
    d, th = _dim(Q, a.d), _vector(Q, a.theta, "--theta")
    return poly_doc(betti_coprime(Q, th, d)), None


def _count(Q, a):
    d = _dim(Q, a.d)
    if a.what == "simple":
        return poly_doc(simple_count_poly(Q, d)), None
    fn = stable_count_poly if a.what == "stable" else sst_count_poly
    return poly_doc(fn(Q, _theta(Q, a), d)), None


def _exists(Q, a):
    if a.what == "al":
        if a.parts is None:
            raise InputError("--parts is required, e.g. '[[2, {\"i\": 1}]]'")
        try:
            parts = [(int(m), Q.vector(v, "--parts")) for m, v in json.loads(a.parts)]
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise InputError(f"--parts: {exc}") from None
        return {"nonempty": st_nonempty_al(Q, _theta(Q, a), parts)}, None
    d = _dim(Q, a.d)
    if a.what == "simple":
        return {"nonempty": simple_nonempty(Q, d)}, None
    if a.what == "st":
        return {"nonempty": st_nonempty(Q, _theta(Q, a), d)}, None
    return {"nonempty": sst_nonempty(Q, _theta(Q, a), d, method=a.method or "schofield")}, None


def _hilb(Q, a):
    d, n = _dim(Q, a.d) if a.what != "genfun" else None, _dim(Q, a.n, "--n")
    if a.what == "betti":
        return poly_doc(hilb_betti(Q, d, n)), None
    if a.what == "nonempty":
        return {"nonempty": hilb_nonempty(Q, d, n)}, None
    if a.what == "forests":
        forests = enumerate_forests(Q, d, n, a.max_enumerate)
        rows = [["index", "forest"]] + [[k, json.dumps(f.to_json(Q), sort_keys=True)]
                                         for k, f in enumerate(forests)]
        return {"count": count_forests(Q, d, n), "forests": [f.to_json(Q) for f in forests]}, rows
    if a.N is None:
        raise InputError("--N is required for the generating function")
    series = forest_genfun(Q, n, a.N)
    coeffs = sorted((e, int(series[e](0))) for e in series.support())
    rows = [["d", "count"]] + [[json.dumps(list(e)), c] for e, c in coeffs]
    return {"N": a.N, "coefficients": [{"d": list(e), "count": c} for e, c in coeffs]}, rows


def _smooth(Q, a):
    d, n = _dim(Q, a.d), _dim(Q, a.n, "--n")
    return poly_doc(smooth_model_poincare(Q, _theta(Q, a), d, n)), None


def _cycles(Q, a):
    d = _dim(Q, a.d)
    prim = [c for c in enumerate_cycle_classes(Q, d) if c.is_primitive()]
    rows = [["arrows", "vertices"]] + [[" ".join(map(str, c.arrows)),
                                        " ".join(Q.vertices[v] for v in c.vertices(Q))] for c in prim]
    return {"count": len(prim), "classes": [list(c.arrows) for c in prim]}, rows


def _scan(Q, a):
    rows_doc = conjecture_scan(Q, _dim(Q, a.d))
    rows = [["d", "poly", "positive"]] + [[json.dumps(list(r["d"])), r["poly"].pretty(), r["positive"]]
                                          for r in rows_doc]
    return {"rows": [{"d": list(r["d"]), **poly_doc(r["poly"]), "positive": r["positive"]}
                     for r in rows_doc]}, rows


def _oracle(Q, a):
    d, th = _dim(Q, a.d), _theta(Q, a)
    if a.q is None:
        raise InputError("--q is required")
    try:
        if a.what == "verify":
            doc = verify(Q, th, d, a.q, a.budget, a.backend, a.workers)
            if not doc["pass"]:
                raise VerificationFailed(doc)
            rows = [["check", "pass", "expected", "got"]] + [
                [c["name"], c["pass"], c["expected"], c["got"]] for c in doc["checks"]]
            return doc, rows
        pc = point_counts(Q, th, d, a.q, a.budget, a.backend, a.workers)
    except ValueError as exc:
        if isinstance(exc, QuiverError):
            raise
        raise InputError(str(exc)) from None
    rows = list(csv.reader(io.StringIO(census_csv(pc))))
    return pc.to_json(), rows


HANDLERS = {
    "roots": _roots, "euler-form": _euler, "coprime": _coprime, "hn-poly": _hn_poly,
    "betti": _betti, "count": _count, "exists": _exists, "hilb": _hilb,
    "smooth-model": _smooth, "cycles": _cycles, "conjecture-scan": _scan, "oracle": _oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", required=True, help="loop:m, kronecker:m, subspace:m or a JSON file")
    common.add_argument("--d", help="dimension vector: JSON object, list or int")
    common.add_argument("--e", help="second dimension vector (euler-form)")
    common.add_argument("--theta", help="stability: JSON object, list or int")
    common.add_argument("--n", help="framing vector")
    common.add_argument("--N", type=int, help="truncation for generating functions")
    common.add_argument("--parts", help="JSON list of [multiplicity, vector] pairs")
    common.add_argument("--method", help="direct|recursive (hn-poly) or schofield|hn (exists sst)")
    common.add_argument("--allow-cycles", action="store_true")
    common.add_argument("--q", type=int, help="field size for the oracle (2, 3 or 5)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle point budget")
    common.add_argument("--backend", choices=("compiled", "python"), help="census kernel")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-enumerate", type=int, default=100_000)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--cache-dir", help=f"result cache (default: ${CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(prog="quivermoduli", description="Counting invariants of quiver moduli")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, whats in SUBCOMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        if whats:
            p.add_argument("what", choices=whats)
        else:
            p.set_defaults(what=None)
    return parser


def render(doc, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if rows is None:
        rows = [["key", "value"]] + [[k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v]
                                     for k, v in sorted(doc.items())]
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


_UNCACHED = {"backend", "workers", "cache_dir", "no_cache", "quiver"}


def cache_key(Q: Quiver, args: argparse.Namespace) -> str:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in _UNCACHED}
    blob = json.dumps({"version": __version__, "quiver": Q.to_json(), "params": params}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_write(directory: Path, key: str, text: str) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, directory / key)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(argv=None, out=sys.stdout, err=sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    try:
        Q = load_quiver(args.quiver)
        cache_dir = None if args.no_cache else (args.cache_dir or os.environ.get(CACHE_ENV))
        if cache_dir:
            path = Path(cache_dir) / cache_key(Q, args)
            if path.is_file():
                out.write(path.read_text())
                return 0
        text = render(*HANDLERS[args.command](Q, args), args.format)
        if cache_dir:
            _cache_write(Path(cache_dir), cache_key(Q, args), text)
        out.write(text)
        return 0
    except VerificationFailed as exc:
        out.write(render(exc.doc, None, "json"))
        err.write("error: oracle verification failed\n")
        return 3
    except (InputError, QuiverError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except SizeGuardError as exc:
        err.write(f"size guard: {exc}\n")
        return 2
    except IntegralityError as exc:
        err.write(f"integrality failure (please report): {exc}\n")
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
