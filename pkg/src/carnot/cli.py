"""Command-line front end: per-algebra reports, batch mode, JSON output.

Exit codes: 0 success, 2 parse/validation error, 3 budget exhausted,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .algebra import (
    NotLieError, NotNilpotentError, center, lower_series, validate,
)
from .cohopf import PrecisionExhaustedError, classify
from .fileio import ParseError, load_algebra
from .gradings import carnot_test, cartan_grading, cone_flags, \
    contractive_decomposition, fine_nonneg_grading
from .nilgroup import (
    BadGradingError, BoxBudgetError, ClassTooLargeError, NilGroup,
    defendo_modulus, growth_degree, systolic_experiment, uppersys_family,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class CliInputError(ValueError):
    pass


def _load(path):
    a = load_algebra(path)
    rep = validate(a)
    if not rep.ok:
        kind, witness = rep.violations[0]
        raise CliInputError(
            f"{path}: {a.kind} axioms violated ({kind} at {witness}; "
            f"{len(rep.violations)} violations)")
    return a


def _input_hash(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _series_dims(a):
    try:
        return [s.dim for s in lower_series(a)]
    except NotNilpotentError:
        return None


def _torus_doc(a, seed):
    torus, gr = cartan_grading(a, seed=seed)
    return torus, gr, {
        "rank": torus.rank,
        "certificate": torus.certificate,
        "weights": [{"weight": list(w), "dim": s.dim}
                    for w, s in sorted(gr.components.items())],
    }


def _report_doc(path, args):
    a = _load(path)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "input": os.path.basename(path),
        "input_sha256": _input_hash(path),
        "seed": args.seed,
        "dim": a.dim,
        "kind": a.kind,
    }
    timings = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        timings[name] = round(time.perf_counter() - t0, 6)
        return out

    dims = timed("series", lambda: _series_dims(a))
    doc["nilpotent"] = dims is not None
    doc["series_dims"] = dims
    if dims is not None:
        doc["nilpotency_class"] = len(dims) - 1
        doc["center_dim"] = center(a).dim
        doc["growth_degree"] = growth_degree(a)
        res = timed("carnot", lambda: carnot_test(a))
        doc["carnot"] = res.is_carnot
        doc["carnot_grading_dims"] = (
            [s.dim for _, s in sorted(res.grading.components.items())]
            if res.is_carnot else None)
    torus, gr, tdoc = timed("torus", lambda: _torus_doc(a, args.seed))
    doc["torus"] = tdoc
    if dims is not None:    # cone analysis reads g/g^(2): nilpotent only
        doc["cone_flags"] = timed("cones", lambda: cone_flags(gr))
        cd = timed("contractive", lambda: contractive_decomposition(gr))
        doc["uncontracted_dim"] = cd.uncontracted_dim
        doc["contracted_dim"] = cd.contracted_dim
    if a.kind == "lie" and dims is not None:
        rep = timed("cohopf", lambda: classify(a, seed=args.seed))
        doc["cni_plus_dim"] = rep.cni_plus.dim
        doc["cni_dim"] = rep.cni.dim
        doc["classification"] = rep.classification
        doc["cohopf_flags"] = rep.flags
        doc["certificate_level"] = rep.certificate_level
        if rep.cni_caveat:
            doc["cni_caveat"] = rep.cni_caveat
    if args.timings:
        doc["timings"] = timings
    return doc


def _emit(doc, args, text_fn=None):
    if args.json:
        print(json.dumps(doc, sort_keys=True, separators=(",", ": "),
                         indent=1))
    elif text_fn is not None:
        text_fn(doc)
    else:
        for k in sorted(doc):
            print(f"{k}: {doc[k]}")


def _report_text(doc):
    print(f"algebra {doc['input']}  dim {doc['dim']}  kind {doc['kind']}")
    if doc.get("series_dims"):
        print(f"  nilpotent, class {doc['nilpotency_class']}, "
              f"lower-series dims {doc['series_dims']}")
        print(f"  growth degree {doc['growth_degree']}, "
              f"center dim {doc['center_dim']}")
        print(f"  Carnot: {doc['carnot']}")
    t = doc["torus"]
    ws = ", ".join(f"{tuple(w['weight'])}x{w['dim']}" for w in t["weights"])
    print(f"  split torus rank {t['rank']} ({t['certificate']}); "
          f"weights {ws}")
    if "cone_flags" in doc:
        print(f"  cone flags: {doc['cone_flags']}")
        print(f"  uncontracted dim {doc['uncontracted_dim']}")
    if "classification" in doc:
        print(f"  cni+ dim {doc['cni_plus_dim']}, cni dim {doc['cni_dim']}")
        print(f"  classification: {doc['classification']}")
        if "cni_caveat" in doc:
            print(f"  caveat: {doc['cni_caveat']}")


def cmd_report(args):
    doc = _report_doc(args.path, args)
    _emit(doc, args, _report_text)


def cmd_carnot(args):
    a = _load(args.path)
    res = carnot_test(a)
    doc = {"input": os.path.basename(args.path), "carnot": res.is_carnot}
    if res.is_carnot:
        doc["grading_dims"] = [s.dim for _, s in
                               sorted(res.grading.components.items())]
    else:
        doc["certificate"] = res.certificate
    _emit(doc, args)


def cmd_torus(args):
    a = _load(args.path)
    _, _, tdoc = _torus_doc(a, args.seed)
    tdoc["input"] = os.path.basename(args.path)
    _emit(tdoc, args)


def cmd_cohopf(args):
    a = _load(args.path)
    rep = classify(a, seed=args.seed)
    doc = {
        "input": os.path.basename(args.path),
        "classification": rep.classification,
        "flags": rep.flags,
        "semicontractable": rep.semicontractable,
        "contractable": rep.contractable,
        "essentially_contractable": rep.essentially_contractable,
        "uncontracted_dim": rep.uncontracted_dim,
        "cni_plus_dim": rep.cni_plus.dim,
        "cni_dim": rep.cni.dim,
        "certificate_level": rep.certificate_level,
    }
    if rep.cni_caveat:
        doc["cni_caveat"] = rep.cni_caveat
    _emit(doc, args)


def cmd_growth(args):
    a = _load(args.path)
    dims = _series_dims(a)
    if dims is None:
        raise CliInputError(f"{args.path}: not nilpotent")
    doc = {"input": os.path.basename(args.path), "series_dims": dims,
           "growth_degree": growth_degree(a)}
    _emit(doc, args)


def _positive_grading(a):
    res = carnot_test(a)
    if res.is_carnot:
        return res.grading
    gr = fine_nonneg_grading(a)
    return gr


def cmd_defendo(args):
    a = _load(args.path)
    group = NilGroup.from_algebra(a, class_cap=args.class_cap)
    gr = _positive_grading(a)
    lat, _ = uppersys_family(group, 1)
    k0, cert = defendo_modulus(group, gr, lat)
    doc = {"input": os.path.basename(args.path), "k0": k0,
           "certificate": cert}
    _emit(doc, args)


def cmd_systole(args):
    a = _load(args.path)
    group = NilGroup.from_algebra(a, class_cap=args.class_cap)
    res = carnot_test(a)
    if not res.is_carnot:
        raise CliInputError(
            f"{args.path}: systole experiment needs a positive (Carnot) "
            f"grading")
    lat, _ = uppersys_family(group, 1)
    exp = systolic_experiment(group, res.grading, lat,
                              list(range(2, args.mmax + 1)),
                              budget=args.enum_budget)
    doc = {"input": os.path.basename(args.path),
           "rows": [{k: v for k, v in r.items() if k != "witness"}
                    for r in exp["rows"]],
           "slope": round(exp["slope"], 6),
           "caveat": exp["caveat"]}
    _emit(doc, args)


def cmd_batch(args):
    paths = sorted(
        os.path.join(args.path, f) for f in os.listdir(args.path)
        if f.endswith(".alg"))
    if not paths:
        raise CliInputError(f"{args.path}: no .alg files")
    docs = []
    for p in paths:
        docs.append(_report_doc(p, args))
    if args.json:
        print(json.dumps(docs, sort_keys=True, separators=(",", ": "),
                         indent=1))
    else:
        hdr = f"{'name':<14}{'dim':>4}{'class':>6}{'carnot':>8}" \
              f"{'rank':>6}{'g0':>4}  classification"
        print(hdr)
        for d in docs:
            print(f"{d['input'].removesuffix('.alg'):<14}{d['dim']:>4}"
                  f"{d.get('nilpotency_class', '-'):>6}"
                  f"{str(d.get('carnot', '-')):>8}"
                  f"{d['torus']['rank']:>6}"
                  f"{d.get('uncontracted_dim', '-'):>4}"
                  f"  {d.get('classification', '-')}")


def build_parser():
    p = argparse.ArgumentParser(
        prog="carnot",
        description="Exact grading/cohopfian/systolic analysis of "
                    "structure-constant algebras over Q")
    p.add_argument("--json", action="store_true",
                   help="emit machine-readable JSON")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the randomized torus search")
    p.add_argument("--precision-budget", type=int, default=4,
                   help="precision-doubling rounds for modulus separation")
    p.add_argument("--enum-budget", type=int, default=10 ** 7,
                   help="lattice box enumeration budget")
    p.add_argument("--class-cap", type=int, default=10,
                   help="maximum nilpotency class for group computations")
    p.add_argument("--timings", action="store_true",
                   help="include timings in reports (breaks byte-level "
                        "determinism)")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, needs_dir in (
            ("report", cmd_report, False), ("carnot", cmd_carnot, False),
            ("torus", cmd_torus, False), ("cohopf", cmd_cohopf, False),
            ("growth", cmd_growth, False), ("defendo", cmd_defendo, False),
            ("systole", cmd_systole, False), ("batch", cmd_batch, True)):
        sp = sub.add_parser(name)
        sp.add_argument("path", help="algebra file"
                        if not needs_dir else "directory of .alg files")
        if name == "systole":
            sp.add_argument("--mmax", type=int, default=8,
                            help="largest dilation factor")
        sp.set_defaults(func=fn)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ParseError, CliInputError, NotLieError, NotNilpotentError,
            ClassTooLargeError, BadGradingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (BoxBudgetError, PrecisionExhaustedError) as e:
        print(f"budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except AssertionError as e:
        print(f"internal invariant violation: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
