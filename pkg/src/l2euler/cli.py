"""Command line interface: chi, betti, alexander, normball, bound, fbc."""

import argparse
import json
import logging
import sys
import time
import warnings
from fractions import Fraction

from .chain import free_by_cyclic, parse_automorphism_string
from .expansion import ConvergenceError, SingularMatrixError
from .fileformat import ParseError, load, write_presentation
from .group import InvalidCharacter, make_character
from .normball import SampleError, ball_norm_eval, read_samples_csv, reconstruct_ball, svg_sketch
from .pipeline import (
    NotAcyclicError, alexander_polynomial_2g, betti_untwisted, chi_stabilized, chi_twisted,
    luck_error_bound, operator_norm_bound,
)
from .quotients import InvalidQuotient, SizeLimitError, parse_quotient_spec
from .rank import RankPolicy

log = logging.getLogger("l2euler")

EXIT_OK, EXIT_INPUT, EXIT_ABORT = 0, 2, 3


class InputError(ValueError):
    pass


def _ints(text):
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def parse_phi(text, names):
    """``a=0,b=0,c=1`` or ``0,0,1``."""
    if "=" not in text:
        return _ints(text)
    images = {}
    for item in text.split(","):
        k, _, v = item.partition("=")
        k = k.strip()
        if k not in names:
            raise InputError("unknown generator %r in --phi" % k)
        images[k] = int(v)
    missing = [n for n in names if n not in images]
    if missing:
        raise InputError("--phi is missing %s" % ",".join(missing))
    return [images[n] for n in names]


def parse_mu(text):
    if text.startswith("auto"):
        _, _, top = text.partition(":")
        top = int(top) if top else 3
        if top < 1:
            raise InputError("mu must be positive")
        return ("auto", top)
    vals = _ints(text)
    if not vals or any(v < 1 for v in vals):
        raise InputError("mu must be positive")
    return vals[0] if len(vals) == 1 else vals


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator == 1 else "%s (%.5f)" % (x, float(x))
    return str(x)


def _load(path):
    inp = load(path)
    if inp.complex is None:
        raise InputError("%s has no chain complex (add dims/entry lines or 'complex fox')" % path)
    return inp


def _policy(args):
    return RankPolicy(k=args.primes, exact=args.exact, seed=args.seed)


def cmd_chi(args, out):
    inp = _load(args.input)
    p, C = inp.presentation, inp.complex
    q = parse_quotient_spec(p, args.quotient)
    mu = parse_mu(args.mu)
    phis = []
    for text in args.phi or []:
        phis.append(make_character(p, images=parse_phi(text, p.names)))
    for text in args.coords or []:
        phis.append(make_character(p, coords=_ints(text)))
    if not phis:
        raise InputError("give --phi or --coords")
    kw = dict(shrink=args.shrink, policy=_policy(args), method=args.method,
              clamp=not args.no_clamp, floor=args.floor, workers=args.workers)
    reports = []
    for phi in phis:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if isinstance(mu, tuple):
                rep, used = chi_stabilized(C, p, phi, q, max_mu=mu[1], **kw)
            else:
                rep = chi_twisted(C, p, phi, mu, q, **kw)
        d = rep.as_dict(timing=not args.no_timing, rounding=args.round)
        if isinstance(mu, tuple):
            d["stable_mu"] = used
        if rep.warnings:
            d["warnings"] = list(rep.warnings)
        reports.append(d)
        if args.json:
            continue
        print("phi %s  d=%d  quotient %s" % (",".join(map(str, rep.phi)), rep.d, rep.quotient), file=out)
        if rep.zero_character:
            print("warning: zero character, chi = 0", file=out)
        elif isinstance(mu, tuple):
            print("  stable at mu=%d" % used, file=out)
        for w in rep.warnings:
            if w != "zero character":
                print("warning: %s" % w, file=out)
        for r in rep.degrees:
            print("  n=%d  mu=%d  |L|=%d  v=%s  N=%d  delta=%s  [%s]" % (
                r.degree, r.mu, r.L_order, _fmt(r.v), r.N, _fmt(r.delta), r.certainty), file=out)
        print("chi = %s" % _fmt(rep.chi), file=out)
        if args.round:
            k, dist = rep.nearest()
            print("-chi ~ %d  (distance %.5f)" % (k, float(dist)), file=out)
    return reports


def cmd_betti(args, out):
    inp = _load(args.input)
    q = parse_quotient_spec(inp.presentation, args.quotient)
    rep = betti_untwisted(inp.complex, q, _policy(args), shrink=args.shrink, method=args.method)
    if not args.json:
        print("quotient %s  |L|=%d" % (rep.quotient, rep.L_order), file=out)
        print("ranks %s" % ", ".join(_fmt(r) for r in rep.ranks), file=out)
        print("betti %s" % ", ".join(_fmt(b) for b in rep.betti), file=out)
    return [rep.as_dict()]


def cmd_alexander(args, out):
    inp = load(args.input)
    p = inp.presentation
    res = alexander_polynomial_2g(p)
    norms = []
    for text in args.phi or []:
        images = parse_phi(text, p.names)
        make_character(p, images=images)
        n = res.norm(images)
        entry = {"phi": images, "alexander_norm": n}
        if args.correction is not None:
            entry["predicted_minus_chi_ab"] = n - args.correction
        norms.append(entry)
    rep = {"polynomial": str(res), "norms": norms}
    if not args.json:
        print("Delta = %s" % res, file=out)
        for e in norms:
            extra = ""
            if "predicted_minus_chi_ab" in e:
                extra = "  (-chi over ab: %d)" % e["predicted_minus_chi_ab"]
            print("  phi %s  ||phi||_A = %d%s" % (",".join(map(str, e["phi"])), e["alexander_norm"], extra), file=out)
    return [rep]


def cmd_normball(args, out):
    text = sys.stdin.read() if args.samples == "-" else open(args.samples).read()
    S = read_samples_csv(text)
    B = reconstruct_ball(S)
    rep = B.as_dict()
    if args.eval:
        rep["evaluations"] = []
        for v in args.eval:
            g = ball_norm_eval(B, _ints(v))
            rep["evaluations"].append({"v": _ints(v), "gauge": str(g)})
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svg_sketch(B))
    if not args.json:
        print("certified: %s" % ("yes" if B.certified else "no"), file=out)
        for r in B.reasons:
            print("  %s" % r, file=out)
        print("vertices:", file=out)
        for v in B.vertices_ambient():
            print("  (%s)" % ", ".join(str(x) for x in v), file=out)
        for f in B.facets:
            print("facet normal (%s) offset %s  %s" % (
                ", ".join(str(x) for x in f.normal), f.offset,
                "certified by %s" % (f.witness,) if f.certified else "uncertified"), file=out)
        for e in rep.get("evaluations", []):
            print("gauge%s = %s" % (tuple(e["v"]), e["gauge"]), file=out)
    return [rep]


def cmd_bound(args, out):
    rep = {}
    d = args.d
    if args.input:
        inp = _load(args.input)
        M = inp.complex.boundary(args.matrix)
        d = operator_norm_bound(M)
        rep["operator_norm_bound"] = d
        n = args.n if args.n is not None else len(M)
    else:
        n = args.n
    if n is None or d is None:
        raise InputError("need --n and --d, or -i FILE")
    val = luck_error_bound(n, args.k, d)
    rep.update({"n": n, "k": args.k, "d": d, "bound": val})
    if not args.json:
        print("bound = %.5f" % val, file=out)
    return [rep]


def cmd_fbc(args, out):
    gens = parse_automorphism_string(args.word)
    p = free_by_cyclic(args.rank, gens)
    text = write_presentation(p, name=args.name, source=args.source)
    header = "# Free-by-cyclic group, automorphism %s (leftmost factor applied first)\n" % args.word
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(header + text)
    else:
        out.write(header + text)
    return [{"generators": list(p.names), "relators": len(p.relators)}]


def build_parser():
    ap = argparse.ArgumentParser(prog="l2euler", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object per line")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--log", metavar="FILE", help="append a JSON run record")
    common.add_argument("--no-timing", action="store_true", help="omit timings from JSON")
    common.add_argument("-v", "--verbose", action="store_true")
    rank = argparse.ArgumentParser(add_help=False)
    rank.add_argument("--exact", action="store_true", help="fraction-free certified ranks")
    rank.add_argument("--primes", type=int, default=3, help="probe primes for modular rank")
    rank.add_argument("--shrink", action="store_true", help="pivot on units before blowing up")
    rank.add_argument("--method", default="auto", choices=["auto", "characters", "regular"])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chi", parents=[common, rank], help="twisted L2-Euler characteristic")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("--phi", action="append", help="generator images, e.g. a=0,b=0,c=1")
    c.add_argument("--coords", action="append", help="coordinates in the free abelian basis")
    c.add_argument("--mu", default="1", help="expansion parameter: scalar, per degree, or auto[:max]")
    c.add_argument("--quotient", default="trivial")
    c.add_argument("--round", action="store_true", help="report nearest integer to -chi")
    c.add_argument("--floor", action="store_true", help="round valuations down")
    c.add_argument("--no-clamp", action="store_true", help="do not cap mu at ell*n")
    c.add_argument("--workers", type=int, default=None, help="threads for Laplacian jobs")
    c.set_defaults(func=cmd_chi)

    b = sub.add_parser("betti", parents=[common, rank], help="untwisted L2-Betti numbers")
    b.add_argument("-i", "--input", required=True)
    b.add_argument("--quotient", default="trivial")
    b.set_defaults(func=cmd_betti)

    a = sub.add_parser("alexander", parents=[common], help="Alexander polynomial and norms")
    a.add_argument("-i", "--input", required=True)
    a.add_argument("--phi", action="append")
    a.add_argument("--correction", type=int, choices=[0, 1, 2],
                   help="b1/boundary correction for the comparison with -chi over ab(G)")
    a.set_defaults(func=cmd_alexander)

    n = sub.add_parser("normball", parents=[common], help="reconstruct a seminorm unit ball")
    n.add_argument("--samples", required=True, help="CSV file v1,v2[,v3],value or -")
    n.add_argument("--svg", help="write a sketch (two dimensions only)")
    n.add_argument("--eval", action="append", help="evaluate the gauge at a vector")
    n.set_defaults(func=cmd_normball)

    d = sub.add_parser("bound", parents=[common], help="finite-quotient error bound")
    d.add_argument("--n", type=int)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--d", type=float)
    d.add_argument("-i", "--input", help="take n and d from a boundary matrix")
    d.add_argument("--matrix", type=int, default=1, help="boundary index for -i")
    d.set_defaults(func=cmd_bound)

    f = sub.add_parser("fbc", parents=[common], help="emit a free-by-cyclic presentation")
    f.add_argument("--rank", type=int, required=True)
    f.add_argument("--word", required=True, help="e.g. 'eta21 sigma13 eta21 eta32 eta31'")
    f.add_argument("-o", "--output")
    f.add_argument("--name")
    f.add_argument("--source")
    f.set_defaults(func=cmd_fbc)
    return ap


def _write_log(path, record):
    with open(path, "a") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def run(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    t0 = time.time()
    code = EXIT_OK
    reports = []
    error = None
    try:
        reports = args.func(args, out)
    except (ParseError, InputError, InvalidCharacter, InvalidQuotient, SampleError,
            OSError, ValueError) as exc:
        if isinstance(exc, (NotAcyclicError, SingularMatrixError)):
            code = EXIT_ABORT
        else:
            code = EXIT_INPUT
        error = str(exc)
    except (SizeLimitError, ConvergenceError, MemoryError) as exc:
        code = EXIT_ABORT
        error = str(exc)
    if error:
        print("error: %s" % error, file=sys.stderr)
    elif args.json:
        for r in reports:
            out.write(json.dumps(r, sort_keys=True) + "\n")
    if args.log:
        _write_log(args.log, {
            "argv": list(argv if argv is not None else sys.argv[1:]),
            "command": args.command, "exit": code, "error": error,
            "reports": reports, "started": t0, "seconds": round(time.time() - t0, 6),
        })
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
