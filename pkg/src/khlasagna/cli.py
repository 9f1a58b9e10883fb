"""
Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 unsupported rank, 4 verification
mismatch.  ``--json`` output is canonical (sorted keys), so identical
invocations give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .corpus import fixture_names, fixture_text
from .frobenius import DeformationMultiset, unknot_algebra
from .homology import deformed_homology, integral_homology, q_min, rational_homology
from .khcomplex import UnsupportedRank, cube
from .lasagna import (FourManifoldDatum, SurfaceDatum, cable_invariants, coloring_contributions,
                      genus_bound, gl1_skein_tridegree, is_homologically_diverse, predict_decomposition,
                      s2xd2_model, surface_tridegree, verify_decomposition)
from .linkdiag import PDError, cable_unknot, parse_braid, parse_diagram

EXIT_OK, EXIT_INPUT, EXIT_RANK, EXIT_MISMATCH = 0, 2, 3, 4


class InputError(ValueError):
    """Invalid invocation detected after argument parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True)


def table(headers, rows) -> str:
    """Right-aligned plain text table."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(args, obj, text):
    print(dumps(obj) if args.json else text)


# ---------------------------------------------------------------------------
# inputs
# ---------------------------------------------------------------------------

def _read_text(value: str) -> str:
    if os.path.isfile(value):
        with open(value) as fh:
            return fh.read().strip()
    return value


def load_diagram(args):
    sources = [s for s in ("pd", "braid", "cable", "fixture") if getattr(args, s, None) is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --pd, --braid, --cable, --fixture")
    src = sources[0]
    if src == "pd":
        return parse_diagram(_read_text(args.pd))
    if src == "braid":
        text = _read_text(args.braid)
        return parse_braid(text if text.lstrip().startswith("BR") else "BR[%s]" % text)
    if src == "cable":
        try:
            f, n, m = (int(x) for x in args.cable.split(","))
        except ValueError:
            raise InputError("--cable expects f,n,m") from None
        return cable_unknot(f, n, m)
    if args.fixture not in fixture_names():
        raise InputError("unknown fixture %r; known: %s" % (args.fixture, ", ".join(fixture_names())))
    return parse_diagram(fixture_text(args.fixture))


def load_sigma(text, distinct=False):
    try:
        sigma = DeformationMultiset.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("bad --sigma %r: %s" % (text, exc)) from None
    if distinct and any(m != 1 for m in sigma.multiplicities):
        raise InputError("this command needs all multiplicities equal to 1")
    return sigma


def _load_json(value):
    try:
        return json.loads(_read_text(value))
    except json.JSONDecodeError as exc:
        raise InputError("bad JSON: %s" % exc) from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError("expected comma separated integers, got %r" % text) from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_hom(args):
    D = load_diagram(args)
    if args.sigma is not None:
        sigma = load_sigma(args.sigma)
        if sigma.N != args.n:
            raise InputError("--sigma has total multiplicity %d but --n is %d" % (sigma.N, args.n))
        H = deformed_homology(D, sigma)
        obj = H.to_json(args.grading)
        obj["sigma"] = str(sigma)
        rows = [(f["t"], next(d["dim"] for d in obj["dims"] if d["t"] == f["t"]),
                 " ".join("%d:%d" % tuple(j) for j in f["jumps"])) for f in obj["filtration"]]
        _emit(args, obj, table(["t", "dim", "filtration q:dim"], rows))
        return EXIT_OK
    if args.coeff == "z":
        H = integral_homology(cube(D, unknot_algebra(args.n)))
    else:
        H = rational_homology(cube(D, unknot_algebra(args.n)))
    obj = H.to_json(args.grading)
    obj["coefficients"] = "Z" if args.coeff == "z" else "Q"
    rows = [(e["t"], e["q"], e["rank"], "") for e in obj["free"]]
    for e in obj["torsion"]:
        # tables list torsion where the chosen complex produces it
        t, q = (e["t_fr"], e["q_fr"]) if args.grading == "fr" else (e["t"], e["q"])
        rows.append((t, q, "", " ".join("Z/%d" % o for o in e["orders"])))
    rows.sort(key=lambda r: (r[0], r[1]))
    note = ""
    if obj["torsion"] and args.grading == "fr":
        note = "\n(JSON also gives the std placement of torsion)"
    _emit(args, obj, table(["t", "q", "rank", "torsion"], rows) + note)
    return EXIT_OK


def cmd_qmin(args):
    D = load_diagram(args)
    sigma = load_sigma(args.sigma)
    N, w = sigma.N, D.writhe
    t_fr = args.t if args.grading == "fr" else w - args.t
    H = deformed_homology(D, sigma, [t_fr])
    value = q_min(H, t_fr)
    if value is not None and args.grading == "std":
        value = value + N * w
    obj = {"sigma": str(sigma), "t": args.t, "grading": args.grading, "writhe": w,
           "qmin": value, "empty": value is None}
    _emit(args, obj, "undefined (no nonzero class)" if value is None else str(value))
    return EXIT_OK


def cmd_bound(args):
    if args.n < 2:
        raise InputError("the bound needs --n >= 2")
    # a std q_min is converted with the framing equal to the self-intersection
    qmin = args.qmin if args.grading == "fr" else args.qmin - args.n * args.ss
    chi = genus_bound(args.n, qmin, args.ss)
    obj = {"N": args.n, "qmin": args.qmin, "ss": args.ss, "grading": args.grading, "chi_max": chi}
    _emit(args, obj, "chi <= %d" % chi)
    return EXIT_OK


def cmd_decompose(args):
    D = load_diagram(args)
    sigma = load_sigma(args.sigma)
    if any(m > 2 for m in sigma.multiplicities) and D.n_crossings:
        raise UnsupportedRank("coloring factors need multiplicities in {1, 2}")
    parts = coloring_contributions(D, sigma)
    t_out = (lambda t: t) if args.grading == "fr" else (lambda t: D.writhe - t)
    colorings = [{"coloring": [str(sigma.values[col[c]]) for c in sorted(col)],
                  "dims": [{"t": t_out(t), "dim": x} for t, x in sorted(dims.items(), key=lambda i: t_out(i[0]))]}
                 for col, dims in parts]
    obj = {"sigma": str(sigma), "grading": args.grading, "colorings": colorings}
    status = EXIT_OK
    if sigma.N == 2:
        report = verify_decomposition(D, sigma)
        rows = [{"t": t_out(r["t"]), "computed": r["computed"], "predicted": r["predicted"],
                 "match": r["match"]} for r in report.rows]
        rows.sort(key=lambda r: r["t"])
        obj.update({"rows": rows, "match": report.ok})
        text = table(["t", "computed", "predicted", "match"],
                     [(r["t"], r["computed"], r["predicted"], "yes" if r["match"] else "NO") for r in rows])
        if not report.ok:
            status = EXIT_MISMATCH
    else:
        pred = predict_decomposition(D, sigma)
        rows = sorted((t_out(t), x) for t, x in pred.items())
        obj["predicted"] = [{"t": t, "dim": x} for t, x in rows]
        text = table(["t", "predicted"], rows)
    _emit(args, obj, text)
    return status


def cmd_gl1(args):
    W = FourManifoldDatum.from_json(_load_json(args.manifold))
    v = _int_list(args.v) if args.v is not None else [0] * W.b2
    alpha, q, t = gl1_skein_tridegree(W, v)
    obj = {"alpha": list(alpha), "q": q, "t": t}
    _emit(args, obj, "alpha=%s  q=%d  t=%d" % (list(alpha), q, t))
    return EXIT_OK


def cmd_surface(args):
    S = SurfaceDatum.from_json(_load_json(args.surface))
    cls = S.total_class
    if args.ss is not None:
        ss = args.ss
    elif args.manifold is not None:
        W = FourManifoldDatum.from_json(_load_json(args.manifold))
        if len(cls) != W.b2:
            raise InputError("surface classes have length %d, manifold has b2 = %d" % (len(cls), W.b2))
        ss = W.pair(cls, cls) if cls else 0
    else:
        raise InputError("give --ss or --manifold to fix the self-intersection")
    _, q, t = surface_tridegree(args.n, S.chi, ss, cls)
    diverse, witness = is_homologically_diverse(S)
    obj = {"N": args.n, "chi": S.chi, "class": list(cls), "ss": ss, "q": q, "t": t,
           "diverse": diverse, "nullhomologous_subset": witness}
    text = "class=%s  q=%d  t=%d\nhomologically diverse: %s" % (list(cls), q, t, "yes" if diverse else
                                                               "no (components %s)" % witness)
    _emit(args, obj, text)
    return EXIT_OK


def cmd_cable(args):
    rec = cable_invariants(args.r, args.m)
    keys = ["n", "s", "chi_bound_s", "chi_km", "handle_lower_bound"]
    rows = [(k, rec[k]) for k in keys]
    rows.append(("qmin_conditional", "%d (conditional)" % rec["qmin_conditional"]["value"]))
    _emit(args, rec, table(["quantity", "value"], rows))
    return EXIT_OK


def cmd_spheres(args):
    model = s2xd2_model(args.k, args.depth)
    obj = {"k": args.k, "depth": args.depth, "degrees": [{"q": q, "mult": m} for q, m in model]}
    _emit(args, obj, table(["q", "mult"], model))
    return EXIT_OK


def cmd_verify_all(args):
    from .acceptance import run_all
    results = run_all(only=args.only, threads=_threads())
    # timings vary between runs, so they stay out of the JSON
    obj = {"criteria": [{k: v for k, v in r.items() if k != "seconds"} for r in results],
           "ok": all(r["ok"] for r in results)}
    rows = [(r["id"], "PASS" if r["ok"] else "FAIL", r["name"], "%.1f" % r["seconds"], r["detail"])
            for r in results]
    _emit(args, obj, table(["#", "result", "criterion", "s", "detail"], rows))
    return EXIT_OK if obj["ok"] else EXIT_MISMATCH


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KHR_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_diagram(p):
    g = p.add_argument_group("diagram source (exactly one)")
    g.add_argument("--pd", help="PD[...] text or a file containing it")
    g.add_argument("--braid", help="BR[width; s1 -s2 ...] or 'width; s1 -s2 ...'")
    g.add_argument("--cable", help="f,n,m for the cable of the f-framed unknot")
    g.add_argument("--fixture", help="name of a bundled fixture")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--grading", choices=("fr", "std"), default="fr")

    ap = _Parser(prog="khr", description="framed gl(N) link homology and surface gradings")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hom", parents=[common], help="bigraded or filtered homology")
    _add_diagram(p)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--coeff", choices=("z", "q"), default="q")
    p.add_argument("--sigma", help="deformation, e.g. 0,1 or 0^2,1")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("qmin", parents=[common], help="minimal filtration degree at t")
    _add_diagram(p)
    p.add_argument("--sigma", default="0,1")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_qmin)

    p = sub.add_parser("bound", parents=[common], help="Euler characteristic bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--qmin", type=int, required=True)
    p.add_argument("--ss", type=int, required=True, help="self-intersection")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("decompose", parents=[common], help="coloring decomposition")
    _add_diagram(p)
    p.add_argument("--sigma", default="0,1")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gl1", parents=[common], help="gl(1) skein tridegree")
    p.add_argument("--manifold", required=True, help='JSON {"Q": [[..]], "alpha0": [..]} or file')
    p.add_argument("--v", help="offset class, comma separated")
    p.set_defaults(func=cmd_gl1)

    p = sub.add_parser("surface", parents=[common], help="surface tridegree and diversity")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--surface", required=True, help='JSON {"components": [{"chi":..,"class":[..],"closed":..}]}')
    p.add_argument("--manifold", help="intersection form used to compute [S].[S]")
    p.add_argument("--ss", type=int, help="self-intersection, overrides --manifold")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("cable", parents=[common], help="cable closed forms")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_cable)

    p = sub.add_parser("spheres", parents=[common], help="S^2 x D^2 sphere model")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--depth", type=int, default=10)
    p.set_defaults(func=cmd_spheres)

    p = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedRank as exc:
        print("unsupported rank: %s" % exc, file=sys.stderr)
        return EXIT_RANK
    except (InputError, PDError, ValueError, ZeroDivisionError) as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
