"""Command-line front end.

Exit status: 0 success, 1 invalid input, 2 usage error, 3 an internal
identity failed (a bug).  Structured output goes to stdout; diagnostics
go to stderr as one JSON object per line.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__, corpus, errors, figures
from . import io as dio
from .classify import (
    DEFAULT_BOUND, StratumSignature, classify, enumerate_orbits_bfs, same_orbit,
)
from .framing import framing_vector, turning_number, twist_framing
from .holonomy import (
    character, exponential_action, flat_projection, holonomy_kind, homology_basis,
    torsor_difference,
)
from .report import analyse, render_delimited, write_figures
from .surface import EXACT, FLOAT, build_surface, check_gauss_bonnet, diagnose, euler_data

ENV_MODE = "DILATKIT_MODE"


def _mode(args):
    m = getattr(args, "mode", None) or os.environ.get(ENV_MODE) or None
    if m is not None and m not in (EXACT, FLOAT):
        raise errors.ParseError(f"{ENV_MODE} must be exact or float, got {m!r}")
    return m


def _emit(doc, out=None):
    out = out or sys.stdout
    out.write(dio.dumps(doc))
    out.write("\n")


def _diag(exc):
    sys.stderr.write(dio.dumps(exc.as_dict()) + "\n")


def _surface(args, path=None):
    spec = dio.read_surface(path or args.surface, _mode(args))
    return spec, build_surface(spec)


# -- subcommands -------------------------------------------------------------

def cmd_validate(args):
    spec = dio.read_surface(args.surface, _mode(args))
    problems = diagnose(spec)
    if problems:
        for p in problems:
            _diag(p)
        _emit({"valid": False, "diagnostics": [p.as_dict() for p in problems]})
        return 1
    s = build_surface(spec)
    if not check_gauss_bonnet(s):
        raise errors.InternalInvariantError("cone orders do not sum to 2g - 2")
    _emit({"valid": True, "genus": s.genus, "n": s.n, "digest": dio.digest(spec)})
    return 0


def cmd_report(args):
    spec = dio.read_surface(args.surface, _mode(args))
    surface, basis, rep = analyse(spec)
    if args.figures:
        rep["figures"] = [os.path.basename(p)
                          for p in write_figures(surface, basis, rep, args.figures)]
    if args.json:
        _emit(rep)
    else:
        sys.stdout.write(render_delimited(rep))
    return 0


def cmd_holonomy(args):
    _, s = _surface(args)
    basis = homology_basis(s)
    doc = dio.holonomy_to_doc(character(s, basis))
    doc["kind"] = holonomy_kind(s)
    doc["loops"] = [[list(st) for st in w] for w in basis.loops]
    _emit(doc)
    return 0


def cmd_act(args):
    h = dio.holonomy_from_doc(dio.read_json(args.holonomy))
    alpha = dio.periods_from_doc(dio.read_json(args.periods))
    _emit(dio.holonomy_to_doc(exponential_action(h, alpha)))
    return 0


def cmd_flatten(args):
    h = dio.holonomy_from_doc(dio.read_json(args.holonomy))
    _emit(dio.holonomy_to_doc(flat_projection(h)))
    return 0


def cmd_diff(args):
    h1 = dio.holonomy_from_doc(dio.read_json(args.first))
    h2 = dio.holonomy_from_doc(dio.read_json(args.second))
    _emit(dio.periods_to_doc(torsor_difference(h1, h2)))
    return 0


def cmd_turning(args):
    _, s = _surface(args)
    path = dio.path_from_doc(dio.read_json(args.path))
    _emit({"turning_number": turning_number(s, path)})
    return 0


def cmd_framing(args):
    _, s = _surface(args)
    basis = homology_basis(s)
    f = framing_vector(s, basis)
    _emit(dio.framing_to_doc(f, basis.representatives))
    return 0


def cmd_twist(args):
    _, s = _surface(args)
    alpha = dio.periods_from_doc(dio.read_json(args.periods))
    off = twist_framing(s, alpha)
    _emit({"offsets": list(off.offsets)})
    return 0


def _parse_kappa(text):
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise errors.InvalidSignature(f"kappa must be comma separated integers: {text!r}") \
            from None


def _signature(args):
    return StratumSignature(args.genus, _parse_kappa(args.kappa))


def cmd_classify(args):
    oc = classify(_signature(args), args.bound)
    _emit(oc.as_dict())
    return 0


def cmd_orbit_equal(args):
    f1 = dio.framing_from_doc(dio.read_json(args.first))
    f2 = dio.framing_from_doc(dio.read_json(args.second))
    _emit({"verdict": same_orbit(f1, f2, args.bound)})
    return 0


def cmd_orbits(args):
    sig = _signature(args)
    res = enumerate_orbits_bfs(sig, args.bound)
    _emit({"count": res.count, "modulus": res.modulus, "states": res.states,
           "normal_forms": [list(x) for x in res.normal_forms],
           "arf": list(res.arfs) if res.arfs is not None else None,
           "window_counts": list(res.window_counts)})
    return 0


def _param_label(x):
    return str(x).replace("/", "_").replace("-", "m")


def cmd_corpus(args):
    os.makedirs(args.out, exist_ok=True)
    jobs = []
    if args.name == "all":
        jobs = corpus.default_corpus()
    elif args.params:
        for p in args.params:
            val = Fraction(p)
            jobs.append((f"{args.name}_{_param_label(p)}", corpus.generate(args.name, val)))
    else:
        jobs.append((args.name, corpus.generate(args.name)))
    written = []
    for label, spec in jobs:
        s = build_surface(spec)
        if not check_gauss_bonnet(s):
            raise errors.InternalInvariantError("generated surface fails Gauss-Bonnet")
        path = os.path.join(args.out, f"{label}.json")
        dio.write_json(path, dio.surface_to_doc(spec))
        orders = [c.order for c in s.marked_cones]
        sidecar = {
            "genus": s.genus, "n": s.n, "kind": holonomy_kind(s),
            "euler": list(euler_data(s)),
            "angle_turns": [dio.num(c.angle_turns) for c in s.marked_cones],
            "order_real": [repr(o.real + 0.0) for o in orders],
            "order_sum": [repr(sum(o.real for o in orders) + 0.0),
                          repr(sum(o.imag for o in orders) + 0.0)],
        }
        dio.write_json(os.path.join(args.out, f"{label}.expected.json"), sidecar)
        written.append(path)
    _emit({"written": written})
    return 0


def cmd_svg(args):
    _, s = _surface(args)
    curves = ()
    if args.curves:
        curves = homology_basis(s).representatives
    fig = figures.surface_figure(s, curves)
    if args.out:
        figures.save(fig, args.out)
    else:
        sys.stdout.write(figures.svg_text(fig))
    return 0


# -- parser ------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="dilatkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"dilatkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        return p

    def with_surface(p):
        p.add_argument("surface", help="surface JSON file")
        p.add_argument("--mode", choices=[EXACT, FLOAT],
                       help=f"override the file's mode (also {ENV_MODE})")
        return p

    with_surface(add("validate", cmd_validate, "check a surface file"))
    p = with_surface(add("report", cmd_report, "full invariant report"))
    p.add_argument("--json", action="store_true", help="canonical JSON instead of key/value lines")
    p.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
    with_surface(add("holonomy", cmd_holonomy, "character on a homology basis"))
    p = add("act", cmd_act, "exponential action on holonomy data")
    p.add_argument("holonomy")
    p.add_argument("periods")
    p = add("flatten", cmd_flatten, "flat projection of holonomy data")
    p.add_argument("holonomy")
    p = add("diff", cmd_diff, "period vector taking the second datum to the first")
    p.add_argument("first")
    p.add_argument("second")
    p = with_surface(add("turning", cmd_turning, "turning number of a closed path"))
    p.add_argument("path")
    with_surface(add("framing", cmd_framing, "framing vector on the canonical basis"))
    p = with_surface(add("twist", cmd_twist, "turning-number offsets of a period vector"))
    p.add_argument("periods")

    def with_sig(p, default_bound=None):
        p.add_argument("--genus", type=int, required=True)
        p.add_argument("--kappa", default="", help="comma separated, e.g. 3,-3")
        p.add_argument("--bound", type=int, default=default_bound)
        return p

    with_sig(add("classify", cmd_classify, "component count of a stratum"))
    p = add("orbit-equal", cmd_orbit_equal, "are two framings in one orbit")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    with_sig(add("orbits", cmd_orbits, "orbit enumeration by breadth-first search"),
             DEFAULT_BOUND)
    p = add("corpus", cmd_corpus, "write named surfaces and expected invariants")
    p.add_argument("name", help="generator name or 'all'")
    p.add_argument("params", nargs="*", help="one file per parameter value")
    p.add_argument("--out", default=".", help="output directory")
    p = with_surface(add("svg", cmd_svg, "SVG drawing of the presentation"))
    p.add_argument("--out", help="output file (stdout if omitted)")
    p.add_argument("--curves", action="store_true", help="draw the symplectic basis curves")
    return ap


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.DilatkitError as exc:
        _diag(exc)
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(dio.dumps({"code": "IOError", "message": str(exc)}) + "\n")
        return 1
    except json.JSONDecodeError as exc:
        sys.stderr.write(dio.dumps({"code": "ParseError", "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
