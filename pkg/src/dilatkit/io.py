"""Canonical JSON documents for surfaces, paths and framings."""

import hashlib
import json
from fractions import Fraction

from . import errors
from .curves import CurvePath, Segment
from .framing import Framing
from .geometry import Qi
from .holonomy import CharValue, HolonomyData, Order, Period, PeriodVector
from .surface import EXACT, FLOAT, SurfaceSpec


def rat(x):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def parse_rat(v):
    try:
        if isinstance(v, (list, tuple)):
            num, den = v
            if isinstance(num, bool) or isinstance(den, bool):
                raise TypeError
            if not isinstance(num, int) or not isinstance(den, int):
                raise TypeError
            return Fraction(num, den)
        if isinstance(v, int) and not isinstance(v, bool):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v)
    except (TypeError, ValueError, ZeroDivisionError):
        pass
    raise errors.ParseError(f"not a rational number: {v!r}")


def point(z):
    return [rat(z.re), rat(z.im)]


def parse_point(v):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise errors.ParseError(f"not a point: {v!r}")
    return Qi(parse_rat(v[0]), parse_rat(v[1]))


def dumps(doc):
    """Canonical text: compact separators, insertion-ordered keys."""
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=True)


def surface_to_doc(spec):
    return {
        "polygons": [[point(v) for v in poly] for poly in spec.polygons],
        "pairings": [[list(a), list(b)] for a, b in spec.pairings],
        "options": {"forget_removable": bool(spec.forget_removable), "mode": spec.mode},
    }


def surface_from_doc(doc, mode=None):
    """Parse a surface document; ``mode`` overrides the stored option."""
    if not isinstance(doc, dict):
        raise errors.ParseError("surface document must be an object")
    try:
        polys = [[parse_point(v) for v in poly] for poly in doc["polygons"]]
        pairings = []
        for pr in doc["pairings"]:
            (p, e), (q, f) = pr
            for x in (p, e, q, f):
                if not isinstance(x, int) or isinstance(x, bool):
                    raise errors.ParseError(f"pairing entries must be integers: {pr!r}")
            pairings.append(((p, e), (q, f)))
    except KeyError as exc:
        raise errors.ParseError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError):
        raise errors.ParseError("malformed polygons or pairings") from None
    opts = doc.get("options", {}) or {}
    m = mode or opts.get("mode", EXACT)
    if m not in (EXACT, FLOAT):
        raise errors.ParseError(f"unknown mode {m!r}")
    return SurfaceSpec(polys, pairings, bool(opts.get("forget_removable", False)), m)


def surface_dumps(spec):
    return dumps(surface_to_doc(spec))


def surface_loads(text, mode=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise errors.ParseError(f"invalid JSON: {exc}") from None
    return surface_from_doc(doc, mode)


def digest(spec):
    return hashlib.sha256(surface_dumps(spec).encode("ascii")).hexdigest()


def read_surface(path, mode=None):
    with open(path, encoding="utf-8") as fh:
        return surface_loads(fh.read(), mode)


def write_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
        fh.write("\n")


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise errors.ParseError(f"invalid JSON in {path}: {exc}") from None


# -- numbers that may be exact or floating -----------------------------------

def num(x):
    """Exact values as ``[num, den]``, floats as decimal strings."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return rat(x)
    return repr(float(x))


def parse_num(v):
    if isinstance(v, str):
        try:
            return float(v)
        except ValueError:
            raise errors.ParseError(f"not a number: {v!r}") from None
    if isinstance(v, float):
        return v
    return parse_rat(v)


# -- paths -------------------------------------------------------------------

def path_to_doc(path):
    return {
        "closed": bool(path.closed),
        "segments": [
            {"polygon": s.polygon, "start": point(s.start), "end": point(s.end),
             "exit": list(s.exit) if s.exit is not None else None}
            for s in path.segments
        ],
    }


def path_from_doc(doc):
    try:
        segs = []
        for s in doc["segments"]:
            ex = s.get("exit")
            segs.append(Segment(int(s["polygon"]), parse_point(s["start"]),
                                parse_point(s["end"]),
                                (int(ex[0]), int(ex[1])) if ex is not None else None))
        return CurvePath(segs, bool(doc.get("closed", True)))
    except (KeyError, TypeError, ValueError) as exc:
        raise errors.ParseError(f"malformed path document: {exc}") from None


# -- framings ----------------------------------------------------------------

def framing_to_doc(f, representatives=()):
    return {"genus": f.genus, "n": f.n, "tau": list(f.tau), "r": list(f.r),
            "representatives": [path_to_doc(p) for p in representatives]}


def framing_from_doc(doc):
    try:
        return Framing(int(doc["genus"]), int(doc["n"]), doc["tau"], doc["r"])
    except (KeyError, TypeError, ValueError) as exc:
        raise errors.ParseError(f"malformed framing document: {exc}") from None


# -- holonomy data -----------------------------------------------------------

def holonomy_to_doc(h):
    return {
        "genus": h.genus,
        "chi": [{"modulus": num(c.modulus), "angle": num(c.angle)} for c in h.chi],
        "m": [{"re": num(o.re), "rho": num(o.rho),
               "decimal": [repr(float(o.re)), repr(o.imag + 0.0)]} for o in h.m],
    }


def holonomy_from_doc(doc):
    try:
        chi = [CharValue(parse_num(c["modulus"]), parse_num(c["angle"])) for c in doc["chi"]]
        m = [Order(parse_num(o["re"]), parse_num(o["rho"])) for o in doc["m"]]
        return HolonomyData(int(doc["genus"]), chi, m)
    except (KeyError, TypeError) as exc:
        raise errors.ParseError(f"malformed holonomy document: {exc}") from None


def periods_to_doc(alpha):
    return {
        "values": [{"base": num(p.base), "turn": num(p.turn)} for p in alpha.values],
        "residues": [{"re": num(o.re), "rho": num(o.rho)} for o in alpha.residues],
    }


def periods_from_doc(doc):
    try:
        vals = [Period(parse_num(p.get("base", [1, 1])), parse_num(p.get("turn", [0, 1])))
                for p in doc["values"]]
        res = [Order(parse_num(o.get("re", [0, 1])), parse_num(o.get("rho", [1, 1])))
               for o in doc.get("residues", [])]
        return PeriodVector(vals, res)
    except (KeyError, TypeError, AttributeError) as exc:
        raise errors.ParseError(f"malformed period document: {exc}") from None
