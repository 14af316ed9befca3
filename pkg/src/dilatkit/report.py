"""Invariant reports aggregating every module."""

import os

from . import __version__, errors, figures
from . import io as dio
from .classify import StratumSignature, enumerate_orbits_bfs, framing_orbit_class
from .framing import framing_vector
from .holonomy import character, holonomy_kind, homology_basis
from .surface import build_surface, check_gauss_bonnet, euler_data


def _cone_row(cone):
    o = cone.order
    return {
        "vertex_class": cone.vertex_class,
        "angle_turns": dio.num(cone.angle_turns),
        "factor": dio.num(cone.factor),
        "log_factor": repr(cone.log_factor + 0.0),
        "order": [repr(o.real + 0.0), repr(o.imag + 0.0)],
    }


def _error_record(exc):
    return {"error": exc.code, "message": str(exc)}


def analyse(spec):
    """(surface, basis or None, report dict)."""
    surface = build_surface(spec)
    if not check_gauss_bonnet(surface):
        raise errors.InternalInvariantError("cone orders do not sum to 2g - 2")
    V, E, F, g = euler_data(surface)
    rep = {
        "tool": "dilatkit",
        "version": __version__,
        "digest": dio.digest(spec),
        "mode": surface.mode,
        "topology": {"V": V, "E": E, "F": F, "genus": g, "n": surface.n},
        "cones": [_cone_row(c) for c in surface.marked_cones],
        "gauss_bonnet": True,
        "holonomy_kind": holonomy_kind(surface),
    }
    basis = None
    try:
        basis = homology_basis(surface)
        rep["holonomy"] = dio.holonomy_to_doc(character(surface, basis))
        rep["basis"] = {"symplectic": [[list(s) for s in w] for w in basis.symplectic],
                        "puncture": [[list(s) for s in w] for w in basis.puncture_loops]}
    except errors.DilatkitError as exc:
        rep["holonomy"] = _error_record(exc)
    framing = None
    if basis is not None:
        try:
            framing = framing_vector(surface, basis)
            rep["framing"] = {"tau": list(framing.tau), "r": list(framing.r),
                              "poincare_hopf": framing.satisfies_poincare_hopf()}
        except errors.DilatkitError as exc:
            rep["framing"] = _error_record(exc)
    else:
        rep["framing"] = {"error": "BasisNotFound", "message": "no homology basis"}
    if framing is not None:
        try:
            oc = framing_orbit_class(framing)
            rep["classification"] = oc.as_dict()
            rep["classification"]["kappa"] = list(framing.kappa)
            if oc.count is None:
                rep["classification"]["note"] = "InvalidSignature: gcd of kappa is 0"
        except errors.DilatkitError as exc:
            rep["classification"] = _error_record(exc)
    else:
        rep["classification"] = {"error": "NotDilation",
                                 "message": "classification needs a dilation framing"}
    return surface, basis, rep


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, value))


def render_delimited(rep):
    """One ``key<TAB>value`` line per leaf, sections in report order."""
    rows = []
    _flatten("", rep, rows)
    lines = []
    for key, value in rows:
        if isinstance(value, list):
            value = dio.dumps(value)
        elif value is None:
            value = "null"
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key}\t{value}")
    return "\n".join(lines) + "\n"


def write_figures(surface, basis, rep, out_dir):
    """Presentation with basis curves, cone data and, when available, the
    orbit enumeration of the stratum.  Returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    curves = basis.representatives if basis is not None else ()
    fig = figures.surface_figure(surface, curves, title=f"genus {surface.genus}, "
                                 f"{rep['holonomy_kind']}")
    written.append(figures.save(fig, os.path.join(out_dir, "presentation.svg")))
    written.append(figures.save(fig, os.path.join(out_dir, "presentation.png")))
    if surface.n:
        written.append(figures.save(figures.cone_figure(surface),
                                    os.path.join(out_dir, "cones.png")))
    cls = rep.get("classification", {})
    if "kappa" in cls:
        try:
            sig = StratumSignature(surface.genus, cls["kappa"])
            enum = enumerate_orbits_bfs(sig)
            if enum.normal_forms:
                written.append(figures.save(figures.orbit_figure(enum, sig),
                                            os.path.join(out_dir, "orbits.png")))
        except errors.DilatkitError:
            pass
    return written
