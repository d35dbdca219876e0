"""Command line front-end: ``legaug <verb> FRONT [options]``.

Every verb prints one JSON document (or an aligned text rendering with
``--format table``).  Exit status is 0 on success, 1 when a verification
verb finds a mismatch and 2 on usage or validation errors, which are also
reported as JSON on standard output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import field_make, prime_power
from .aug_count import aug_number, enumerate_augmentations, verify_main_theorem
from .ce_dga import build_dga, d_squared_check, degree_check
from .errors import LegendrianError
from .front_model import check_grading, crossing_degrees, maslov_potential, parse_front
from .mcs_engine import (
    all_aform_mcs,
    enumerate_aform_count,
    lambda_mcs,
    partition,
    phi,
    psi,
    z_rho_points,
)
from .rulings import enumerate_rulings, ruling_polynomial, ruling_stats

VERBS = ("parse", "rulings", "rp", "dga", "aug", "verify", "mcs-count", "mcs-phi", "mcs-psi", "partition")
METHODS = ("brute", "mcs", "ruling", "all")


class UsageError(LegendrianError):
    kind = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _q_list(text):
    try:
        qs = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"--q expects a comma separated list of integers, got {text!r}") from None
    if not qs:
        raise UsageError("--q is empty")
    for q in qs:
        prime_power(q)
    return qs


def _int_list(text):
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"--offsets expects integers, got {text!r}") from None


def _mark(text):
    try:
        comp, idx = text.split(":")
        return int(comp), int(idx)
    except ValueError:
        raise UsageError(f"--mark expects comp:idx, got {text!r}") from None


def build_parser():
    p = _Parser(prog="legaug", description="Legendrian link invariants from nearly plat fronts.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("front", help="front file, or - for standard input")
    p.add_argument("--m", type=int, default=0, help="grading modulus m (default 0)")
    p.add_argument("--q", default=None, help="field sizes, e.g. 2,3,4")
    p.add_argument("--method", choices=METHODS, default="all")
    p.add_argument("--offsets", default=None, help="Maslov offsets per component, e.g. --offsets=0,-1")
    p.add_argument("--mark", action="append", default=[], help="comp:idx, marks the idx-th right cusp of comp")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--cap", type=int, default=None, help="refuse searches larger than this many points")
    return p


def _load(args):
    try:
        text = sys.stdin.read() if args.front == "-" else open(args.front, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.front}: {exc.strerror}") from None
    d = parse_front(text)
    if args.offsets is not None:
        d = d.with_offsets(_int_list(args.offsets))
    if args.mark:
        marks = dict(d.declared_marks)
        for comp, idx in map(_mark, args.mark):
            marks[comp] = idx
        d = d.with_marks(marks)
    return d, maslov_potential(d)


def _field(q):
    return field_make(*prime_power(q))


# -- verbs -----------------------------------------------------------------


def _parse(d, mu, args):
    deg = crossing_degrees(d, mu)
    return {
        "events": [str(e) for e in d.events],
        "components": d.n_components,
        "rotation": list(d.rotation),
        "grading_modulus": d.grading_modulus,
        "offsets": list(mu.offsets),
        "potential": [{"arc": a.index, "left_cusp": a.left_event, "right_cusp": a.right_event,
                       "value": mu.values[a.index]} for a in d.arcs],
        "crossing_degrees": list(deg.crossing),
        "marks": [d.right_cusp_ordinal(ev) for ev in d.marks],
    }, 0


def _rulings(d, mu, args):
    check_grading(d, args.m)
    out = []
    for rho in enumerate_rulings(d, mu, args.m):
        row = rho.to_json()
        st = ruling_stats(rho, args.m)
        row.update({"j": st.j, "r": st.r})
        out.append(row)
    return {"m": args.m, "rulings": out}, 0


def _rp(d, mu, args):
    check_grading(d, args.m)
    return ruling_polynomial(d, mu, args.m).to_json(), 0


def _dga(d, mu, args):
    g = build_dga(d, mu)
    out = g.to_json()
    out["d_squared_zero"] = not d_squared_check(g)
    out["degrees_ok"] = not degree_check(g)
    return out, 0


def _aug(d, mu, args):
    rows = []
    for q in _q_list(args.q or "2"):
        rep = aug_number(d, mu, args.m, q, method=args.method, cap=args.cap)
        row = rep.to_json()
        row["count"] = rep.count
        rows.append(row)
    bad = any(len(set(r["counts"].values())) != 1 for r in rows)
    return {"rows": rows}, 1 if bad else 0


def _verify(d, mu, args):
    out = verify_main_theorem(d, mu, args.m, _q_list(args.q or "2,3,4,5"), method=args.method, cap=args.cap)
    return out, 0 if out["all_equal"] else 1


def _mcs_count(d, mu, args):
    check_grading(d, args.m)
    rows = []
    ok = True
    for q in _q_list(args.q or "2"):
        fq = _field(q)
        per = [len(z_rho_points(d, rho, args.m, fq, cap=args.cap)) for rho in enumerate_rulings(d, mu, args.m)]
        a = enumerate_aform_count(d, mu, args.m, fq, cap=args.cap)
        equal = a == sum(per)
        ok &= equal
        rows.append({"q": q, "aform": a, "srform": sum(per), "per_ruling": per, "equal": equal})
    return {"m": args.m, "rows": rows}, 0 if ok else 1


def _mcs_phi(d, mu, args):
    check_grading(d, args.m)
    rows = []
    for q in _q_list(args.q or "2"):
        fq = _field(q)
        for rho in enumerate_rulings(d, mu, args.m):
            for point in z_rho_points(d, rho, args.m, fq, cap=args.cap):
                sr = lambda_mcs(point, d, mu, rho, args.m, fq)
                trace = []
                a = phi(sr, mu, rho, trace=trace)
                rows.append({
                    "q": q,
                    "ruling": list(rho.switches),
                    "point": [fq.format(x) for x in point.flat()],
                    "before": sr.to_json(),
                    "after": a.to_json(),
                    "trace": [s.to_json(fq) for s in trace],
                })
    return {"m": args.m, "rows": rows}, 0


def _mcs_psi(d, mu, args):
    check_grading(d, args.m)
    rows = []
    for q in _q_list(args.q or "2"):
        fq = _field(q)
        for a in all_aform_mcs(d, mu, args.m, fq, cap=args.cap):
            trace = []
            sr, rho = psi(a, mu, trace=trace)
            rows.append({
                "q": q,
                "ruling": list(rho.switches),
                "before": a.to_json(),
                "after": sr.to_json(),
                "trace": [s.to_json(fq) for s in trace],
            })
    return {"m": args.m, "rows": rows}, 0


def _partition(d, mu, args):
    check_grading(d, args.m)
    rows = []
    ok = True
    g = build_dga(d, mu)
    for q in _q_list(args.q or "2,3"):
        fq = _field(q)
        rep = partition(d, mu, args.m, fq, cap=args.cap)
        brute = enumerate_augmentations(g, args.m, fq, cap=args.cap)
        row = rep.to_json(fq)
        row["q"] = q
        row["brute"] = len(brute)
        row["sizes_ok"] = rep.sizes == rep.expected
        row["covers"] = rep.covers(brute)
        ok &= rep.disjoint and row["sizes_ok"] and row["covers"]
        rows.append(row)
    return {"m": args.m, "rows": rows}, 0 if ok else 1


_HANDLERS = {
    "parse": _parse,
    "rulings": _rulings,
    "rp": _rp,
    "dga": _dga,
    "aug": _aug,
    "verify": _verify,
    "mcs-count": _mcs_count,
    "mcs-phi": _mcs_phi,
    "mcs-psi": _mcs_psi,
    "partition": _partition,
}


# -- output ----------------------------------------------------------------


def _cell(v):
    return v if isinstance(v, str) else json.dumps(v, separators=(",", ":"))


def render_table(obj):
    """Scalars as ``key: value`` lines; a list of flat rows as aligned columns."""
    lines = []
    for key, val in obj.items():
        if isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
            cols = list(dict.fromkeys(k for r in val for k in r))
            cells = [[_cell(r.get(c, "")) for c in cols] for r in val]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
            lines.append(f"{key}:")
            lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for row in cells:
                lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        else:
            lines.append(f"{key}: {_cell(val)}")
    return "\n".join(lines) + "\n"


def _emit(obj, fmt, stream):
    if fmt == "table":
        stream.write(render_table(obj))
    else:
        stream.write(json.dumps(obj, indent=2) + "\n")


def _requested_format(argv):
    # errors raised while parsing still honour an explicit --format table
    argv = list(argv)
    for i, tok in enumerate(argv):
        if tok == "--format=table" or (tok == "--format" and argv[i + 1:i + 2] == ["table"]):
            return "table"
    return "json"


def run(argv, stream=None):
    """Run one command; returns the exit code."""
    stream = stream or sys.stdout
    fmt = _requested_format(argv)
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        d, mu = _load(args)
        out, code = _HANDLERS[args.verb](d, mu, args)
    except LegendrianError as exc:
        _emit(exc.to_json(), fmt, stream)
        return 2
    _emit(out, fmt, stream)
    return code


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
