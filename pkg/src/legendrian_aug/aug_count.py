"""Augmentations over finite fields and the augmentation numbers.

Three independent routes to |V_m(D, F_q)|:

* ``brute``: solve eps(d x) = 0 for every generator by exhaustive scan;
* ``mcs``: count A-form Morse complex sequences by matrix propagation;
* ``ruling``: the closed form sum over rulings of (q-1)^(j+c) q^r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import field_make, prime_power, rhs_exact
from .errors import GradingError, MethodUnavailable
from .front_model import check_grading, is_graded
from .kernels import PolySystem, decode_point, scan_system
from .rulings import enumerate_rulings, ruling_polynomial, ruling_stats

__all__ = [
    "Augmentation",
    "AugVarietyReport",
    "compile_system",
    "enumerate_augmentations",
    "count_augmentations",
    "variety_dim",
    "ruling_count",
    "aug_number",
    "verify_main_theorem",
    "METHODS",
]

METHODS = ("brute", "mcs", "ruling")


@dataclass(frozen=True)
class Augmentation:
    """Values are field codes; ``gen_values`` covers every generator."""

    t_values: tuple
    gen_values: tuple

    def omega(self):
        """The point (eps(t_1), ..., eps(t_c), eps(q_1), ..., eps(q_N))."""
        return self.t_values + self.gen_values

    def to_json(self, fq=None, names=None):
        fmt = (lambda c: fq.format(c)) if fq is not None else (lambda c: c)
        out = {"t": [fmt(c) for c in self.t_values]}
        if names is None:
            out["generators"] = [fmt(c) for c in self.gen_values]
        else:
            out["generators"] = {n: fmt(c) for n, c in zip(names, self.gen_values)}
        return out


def _check_m(g, m):
    if m < 0:
        raise GradingError(f"m must be non-negative, got {m}")
    if m == 0 and g.modulus != 0:
        raise GradingError(f"m = 0 needs an integer grading, modulus is {g.modulus}")
    if m > 0 and g.modulus % m:
        raise GradingError(f"m = {m} does not divide the grading modulus {g.modulus}")


def augmentable(g, m):
    return [x.id for x in g.generators if is_graded(x.degree, m)]


def compile_system(g, m, fq):
    """The equations eps(d x) = 0 as a PolySystem over field codes.

    Variables: t_1..t_c (units) then the augmentable generators in id order.
    Words containing a non-augmentable letter vanish and are dropped.
    """
    _check_m(g, m)
    free = augmentable(g, m)
    var_of = {gid: g.n_t + i for i, gid in enumerate(free)}
    equations = []
    for gen in g.generators:
        terms = []
        for (texp, letters), c in sorted(g.differential[gen.id].items()):
            if any(x not in var_of for x in letters):
                continue
            code = fq.from_int(c)
            if code == 0:
                continue
            factors = []
            for i, e in enumerate(texp):
                factors += [(i, e < 0)] * abs(e)
            factors += [(var_of[x], False) for x in letters]
            terms.append((code, factors))
        if terms:
            equations.append(terms)
    return PolySystem(equations, g.n_t, len(free)), free


def enumerate_augmentations(g, m, fq, cap=None):
    """Every m-graded augmentation of g into fq, ordered by box index."""
    system, free = compile_system(g, m, fq)
    hits = scan_system(fq, system, collect=True, cap=cap)
    out = []
    n = len(g.generators)
    for idx in hits:
        pt = decode_point(int(idx), system.n_units, system.n_free, fq.q)
        vals = [0] * n
        for gid, v in zip(free, pt[g.n_t:]):
            vals[gid] = v
        out.append(Augmentation(pt[: g.n_t], tuple(vals)))
    return out


def count_augmentations(g, m, fq, cap=None):
    system, _ = compile_system(g, m, fq)
    return scan_system(fq, system, cap=cap)


def variety_dim(d, mu, m):
    """max over m-graded rulings of j + c + r; None when there are none."""
    best = None
    for rho in enumerate_rulings(d, mu, m):
        s = ruling_stats(rho, m)
        v = s.j + d.n_components + s.r
        best = v if best is None else max(best, v)
    return best


def ruling_count(d, mu, m, q):
    """Closed form: sum over rulings of (q-1)^(j+c) q^r."""
    total = 0
    c = d.n_components
    for rho in enumerate_rulings(d, mu, m):
        s = ruling_stats(rho, m)
        total += (q - 1) ** (s.j + c) * q**s.r
    return total


@dataclass
class AugVarietyReport:
    m: int
    q: int
    counts: dict
    dim: int | None
    aug_number: Fraction
    per_ruling: list = field(default_factory=list)

    @property
    def count(self):
        vals = set(self.counts.values())
        if len(vals) != 1:
            raise ValueError(f"methods disagree: {self.counts}")
        return vals.pop()

    def to_json(self):
        return {
            "m": self.m,
            "q": self.q,
            "counts": dict(self.counts),
            "dim": self.dim if self.dim is not None else "Empty",
            "aug_number": _frac(self.aug_number),
            "per_ruling": self.per_ruling,
        }


def _frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _count_by(method, d, mu, m, fq, cap, g=None):
    if method == "brute":
        from .ce_dga import build_dga

        return count_augmentations(g if g is not None else build_dga(d, mu), m, fq, cap=cap)
    if method == "mcs":
        from .mcs_engine import enumerate_aform_count

        return enumerate_aform_count(d, mu, m, fq, cap=cap)
    if method == "ruling":
        return ruling_count(d, mu, m, fq.q)
    raise MethodUnavailable(f"unknown method {method!r}")


def aug_number(d, mu, m, q, method="all", cap=None):
    check_grading(d, m)
    fq = field_make(*prime_power(q))
    methods = METHODS if method == "all" else (method,)
    counts = {}
    g = None
    for meth in methods:
        if meth == "brute" and g is None:
            from .ce_dga import build_dga

            g = build_dga(d, mu)
        counts[meth] = _count_by(meth, d, mu, m, fq, cap, g)
    dim = variety_dim(d, mu, m)
    c = d.n_components
    per = []
    for rho in enumerate_rulings(d, mu, m):
        s = ruling_stats(rho, m)
        per.append({"switches": list(rho.switches), "j": s.j, "r": s.r,
                    "expected": (q - 1) ** (s.j + c) * q**s.r})
    first = next(iter(counts.values()))
    value = Fraction(0) if dim is None else Fraction(first) / Fraction(q) ** dim
    return AugVarietyReport(m, q, counts, dim, value, per)


def verify_main_theorem(d, mu, m, q_list, method="all", cap=None):
    """For each q: augmentation numbers by each method against the ruling side."""
    R = ruling_polynomial(d, mu, m)
    rows = []
    all_equal = True
    for q in q_list:
        rep = aug_number(d, mu, m, q, method=method, cap=cap)
        rhs = rhs_exact(R, d.n_components, q)
        nums = {}
        for meth, cnt in rep.counts.items():
            nums[meth] = Fraction(0) if rep.dim is None else Fraction(cnt) / Fraction(q) ** rep.dim
        equal = len(set(rep.counts.values())) == 1 and all(v == rhs for v in nums.values())
        all_equal &= equal
        rows.append(
            {
                "m": m,
                "q": q,
                "counts": dict(rep.counts),
                "dim": rep.dim if rep.dim is not None else "Empty",
                "aug_number": _frac(rep.aug_number),
                "aug_numbers": {k: _frac(v) for k, v in nums.items()},
                "rhs": _frac(rhs),
                "equal": equal,
            }
        )
    return {"ruling_polynomial": R.to_json(), "rows": rows, "all_equal": all_equal}
