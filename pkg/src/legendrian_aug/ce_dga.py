"""The Chekanov-Eliashberg algebra of the resolution of a nearly plat front.

Generators are the crossings (``q1..qN`` left to right) followed by the right
cusps (``b1..bM``).  Every differential disk other than the small loop disk
at a right cusp has its positive corner as its rightmost point, so disks are
found by walking two boundary paths leftward from the generator until they
meet at a left cusp.

A differential value is a dict ``{(t_exponents, letters): coeff}``; the
t-variables commute with everything.
"""

from __future__ import annotations

from dataclasses import dataclass

from .front_model import EventKind, crossing_degrees, reduce_degree

__all__ = [
    "Generator",
    "Dga",
    "build_dga",
    "d_squared_check",
    "degree_check",
    "stabilize",
    "enumerate_disks",
    "Disk",
]


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    kind: str  # "crossing", "right_cusp" or "stab"
    event: int  # event index in the front, -1 for stabilization generators
    degree: int


@dataclass(frozen=True)
class Disk:
    """A leftward disk: its corner letters in boundary order and its sign."""

    letters: tuple
    sign: int


@dataclass(frozen=True, eq=False)
class Dga:
    generators: tuple
    differential: tuple  # per generator: {(texp, letters): coeff}
    modulus: int
    n_t: int

    def by_name(self, name):
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def word_degree(self, letters):
        return reduce_degree(sum(self.generators[x].degree for x in letters), self.modulus)

    def format_word(self, texp, letters):
        parts = []
        for i, e in enumerate(texp):
            if e:
                parts.append(f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}")
        parts += [self.generators[x].name for x in letters]
        return "*".join(parts) if parts else "1"

    def format_differential(self, gid):
        terms = self.differential[gid]
        if not terms:
            return "0"
        out = []
        for (texp, letters), c in sorted(terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            w = self.format_word(texp, letters)
            if c == 1:
                out.append(f"+ {w}")
            elif c == -1:
                out.append(f"- {w}")
            else:
                out.append(f"{'+' if c > 0 else '-'} {abs(c)}*{w}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def to_json(self):
        gens = [
            {"name": g.name, "kind": g.kind, "event": g.event, "degree": g.degree}
            for g in self.generators
        ]
        diff = {}
        for g in self.generators:
            rows = []
            for (texp, letters), c in sorted(self.differential[g.id].items(), key=lambda kv: (kv[0][1], kv[0][0])):
                rows.append(
                    {
                        "sign": 1 if c > 0 else -1,
                        "multiplicity": abs(c),
                        "t_exponents": list(texp),
                        "letters": [self.generators[x].name for x in letters],
                    }
                )
            diff[g.name] = rows
        return {"modulus": self.modulus, "n_t": self.n_t, "generators": gens, "differential": diff}


def _add_term(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _loop_alpha(d, event, rule):
    """Orientation factor of the loop crossing at a right cusp."""
    if rule == "fixed":
        return 1
    return d.cusp_sign(event)


def enumerate_disks(d, event, start_upper, start_lower, loop_rule="oriented"):
    """Disks whose rightmost point sits in the gap left of ``event`` with the
    two boundary paths at the given heights.

    Sweeping left, a disk is a stack of pieces, each bounded by an upper and
    a lower path.  A piece closes at a left cusp it exactly spans.  Passing a
    right cusp that it strictly contains, a piece either stays whole or
    splits in two around the cusp's loop; the split boundary runs around the
    outside of the loop, picking up zero, one or two corners at the loop
    crossing and the inverse of the loop's marked-point weight.

    Returns (letters, sign, t_exponents) triples; crossing letters are
    crossing ordinals, loop letters are ``("b", right-cusp ordinal)``.
    """
    found = []
    crossing_id = {ev: i for i, ev in enumerate(d.crossings)}
    cusp_id = {ev: i for i, ev in enumerate(d.right_cusps)}
    n_t = d.n_components

    def finish(pieces, sign, texp):
        word = []
        for _, _, _, up, low, conn in pieces:
            word.extend(up)
            word.extend(reversed(low))
            word.extend(conn)
        found.append((tuple(word), sign, tuple(texp)))

    def walk(ev, pieces, sign, texp):
        if all(not p[0] for p in pieces):
            finish(pieces, sign, texp)
            return
        if ev < 0:
            return
        e = d.events[ev]
        K = e.position
        if e.kind is EventKind.LEFT_CUSP:
            out = []
            for p in pieces:
                op, u, l = p[0], p[1], p[2]
                if not op:
                    out.append(p)
                elif (u, l) == (K, K + 1):
                    out.append((False,) + p[1:])
                elif u in (K, K + 1) or l in (K, K + 1):
                    return
                else:
                    out.append((True, u - 2 if u > K + 1 else u, l - 2 if l > K + 1 else l) + p[3:])
            walk(ev - 1, out, sign, texp)
            return
        if e.kind is EventKind.RIGHT_CUSP:
            b = ("b", cusp_id[ev])
            alpha = _loop_alpha(d, ev, loop_rule)
            comp = d.component_of_event(ev)
            marked = d.marks[comp] == ev
            ell = d.cusp_sign(ev) if marked else 0

            def shift(h):
                return h + 2 if h >= K else h

            def expand(i, acc, sgn, split):
                if i == len(pieces):
                    t2 = list(texp)
                    t2[comp] -= split * ell
                    walk(ev - 1, acc, sgn, t2)
                    return
                p = pieces[i]
                op, u, l, up, low, conn = p
                if not op:
                    expand(i + 1, acc + [p], sgn, split)
                    return
                nu, nl = shift(u), shift(l)
                expand(i + 1, acc + [(True, nu, nl, up, low, conn)], sgn, split)
                if nu < K and nl > K + 1:
                    # (first lower, second upper, loop letters, sign)
                    for lo1, up2, letters, s in (
                        (K + 1, K, (), 1),
                        (K + 1, K + 1, (b,), alpha),
                        (K, K, (b,), -alpha),
                        (K, K + 1, (b, b), -1),
                    ):
                        first = (True, nu, lo1, up, (), letters)
                        second = (True, up2, nl, (), low, conn)
                        expand(i + 1, acc + [first, second], sgn * s, split + 1)

            expand(0, [], sign, 0)
            return
        alpha = 1 if d.understrand_leftward(ev) else -1
        q = crossing_id[ev]

        def cross(i, acc, sgn):
            if i == len(pieces):
                walk(ev - 1, acc, sgn, texp)
                return
            p = pieces[i]
            op, u, l, up, low, conn = p
            if not op:
                cross(i + 1, acc + [p], sgn)
                return
            if u == K:
                if l == K + 1:
                    return
                cross(i + 1, acc + [(True, K + 1, l, up, low, conn)], sgn)
            elif u == K + 1:
                cross(i + 1, acc + [(True, K, l, up, low, conn)], sgn)
                cross(i + 1, acc + [(True, K + 1, l, up + (q,), low, conn)], sgn * alpha)
            elif l == K:
                cross(i + 1, acc + [(True, u, K + 1, up, low, conn)], sgn)
                cross(i + 1, acc + [(True, u, K, up, low + (q,), conn)], -sgn * alpha)
            elif l == K + 1:
                cross(i + 1, acc + [(True, u, K, up, low, conn)], sgn)
            else:
                cross(i + 1, acc + [p], sgn)

        cross(0, [], sign)

    walk(event - 1, [(True, start_upper, start_lower, (), (), ())], 1, [0] * n_t)
    return found


def build_dga(d, mu, loop_rule="oriented"):
    degrees = crossing_degrees(d, mu)
    mod = degrees.modulus
    gens = []
    for i, ev in enumerate(d.crossings):
        gens.append(Generator(len(gens), f"q{i + 1}", "crossing", ev, degrees.crossing[i]))
    for i, ev in enumerate(d.right_cusps):
        gens.append(Generator(len(gens), f"b{i + 1}", "right_cusp", ev, reduce_degree(1, mod)))
    n_cross = len(d.crossings)
    zero_t = (0,) * d.n_components
    diff = []
    for g in gens:
        acc = {}
        k = d.events[g.event].position
        if g.kind == "crossing":
            over, under = d.crossing_arcs(g.event)
            o = 1 if d.arc_direction[over] < 0 else -1
            u = 1 if d.arc_direction[under] < 0 else -1
            base = -o * u
        else:
            base = 1
            comp = d.component_of_event(g.event)
            texp = list(zero_t)
            if d.marks[comp] == g.event:
                texp[comp] = d.cusp_sign(g.event)
            _add_term(acc, (tuple(texp), ()), 1)
        for word, sign, texp in enumerate_disks(d, g.event, k, k + 1, loop_rule):
            letters = tuple(n_cross + x[1] if isinstance(x, tuple) else x for x in word)
            _add_term(acc, (texp, letters), base * sign)
        diff.append(acc)
    assert all(g.id == i for i, g in enumerate(gens)) and n_cross <= len(gens)
    return Dga(tuple(gens), tuple(diff), mod, d.n_components)


# ---------------------------------------------------------------------------
# checks


def _differentiate_word(g, texp, letters, coeff, acc):
    """Accumulate coeff * t^texp * d(letters) into acc with the graded Leibniz rule."""
    parity = 0
    for i, x in enumerate(letters):
        sgn = -1 if parity else 1
        for (t2, w), c in g.differential[x].items():
            t = tuple(a + b for a, b in zip(texp, t2))
            _add_term(acc, (t, letters[:i] + w + letters[i + 1:]), sgn * coeff * c)
        parity ^= g.generators[x].degree % 2


def d_squared_check(g):
    """Generators whose d(d x) does not vanish, with the offending terms."""
    bad = {}
    for gen in g.generators:
        acc = {}
        for (texp, letters), c in g.differential[gen.id].items():
            _differentiate_word(g, texp, letters, c, acc)
        if acc:
            bad[gen.name] = {g.format_word(*k): v for k, v in acc.items()}
    return bad


def degree_check(g):
    """Terms of d x whose degree is not deg x - 1."""
    bad = []
    for gen in g.generators:
        want = reduce_degree(gen.degree - 1, g.modulus)
        for (_, letters) in g.differential[gen.id]:
            if g.word_degree(letters) != want:
                bad.append((gen.name, [g.generators[x].name for x in letters]))
    return bad


def stabilize(g, k):
    """Add e (degree k) and f (degree k-1) with d e = f and d f = 0."""
    mod = g.modulus
    n = len(g.generators)
    idx = sum(1 for x in g.generators if x.kind == "stab") // 2 + 1
    e = Generator(n, f"e{idx}", "stab", -1, reduce_degree(k, mod))
    f = Generator(n + 1, f"f{idx}", "stab", -1, reduce_degree(k - 1, mod))
    zero_t = (0,) * g.n_t
    diff = g.differential + ({(zero_t, (n + 1,)): 1}, {})
    return Dga(g.generators + (e, f), diff, mod, g.n_t)
