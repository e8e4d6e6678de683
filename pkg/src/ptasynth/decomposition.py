"""Sign-invariant decomposition of the parameter space with exact samples.

Two decompositions are provided.  For one polynomial parameter, the clock
variable is projected out (coefficients, a resultant against the clock
derivative, pairwise resultants) and the real line splits at the roots of
the projected polynomials into point and interval cells.  For up to three
parameters with linear expressions, the realizable sign vectors over the
hyperplanes are enumerated depth-first with exact Fourier-Motzkin
feasibility pruning; strictness never goes through a numeric epsilon.

Every cell carries an exact sample point: rational in open cells,
algebraic only at irrational 1D point cells.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .expressions import Expression, ExpressionError
from .model import UnsupportedError
from .polynomials import (
    AlgebraicNumber,
    BivarPoly,
    IntPoly,
    bivar_derivative_x,
    bivar_degree_x,
    bivar_trim,
    isolate_real_roots,
    poly_degree,
    poly_eval,
    poly_is_zero,
    poly_primitive,
    poly_trim,
    sylvester_resultant_x,
)
from .scalars import INF, NEG_INF, cmp

REL_GT = ">"
REL_GE = ">="
REL_EQ = "="


@dataclass
class Cell1D:
    """A point or open interval on the parameter line."""

    kind: str                      # "point" | "interval"
    lo: object                     # Fraction | AlgebraicNumber | NEG_INF
    hi: object                     # Fraction | AlgebraicNumber | INF
    sample: object                 # Fraction | AlgebraicNumber

    def contains(self, value) -> bool:
        if self.kind == "point":
            return cmp(value, self.lo) == 0
        lo_ok = self.lo is NEG_INF or cmp(value, self.lo) > 0
        hi_ok = self.hi is INF or cmp(value, self.hi) < 0
        return lo_ok and hi_ok


@dataclass
class LinearCell:
    """A realizable sign vector over a hyperplane arrangement."""

    constraints: Tuple[Tuple[Expression, str], ...]   # (expr, rel) meaning expr rel 0
    signs: Tuple[int, ...]
    sample: Tuple[Fraction, ...]
    params: Tuple[str, ...]

    def contains(self, point: Sequence[Fraction]) -> bool:
        gamma = dict(zip(self.params, point))
        for expr, rel in self.constraints:
            v = expr.evaluate(gamma)
            if rel == REL_EQ and v != 0:
                return False
            if rel == REL_GT and not v > 0:
                return False
            if rel == REL_GE and not v >= 0:
                return False
        return True


# -- expression/polynomial conversions ----------------------------------------

def expr_to_unipoly(e: Expression, param: str) -> IntPoly:
    """An expression in a single parameter as an integer coefficient tuple."""
    if e.is_infinite():
        raise ExpressionError("infinity has no polynomial form")
    extra = e.params() - {param}
    if extra:
        raise ExpressionError("expression mentions other parameters: %s" % sorted(extra))
    coeffs: Dict[int, int] = {}
    for mono, c in e.as_poly_terms().items():
        exp = mono[0][1] if mono else 0
        coeffs[exp] = coeffs.get(exp, 0) + c
    return poly_trim(tuple(coeffs.get(i, 0) for i in range(max(coeffs, default=0) + 1)))


def atom_to_bivar(pos_clock: bool, neg_clock: bool, rhs: Expression, param: str) -> BivarPoly:
    """The polynomial b1*x - b2*y - e with one clock, in Z[param][x]."""
    e = expr_to_unipoly(rhs, param)
    neg_e = tuple(-c for c in e)
    if pos_clock and neg_clock:
        raise UnsupportedError("difference atoms have no single-clock polynomial")
    if pos_clock:
        return bivar_trim((neg_e, (1,)))
    if neg_clock:
        return bivar_trim((neg_e, (-1,)))
    return bivar_trim((neg_e,))


# -- projection ----------------------------------------------------------------

def project_clock(polys: Sequence[BivarPoly]) -> List[IntPoly]:
    """Project the clock out of Z[p][x] polynomials.

    Output: for each input, every x-coefficient (the reducta leading
    coefficients) and the resultant with its own x-derivative; plus
    pairwise resultants.  Clock-free inputs pass through.  Constants are
    dropped and the result is primitive, sign-normalized, deduplicated,
    and sorted.
    """
    out = set()

    def keep(p: IntPoly):
        p = poly_primitive(poly_trim(p))
        if poly_degree(p) >= 1:
            out.add(p)

    withx = []
    for f in polys:
        f = bivar_trim(f)
        if bivar_degree_x(f) <= 0:
            if f:
                keep(f[0])
            continue
        withx.append(f)
        # leading coefficients of the reducta chain, truncated at the first
        # one that is a nonzero constant (that reductum never degenerates)
        for coeff in reversed(f):
            if poly_degree(coeff) == 0 and not poly_is_zero(coeff):
                break
            keep(coeff)
        keep(sylvester_resultant_x(f, bivar_derivative_x(f)))
    for i in range(len(withx)):
        for j in range(i + 1, len(withx)):
            keep(sylvester_resultant_x(withx[i], withx[j]))
    return sorted(out)


# -- one-dimensional decomposition ---------------------------------------------

def decompose_1d(polys: Sequence[IntPoly]) -> List[Cell1D]:
    """Split the line at all real roots of the given polynomials.

    Cells come back ordered: interval, point, interval, ..., point,
    interval.  Interval samples are rational; point samples are the roots
    themselves (rational when possible).
    """
    roots: List[AlgebraicNumber] = []
    for f in polys:
        if poly_is_zero(f) or poly_degree(f) < 1:
            continue
        for r in isolate_real_roots(f):
            if not any(r.compare_scalar(seen) == 0 for seen in roots):
                roots.append(r)
    roots.sort(key=_RootSortKey)
    if not roots:
        return [Cell1D("interval", NEG_INF, INF, Fraction(0))]

    def as_value(r: AlgebraicNumber):
        return r.to_fraction() if r.is_rational() else r

    cells: List[Cell1D] = []
    first = roots[0]
    cells.append(Cell1D("interval", NEG_INF, as_value(first),
                        Fraction(first.floor_value() - 1)))
    for i, r in enumerate(roots):
        cells.append(Cell1D("point", as_value(r), as_value(r), as_value(r)))
        if i + 1 < len(roots):
            nxt = roots[i + 1]
            cells.append(Cell1D("interval", as_value(r), as_value(nxt),
                                _between(r, nxt)))
    last = roots[-1]
    cells.append(Cell1D("interval", as_value(last), INF,
                        Fraction(last.ceil_value() + 1)))
    return cells


def _between(a: AlgebraicNumber, b: AlgebraicNumber) -> Fraction:
    """A rational strictly between two distinct ordered roots."""
    while not a.hi < b.lo:
        if a.is_rational() and b.is_rational():
            return (a.lo + b.lo) / 2
        a.refine()
        b.refine()
    return (a.hi + b.lo) / 2


class _RootSortKey:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return self.value.compare_scalar(other.value) < 0


# -- exact linear systems (Fourier-Motzkin) -------------------------------------

Vector = Tuple[Fraction, ...]            # coefficients then constant


def expr_to_vector(e: Expression, params: Sequence[str]) -> Vector:
    if not e.is_linear():
        raise UnsupportedError("linear decomposition needs linear expressions")
    return tuple(Fraction(e.cf(p)) for p in params) + (Fraction(e.con()),)


def vector_to_expr(vec: Vector, params: Sequence[str]) -> Expression:
    coeffs = {p: int(vec[i]) for i, p in enumerate(params)}
    return Expression.linear(int(vec[-1]), coeffs)


def _canonical_hyperplane(vec: Vector) -> Optional[Vector]:
    """Primitive, sign-normalized form; None for the zero functional."""
    import math

    coeffs = vec[:-1]
    if all(c == 0 for c in coeffs):
        return None
    denom = 1
    for c in vec:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in vec]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    ints = [c // g for c in ints]
    lead = next(c for c in ints[:-1] if c != 0)
    if lead < 0:
        ints = [-c for c in ints]
    return tuple(Fraction(c) for c in ints)


def _substitute(vec: Vector, var: int, solution: Vector) -> Vector:
    """Replace variable ``var`` by an affine expression of the others."""
    coeff = vec[var]
    out = list(vec)
    out[var] = Fraction(0)
    if coeff:
        for i in range(len(vec)):
            if i != var:
                out[i] += coeff * solution[i]
    return tuple(out)


def _fm_prepare(constraints, nvars):
    """Eliminate a system down to constants; None when infeasible.

    ``constraints`` are (vector, rel) with rel in {>, >=, =} meaning
    vec . (vars, 1) rel 0.  Equalities are eliminated by exact pivoting,
    the rest variable by variable with Fourier-Motzkin; the per-variable
    constraint levels are kept so samples can be drawn repeatedly.
    """
    solved: List[Tuple[int, Vector]] = []
    work = [(tuple(v), rel) for v, rel in constraints]

    changed = True
    while changed:
        changed = False
        for idx, (vec, rel) in enumerate(work):
            if rel != REL_EQ:
                continue
            pivot = next((i for i in range(nvars) if vec[i] != 0), None)
            if pivot is None:
                if vec[-1] != 0:
                    return None
                work.pop(idx)
            else:
                coeff = vec[pivot]
                solution = tuple(-c / coeff if i != pivot else Fraction(0)
                                 for i, c in enumerate(vec))
                work.pop(idx)
                work = [(_substitute(v, pivot, solution), r) for v, r in work]
                solved.append((pivot, solution))
            changed = True
            break

    levels = []
    for var in range(nvars - 1, -1, -1):
        if any(v[var] != 0 for v, _ in work):
            levels.append((var, list(work)))
            lowers = [(v, r) for v, r in work if v[var] > 0]
            uppers = [(v, r) for v, r in work if v[var] < 0]
            passthrough = [(v, r) for v, r in work if v[var] == 0]
            for lv, lr in lowers:
                for uv, ur in uppers:
                    scale_l = tuple(c / lv[var] for c in lv)
                    scale_u = tuple(c / -uv[var] for c in uv)
                    combined = tuple(sl + su for sl, su in zip(scale_l, scale_u))
                    rel = REL_GE if (lr == REL_GE and ur == REL_GE) else REL_GT
                    passthrough.append((combined, rel))
            work = passthrough
    for vec, rel in work:
        c = vec[-1]
        if rel == REL_GT and not c > 0:
            return None
        if rel == REL_GE and not c >= 0:
            return None
    return solved, levels


def _fm_draw(prepared, nvars, choose=None):
    """One sample from a prepared elimination (midpoints by default)."""
    solved, levels = prepared
    picker = choose or _pick_interior
    values: Dict[int, Fraction] = {}
    for var, constraints_at in reversed(levels):
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for vec, rel in constraints_at:
            coeff = vec[var]
            if coeff == 0:
                continue
            rest = vec[-1] + sum(vec[i] * values.get(i, Fraction(0))
                                 for i in range(len(vec) - 1) if i != var)
            bound = -rest / coeff
            if coeff > 0:
                if lo is None or bound > lo or (bound == lo and rel == REL_GT):
                    lo, lo_strict = bound, rel == REL_GT
            else:
                if hi is None or bound < hi or (bound == hi and rel == REL_GT):
                    hi, hi_strict = bound, rel == REL_GT
        values[var] = picker(lo, lo_strict, hi, hi_strict)
    for var, solution in reversed(solved):
        values[var] = solution[-1] + sum(
            solution[i] * values.get(i, Fraction(0)) for i in range(nvars) if i != var)
    return tuple(values.get(i, Fraction(0)) for i in range(nvars))


def _fm_feasible_sample(constraints, nvars, want_sample, choose=None):
    prepared = _fm_prepare(constraints, nvars)
    if prepared is None:
        return None
    if not want_sample:
        return ()
    return _fm_draw(prepared, nvars, choose)


def _pick_interior(lo, lo_strict, hi, hi_strict) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1 if hi_strict else hi
    if hi is None:
        return lo + 1 if lo_strict else lo
    if lo == hi:
        return lo
    return (lo + hi) / 2


class LinearCellSampler:
    """Draw many random interior points of one cell without re-eliminating."""

    def __init__(self, cell: LinearCell):
        self.cell = cell
        system = [(expr_to_vector(e, cell.params), rel) for e, rel in cell.constraints]
        self.prepared = _fm_prepare(system, len(cell.params))
        assert self.prepared is not None

    def draw(self, rng) -> Tuple[Fraction, ...]:
        def choose(lo, lo_strict, hi, hi_strict):
            t = Fraction(rng.randrange(1, 16), 16)
            if lo is None and hi is None:
                return Fraction(rng.randrange(-8, 9))
            if lo is None:
                return hi - (t if hi_strict else t * rng.randrange(0, 2))
            if hi is None:
                return lo + (t if lo_strict else t * rng.randrange(0, 2)) + rng.randrange(0, 8)
            if lo == hi:
                return lo
            return lo + (hi - lo) * t

        return _fm_draw(self.prepared, len(self.cell.params), choose)


def random_point_in_linear_cell(cell: LinearCell, rng) -> Tuple[Fraction, ...]:
    """A random exact rational point of the cell (relative interior)."""
    return LinearCellSampler(cell).draw(rng)


def random_point_in_cell1d(cell: Cell1D, rng) -> Fraction:
    """A random exact rational inside a 1D cell (the point itself for
    rational sections; irrational sections have no rational members)."""
    if cell.kind == "point":
        if isinstance(cell.lo, Fraction):
            return cell.lo
        raise ValueError("irrational point cell has no rational members")
    width = Fraction(1, 64)
    while True:
        lo, hi = cell.lo, cell.hi
        if isinstance(lo, AlgebraicNumber):
            lo.refine_below(width)
            lo = lo.hi
        if isinstance(hi, AlgebraicNumber):
            hi.refine_below(width)
            hi = hi.lo
        if lo is NEG_INF or hi is INF or lo < hi:
            break
        width /= 4
    t = Fraction(rng.randrange(1, 64), 64)
    if lo is NEG_INF and hi is INF:
        return Fraction(rng.randrange(-40, 41))
    if lo is NEG_INF:
        return hi - t - rng.randrange(0, 20)
    if hi is INF:
        return lo + t + rng.randrange(0, 20)
    return lo + (hi - lo) * t


def canonical_planes(exprs: Sequence[Expression], params: Sequence[str]) -> List[Vector]:
    """The sorted canonical hyperplane vectors a decomposition will use;
    cell sign vectors align with this order."""
    canon = set()
    for e in exprs:
        vec = _canonical_hyperplane(expr_to_vector(e, tuple(params)))
        if vec is not None:
            canon.add(vec)
    return sorted(canon)


def decompose_linear(exprs: Sequence[Expression], params: Sequence[str]) -> List[LinearCell]:
    """Enumerate realizable sign vectors over the hyperplanes ``expr = 0``.

    Cells are emitted in lexicographic sign-vector order (-1 < 0 < +1)
    over the sorted canonical hyperplanes; each gets an exact interior
    rational sample (relative-interior on equality faces).

    Up to two parameters, cells are carried as exact convex polytopes
    clipped inside a bounding box that provably contains a point of every
    cell, so no elimination runs in the enumeration loop; three parameters
    fall back to a depth-first search with Fourier-Motzkin pruning.
    """
    params = tuple(params)
    m = len(params)
    if m > 3:
        raise UnsupportedError("linear decomposition supports up to 3 parameters")
    planes = canonical_planes(exprs, params)

    def cell_of(signs, sample):
        constraints = []
        for vec, sign in zip(planes, signs):
            if sign == 0:
                constraints.append((vector_to_expr(vec, params), REL_EQ))
            elif sign > 0:
                constraints.append((vector_to_expr(vec, params), REL_GT))
            else:
                constraints.append((vector_to_expr(tuple(-c for c in vec), params), REL_GT))
        return LinearCell(tuple(constraints), tuple(signs), tuple(sample), params)

    if m <= 2:
        cells = [cell_of(signs, sample)
                 for signs, sample in _enumerate_boxed(planes, m)]
    else:
        cells = [cell_of(signs, sample)
                 for signs, sample in _enumerate_fm(planes, m)]
    cells.sort(key=lambda c: c.signs)
    return cells


def _enumerate_fm(planes, m):
    out = []

    def constraint_for(vec, sign):
        if sign == 0:
            return (vec, REL_EQ)
        if sign > 0:
            return (vec, REL_GT)
        return (tuple(-c for c in vec), REL_GT)

    def descend(idx, system, signs, sample):
        if idx == len(planes):
            out.append((tuple(signs), sample))
            return
        vec = planes[idx]
        at_sample = vec[-1] + sum(c * x for c, x in zip(vec, sample))
        sample_sign = (at_sample > 0) - (at_sample < 0)
        for sign in (-1, 0, 1):
            extended = system + [constraint_for(vec, sign)]
            if sign == sample_sign:
                descend(idx + 1, extended, signs + [sign], sample)
                continue
            child_sample = _fm_feasible_sample(extended, m, want_sample=True)
            if child_sample is not None:
                descend(idx + 1, extended, signs + [sign], child_sample)

    descend(0, [], [], tuple(Fraction(0) for _ in range(m)))
    return out


# -- exact polytope splitting for one and two parameters -------------------------

def _plane_value(vec, point):
    return vec[-1] + sum(c * x for c, x in zip(vec, point))


def _box_radius(planes, m) -> Fraction:
    """A radius such that every cell of the arrangement meets the open box.

    All vertices of the arrangement have coordinates bounded via Cramer's
    rule by (sum of |entries|)^2; doubling that and adding slack keeps a
    point of every unbounded cell strictly inside as well.
    """
    worst = Fraction(1)
    for vec in planes:
        size = sum(abs(c) for c in vec)
        worst = max(worst, Fraction(size))
    return (worst * worst + 1) * 4


def _split_polytope(vertices, vec):
    """Split a convex polytope (point/segment/CCW polygon of exact points)
    by a hyperplane into its negative, zero, and positive parts.

    Parts are closures; a part counts as present only when its relative
    interior meets the open side, which for the zero part means it must
    have the parent's dimension minus one (a mere touch at the boundary
    belongs to neighbouring sign vectors, not to this cell).
    """
    values = [_plane_value(vec, v) for v in vertices]
    if len(vertices) == 1:
        s = (values[0] > 0) - (values[0] < 0)
        return (
            vertices if s < 0 else None,
            vertices if s == 0 else None,
            vertices if s > 0 else None,
        )
    if len(vertices) == 2:
        (a, b), (va, vb) = vertices, values
        if va > 0 and vb > 0 or va < 0 and vb < 0:
            return (vertices if va < 0 else None, None, vertices if va > 0 else None)
        if va == 0 and vb == 0:
            return (None, vertices, None)
        if va == 0 or vb == 0:
            # touches an endpoint: the zero point is on the segment's
            # boundary, hence not in the open cell
            side = vb if va == 0 else va
            return (vertices if side < 0 else None, None, vertices if side > 0 else None)
        t = va / (va - vb)
        cut = tuple(ai + t * (bi - ai) for ai, bi in zip(a, b))
        lo_part = [a, cut] if va < 0 else [cut, b]
        hi_part = [cut, b] if vb > 0 else [a, cut]
        return (lo_part, [cut], hi_part)

    neg, pos, zero_pts = [], [], []
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        va, vb = values[i], values[(i + 1) % n]
        if va <= 0:
            neg.append(a)
        if va >= 0:
            pos.append(a)
        if va == 0:
            zero_pts.append(a)
        if (va < 0 < vb) or (vb < 0 < va):
            t = va / (va - vb)
            cut = tuple(ai + t * (bi - ai) for ai, bi in zip(a, b))
            neg.append(cut)
            pos.append(cut)
            zero_pts.append(cut)
    neg = _dedupe_ring(neg)
    pos = _dedupe_ring(pos)
    zero_pts = _dedupe_ring(zero_pts)
    return (
        neg if _ring_area_positive(neg) else None,
        zero_pts if len(zero_pts) == 2 else None,
        pos if _ring_area_positive(pos) else None,
    )


def _dedupe_ring(points):
    out = []
    for p in points:
        if not out or p != out[-1]:
            out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _ring_area_positive(ring) -> bool:
    if len(ring) < 3:
        return False
    area = Fraction(0)
    for i in range(len(ring)):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % len(ring)]
        area += x1 * y2 - x2 * y1
    return area != 0


def _polytope_sample(vertices):
    n = len(vertices)
    dims = len(vertices[0])
    return tuple(sum(v[d] for v in vertices) / n for d in range(dims))


def _enumerate_boxed(planes, m):
    if m == 0:
        return [((), ())]
    radius = _box_radius(planes, m)
    if m == 1:
        box = [(-radius,), (radius,)]
    else:
        box = [(-radius, -radius), (radius, -radius), (radius, radius), (-radius, radius)]
    regions = [((), box)]
    for vec in planes:
        nxt = []
        for signs, verts in regions:
            lo, zero, hi = _split_polytope(verts, vec)
            if lo is not None:
                nxt.append((signs + (-1,), lo))
            if zero is not None:
                nxt.append((signs + (0,), zero))
            if hi is not None:
                nxt.append((signs + (1,), hi))
        regions = nxt
    return [(signs, _polytope_sample(verts)) for signs, verts in regions]


# -- slack variables and integer points -----------------------------------------

def slack_form(system: Sequence[Tuple[Expression, str]],
               taken_names: Sequence[str] = ()) -> Tuple[List[Tuple[Expression, str]], List[str]]:
    """Rewrite inequalities ``expr >= 0`` into equalities with slack variables.

    Strict ``>`` is first rewritten to ``expr - 1 >= 0`` (integer-valued
    parameters).  Returns the rewritten system and the fresh nonnegative
    slack names.
    """
    used = set(taken_names)
    for e, _ in system:
        used.update(e.params())
    out: List[Tuple[Expression, str]] = []
    slacks: List[str] = []
    counter = 1
    for e, rel in system:
        if not e.is_linear():
            raise UnsupportedError("slack rewriting needs linear integer expressions")
        if rel == REL_EQ:
            out.append((e, REL_EQ))
            continue
        if rel == REL_GT:
            e = e.plus_const(-1)
        elif rel != REL_GE:
            raise ValueError("relation must be one of >=, >, =")
        while "s%d" % counter in used:
            counter += 1
        name = "s%d" % counter
        used.add(name)
        slacks.append(name)
        coeffs = dict(e.coeffs)
        coeffs[name] = -1
        out.append((Expression.linear(e.con(), coeffs), REL_EQ))
    return out, slacks


def satisfies_system(system: Sequence[Tuple[Expression, str]], gamma) -> bool:
    for e, rel in system:
        v = e.evaluate(gamma)
        if rel == REL_EQ and v != 0:
            return False
        if rel == REL_GT and not v > 0:
            return False
        if rel == REL_GE and not v >= 0:
            return False
    return True


def integer_point(cell: LinearCell, box) -> Optional[Tuple[int, ...]]:
    """Lexicographically least integer point of the cell inside a box.

    ``box`` maps each parameter to an inclusive integer (lo, hi) range, or
    is a single (lo, hi) pair for all parameters.  Bounded enumeration
    with propagation: each level first narrows its variable's range by
    exact elimination of the remaining ones, then scans ascending.
    """
    params = cell.params
    if isinstance(box, tuple):
        box = {p: box for p in params}
    ranges = [(int(box[p][0]), int(box[p][1])) for p in params]
    m = len(params)
    base = []
    for expr, rel in cell.constraints:
        base.append((expr_to_vector(expr, params), rel))
    for i, (lo, hi) in enumerate(ranges):
        lo_vec = tuple(Fraction(1 if j == i else 0) for j in range(m)) + (Fraction(-lo),)
        hi_vec = tuple(Fraction(-1 if j == i else 0) for j in range(m)) + (Fraction(hi),)
        base.append((lo_vec, REL_GE))
        base.append((hi_vec, REL_GE))

    import math

    def var_range(system, var):
        """Exact integer bounds for ``var`` with every other variable
        eliminated; None when the relaxation is already infeasible."""
        work = []
        for vec, rel in system:
            if rel == REL_EQ:
                work.append((vec, REL_GE))
                work.append((tuple(-c for c in vec), REL_GE))
            else:
                work.append((vec, rel))
        for other in range(m - 1, -1, -1):
            if other == var:
                continue
            lowers = [(v, r) for v, r in work if v[other] > 0]
            uppers = [(v, r) for v, r in work if v[other] < 0]
            nxt = [(v, r) for v, r in work if v[other] == 0]
            for lv, lr in lowers:
                for uv, ur in uppers:
                    sl = tuple(c / lv[other] for c in lv)
                    su = tuple(c / -uv[other] for c in uv)
                    combined = tuple(a + b for a, b in zip(sl, su))
                    nxt.append((combined,
                                REL_GE if (lr == REL_GE and ur == REL_GE) else REL_GT))
            work = nxt
        lo, lo_strict = None, False
        hi, hi_strict = None, False
        for vec, rel in work:
            coeff = vec[var]
            if coeff == 0:
                c = vec[-1]
                if rel == REL_GT and not c > 0:
                    return None
                if rel == REL_GE and not c >= 0:
                    return None
                continue
            bound = -vec[-1] / coeff
            if coeff > 0:
                if lo is None or bound > lo or (bound == lo and rel == REL_GT):
                    lo, lo_strict = bound, rel == REL_GT
            else:
                if hi is None or bound < hi or (bound == hi and rel == REL_GT):
                    hi, hi_strict = bound, rel == REL_GT
        lo_i = ranges[var][0] if lo is None else max(
            ranges[var][0], math.floor(lo) + 1 if lo_strict else math.ceil(lo))
        hi_i = ranges[var][1] if hi is None else min(
            ranges[var][1], math.ceil(hi) - 1 if hi_strict else math.floor(hi))
        return (lo_i, hi_i)

    def search(system, prefix):
        depth = len(prefix)
        if depth == m:
            return tuple(prefix) if cell.contains([Fraction(v) for v in prefix]) else None
        rng = var_range(system, depth)
        if rng is None or rng[0] > rng[1]:
            return None
        for v in range(rng[0], rng[1] + 1):
            pin = tuple(Fraction(1 if j == depth else 0) for j in range(m)) + (Fraction(-v),)
            found = search(system + [(pin, REL_EQ)], prefix + [v])
            if found is not None:
                return found
        return None

    return search(list(base), [])


def cell1d_integer_point(cell: Cell1D, minimum: Optional[int] = None) -> Optional[int]:
    """Least integer in a 1D cell (at least ``minimum`` when given), if any."""
    from .scalars import scalar_ceil, scalar_floor

    if cell.kind == "point":
        v = cell.lo
        if not isinstance(v, Fraction) or v.denominator != 1:
            return None
        n = int(v)
        return n if (minimum is None or n >= minimum) else None
    if cell.lo is NEG_INF:
        lo = minimum
    else:
        lo = scalar_floor(cell.lo) + 1
        if minimum is not None:
            lo = max(lo, minimum)
    if cell.hi is INF:
        return lo if lo is not None else 0
    hi = scalar_ceil(cell.hi) - 1
    if lo is None:
        return hi
    return lo if lo <= hi else None


# -- sign assignments -----------------------------------------------------------

def signs_at_1d(polys: Sequence[IntPoly], sample) -> Dict[IntPoly, int]:
    """Exact sign of each polynomial at a rational or algebraic sample."""
    out: Dict[IntPoly, int] = {}
    for f in polys:
        if isinstance(sample, AlgebraicNumber):
            out[f] = sample.sign_of(f)
        else:
            v = poly_eval(f, Fraction(sample))
            out[f] = (v > 0) - (v < 0)
    return out


def signs_at_linear(exprs: Sequence[Expression], params: Sequence[str],
                    point: Sequence[Fraction]) -> Dict[Tuple, int]:
    gamma = dict(zip(params, point))
    out: Dict[Tuple, int] = {}
    for e in exprs:
        v = e.evaluate(gamma)
        out[expr_to_vector(e, params)] = (v > 0) - (v < 0)
    return out


def signs_at(polys, sample):
    """Sign assignment of a polynomial set at a sample point.

    1D form: integer coefficient tuples with a scalar sample.  Linear
    form: use signs_at_linear directly.
    """
    return signs_at_1d(polys, sample)
