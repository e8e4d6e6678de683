"""End-to-end computation of the feasible parameter region.

Pipeline: collect the constraint polynomials of the model and property,
decompose the parameter space so every decision-relevant sign is constant
per cell (resultant projection and root isolation for one polynomial
parameter; threshold-difference hyperplanes for the linear multi-parameter
case), then decide the property at one exact sample per cell with the
concrete semantics and read the region off the verdict-true cells.

Scope: exactly one parametric clock, and no other constrained clocks
(models with extra concretely constrained clocks are accepted by the
checkers but not by synthesis, which matches the preprocessing this
pipeline assumes).  Under integer parameter domains with nat time, cells
are decided at an integer sample when one exists, since integer-point
verdicts are the ones the decomposition keeps constant there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .constraints import AtomicConstraint
from .decomposition import (
    Cell1D,
    LinearCell,
    REL_EQ,
    REL_GE,
    REL_GT,
    atom_to_bivar,
    cell1d_integer_point,
    decompose_1d,
    decompose_linear,
    expr_to_unipoly,
    integer_point,
    project_clock,
)
from .expressions import Expression
from .model import (
    EXISTS_EVENTUALLY,
    PARAM_INT,
    PARAM_NAT,
    PARAM_REAL,
    Pta,
    SyntacticRun,
    SystemProperty,
    TIME_DENSE,
    TIME_NAT,
    UnsupportedError,
    prop_atoms,
)
from .polynomials import AlgebraicNumber
from .scalars import INF, NEG_INF, cmp
from .semantics import decide
from .feasibility import feasible_with_reset
from .transforms import encode_run_property, invariants_to_guards

DEFAULT_INT_BOX = 64


@dataclass(frozen=True)
class ConstraintPolynomial:
    """The polynomial ``clock_sign * clock - rhs`` of one normalized atom."""

    clock: Optional[str]
    clock_sign: int            # +1, -1, or 0 for clock-free atoms
    rhs: Expression

    def render(self) -> str:
        negated = self.rhs.negated()
        if self.clock_sign == 0:
            return negated.render()
        head = self.clock if self.clock_sign > 0 else "-%s" % self.clock
        body = negated.render()
        if body == "0":
            return head
        if body.startswith("-"):
            return "%s - %s" % (head, body[1:])
        return "%s + %s" % (head, body)


@dataclass
class CellVerdict:
    cell: object                     # Cell1D | LinearCell
    verdict: bool
    sample_used: object              # gamma dict used for the decision
    decided_at: str                  # "sample" | "integer-point"
    integer_witness: Optional[tuple] = None


@dataclass
class FeasibleRegion:
    params: Tuple[str, ...]
    method: str                      # "cad1" | "linear"
    cells: List[CellVerdict]
    psi: Optional[SystemProperty]
    time_domain: str
    param_domain: str
    planes: Optional[tuple] = None   # canonical hyperplanes (linear method)
    info: dict = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not any(cv.verdict for cv in self.cells)

    def signs_index(self) -> dict:
        if "signs_index" not in self.info:
            self.info["signs_index"] = {cv.cell.signs: cv.verdict for cv in self.cells}
        return self.info["signs_index"]


def collect_constraint_polynomials(pta: Pta, psi: Optional[SystemProperty]
                                   ) -> List[ConstraintPolynomial]:
    """One polynomial per distinct normalized atom of the model and property."""
    atoms = list(pta.atoms())
    if psi is not None:
        atoms += list(prop_atoms(psi.phi))
    seen = set()
    out: List[ConstraintPolynomial] = []
    for atom in atoms:
        if atom.rhs.is_infinite():
            continue
        if atom.pos is not None and atom.neg is not None:
            raise UnsupportedError("difference atoms are outside the one-clock pipeline")
        if atom.pos is not None:
            rec = ConstraintPolynomial(atom.pos, 1, atom.rhs)
        elif atom.neg is not None:
            rec = ConstraintPolynomial(atom.neg, -1, atom.rhs)
        else:
            rec = ConstraintPolynomial(None, 0, atom.rhs)
        key = (rec.clock, rec.clock_sign, rec.rhs)
        if key not in seen:
            seen.add(key)
            out.append(rec)
    return out


def _synthesis_clock(pta: Pta, psi: Optional[SystemProperty]) -> Optional[str]:
    atoms = list(pta.atoms())
    if psi is not None:
        atoms += list(prop_atoms(psi.phi))
    parametric, constrained = set(), set()
    for a in atoms:
        constrained.update(a.clocks())
        if a.is_parametric():
            parametric.update(a.clocks())
    if len(parametric) > 1:
        raise UnsupportedError(
            "model has %d parametric clocks; the synthesis pipeline handles one "
            "(see the two-clock analysis for the two-clock, one-parameter case)"
            % len(parametric))
    extra = constrained - parametric
    if parametric and extra:
        raise UnsupportedError(
            "synthesis needs the parametric clock to be the only constrained clock "
            "(concretely constrained clocks: %s)" % ", ".join(sorted(extra)))
    if len(constrained) > 1:
        raise UnsupportedError("synthesis supports a single constrained clock")
    return next(iter(constrained)) if constrained else None


def _needs_polynomial(pta: Pta, psi: Optional[SystemProperty]) -> bool:
    exprs = list(pta.expressions())
    if psi is not None:
        exprs += [a.rhs for a in prop_atoms(psi.phi)]
    return any(not e.is_linear() and not e.is_infinite() for e in exprs)


def _gamma_for(params: Sequence[str], values) -> dict:
    return dict(zip(params, values))


# -- hyperplane pool for the linear path --------------------------------------

def _linear_hyperplanes(atom_pool: Sequence[AtomicConstraint], resets: Sequence[int],
                        nat_time: bool) -> List[Expression]:
    thresholds: List[Expression] = []
    seen = set()
    extras: List[Expression] = []
    for atom in atom_pool:
        if atom.rhs.is_infinite():
            continue
        if atom.is_clock_free():
            extras.append(atom.rhs)
            continue
        if atom.pos is not None:
            thr = atom.rhs
            if nat_time and atom.strict:
                thr = thr.plus_const(-1)
        else:
            thr = atom.rhs.negated()
            if nat_time and atom.strict:
                thr = thr.plus_const(1)
        if thr.canonical_key() not in seen:
            seen.add(thr.canonical_key())
            thresholds.append(thr)
    consts = sorted({0, *(int(b) for b in resets)})
    planes: List[Expression] = list(extras)
    for i, t in enumerate(thresholds):
        for c in consts:
            planes.append(t.plus_const(-c))
        for u in thresholds[i + 1:]:
            planes.append(t.minus(u))
    return planes


def _cad1_pool(records: Sequence[ConstraintPolynomial], resets: Sequence[int],
               param: str) -> list:
    polys = []
    clock_name = next((r.clock for r in records if r.clock is not None), "x")
    for rec in records:
        polys.append(atom_to_bivar(rec.clock_sign > 0, rec.clock_sign < 0, rec.rhs, param))
    # the clock itself and one pin polynomial per reset constant, so the
    # pairwise resultants include every threshold-vs-constant difference
    polys.append(atom_to_bivar(True, False, Expression.constant(0), param))
    for b in sorted(set(int(v) for v in resets)):
        polys.append(atom_to_bivar(True, False, Expression.constant(b), param))
    return polys


def _reset_constants(pta: Pta) -> List[int]:
    out = []
    for e in pta.edges:
        out.extend(int(b) for b in e.updates.values())
    return out


# -- the pipeline ---------------------------------------------------------------

def synthesize(pta: Pta, psi: SystemProperty, time_domain: Optional[str] = None,
               param_domain: Optional[str] = None,
               int_box: int = DEFAULT_INT_BOX) -> FeasibleRegion:
    """Compute the feasible parameter region for the property.

    One polynomial parameter goes through projection + 1D decomposition;
    linear expressions over up to three parameters go through the
    hyperplane arrangement.  Every cell is decided concretely at its
    sample (dual reach for forall-always properties).
    """
    domain = time_domain or pta.time_domain
    pdomain = param_domain or pta.param_domain
    _synthesis_clock(pta, psi)

    def decide_at(gamma):
        return decide(pta, gamma, psi, domain).satisfied

    if _needs_polynomial(pta, psi):
        if len(pta.params) != 1:
            raise UnsupportedError(
                "polynomial expressions are supported with exactly one parameter")
        return _synthesize_cad1(pta, psi, decide_at, domain, pdomain, int_box)
    return _synthesize_linear(pta, psi, decide_at, domain, pdomain, int_box)


def _integer_gamma_1d(cell: Cell1D, pdomain: str, int_box: int) -> Optional[int]:
    minimum = 0 if pdomain == PARAM_NAT else -int_box
    n = cell1d_integer_point(cell, minimum=minimum)
    if n is None or n > int_box:
        return None
    return n


def _synthesize_cad1(pta, psi, decide_at, domain, pdomain, int_box) -> FeasibleRegion:
    param = pta.params[0]
    records = collect_constraint_polynomials(pta, psi)
    pool = _cad1_pool(records, _reset_constants(pta), param)
    cells = decompose_1d(project_clock(pool))
    integral = pdomain in (PARAM_INT, PARAM_NAT)
    out = []
    for cell in cells:
        integer = _integer_gamma_1d(cell, pdomain, int_box) if integral else None
        if integral and domain == TIME_NAT and integer is not None:
            gamma = {param: Fraction(integer)}
            decided = "integer-point"
        else:
            gamma = {param: cell.sample}
            decided = "sample"
        out.append(CellVerdict(cell, decide_at(gamma), gamma, decided,
                               (integer,) if integer is not None else None))
    return FeasibleRegion((param,), "cad1", out, psi, domain, pdomain,
                          info={"projected": len(pool)})


def _synthesize_linear(pta, psi, decide_at, domain, pdomain, int_box) -> FeasibleRegion:
    params = pta.params
    atom_pool = list(pta.atoms()) + (list(prop_atoms(psi.phi)) if psi else [])
    planes = _linear_hyperplanes(atom_pool, _reset_constants(pta), domain == TIME_NAT)
    cells = decompose_linear(planes, params)
    box = (0 if pdomain == PARAM_NAT else -int_box, int_box)
    integral = pdomain in (PARAM_INT, PARAM_NAT)
    out = []
    for cell in cells:
        integer = (integer_point(cell, box) if params else ()) if integral else None
        if integral and domain == TIME_NAT and integer is not None:
            gamma = _gamma_for(params, [Fraction(v) for v in integer])
            decided = "integer-point"
        else:
            gamma = _gamma_for(params, cell.sample)
            decided = "sample"
        out.append(CellVerdict(cell, decide_at(gamma), gamma, decided, integer))
    from .decomposition import canonical_planes
    return FeasibleRegion(params, "linear", out, psi, domain, pdomain,
                          planes=tuple(canonical_planes(planes, params)),
                          info={"hyperplanes": len(planes)})


def region_query(region: FeasibleRegion, gamma) -> bool:
    """Locate the cell containing the valuation and return its verdict.

    Linear regions index cells by the exact sign vector of the canonical
    hyperplanes at the query point; 1D regions scan the ordered cells.
    """
    if region.method == "cad1":
        value = Fraction(gamma[region.params[0]])
        for cv in region.cells:
            if cv.cell.contains(value):
                return cv.verdict
        raise AssertionError("decomposition does not cover the query point")
    point = [Fraction(gamma[p]) for p in region.params]
    if region.planes is not None:
        signs = []
        for vec in region.planes:
            v = vec[-1] + sum(c * x for c, x in zip(vec, point))
            signs.append((v > 0) - (v < 0))
        try:
            return region.signs_index()[tuple(signs)]
        except KeyError:
            raise AssertionError("decomposition does not cover the query point")
    for cv in region.cells:
        if cv.cell.contains(point):
            return cv.verdict
    raise AssertionError("decomposition does not cover the query point")


def enumerate_runs(pta: Pta, max_len: int) -> List[SyntacticRun]:
    """All syntactic runs of length <= max_len, breadth-first, edges in
    declaration order."""
    runs = [SyntacticRun(pta, ())]
    frontier = [((), pta.initial)]
    for _ in range(max_len):
        nxt = []
        for prefix, at in frontier:
            for idx, e in enumerate(pta.edges):
                if e.source != at:
                    continue
                path = prefix + (idx,)
                runs.append(SyntacticRun(pta, path))
                nxt.append((path, e.target))
        frontier = nxt
        if not frontier:
            break
    return runs


def run_region(pta: Pta, tau: SyntacticRun, phi, time_domain: Optional[str] = None,
               param_domain: Optional[str] = None,
               int_box: int = DEFAULT_INT_BOX) -> FeasibleRegion:
    """Parameter region over which one syntactic run can reach its end
    in a state satisfying the property.

    The property is encoded into the final step (one branch per DNF
    disjunct), invariants are folded into guards, and each cell sample is
    tested with the segmented pairwise feasibility check; the region is
    the union over branches.
    """
    domain = time_domain or pta.time_domain
    pdomain = param_domain or pta.param_domain
    branches = [invariants_to_guards(er) for er in encode_run_property(tau, phi)]
    params = pta.params

    atom_pool: List[AtomicConstraint] = []
    resets = _reset_constants(pta)
    for br in branches:
        atom_pool.extend(br.initial_condition.conjuncts)
        for st in br.steps:
            atom_pool.extend(st.guard.conjuncts)
            resets.extend(int(b) for b in st.updates.values())

    def decide_at(gamma):
        return any(feasible_with_reset(br, gamma, domain).feasible for br in branches)

    nonlinear = any(not a.rhs.is_linear() and not a.rhs.is_infinite() for a in atom_pool)
    if nonlinear or len(params) == 1:
        if len(params) != 1:
            raise UnsupportedError(
                "polynomial expressions are supported with exactly one parameter")
        param = params[0]
        pool = []
        for a in atom_pool:
            if a.rhs.is_infinite():
                continue
            pool.append(atom_to_bivar(a.pos is not None, a.neg is not None, a.rhs, param))
        pool.append(atom_to_bivar(True, False, Expression.constant(0), param))
        for b in sorted(set(resets)):
            pool.append(atom_to_bivar(True, False, Expression.constant(b), param))
        cells = decompose_1d(project_clock(pool))
        integral = pdomain in (PARAM_INT, PARAM_NAT)
        out = []
        for cell in cells:
            integer = _integer_gamma_1d(cell, pdomain, int_box) if integral else None
            if integral and domain == TIME_NAT and integer is not None:
                gamma = {param: Fraction(integer)}
                decided = "integer-point"
            else:
                gamma = {param: cell.sample}
                decided = "sample"
            out.append(CellVerdict(cell, decide_at(gamma), gamma, decided,
                                   (integer,) if integer is not None else None))
        return FeasibleRegion((param,), "cad1", out, None, domain, pdomain,
                              info={"branches": len(branches)})

    planes = _linear_hyperplanes(atom_pool, resets, domain == TIME_NAT)
    cells = decompose_linear(planes, params)
    box = (0 if pdomain == PARAM_NAT else -int_box, int_box)
    integral = pdomain in (PARAM_INT, PARAM_NAT)
    out = []
    for cell in cells:
        integer = (integer_point(cell, box) if params else ()) if integral else None
        if integral and domain == TIME_NAT and integer is not None:
            gamma = _gamma_for(params, [Fraction(v) for v in integer])
            decided = "integer-point"
        else:
            gamma = _gamma_for(params, cell.sample)
            decided = "sample"
        out.append(CellVerdict(cell, decide_at(gamma), gamma, decided, integer))
    from .decomposition import canonical_planes
    return FeasibleRegion(params, "linear", out, None, domain, pdomain,
                          planes=tuple(canonical_planes(planes, params)),
                          info={"branches": len(branches)})
