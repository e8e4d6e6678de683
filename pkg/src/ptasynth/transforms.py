"""Run-level rewrites that reduce property satisfaction to plain reachability.

Two rewrites do the work: encoding a state property into the final step
of a run (location references resolve to true/false, the rest becomes an
extra guard), and folding location invariants into transition guards so
every location invariant is literally true afterwards.  Both preserve
the set of realizable runs; the second additionally needs the initial
invariant at the all-zero valuation, which is kept as an explicit side
condition on the result instead of being merged into the first guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Mapping, Tuple

from .constraints import AtomicConstraint, SimpleConstraint
from .model import (
    Pta,
    PropAnd,
    PropAtom,
    PropConst,
    PropLoc,
    PropNot,
    PropOr,
    StateProperty,
    SyntacticRun,
    UnsupportedError,
)


@dataclass(frozen=True)
class EncodedRun:
    """A syntactic run with an extra conjunction attached to its last step."""

    base: SyntacticRun
    extra_final: SimpleConstraint


@dataclass(frozen=True)
class GuardStep:
    guard: SimpleConstraint
    action: str
    updates: Mapping[str, int]
    source: str
    target: str


@dataclass(frozen=True)
class GuardOnlyRun:
    """A run whose location invariants are all true.

    ``initial_condition`` holds the original initial invariant with every
    clock replaced by zero; its atoms are clock-free parameter conditions
    that must hold for the run to start at all.
    """

    steps: Tuple[GuardStep, ...]
    initial_condition: SimpleConstraint
    clocks: Tuple[str, ...]
    params: Tuple[str, ...]
    initial_location: str = "s0"

    def __len__(self):
        return len(self.steps)


def encode_property(phi: StateProperty, location: str) -> StateProperty:
    """Resolve location references against ``location``; atoms pass through."""
    if isinstance(phi, (PropAtom, PropConst)):
        return phi
    if isinstance(phi, PropLoc):
        return PropConst(phi.name == location)
    if isinstance(phi, PropNot):
        return PropNot(encode_property(phi.inner, location))
    if isinstance(phi, PropAnd):
        return PropAnd(encode_property(phi.left, location), encode_property(phi.right, location))
    if isinstance(phi, PropOr):
        return PropOr(encode_property(phi.left, location), encode_property(phi.right, location))
    raise TypeError("not a state property: %r" % (phi,))


def negate_property(phi: StateProperty) -> StateProperty:
    """Negation pushed down to atoms; atoms flip to the complementary relation."""
    if isinstance(phi, PropConst):
        return PropConst(not phi.value)
    if isinstance(phi, PropAtom):
        return PropAtom(phi.atom.negation())
    if isinstance(phi, PropLoc):
        return PropNot(phi)
    if isinstance(phi, PropNot):
        return to_nnf(phi.inner)
    if isinstance(phi, PropAnd):
        return PropOr(negate_property(phi.left), negate_property(phi.right))
    if isinstance(phi, PropOr):
        return PropAnd(negate_property(phi.left), negate_property(phi.right))
    raise TypeError("not a state property: %r" % (phi,))


def to_nnf(phi: StateProperty) -> StateProperty:
    if isinstance(phi, PropNot):
        return negate_property(phi.inner)
    if isinstance(phi, PropAnd):
        return PropAnd(to_nnf(phi.left), to_nnf(phi.right))
    if isinstance(phi, PropOr):
        return PropOr(to_nnf(phi.left), to_nnf(phi.right))
    return phi


def to_dnf_atoms(phi: StateProperty) -> List[Tuple[AtomicConstraint, ...]]:
    """Disjunctive normal form of a location-free property, as atom tuples.

    Constant folding happens here: a false disjunct disappears, a true one
    becomes the empty conjunction.  The input must already have locations
    resolved (see encode_property) and negations pushed down (see to_nnf).
    """
    if isinstance(phi, PropConst):
        return [()] if phi.value else []
    if isinstance(phi, PropAtom):
        return [(phi.atom,)]
    if isinstance(phi, PropOr):
        return to_dnf_atoms(phi.left) + to_dnf_atoms(phi.right)
    if isinstance(phi, PropAnd):
        out = []
        for left in to_dnf_atoms(phi.left):
            for right in to_dnf_atoms(phi.right):
                out.append(left + right)
        return out
    if isinstance(phi, PropNot):
        raise ValueError("negation must be pushed to atoms before DNF")
    if isinstance(phi, PropLoc):
        raise ValueError("location references must be encoded before DNF")
    raise TypeError("not a state property: %r" % (phi,))


def encode_run_property(run: SyntacticRun, phi: StateProperty) -> List[EncodedRun]:
    """Attach a state property to a run's final step, one run per DNF disjunct.

    A run in the result is realizable under gamma exactly when the original
    run can reach its end in a state satisfying the property; an empty list
    means the property is unsatisfiable at the run's final location.
    """
    encoded = encode_property(phi, run.final_location())
    disjuncts = to_dnf_atoms(to_nnf(encoded))
    return [EncodedRun(run, SimpleConstraint(conj)) for conj in disjuncts]


def invariants_to_guards(run) -> GuardOnlyRun:
    """Fold location invariants into the step guards (the guard-only form).

    Each step guard becomes ``g & I_source & I_target[updates]``; the extra
    final conjunction of an encoded run is substituted and folded the same
    way.  Substitution can eliminate all clocks from an atom; such pure
    parameter conditions stay in the guard.  A property-encoded empty run
    gets one synthetic step so that the final condition can still be
    reached by delaying in the initial location.
    """
    extra = None
    if isinstance(run, EncodedRun):
        extra = run.extra_final
        run = run.base
    pta = run.pta
    edges = run.edges()
    locs = run.locations()
    steps = []
    for i, edge in enumerate(edges):
        guard = edge.guard
        guard = guard.conjoin(pta.invariants[locs[i]])
        guard = guard.conjoin(pta.invariants[locs[i + 1]].substitute(edge.updates))
        if extra is not None and i == len(edges) - 1:
            guard = guard.conjoin(extra.substitute(edge.updates))
        steps.append(GuardStep(guard, edge.action, dict(edge.updates), "s%d" % i,
                               "s%d" % (i + 1)))
    if not edges and extra is not None:
        guard = pta.invariants[pta.initial].conjoin(extra)
        steps.append(GuardStep(guard, "stay", {}, "s0", "s1"))
    zeros = {c: 0 for c in pta.clocks}
    initial_condition = pta.invariants[pta.initial].substitute(zeros)
    return GuardOnlyRun(tuple(steps), initial_condition, pta.clocks, pta.params)


def classify_lu(pta: Pta) -> dict:
    """Split parameters into lower-bound / upper-bound / mixed occurrences.

    Over the normalized atoms, a parameter with a positive coefficient on
    the right-hand side bounds the clock term from above; negative, from
    below.  The automaton is L/U when no parameter does both.
    """
    lower, upper = set(), set()
    for atom in pta.atoms():
        e = atom.rhs
        if e.is_infinite():
            continue
        if not e.is_linear():
            raise UnsupportedError("L/U classification needs linear expressions")
        for p in e.params():
            if e.cf(p) > 0:
                upper.add(p)
            elif e.cf(p) < 0:
                lower.add(p)
    both = lower & upper
    return {
        "lower": frozenset(lower - both),
        "upper": frozenset(upper - both),
        "both": frozenset(both),
        "is_lu": not both,
    }
