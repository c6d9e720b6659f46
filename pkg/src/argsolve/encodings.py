"""Constraint models for each semantics, the enumeration pipelines for
the inclusion-extremal kinds, the preferred-membership decision, and
user-supplied side requirements.

Classical models are exact. Weighted models are exact for the
conflict-free, admissible and complete families; the strict weighted
stable family over-approximates in the model (the outsider weight
comparison is applied during leaf validation). Leaf validation, on by
default, re-checks every candidate against the definition-level
checkers before it is emitted.

The weighted admissibility and completeness constraints enumerate
attacker subsets explicitly, so they grow exponentially with the
in-degree of the attacked parents. That is fine at the intended scale
(small and medium graphs); see the README for the limits.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import oracle
from .engine import (
    ConditionalRequirement,
    CostTerm,
    Literal,
    Model,
    Nogood,
    SearchConfig,
    SolveOutcome,
    solve_all,
    solve_within_budget,
)
from .model import Extension, ExtensionSet, Framework, extremal
from .oracle import (
    ADMISSIBLE,
    BASE_KINDS,
    COMPLETE,
    CONFLICT_FREE,
    GROUNDED,
    IDEAL,
    PREFERRED,
    SEMI_STABLE,
    STABLE,
    STAGE,
    SemanticsSpec,
)

MAX = "max"
MIN = "min"

MEMBERSHIP = "membership"
RANGE = "range"


@dataclass(frozen=True)
class UserRequirement:
    """A side requirement over argument membership: guard implies
    consequence, both conjunctions of disjunctive clauses of
    argument literals."""

    guard: tuple[tuple[Literal, ...], ...]
    consequence: tuple[tuple[Literal, ...], ...]


@dataclass(frozen=True)
class EncodingRequest:
    """Everything needed to enumerate one semantics on one framework."""

    framework: Framework
    spec: SemanticsSpec
    config: SearchConfig = SearchConfig()
    requirements: tuple[UserRequirement, ...] = ()


def _nogood(literals) -> "Nogood | None":
    """Deduplicated nogood, or None when the pattern is unsatisfiable
    (it then never fires and is dropped)."""
    values: dict[int, int] = {}
    for lit in literals:
        if values.setdefault(lit.var, lit.value) != lit.value:
            return None
    return Nogood(tuple(Literal(v, values[v]) for v in sorted(values)))


def _guard_pattern(literals) -> "tuple[tuple[Literal, ...], ...] | None":
    """Unit-clause guard for a specific assignment pattern; None when
    contradictory."""
    values: dict[int, int] = {}
    for lit in literals:
        if values.setdefault(lit.var, lit.value) != lit.value:
            return None
    return tuple((Literal(v, values[v]),) for v in sorted(values))


def encode(framework: Framework, spec: SemanticsSpec) -> Model:
    """Build the constraint model for one of the four base families."""
    if spec.kind not in BASE_KINDS:
        raise ValueError(f"{spec.kind} has no direct encoding; use enumerate_extensions")
    if spec.weighted != framework.is_weighted:
        raise ValueError("spec weightedness does not match the framework")
    if spec.weighted:
        return _encode_weighted(framework, spec)
    return _encode_classical(framework, spec)


def _encode_classical(f: Framework, spec: SemanticsSpec) -> Model:
    nogoods: list[Nogood] = []
    conditionals: list[ConditionalRequirement] = []

    for src, dst in f.attacks:
        ng = _nogood([Literal(src, 1), Literal(dst, 1)])
        if ng is not None:
            nogoods.append(ng)

    if spec.kind in (ADMISSIBLE, COMPLETE):
        for ai in range(f.n):
            for p in sorted(f.attackers(ai)):
                lits = [Literal(ai, 1)] + [Literal(g, 0) for g in sorted(f.attackers(p))]
                ng = _nogood(lits)
                if ng is not None:
                    nogoods.append(ng)

    if spec.kind == COMPLETE:
        for ai in range(f.n):
            parents = sorted(f.attackers(ai))
            clauses = []
            degenerate = False
            for p in parents:
                grands = sorted(f.attackers(p))
                if not grands:
                    degenerate = True  # undefendable parent: guard can never hold
                    break
                clauses.append(tuple(Literal(g, 1) for g in grands))
            if degenerate:
                continue
            conditionals.append(
                ConditionalRequirement(tuple(clauses), ((Literal(ai, 1),),))
            )

    if spec.kind == STABLE:
        for ai in range(f.n):
            lits = [Literal(ai, 0)] + [Literal(p, 0) for p in sorted(f.attackers(ai))]
            ng = _nogood(lits)
            if ng is not None:
                nogoods.append(ng)

    return Model(f.n, tuple(nogoods), tuple(conditionals))


def _defense_holds(f: Framework, parent: int, child: int, taken: tuple[int, ...]) -> bool:
    s = f.semiring
    counter = s.combine(f.weight(g, parent) for g in taken)
    return s.gt(f.weight(parent, child), counter)


def _encode_weighted(f: Framework, spec: SemanticsSpec) -> Model:
    s = f.semiring
    cost_terms = []
    for idx, (src, dst) in enumerate(f.attacks):
        trigger = (
            (Literal(src, 1),) if src == dst else (Literal(src, 1), Literal(dst, 1))
        )
        cost_terms.append(CostTerm(trigger, f.weights[idx]))

    nogoods: list[Nogood] = []
    conditionals: list[ConditionalRequirement] = []

    if spec.kind in (ADMISSIBLE, COMPLETE):
        for ai in range(f.n):
            for p in sorted(f.attackers(ai)):
                grands = sorted(f.attackers(p))
                for take in range(1 << len(grands)):
                    taken = tuple(g for k, g in enumerate(grands) if take >> k & 1)
                    if _defense_holds(f, p, ai, taken):
                        continue
                    lits = [Literal(ai, 1), Literal(p, 0)]
                    lits += [Literal(g, 1) for g in taken]
                    lits += [Literal(g, 0) for g in grands if g not in taken]
                    ng = _nogood(lits)
                    if ng is not None:
                        nogoods.append(ng)

    if spec.kind == COMPLETE:
        for ai in range(f.n):
            parents = sorted(f.attackers(ai))
            defenders: set[int] = set()
            for p in parents:
                defenders |= f.attackers(p)
            # Parents are pinned to 0 by the guard, so they never defend.
            grand_union = sorted(defenders - set(parents))
            for take in range(1 << len(grand_union)):
                taken = frozenset(g for k, g in enumerate(grand_union) if take >> k & 1)
                defended = all(
                    _defense_holds(f, p, ai, tuple(g for g in sorted(f.attackers(p)) if g in taken))
                    for p in parents
                )
                if not defended:
                    continue
                lits = [Literal(p, 0) for p in parents]
                lits += [Literal(g, 1) for g in sorted(taken)]
                lits += [Literal(g, 0) for g in grand_union if g not in taken]
                guard = _guard_pattern(lits)
                if guard is None:
                    continue
                if any(lit.var == ai and lit.value == 1 for clause in guard for lit in clause):
                    continue  # consequence already part of the pattern
                conditionals.append(
                    ConditionalRequirement(guard, ((Literal(ai, 1),),))
                )

    if spec.kind == STABLE:
        # Both modes keep the attack-existence pattern; the strict weight
        # comparison against the threshold happens at leaf validation.
        for ai in range(f.n):
            lits = [Literal(ai, 0)] + [Literal(p, 0) for p in sorted(f.attackers(ai))]
            ng = _nogood(lits)
            if ng is not None:
                nogoods.append(ng)

    return Model(
        f.n,
        tuple(nogoods),
        tuple(conditionals),
        tuple(cost_terms),
        s,
        spec.alpha,
    )


def apply_user_requirements(model: Model, requirements) -> Model:
    """Append side requirements; the solution set can only shrink."""
    extra = tuple(
        ConditionalRequirement(req.guard, req.consequence) for req in requirements
    )
    return replace(model, conditionals=model.conditionals + extra)


def _solve(model: Model, config: SearchConfig) -> SolveOutcome:
    if model.threshold is not None:
        return solve_within_budget(model, config)
    return solve_all(model, config)


def _rebase(spec: SemanticsSpec, kind: str) -> SemanticsSpec:
    return SemanticsSpec(kind, spec.weighted, spec.alpha)


def _enumerate_base(
    request: EncodingRequest, kind: str, leaf_validation: bool
) -> SolveOutcome:
    spec = _rebase(request.spec, kind) if kind != request.spec.kind else request.spec
    model = encode(request.framework, spec)
    model = apply_user_requirements(model, request.requirements)
    outcome = _solve(model, request.config)
    if leaf_validation:
        kept = [
            ext
            for ext in outcome.solutions
            if oracle.check(request.framework, ext, spec)
        ]
        outcome = replace(outcome, solutions=ExtensionSet.of(kept))
    return outcome


def enumerate_extensions(
    request: EncodingRequest, *, leaf_validation: bool = True
) -> SolveOutcome:
    """Enumerate all extensions of the requested semantics.

    Base kinds are one solver run. The inclusion-extremal kinds first
    enumerate their base family and then keep the subset-extremal
    elements; a timeout anywhere marks the outcome incomplete.
    """
    kind = request.spec.kind
    f = request.framework
    spec = request.spec

    if kind in BASE_KINDS:
        return _enumerate_base(request, kind, leaf_validation)

    if kind == PREFERRED:
        base = _enumerate_base(request, ADMISSIBLE, leaf_validation)
        kept = extremal(list(base.solutions), MAX)
        return replace(base, solutions=ExtensionSet.of(kept))

    if kind == GROUNDED:
        base = _enumerate_base(request, COMPLETE, leaf_validation)
        kept = extremal(list(base.solutions), MIN)
        return replace(base, solutions=ExtensionSet.of(kept))

    if kind in (SEMI_STABLE, STAGE):
        base_kind = COMPLETE if kind == SEMI_STABLE else CONFLICT_FREE
        base = _enumerate_base(request, base_kind, leaf_validation)
        solutions = list(base.solutions)
        keys = [_range_key(f, ext, spec) for ext in solutions]
        kept = extremal(solutions, MAX, keys)
        return replace(base, solutions=ExtensionSet.of(kept))

    if kind == IDEAL:
        base = _enumerate_base(request, ADMISSIBLE, leaf_validation)
        admissible = list(base.solutions)
        preferred = extremal(admissible, MAX)
        common = (1 << f.n) - 1 if f.n else 0
        for ext in preferred:
            common &= ext.bits
        candidates = [ext for ext in admissible if ext.bits & ~common == 0]
        kept = extremal(candidates, MAX)
        return replace(base, solutions=ExtensionSet.of(kept))

    raise ValueError(f"unknown semantics kind {kind!r}")


def _range_key(f: Framework, ext: Extension, spec: SemanticsSpec) -> int:
    if spec.weighted:
        return f.alpha_range(ext, spec.alpha).bits
    return f.range_of(ext).bits


def filter_extremal(
    sets: ExtensionSet,
    direction: str,
    *,
    key: str = MEMBERSHIP,
    framework: "Framework | None" = None,
    alpha=None,
) -> ExtensionSet:
    """Keep the subset-maximal (or -minimal) elements of a collection.

    With ``key="range"`` the comparison happens on the (alpha-)ranges,
    which requires the framework; the elements themselves are returned.
    """
    items = list(sets)
    if key == MEMBERSHIP:
        keys = None
    elif key == RANGE:
        if framework is None:
            raise ValueError("range filtering needs the framework")
        if alpha is None:
            keys = [framework.range_of(e).bits for e in items]
        else:
            keys = [framework.alpha_range(e, alpha).bits for e in items]
    else:
        raise ValueError(f"unknown filter key {key!r}")
    return ExtensionSet.of(extremal(items, direction, keys))


def _satisfies(model: Model, bits: int) -> bool:
    def lit_holds(lit: Literal) -> bool:
        return (bits >> lit.var & 1) == lit.value

    for ng in model.nogoods:
        if all(lit_holds(l) for l in ng.literals):
            return False
    for cond in model.conditionals:
        if all(any(lit_holds(l) for l in clause) for clause in cond.guard):
            if not all(any(lit_holds(l) for l in clause) for clause in cond.consequence):
                return False
    return True


def is_preferred(
    framework: Framework,
    candidate: Extension,
    config: SearchConfig = SearchConfig(),
) -> bool:
    """Decide whether ``candidate`` is a preferred extension.

    The candidate must satisfy the admissibility model, and the same
    model restricted to strict supersets of the candidate must be
    unsatisfiable.
    """
    if framework.is_weighted:
        raise ValueError("the preferred decision works on classical frameworks")
    if candidate.n != framework.n:
        raise ValueError("candidate size does not match the framework")
    model = encode(framework, SemanticsSpec(ADMISSIBLE))
    if not _satisfies(model, candidate.bits):
        return False
    outside = [i for i in range(framework.n) if i not in candidate]
    if not outside:
        return True
    forcing = tuple(Nogood((Literal(i, 0),)) for i in candidate)
    superset = Nogood(tuple(Literal(i, 0) for i in outside))
    probe = replace(model, nogoods=model.nogoods + forcing + (superset,))
    outcome = solve_all(probe, replace(config, solution_cap=1))
    return len(outcome.solutions) == 0
