"""Definition-level checkers for every semantics, classical and
weighted, plus a brute-force enumerator over all subsets.

These checkers evaluate the acceptability conditions literally, subset
by subset, and serve as the ground truth the constraint encodings are
validated against. They are meant for small frameworks only.

Weighted defense note: an argument is weighted-defended when, for every
attacker *outside* the candidate set, the collective counterattack is
strictly stronger than the incoming attack. Attacks coming from inside
the set are instead charged to the conflict budget. A stricter variant
that quantifies over all attackers is available via ``defense_scope``.
The weighted completeness rule forces in a defended outsider only when
the set does not attack it at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Extension, ExtensionSet, Framework, extremal, iter_bits
from .semiring import SemiringValue

CONFLICT_FREE = "conflict-free"
ADMISSIBLE = "admissible"
COMPLETE = "complete"
STABLE = "stable"
PREFERRED = "preferred"
GROUNDED = "grounded"
SEMI_STABLE = "semi-stable"
STAGE = "stage"
IDEAL = "ideal"

BASE_KINDS = (CONFLICT_FREE, ADMISSIBLE, COMPLETE, STABLE)
EXTREMAL_KINDS = (PREFERRED, GROUNDED, SEMI_STABLE, STAGE, IDEAL)
ALL_KINDS = BASE_KINDS + EXTREMAL_KINDS

STRICT = "strict"
ANY_ATTACK = "any-attack"

OUTSIDE_ATTACKERS = "outside"
ALL_ATTACKERS = "all"

DEFAULT_CAP = 16


@dataclass(frozen=True)
class SemanticsSpec:
    """Which acceptability notion to evaluate.

    Weighted specs carry the tolerance threshold ``alpha``; the
    ``stable_rule`` selects how weighted stability treats outsiders:
    ``strict`` compares the collective attack weight against ``alpha``,
    ``any-attack`` only demands that some member attacks the outsider.
    """

    kind: str
    weighted: bool = False
    alpha: "SemiringValue | None" = None
    stable_rule: "str | None" = None

    def __post_init__(self) -> None:
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown semantics kind {self.kind!r}")
        if self.weighted != (self.alpha is not None):
            raise ValueError("weighted specs carry a threshold, classical ones do not")
        if self.weighted and self.kind == STABLE:
            if self.stable_rule is None:
                object.__setattr__(self, "stable_rule", STRICT)
            elif self.stable_rule not in (STRICT, ANY_ATTACK):
                raise ValueError(f"unknown stable rule {self.stable_rule!r}")
        elif self.stable_rule is not None:
            raise ValueError("stable_rule only applies to the weighted stable semantics")


def _validate(framework: Framework, spec: SemanticsSpec) -> None:
    if spec.weighted != framework.is_weighted:
        raise ValueError("spec weightedness does not match the framework")
    if spec.weighted:
        framework.semiring.validate(spec.alpha)


def _conflict_free(f: Framework, bits: int) -> bool:
    for member in iter_bits(bits):
        if f.attacker_mask(member) & bits:
            return False
    return True


def _alpha_conflict_free(f: Framework, bits: int, alpha: SemiringValue) -> bool:
    s = f.semiring
    total = s.top
    for idx, (src, dst) in enumerate(f.attacks):
        if bits >> src & 1 and bits >> dst & 1:
            total = s.times(total, f.weights[idx])
    return not s.lt(total, alpha)


def _defended_classical(f: Framework, bits: int, x: int) -> bool:
    for attacker in iter_bits(f.attacker_mask(x)):
        if not f.attacker_mask(attacker) & bits:
            return False
    return True


def _counter_weight(f: Framework, bits: int, target: int) -> SemiringValue:
    values = [w for src, w in f.attacks_onto(target) if bits >> src & 1]
    return f.semiring.combine(values)


def _defended_weighted(f: Framework, bits: int, x: int, scope: str) -> bool:
    s = f.semiring
    for attacker in iter_bits(f.attacker_mask(x)):
        if scope == OUTSIDE_ATTACKERS and bits >> attacker & 1:
            continue
        incoming = f.weight(attacker, x)
        if not s.gt(incoming, _counter_weight(f, bits, attacker)):
            return False
    return True


def _check_base(f: Framework, bits: int, spec: SemanticsSpec, scope: str) -> bool:
    kind = spec.kind
    if spec.weighted:
        if not _alpha_conflict_free(f, bits, spec.alpha):
            return False
        if kind == CONFLICT_FREE:
            return True
        if kind == STABLE:
            s = f.semiring
            for c in range(f.n):
                if bits >> c & 1:
                    continue
                if spec.stable_rule == ANY_ATTACK:
                    if not f.attacker_mask(c) & bits:
                        return False
                elif not s.lt(_counter_weight(f, bits, c), spec.alpha):
                    return False
            return True
        for member in iter_bits(bits):
            if not _defended_weighted(f, bits, member, scope):
                return False
        if kind == ADMISSIBLE:
            return True
        # complete: every defended argument the set does not attack must be in.
        for x in range(f.n):
            if bits >> x & 1:
                continue
            if f.attacker_mask(x) & bits:
                continue
            if _defended_weighted(f, bits, x, scope):
                return False
        return True

    if not _conflict_free(f, bits):
        return False
    if kind == CONFLICT_FREE:
        return True
    if kind == STABLE:
        for c in range(f.n):
            if not bits >> c & 1 and not f.attacker_mask(c) & bits:
                return False
        return True
    for member in iter_bits(bits):
        if not _defended_classical(f, bits, member):
            return False
    if kind == ADMISSIBLE:
        return True
    for x in range(f.n):
        if not bits >> x & 1 and _defended_classical(f, bits, x):
            return False
    return True


def check(
    framework: Framework,
    extension: Extension,
    spec: SemanticsSpec,
    *,
    defense_scope: str = OUTSIDE_ATTACKERS,
    cap: int = DEFAULT_CAP,
) -> bool:
    """Literal evaluation of one semantics on one candidate subset.

    The inclusion-extremal kinds are defined relative to the full
    enumeration and therefore delegate to ``enumerate_bruteforce``.
    """
    _validate(framework, spec)
    if extension.n != framework.n:
        raise ValueError("extension size does not match the framework")
    if spec.kind in BASE_KINDS:
        return _check_base(framework, extension.bits, spec, defense_scope)
    return extension in enumerate_bruteforce(
        framework, spec, cap=cap, defense_scope=defense_scope
    )


def enumerate_bruteforce(
    framework: Framework,
    spec: SemanticsSpec,
    *,
    cap: int = DEFAULT_CAP,
    defense_scope: str = OUTSIDE_ATTACKERS,
) -> ExtensionSet:
    """All extensions of the given semantics, by testing every subset."""
    _validate(framework, spec)
    n = framework.n
    if n > cap:
        raise ValueError(f"brute force enumeration capped at {cap} arguments, got {n}")

    kind = spec.kind
    if kind in BASE_KINDS:
        found = _scan(framework, spec, defense_scope)
        return ExtensionSet.of(found)

    if kind == PREFERRED:
        base = _scan(framework, _rebase(spec, ADMISSIBLE), defense_scope)
        return ExtensionSet.of(extremal(base, "max"))

    if kind == GROUNDED:
        base = _scan(framework, _rebase(spec, COMPLETE), defense_scope)
        minimal = extremal(base, "min")
        if not spec.weighted:
            fixpoint = grounded_fixpoint(framework)
            if len(minimal) != 1 or minimal[0].bits != fixpoint.bits:
                raise RuntimeError("grounded cross-check failed: fixpoint and minimal complete disagree")
        return ExtensionSet.of(minimal)

    if kind in (SEMI_STABLE, STAGE):
        base_kind = COMPLETE if kind == SEMI_STABLE else CONFLICT_FREE
        base = _scan(framework, _rebase(spec, base_kind), defense_scope)
        keys = [_range_bits(framework, e, spec) for e in base]
        return ExtensionSet.of(extremal(base, "max", keys))

    # ideal: the largest admissible set contained in every preferred one.
    admissible = _scan(framework, _rebase(spec, ADMISSIBLE), defense_scope)
    preferred = extremal(admissible, "max")
    common = (1 << n) - 1 if n else 0
    for e in preferred:
        common &= e.bits
    candidates = [e for e in admissible if e.bits & ~common == 0]
    return ExtensionSet.of(extremal(candidates, "max"))


def _rebase(spec: SemanticsSpec, kind: str) -> SemanticsSpec:
    return SemanticsSpec(kind, spec.weighted, spec.alpha)


def _range_bits(framework: Framework, extension: Extension, spec: SemanticsSpec) -> int:
    if spec.weighted:
        return framework.alpha_range(extension, spec.alpha).bits
    return framework.range_of(extension).bits


def _scan(framework: Framework, spec: SemanticsSpec, scope: str) -> list[Extension]:
    n = framework.n
    return [
        Extension(bits, n)
        for bits in range(1 << n)
        if _check_base(framework, bits, spec, scope)
    ]


def grounded_fixpoint(framework: Framework) -> Extension:
    """Classical grounded extension by characteristic-function iteration."""
    if framework.is_weighted:
        raise ValueError("fixpoint route applies to classical frameworks only")
    bits = 0
    while True:
        new = 0
        for x in range(framework.n):
            if _defended_classical(framework, bits, x):
                new |= 1 << x
        if new == bits:
            return Extension(bits, framework.n)
        bits = new
