"""Finite-scale verification of simulation claims between models.

The central check: model A simulates model B through an encoding when
every sampled member g of B has a witness f in A's candidate pool with
encode(g(x)) and f(encode(x)) equal as outcomes on every planned input.
Everything runs under a fuel budget, so verdicts are three-valued:

* Verified: a witness agreed on every input, all of them decided.
* Refuted: every candidate disagreed somewhere it was decided.  This is
  sound relative to the candidate pool and the plan, nothing more.
* Unknown: fuel ran out before any candidate was pinned down.

Candidates are taken in listed order, then from the model's enumerator,
and the first fully decided witness is the one reported.  Exhausted
evaluations are never treated as divergence; they only taint a point as
undecided.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

from powerlab.core import (
    Converged,
    DomainMismatch,
    Encoding,
    FuelExhausted,
    Model,
    Outcome,
    PartialMap,
    Value,
    apply_with_cost,
    encode_outcome,
    pullback,
)


class Verdict(Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


def combine_verdicts(verdicts) -> Verdict:
    """Refuted dominates, then Unknown; Verified only when unanimous."""
    agg = Verdict.VERIFIED
    for v in verdicts:
        if v is Verdict.REFUTED:
            return Verdict.REFUTED
        if v is Verdict.UNKNOWN:
            agg = Verdict.UNKNOWN
    return agg


@dataclass(frozen=True)
class TestPlan:
    """What to test: inputs for the simulated side, the fuel budget,
    optional name filters for either side's sample, and how far to read
    each model's enumerator when hunting witnesses."""

    __test__ = False  # not a pytest class, despite the name

    inputs: tuple
    fuel: int
    a_sample: Optional[tuple] = None
    b_sample: Optional[tuple] = None
    candidate_limit: int = 64

    def __post_init__(self):
        if len(self.inputs) == 0:
            raise ValueError("a plan needs at least one input")
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")
        if self.candidate_limit < 0:
            raise ValueError("candidate_limit must not be negative")


def plan_over_range(lo: int, hi: int, fuel: int, **kw) -> TestPlan:
    """Inputs lo..hi inclusive."""
    return TestPlan(inputs=tuple(range(lo, hi + 1)), fuel=fuel, **kw)


@dataclass(frozen=True)
class CandidateFailure:
    """Where one candidate was first caught disagreeing."""

    candidate: str
    input: Value
    expected: Outcome
    got: Outcome


@dataclass(frozen=True)
class MemberResult:
    member: str
    verdict: Verdict
    witness: Optional[str]
    failures: tuple  # of CandidateFailure
    undecided_inputs: int


@dataclass(frozen=True)
class Claim:
    kind: str  # simulation | equivalence | closure | pullback-law
    left: str  # the simulating side
    right: str  # the simulated side
    encoding: str
    mode: Optional[str] = None


@dataclass(frozen=True)
class Stats:
    inputs: int
    evaluations: int
    fuel_spent: int


@dataclass(frozen=True)
class SimReport:
    claim: Claim
    members: tuple  # of MemberResult
    aggregate: Verdict
    stats: Stats
    notes: tuple = ()


class _Runner:
    """Applies maps under one fixed budget, caching by map identity and
    input.  Within a single check the budget never changes, so caching
    exhausted outcomes is sound too."""

    def __init__(self, fuel: int):
        self.fuel = fuel
        self.cache: dict = {}
        self.evaluations = 0
        self.fuel_spent = 0

    def run(self, m: PartialMap, x: Value) -> Outcome:
        key = (id(m), x)
        hit = self.cache.get(key)
        if hit is None:
            out, spent = apply_with_cost(m, x, self.fuel)
            self.evaluations += 1
            self.fuel_spent += spent
            self.cache[key] = out
            return out
        return hit


def _select(members, wanted, model_name: str):
    if wanted is None:
        return list(members)
    by_name = {m.name: m for m in members}
    out = []
    for name in wanted:
        if name not in by_name:
            raise KeyError(f"model {model_name!r} has no member {name!r}")
        out.append(by_name[name])
    return out


def _match_member(
    g_name: str,
    lhs: list,  # pairs (x, expected Outcome or None when undecided)
    pool: Sequence[PartialMap],
    rhs_input,  # callable: x -> input for the candidate side
    runner: _Runner,
) -> MemberResult:
    """Hunt through the pool for the first candidate matching lhs."""
    undecided_lhs = sum(1 for _, want in lhs if want is None)
    unknown_candidate = None
    failures = []
    for f in pool:
        mismatch = None
        undecided = 0
        for x, want in lhs:
            got = runner.run(f, rhs_input(x))
            if want is None or isinstance(got, FuelExhausted):
                undecided += 1
                continue
            if got != want:
                mismatch = CandidateFailure(f.name, x, want, got)
                break
        if mismatch is not None:
            failures.append(mismatch)
            continue
        if undecided == 0:
            return MemberResult(g_name, Verdict.VERIFIED, f.name, (), 0)
        if unknown_candidate is None:
            unknown_candidate = f.name
    if unknown_candidate is not None:
        return MemberResult(
            g_name, Verdict.UNKNOWN, None, tuple(failures), undecided_lhs
        )
    return MemberResult(g_name, Verdict.REFUTED, None, tuple(failures), undecided_lhs)


def check_simulation(a: Model, b: Model, e: Encoding, plan: TestPlan) -> SimReport:
    """Does ``a`` simulate ``b`` through ``e`` on this plan?

    For every sampled g in b, hunts a's candidate pool for an f with
    encode(g(x)) = f(encode(x)) as outcomes on all planned inputs.
    """
    if e.source is not b.domain or e.target is not a.domain:
        raise DomainMismatch(
            f"encoding {e.describe()} maps {e.source.value} to {e.target.value}, "
            f"but the claim needs {b.domain.value} to {a.domain.value}"
        )
    for x in plan.inputs:
        b.domain.check(x, f"plan for {b.name}")
    bs = _select(b.members, plan.b_sample, b.name)
    pool = _select(a.candidates(plan.candidate_limit), plan.a_sample, a.name)
    runner = _Runner(plan.fuel)
    enc_in = {x: e.encode(x) for x in plan.inputs}
    results = []
    for g in bs:
        lhs = []
        for x in plan.inputs:
            out = runner.run(g, x)
            lhs.append((x, None if isinstance(out, FuelExhausted) else encode_outcome(e, out)))
        results.append(_match_member(g.name, lhs, pool, enc_in.__getitem__, runner))
    return SimReport(
        claim=Claim("simulation", a.name, b.name, e.describe()),
        members=tuple(results),
        aggregate=combine_verdicts(r.verdict for r in results),
        stats=Stats(len(plan.inputs), runner.evaluations, runner.fuel_spent),
    )


def check_closure(model: Model, plan: TestPlan) -> SimReport:
    """Is the sample closed under composition?  Every pairwise composite
    must match some member of the candidate pool on the planned inputs."""
    for x in plan.inputs:
        model.domain.check(x, f"plan for {model.name}")
    members = _select(model.members, plan.b_sample, model.name)
    pool = _select(model.candidates(plan.candidate_limit), plan.a_sample, model.name)
    runner = _Runner(plan.fuel)
    results = []
    for f in members:
        for g in members:
            lhs = []
            for x in plan.inputs:
                first = runner.run(g, x)
                if isinstance(first, FuelExhausted):
                    lhs.append((x, None))
                elif isinstance(first, Converged):
                    second = runner.run(f, first.value)
                    lhs.append(
                        (x, None if isinstance(second, FuelExhausted) else second)
                    )
                else:
                    lhs.append((x, first))
            results.append(
                _match_member(f"{f.name}*{g.name}", lhs, pool, lambda x: x, runner)
            )
    return SimReport(
        claim=Claim("closure", model.name, model.name, "identity"),
        members=tuple(results),
        aggregate=combine_verdicts(r.verdict for r in results),
        stats=Stats(len(plan.inputs), runner.evaluations, runner.fuel_spent),
    )


def check_pullback_law(a: Model, b: Model, e: Encoding, plan: TestPlan) -> SimReport:
    """Check a simulation two ways: directly, and through pulled-back
    candidates on the source side.  The two sides must agree; their
    agreement is the finite-scale shadow of the pullback law."""
    sim = check_simulation(a, b, e, plan)
    bs = _select(b.members, plan.b_sample, b.name)
    pool = _select(a.candidates(plan.candidate_limit), plan.a_sample, a.name)
    pulled = {f.name: pullback(e, f, name=f.name) for f in pool}
    runner = _Runner(plan.fuel)
    law_results = []
    for g, simres in zip(bs, sim.members):
        lhs = []
        for x in plan.inputs:
            out = runner.run(g, x)
            lhs.append((x, None if isinstance(out, FuelExhausted) else out))
        if simres.witness is not None:
            law_pool = [pulled[simres.witness]]
        else:
            law_pool = list(pulled.values())
        res = _match_member(f"pullback:{g.name}", lhs, law_pool, lambda x: x, runner)
        law_results.append(res)
    law_agg = combine_verdicts(r.verdict for r in law_results)
    consistent = sim.aggregate is law_agg
    notes = (
        f"direct side: {sim.aggregate.value}",
        f"pullback side: {law_agg.value}",
        "pullback law: consistent" if consistent else "pullback law: violated",
    )
    aggregate = sim.aggregate if consistent else Verdict.REFUTED
    return SimReport(
        claim=Claim("pullback-law", a.name, b.name, e.describe()),
        members=sim.members + tuple(law_results),
        aggregate=aggregate,
        stats=Stats(
            len(plan.inputs),
            sim.stats.evaluations + runner.evaluations,
            sim.stats.fuel_spent + runner.fuel_spent,
        ),
        notes=notes,
    )


def check_equivalence(
    a: Model,
    b: Model,
    e_ab: Encoding,
    e_ba: Encoding,
    plan: TestPlan,
    mode: str = "plain",
) -> SimReport:
    """Simulation both ways; ``strong`` additionally demands the
    encodings be bijections on the tested prefixes, ``isomorphism`` that
    they invert each other there.

    ``e_ab`` carries b-side values into a, ``e_ba`` the other way.  When
    the domains differ, the reverse direction is tested on the image of
    the planned inputs.
    """
    if mode not in ("plain", "strong", "isomorphism"):
        raise ValueError(f"unknown equivalence mode {mode!r}")
    fwd = check_simulation(a, b, e_ab, plan)
    if a.domain is b.domain:
        rev_inputs = plan.inputs
    else:
        rev_inputs = tuple(e_ab.encode(x) for x in plan.inputs)
    rev_plan = replace(
        plan, inputs=rev_inputs, a_sample=plan.b_sample, b_sample=plan.a_sample
    )
    bwd = check_simulation(b, a, e_ba, rev_plan)
    verdicts = [fwd.aggregate, bwd.aggregate]
    notes = [
        f"forward: {fwd.aggregate.value}",
        f"backward: {bwd.aggregate.value}",
    ]
    if mode in ("strong", "isomorphism"):
        for y in rev_inputs:
            if e_ab.decode(y) is None:
                notes.append(
                    f"{e_ab.describe()} misses {y!r}: not a bijection on the tested prefix"
                )
                verdicts.append(Verdict.REFUTED)
                break
        for x in plan.inputs:
            if e_ba.decode(x) is None:
                notes.append(
                    f"{e_ba.describe()} misses {x!r}: not a bijection on the tested prefix"
                )
                verdicts.append(Verdict.REFUTED)
                break
    if mode == "isomorphism":
        for x in plan.inputs:
            if e_ba.encode(e_ab.encode(x)) != x:
                notes.append(f"encodings do not invert each other at {x!r}")
                verdicts.append(Verdict.REFUTED)
                break
        for y in rev_inputs:
            if e_ab.encode(e_ba.encode(y)) != y:
                notes.append(f"encodings do not invert each other at {y!r}")
                verdicts.append(Verdict.REFUTED)
                break
    members = tuple(replace(r, member=f"fwd:{r.member}") for r in fwd.members)
    members += tuple(replace(r, member=f"bwd:{r.member}") for r in bwd.members)
    return SimReport(
        claim=Claim(
            "equivalence", a.name, b.name, f"{e_ab.describe()}/{e_ba.describe()}", mode
        ),
        members=members,
        aggregate=combine_verdicts(verdicts),
        stats=Stats(
            len(plan.inputs),
            fwd.stats.evaluations + bwd.stats.evaluations,
            fwd.stats.fuel_spent + bwd.stats.fuel_spent,
        ),
        notes=tuple(notes),
    )


def probe_encodings(
    a: Model,
    b: Model,
    family: Sequence[Encoding],
    plan: TestPlan,
    family_name: str = "family",
) -> list:
    """Try a whole family of encodings for the same simulation claim.

    Returns one report per encoding, in family order.  When none of
    them verifies, every report is annotated to say the refutation is
    relative to this family only; a cleverer encoding may still exist.
    """
    encodings = list(family)
    if not encodings:
        raise ValueError("empty family: nothing to probe")
    reports = [check_simulation(a, b, e, plan) for e in encodings]
    if not any(r.aggregate is Verdict.VERIFIED for r in reports):
        tag = f"no encoding in {family_name} verified; refutation relative to this family only"
        reports = [replace(r, notes=r.notes + (tag,)) for r in reports]
    return reports


@dataclass(frozen=True)
class Agreement:
    """Extensional comparison of two maps on shared inputs."""

    equal: bool
    mismatches: tuple  # of (input, left outcome, right outcome)
    undecided: int


def maps_agree(m1: PartialMap, m2: PartialMap, inputs, fuel: int) -> Agreement:
    """Outcome-level agreement of two maps; exhausted points are
    undecided, and equality holds only with zero mismatches and zero
    undecided points."""
    runner = _Runner(fuel)
    mismatches = []
    undecided = 0
    for x in inputs:
        left = runner.run(m1, x)
        right = runner.run(m2, x)
        if isinstance(left, FuelExhausted) or isinstance(right, FuelExhausted):
            undecided += 1
            continue
        if left != right:
            mismatches.append((x, left, right))
    return Agreement(not mismatches and undecided == 0, tuple(mismatches), undecided)
