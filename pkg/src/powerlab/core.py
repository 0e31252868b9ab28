"""Core abstractions: domains, outcomes, partial maps, encodings, models.

A model here is a finite named sample of partial maps over a single
domain (naturals, bit strings, or pure lists), optionally extended by an
enumerator that can produce further members on demand.  Maps are always
evaluated under an explicit fuel budget, so an evaluation has one of
three outcomes: it converged to a value, it is certifiably divergent, or
the budget ran out and nothing is known.

Encodings are total injections between domains.  ``decode`` is the exact
partial inverse: it returns ``None`` off the range.  Pushing a map
forward along an encoding conjugates it (encode, run, decode); the
minimal extension diverges off the encoding's range, and the ``fix``
extension leaves off-range points alone instead.

Determinism and fuel monotonicity are load-bearing: the same map on the
same input with the same fuel always yields the same outcome, and a
converged or diverged outcome never changes when the budget grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Union

Nat = int
BitStr = str
PureList = tuple
Value = Union[Nat, BitStr, PureList]


class DomainMismatch(ValueError):
    """A value was offered to a domain it does not belong to."""


class InvalidMap(ValueError):
    """A partial map descriptor cannot be evaluated."""


def is_pure_list(x: object) -> bool:
    """True for nested pairs bottoming out in the empty tuple."""
    stack = [x]
    while stack:
        v = stack.pop()
        if not isinstance(v, tuple):
            return False
        if len(v) == 2:
            stack.extend(v)
        elif len(v) != 0:
            return False
    return True


class Domain(Enum):
    NAT = "nat"
    BITS = "bits"
    LIST = "list"

    def contains(self, x: Value) -> bool:
        if self is Domain.NAT:
            # bool is an int subclass and must not slip through
            return type(x) is int and x >= 0
        if self is Domain.BITS:
            return type(x) is str and set(x) <= {"0", "1"}
        return is_pure_list(x)

    def check(self, x: Value, who: str) -> None:
        if not self.contains(x):
            raise DomainMismatch(f"wrong domain: {who} expects {self.value}, got {x!r}")


class _OutOfFuel(Exception):
    pass


class Fuel:
    """Mutable step budget shared by nested evaluations."""

    __slots__ = ("left",)

    def __init__(self, budget: int):
        self.left = budget

    def charge(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise _OutOfFuel


@dataclass(frozen=True)
class Converged:
    value: Value


@dataclass(frozen=True)
class Diverged:
    """Certified non-termination; the reason is informational only."""

    reason: str = field(default="", compare=False)


@dataclass(frozen=True)
class FuelExhausted:
    """The budget ran out; the true behaviour is unknown."""


Outcome = Union[Converged, Diverged, FuelExhausted]
FUEL_EXHAUSTED = FuelExhausted()


def outcome_decided(out: Outcome) -> bool:
    return not isinstance(out, FuelExhausted)


@dataclass(frozen=True)
class PartialMap:
    """A named, deterministic, fuel-monotone partial map over one domain.

    Subclasses implement ``_run``.  ``_run`` never raises on fuel
    exhaustion; it reports ``FUEL_EXHAUSTED`` so that wrappers sharing
    the same budget can pass the outcome through.
    """

    name: str
    domain: Domain

    def _run(self, x: Value, fuel: Fuel) -> Outcome:
        raise InvalidMap(f"invalid map: {self.name!r} has no evaluation rule")


@dataclass(frozen=True)
class BuiltinMap(PartialMap):
    """Closed-form map backed by a pure callable; ``None`` means divergence."""

    fn: Callable[[Value], Optional[Value]]

    def _run(self, x: Value, fuel: Fuel) -> Outcome:
        try:
            fuel.charge()
        except _OutOfFuel:
            return FUEL_EXHAUSTED
        v = self.fn(x)
        if v is None:
            return Diverged(f"{self.name} is undefined here")
        return Converged(v)


@dataclass(frozen=True)
class TableMap(PartialMap):
    """Finite-table map, defined exactly on the listed inputs."""

    table: tuple  # pairs (input, output)

    def _run(self, x: Value, fuel: Fuel) -> Outcome:
        try:
            fuel.charge()
        except _OutOfFuel:
            return FUEL_EXHAUSTED
        for k, v in self.table:
            if k == x:
                return Converged(v)
        return Diverged("outside table")


def apply(m: PartialMap, x: Value, fuel: int) -> Outcome:
    """Run ``m`` on ``x`` under a fuel budget of at least 1."""
    out, _ = apply_with_cost(m, x, fuel)
    return out


def apply_with_cost(m: PartialMap, x: Value, fuel: int) -> tuple[Outcome, int]:
    """Like ``apply``, but also reports how much fuel was consumed."""
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    m.domain.check(x, m.name)
    cell = Fuel(fuel)
    try:
        out = m._run(x, cell)
    except _OutOfFuel:  # defensive: evaluators normally catch this themselves
        return FUEL_EXHAUSTED, fuel
    if isinstance(out, FuelExhausted):
        return out, fuel
    return out, fuel - cell.left


def identity_map(domain: Domain = Domain.NAT, name: str = "identity") -> PartialMap:
    return BuiltinMap(name, domain, lambda x: x)


class Encoding:
    """Total injection between domains; decode is its exact partial inverse."""

    source: Domain
    target: Domain

    def _encode(self, x: Value) -> Value:
        raise NotImplementedError

    def _decode(self, y: Value) -> Optional[Value]:
        raise NotImplementedError

    def encode(self, x: Value) -> Value:
        self.source.check(x, self.describe())
        return self._encode(x)

    def decode(self, y: Value) -> Optional[Value]:
        self.target.check(y, self.describe())
        return self._decode(y)

    def describe(self) -> str:
        raise NotImplementedError

    def inverse(self) -> "Encoding":
        raise ValueError(f"{self.describe()} has no total inverse")

    def __repr__(self) -> str:
        return f"<Encoding {self.describe()}>"


class IdentityEncoding(Encoding):
    def __init__(self, domain: Domain = Domain.NAT):
        self.source = domain
        self.target = domain

    def _encode(self, x):
        return x

    def _decode(self, y):
        return y

    def describe(self) -> str:
        return "identity"

    def inverse(self) -> Encoding:
        return self


class ComposedEncoding(Encoding):
    """Apply ``inner`` first, then ``outer``; decode runs in reverse."""

    def __init__(self, outer: Encoding, inner: Encoding):
        if inner.target is not outer.source:
            raise DomainMismatch(
                f"wrong domain: cannot compose {outer.describe()} after {inner.describe()}"
            )
        self.outer = outer
        self.inner = inner
        self.source = inner.source
        self.target = outer.target

    def _encode(self, x):
        return self.outer.encode(self.inner.encode(x))

    def _decode(self, y):
        mid = self.outer.decode(y)
        if mid is None:
            return None
        return self.inner.decode(mid)

    def describe(self) -> str:
        return f"({self.outer.describe()} . {self.inner.describe()})"

    def inverse(self) -> Encoding:
        return ComposedEncoding(self.inner.inverse(), self.outer.inverse())


class TableEncoding(Encoding):
    """Finite injective table.  Total only on the listed inputs; encoding
    anything else is an error, which keeps the device honest about its
    prefix-bound nature."""

    def __init__(self, pairs, source: Domain = Domain.NAT, target: Domain = Domain.NAT):
        self.pairs = tuple((k, v) for k, v in pairs)
        self.source = source
        self.target = target
        self._fwd = {}
        self._bwd = {}
        for k, v in self.pairs:
            if k in self._fwd:
                raise ValueError(f"table encoding lists {k!r} twice")
            if v in self._bwd:
                raise ValueError(f"table encoding is not injective at {v!r}")
            self._fwd[k] = v
            self._bwd[v] = k

    def _encode(self, x):
        if x not in self._fwd:
            raise ValueError(f"table encoding is not defined on {x!r}")
        return self._fwd[x]

    def _decode(self, y):
        return self._bwd.get(y)

    def describe(self) -> str:
        return f"table[{len(self.pairs)}]"

    def inverse(self) -> Encoding:
        return TableEncoding(
            tuple((v, k) for k, v in self.pairs), self.target, self.source
        )


def compose_encodings(outer: Encoding, inner: Encoding) -> Encoding:
    """Encoding that sends x to outer.encode(inner.encode(x))."""
    return ComposedEncoding(outer, inner)


def encode_outcome(e: Encoding, out: Outcome) -> Outcome:
    """Transport an outcome along an encoding; only converged values change."""
    if isinstance(out, Converged):
        return Converged(e.encode(out.value))
    return out


@dataclass(frozen=True)
class PushforwardMap(PartialMap):
    """The inner map conjugated into the target domain: decode, run, encode.

    Off the encoding's range the minimal extension diverges; with
    ``off_range="fix"`` the point is returned unchanged instead.  Any
    choice off the range preserves the simulation, the two shipped here
    are the useful extremes.
    """

    encoding: Encoding
    inner: PartialMap
    off_range: str = "diverge"

    def _run(self, y: Value, fuel: Fuel) -> Outcome:
        x = self.encoding.decode(y)
        if x is None:
            if self.off_range == "fix":
                return Converged(y)
            return Diverged("outside encoding range")
        out = self.inner._run(x, fuel)
        if isinstance(out, Converged):
            return Converged(self.encoding.encode(out.value))
        return out


@dataclass(frozen=True)
class PullbackMap(PartialMap):
    """The inner map viewed through the encoding: encode, run, decode.

    Diverges when the inner map converges to a value off the range."""

    encoding: Encoding
    inner: PartialMap

    def _run(self, x: Value, fuel: Fuel) -> Outcome:
        out = self.inner._run(self.encoding.encode(x), fuel)
        if isinstance(out, Converged):
            back = self.encoding.decode(out.value)
            if back is None:
                return Diverged("left the encoding range")
            return Converged(back)
        return out


def pushforward(
    e: Encoding, m: PartialMap, off_range: str = "diverge", name: Optional[str] = None
) -> PartialMap:
    if m.domain is not e.source:
        raise DomainMismatch(
            f"wrong domain: cannot push {m.name} ({m.domain.value}) along {e.describe()}"
        )
    if off_range not in ("diverge", "fix"):
        raise ValueError(f"unknown off-range policy {off_range!r}")
    return PushforwardMap(
        name or f"push({e.describe()},{m.name})", e.target, e, m, off_range
    )


def pullback(e: Encoding, m: PartialMap, name: Optional[str] = None) -> PartialMap:
    if m.domain is not e.target:
        raise DomainMismatch(
            f"wrong domain: cannot pull {m.name} ({m.domain.value}) along {e.describe()}"
        )
    return PullbackMap(name or f"pull({e.describe()},{m.name})", e.source, e, m)


@dataclass(frozen=True)
class Model:
    """A named finite sample of maps, optionally extended by an enumerator.

    The enumerator widens witness searches beyond the listed sample; it
    must be deterministic in its index.  Listed names must be unique.
    """

    name: str
    domain: Domain
    members: tuple
    enumerator: Optional[Callable[[int], PartialMap]] = None

    def __post_init__(self):
        seen = set()
        for m in self.members:
            if m.name in seen:
                raise ValueError(f"duplicate member name {m.name!r} in model {self.name!r}")
            seen.add(m.name)
            if m.domain is not self.domain:
                raise DomainMismatch(
                    f"wrong domain: member {m.name} of {self.name} is over {m.domain.value}"
                )

    def member(self, name: str) -> PartialMap:
        for m in self.members:
            if m.name == name:
                return m
        raise KeyError(f"model {self.name!r} has no member {name!r}")

    def candidates(self, extra: int = 0) -> list:
        """Listed members followed by up to ``extra`` enumerated ones.

        Enumerated maps whose names repeat earlier entries are dropped,
        so the pool order is stable and duplicate-free."""
        pool = list(self.members)
        if self.enumerator is not None and extra > 0:
            seen = {m.name for m in pool}
            for ix in range(extra):
                m = self.enumerator(ix)
                if m.name not in seen:
                    seen.add(m.name)
                    pool.append(m)
        return pool


def pushforward_model(
    e: Encoding,
    model: Model,
    off_range: str = "diverge",
    name: Optional[str] = None,
) -> Model:
    """Image of a whole model under an encoding, member by member."""
    members = tuple(pushforward(e, m, off_range) for m in model.members)
    enum = None
    if model.enumerator is not None:
        base = model.enumerator

        def enum(ix: int, _base=base) -> PartialMap:
            return pushforward(e, _base(ix), off_range)

    return Model(name or f"push({e.describe()},{model.name})", e.target, members, enum)
