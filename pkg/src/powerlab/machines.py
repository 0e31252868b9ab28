"""Machine models: single-tape Turing machines, counter machines, the
bit-string bijection between them and the naturals, and a compiler from
recursion terms to counter machines.

Turing machine text format, line oriented, ``#`` comments::

    start <state>
    halt <state>
    <state> <symbol> <new-state> <write-symbol> <move>

Symbols are ``0``, ``1`` and ``_`` (blank); moves are ``L``, ``R``, ``S``.
Every non-halt state reachable in the table must handle all three
symbols, and the halt state has no outgoing rules.  The input is written
at the head with blanks everywhere else; on halting, the output is the
maximal block of non-blank cells containing the head (empty if the head
rests on a blank).

Counter machine text format, line oriented, ``#`` comments::

    registers <n>
    input <reg>
    output <reg>
    [label:] inc <reg>
    [label:] decjz <reg> <target>
    [label:] jump <target>
    [label:] halt

Targets are labels or absolute instruction indices.  ``decjz`` jumps
when the register is zero and otherwise decrements and falls through.
Running off the end halts.  Registers hold unbounded naturals, start at
zero except the input register, and each executed instruction costs one
unit of fuel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from powerlab.core import (
    FUEL_EXHAUSTED,
    Converged,
    Domain,
    Encoding,
    Fuel,
    Model,
    Outcome,
    PartialMap,
    _OutOfFuel,
    apply,
)
from powerlab.recdsl import (
    Ack,
    Comp,
    ConstK,
    Id,
    Mu,
    PrimRec,
    Proj,
    S,
    Term,
    Z,
    term_map,
    to_text,
)
from powerlab.terms import ack_row_term

BLANK = "_"
_SYMBOLS = ("0", "1", BLANK)
_MOVES = {"L": -1, "R": 1, "S": 0}


class ProgramError(ValueError):
    """A machine program is malformed."""


class CompileError(ValueError):
    """A recursion term cannot be translated to a counter machine."""


# --------------------------------------------------------------------------
# Turing machines


@dataclass(frozen=True, eq=False)
class TMProgram:
    name: str
    start: str
    halt: str
    # (state, symbol) -> (new state, written symbol, move)
    transitions: dict

    def __post_init__(self):
        states = {self.start}
        for (st, sym), (nst, wsym, mv) in self.transitions.items():
            states.add(st)
            states.add(nst)
            if sym not in _SYMBOLS or wsym not in _SYMBOLS:
                raise ProgramError(f"{self.name}: bad symbol in rule for ({st}, {sym})")
            if mv not in _MOVES:
                raise ProgramError(f"{self.name}: bad move {mv!r} in rule for ({st}, {sym})")
            if st == self.halt:
                raise ProgramError(f"{self.name}: halt state {st!r} has an outgoing rule")
        for st in states:
            if st == self.halt:
                continue
            for sym in _SYMBOLS:
                if (st, sym) not in self.transitions:
                    raise ProgramError(
                        f"{self.name}: state {st!r} has no rule for symbol {sym!r}"
                    )


def parse_tm(text: str, name: str = "tm") -> TMProgram:
    start = halt = None
    transitions = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "start" and len(parts) == 2:
            start = parts[1]
        elif parts[0] == "halt" and len(parts) == 2:
            halt = parts[1]
        elif len(parts) == 5:
            st, sym, nst, wsym, mv = parts
            if (st, sym) in transitions:
                raise ProgramError(f"{name}: line {lineno}: duplicate rule for ({st}, {sym})")
            transitions[(st, sym)] = (nst, wsym, mv)
        else:
            raise ProgramError(f"{name}: line {lineno}: cannot parse {raw.strip()!r}")
    if start is None or halt is None:
        raise ProgramError(f"{name}: missing start or halt declaration")
    return TMProgram(name, start, halt, transitions)


def render_tm(p: TMProgram) -> str:
    lines = [f"start {p.start}", f"halt {p.halt}"]
    for (st, sym), (nst, wsym, mv) in sorted(p.transitions.items()):
        lines.append(f"{st} {sym} {nst} {wsym} {mv}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TMMap(PartialMap):
    program: TMProgram

    def _run(self, x: str, fuel: Fuel) -> Outcome:
        tape = {i: c for i, c in enumerate(x)}
        head = 0
        state = self.program.start
        trans = self.program.transitions
        halt = self.program.halt
        while state != halt:
            try:
                fuel.charge()
            except _OutOfFuel:
                return FUEL_EXHAUSTED
            sym = tape.get(head, BLANK)
            state, wsym, mv = trans[(state, sym)]
            if wsym == BLANK:
                tape.pop(head, None)
            else:
                tape[head] = wsym
            head += _MOVES[mv]
        if head not in tape:
            return Converged("")
        lo = head
        while lo - 1 in tape:
            lo -= 1
        hi = head
        while hi + 1 in tape:
            hi += 1
        return Converged("".join(tape[i] for i in range(lo, hi + 1)))


def tm_map(p: TMProgram, name: Optional[str] = None) -> PartialMap:
    return TMMap(name or p.name, Domain.BITS, p)


def run_tm(p: TMProgram, bits: str, fuel: int) -> Outcome:
    return apply(tm_map(p), bits, fuel)


def tm_identity() -> TMProgram:
    """Halts immediately, leaving the tape as found."""
    return TMProgram("tm-ident", "done", "done", {})


def tm_erase_all() -> TMProgram:
    """Blanks the input block, then halts on a blank cell."""
    rules = {
        ("wipe", "0"): ("wipe", BLANK, "R"),
        ("wipe", "1"): ("wipe", BLANK, "R"),
        ("wipe", BLANK): ("done", BLANK, "S"),
    }
    return TMProgram("tm-erase", "wipe", "done", rules)


def tm_binary_successor() -> TMProgram:
    """Successor on the bijective bit coding of the naturals.

    Walks right to the end of the block, then carries left: a trailing
    run of ones turns to zeros and the first zero becomes one.  Carrying
    off the left end writes a fresh zero, which is exactly the length
    bump the bijective coding needs (e.g. "11" -> "000").
    """
    rules = {
        ("scan", "0"): ("scan", "0", "R"),
        ("scan", "1"): ("scan", "1", "R"),
        ("scan", BLANK): ("carry", BLANK, "L"),
        ("carry", "1"): ("carry", "0", "L"),
        ("carry", "0"): ("done", "1", "S"),
        ("carry", BLANK): ("done", "0", "S"),
    }
    return TMProgram("tm-succ", "scan", "done", rules)


TM_LIBRARY = {
    "identity": tm_identity,
    "erase": tm_erase_all,
    "binary-successor": tm_binary_successor,
}


def tm_witness_models() -> tuple[Model, Model]:
    """A machine model and the term model it simulates through the bit
    coding: successor, constant zero and identity on each side."""
    machine_side = Model(
        "tm-basics",
        Domain.BITS,
        (
            tm_map(tm_binary_successor()),
            tm_map(tm_erase_all()),
            tm_map(tm_identity()),
        ),
    )
    term_side = Model(
        "rec-basics",
        Domain.NAT,
        (term_map(S(), "succ"), term_map(Z(), "zero"), term_map(Id(), "ident")),
    )
    return machine_side, term_side


# --------------------------------------------------------------------------
# Bit-string coding of the naturals


def nat_to_bits(n: int) -> str:
    """Bijective coding: 0 -> "", then drop the leading 1 of bin(n + 1)."""
    Domain.NAT.check(n, "nat_to_bits")
    return bin(n + 1)[3:]


def bits_to_nat(b: str) -> int:
    Domain.BITS.check(b, "bits_to_nat")
    return int("1" + b, 2) - 1


class BitsEncoding(Encoding):
    """The bijection between naturals and bit strings, either way round."""

    def __init__(self, inverted: bool = False):
        self.inverted = inverted
        self.source = Domain.BITS if inverted else Domain.NAT
        self.target = Domain.NAT if inverted else Domain.BITS

    def _encode(self, x):
        return bits_to_nat(x) if self.inverted else nat_to_bits(x)

    def _decode(self, y):
        return nat_to_bits(y) if self.inverted else bits_to_nat(y)

    def describe(self) -> str:
        return "bits-inv" if self.inverted else "bits"

    def inverse(self) -> Encoding:
        return BitsEncoding(not self.inverted)


# --------------------------------------------------------------------------
# Counter machines


@dataclass(frozen=True, eq=False)
class CMProgram:
    name: str
    n_registers: int
    input_reg: int
    output_reg: int
    instructions: tuple  # ("inc", r) | ("decjz", r, t) | ("jump", t) | ("halt",)

    def __post_init__(self):
        size = len(self.instructions)
        for r in (self.input_reg, self.output_reg):
            if not 0 <= r < self.n_registers:
                raise ProgramError(f"{self.name}: register {r} out of range")
        for ix, ins in enumerate(self.instructions):
            op = ins[0]
            if op == "inc":
                ok = len(ins) == 2 and 0 <= ins[1] < self.n_registers
            elif op == "decjz":
                ok = (
                    len(ins) == 3
                    and 0 <= ins[1] < self.n_registers
                    and 0 <= ins[2] <= size
                )
            elif op == "jump":
                ok = len(ins) == 2 and 0 <= ins[1] <= size
            elif op == "halt":
                ok = len(ins) == 1
            else:
                ok = False
            if not ok:
                raise ProgramError(f"{self.name}: bad instruction {ins!r} at {ix}")


def parse_cm(text: str, name: str = "cm") -> CMProgram:
    n_registers = input_reg = output_reg = None
    raw_instrs: list = []
    labels: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        while ":" in line.split()[0]:
            lbl, line = line.split(":", 1)
            lbl = lbl.strip()
            line = line.strip()
            if lbl in labels:
                raise ProgramError(f"{name}: line {lineno}: duplicate label {lbl!r}")
            labels[lbl] = len(raw_instrs)
            if not line:
                break
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "registers" and len(parts) == 2:
            n_registers = int(parts[1])
        elif head == "input" and len(parts) == 2:
            input_reg = int(parts[1])
        elif head == "output" and len(parts) == 2:
            output_reg = int(parts[1])
        elif head == "inc" and len(parts) == 2:
            raw_instrs.append(("inc", int(parts[1])))
        elif head == "decjz" and len(parts) == 3:
            raw_instrs.append(("decjz", int(parts[1]), parts[2]))
        elif head == "jump" and len(parts) == 2:
            raw_instrs.append(("jump", parts[1]))
        elif head == "halt" and len(parts) == 1:
            raw_instrs.append(("halt",))
        else:
            raise ProgramError(f"{name}: line {lineno}: cannot parse {raw.strip()!r}")
    if n_registers is None or input_reg is None or output_reg is None:
        raise ProgramError(f"{name}: missing registers, input or output declaration")

    def resolve(t):
        if isinstance(t, str) and not t.isdigit():
            if t not in labels:
                raise ProgramError(f"{name}: unknown label {t!r}")
            return labels[t]
        return int(t)

    instrs = []
    for ins in raw_instrs:
        if ins[0] == "decjz":
            instrs.append(("decjz", ins[1], resolve(ins[2])))
        elif ins[0] == "jump":
            instrs.append(("jump", resolve(ins[1])))
        else:
            instrs.append(ins)
    return CMProgram(name, n_registers, input_reg, output_reg, tuple(instrs))


def render_cm(p: CMProgram) -> str:
    targets = sorted(
        {ins[-1] for ins in p.instructions if ins[0] in ("decjz", "jump")}
    )
    label = {t: f"L{i}" for i, t in enumerate(targets)}
    lines = [
        f"# {p.name}",
        f"registers {p.n_registers}",
        f"input {p.input_reg}",
        f"output {p.output_reg}",
    ]
    for ix, ins in enumerate(p.instructions):
        prefix = f"{label[ix]}:" if ix in label else ""
        if ins[0] == "inc":
            body = f"inc {ins[1]}"
        elif ins[0] == "decjz":
            body = f"decjz {ins[1]} {label[ins[2]]}"
        elif ins[0] == "jump":
            body = f"jump {label[ins[1]]}"
        else:
            body = "halt"
        lines.append(f"{prefix:8s}{body}")
    if len(p.instructions) in label:
        lines.append(f"{label[len(p.instructions)] + ':':8s}halt")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CMMap(PartialMap):
    program: CMProgram

    def _run(self, x: int, fuel: Fuel) -> Outcome:
        p = self.program
        regs = [0] * p.n_registers
        regs[p.input_reg] = x
        instrs = p.instructions
        size = len(instrs)
        pc = 0
        while pc < size:
            try:
                fuel.charge()
            except _OutOfFuel:
                return FUEL_EXHAUSTED
            ins = instrs[pc]
            op = ins[0]
            if op == "inc":
                regs[ins[1]] += 1
                pc += 1
            elif op == "decjz":
                r = ins[1]
                if regs[r] == 0:
                    pc = ins[2]
                else:
                    regs[r] -= 1
                    pc += 1
            elif op == "jump":
                pc = ins[1]
            else:
                break
        return Converged(regs[p.output_reg])


def cm_map(p: CMProgram, name: Optional[str] = None) -> PartialMap:
    return CMMap(name or p.name, Domain.NAT, p)


def run_cm(p: CMProgram, n: int, fuel: int) -> Outcome:
    return apply(cm_map(p), n, fuel)


# --------------------------------------------------------------------------
# Compiling recursion terms to counter machines


class _Gen:
    def __init__(self):
        self.ops: list = []
        self.n_regs = 0
        self.n_labels = 0

    def reg(self) -> int:
        self.n_regs += 1
        return self.n_regs - 1

    def label(self) -> str:
        self.n_labels += 1
        return f"L{self.n_labels - 1}"

    def emit(self, *ins):
        self.ops.append(ins)

    def place(self, lbl: str):
        self.ops.append(("label", lbl))

    def clear(self, r: int):
        again = self.label()
        done = self.label()
        self.place(again)
        self.emit("decjz", r, done)
        self.emit("jump", again)
        self.place(done)

    def move(self, src: int, dst: int):
        """dst += src, zeroing src."""
        again = self.label()
        done = self.label()
        self.place(again)
        self.emit("decjz", src, done)
        self.emit("inc", dst)
        self.emit("jump", again)
        self.place(done)

    def copy(self, src: int, dst: int, scratch: int):
        """dst = src, preserving src, trashing scratch."""
        self.clear(dst)
        self.clear(scratch)
        again = self.label()
        done = self.label()
        self.place(again)
        self.emit("decjz", src, done)
        self.emit("inc", dst)
        self.emit("inc", scratch)
        self.emit("jump", again)
        self.place(done)
        self.move(scratch, src)

    def assemble(self, name: str, input_reg: int, output_reg: int) -> CMProgram:
        where = {}
        pc = 0
        for ins in self.ops:
            if ins[0] == "label":
                where[ins[1]] = pc
            else:
                pc += 1
        out = []
        for ins in self.ops:
            if ins[0] == "label":
                continue
            if ins[0] == "decjz":
                out.append(("decjz", ins[1], where[ins[2]]))
            elif ins[0] == "jump":
                out.append(("jump", where[ins[1]]))
            else:
                out.append(ins)
        return CMProgram(name, max(self.n_regs, 1), input_reg, output_reg, tuple(out))


def _uses(t: Term, pos: int):
    """Upper bound on how often t reads its argument at 1-based ``pos``
    over one evaluation; inf when a loop may read it repeatedly."""
    tt = type(t)
    if tt in (Z, ConstK):
        return 0
    if tt in (S, Id):
        return 1 if pos == 1 else 0
    if tt is Proj:
        return 1 if pos == t.i else 0
    if tt is Comp:
        return sum(_uses(g, pos) for g in t.gs)
    if tt is PrimRec:
        if pos == t.base.arity() + 1:
            return 1  # the recursion depth is read once, to set the counter
        if _uses(t.step, pos) == 0:
            return _uses(t.base, pos)
        return float("inf")
    if tt is Mu:
        return float("inf") if _uses(t.body, pos) else 0
    return float("inf")


def _fold_ack(t: Term) -> Term:
    """Rewrite ACK applied to a literal constant row into a pure
    primitive-recursion term; reject any other use of ACK."""
    tt = type(t)
    if tt is Comp:
        if type(t.f) is Ack:
            first = t.gs[0]
            if type(first) is ConstK:
                return Comp(ack_row_term(first.k), (_fold_ack(t.gs[1]),))
            if type(first) is Z:
                return Comp(ack_row_term(0), (_fold_ack(t.gs[1]),))
            raise CompileError(
                "unsupported construct: ACK needs a literal constant first "
                f"argument to compile, got {to_text(first)}"
            )
        return Comp(_fold_ack(t.f), tuple(_fold_ack(g) for g in t.gs))
    if tt is PrimRec:
        return PrimRec(_fold_ack(t.base), _fold_ack(t.step))
    if tt is Mu:
        return Mu(_fold_ack(t.body))
    if tt is Ack:
        raise CompileError("unsupported construct: bare ACK cannot compile")
    return t


def _load(gen: _Gen, src: int, dst: int, may_drain: bool):
    """dst = src.  Draining moves (cheap, src destroyed); otherwise copy
    through a scratch register (src preserved)."""
    if may_drain:
        gen.clear(dst)
        gen.move(src, dst)
    else:
        gen.copy(src, dst, gen.reg())


def _emit(t: Term, args: list, out: int, gen: _Gen, dead: set):
    """Code computing t(args) into register ``out``.

    Argument registers are preserved except those in ``dead``, which the
    code may drain when it provably reads them exactly once.  Every path
    clears its destinations before use, so the same block is safe to
    re-enter inside loops.  ``out`` is always distinct from ``args``.
    """
    tt = type(t)
    if tt is Z:
        gen.clear(out)
    elif tt is S:
        _load(gen, args[0], out, args[0] in dead)
        gen.emit("inc", out)
    elif tt is Id:
        _load(gen, args[0], out, args[0] in dead)
    elif tt is ConstK:
        gen.clear(out)
        for _ in range(t.k):
            gen.emit("inc", out)
    elif tt is Proj:
        _load(gen, args[t.i - 1], out, args[t.i - 1] in dead)
    elif tt is Comp:
        arity = t.arity()
        vals = []
        for gi, g in enumerate(t.gs):
            grant = set()
            for p in range(1, arity + 1):
                r = args[p - 1]
                if (
                    r in dead
                    and _uses(g, p) == 1
                    and all(_uses(h, p) == 0 for h in t.gs[gi + 1 :])
                ):
                    grant.add(r)
            v = gen.reg()
            _emit(g, args, v, gen, grant)
            vals.append(v)
        drainable = {vals[i] for i in range(len(vals)) if _uses(t.f, i + 1) == 1}
        _emit(t.f, vals, out, gen, drainable)
    elif tt is PrimRec:
        xs = args[:-1]
        acc = gen.reg()
        count = gen.reg()
        ctr = gen.reg()
        tmp = gen.reg()
        base_grant = {
            xs[p - 1]
            for p in range(1, len(xs) + 1)
            if xs[p - 1] in dead and _uses(t.step, p) == 0 and _uses(t.base, p) == 1
        }
        _emit(t.base, xs, acc, gen, base_grant)
        _load(gen, args[-1], count, args[-1] in dead)
        gen.clear(ctr)
        loop = gen.label()
        done = gen.label()
        gen.place(loop)
        gen.emit("decjz", count, done)
        # the accumulator is rebuilt from tmp below, so the step may
        # drain it when it reads it just once
        step_grant = {acc} if _uses(t.step, len(xs) + 1) == 1 else set()
        _emit(t.step, xs + [acc, ctr], tmp, gen, step_grant)
        gen.clear(acc)
        gen.move(tmp, acc)
        gen.emit("inc", ctr)
        gen.emit("jump", loop)
        gen.place(done)
        gen.clear(out)
        gen.move(acc, out)
    elif tt is Mu:
        idx = gen.reg()
        val = gen.reg()
        gen.clear(idx)
        loop = gen.label()
        found = gen.label()
        gen.place(loop)
        _emit(t.body, args + [idx], val, gen, set())
        gen.emit("decjz", val, found)
        gen.emit("inc", idx)
        gen.emit("jump", loop)
        gen.place(found)
        gen.clear(out)
        gen.move(idx, out)
    else:
        raise CompileError(f"unsupported construct: {to_text(t)}")


def compile_rec_to_cm(t: Term, name: Optional[str] = None) -> CMProgram:
    """Translate a unary recursion term to a counter machine computing
    the same partial map.  ACK compiles only when applied to a literal
    constant row; everything else is compositional."""
    if t.arity() != 1:
        raise CompileError(f"term must be unary to compile, {to_text(t)} takes {t.arity()}")
    folded = _fold_ack(t)
    gen = _Gen()
    arg = gen.reg()
    out = gen.reg()
    _emit(folded, [arg], out, gen, {arg})
    gen.emit("halt")
    return gen.assemble(name or f"cm[{to_text(t)}]", arg, out)
