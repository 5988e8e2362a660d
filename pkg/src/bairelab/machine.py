"""Oracle register machines and verifiable halting traces.

A program is a finite list of instructions over registers r0, r1, ...
The machine starts with the input in r0 and every other register zero,
and may consult an oracle (a total function on naturals) via QRY.  A
halting run is summarised by a single natural number: the packed trace.
Packing is injective and locally checkable, so "y codes a halting run"
is a decidable predicate (t_check) and the least such y is unique.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence, Union

from .errors import BairelabError


class MalformedProgramError(BairelabError):
    """Raised for out-of-range jump targets or control falling off the end."""


class RegistryError(BairelabError):
    pass


# --- instructions ---------------------------------------------------------


@dataclass(frozen=True)
class Inc:
    reg: int


@dataclass(frozen=True)
class Dec:
    # decrement floors at zero
    reg: int


@dataclass(frozen=True)
class Jz:
    reg: int
    target: int


@dataclass(frozen=True)
class Query:
    # dst := oracle(regs[src])
    src: int
    dst: int


@dataclass(frozen=True)
class Halt:
    reg: int


Instr = Union[Inc, Dec, Jz, Query, Halt]


def _regs_of(ins: Instr) -> tuple[int, ...]:
    match ins:
        case Inc(r) | Dec(r) | Halt(r):
            return (r,)
        case Jz(r, _):
            return (r,)
        case Query(s, d):
            return (s, d)
    raise TypeError(f"not an instruction: {ins!r}")


@dataclass(frozen=True)
class OracleProgram:
    index: int
    instructions: tuple[Instr, ...]

    def __post_init__(self) -> None:
        if self.index < 0:
            raise MalformedProgramError("program index must be a natural")
        if not self.instructions:
            raise MalformedProgramError("empty instruction list")
        for ins in self.instructions:
            if any(r < 0 for r in _regs_of(ins)):
                raise MalformedProgramError(f"negative register in {ins!r}")
            if isinstance(ins, Jz) and not 0 <= ins.target < len(self.instructions):
                raise MalformedProgramError(f"jump target out of range: {ins!r}")

    @property
    def num_registers(self) -> int:
        return 1 + max(r for ins in self.instructions for r in _regs_of(ins))


def oracle_fn(alpha: object) -> Callable[[int], int]:
    """Accept either a BaireElement (has .at) or a plain callable."""
    return alpha.at if hasattr(alpha, "at") else alpha  # type: ignore[return-value]


# --- trace packing --------------------------------------------------------
#
# A configuration is the machine state just before executing one
# instruction: (pc, r0, ..., r_{R-1}, pending), where pending is the
# oracle's answer when that instruction is a QRY and 0 otherwise.  A
# halting trace is the configuration sequence of the whole run, HALT
# step included.  The packed code is
#
#   y = int("1" + gamma(R+1) + gamma(T+1) + gamma(f+1 for each field), 2)
#
# with gamma the Elias gamma code and fields in row-major order.  The
# leading 1 bit keeps the first gamma's zeros; the grammar is prefix
# free, so distinct traces get distinct codes and every y decodes to at
# most one trace.  Hence for a fixed program, input and oracle there is
# at most one y accepted by t_check, and it is trivially the least.


def _gamma(n: int) -> str:
    # Elias gamma of n >= 1
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


Config = tuple[int, ...]


def pack_trace(num_regs: int, configs: Sequence[Config]) -> int:
    fields = [num_regs, len(configs)]
    for c in configs:
        if len(c) != num_regs + 2:
            raise ValueError("config width does not match register count")
        fields.extend(c)
    return int("1" + "".join(_gamma(f + 1) for f in fields), 2)


def unpack_trace(y: int) -> Optional[tuple[int, tuple[Config, ...]]]:
    """Inverse of pack_trace; None for anything not produced by it."""
    if y < 2:
        return None
    bits = bin(y)[2:]
    pos = 1  # skip the marker bit
    fields: list[int] = []

    def read() -> Optional[int]:
        nonlocal pos
        z = 0
        while pos + z < len(bits) and bits[pos + z] == "0":
            z += 1
        end = pos + 2 * z + 1
        if end > len(bits):
            return None
        val = int(bits[pos + z : end], 2)
        pos = end
        return val - 1

    num_regs = read()
    length = read()
    if num_regs is None or length is None or num_regs < 1 or length < 1:
        return None
    width = num_regs + 2
    for _ in range(length * width):
        f = read()
        if f is None:
            return None
        fields.append(f)
    if pos != len(bits):
        return None
    configs = tuple(tuple(fields[i * width : (i + 1) * width]) for i in range(length))
    return num_regs, configs


# --- running --------------------------------------------------------------


@dataclass(frozen=True)
class RunResult:
    trace: int
    output: int
    steps: int


def _step(ins: Instr, pc: int, regs: list[int], pending: int) -> int:
    """Apply ins to regs in place, return the next pc."""
    match ins:
        case Inc(r):
            regs[r] += 1
        case Dec(r):
            regs[r] = max(0, regs[r] - 1)
        case Jz(r, target):
            return target if regs[r] == 0 else pc + 1
        case Query(_, d):
            regs[d] = pending
    return pc + 1


def run(
    program: OracleProgram, x: int, alpha: object, fuel: int
) -> Optional[RunResult]:
    """Simulate at most fuel steps; a halting run yields its packed trace.

    Returns None when fuel runs out first.  Control reaching the end of
    the instruction list without HALT is a program bug, not divergence.
    """
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    q = oracle_fn(alpha)
    width = program.num_registers
    regs = [0] * width
    regs[0] = x
    pc = 0
    configs: list[Config] = []
    for _ in range(fuel):
        ins = program.instructions[pc]
        pending = q(regs[ins.src]) if isinstance(ins, Query) else 0
        configs.append((pc, *regs, pending))
        if isinstance(ins, Halt):
            return RunResult(pack_trace(width, configs), regs[ins.reg], len(configs))
        pc = _step(ins, pc, regs, pending)
        if pc == len(program.instructions):
            raise MalformedProgramError(
                f"program {program.index} ran off the end at step {len(configs)}"
            )
    return None


def t_check(program: OracleProgram, x: int, y: int, alpha: object) -> bool:
    """Does y code a complete halting run of program on x with oracle alpha?

    Purely local: replay every transition recorded in y and compare.
    """
    unpacked = unpack_trace(y)
    if unpacked is None:
        return False
    num_regs, configs = unpacked
    if num_regs != program.num_registers:
        return False
    q = oracle_fn(alpha)
    width = num_regs + 2
    init = (0,) + (x,) + (0,) * (num_regs - 1) + (0,)
    code_len = len(program.instructions)
    for t, config in enumerate(configs):
        pc, pending = config[0], config[width - 1]
        regs = list(config[1 : width - 1])
        if t == 0 and config[:-1] != init[:-1]:
            return False
        if pc >= code_len:
            return False
        ins = program.instructions[pc]
        if isinstance(ins, Query):
            if pending != q(regs[ins.src]):
                return False
        elif pending != 0:
            return False
        last = t == len(configs) - 1
        if isinstance(ins, Halt) != last:
            return False
        if not last:
            next_pc = _step(ins, pc, regs, pending)
            if next_pc == code_len:
                return False
            if configs[t + 1] != (next_pc, *regs, *_peek_pending(program, next_pc, regs, q)):
                return False
    return True


def _peek_pending(
    program: OracleProgram, pc: int, regs: list[int], q: Callable[[int], int]
) -> tuple[int]:
    ins = program.instructions[pc]
    return (q(regs[ins.src]) if isinstance(ins, Query) else 0,)


# --- certified halting information ----------------------------------------


@dataclass(frozen=True)
class Halts:
    trace: int
    output: int


@dataclass(frozen=True)
class LoopCert:
    """The machine state (pc, registers) recurred: steps first and again."""

    first: int
    again: int
    state: tuple[int, ...]


@dataclass(frozen=True)
class Diverges:
    cert: LoopCert


HaltingInfo = dict[tuple[int, int], Union[Halts, Diverges]]


def certify(
    programs: Mapping[int, OracleProgram],
    alpha: object,
    fuel: int,
    inputs: Optional[Mapping[int, int]] = None,
) -> HaltingInfo:
    """Settle halting on the diagonal (input = index unless overridden).

    Halting entries carry the packed trace; divergence is certified by a
    repeated (pc, registers) state, which suffices because the oracle is
    a fixed total function.  Programs that neither halt nor loop within
    fuel are simply absent.
    """
    info: HaltingInfo = {}
    for e, program in programs.items():
        x = inputs[e] if inputs is not None else e
        q = oracle_fn(alpha)
        regs = [0] * program.num_registers
        regs[0] = x
        pc = 0
        configs: list[Config] = []
        seen: dict[tuple[int, ...], int] = {}
        for step in range(fuel):
            state = (pc, *regs)
            if state in seen:
                info[(e, x)] = Diverges(LoopCert(seen[state], step, state))
                break
            seen[state] = step
            ins = program.instructions[pc]
            pending = q(regs[ins.src]) if isinstance(ins, Query) else 0
            configs.append((pc, *regs, pending))
            if isinstance(ins, Halt):
                y = pack_trace(program.num_registers, configs)
                info[(e, x)] = Halts(y, regs[ins.reg])
                break
            pc = _step(ins, pc, regs, pending)
            if pc == len(program.instructions):
                raise MalformedProgramError(
                    f"program {e} ran off the end at step {len(configs)}"
                )
    return info


# --- assembly and the program registry -------------------------------------

_MNEMONICS = {"INC": Inc, "DEC": Dec, "JZ": Jz, "QRY": Query, "HALT": Halt}


def assemble(text: str) -> tuple[Instr, ...]:
    """Assemble newline- or comma-separated mnemonics into instructions.

    Lines may carry `name:` labels; JZ accepts a label in place of a
    numeric target.  `#` starts a comment.
    """
    raw: list[tuple[str, list[str]]] = []
    labels: dict[str, int] = {}
    pieces = [
        piece
        for chunk in text.splitlines()
        for piece in chunk.split("#", 1)[0].split(",")
    ]
    for piece in pieces:
        line = piece.strip()
        if not line:
            continue
        while ":" in line.split()[0]:
            label, line = line.split(":", 1)
            label = label.strip()
            if label in labels:
                raise MalformedProgramError(f"duplicate label {label!r}")
            labels[label] = len(raw)
            line = line.strip()
            if not line:
                break
        if not line:
            continue
        op, *args = line.split()
        raw.append((op.upper(), args))

    out: list[Instr] = []
    for op, args in raw:
        cls = _MNEMONICS.get(op)
        if cls is None:
            raise MalformedProgramError(f"unknown mnemonic {op!r}")
        want = 2 if cls in (Jz, Query) else 1
        if len(args) != want:
            raise MalformedProgramError(f"{op} expects {want} argument(s), got {args}")
        if cls is Jz and not args[1].lstrip("-").isdigit():
            if args[1] not in labels:
                raise MalformedProgramError(f"undefined label {args[1]!r}")
            args = [args[0], str(labels[args[1]])]
        out.append(cls(*(int(a) for a in args)))
    return tuple(out)


def format_program(program: OracleProgram) -> str:
    parts = []
    for ins in program.instructions:
        match ins:
            case Inc(r):
                parts.append(f"INC {r}")
            case Dec(r):
                parts.append(f"DEC {r}")
            case Jz(r, t):
                parts.append(f"JZ {r} {t}")
            case Query(s, d):
                parts.append(f"QRY {s} {d}")
            case Halt(r):
                parts.append(f"HALT {r}")
    return ", ".join(parts)


@dataclass(frozen=True)
class RegistryEntry:
    program: OracleProgram
    claim: Union[Halts, Diverges]  # on diagonal input, zero oracle


_ZERO_ORACLE = lambda n: 0  # noqa: E731


def parse_registry(text: str) -> tuple[RegistryEntry, ...]:
    entries: list[RegistryEntry] = []
    for lineno, chunk in enumerate(text.splitlines(), start=1):
        line = chunk.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, status = line.rsplit(";", 1)
            index_str, mnemonics = head.strip().split(None, 1)
            index = int(index_str)
            program = OracleProgram(index, assemble(mnemonics))
            status = status.strip()
            claim: Union[Halts, Diverges]
            if status.startswith("halts="):
                y = int(status[len("halts=") :])
                unpacked = unpack_trace(y)
                if unpacked is None:
                    raise RegistryError("unreadable trace code")
                out_reg = _final_halt_reg(program, unpacked[1])
                claim = Halts(y, unpacked[1][-1][1 + out_reg])
            elif status.startswith("diverges@"):
                state = tuple(int(p) for p in status[len("diverges@") :].split(":"))
                claim = Diverges(LoopCert(-1, -1, state))
            else:
                raise RegistryError(f"bad status {status!r}")
        except (ValueError, BairelabError) as exc:
            raise RegistryError(f"registry line {lineno}: {exc}") from exc
        if index != len(entries):
            raise RegistryError(
                f"registry line {lineno}: index {index} out of order"
            )
        entries.append(RegistryEntry(program, claim))
    return tuple(entries)


def _final_halt_reg(program: OracleProgram, configs: tuple[Config, ...]) -> int:
    ins = program.instructions[configs[-1][0]]
    if not isinstance(ins, Halt):
        raise RegistryError("claimed trace does not end in HALT")
    return ins.reg


def load_registry(path: Optional[str] = None) -> tuple[RegistryEntry, ...]:
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            return parse_registry(fh.read())
    data = importlib.resources.files("bairelab").joinpath("data/registry.txt")
    return parse_registry(data.read_text(encoding="utf-8"))


def verify_registry(
    entries: Sequence[RegistryEntry], fuel: int = 10_000
) -> None:
    """Recompute every claim under the zero oracle; raise on any mismatch."""
    programs = {e.program.index: e.program for e in entries}
    recomputed = certify(programs, _ZERO_ORACLE, fuel)
    for entry in entries:
        e = entry.program.index
        got = recomputed.get((e, e))
        match entry.claim, got:
            case Halts(y, out), Halts(y2, out2) if y == y2 and out == out2:
                if not t_check(entry.program, e, y, _ZERO_ORACLE):
                    raise RegistryError(f"program {e}: claimed trace fails t_check")
            case Diverges(LoopCert(_, _, state)), Diverges(LoopCert(_, _, state2)) if (
                state == state2
            ):
                pass
            case _:
                raise RegistryError(f"program {e}: claim {entry.claim} vs {got}")


def registry_programs(
    entries: Sequence[RegistryEntry],
) -> dict[int, OracleProgram]:
    return {e.program.index: e.program for e in entries}
