"""Command line front end.

One executable, subcommands per module: parsing and printing, sequence
codes, schema instantiation, the double negation translation, the
propositional oracles, realizability checking, the jump demo, and bar
exploration.  dispatch() returns a process exit code: 0 on success, 1
for domain errors (reported as "error: ..." on stderr), 2 for usage
errors (argparse's convention).

Output is plain text by default; the top-level --machine flag switches
every command to line-oriented key=value records.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Optional

from . import seqcode
from .baire import BaireElement, FiniteSupport, Tabled
from .errors import BairelabError
from .jump import (
    BUILTIN_BASES,
    BUILTIN_RHOS,
    BUILTIN_STEPS,
    Barred,
    DepthExhausted,
    bar_recurse,
    bar_verify,
    build_beta,
    rho,
    oracle_rho,
)
from .machine import Diverges, Halts, certify, load_registry, registry_programs
from .negtrans import neg_translate, repair_bi_clause1, simplify_decidable_atoms
from .oracles import classical_valid, ipc_provable, kripke_countermodel
from .parser import parse_formula
from .printer import format_formula, to_sexpr
from .prop import parse_prop
from .realize import (
    check_realizes,
    dns1_realizer,
    mp_realizer,
    realizes_transform,
)
from .schemas import PAPER_MP_DISPLAY, SchemaError, SchemaKind, instantiate, theory_schemas


# --- argument decoding -------------------------------------------------------


def parse_element(spec: str) -> BaireElement:
    """Decode an element description.

    zero | const:N | fs:DEFAULT[:k=v]... | tab:DEFAULT[:v]... | mp | dns1
    | file:PATH (JSON with "default" plus "overrides" or "prefix").
    """
    head, _, rest = spec.partition(":")
    match head:
        case "zero":
            return FiniteSupport((), 0)
        case "mp":
            return mp_realizer()
        case "dns1":
            return dns1_realizer()
        case "const":
            return FiniteSupport((), int(rest))
        case "fs":
            default, *paired = rest.split(":") if rest else [""]
            overrides = []
            for pair in paired:
                k, _, v = pair.partition("=")
                overrides.append((int(k), int(v)))
            return FiniteSupport(tuple(overrides), int(default))
        case "tab":
            default, *values = rest.split(":") if rest else [""]
            return Tabled(tuple(int(v) for v in values), int(default))
        case "file":
            with open(rest, encoding="utf-8") as fh:
                data = json.load(fh)
            if "prefix" in data:
                return Tabled(tuple(data["prefix"]), int(data.get("default", 0)))
            overrides = tuple((int(k), int(v)) for k, v in data.get("overrides", []))
            return FiniteSupport(overrides, int(data.get("default", 0)))
    raise ValueError(f"unknown element spec {spec!r}")


def _parse_env_value(name: str, text: str) -> object:
    if name.startswith("@"):
        if "," in text:
            return [parse_element(part) for part in text.split(",")]
        return parse_element(text)
    if ".." in text:
        lo, _, hi = text.partition("..")
        return list(range(int(lo), int(hi) + 1))
    if "," in text:
        return [int(part) for part in text.split(",")]
    return int(text)


def parse_env(text: Optional[str]) -> dict[str, object]:
    """Decode ``name=value;name=value`` environment bindings.

    Values: a natural, ``lo..hi`` (inclusive range), a comma list of
    naturals, or (for @names) element specs, comma-separated for a
    quantifier range.
    """
    env: dict[str, object] = {}
    if not text:
        return env
    for binding in text.split(";"):
        binding = binding.strip()
        if not binding:
            continue
        name, eq, value = binding.partition("=")
        if not eq:
            raise ValueError(f"malformed binding {binding!r}; expected name=value")
        env[name.strip()] = _parse_env_value(name.strip(), value.strip())
    return env


def _rho_from_spec(args: argparse.Namespace) -> Callable[[int], int]:
    spec = args.rho
    head, _, name = spec.partition(":")
    if head == "builtin":
        try:
            return BUILTIN_RHOS[name]
        except KeyError:
            raise ValueError(
                f"unknown builtin rho {name!r}; known: {', '.join(sorted(BUILTIN_RHOS))}"
            ) from None
    if spec == "oracle":
        alpha = parse_element(args.alpha)
        programs = registry_programs(load_registry(args.registry))
        return oracle_rho(alpha, programs)
    raise ValueError(f"unknown rho spec {spec!r}; use builtin:NAME or oracle")


def _out(args: argparse.Namespace, key: str, value: object) -> None:
    """One result line: bare value normally, key=value under --machine."""
    print(f"{key}={value}" if args.machine else value)


# --- handlers ----------------------------------------------------------------


def _cmd_parse(args: argparse.Namespace) -> int:
    f = parse_formula(args.formula)
    if args.ast:
        _out(args, "sexpr", to_sexpr(f))
    else:
        _out(args, "formula", format_formula(f))
    return 0


def _cmd_print(args: argparse.Namespace) -> int:
    _out(args, "formula", format_formula(parse_formula(args.formula)))
    return 0


def _cmd_seq_encode(args: argparse.Namespace) -> int:
    _out(args, "code", seqcode.encode(args.entries, max_bits=None))
    return 0


def _cmd_seq_decode(args: argparse.Namespace) -> int:
    entries = seqcode.decode(args.code)
    if args.machine:
        print(f"ok={'true' if entries is not None else 'false'}")
        if entries is not None:
            print("entries=" + ",".join(str(v) for v in entries))
    elif entries is None:
        print("none")
    elif not entries:
        print("(empty)")
    else:
        print(" ".join(str(v) for v in entries))
    return 0


def _cmd_seq_concat(args: argparse.Namespace) -> int:
    _out(args, "code", seqcode.concat(args.left, args.right, max_bits=None))
    return 0


def _cmd_seq_bar(args: argparse.Namespace) -> int:
    alpha = parse_element(args.alpha)
    _out(args, "code", seqcode.bar(alpha.at, args.length, max_bits=None))
    return 0


def _parse_binding(items: Optional[list[str]]) -> dict[str, str]:
    binding: dict[str, str] = {}
    for item in items or []:
        for piece in item.split(","):
            role, eq, name = piece.partition("=")
            if not eq:
                raise ValueError(f"malformed --bind {piece!r}; expected role=name")
            binding[role.strip()] = name.strip()
    return binding


def _cmd_schema(args: argparse.Namespace) -> int:
    if args.theory:
        info = theory_schemas(args.theory)
        kinds = sorted(k.value for k in info.schemas)
        if args.machine:
            print("schemas=" + ",".join(kinds))
            for i, note in enumerate(info.notes):
                print(f"note.{i}={note}")
        else:
            print(" ".join(kinds))
            for note in info.notes:
                print(f"note: {note}")
        return 0
    if args.kind is None:
        raise ValueError("give a schema kind or --theory NAME")
    try:
        kind = SchemaKind(args.kind.lower())
    except ValueError:
        known = ", ".join(k.value for k in SchemaKind)
        raise SchemaError(f"unknown schema kind {args.kind!r}; known: {known}") from None
    if args.paper_literal:
        if kind is not SchemaKind.MP:
            raise SchemaError("only the Markov schema has a pinned literal display")
        _out(args, "display", PAPER_MP_DISPLAY)
        return 0
    body = parse_formula(args.body) if args.body else None
    instance = instantiate(kind, body, _parse_binding(args.bind))
    _out(args, "instance", format_formula(instance))
    return 0


def _cmd_translate_neg(args: argparse.Namespace) -> int:
    f = neg_translate(parse_formula(args.formula))
    if args.simplify_decidable_atoms:
        f = simplify_decidable_atoms(f)
    if args.repair_bi:
        f = repair_bi_clause1(f)
    _out(args, "formula", format_formula(f))
    return 0


def _cmd_oracle_classical(args: argparse.Namespace) -> int:
    valid = classical_valid(parse_prop(args.prop))
    if args.machine:
        print(f"valid={'true' if valid else 'false'}")
    else:
        print("valid" if valid else "not valid")
    return 0


def _cmd_oracle_ipc(args: argparse.Namespace) -> int:
    f = parse_prop(args.prop)
    provable = ipc_provable(f)
    if args.machine:
        print(f"provable={'true' if provable else 'false'}")
    else:
        print("provable" if provable else "not provable")
    if not provable:
        model = kripke_countermodel(f)
        if model is not None:
            if args.machine:
                print(f"countermodel.worlds={model.size}")
                for atom in sorted(model.valuation):
                    worlds = ",".join(str(w) for w in sorted(model.valuation[atom]))
                    print(f"countermodel.{atom}={worlds}")
            else:
                print(f"countermodel on {model.size} worlds")
                for atom in sorted(model.valuation):
                    worlds = " ".join(str(w) for w in sorted(model.valuation[atom]))
                    print(f"  {atom} holds at: {worlds or '(nowhere)'}")
    return 0


def _cmd_realize_check(args: argparse.Namespace) -> int:
    realizer = parse_element(args.realizer)
    env = parse_env(args.env)
    verdict = check_realizes(realizer, parse_formula(args.formula), env, args.fuel)
    if args.machine:
        print(f"status={verdict.status.value}")
        if verdict.witness is not None:
            print(f"witness={verdict.witness}")
        if verdict.note:
            print(f"note={verdict.note}")
    else:
        pieces = [verdict.status.value]
        if verdict.witness is not None:
            pieces.append(f"witness {verdict.witness}")
        if verdict.note:
            pieces.append(f"({verdict.note})")
        print(" ".join(pieces))
    return 0


def _cmd_realize_transform(args: argparse.Namespace) -> int:
    f = realizes_transform(parse_formula(args.formula), args.eps)
    _out(args, "formula", format_formula(f))
    return 0


def _cmd_jump_run(args: argparse.Namespace) -> int:
    alpha = parse_element(args.alpha)
    programs = registry_programs(load_registry(args.registry))
    _out(args, "value", rho(args.code, alpha, programs))
    return 0


def _cmd_jump_demo(args: argparse.Namespace) -> int:
    alpha = parse_element(args.alpha)
    programs = registry_programs(load_registry(args.registry))
    known = {k: programs[k] for k in range(args.upto) if k in programs}
    h = certify(known, alpha, args.fuel)
    for (e, _x), claim in sorted(h.items()):
        match claim:
            case Halts(trace, output):
                if args.machine:
                    print(f"program.{e}=halts trace={trace} output={output}")
                else:
                    print(f"program {e}: halts, trace {trace}, output {output}")
            case Diverges(_):
                if args.machine:
                    print(f"program.{e}=diverges")
                else:
                    print(f"program {e}: diverges")
    beta = build_beta(alpha, h, args.upto)
    prefix = beta.prefix
    if args.machine:
        print("beta=" + ",".join(str(v) for v in prefix))
    else:
        print("beta prefix:", " ".join(str(v) for v in prefix))
    survived = all(
        rho(seqcode.bar(beta.at, j, max_bits=None), alpha, programs) == 1
        for j in range(len(prefix) + 1)
    )
    if args.machine:
        print(f"survives={'true' if survived else 'false'}")
    else:
        yn = "yes" if survived else "NO"
        print(f"rho keeps every beta prefix up to length {len(prefix)}: {yn}")
    return 0 if survived else 1


def _cmd_bar_verify(args: argparse.Namespace) -> int:
    verdict = bar_verify(_rho_from_spec(args), args.branching, args.depth)
    match verdict:
        case Barred(max_depth):
            if args.machine:
                print("barred=true")
                print(f"depth={max_depth}")
            else:
                print(f"barred at depth {max_depth}")
            return 0
        case DepthExhausted(path):
            if args.machine:
                print("barred=false")
                print("path=" + ",".join(str(n) for n in path))
            else:
                print("depth exhausted along", " ".join(str(n) for n in path))
            return 0
    raise RuntimeError(f"unexpected verdict {verdict!r}")


def _cmd_bar_recurse(args: argparse.Namespace) -> int:
    value = bar_recurse(
        _rho_from_spec(args),
        BUILTIN_BASES[args.base],
        BUILTIN_STEPS[args.step],
        args.branching,
        args.depth,
    )
    _out(args, "value", value)
    return 0


def _cmd_acceptance_run(args: argparse.Namespace) -> int:
    from . import acceptance

    results = acceptance.run_all(only=args.only)
    for r in results:
        if args.machine:
            print(f"criterion.{r.number}={'pass' if r.passed else 'fail'}")
        else:
            print(r.line())
    return 0 if all(r.passed for r in results) else 1


# command path -> handler; the table is what the tests hold against the
# parser tree, so a subcommand cannot be wired up without a handler
COMMAND_OPS: dict[tuple[str, ...], Callable[[argparse.Namespace], int]] = {
    ("parse",): _cmd_parse,
    ("print",): _cmd_print,
    ("seq", "encode"): _cmd_seq_encode,
    ("seq", "decode"): _cmd_seq_decode,
    ("seq", "concat"): _cmd_seq_concat,
    ("seq", "bar"): _cmd_seq_bar,
    ("schema",): _cmd_schema,
    ("translate-neg",): _cmd_translate_neg,
    ("oracle", "classical"): _cmd_oracle_classical,
    ("oracle", "ipc"): _cmd_oracle_ipc,
    ("realize", "check"): _cmd_realize_check,
    ("realize", "transform"): _cmd_realize_transform,
    ("jump", "run"): _cmd_jump_run,
    ("jump", "demo"): _cmd_jump_demo,
    ("bar", "verify"): _cmd_bar_verify,
    ("bar", "recurse"): _cmd_bar_recurse,
    ("acceptance", "run"): _cmd_acceptance_run,
}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="bairelab")
    top.add_argument(
        "--machine", action="store_true", help="emit line-oriented key=value output"
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula and print it back")
    p.add_argument("formula")
    p.add_argument("--ast", action="store_true", help="print the s-expression")
    p.set_defaults(path=("parse",))

    p = sub.add_parser("print", help="parse a formula and pretty-print it")
    p.add_argument("formula")
    p.set_defaults(path=("print",))

    seq = sub.add_parser("seq", help="prime power sequence codes")
    seqsub = seq.add_subparsers(dest="seq_command", required=True)
    p = seqsub.add_parser("encode")
    p.add_argument("entries", nargs="*", type=int)
    p.set_defaults(path=("seq", "encode"))
    p = seqsub.add_parser("decode")
    p.add_argument("code", type=int)
    p.set_defaults(path=("seq", "decode"))
    p = seqsub.add_parser("concat")
    p.add_argument("left", type=int)
    p.add_argument("right", type=int)
    p.set_defaults(path=("seq", "concat"))
    p = seqsub.add_parser("bar")
    p.add_argument("length", type=int)
    p.add_argument("--alpha", default="zero")
    p.set_defaults(path=("seq", "bar"))

    p = sub.add_parser("schema", help="instantiate an axiom schema")
    p.add_argument("kind", nargs="?")
    p.add_argument("--body")
    p.add_argument("--bind", action="append", metavar="ROLE=NAME[,ROLE=NAME]")
    p.add_argument("--paper-literal", action="store_true")
    p.add_argument("--theory")
    p.set_defaults(path=("schema",))

    p = sub.add_parser("translate-neg", help="double negation translation")
    p.add_argument("formula")
    p.add_argument("--simplify-decidable-atoms", action="store_true")
    p.add_argument("--repair-bi", action="store_true")
    p.set_defaults(path=("translate-neg",))

    oracle = sub.add_parser("oracle", help="propositional oracles")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)
    p = osub.add_parser("classical")
    p.add_argument("prop")
    p.set_defaults(path=("oracle", "classical"))
    p = osub.add_parser("ipc")
    p.add_argument("prop")
    p.set_defaults(path=("oracle", "ipc"))

    realize = sub.add_parser("realize", help="realizability checking")
    rsub = realize.add_subparsers(dest="realize_command", required=True)
    p = rsub.add_parser("check")
    p.add_argument("--formula", required=True)
    p.add_argument("--realizer", default="zero")
    p.add_argument("--env")
    p.add_argument("--fuel", type=int, default=1000)
    p.set_defaults(path=("realize", "check"))
    p = rsub.add_parser("transform")
    p.add_argument("formula")
    p.add_argument("--eps", default="@e")
    p.set_defaults(path=("realize", "transform"))

    jump = sub.add_parser("jump", help="the pruning function and the jump sequence")
    jsub = jump.add_subparsers(dest="jump_command", required=True)
    p = jsub.add_parser("run")
    p.add_argument("code", type=int)
    p.add_argument("--alpha", default="zero")
    p.add_argument("--registry")
    p.set_defaults(path=("jump", "run"))
    p = jsub.add_parser("demo")
    p.add_argument("--alpha", default="zero")
    p.add_argument("--upto", type=int, default=8)
    p.add_argument("--registry")
    p.add_argument("--fuel", type=int, default=100_000)
    p.set_defaults(path=("jump", "demo"))

    bar = sub.add_parser("bar", help="bar verification and bar recursion")
    bsub = bar.add_subparsers(dest="bar_command", required=True)
    p = bsub.add_parser("verify")
    p.add_argument("--rho", required=True)
    p.add_argument("-b", "--branching", type=int, required=True)
    p.add_argument("-d", "--depth", type=int, required=True)
    p.add_argument("--alpha", default="zero")
    p.add_argument("--registry")
    p.set_defaults(path=("bar", "verify"))
    p = bsub.add_parser("recurse")
    p.add_argument("--rho", required=True)
    p.add_argument("-b", "--branching", type=int, required=True)
    p.add_argument("-d", "--depth", type=int, required=True)
    p.add_argument("--base", default="one", choices=sorted(BUILTIN_BASES))
    p.add_argument("--step", default="sum", choices=sorted(BUILTIN_STEPS))
    p.add_argument("--alpha", default="zero")
    p.add_argument("--registry")
    p.set_defaults(path=("bar", "recurse"))

    acc = sub.add_parser("acceptance", help="the acceptance gate")
    asub = acc.add_subparsers(dest="acceptance_command", required=True)
    p = asub.add_parser("run")
    p.add_argument("--only", type=int, default=None, metavar="N")
    p.set_defaults(path=("acceptance", "run"))

    return top


def dispatch(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = COMMAND_OPS[args.path]
    try:
        return handler(args)
    except (BairelabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
