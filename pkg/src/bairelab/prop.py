"""Propositional formulas: a little language for the logic oracles.

Kept separate from the object language on purpose: decision procedures for
propositional logic work on atoms, not on arithmetic equations.  Bridges in
the oracle module embed these into the object language and back.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BairelabError


@dataclass(frozen=True)
class PropFormula:
    pass


@dataclass(frozen=True)
class PAtom(PropFormula):
    name: str


@dataclass(frozen=True)
class PBot(PropFormula):
    """Falsum."""


@dataclass(frozen=True)
class PAnd(PropFormula):
    left: PropFormula
    right: PropFormula


@dataclass(frozen=True)
class POr(PropFormula):
    left: PropFormula
    right: PropFormula


@dataclass(frozen=True)
class PImp(PropFormula):
    left: PropFormula
    right: PropFormula


@dataclass(frozen=True)
class PNot(PropFormula):
    body: PropFormula


def atoms_of(f: PropFormula) -> frozenset[str]:
    match f:
        case PAtom(name):
            return frozenset({name})
        case PBot():
            return frozenset()
        case PAnd(a, b) | POr(a, b) | PImp(a, b):
            return atoms_of(a) | atoms_of(b)
        case PNot(a):
            return atoms_of(a)
        case _:
            raise TypeError(f"not a propositional formula: {f!r}")


def format_prop(f: PropFormula, prec: int = 0) -> str:
    # precedence: -> 1 (right assoc), | 2, & 3, ~ 4
    match f:
        case PAtom(name):
            return name
        case PBot():
            return "bot"
        case PImp(a, b):
            s = f"{format_prop(a, 2)} -> {format_prop(b, 1)}"
            return f"({s})" if prec > 1 else s
        case POr(a, b):
            s = f"{format_prop(a, 2)} | {format_prop(b, 3)}"
            return f"({s})" if prec > 2 else s
        case PAnd(a, b):
            s = f"{format_prop(a, 3)} & {format_prop(b, 4)}"
            return f"({s})" if prec > 3 else s
        case PNot(a):
            return f"~{format_prop(a, 4)}"
        case _:
            raise TypeError(f"not a propositional formula: {f!r}")


class PropParseError(BairelabError):
    pass


def parse_prop(src: str) -> PropFormula:
    """Parse `~ & | ->` over lower-case atoms; `bot` is falsum."""
    toks: list[str] = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
        elif c.isalpha() and c.islower():
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(src[i:j])
            i = j
        elif src.startswith("->", i):
            toks.append("->")
            i += 2
        elif c in "~&|()":
            toks.append(c)
            i += 1
        else:
            raise PropParseError(f"unexpected character {c!r} at offset {i}")
    toks.append("<eof>")
    pos = [0]

    def peek() -> str:
        return toks[pos[0]]

    def take(t: str) -> None:
        if peek() != t:
            raise PropParseError(f"expected {t!r}, got {peek()!r}")
        pos[0] += 1

    def p_imp() -> PropFormula:
        a = p_or()
        if peek() == "->":
            take("->")
            return PImp(a, p_imp())
        return a

    def p_or() -> PropFormula:
        a = p_and()
        while peek() == "|":
            take("|")
            a = POr(a, p_and())
        return a

    def p_and() -> PropFormula:
        a = p_neg()
        while peek() == "&":
            take("&")
            a = PAnd(a, p_neg())
        return a

    def p_neg() -> PropFormula:
        if peek() == "~":
            take("~")
            return PNot(p_neg())
        return p_atom()

    def p_atom() -> PropFormula:
        t = peek()
        if t == "(":
            take("(")
            f = p_imp()
            take(")")
            return f
        if t == "bot":
            take("bot")
            return PBot()
        if t.isidentifier() and t != "<eof>":
            take(t)
            return PAtom(t)
        raise PropParseError(f"expected an atom, got {t!r}")

    f = p_imp()
    if peek() != "<eof>":
        raise PropParseError(f"trailing input at {peek()!r}")
    return f
