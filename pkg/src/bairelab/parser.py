"""Concrete syntax: lexer and recursive descent parser.

Grammar sketch (precedence low to high):

    formula  :=  imp
    imp      :=  or  ('->' imp)?                      right associative
    or       :=  and ('|' and)*
    and      :=  neg ('&' neg)*
    neg      :=  '~' neg | quant | atom
    quant    :=  ('forall' | 'exists') binder ('<' term)? '.' formula
    atom     :=  term '=' term  |  '(' formula ')'
    term     :=  factor ('+' factor)*
    factor   :=  power ('*' power)*
    power    :=  '2' '^' power_operand '*' '3' '^' power_operand   (pairing)
              |  prim
    prim     :=  '0' | numeral | 'S' '(' term ')' | var | funapp
              |  'ext' '(' term ',' term ')' | 'barof' '(' functor ',' term ')'
              |  '(' term ')'

Number variables are lower-case identifiers, function variables start with
`@`.  Binders use maximal right scope.  `*` binds tighter than `+`; both
associate left.  Errors carry line and column plus the tokens that would
have allowed progress at the farthest point reached.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BairelabError
from .syntax import (
    Add,
    And,
    Apply,
    BExistsN,
    BForallN,
    ContApply,
    Eq,
    ExistsF,
    ExistsN,
    FnVar,
    ForallF,
    ForallN,
    Formula,
    Functor,
    Imp,
    Lambda,
    Mul,
    Not,
    NumVar,
    Or,
    Pair,
    PrefixCode,
    SeqExt,
    Succ,
    Term,
    Zero,
    numeral,
)

KEYWORDS = frozenset({"forall", "exists", "lam", "barof", "ext", "ap"})

_PUNCT = (
    ("->", "ARROW"),
    ("~", "NOT"),
    ("&", "AND"),
    ("|", "OR"),
    ("=", "EQ"),
    ("<", "LT"),
    ("(", "LPAR"),
    (")", "RPAR"),
    (".", "DOT"),
    (",", "COMMA"),
    ("+", "PLUS"),
    ("*", "STAR"),
    ("^", "CARET"),
)


class ParseError(BairelabError):
    def __init__(self, message: str, line: int, col: int, expected: frozenset[str] = frozenset()):
        self.line = line
        self.col = col
        self.expected = expected
        hint = ""
        if expected:
            hint = " (expected one of: " + ", ".join(sorted(expected)) + ")"
        super().__init__(f"{line}:{col}: {message}{hint}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "S" and not (i + 1 < n and (src[i + 1].isalnum() or src[i + 1] in "_'")):
            toks.append(Token("SUCC", "S", line, col))
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Token("NUM", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c == "@":
            j = i + 1
            if j >= n or not src[j].islower():
                raise ParseError("bad function variable", line, col)
            while j < n and (src[j].isalnum() and not src[j].isupper() or src[j] in "_'"):
                j += 1
            toks.append(Token("FVAR", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.islower():
            j = i
            while j < n and (src[j].isalnum() and not src[j].isupper() or src[j] in "_'"):
                j += 1
            word = src[i:j]
            kind = word.upper() if word in KEYWORDS else "IDENT"
            toks.append(Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        for text, kind in _PUNCT:
            if src.startswith(text, i):
                toks.append(Token(kind, text, line, col))
                i += len(text)
                col += len(text)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


@dataclass
class _State:
    toks: list[Token]
    pos: int = 0
    # farthest failure bookkeeping, merged across backtracking
    fail_pos: int = -1
    fail_expected: set[str] = field(default_factory=set)

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, kind: str) -> bool:
        return self.peek().kind == kind

    def take(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            self.want(kind)
            raise self.error()
        self.pos += 1
        return t

    def eat(self, kind: str) -> Token | None:
        if self.at(kind):
            return self.take(kind)
        return None

    def want(self, *kinds: str) -> None:
        if self.pos > self.fail_pos:
            self.fail_pos = self.pos
            self.fail_expected = set(kinds)
        elif self.pos == self.fail_pos:
            self.fail_expected.update(kinds)

    def error(self) -> ParseError:
        at = self.toks[min(max(self.fail_pos, self.pos), len(self.toks) - 1)]
        got = at.text or "end of input"
        return ParseError(f"unexpected {got!r}", at.line, at.col, frozenset(self.fail_expected))


def parse_formula(src: str) -> Formula:
    st = _State(tokenize(src))
    f = _imp(st)
    if not st.at("EOF"):
        st.want("EOF")
        raise st.error()
    return f


def parse_term(src: str) -> Term:
    st = _State(tokenize(src))
    t = _term(st)
    if not st.at("EOF"):
        st.want("EOF")
        raise st.error()
    return t


def parse_functor(src: str) -> Functor:
    st = _State(tokenize(src))
    f = _functor(st)
    if not st.at("EOF"):
        st.want("EOF")
        raise st.error()
    return f


# -- formulas ---------------------------------------------------------------


def _imp(st: _State) -> Formula:
    left = _or(st)
    if st.eat("ARROW"):
        return Imp(left, _imp(st))
    return left


def _or(st: _State) -> Formula:
    f = _and(st)
    while st.eat("OR"):
        f = Or(f, _and(st))
    return f


def _and(st: _State) -> Formula:
    f = _neg(st)
    while st.eat("AND"):
        f = And(f, _neg(st))
    return f


def _neg(st: _State) -> Formula:
    if st.eat("NOT"):
        return Not(_neg(st))
    if st.at("FORALL") or st.at("EXISTS"):
        return _quant(st)
    return _atom(st)


def _quant(st: _State) -> Formula:
    univ = st.at("FORALL")
    st.take("FORALL" if univ else "EXISTS")
    if st.at("FVAR"):
        v = st.take("FVAR").text
        st.take("DOT")
        body = _imp(st)
        return ForallF(v, body) if univ else ExistsF(v, body)
    if st.at("IDENT"):
        v = st.take("IDENT").text
        if st.eat("LT"):
            bound = _term(st)
            st.take("DOT")
            body = _imp(st)
            return BForallN(v, bound, body) if univ else BExistsN(v, bound, body)
        st.take("DOT")
        body = _imp(st)
        return ForallN(v, body) if univ else ExistsN(v, body)
    st.want("IDENT", "FVAR")
    raise st.error()


def _atom(st: _State) -> Formula:
    if st.at("LPAR"):
        # both a parenthesized formula and a parenthesized left term start
        # here; try the formula reading first and fall back
        mark = st.pos
        st.take("LPAR")
        try:
            f = _imp(st)
            st.take("RPAR")
            return f
        except ParseError:
            st.pos = mark
        t = _term(st)
        st.take("EQ")
        return Eq(t, _term(st))
    t = _term(st)
    st.take("EQ")
    return Eq(t, _term(st))


# -- terms ------------------------------------------------------------------


def _term(st: _State) -> Term:
    t = _factor(st)
    while st.eat("PLUS"):
        t = Add(t, _factor(st))
    return t


def _factor(st: _State) -> Term:
    # pairing sugar: 2^a * 3^b, recognized by lookahead before plain products
    t: Term | None = None
    if st.at("NUM") and st.peek().text == "2" and st.peek(1).kind == "CARET":
        mark = st.pos
        try:
            t = _pair(st)
        except ParseError:
            st.pos = mark
    if t is None:
        t = _prim(st)
    while st.eat("STAR"):
        t = Mul(t, _prim(st))
    return t


def _pair(st: _State) -> Term:
    st.take("NUM")
    st.take("CARET")
    a = _prim(st)
    st.take("STAR")
    three = st.take("NUM")
    if three.text != "3":
        st.want("NUM")
        raise ParseError("pairing needs base 3 after base 2", three.line, three.col)
    st.take("CARET")
    b = _prim(st)
    return Pair(a, b)


def _prim(st: _State) -> Term:
    t = st.peek()
    match t.kind:
        case "NUM":
            st.take("NUM")
            return numeral(int(t.text))
        case "SUCC":
            st.take("SUCC")
            st.take("LPAR")
            inner = _term(st)
            st.take("RPAR")
            return Succ(inner)
        case "IDENT":
            st.take("IDENT")
            return NumVar(t.text)
        case "EXT":
            st.take("EXT")
            st.take("LPAR")
            s = _term(st)
            st.take("COMMA")
            item = _term(st)
            st.take("RPAR")
            return SeqExt(s, item)
        case "BAROF":
            st.take("BAROF")
            st.take("LPAR")
            f = _functor(st)
            st.take("COMMA")
            ln = _term(st)
            st.take("RPAR")
            return PrefixCode(f, ln)
        case "FVAR" | "LAM" | "AP":
            f = _functor(st)
            st.take("LPAR")
            arg = _term(st)
            st.take("RPAR")
            return Apply(f, arg)
        case "LPAR":
            # a lambda functor also opens with '(': try a plain term first
            mark = st.pos
            st.take("LPAR")
            try:
                inner = _term(st)
                st.take("RPAR")
                return inner
            except ParseError:
                st.pos = mark
            f = _functor(st)
            st.take("LPAR")
            arg = _term(st)
            st.take("RPAR")
            return Apply(f, arg)
        case _:
            st.want("NUM", "SUCC", "IDENT", "FVAR", "LAM", "AP", "EXT", "BAROF", "LPAR")
            raise st.error()


# -- functors ---------------------------------------------------------------


def _functor(st: _State) -> Functor:
    t = st.peek()
    match t.kind:
        case "FVAR":
            st.take("FVAR")
            return FnVar(t.text)
        case "AP":
            st.take("AP")
            st.take("LPAR")
            f = _functor(st)
            st.take("COMMA")
            g = _functor(st)
            st.take("RPAR")
            return ContApply(f, g)
        case "LAM":
            return _lambda_tail(st)
        case "LPAR":
            st.take("LPAR")
            f = _functor(st)
            st.take("RPAR")
            return f
        case _:
            st.want("FVAR", "LAM", "AP", "LPAR")
            raise st.error()


def _lambda_tail(st: _State) -> Functor:
    st.take("LAM")
    v = st.take("IDENT").text
    st.take("DOT")
    body = _term(st)
    return Lambda(v, body)
