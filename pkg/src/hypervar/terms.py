"""Signatures, terms and identities: the syntactic substrate.

Terms are immutable values with structural equality, so they can be memoized
and used as set/dict members freely.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Union

__all__ = [
    "ParseError",
    "Signature",
    "Variable",
    "Apply",
    "Term",
    "Identity",
    "variables_of",
    "substitute",
    "term_size",
    "term_depth",
    "parse_term",
    "parse_identity",
    "print_term",
    "print_identity",
    "variable_name",
]


class ParseError(ValueError):
    """Raised on malformed term/identity/hypersubstitution text."""


# x, y, z are fixed aliases for x1, x2, x3; in juxtaposition words the
# remaining letters a..w stand for x4..x26.
_NAMED_VARS = {"x": 1, "y": 2, "z": 3}
_VAR_PATTERN = re.compile(r"x([1-9][0-9]*)$")


def variable_name(index: int) -> str:
    if index in (1, 2, 3):
        return "xyz"[index - 1]
    return f"x{index}"


def _letter_to_index(ch: str) -> int:
    if ch in _NAMED_VARS:
        return _NAMED_VARS[ch]
    if "a" <= ch <= "w":
        return ord(ch) - ord("a") + 4
    raise ParseError(f"invalid word letter {ch!r}")


def _index_to_letter(index: int) -> str:
    if index in (1, 2, 3):
        return "xyz"[index - 1]
    if 4 <= index <= 26:
        return chr(ord("a") + index - 4)
    raise ValueError(f"variable x{index} has no single-letter form")


def _looks_like_variable(name: str) -> bool:
    return name in _NAMED_VARS or bool(_VAR_PATTERN.match(name))


@dataclass(frozen=True)
class Signature:
    """Operation symbols with arities; declaration order is canonical."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("signature needs at least one symbol")
        seen = set()
        for name, arity in self.symbols:
            if not name or any(c.isspace() for c in name) or set(name) & set("(),="):
                raise ValueError(f"bad symbol name {name!r}")
            if _looks_like_variable(name):
                raise ValueError(f"symbol name {name!r} collides with a variable")
            if name in seen:
                raise ValueError(f"duplicate symbol {name!r}")
            if arity < 0:
                raise ValueError(f"negative arity for {name!r}")
            seen.add(name)

    @cached_property
    def arities(self) -> dict[str, int]:
        return dict(self.symbols)

    def arity(self, name: str) -> int:
        try:
            return self.arities[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    @cached_property
    def single_binary(self) -> bool:
        """True when juxtaposition-word sugar is available."""
        return len(self.symbols) == 1 and self.symbols[0][1] == 2

    @property
    def binary_symbol(self) -> str:
        if not self.single_binary:
            raise ValueError("signature has no unique binary symbol")
        return self.symbols[0][0]


@dataclass(frozen=True)
class Variable:
    index: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError("variable indices start at 1")


@dataclass(frozen=True)
class Apply:
    symbol: str
    args: tuple["Term", ...]


Term = Union[Variable, Apply]


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @cached_property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted(set(variables_of(self.lhs)) | set(variables_of(self.rhs))))


def variables_of(t: Term) -> tuple[int, ...]:
    """Variable indices occurring in t, in increasing order."""
    out: set[int] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Variable):
            out.add(node.index)
        else:
            stack.extend(node.args)
    return tuple(sorted(out))


def substitute(t: Term, env: Mapping[int, Term]) -> Term:
    """Simultaneous substitution; env must cover every variable of t."""
    if isinstance(t, Variable):
        try:
            return env[t.index]
        except KeyError:
            raise ValueError(f"substitution misses variable {variable_name(t.index)}") from None
    return Apply(t.symbol, tuple(substitute(a, env) for a in t.args))


def term_size(t: Term) -> int:
    if isinstance(t, Variable):
        return 1
    return 1 + sum(term_size(a) for a in t.args)


def term_depth(t: Term) -> int:
    if isinstance(t, Variable):
        return 0
    if not t.args:
        return 0
    return 1 + max(term_depth(a) for a in t.args)


def check_term(t: Term, sig: Signature) -> None:
    """Validate arity-correctness of every application in t."""
    if isinstance(t, Variable):
        return
    if sig.arity(t.symbol) != len(t.args):
        raise ValueError(
            f"symbol {t.symbol!r} expects {sig.arity(t.symbol)} arguments, got {len(t.args)}"
        )
    for a in t.args:
        check_term(a, sig)


# --- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|:=|[(),=]|\S)")


def tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], sig: Signature):
        self.tokens = tokens
        self.sig = sig
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, found {got!r}")

    def parse_term(self) -> Term:
        if self.sig.single_binary:
            return self.parse_product()
        return self.parse_factor()

    def parse_product(self) -> Term:
        factors = [self.parse_factor()]
        while self._at_factor_start():
            factors.append(self.parse_factor())
        acc = factors[0]
        for f in factors[1:]:
            acc = Apply(self.sig.binary_symbol, (acc, f))
        return acc

    def _at_factor_start(self) -> bool:
        tok = self.peek()
        if tok is None or tok in (")", ",", "="):
            return False
        return True

    def parse_factor(self) -> Term:
        tok = self.take()
        if tok == "(":
            if not self.sig.single_binary:
                raise ParseError("grouping parentheses need the word syntax (single binary symbol)")
            inner = self.parse_product()
            self.expect(")")
            return inner
        if tok in self.sig.arities:
            arity = self.sig.arity(tok)
            if self.peek() == "(":
                self.take()
                args = [self.parse_term()]
                while self.peek() == ",":
                    self.take()
                    args.append(self.parse_term())
                self.expect(")")
                if len(args) != arity:
                    raise ParseError(
                        f"arity mismatch: {tok!r} expects {arity} arguments, got {len(args)}"
                    )
                return Apply(tok, tuple(args))
            if arity == 0:
                return Apply(tok, ())
            raise ParseError(f"symbol {tok!r} needs argument list")
        if tok in _NAMED_VARS:
            return Variable(_NAMED_VARS[tok])
        m = _VAR_PATTERN.match(tok)
        if m:
            return Variable(int(m.group(1)))
        if len(tok) >= 2 and tok.isalpha() and tok.islower():
            # juxtaposition word: each letter a distinct variable
            if not self.sig.single_binary:
                raise ParseError(
                    f"word {tok!r} needs a signature with exactly one binary symbol"
                )
            acc: Term = Variable(_letter_to_index(tok[0]))
            for ch in tok[1:]:
                acc = Apply(self.sig.binary_symbol, (acc, Variable(_letter_to_index(ch))))
            return acc
        raise ParseError(f"unknown symbol {tok!r}")


def parse_term(text: str, sig: Signature) -> Term:
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    p = _Parser(tokens, sig)
    t = p.parse_term()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    return t


def parse_identity(text: str, sig: Signature) -> Identity:
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    p = _Parser(tokens, sig)
    lhs = p.parse_term()
    p.expect("=")
    rhs = p.parse_term()
    if p.peek() is not None:
        raise ParseError(f"trailing input at {p.peek()!r}")
    return Identity(lhs, rhs)


# --- printing ----------------------------------------------------------------

def _leaves_in_order(t: Term) -> list[int]:
    if isinstance(t, Variable):
        return [t.index]
    out: list[int] = []
    for a in t.args:
        out.extend(_leaves_in_order(a))
    return out


def print_term(t: Term, sig: Signature, flatten: bool = False) -> str:
    """Function syntax by default; in-order juxtaposition word when flatten
    is set and the signature has a single binary symbol."""
    if flatten and sig.single_binary:
        leaves = _leaves_in_order(t)
        if all(1 <= v <= 26 for v in leaves):
            return "".join(_index_to_letter(v) for v in leaves)
    if isinstance(t, Variable):
        return variable_name(t.index)
    if not t.args:
        return t.symbol
    return f"{t.symbol}({', '.join(print_term(a, sig) for a in t.args)})"


def print_identity(ident: Identity, sig: Signature, flatten: bool = False) -> str:
    return f"{print_term(ident.lhs, sig, flatten)} = {print_term(ident.rhs, sig, flatten)}"
