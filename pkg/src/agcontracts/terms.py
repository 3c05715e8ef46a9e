"""Linear-inequality terms and their textual form.

A :class:`PolyhedralTerm` denotes ``sum(c_v * v) <= constant``.  A
:class:`TermList` is an ordered conjunction of terms, i.e. a polyhedron in
H-representation.  Variables are plain strings.

Grammar (whitespace-insensitive)::

    term     := expr ("<=" | ">=" | "=") expr
    expr     := signed (("+" | "-") signed)*
    signed   := ["+" | "-"] atom
    atom     := number | variable | number "*" variable
    variable := [A-Za-z_][A-Za-z0-9_]*'*
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

COEFF_TOL = 1e-9
DUPLICATE_TOL = 1e-9

VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")
_VAR_FULL = re.compile(r"\A[A-Za-z_][A-Za-z0-9_]*'*\Z")


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


class NonlinearError(ParseError):
    """Raised for a product of two variables."""


def is_var_name(name: str) -> bool:
    return isinstance(name, str) and bool(_VAR_FULL.match(name))


def format_number(x: float) -> str:
    """Shortest decimal that round-trips to the same float."""
    x = float(x) + 0.0
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


@dataclass(frozen=True)
class PolyhedralTerm:
    """``sum(coefficient * var) <= constant``; only nonzero coefficients are stored."""

    items: tuple[tuple[str, float], ...]
    constant: float

    @classmethod
    def of(cls, coefficients: Mapping[str, float], constant: float) -> PolyhedralTerm:
        items = tuple(
            sorted((v, float(c) + 0.0) for v, c in coefficients.items() if abs(c) > COEFF_TOL)
        )
        for v, _ in items:
            if not is_var_name(v):
                raise ValueError(f"invalid variable name {v!r}")
        constant = float(constant) + 0.0
        if not math.isfinite(constant) or not all(math.isfinite(c) for _, c in items):
            raise ValueError("term coefficients must be finite")
        return cls(items, constant)

    @property
    def coefficients(self) -> dict[str, float]:
        return dict(self.items)

    @property
    def vars(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.items)

    def coefficient(self, var: str) -> float:
        for v, c in self.items:
            if v == var:
                return c
        return 0.0

    def is_tautology(self) -> bool:
        return not self.items and self.constant >= 0.0

    def is_contradiction(self, tol: float = 0.0) -> bool:
        return not self.items and self.constant < -tol

    def lhs(self, point: Mapping[str, float]) -> float:
        return sum(c * point[v] for v, c in self.items)

    def holds(self, point: Mapping[str, float], tol: float = 1e-9) -> bool:
        return self.lhs(point) <= self.constant + tol

    def scaled(self, factor: float) -> PolyhedralTerm:
        if factor <= 0:
            raise ValueError("terms may only be scaled by a positive factor")
        return PolyhedralTerm.of({v: c * factor for v, c in self.items}, self.constant * factor)

    def plus(self, other: PolyhedralTerm, factor: float = 1.0, drop: str | None = None) -> PolyhedralTerm:
        """``self + factor * other`` with ``drop`` removed exactly (it is meant to cancel)."""
        coeffs = dict(self.items)
        for v, c in other.items:
            coeffs[v] = coeffs.get(v, 0.0) + factor * c
        if drop is not None:
            coeffs.pop(drop, None)
        return PolyhedralTerm.of(coeffs, self.constant + factor * other.constant)

    def normalized(self) -> PolyhedralTerm:
        """Rescaled so the largest coefficient magnitude is 1."""
        if not self.items:
            return self
        return self.scaled(1.0 / max(abs(c) for _, c in self.items))

    def same_as(self, other: PolyhedralTerm, tol: float = DUPLICATE_TOL) -> bool:
        """Equal up to a positive rescaling."""
        if self.vars != other.vars:
            return False
        if not self.items:
            return self.constant == other.constant
        a, b = self.normalized(), other.normalized()
        close = lambda x, y: abs(x - y) <= tol * max(1.0, abs(x), abs(y))
        return close(a.constant, b.constant) and all(
            close(c, d) for (_, c), (_, d) in zip(a.items, b.items)
        )

    def __str__(self) -> str:
        return print_term(self)


def _dedupe(terms: Iterable[PolyhedralTerm]) -> tuple[PolyhedralTerm, ...]:
    out: list[PolyhedralTerm] = []
    for t in terms:
        if not any(t == u or t.same_as(u) for u in out):
            out.append(t)
    return tuple(out)


@dataclass(frozen=True)
class TermList:
    """Ordered conjunction of terms; duplicates (up to rescaling) are dropped."""

    terms: tuple[PolyhedralTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _dedupe(self.terms))

    @classmethod
    def parse(cls, texts: Iterable[str] | str) -> TermList:
        if isinstance(texts, str):
            texts = [texts]
        out: list[PolyhedralTerm] = []
        for s in texts:
            out.extend(parse_terms(s))
        return cls(tuple(out))

    @property
    def vars(self) -> frozenset[str]:
        out: set[str] = set()
        for t in self.terms:
            out |= t.vars
        return frozenset(out)

    def __iter__(self) -> Iterator[PolyhedralTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __add__(self, other: Iterable[PolyhedralTerm]) -> TermList:
        return TermList(self.terms + tuple(other))

    def holds(self, point: Mapping[str, float], tol: float = 1e-9) -> bool:
        return all(t.holds(point, tol) for t in self.terms)

    def strings(self) -> list[str]:
        return [print_term(t) for t in self.terms]

    def __str__(self) -> str:
        return "[" + ", ".join(self.strings()) + "]"


def as_termlist(x: TermList | Iterable[PolyhedralTerm] | Iterable[str] | str) -> TermList:
    if isinstance(x, TermList):
        return x
    if isinstance(x, str):
        return TermList.parse(x)
    items = list(x)
    if items and all(isinstance(i, str) for i in items):
        return TermList.parse(items)
    return TermList(tuple(items))


# -- grammar ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<var>[A-Za-z_][A-Za-z0-9_]*'*)"
    r"|(?P<rel><=|>=|==|=|≤|≥)"
    r"|(?P<op>[-+*])"
    r")"
)


def _tokenize(s: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", s, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        pos = tok[2] if tok else len(self.text)
        raise ParseError(message, self.text, pos)

    def expr(self) -> tuple[dict[str, float], float]:
        coeffs: dict[str, float] = {}
        const = 0.0
        sign = 1.0
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1.0 if tok[1] == "-" else 1.0
        while True:
            var, value = self.atom()
            if var is None:
                const += sign * value
            else:
                coeffs[var] = coeffs.get(var, 0.0) + sign * value
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -1.0 if tok[1] == "-" else 1.0
                nxt = self.peek()
                if nxt and nxt[0] == "op" and nxt[1] in "+-":
                    self.fail("doubled sign", nxt)
                continue
            return coeffs, const

    def atom(self) -> tuple[str | None, float]:
        tok = self.take()
        kind, value, _ = tok
        if kind == "num":
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "*":
                self.take()
                target = self.take()
                if target[0] != "var":
                    self.fail("expected a variable after '*'", target)
                after = self.peek()
                if after and after[0] == "op" and after[1] == "*":
                    raise NonlinearError("product of variables", self.text, after[2])
                return target[1], float(value)
            return None, float(value)
        if kind == "var":
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "*":
                after = self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else None
                if after and after[0] == "var":
                    raise NonlinearError("product of variables", self.text, nxt[2])
                self.fail("coefficient must precede the variable", nxt)
            return value, 1.0
        self.fail(f"unexpected {value!r}", tok)

    def term(self) -> list[PolyhedralTerm]:
        if not self.tokens:
            raise ParseError("empty term", self.text, 0)
        lhs = self.expr()
        rel = self.take()
        if rel[0] != "rel":
            self.fail("expected '<=', '>=' or '='", rel)
        rhs = self.expr()
        if self.peek() is not None:
            self.fail("trailing input", self.peek())
        names = set(lhs[0]) | set(rhs[0])
        diff = {v: lhs[0].get(v, 0.0) - rhs[0].get(v, 0.0) for v in names}
        const = rhs[1] - lhs[1]
        le = PolyhedralTerm.of(diff, const)
        ge = PolyhedralTerm.of({v: -c for v, c in diff.items()}, -const)
        op = rel[1]
        if op in ("<=", "≤"):
            return [le]
        if op in (">=", "≥"):
            return [ge]
        return [le, ge]


def parse_terms(s: str) -> list[PolyhedralTerm]:
    """Parse one inequality or equality; an equality yields two terms."""
    return _Parser(s).term()


def parse_term(s: str) -> PolyhedralTerm | list[PolyhedralTerm]:
    """One term for ``<=``/``>=``; the pair ``[lhs - rhs <= 0, rhs - lhs <= 0]`` for ``=``."""
    out = parse_terms(s)
    return out[0] if len(out) == 1 else out


def print_term(t: PolyhedralTerm) -> str:
    """Canonical text: variables sorted, unit coefficients elided, ``<=`` separator."""
    if not t.items:
        return f"0 <= {format_number(t.constant)}"
    parts: list[str] = []
    for k, (v, c) in enumerate(t.items):
        if k == 0:
            parts.append(v if c == 1.0 else f"{format_number(c)}*{v}")
            continue
        mag = abs(c)
        body = v if mag == 1.0 else f"{format_number(mag)}*{v}"
        parts.append(("- " if c < 0 else "+ ") + body)
    return f"{' '.join(parts)} <= {format_number(t.constant)}"
