"""Fixed-point error contracts for unsigned DSP datapaths.

A signal ``x`` is tracked by two contract variables: ``x_a``, the largest
value it may take, and ``x_e``, the largest gap between its fixed-point value
and the ideal real value.  Formats are ``(n, p)``: ``n`` total bits of which
``p`` are integer bits, so the resolution is ``2**(p - n)``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..contracts import AlgebraError, IoContract, compose_all, quotient, refines
from ..terms import PolyhedralTerm, TermList

ORACLE_LIMIT = 2**24


class NoFeasibleFormat(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FixedPointFormat:
    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a format needs at least one bit")

    @property
    def frac(self) -> int:
        return self.n - self.p

    @property
    def lsb(self) -> float:
        return 2.0 ** (self.p - self.n)

    @property
    def max_value(self) -> float:
        return 2.0**self.p - 2.0 ** (self.p - self.n)

    def quantize_up(self, value: float) -> float:
        """Smallest representable value that is >= ``value``."""
        return math.ceil(value / self.lsb - 1e-12) * self.lsb

    def quantize_down(self, value: float) -> float:
        return math.floor(value / self.lsb + 1e-12) * self.lsb


@dataclass(frozen=True)
class FixedPointSignal:
    name: str
    fmt: FixedPointFormat

    @property
    def a(self) -> str:
        return f"{self.name}_a"

    @property
    def e(self) -> str:
        return f"{self.name}_e"

    def with_format(self, fmt: FixedPointFormat) -> FixedPointSignal:
        return FixedPointSignal(self.name, fmt)


def _term(coeffs: dict[str, float], constant: float) -> PolyhedralTerm:
    return PolyhedralTerm.of(coeffs, constant)


def truncation_error(max_frac_in: int, out: FixedPointFormat) -> float:
    """Worst loss from truncating a value with ``max_frac_in`` fractional bits to ``out``."""
    return max(0.0, out.lsb - 2.0 ** (-max_frac_in))


def adder_constant(x: FixedPointFormat, y: FixedPointFormat, z: FixedPointFormat) -> float:
    """Truncation constant of the adder error guarantee (clamped at zero).

    The exponent grouping closes after ``z.p``.  The closed form is only exact
    when its first operand has at least as many integer bits as the second,
    where it equals ``truncation_error(max(x.frac, y.frac), z)``; operands are
    ordered that way here, which makes the constant symmetric.
    """
    if y.p > x.p:
        x, y = y, x
    exponent = y.p - max(x.n, y.n - y.p + x.p) - min(y.p - x.p, x.p - y.p) - z.p
    return max(0.0, 2.0**z.p * (2.0 ** (-z.n) - 2.0**exponent))


def adder_contract(x: FixedPointSignal, y: FixedPointSignal, z: FixedPointSignal) -> IoContract:
    """``z = x + y`` truncated to ``z``'s format."""
    zf = z.fmt
    c = adder_constant(x.fmt, y.fmt, zf)
    assumptions = [_term({x.a: 1, y.a: 1}, 2.0**zf.p)]
    guarantees = [
        _term({z.e: 1, x.e: -1, y.e: -1}, c),
        _term({z.a: 1}, zf.max_value),
        _term({z.a: 1, x.a: -1, y.a: -1}, 0.0),
    ]
    return IoContract((x.a, x.e, y.a, y.e), (z.a, z.e), TermList(tuple(assumptions)), TermList(tuple(guarantees)))


def quantize_coefficient(value: float, fmt: FixedPointFormat) -> tuple[float, float]:
    """Truncate a constant to ``fmt``; returns ``(quantized, quantization error)``."""
    q = fmt.quantize_down(value)
    return q, value - q


def const_mult_contract(
    x: FixedPointSignal,
    k: float,
    k_quant_error: float,
    z: FixedPointSignal,
    k_format: FixedPointFormat | None = None,
) -> IoContract:
    """``z = k * x`` for a quantized constant ``k`` whose ideal value is ``k + k_quant_error``.

    The error bound ``k*x_e + k_quant_error*x_a + T`` is the general product
    bound with the constant's ideal value and error substituted.  ``k_format``
    sets the exact product precision used for the truncation term ``T``;
    without it ``T`` is one output LSB, the worst case of any truncation.
    """
    zf = z.fmt
    if k_format is None:
        trunc = zf.lsb
    else:
        trunc = truncation_error(x.fmt.frac + k_format.frac, zf)
    assumptions = [_term({x.a: k}, 2.0**zf.p)]
    guarantees = [
        _term({z.e: 1, x.e: -k, x.a: -k_quant_error}, trunc),
        _term({z.a: 1}, zf.max_value),
        _term({z.a: 1, x.a: -k}, 0.0),
    ]
    return IoContract((x.a, x.e), (z.a, z.e), TermList(tuple(assumptions)), TermList(tuple(guarantees)))


def input_contract(x: FixedPointSignal, max_value: float | None = None, quantize: bool = True) -> IoContract:
    """Error-free input bounded by ``max_value`` (default: the format's maximum).

    With ``quantize`` the bound is rounded up to the signal's resolution, the
    largest value the stored signal can then reach.
    """
    bound = x.fmt.max_value if max_value is None else float(max_value)
    if quantize:
        bound = min(x.fmt.quantize_up(bound), x.fmt.max_value)
    guarantees = [
        _term({x.a: -1}, 0.0),
        _term({x.a: 1}, bound),
        _term({x.e: 1}, 0.0),
        _term({x.e: -1}, 0.0),
    ]
    return IoContract((), (x.a, x.e), TermList(), TermList(tuple(guarantees)))


def error_budget_contract(output: FixedPointSignal, budget: float) -> IoContract:
    """Top-level requirement: the output error stays within ``budget``."""
    return IoContract((), (output.a, output.e), TermList(), TermList((_term({output.e: 1}, budget),)))


def upper_bound(c: IoContract, var: str) -> float:
    """Tightest ``var <= k`` the contract's guarantees imply under its assumptions."""
    from ..lp import LpStatus, maximize

    res = maximize({var: 1.0}, c.assumptions + c.guarantees)
    if res.status is not LpStatus.OPTIMAL:
        return math.inf if res.status is LpStatus.UNBOUNDED else -math.inf
    return res.value


# -- dataflow graphs -----------------------------------------------------------


@dataclass(frozen=True)
class Input:
    signal: FixedPointSignal
    max_value: float | None = None


@dataclass(frozen=True)
class ConstMult:
    x: str
    coefficient: str  # decimal literal, kept exact for the oracle
    k_format: FixedPointFormat
    z: FixedPointSignal


@dataclass(frozen=True)
class Add:
    x: str
    y: str
    z: FixedPointSignal


@dataclass
class Datapath:
    """A feed-forward fixed-point datapath; nodes are listed in evaluation order."""

    nodes: list
    output: str
    signals: dict[str, FixedPointSignal] = field(init=False)

    def __post_init__(self):
        self.signals = {}
        for node in self.nodes:
            sig = node.signal if isinstance(node, Input) else node.z
            self.signals[sig.name] = sig

    def input_contracts(self) -> list[IoContract]:
        return [input_contract(n.signal, n.max_value) for n in self.nodes if isinstance(n, Input)]

    def operator_contracts(self) -> list[IoContract]:
        out = []
        for node in self.nodes:
            if isinstance(node, ConstMult):
                k, k_err = quantize_coefficient(float(node.coefficient), node.k_format)
                out.append(const_mult_contract(self.signals[node.x], k, k_err, node.z, node.k_format))
            elif isinstance(node, Add):
                out.append(adder_contract(self.signals[node.x], self.signals[node.y], node.z))
        return out

    def system_contract(self) -> IoContract:
        return compose_all(self.input_contracts() + self.operator_contracts())

    def error_bound(self) -> float:
        return upper_bound(self.system_contract(), self.signals[self.output].e)

    def value_bound(self) -> float:
        return upper_bound(self.system_contract(), self.signals[self.output].a)


def wordlength_search(
    requirement: IoContract,
    fixed_inputs: Sequence[IoContract],
    variable_signal: FixedPointSignal,
    candidate_formats: Sequence[FixedPointFormat],
    build_local,
) -> FixedPointFormat:
    """First candidate format whose local datapath refines the local requirement.

    ``build_local(signal)`` returns the operator contracts that depend on the
    variable signal, for a signal carrying the candidate format.
    """
    local = quotient(requirement, compose_all(fixed_inputs))
    for fmt in candidate_formats:
        try:
            candidate = compose_all(build_local(variable_signal.with_format(fmt)))
            if refines(candidate, local):
                return fmt
        except AlgebraError:
            continue
    raise NoFeasibleFormat(f"no candidate format for {variable_signal.name} meets the requirement")


# -- exhaustive oracle ---------------------------------------------------------


def _grid(sig: FixedPointSignal, max_value: float | None) -> np.ndarray:
    fmt = sig.fmt
    top = fmt.max_value if max_value is None else min(max_value, fmt.max_value)
    count = int(math.floor(top / fmt.lsb + 1e-9)) + 1
    return np.arange(count, dtype=np.int64)


def _shift(values: np.ndarray, from_frac: int, to_frac: int) -> np.ndarray:
    """Rescale integer mantissas, truncating (floor) when precision drops."""
    if to_frac >= from_frac:
        return values << (to_frac - from_frac)
    return values >> (from_frac - to_frac)


def enumeration_oracle(path: Datapath, chunk: int = 1 << 20) -> Fraction:
    """Largest |ideal - fixed-point| output gap over every representable input tuple.

    Fixed-point arithmetic is simulated bit-exactly on integer mantissas with
    truncation; the ideal datapath uses the exact decimal coefficients.
    """
    inputs = [n for n in path.nodes if isinstance(n, Input)]
    grids = [_grid(n.signal, n.max_value) for n in inputs]
    total = math.prod(len(g) for g in grids)
    if total > ORACLE_LIMIT:
        raise ValueError(f"{total} input combinations exceed the oracle limit")
    best = Fraction(0)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        columns = {}
        for node, grid in zip(reversed(inputs), reversed(grids)):
            columns[node.signal.name] = grid[idx % len(grid)]
            idx = idx // len(grid)
        best = max(best, _evaluate(path, columns))
    return best


def _evaluate(path: Datapath, columns: dict[str, np.ndarray]) -> Fraction:
    # fixed[name] = integer mantissa at the signal's frac; ideal[name] = (numerators, denominator)
    fixed: dict[str, np.ndarray] = {}
    ideal: dict[str, tuple[np.ndarray, int]] = {}
    for node in path.nodes:
        if isinstance(node, Input):
            name = node.signal.name
            fixed[name] = columns[name]
            ideal[name] = _exact(columns[name], node.signal.fmt.frac)
        elif isinstance(node, ConstMult):
            xs = path.signals[node.x]
            k = Fraction(node.coefficient)
            k_int = math.floor(k * 2**node.k_format.frac)
            prod = fixed[node.x] * k_int
            fixed[node.z.name] = _shift(prod, xs.fmt.frac + node.k_format.frac, node.z.fmt.frac)
            num, den = ideal[node.x]
            ideal[node.z.name] = (num * k.numerator, den * k.denominator)
        elif isinstance(node, Add):
            xs, ys = path.signals[node.x], path.signals[node.y]
            frac = max(xs.fmt.frac, ys.fmt.frac)
            total = _shift(fixed[node.x], xs.fmt.frac, frac) + _shift(fixed[node.y], ys.fmt.frac, frac)
            fixed[node.z.name] = _shift(total, frac, node.z.fmt.frac)
            (nx, dx), (ny, dy) = ideal[node.x], ideal[node.y]
            den = math.lcm(dx, dy)
            ideal[node.z.name] = (nx * (den // dx) + ny * (den // dy), den)
        limit = 2 ** path.signals[_name(node)].fmt.n
        if np.any(fixed[_name(node)] >= limit):
            raise OverflowError(f"{_name(node)} overflows its format")
    num, den = ideal[path.output]
    fnum, fden = _exact(fixed[path.output], path.signals[path.output].fmt.frac)
    gap = np.abs(num * fden - fnum * den)
    return Fraction(int(gap.max()), den * fden)


def _exact(mantissa: np.ndarray, frac: int) -> tuple[np.ndarray, int]:
    """``mantissa * 2**-frac`` as (numerators, denominator) with integer parts."""
    if frac >= 0:
        return mantissa.copy(), 2**frac
    return mantissa << -frac, 1


def _name(node) -> str:
    return node.signal.name if isinstance(node, Input) else node.z.name
