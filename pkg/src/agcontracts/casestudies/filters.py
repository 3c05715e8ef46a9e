"""Datapaths used by the DSP case studies, built from the packaged configs."""

from __future__ import annotations

from ..contracts import IoContract
from . import fixtures
from .fixedpoint import (
    Add,
    ConstMult,
    Datapath,
    FixedPointFormat,
    FixedPointSignal,
    Input,
    adder_contract,
    error_budget_contract,
    wordlength_search,
)


def fir3(
    x_fmt: FixedPointFormat,
    k_fmt: FixedPointFormat,
    prod_fmt: FixedPointFormat,
    sum_fmt: FixedPointFormat,
    out_fmt: FixedPointFormat,
    coefficients: tuple[str, str, str] = ("0.2", "0.6", "0.2"),
) -> Datapath:
    """``y = a*x0 + b*x1 + c*x2`` as ``(a*x0 + b*x1) + c*x2``."""
    xs = [FixedPointSignal(f"x{i}", x_fmt) for i in range(3)]
    ps = [FixedPointSignal(f"p{i}", prod_fmt) for i in range(3)]
    s = FixedPointSignal("s", sum_fmt)
    y = FixedPointSignal("y", out_fmt)
    nodes = [Input(x) for x in xs]
    nodes += [ConstMult(x.name, k, k_fmt, p) for x, k, p in zip(xs, coefficients, ps)]
    nodes += [Add("p0", "p1", s), Add("s", "p2", y)]
    return Datapath(nodes, "y")


def adder_pair(x1: FixedPointFormat, x2: FixedPointFormat, x3: FixedPointFormat,
               x4: FixedPointFormat, x5: FixedPointFormat, limits=(None, None, None)) -> Datapath:
    """``x5 = (x1 + x2) + x4``."""
    s1, s2, s3, s4, s5 = (FixedPointSignal(f"x{i}", f) for i, f in zip((1, 2, 3, 4, 5), (x1, x2, x3, x4, x5)))
    nodes = [Input(s1, limits[0]), Input(s2, limits[1]), Input(s4, limits[2]),
             Add("x1", "x2", s3), Add("x3", "x4", s5)]
    return Datapath(nodes, "x5")


def _fmt(pair) -> FixedPointFormat:
    return FixedPointFormat(*pair)


def configured_filter() -> Datapath:
    cfg = fixtures.config("filter")
    f = cfg["formats"]
    return fir3(_fmt(f["x"]), _fmt(f["k"]), _fmt(f["product"]), _fmt(f["sum"]), _fmt(f["y"]),
                tuple(cfg["coefficients"]))


def configured_adders(limited: bool = True, x3: FixedPointFormat | None = None) -> Datapath:
    cfg = fixtures.config("adders")
    f = {k: _fmt(v) for k, v in cfg["formats"].items()}
    if x3 is not None:
        f["x3"] = x3
    limits = tuple(cfg["limits"][k] for k in ("x1", "x2", "x4")) if limited else (None, None, None)
    return adder_pair(f["x1"], f["x2"], f["x3"], f["x4"], f["x5"], limits)


def x3_search(budget: float | None = None, candidates: list[FixedPointFormat] | None = None) -> FixedPointFormat:
    """Smallest format for ``x3`` keeping the adder pair's output error within ``budget``."""
    cfg = fixtures.config("adders")
    budget = cfg["budget"] if budget is None else budget
    if candidates is None:
        candidates = [_fmt(c) for c in cfg["x3_candidates"]]
    path = configured_adders(limited=True)
    s = path.signals
    requirement = error_budget_contract(s["x5"], budget)
    inputs = path.input_contracts()

    def local(x3: FixedPointSignal) -> list[IoContract]:
        return [adder_contract(s["x1"], s["x2"], x3), adder_contract(x3, s["x4"], s["x5"])]

    return wordlength_search(requirement, inputs, s["x3"], candidates, local)


def limited_system() -> IoContract:
    return configured_adders(limited=True).system_contract()
