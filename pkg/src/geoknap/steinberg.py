"""Packing under the Steinberg area condition, its corollary, and area-prefix selection.

Steinberg's theorem: items with w <= W, h <= H and
2 a(I) <= W H - (2 w_max - W)_+ (2 h_max - H)_+ always fit the W x H box.
The packer here is a portfolio: maxrects heuristics under several orderings,
then an exact placement search. Since the condition guarantees a packing
exists, the exact search is complete; only its node budget can stop it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import ConditionError, Item, Packing, ParameterError, Rect, ResourceError, checked
from .placement import pack_box


def _pos(x):
    return x if x > 0 else 0


def steinberg_slack(items: Sequence[Item], box_w: int, box_h: int):
    """W H - (2w_max - W)_+ (2h_max - H)_+ - 2 a(I); the condition holds iff >= 0."""
    if not items:
        return box_w * box_h
    wmax = max(it.w for it in items)
    hmax = max(it.h for it in items)
    return box_w * box_h - _pos(2 * wmax - box_w) * _pos(2 * hmax - box_h) \
        - 2 * sum(it.area for it in items)


def steinberg_condition(items: Sequence[Item], box_w: int, box_h: int) -> bool:
    if any(it.w > box_w or it.h > box_h for it in items):
        return False
    return steinberg_slack(items, box_w, box_h) >= 0


def _pack(items, box_w, box_h, x0, y0, budget):
    pls = pack_box(items, box_w, box_h, x0, y0, budget)
    if pls is None:
        # impossible when the condition holds; reaching this means a bug
        raise AssertionError("box packing reported infeasible on a Steinberg-feasible input")
    return checked(items, Packing(Rect(x0, y0, box_w, box_h), pls), False)


def steinberg_pack(items: Sequence[Item], box_w: int, box_h: int, x0: int = 0, y0: int = 0,
                   budget: int = 2_000_000) -> Packing:
    items = list(items)
    if not items:
        return Packing(Rect(x0, y0, box_w, box_h), ())
    big = [it.id for it in items if it.w > box_w or it.h > box_h]
    if big:
        raise ConditionError(f"items {big} exceed the {box_w}x{box_h} box", None)
    slack = steinberg_slack(items, box_w, box_h)
    if slack < 0:
        raise ConditionError(f"area condition violated by {-slack}", slack)
    return _pack(items, box_w, box_h, x0, y0, budget)


def corollary_budget(alpha, beta, eps_large, N) -> Fraction:
    alpha, beta, e = Fraction(alpha), Fraction(beta), Fraction(eps_large)
    return (Fraction(1, 2) - (alpha + beta) * (Fraction(1, 2) + 2 * e) - 8 * e * e) * N * N


def small_stein_pack(items: Sequence[Item], alpha, beta, eps_large, N: int,
                     x0: int = 0, y0: int = 0) -> Packing:
    """Pack short items of small total area into a (1-alpha)N x (1-beta)N box."""
    alpha, beta, e = Fraction(alpha), Fraction(beta), Fraction(eps_large)
    items = list(items)
    W = int((1 - alpha) * N)
    H = int((1 - beta) * N)
    if not (0 <= alpha <= Fraction(1, 2) - 2 * e and 0 <= beta <= Fraction(1, 2) - 2 * e):
        raise ParameterError("alpha and beta must lie in [0, 1/2 - 2 eps_large]")
    side = (Fraction(1, 2) + 2 * e) * N
    tall = [it.id for it in items if it.w > side or it.h > side]
    if tall:
        raise ConditionError(f"items {tall} longer than (1/2 + 2 eps_large) N", None)
    budget = corollary_budget(alpha, beta, e, N)
    area = sum(it.area for it in items)
    if area > budget:
        raise ConditionError(f"area {area} above corollary budget {budget}", budget - area)
    if not items:
        return Packing(Rect(x0, y0, W, H), ())
    return _pack(items, W, H, x0, y0, 2_000_000)


def area_prefix_select(items: Sequence[Item], budget) -> list:
    """Longest prefix in nondecreasing-area order whose total area is <= budget."""
    if budget < 0:
        raise ParameterError("budget must be non-negative")
    out, tot = [], 0
    for it in sorted(items, key=lambda it: (it.area, it.id)):
        if tot + it.area > budget:
            break
        out.append(it)
        tot += it.area
    return out
