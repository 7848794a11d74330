"""Position reduction: stripping tokens that can never enter play.

For a position ``p``, write ``u(p)`` for the componentwise minimum of the
stack heights over all terminal positions reachable from ``p``; those tokens
are dead weight, and ``r(p) = p - u(p)`` is the *reduction* of ``p``.  A
position equals its reduction exactly when ``min(A) * max(p) <= sum(p)``
(for n >= 3), and the reduction is always a clamp: ``r(p) = ctt(p, m)`` for
the largest ``m`` that makes the clamp reduced.

Two algorithms compute that largest ``m``:

* ``reduce_iterative`` repeatedly clamps to ``floor(sum(x)/a)`` until the
  maximum falls under that value.  Its step count grows (slowly) with the
  maximum height.
* ``reduce_linear`` computes prefix sums of the sorted heights once and
  scans at most ``a - 1`` candidate intervals, so it does O(n) integer
  operations regardless of how tall the stacks are.

For ``m`` in the half-open band ``(p_i, p_{i+1}]`` (1-based, sorted), the
clamp ``ctt(p, m)`` is reduced iff ``(a + i - n) * m <= p_1 + ... + p_i``.
The linear scan walks the bands from the top down; within the first band
whose constraint admits some value above the band's floor, the answer is
the constraint ceiling capped at the band's top.  If no band at index
``i > n - a`` admits a value, the constraint at ``i = n - a`` is vacuous and
the answer is that band's top, ``p_{n-a+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    GameSpec,
    MoveSelection,
    Position,
    apply_move,
    canonicalize,
    ctt,
    is_reduced,
    nirb_value,
    position_type,
    sigma,
)


@dataclass(frozen=True)
class IterativeRow:
    """One iterate of the clamping loop: the position and its NIRB value."""

    position: Position
    nirb: int


@dataclass(frozen=True)
class LinearRow:
    """One examined scan row: candidate m against the band (lo, hi].

    ``j = 0`` is the initial reducedness test, whose band top is unbounded
    (``hi`` is None).  ``stopped`` marks the row where the scan ended.
    """

    j: int
    denominator: int
    candidate: int
    lo: int
    hi: int | None
    stopped: bool


@dataclass(frozen=True)
class ReductionTrace:
    algorithm: str  # "iterative" or "linear"
    iterative_rows: tuple[IterativeRow, ...] = ()
    prefix_sums: tuple[int, ...] = ()
    linear_rows: tuple[LinearRow, ...] = ()
    fallback_m: int | None = None


@dataclass(frozen=True)
class ReductionResult:
    """Reduction r(p), the unplayable vector u(p) = p - r(p), and work done.

    ``steps`` counts clamp applications (iterative) or scan rows examined
    after the reducedness test (linear).
    """

    input: Position
    reduced: Position
    unplayable: tuple[int, ...]
    algorithm: str
    steps: int
    trace: ReductionTrace | None = None


def _result(p: Position, reduced: Position, algorithm: str, steps: int,
            trace: ReductionTrace | None) -> ReductionResult:
    unplayable = tuple(x - y for x, y in zip(p, reduced))
    return ReductionResult(p, reduced, unplayable, algorithm, steps, trace)


def reduce_iterative(p: Position, spec: GameSpec,
                     record_trace: bool = False) -> ReductionResult:
    """Clamp to the NIRB value until the maximum obeys it.

    Each clamp strictly shrinks the token sum, so the loop terminates; when
    the maximum dominates, one clamp divides it by roughly ``a``, so the
    number of rounds is mild even for huge stacks.
    """
    p = canonicalize(p)
    a = spec.a
    x = p
    total = sigma(x)
    star = total // a
    rows = [IterativeRow(x, star)] if record_trace else None
    steps = 0
    while x and x[-1] > star:
        x = ctt(x, star)
        total = sum(x)
        star = total // a
        steps += 1
        if rows is not None:
            rows.append(IterativeRow(x, star))
    trace = ReductionTrace("iterative", iterative_rows=tuple(rows)) if rows is not None else None
    return _result(p, x, "iterative", steps, trace)


def reduce_linear(p: Position, spec: GameSpec,
                  record_trace: bool = False) -> ReductionResult:
    """Find the reduction with prefix sums and a top-down band scan: O(n)."""
    p = canonicalize(p)
    n = len(p)
    a = spec.a
    prefix = [0] * (n + 1)
    for i, h in enumerate(p, start=1):
        prefix[i] = prefix[i - 1] + h
    total = prefix[n]

    rows: list[LinearRow] | None = [] if record_trace else None
    already = not p or a * p[-1] <= total
    if rows is not None:
        rows.append(LinearRow(0, a, total // a, p[-1] if p else 0, None, already))
    if already:
        trace = None
        if rows is not None:
            trace = ReductionTrace("linear", prefix_sums=tuple(prefix),
                                   linear_rows=tuple(rows))
        return _result(p, p, "linear", 0, trace)

    m: int | None = None
    steps = 0
    for j in range(1, a):
        i = n - j  # band (p_i, p_{i+1}], 1-based
        candidate = prefix[i] // (a - j)
        lo, hi = p[i - 1], p[i]
        capped = min(candidate, hi)
        stopped = capped > lo
        steps += 1
        if rows is not None:
            rows.append(LinearRow(j, a - j, candidate, lo, hi, stopped))
        if stopped:
            m = capped
            break

    fallback = None
    if m is None:
        # Every scanned band was empty of valid clamps; at band index n-a the
        # constraint is vacuous, so its top is the largest valid m.
        fallback = p[n - a]
        m = fallback

    trace = None
    if rows is not None:
        trace = ReductionTrace("linear", prefix_sums=tuple(prefix),
                               linear_rows=tuple(rows), fallback_m=fallback)
    return _result(p, ctt(p, m), "linear", steps, trace)


def reduce(p: Position, spec: GameSpec) -> ReductionResult:  # noqa: A001 - module-scoped name
    """Default reduction entry point (the linear algorithm)."""
    return reduce_linear(p, spec)


def reduction_needed_after(p: Position, mv: MoveSelection, spec: GameSpec) -> bool:
    """Does playing mv from reduced p leave a position that is not reduced?"""
    return not is_reduced(apply_move(p, mv), spec)


def reduction_possible_flags(p: Position, ell: int, omits_max: bool,
                             spec: GameSpec) -> bool:
    """Necessary condition for a move of size ell from reduced p to need reduction.

    With ``r = sum(p) - a * max(p)`` (non-negative for reduced positions):

    * if some maximal stack is omitted, reduction can occur only when
      ``r < ell``;
    * if all maximal stacks are played on, only when ``ell > a`` and
      ``r < ell - a``.

    In particular a move of the minimal size that covers every maximal stack
    never needs reduction.
    """
    if not p:
        return False
    r = sigma(p) - spec.a * p[-1]
    if r < 0:
        return False
    if omits_max:
        return r < ell
    return ell > spec.a and r < ell - spec.a


def reduced_option_closed_form(p: Position, omitted: int, spec: GameSpec) -> Position:
    """Closed form for the reduced option in SN(n, {n-1}) when reduction is needed.

    From a reduced position, only moves omitting a maximal stack can need
    reduction.  With k = n-1, s = sum(p) mod 2k and alpha maximal stacks:

    * ``s % k != 0``: every stack simply loses one token;
    * ``s % k == 0``: every non-maximal stack loses one token and every
      maximal stack drops to max(p) - 2.

    Raises ValueError unless spec is SN(n, {n-1}), p is reduced, ``omitted``
    is a maximal stack, and the move actually needs reduction.
    """
    n = spec.n
    if spec.moves != frozenset({n - 1}):
        raise ValueError("closed form applies only to games playing on all but one stack")
    if not is_reduced(p, spec):
        raise ValueError("closed form requires a reduced position")
    top = p[-1]
    if p[omitted] != top:
        raise ValueError("only moves omitting a maximal stack can need reduction")
    mv = tuple(i for i in range(n) if i != omitted)
    if not reduction_needed_after(p, mv, spec):
        raise ValueError("move does not need reduction")
    k = n - 1
    s = position_type(p, spec).s
    if s % k:
        return canonicalize(h - 1 for h in p)
    alpha = sum(1 for h in p if h == top)
    lowered = [h - 1 for h in p[: n - alpha]] + [top - 2] * alpha
    return canonicalize(lowered)
