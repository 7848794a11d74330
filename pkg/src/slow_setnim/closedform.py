"""Constant-time outcome classifiers for the solved Slow SetNim families.

All of the non-trivial rules are stated on *reduced* positions and depend
only on the position type ``(s, o)``: ``s`` the token sum modulo
``2 * min(A)`` and ``o`` the number of odd stacks.  The proven families:

* ``A = {n-1}`` (play on all but one stack): the P-cells are two triangles
  and one full-parity row,
    S1 = {0 <= s < k-1, o <= s},
    S2 = {s = k-1, o = n mod 2},
    S3 = {k-1 < s < 2k-1, o <= 2(k-1) - s},      with k = n-1;
* ``A = {n-1, n}``: the same set minus the single cell (n-2, n);
* ``A = {1, n}``: parity of the sum (odd n), plus parity of the minimum
  (even n);
* ``A = {1}``, ``A = {n}``, ``A = {1..n}``: sum parity, minimum parity,
  all-even, respectively.

A structural rule covers every game and every position, reduced or not:
``o = 0`` is always P and ``o in A`` is always N.

For ``A = {k..n}`` ("at least k") the triangles-plus-row shape with modulus
``2k`` is conjectured, not proven; verdicts from it are flagged.  The row
band here includes ``o = 0`` (its published form starts at ``o = 1``, which
would contradict the structural rule on the o = 0 column and break the
proven ``A = {n-1, n}`` specialization).

Classifiers for the reduced-position families raise on unreduced input; the
``classify`` dispatcher is the single place that reduces.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import (
    GameSpec,
    OutcomeClass,
    Position,
    canonicalize,
    game,
    is_reduced,
    odd_count,
    position_type,
    sigma,
)
from .reduction import reduce_linear
from .solver import (
    DEFAULT_NODE_BUDGET,
    BudgetExceededError,
    GameGraphMode,
    MemoTable,
    outcome,
)


class Source(Enum):
    """Which rule produced a verdict."""

    STRUCTURAL = "structural"
    EXACT_ALL_BUT_ONE = "all-but-one"
    ALL_BUT_ONE_OR_ALL = "all-but-one-or-all"
    ONE_OR_ALL = "one-or-all"
    SINGLE = "single-stack"
    ALL_STACKS = "all-stacks"
    MOORE_FULL = "any-number-of-stacks"
    CONJECTURE_AT_LEAST_K = "at-least-k-conjecture"
    ORACLE = "oracle"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ClassifierVerdict:
    outcome: OutcomeClass | None
    source: Source
    reduced: Position | None = None

    @property
    def conjectured(self) -> bool:
        return self.source is Source.CONJECTURE_AT_LEAST_K

    def describe(self) -> str:
        label = self.outcome.value if self.outcome else "UNKNOWN"
        tail = " (CONJECTURED)" if self.conjectured else ""
        return f"{label} via {self.source.value}{tail}"


# --- cell-level rules ------------------------------------------------------
# The (s, o) rules are functions of the cell alone, which lets the grid
# tooling evaluate them without enumerating positions.


def pcell_all_but_one(s: int, o: int, n: int) -> bool:
    """Is cell (s, o) a P-cell of SN(n, {n-1}) on reduced positions?"""
    if (s - o) % 2:
        return False  # cells of mismatched parity hold no positions
    k = n - 1
    if s < k - 1:
        return o <= s
    if s == k - 1:
        return o % 2 == n % 2
    if s < 2 * k - 1:
        return o <= 2 * (k - 1) - s
    return False


def pcell_all_but_one_or_all(s: int, o: int, n: int) -> bool:
    """SN(n, {n-1, n}): as the all-but-one rule minus the cell (n-2, n)."""
    return pcell_all_but_one(s, o, n) and not (s == n - 2 and o == n)


def pcell_at_least_k(s: int, o: int, n: int, k: int) -> bool:
    """Conjectured P-cell of SN(n, {k..n}) on reduced positions, modulus 2k."""
    if (s - o) % 2:
        return False
    if s < k - 1:
        return o <= s
    if s == k - 1:
        return o % 2 == n % 2 and o <= k - 1
    if s < 2 * k - 1:
        return o <= 2 * (k - 1) - s
    return False


def _from_bool(is_p: bool) -> OutcomeClass:
    return OutcomeClass.P if is_p else OutcomeClass.N


def _require_reduced(p: Position, spec: GameSpec) -> None:
    if not is_reduced(p, spec):
        raise ValueError(f"position {p} is not reduced for {spec.describe()}")


# --- position-level classifiers -------------------------------------------


def structural_outcome(p: Position, spec: GameSpec) -> OutcomeClass | None:
    """o = 0 is P, o in A is N, in the full game graph; otherwise None.

    Holds for every position of every game, without reduction: from an
    all-even position any move creates o = l in A odd stacks, and from
    o = l in A odd stacks playing exactly the odd stacks restores o = 0.
    """
    o = odd_count(p)
    if o == 0:
        return OutcomeClass.P
    if o in spec.moves:
        return OutcomeClass.N
    return None


def classify_exact_all_but_one(p: Position, n: int) -> OutcomeClass:
    """Outcome of a REDUCED position of SN(n, {n-1})."""
    spec = game(n, [n - 1])
    _require_reduced(p, spec)
    t = position_type(p, spec)
    return _from_bool(pcell_all_but_one(t.s, t.o, n))


def classify_all_but_one_or_all(p: Position, n: int) -> OutcomeClass:
    """Outcome of a REDUCED position of SN(n, {n-1, n})."""
    spec = game(n, [n - 1, n])
    _require_reduced(p, spec)
    t = position_type(p, spec)
    return _from_bool(pcell_all_but_one_or_all(t.s, t.o, n))


def classify_one_or_all(p: Position, n: int) -> OutcomeClass:
    """Outcome in SN(n, {1, n}); every position is reduced since min(A) = 1.

    Odd n: P iff the token sum is even.  Even n: P iff the token sum and
    the minimum stack are both even.
    """
    total = sigma(p)
    if n % 2:
        return _from_bool(total % 2 == 0)
    return _from_bool(total % 2 == 0 and p[0] % 2 == 0)


def classify_single(p: Position) -> OutcomeClass:
    """SN(n, {1}): the move count is the token sum, so P iff it is even."""
    return _from_bool(sigma(p) % 2 == 0)


def classify_all_stacks(p: Position) -> OutcomeClass:
    """SN(n, {n}): the move count is the minimum stack, so P iff it is even."""
    return _from_bool((p[0] if p else 0) % 2 == 0)


def classify_moore_full(p: Position) -> OutcomeClass:
    """SN(n, {1..n}): P iff every stack height is even."""
    return _from_bool(all(h % 2 == 0 for h in p))


def conjectured_at_least_k(p: Position, n: int, k: int) -> OutcomeClass:
    """Conjectured outcome of a REDUCED position of SN(n, {k..n}), 2 <= k <= n.

    Callers must surface these verdicts as conjectured; the dispatcher tags
    them with Source.CONJECTURE_AT_LEAST_K.
    """
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    spec = game(n, range(k, n + 1))
    _require_reduced(p, spec)
    t = position_type(p, spec)
    return _from_bool(pcell_at_least_k(t.s, t.o, n, k))


# --- dispatcher ------------------------------------------------------------


def _proven_family(spec: GameSpec) -> Source | None:
    A, n = spec.moves, spec.n
    if A == {1}:
        return Source.SINGLE
    if A == {n}:
        return Source.ALL_STACKS
    if A == frozenset(range(1, n + 1)):
        return Source.MOORE_FULL
    if A == {1, n}:
        return Source.ONE_OR_ALL
    if A == {n - 1}:
        return Source.EXACT_ALL_BUT_ONE
    if A == {n - 1, n}:
        return Source.ALL_BUT_ONE_OR_ALL
    return None


def _at_least_k(spec: GameSpec) -> int | None:
    k = spec.a
    if k >= 2 and spec.moves == frozenset(range(k, spec.n + 1)):
        return k
    return None


def classify(p: Position, spec: GameSpec, *,
             node_budget: int = DEFAULT_NODE_BUDGET,
             use_conjecture: bool = True,
             memo: MemoTable | None = None) -> ClassifierVerdict:
    """Best-available outcome: structural rule, proven closed form on the
    reduction, conjectured formula (flagged), then the oracle within budget.

    The structural rule runs first because it needs no reduction and covers
    every game.  Unknown is a first-class verdict: outside proven rules,
    the conjecture and the node budget, no guess is made.
    """
    p = canonicalize(p)
    structural = structural_outcome(p, spec)
    if structural is not None:
        return ClassifierVerdict(structural, Source.STRUCTURAL)

    family = _proven_family(spec)
    if family is Source.SINGLE:
        return ClassifierVerdict(classify_single(p), family)
    if family is Source.ALL_STACKS:
        return ClassifierVerdict(classify_all_stacks(p), family)
    if family is Source.MOORE_FULL:
        return ClassifierVerdict(classify_moore_full(p), family)
    if family is Source.ONE_OR_ALL:
        return ClassifierVerdict(classify_one_or_all(p, spec.n), family)

    reduced = reduce_linear(p, spec).reduced
    if family is Source.EXACT_ALL_BUT_ONE and spec.n >= 3:
        return ClassifierVerdict(classify_exact_all_but_one(reduced, spec.n),
                                 family, reduced)
    if family is Source.ALL_BUT_ONE_OR_ALL and spec.n >= 3:
        return ClassifierVerdict(classify_all_but_one_or_all(reduced, spec.n),
                                 family, reduced)

    if use_conjecture:
        k = _at_least_k(spec)
        if k is not None:
            return ClassifierVerdict(conjectured_at_least_k(reduced, spec.n, k),
                                     Source.CONJECTURE_AT_LEAST_K, reduced)

    try:
        result = outcome(reduced, spec, GameGraphMode.FULL, memo, node_budget)
        return ClassifierVerdict(result, Source.ORACLE, reduced)
    except BudgetExceededError:
        return ClassifierVerdict(None, Source.UNKNOWN, reduced)
