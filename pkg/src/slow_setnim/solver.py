"""Ground-truth outcome engine: exhaustive memoized search of the game graph.

Positions are memoized in canonical (sorted) form, which collapses the raw
state space to multisets and makes desk-scale sweeps cheap.  Two graph modes
are supported:

* ``FULL``: the literal game graph, every legal move as-is;
* ``PLAYABLE``: every position is replaced by its reduction, and each move
  is followed by reduction.  Outcomes agree between the modes; the playable
  graph is just smaller.

The module also computes terminal sets and the unplayable-token vector
``u(p)`` directly from the game graph, independently of the clamp-based
reduction algorithms, so the two routes can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .core import (
    GameSpec,
    MoveSelection,
    OutcomeClass,
    Position,
    apply_move,
    canonicalize,
    distinct_options,
    legal_moves,
)
from .reduction import reduce_linear

DEFAULT_NODE_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """Raised when a search would visit more positions than its node budget."""


class GameGraphMode(Enum):
    FULL = "full"
    PLAYABLE = "playable"


@dataclass
class MemoTable:
    """Outcome cache scoped to one game and one graph mode.

    Entries are deterministic, so sharing a table across sweeps of the same
    (spec, mode) pair is always safe; mixing scopes is a bug and rejected.
    """

    spec: GameSpec
    mode: GameGraphMode
    outcomes: dict[Position, OutcomeClass] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.outcomes)


def _check_scope(memo: MemoTable, spec: GameSpec, mode: GameGraphMode) -> None:
    if memo.spec != spec or memo.mode != mode:
        raise ValueError(
            f"memo table is scoped to {memo.spec.describe()}/{memo.mode.value}, "
            f"not {spec.describe()}/{mode.value}"
        )


def _mode_options(p: Position, spec: GameSpec, mode: GameGraphMode) -> list[Position]:
    opts = distinct_options(p, spec)
    if mode is GameGraphMode.PLAYABLE:
        return sorted({reduce_linear(q, spec).reduced for q in opts})
    return opts


def outcome(p: Position, spec: GameSpec, mode: GameGraphMode = GameGraphMode.FULL,
            memo: MemoTable | None = None,
            node_budget: int = DEFAULT_NODE_BUDGET) -> OutcomeClass:
    """Normal-play outcome of p: P iff every option is N; terminal is P.

    In PLAYABLE mode the position is reduced before evaluation.  Raises
    BudgetExceededError once more than ``node_budget`` distinct positions
    have been classified (desk-scale bounds exceeded).
    """
    if memo is None:
        memo = MemoTable(spec, mode)
    else:
        _check_scope(memo, spec, mode)
    table = memo.outcomes

    root = canonicalize(p)
    if mode is GameGraphMode.PLAYABLE:
        root = reduce_linear(root, spec).reduced

    # Explicit post-order stack: a frame carries its options once expanded.
    stack: list[tuple[Position, list[Position] | None]] = [(root, None)]
    while stack:
        pos, opts = stack.pop()
        if pos in table:
            continue
        if opts is None:
            opts = _mode_options(pos, spec, mode)
            pending = [q for q in opts if q not in table]
            if pending:
                stack.append((pos, opts))
                stack.extend((q, None) for q in pending)
                continue
        if any(table[q] is OutcomeClass.P for q in opts):
            table[pos] = OutcomeClass.N
        else:
            table[pos] = OutcomeClass.P  # includes terminal positions
        if len(table) > node_budget:
            raise BudgetExceededError(
                f"outcome search exceeded node budget {node_budget} "
                f"(desk-scale bounds exceeded)"
            )
    return table[root]


def reachable_positions(p: Position, spec: GameSpec,
                        mode: GameGraphMode = GameGraphMode.FULL,
                        node_budget: int = DEFAULT_NODE_BUDGET) -> set[Position]:
    """All positions reachable from p by move sequences (including p itself).

    In PLAYABLE mode this is the reduced game graph: the start is reduced
    and every move is followed by reduction.
    """
    root = canonicalize(p)
    if mode is GameGraphMode.PLAYABLE:
        root = reduce_linear(root, spec).reduced
    seen = {root}
    frontier = [root]
    while frontier:
        cur = frontier.pop()
        for q in _mode_options(cur, spec, mode):
            if q not in seen:
                seen.add(q)
                if len(seen) > node_budget:
                    raise BudgetExceededError(
                        f"reachability exceeded node budget {node_budget}"
                    )
                frontier.append(q)
    return seen


def terminal_positions(p: Position, spec: GameSpec,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> set[Position]:
    """Terminal positions reachable from p in the full game graph."""
    return {
        q for q in reachable_positions(p, spec, GameGraphMode.FULL, node_budget)
        if not legal_moves(q, spec)
    }


_UMemo = dict[Position, tuple[int, ...]]


def unplayable_oracle(p: Position, spec: GameSpec,
                      node_budget: int = DEFAULT_NODE_BUDGET,
                      memo: _UMemo | None = None) -> tuple[int, ...]:
    """u(p): componentwise minimum of the reachable terminal positions.

    Computed straight from the game-graph definition (the minimum over a
    union of terminal sets is the minimum over the options' minima), so it
    is an oracle that is independent of the clamp-based reduction.
    """
    if memo is None:
        memo = {}
    root = canonicalize(p)
    stack: list[tuple[Position, list[Position] | None]] = [(root, None)]
    while stack:
        pos, opts = stack.pop()
        if pos in memo:
            continue
        if opts is None:
            opts = distinct_options(pos, spec)
            if not opts:
                memo[pos] = pos  # terminal: every token is unplayable
                continue
            pending = [q for q in opts if q not in memo]
            if pending:
                stack.append((pos, opts))
                stack.extend((q, None) for q in pending)
                continue
        vectors = [memo[q] for q in opts]
        memo[pos] = tuple(min(col) for col in zip(*vectors))
        if len(memo) > node_budget:
            raise BudgetExceededError(
                f"unplayable-token search exceeded node budget {node_budget}"
            )
    return memo[root]


def winning_moves(p: Position, spec: GameSpec,
                  mode: GameGraphMode = GameGraphMode.FULL,
                  memo: MemoTable | None = None,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> list[MoveSelection]:
    """All legal moves landing on a P-position; empty exactly when p is P."""
    if memo is None:
        memo = MemoTable(spec, mode)
    p = canonicalize(p)
    out = []
    for mv in legal_moves(p, spec):
        q = apply_move(p, mv)
        if outcome(q, spec, mode, memo, node_budget) is OutcomeClass.P:
            out.append(mv)
    return out


def m_rule_move(p: Position, spec: GameSpec) -> MoveSelection:
    """The cited optimal strategy for SN(n, {n-1}).

    Omit a maximal stack when every height is odd, otherwise omit a smallest
    even stack (lowest index breaks ties), and play on the other n-1 stacks.
    Legal from every non-terminal position: a zero stack is even and
    smallest, so it is the one omitted.
    """
    n = spec.n
    if spec.moves != frozenset({n - 1}):
        raise ValueError("the M-rule is defined for games playing on all but one stack")
    if sum(1 for h in p if h) < n - 1:
        raise ValueError("no move from a terminal position")
    if all(h % 2 for h in p):
        omitted = p.index(p[-1])
    else:
        omitted = next(i for i, h in enumerate(p) if h % 2 == 0)
    return tuple(i for i in range(n) if i != omitted)
