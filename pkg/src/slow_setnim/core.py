"""Core vocabulary for Slow SetNim(n, A).

Slow SetNim is an impartial game played on ``n`` stacks of tokens.  A move
selects exactly ``l`` non-empty stacks, for some ``l`` in the move-size set
``A``, and removes a single token from each selected stack.  Under normal
play the player who cannot move loses.  Stacks reduced to zero stay on the
board, so ``n`` never changes during a game.

The order of the stacks is irrelevant, so a position is a multiset of
heights; we keep the unique canonical representative, the tuple of heights
sorted non-decreasing.  Every function in this package expects and produces
canonical positions.

Two derived quantities drive the closed-form outcome rules:

* the *type* ``(s, o)`` of a position, where ``s`` is the token sum modulo
  ``2 * min(A)`` and ``o`` is the number of odd stacks;
* the *reducedness* criterion ``min(A) * max(p) <= sum(p)`` ("no stack is
  really big"), which for ``n >= 3`` holds exactly when no token of the
  position is permanently out of play.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

# Heights and token sums must fit an unsigned 64-bit integer.
MAX_HEIGHT = 2**64 - 1

Position = tuple[int, ...]
MoveSelection = tuple[int, ...]  # sorted, distinct 0-based stack indices


class OutcomeClass(Enum):
    """Normal-play outcome: P = previous player wins (mover loses), N = next player wins."""

    P = "P"
    N = "N"

    def flipped(self) -> "OutcomeClass":
        return OutcomeClass.N if self is OutcomeClass.P else OutcomeClass.P


@dataclass(frozen=True)
class GameSpec:
    """A Slow SetNim game: ``n`` stacks, moves play on ``l in moves`` stacks.

    ``moves`` must be a non-empty subset of ``{1, ..., n}``.  The smallest
    allowed move size ``a = min(moves)`` governs both terminality (a position
    with fewer than ``a`` non-empty stacks is terminal) and reducedness.
    """

    n: int
    moves: frozenset[int]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"stack count must be positive, got {self.n}")
        if not isinstance(self.moves, frozenset):
            object.__setattr__(self, "moves", frozenset(self.moves))
        if not self.moves:
            raise ValueError("move-size set must be non-empty")
        bad = [l for l in self.moves if not (1 <= l <= self.n)]
        if bad:
            raise ValueError(f"move sizes {sorted(bad)} outside 1..{self.n}")

    @property
    def a(self) -> int:
        """Smallest allowed move size."""
        return min(self.moves)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted(self.moves))

    def describe(self) -> str:
        return f"SN({self.n},{{{','.join(map(str, self.sizes))}}})"


def game(n: int, moves: Iterable[int]) -> GameSpec:
    """Convenience constructor: ``game(4, [3])`` is SN(4, {3})."""
    return GameSpec(n, frozenset(moves))


@dataclass(frozen=True)
class PositionType:
    """The pair (s, o): token sum mod 2*min(A), and odd-stack count.

    For every position, s and o have the same parity: flipping one token
    changes both the sum and the odd count by one, and the modulus 2*min(A)
    is even, so the parities stay locked together.
    """

    s: int
    o: int

    def as_pair(self) -> tuple[int, int]:
        return (self.s, self.o)


def canonicalize(heights: Sequence[int]) -> Position:
    """Sort heights non-decreasing; rejects negatives and >= 2**64 values."""
    out = tuple(sorted(heights))
    for h in out:
        if h < 0:
            raise ValueError(f"negative stack height {h}")
        if h > MAX_HEIGHT:
            raise ValueError(f"stack height {h} exceeds 64-bit range")
    return out


def sigma(p: Position) -> int:
    """Total number of tokens.  Raises OverflowError past the 64-bit range."""
    total = sum(p)
    if total > MAX_HEIGHT:
        raise OverflowError("token sum exceeds 64-bit accumulator range")
    return total


def odd_count(p: Position) -> int:
    return sum(1 for h in p if h % 2)


def position_type(p: Position, spec: GameSpec) -> PositionType:
    return PositionType(sigma(p) % (2 * spec.a), odd_count(p))


def nirb_value(p: Position, spec: GameSpec) -> int:
    """floor(sum(p) / min(A)): the ceiling under which all stacks must sit."""
    return sigma(p) // spec.a


def is_reduced(p: Position, spec: GameSpec) -> bool:
    """True iff min(A) * max(p) <= sum(p).

    For n >= 3 this is exactly the condition that no token is permanently
    unplayable; for n < 3 the inequality is still evaluated but carries no
    such guarantee (verification sweeps restrict themselves to n >= 3).
    Only min(A) matters: reducedness for general A coincides with
    reducedness for the singleton {min(A)}.
    """
    if not p:
        return True
    return spec.a * p[-1] <= sigma(p)


def ctt(p: Position, m: int) -> Position:
    """Chop the top: clamp every height to m.  Preserves canonical order."""
    return tuple(min(h, m) for h in p)


def nonzero_count(p: Position) -> int:
    return sum(1 for h in p if h)


def is_terminal(p: Position, spec: GameSpec) -> bool:
    """No legal move: fewer non-empty stacks than the smallest move size."""
    return nonzero_count(p) < spec.a


def legal_moves(p: Position, spec: GameSpec) -> list[MoveSelection]:
    """All index sets with size in A whose stacks are all non-empty.

    Deterministic order: by move size, then lexicographically by index set.
    Empty exactly when the position is terminal.
    """
    nonzero = [i for i, h in enumerate(p) if h]
    out: list[MoveSelection] = []
    for size in sorted(spec.moves):
        if size <= len(nonzero):
            out.extend(combinations(nonzero, size))
    return out


def apply_move(p: Position, mv: MoveSelection) -> Position:
    """Remove one token from each selected stack and re-canonicalize.

    Selections index into the canonical order of ``p`` and are meaningless
    for any other position.  Raises ValueError on an empty selected stack.
    """
    heights = list(p)
    seen = set()
    for i in mv:
        if i in seen:
            raise ValueError(f"duplicate stack index {i} in move")
        seen.add(i)
        if not (0 <= i < len(heights)):
            raise ValueError(f"stack index {i} out of range for n={len(heights)}")
        if heights[i] == 0:
            raise ValueError(f"move selects empty stack {i}")
        heights[i] -= 1
    return canonicalize(heights)


def check_move(p: Position, mv: MoveSelection, spec: GameSpec) -> None:
    """Raise ValueError unless mv is a legal move of spec from p."""
    if len(set(mv)) != len(mv):
        raise ValueError("move selects a stack twice")
    if len(mv) not in spec.moves:
        raise ValueError(
            f"move plays on {len(mv)} stacks; allowed sizes are {sorted(spec.moves)}"
        )
    for i in mv:
        if not (0 <= i < spec.n):
            raise ValueError(f"stack index {i} out of range for n={spec.n}")
        if p[i] == 0:
            raise ValueError(f"move selects empty stack {i}")


def distinct_options(p: Position, spec: GameSpec) -> list[Position]:
    """Distinct canonical positions one move away, sorted lexicographically."""
    return sorted({apply_move(p, mv) for mv in legal_moves(p, spec)})


# --- text formats ---------------------------------------------------------
#
# Positions: comma-separated non-negative integers, whitespace ignored.
# Games: "exact:K" (A={K}), "atleast:K" (A={K..n}), "atmost:K" (A={1..K}),
# "set:K1,K2,..." (explicit).  Each K may be a literal integer, "n", or
# "n-<int>", resolved against the stack count.


def parse_position(text: str) -> Position:
    """Parse "1,2,5,6" into a canonical position.  Empty text is the empty position."""
    stripped = text.strip()
    if not stripped:
        return ()
    heights = []
    for token in stripped.split(","):
        token = token.strip()
        if not token.isdigit():
            raise ValueError(f"bad stack height {token!r} in position {text!r}")
        heights.append(int(token))
    return canonicalize(heights)


def format_position(p: Position) -> str:
    return ",".join(map(str, p))


def _resolve_size_token(token: str, n: int) -> int:
    token = token.strip()
    if token == "n":
        return n
    if token.startswith("n-"):
        tail = token[2:].strip()
        if not tail.isdigit():
            raise ValueError(f"bad symbolic move size {token!r}")
        return n - int(tail)
    if not token.isdigit():
        raise ValueError(f"bad move size {token!r}")
    return int(token)


def parse_game(text: str, n: int) -> GameSpec:
    """Parse a game description like "exact:n-1" against a known stack count."""
    if ":" not in text:
        raise ValueError(f"bad game {text!r}: expected form:value, e.g. exact:2")
    form, _, arg = text.partition(":")
    form = form.strip().lower()
    if form == "set":
        sizes = [_resolve_size_token(t, n) for t in arg.split(",") if t.strip()]
        if not sizes:
            raise ValueError(f"bad game {text!r}: empty move-size set")
        return GameSpec(n, frozenset(sizes))
    value = _resolve_size_token(arg, n)
    if form == "exact":
        return GameSpec(n, frozenset({value}))
    if form == "atleast":
        return GameSpec(n, frozenset(range(value, n + 1)))
    if form == "atmost":
        return GameSpec(n, frozenset(range(1, value + 1)))
    raise ValueError(f"bad game form {form!r} in {text!r} (use exact/atleast/atmost/set)")


def format_game(spec: GameSpec) -> str:
    sizes = spec.sizes
    if len(sizes) == 1:
        return f"exact:{sizes[0]}"
    if sizes == tuple(range(sizes[0], spec.n + 1)):
        return f"atleast:{sizes[0]}"
    if sizes == tuple(range(1, sizes[-1] + 1)):
        return f"atmost:{sizes[-1]}"
    return "set:" + ",".join(map(str, sizes))
