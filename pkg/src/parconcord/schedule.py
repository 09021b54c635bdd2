"""Round-robin edge coloring of the complete graph on p vertices.

Every unordered pair {r, s} of variables must be visited once per outer
iteration, and pairs inside one parallel round must not share an index.
That is exactly a proper edge coloring of K_p, whose minimum number of
colors is p - 1 for even p and p for odd p.  The classic round-robin
tournament rotation achieves the minimum: fix index 1, place the rest on a
circle, pair opposite positions, rotate.  Odd p is handled by adding a
phantom index p + 1; pairs touching it stay in the schedule but are marked
and skipped by consumers.

A brute-force exhaustive search over colorings (feasible through p = 7) is
included so the optimum round count can be verified independently.
"""

from dataclasses import dataclass

from .model import DimensionError


@dataclass(frozen=True, order=True)
class IndexPair:
    """An unordered 1-based pair, normalized so r < s."""

    r: int
    s: int

    def __post_init__(self):
        r, s = self.r, self.s
        if r == s:
            raise ValueError(f"pair indices must differ, got ({r}, {s})")
        if r > s:
            object.__setattr__(self, "r", s)
            object.__setattr__(self, "s", r)


@dataclass(frozen=True)
class Schedule:
    """All rounds for one outer iteration over p variables.

    rounds is a tuple of tuples of IndexPair over indices 1..p_even, before
    phantom filtering; p_even is p rounded up to even.
    """

    p: int
    p_even: int
    rounds: tuple

    def is_phantom(self, pair: IndexPair) -> bool:
        """True when the pair touches the padding index of an odd-p schedule."""
        return pair.s > self.p

    def active_pairs(self, k):
        """Non-phantom pairs of round k (0-based round index)."""
        return tuple(pr for pr in self.rounds[k] if not self.is_phantom(pr))

    def active_round_count(self) -> int:
        """Rounds that still contain work after phantom filtering."""
        return sum(1 for k in range(len(self.rounds)) if self.active_pairs(k))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = ""


def build_circle_schedule(p: int) -> Schedule:
    """Round-robin rotation schedule covering every pair exactly once.

    Positions hold indices 1..p_even with position 0 pinned; each round
    pairs position q with position p_even - 1 - q, then the free positions
    rotate by one step.  Produces p_even - 1 rounds of p_even / 2 pairs.
    """
    if p < 2:
        raise DimensionError("schedule needs p >= 2")
    p_even = p + (p % 2)
    half = p_even // 2
    j = list(range(1, p_even + 1))
    rounds = []
    for _ in range(p_even - 1):
        rounds.append(
            tuple(IndexPair(j[q], j[p_even - 1 - q]) for q in range(half))
        )
        tmp = j[-1]
        j[2:] = j[1:-1]
        j[1] = tmp
    return Schedule(p=p, p_even=p_even, rounds=tuple(rounds))


def validate_schedule(schedule: Schedule) -> ValidationReport:
    """Check round shape, within-round disjointness, and exact-once coverage.

    Returns a report describing the first violation instead of raising, so
    externally supplied schedules can be vetted before use.
    """
    p, p_even = schedule.p, schedule.p_even
    if p_even != p + (p % 2):
        return ValidationReport(False, f"p_even={p_even} does not match p={p}")
    if len(schedule.rounds) != p_even - 1:
        return ValidationReport(
            False,
            f"expected {p_even - 1} rounds, got {len(schedule.rounds)}",
        )
    seen = set()
    for k, rnd in enumerate(schedule.rounds):
        if len(rnd) != p_even // 2:
            return ValidationReport(
                False, f"round {k}: expected {p_even // 2} pairs, got {len(rnd)}"
            )
        used = set()
        for pr in rnd:
            if not (1 <= pr.r < pr.s <= p_even):
                return ValidationReport(
                    False, f"round {k}: pair ({pr.r}, {pr.s}) out of range"
                )
            if pr.r in used or pr.s in used:
                shared = pr.r if pr.r in used else pr.s
                return ValidationReport(
                    False, f"round {k}: index {shared} appears in two pairs"
                )
            used.add(pr.r)
            used.add(pr.s)
            if pr in seen:
                return ValidationReport(
                    False, f"round {k}: pair ({pr.r}, {pr.s}) repeats"
                )
            seen.add(pr)
    expected = {
        IndexPair(r, s)
        for r in range(1, p_even + 1)
        for s in range(r + 1, p_even + 1)
    }
    if seen != expected:
        missing = sorted(expected - seen)[0]
        return ValidationReport(
            False, f"pair ({missing.r}, {missing.s}) is never scheduled"
        )
    active = {
        pr
        for k in range(len(schedule.rounds))
        for pr in schedule.active_pairs(k)
    }
    expected_active = {
        IndexPair(r, s) for r in range(1, p + 1) for s in range(r + 1, p + 1)
    }
    if active != expected_active:
        return ValidationReport(False, "phantom filtering breaks real-pair coverage")
    return ValidationReport(True)


def brute_force_chromatic_index(p: int) -> int:
    """Minimum round count for K_p by exhaustive backtracking, for 2 <= p <= 7.

    Colors edges in vertex-major order, restricting each new edge to colors
    already used plus one fresh color (color classes are interchangeable),
    and prunes a branch when some vertex has fewer colors left than
    uncolored incident edges.
    """
    if not 2 <= p <= 7:
        raise DimensionError("exhaustive search is supported for 2 <= p <= 7")
    edges = [(r, s) for r in range(p) for s in range(r + 1, p)]
    remaining = [p - 1] * p  # uncolored incident edges per vertex

    def colorable(k):
        full = (1 << k) - 1
        used = [0] * p  # bitmask of colors present at each vertex

        def extend(idx, max_color):
            if idx == len(edges):
                return True
            r, s = edges[idx]
            avail = full & ~(used[r] | used[s])
            avail &= (1 << min(k, max_color + 1)) - 1
            while avail:
                bit = avail & -avail
                avail ^= bit
                used[r] |= bit
                used[s] |= bit
                remaining[r] -= 1
                remaining[s] -= 1
                feasible = all(
                    k - bin(used[v]).count("1") >= remaining[v] for v in (r, s)
                )
                if feasible and extend(idx + 1, max(max_color, bit.bit_length())):
                    return True
                used[r] ^= bit
                used[s] ^= bit
                remaining[r] += 1
                remaining[s] += 1
            return False

        return extend(0, 0)

    for k in range(p - 1, len(edges) + 1):
        if colorable(k):
            return k
    raise AssertionError("unreachable: |E| colors always suffice")


def format_rounds(schedule: Schedule) -> str:
    """Debug dump: one round per line, pairs as "r-s", phantom pairs with "*"."""
    lines = []
    for rnd in schedule.rounds:
        parts = []
        for pr in rnd:
            mark = "*" if schedule.is_phantom(pr) else ""
            parts.append(f"{pr.r}-{pr.s}{mark}")
        lines.append(" ".join(parts))
    return "\n".join(lines)
