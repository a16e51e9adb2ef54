"""Lower-bound search for the W-intersection numbers: the randomized
greedy extension heuristic and an exact branch-and-bound oracle for tiny
instances.

Symbol note: here t = k - d/2 (the extension dimension), unlike the
counting lemma's t = k - d/2 + 1 used in the bounds module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .bounds import BoundTable, bq_upper_lp, close_lower, seed_table
from .constructions import BqInstance, _as_field, build_best, check_w_intersections, w_span
from .gf import GF
from .matrix import matrix_from_rows
from .qfunc import count_intersecting
from .subspace import (
    BudgetError,
    Code,
    Subspace,
    distance_at_least,
    embed,
    enumerate_subspaces,
    join,
    make_code,
    subspace_from_rref,
    verify_min_distance,
)

E_STREAM_BUDGET = 200_000  # materialize-and-shuffle limit for candidate pools
E_SAMPLE_CAP = 2_000  # random draws per slot when the pool is too big to hold


def count_candidates(q: int, v1: int, v2: int, k: int, min_dim: int) -> int:
    """Number of k-spaces of F_q^v1 meeting W in dimension >= min_dim."""
    return sum(
        count_intersecting(v1, v2, k, i, q) for i in range(min_dim, min(k, v2) + 1)
    )


def enumerate_w_intersecting(field: GF, v1: int, v2: int, k: int, min_dim: int):
    """Yield every k-space with dim(U ∩ W) >= min_dim, W = last v2 coords.

    Parametrized by (S = U ∩ W, the projection of U onto the first block,
    and the W-components of the lifted rows), which assembles directly
    into reduced matrices."""
    first = v1 - v2
    q = field.q
    for i in range(min_dim, min(k, v2) + 1):
        for s in enumerate_subspaces(field, v2, i):
            s_rows = [[0] * first + list(s.mat.row(r)) for r in range(i)]
            _, s_piv = _pivots_of(s)
            free_cols = [first + c for c in range(v2) if c not in s_piv]
            nfree = len(free_cols)
            for x in enumerate_subspaces(field, first, k - i):
                x_rows = [list(x.mat.row(r)) for r in range(k - i)]
                for assign in itertools.product(range(q), repeat=nfree * (k - i)):
                    rows = []
                    for r in range(k - i):
                        row = x_rows[r] + [0] * v2
                        for c, val in zip(free_cols, assign[r * nfree : (r + 1) * nfree]):
                            row[c] = val
                        rows.append(row)
                    rows += s_rows
                    yield subspace_from_rref(matrix_from_rows(field, rows, v1))


def _pivots_of(s: Subspace) -> tuple:
    from .matrix import rref

    return rref(s.mat)


# ---------------------------------------------------------------------------
# the greedy extension heuristic
# ---------------------------------------------------------------------------


class _TrivialFreePool:
    """The t-spaces of V meeting W trivially, streamed in seeded random
    order without replacement (per outer t-space slot)."""

    def __init__(self, field: GF, v1: int, v2: int, t: int, rng: random.Random):
        self.field = field
        self.v1, self.v2, self.t = v1, v2, t
        q = field.q
        first = v1 - v2
        self.piv_sets = list(itertools.combinations(range(first), t))
        self.block_sizes = []
        for piv in self.piv_sets:
            # free cells: right of the pivot, in non-pivot columns (W block included)
            nfree = sum(v1 - p - 1 - sum(1 for pp in piv if pp > p) for p in piv)
            self.block_sizes.append(q**nfree)
        self.total = sum(self.block_sizes)
        self.rng = rng
        if self.total <= E_STREAM_BUDGET:
            self.order = list(range(self.total))
            rng.shuffle(self.order)
        else:
            self.order = None
        self.cursor = 0
        self.removed: set[int] = set()
        self.sampled: set[int] = set()

    def _matrix_at(self, index: int) -> Subspace:
        q = self.field.q
        first = self.v1 - self.v2
        for piv, size in zip(self.piv_sets, self.block_sizes):
            if index >= size:
                index -= size
                continue
            pivset = set(piv)
            rows = [[0] * self.v1 for _ in range(self.t)]
            for r, p in enumerate(piv):
                rows[r][p] = 1
            cells = [
                (r, c)
                for r in range(self.t)
                for c in range(piv[r] + 1, self.v1)
                if c not in pivset
            ]
            for r, c in cells:
                rows[r][c] = index % q
                index //= q
            return subspace_from_rref(matrix_from_rows(self.field, rows, self.v1))
        raise IndexError

    def draw(self) -> Subspace | None:
        """Next unremoved candidate, or None when the pool is exhausted."""
        if self.order is not None:
            while self.cursor < self.total:
                idx = self.order[self.cursor]
                self.cursor += 1
                if idx in self.removed:
                    continue
                self.last = idx
                return self._matrix_at(idx)
            return None
        # astronomically large pool: sample without replacement, capped
        tries = 0
        while tries < E_SAMPLE_CAP:
            idx = self.rng.randrange(self.total)
            if idx in self.removed or idx in self.sampled:
                tries += 1
                continue
            self.sampled.add(idx)
            self.last = idx
            return self._matrix_at(idx)
        return None

    def remove_last(self) -> None:
        self.removed.add(self.last)


@dataclass
class HeuristicState:
    """One restart's bookkeeping for the greedy extension."""

    instance: BqInstance
    base: list[Subspace]
    assigned: dict[int, Subspace] = dc_field(default_factory=dict)
    failed: set[int] = dc_field(default_factory=set)
    retry_skips: int = 0


def _run_once(
    field: GF, v1: int, v2: int, d: int, k: int, base: list[Subspace], rng: random.Random
) -> HeuristicState:
    t = k - d // 2
    inst = BqInstance(field, v1, v2, d, k)
    state = HeuristicState(inst, base)
    t_spaces = [embed(s, v1, v1 - v2) for s in enumerate_subspaces(field, v2, t)]
    rng.shuffle(t_spaces)
    pools = {i: _TrivialFreePool(field, v1, v2, t, rng) for i in range(len(t_spaces))}
    containing = {}
    for ti, tsp in enumerate(t_spaces):
        members = [ui for ui, u in enumerate(base) if _contains(u, tsp)]
        rng.shuffle(members)
        containing[ti] = members
    current: list[Subspace] = []
    for ti in range(len(t_spaces)):
        pool = pools[ti]
        for ui in containing[ti]:
            if ui in state.assigned:
                continue
            if ui in state.failed:
                state.retry_skips += 1
                continue
            while True:
                cand = pool.draw()
                if cand is None:
                    state.failed.add(ui)
                    break
                c = join(base[ui], cand)
                if c.dim != k:
                    pool.remove_last()
                    continue
                if all(distance_at_least(c, other, d) for other in current):
                    state.assigned[ui] = c
                    current.append(c)
                    break
                pool.remove_last()
    return state


def _contains(u: Subspace, t: Subspace) -> bool:
    from .subspace import intersection_dim

    return intersection_dim(u, t) == t.dim


def heuristic_bq(
    q_or_field,
    v1: int,
    v2: int,
    d: int,
    k: int,
    seed: int = 0,
    restarts: int = 20,
    base_code: Code | None = None,
) -> tuple[Code, dict]:
    """The greedy extension heuristic: extend each member of a
    (v2, *, 2d-2k; d/2) code in W by a (k-d/2)-space meeting W trivially,
    keeping extensions at pairwise distance >= d.

    Deterministic given the seed; the best of `restarts` randomized
    orderings is returned together with a JSON-ready report.
    """
    field = _as_field(q_or_field)
    if not k < d:
        raise ValueError("the heuristic's regime is k < d")
    inst = BqInstance(field, v1, v2, d, k)
    if inst.is_trivial():
        raise ValueError("trivial parameters")
    if base_code is None:
        base_code = build_best(field, v2, 2 * d - 2 * k, d // 2)
    t = k - d // 2
    prov = f"heuristic_bq({field.q},{v1},{v2},{d},{k};seed={seed})"
    if t == 0:
        words = [embed(u, v1, v1 - v2) for u in base_code.ordered()]
        code = Code(field, v1, k, d, frozenset(words), prov, bq_v2=v2)
        report = _report(code, inst, base_code.size, seed, restarts, 0)
        return code, report
    base_words = [embed(u, v1, v1 - v2) for u in base_code.ordered()]
    best_state: HeuristicState | None = None
    retry_total = 0
    for r in range(restarts):
        rng = random.Random(f"{seed}:{r}")
        state = _run_once(field, v1, v2, d, k, base_words, rng)
        retry_total += state.retry_skips
        if best_state is None or len(state.assigned) > len(best_state.assigned):
            best_state = state
    code = Code(
        field, v1, k, d, frozenset(best_state.assigned.values()), prov, bq_v2=v2
    )
    report = _report(code, inst, base_code.size, seed, restarts, retry_total)
    return code, report


def _report(code: Code, inst: BqInstance, base_size: int, seed, restarts, retry_skips) -> dict:
    ok_d, _ = verify_min_distance(code)
    ok_w, _ = check_w_intersections(code, inst.v2, inst.d // 2)
    return {
        "instance": {
            "q": inst.field.q,
            "v1": inst.v1,
            "v2": inst.v2,
            "d": inst.d,
            "k": inst.k,
        },
        "reached": code.size,
        "target": base_size,  # the structural cap #F; experiments override
        "gap": base_size - code.size,
        "seed": seed,
        "restarts": restarts,
        "retry_skips": retry_skips,
        "verified": bool(ok_d and ok_w),
    }


# ---------------------------------------------------------------------------
# exact oracle
# ---------------------------------------------------------------------------


@dataclass
class ExactBqResult:
    lower: int
    upper: int
    exact: bool
    witness: Code | None

    @property
    def value(self) -> int:
        if not self.exact:
            raise BudgetError(f"only the interval [{self.lower}, {self.upper}] is known")
        return self.lower


def max_clique(adj: list[int]) -> list[int]:
    """Exact maximum clique by branch and bound with greedy-coloring
    pruning; adjacency as vertex bitsets."""
    n = len(adj)
    best: list[int] = []

    def color_sort(p: int) -> list[tuple[int, int]]:
        order = []
        color = 0
        rest = p
        while rest:
            color += 1
            avail = rest
            while avail:
                v = avail.bit_length() - 1
                avail &= ~(1 << v) & ~adj[v]
                rest &= ~(1 << v)
                order.append((v, color))
        return order

    def expand(r: list[int], p: int) -> None:
        nonlocal best
        order = color_sort(p)
        for v, c in reversed(order):
            if len(r) + c <= len(best):
                return
            r.append(v)
            np = p & adj[v]
            if np:
                expand(r, np)
            elif len(r) > len(best):
                best = r[:]
            r.pop()
            p &= ~(1 << v)

    expand([], (1 << n) - 1)
    return best


def exact_bq(
    q_or_field,
    v1: int,
    v2: int,
    d: int,
    k: int,
    budget: int = 3000,
    seed: int = 0,
) -> ExactBqResult:
    """Exact B_q via maximum clique on the compatibility graph of all
    W-intersecting candidates, when the candidate count fits the budget;
    otherwise the interval [greedy-found, LP upper bound]."""
    field = _as_field(q_or_field)
    if bq_trivial_params(v1, v2, d, k):
        return ExactBqResult(0, 0, True, None)
    q = field.q
    n_cand = count_candidates(q, v1, v2, k, d // 2)
    upper = bq_upper_lp(q, v1, v2, d, k)
    if n_cand > budget:
        lower, witness = _greedy_sample(field, v1, v2, d, k, budget, seed)
        return ExactBqResult(lower, upper, False, witness)
    cands = list(enumerate_w_intersecting(field, v1, v2, k, d // 2))
    assert len(cands) == n_cand
    adj = [0] * n_cand
    for i in range(n_cand):
        for j in range(i + 1, n_cand):
            if distance_at_least(cands[i], cands[j], d):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    clique = max_clique(adj)
    words = [cands[i] for i in clique]
    witness = (
        Code(field, v1, k, d, frozenset(words), f"exact_bq({q},{v1},{v2},{d},{k})", bq_v2=v2)
        if words
        else None
    )
    return ExactBqResult(len(clique), len(clique), True, witness)


def bq_trivial_params(v1: int, v2: int, d: int, k: int) -> bool:
    from .bounds import bq_trivial

    return bq_trivial(v1, v2, d, k)


def _greedy_sample(field: GF, v1: int, v2: int, d: int, k: int, budget: int, seed: int):
    """Greedy clique over a sampled candidate subset: a genuine lower bound."""
    rng = random.Random(seed)
    sample: list[Subspace] = []
    for u in enumerate_w_intersecting(field, v1, v2, k, d // 2):
        if len(sample) < budget:
            sample.append(u)
        else:
            break
    rng.shuffle(sample)
    chosen: list[Subspace] = []
    for u in sample:
        if all(distance_at_least(u, c, d) for c in chosen):
            chosen.append(u)
    witness = (
        Code(
            field,
            v1,
            k,
            d,
            frozenset(chosen),
            f"greedy_bq({field.q},{v1},{v2},{d},{k})",
            bq_v2=v2,
        )
        if chosen
        else None
    )
    return len(chosen), witness


# ---------------------------------------------------------------------------
# conjecture experiments
# ---------------------------------------------------------------------------


def conjecture_experiment(
    q: int, k: int, v2: int, v1: int, seed: int = 0, restarts: int = 20
) -> dict:
    """Run the heuristic on the d = 2k - 2 instance and compare against
    the conjectured value A_q(v2, 2k-4; k-1).  Reports only; nothing here
    asserts the conjecture."""
    if not (v1 >= v2 + 2 >= k + 1 and k >= 3):
        raise ValueError("conjecture regime: v1 >= v2 + 2 >= k + 1 and k >= 3")
    d = 2 * k - 2
    table = close_lower(seed_table(q, max(v2, 2)))
    target = table.lower(v2, 2 * k - 4, k - 1)
    code, report = heuristic_bq(q, v1, v2, d, k, seed=seed, restarts=restarts)
    report["target"] = target
    report["gap"] = target - report["reached"]
    return report
