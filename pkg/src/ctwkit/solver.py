"""Deterministic anytime exact solver.

Depth-first branch-and-bound over prefix extensions of the tour. A search
node is a prefix that breaks no hard constraint so far; children are the
jobs that may legally take the next position. Pruning uses a committed-cost
lower bound: the part of each criterion that every completion of the prefix
must already pay.

Propagation baked into candidate generation:

* a job is placeable only once all of its hard atomic predecessors are
  placed;
* placing a job must not falsify both sides of any disjunction (a disjunct
  dies the moment its 'after' job is placed while its 'before' job is not);
* when the job just placed carries a direct successor constraint and its
  partner is still open, the partner is the only legal next job.

The search is deterministic for a fixed instance and configuration; wall
clock only decides when a limited run stops, never which branch comes
first.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .costs import CostBreakdown, breakdown
from .model import Instance, Permutation, validate
from .polycases import unsat_precheck

logger = logging.getLogger(__name__)

_TIME_CHECK_MASK = 1023  # timer polled every 1024 placements


class ResultState(Enum):
    OPTIMAL = "optimal"
    SUBOPTIMAL = "suboptimal"
    UNSATISFIABLE = "unsatisfiable"
    UNSOLVED = "unsolved"
    UNDEFINED = "undefined"  # never produced by a solve; audits of external solutions only


@dataclass(frozen=True)
class SolverConfig:
    """Limits and knobs for one solve call.

    ``heuristic_dive`` is kept for configuration compatibility: the
    depth-first order already descends greedily to a first incumbent, so
    the flag changes nothing for this engine. ``seed`` likewise has no
    effect on the deterministic search and is recorded for reproducibility
    of surrounding tooling.
    """

    time_limit_ms: int = 300_000
    seed: int = 0
    node_limit: int | None = None
    heuristic_dive: bool = True
    log_every_nodes: int | None = None

    def __post_init__(self):
        if self.time_limit_ms <= 0:
            raise ValueError("time_limit_ms must be positive")
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive when given")


@dataclass(frozen=True)
class SolveStats:
    """``proven_lower_bound`` is the strongest bound established for the
    whole instance: the optimum on completed runs, None when unsatisfiable,
    and for interrupted runs the weakest open subtree bound (depth-first
    search proves little globally until it exhausts)."""

    nodes_expanded: int
    time_ms: int
    proven_lower_bound: int | None


@dataclass(frozen=True)
class SolveResult:
    state: ResultState
    best: tuple[Permutation, CostBreakdown] | None
    stats: SolveStats


class SearchState:
    """Incremental prefix state with do/undo placement.

    Tracks, per prefix, the committed part of each criterion:

    * S: pairs already closed with a gap, plus open pairs whose placed end
      is no longer last (their partner can never be adjacent anymore);
    * M: the storage load at each placed position is already final, so the
      running maximum is exact on the prefix;
    * L: gaps of closed pairs, and for open pairs the distance from their
      placed end to the current last position;
    * N: soft constraints violated for sure (the 'after' job placed while
      the 'before' job is not, or both placed in the wrong order).

    At a full prefix the committed values equal the exact criteria, so the
    bound of a leaf is its objective.
    """

    def __init__(self, inst: Instance):
        self.inst = inst
        k = inst.k
        b = inst.b
        self.k = k
        self.b = b
        self.two_sided = 2 * b
        self.pos = [0] * (k + 1)
        self.prefix: list[int] = []

        preds: list[list[int]] = [[] for _ in range(k + 1)]
        succs: list[list[int]] = [[] for _ in range(k + 1)]
        for i, j in inst.atomic:
            preds[j].append(i)
            succs[i].append(j)
        self.npreds = [len(p) for p in preds]
        self.succs = succs
        self.pred_placed = [0] * (k + 1)

        self.ds = frozenset(inst.direct_successors)

        self.disjuncts = [d.disjuncts() for d in inst.disjunctive]
        self.dstate = [[0, 0] for _ in inst.disjunctive]  # 0 open, 1 true, -1 false
        by_before: dict[int, list[tuple[int, int]]] = {}
        by_after: dict[int, list[tuple[int, int]]] = {}
        for idx, (d1, d2) in enumerate(self.disjuncts):
            for slot, (a, c) in enumerate((d1, d2)):
                by_before.setdefault(a, []).append((idx, slot))
                by_after.setdefault(c, []).append((idx, slot))
        self.by_before = by_before
        self.by_after = by_after

        soft_before_of: dict[int, list[int]] = {}
        for i, j in inst.soft_atomic:
            soft_before_of.setdefault(j, []).append(i)
        self.soft_before_of = soft_before_of

        self.open_pos: dict[int, int] = {}  # pair start -> position of its placed end
        self.closed_s = 0
        self.closed_l = 0
        self.m_committed = 0
        self.n_committed = 0
        # disjuncts whose alternative died: now mandatory precedences, both
        # endpoints unplaced at creation time
        self.forced: list[tuple[int, int]] = []
        self._undo: list[tuple] = []

    @classmethod
    def from_prefix(cls, inst: Instance, prefix: Sequence[int]) -> "SearchState":
        """Replay a consistent prefix (no legality re-checking)."""
        st = cls(inst)
        for job in prefix:
            st.place(job)
        return st

    # -- placement ---------------------------------------------------------

    def place(self, c: int):
        t1 = len(self.prefix) + 1
        open_before = len(self.open_pos)
        closed_rec = None
        opened = 0
        prev_s, prev_l, prev_m = self.closed_s, self.closed_l, self.m_committed
        if c <= self.two_sided:
            pair = c if c <= self.b else c - self.b
            if pair in self.open_pos:
                q = self.open_pos.pop(pair)
                closed_rec = (pair, q)
                gap = t1 - q
                if gap > 1:
                    self.closed_s += 1
                if gap - 1 > self.closed_l:
                    self.closed_l = gap - 1
            else:
                self.open_pos[pair] = t1
                opened = pair
        spans_here = open_before - (1 if closed_rec else 0)
        if spans_here > self.m_committed:
            self.m_committed = spans_here

        n_delta = 0
        for i in self.soft_before_of.get(c, ()):
            if self.pos[i] == 0:
                n_delta += 1
        self.n_committed += n_delta

        self.pos[c] = t1
        self.prefix.append(c)
        for s in self.succs[c]:
            self.pred_placed[s] += 1

        transitions = []
        forced_added = 0
        for idx, slot in self.by_before.get(c, ()):
            st = self.dstate[idx]
            if st[slot] == 0 and self.pos[self.disjuncts[idx][slot][1]] == 0:
                st[slot] = 1
                transitions.append((idx, slot))
        for idx, slot in self.by_after.get(c, ()):
            st = self.dstate[idx]
            if st[slot] == 0 and self.pos[self.disjuncts[idx][slot][0]] == 0:
                st[slot] = -1
                transitions.append((idx, slot))
                if st[1 - slot] == 0:  # the survivor is now mandatory
                    self.forced.append(self.disjuncts[idx][1 - slot])
                    forced_added += 1

        self._undo.append(
            (c, prev_s, prev_l, prev_m, n_delta, opened, closed_rec, transitions,
             forced_added)
        )
        return forced_added

    def unplace(self):
        (c, prev_s, prev_l, prev_m, n_delta, opened, closed_rec, transitions,
         forced_added) = self._undo.pop()
        if forced_added:
            del self.forced[-forced_added:]
        for idx, slot in transitions:
            self.dstate[idx][slot] = 0
        for s in self.succs[c]:
            self.pred_placed[s] -= 1
        self.prefix.pop()
        self.pos[c] = 0
        self.n_committed -= n_delta
        self.closed_s, self.closed_l, self.m_committed = prev_s, prev_l, prev_m
        if closed_rec is not None:
            pair, q = closed_rec
            self.open_pos[pair] = q
        elif opened:
            del self.open_pos[opened]

    def forced_cycle(self) -> bool:
        """True when mandatory precedences over the unplaced jobs conflict.

        Atomic edges plus disjunction survivors, restricted to unplaced
        jobs; a cycle there means no completion of this prefix can be
        valid. Called only after placements that created forced edges.
        """
        pos = self.pos
        indeg = {}
        out: dict[int, list[int]] = {}
        edges = 0
        for a, b in self.inst.atomic:
            if pos[a] == 0 and pos[b] == 0:
                out.setdefault(a, []).append(b)
                indeg[b] = indeg.get(b, 0) + 1
                edges += 1
        for a, b in self.forced:
            if pos[a] == 0 and pos[b] == 0:
                out.setdefault(a, []).append(b)
                indeg[b] = indeg.get(b, 0) + 1
                edges += 1
        if not edges:
            return False
        ready = [v for v in out if v not in indeg]
        involved = set(out)
        involved.update(indeg)
        done = 0
        while ready:
            v = ready.pop()
            done += 1
            for w in out.get(v, ()):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return done < len(involved)

    # -- candidate generation ----------------------------------------------

    def _legal(self, c: int) -> bool:
        if self.pred_placed[c] < self.npreds[c]:
            return False
        for idx, slot in self.by_after.get(c, ()):
            st = self.dstate[idx]
            if st[slot] != 0:
                continue
            # this undecided disjunct dies when c is placed
            oslot = 1 - slot
            other = st[oslot]
            if other == -1:
                return False
            if other == 0 and self.disjuncts[idx][oslot][1] == c:
                return False
        return True

    def extend_candidates(self) -> list[int]:
        """Legal next jobs, strongest branch first; empty at leaves/dead ends.

        Order: a partner forced by a direct successor constraint; else the
        unplaced end of the most recently opened pair; else jobs with the
        most unplaced hard successors (they need room after them), ties by
        ascending id.
        """
        t = len(self.prefix)
        if t == self.k:
            return []
        pos = self.pos
        if t:
            last = self.prefix[-1]
            if last in self.ds:
                p = last + self.b if last <= self.b else last - self.b
                if pos[p] == 0:
                    return [p] if self._legal(p) else []
        legal = [c for c in range(1, self.k + 1) if pos[c] == 0 and self._legal(c)]
        head: list[int] = []
        if self.open_pos:
            freshest = max(self.open_pos, key=self.open_pos.__getitem__)
            unplaced_end = freshest if pos[freshest] == 0 else freshest + self.b
            if pos[unplaced_end] == 0 and unplaced_end in legal:
                head.append(unplaced_end)
                legal.remove(unplaced_end)

        def urgency(c: int) -> tuple[int, int]:
            waiting = 0
            for s in self.succs[c]:
                if pos[s] == 0:
                    waiting += 1
            return (-waiting, c)

        legal.sort(key=urgency)
        return head + legal

    # -- bounding ------------------------------------------------------------

    def lower_bound(self) -> int:
        """Objective that every valid completion of this prefix must reach."""
        t = len(self.prefix)
        open_count = len(self.open_pos)
        s_c = self.closed_s + open_count
        if open_count and t:
            last = self.prefix[-1]
            if last <= self.two_sided:
                pair = last if last <= self.b else last - self.b
                if pair in self.open_pos:
                    s_c -= 1  # the last job's pair can still close adjacently
        l_c = self.closed_l
        if open_count:
            stretch = t - min(self.open_pos.values())
            if stretch > l_c:
                l_c = stretch
        k = self.k
        return k * (k * (k * s_c + self.m_committed) + l_c) + self.n_committed


def solve(inst: Instance, cfg: SolverConfig | None = None) -> SolveResult:
    """Exact anytime solve; limits yield SUBOPTIMAL/UNSOLVED, never errors.

    UNSATISFIABLE is reported only after the whole tree is exhausted (or a
    hard precedence cycle is found up front). ``stats.nodes_expanded``
    counts states whose candidate list was generated.
    """
    if cfg is None:
        cfg = SolverConfig()
    start = time.monotonic()
    deadline = start + cfg.time_limit_ms / 1000.0

    def elapsed_ms() -> int:
        return int((time.monotonic() - start) * 1000)

    cert = unsat_precheck(inst)
    if cert is not None:
        return SolveResult(
            ResultState.UNSATISFIABLE, None, SolveStats(0, elapsed_ms(), None)
        )

    k = inst.k
    if k == 0:
        perm = Permutation(())
        return SolveResult(
            ResultState.OPTIMAL,
            (perm, breakdown(inst, perm)),
            SolveStats(1, elapsed_ms(), 0),
        )

    state = SearchState(inst)
    best_tour: tuple[int, ...] | None = None
    best_bd: CostBreakdown | None = None
    frames: list[list] = [[state.lower_bound(), state.extend_candidates(), 0]]
    nodes = 1
    placements = 0
    interrupted = False

    while frames:
        frame = frames[-1]
        cands = frame[1]
        if frame[2] >= len(cands):
            frames.pop()
            if frames:
                state.unplace()
            continue
        c = cands[frame[2]]
        frame[2] += 1

        placements += 1
        if placements & _TIME_CHECK_MASK == 0 and time.monotonic() > deadline:
            interrupted = True
            break

        forced_new = state.place(c)
        if forced_new and state.forced_cycle():
            state.unplace()
            continue
        clb = state.lower_bound()
        if best_bd is not None and clb >= best_bd.objective:
            state.unplace()
            continue
        if len(state.prefix) == k:
            perm = Permutation(tuple(state.prefix))
            bd = breakdown(inst, perm)
            assert bd.objective == clb, "committed cost disagrees with recomputation"
            assert not validate(inst, perm), "propagation admitted an invalid leaf"
            if best_bd is None or bd.objective < best_bd.objective:
                best_tour, best_bd = perm.tour, bd
                if cfg.log_every_nodes:
                    logger.info(
                        "incumbent %d after %d nodes", bd.objective, nodes
                    )
            state.unplace()
            continue
        if cfg.node_limit is not None and nodes >= cfg.node_limit:
            interrupted = True
            break
        frames.append([clb, state.extend_candidates(), 0])
        nodes += 1
        if cfg.log_every_nodes and nodes % cfg.log_every_nodes == 0:
            logger.info(
                "%d nodes, depth %d, incumbent %s",
                nodes,
                len(state.prefix),
                best_bd.objective if best_bd else "-",
            )

    if interrupted:
        open_lbs = [f[0] for f in frames]
        if best_bd is not None:
            proven = min(open_lbs + [best_bd.objective])
            perm = Permutation(best_tour)
            return SolveResult(
                ResultState.SUBOPTIMAL,
                (perm, best_bd),
                SolveStats(nodes, elapsed_ms(), proven),
            )
        return SolveResult(
            ResultState.UNSOLVED,
            None,
            SolveStats(nodes, elapsed_ms(), min(open_lbs) if open_lbs else 0),
        )
    if best_bd is not None:
        return SolveResult(
            ResultState.OPTIMAL,
            (Permutation(best_tour), best_bd),
            SolveStats(nodes, elapsed_ms(), best_bd.objective),
        )
    return SolveResult(ResultState.UNSATISFIABLE, None, SolveStats(nodes, elapsed_ms(), None))
