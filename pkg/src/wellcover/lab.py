"""Instance generation and corpus scans.

Scans run the conjecture check (s-partite, well-covered, every maximal
clique of size s => uniformly well-covered) or the full theorem suite over a
deterministic stream of graphs.  Work items are independent and keyed by
stream index, so any number of worker processes yields the same report.
"""

from __future__ import annotations

import os
import random
import signal
import threading
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any, Iterator, Optional, Sequence

from .edge_ring import linear_zero_divisor_witness, edge_ideal, clique_sum_check, theta
from .enumeration import (
    DOMINATION_LIMIT,
    NotUniform,
    enumerate_maximal_cliques,
    enumerate_maximal_independent_sets,
    find_all_clique_covers,
    find_balanced_partition,
    is_uniformly_well_covered,
)
from .errors import SizeLimitError
from .graph import (
    Graph,
    VertexSet,
    is_partition_into_independent_sets,
    members,
    popcount,
    to_mask,
    two_coloring,
)
from .recognition import (
    check_clique_cover_criteria,
    check_complement_domination,
    check_uniform_characterisations,
    has_independent_dominating_set_outside,
    matched_edge_check,
    verify_part_matchings,
)

MODES = (
    "exhaustive-labeled",
    "exhaustive-spartite",
    "exhaustive-bipartite",
    "random-spartite",
    "random-gnp",
)
EXHAUSTIVE_MAX_PAIRS = 28
DEFAULT_TIMEOUT = 5.0
MAX_RECORDED = 25


@dataclass(frozen=True)
class GeneratorConfig:
    mode: str
    n: Optional[int] = None
    parts: tuple[int, ...] = ()
    p: float = 0.5
    seed: int = 0
    count: int = 0

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        if self.mode.endswith("spartite"):
            if not self.parts or any(k < 1 for k in self.parts):
                raise ValueError("s-partite modes need positive part sizes")
            total = sum(self.parts)
            if self.n is not None and self.n != total:
                raise ValueError(f"n={self.n} does not match part sizes summing to {total}")
            object.__setattr__(self, "n", total)
        elif self.n is None:
            raise ValueError(f"mode {self.mode} needs n")
        if not 1 <= self.n <= 64:
            raise ValueError("n must be in 1..64")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("edge probability must lie in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.mode.startswith("random") and self.count < 1:
            raise ValueError("random modes need a positive count")
        if self.mode.startswith("exhaustive") and len(self.candidate_pairs()) > EXHAUSTIVE_MAX_PAIRS:
            raise SizeLimitError(
                f"exhaustive enumeration over {len(self.candidate_pairs())} vertex pairs "
                f"exceeds the limit of {EXHAUSTIVE_MAX_PAIRS}"
            )

    @property
    def s(self) -> Optional[int]:
        return len(self.parts) if self.parts else None

    def partition(self) -> Optional[tuple[VertexSet, ...]]:
        if not self.parts:
            return None
        out, start = [], 0
        for k in self.parts:
            out.append(((1 << k) - 1) << start)
            start += k
        return tuple(out)

    def candidate_pairs(self) -> list[tuple[int, int]]:
        part = self.partition()
        if part is None or self.mode in ("exhaustive-labeled", "random-gnp", "exhaustive-bipartite"):
            return list(combinations(range(self.n), 2))
        owner = {v: i for i, p in enumerate(part) for v in members(p)}
        return [(u, v) for u, v in combinations(range(self.n), 2) if owner[u] != owner[v]]

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["parts"] = list(self.parts)
        return d


@dataclass(frozen=True)
class Instance:
    index: int
    graph: Graph
    partition: Optional[tuple[VertexSet, ...]]


def _from_bits(n: int, pairs: Sequence[tuple[int, int]], bits: int) -> Graph:
    rows = [0] * n
    i = 0
    while bits:
        if bits & 1:
            u, v = pairs[i]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        bits >>= 1
        i += 1
    return Graph(n, tuple(rows))


def all_labeled_bipartite_graphs(n: int) -> list[Graph]:
    """Every labeled bipartite graph on ``n`` vertices, once each, in edge-bitmask order."""
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    seen: set[int] = set()
    for left in range(1 << (n - 1)):
        left = left << 1 | 1  # vertex 0 on the left fixes the colour swap
        cross = [index[(u, v)] for u, v in pairs if (left >> u & 1) != (left >> v & 1)]
        for sub in range(1 << len(cross)):
            bits = 0
            for k, i in enumerate(cross):
                if sub >> k & 1:
                    bits |= 1 << i
            seen.add(bits)
    return [_from_bits(n, pairs, bits) for bits in sorted(seen)]


def _bipartition(g: Graph) -> tuple[VertexSet, ...]:
    left, right = two_coloring(g)
    return tuple(p for p in (left, right) if p)


def generate(config: GeneratorConfig) -> Iterator[Instance]:
    """Deterministic stream of instances for ``config``."""
    n = config.n
    pairs = config.candidate_pairs()
    partition = config.partition()
    if config.mode in ("exhaustive-labeled", "exhaustive-spartite"):
        for bits in range(1 << len(pairs)):
            yield Instance(bits, _from_bits(n, pairs, bits), partition)
    elif config.mode == "exhaustive-bipartite":
        for i, g in enumerate(all_labeled_bipartite_graphs(n)):
            yield Instance(i, g, _bipartition(g))
    else:
        rng = random.Random(config.seed)
        for i in range(config.count):
            bits = 0
            for k in range(len(pairs)):
                if rng.random() < config.p:
                    bits |= 1 << k
            yield Instance(i, _from_bits(n, pairs, bits), partition)


def find_s_partition(g: Graph, s: int) -> Optional[tuple[VertexSet, ...]]:
    """A partition of V(G) into exactly ``s`` non-empty independent sets, or None."""
    if s > g.n:
        return None
    colors = [0] * s

    def assign(v: int, used: int) -> bool:
        if v == g.n:
            return used == s
        if s - used > g.n - v:
            return False
        for c in range(min(used + 1, s)):
            if not colors[c] & g.adj[v]:
                colors[c] |= 1 << v
                if assign(v + 1, max(used, c + 1)):
                    return True
                colors[c] &= ~(1 << v)
        return False

    return tuple(colors) if assign(0, 0) else None


def qualifies_for_conjecture(g: Graph, parts: Sequence[VertexSet]) -> bool:
    """``parts`` is an s-partition, every maximal clique has s vertices and g is well-covered."""
    parts = tuple(to_mask(p) for p in parts)
    if not is_partition_into_independent_sets(g, parts):
        return False
    if {popcount(c) for c in enumerate_maximal_cliques(g)} != {len(parts)}:
        return False
    return enumerate_maximal_independent_sets(g).well_covered


def _graph6(g: Graph) -> str:
    from .formats import serialize_graph6

    return serialize_graph6(g)


def _labels(mask: VertexSet) -> list[int]:
    return [v + 1 for v in members(mask)]


@dataclass
class ScanReport:
    config: dict[str, Any]
    suite: str
    instances_examined: int = 0
    instances_qualifying: int = 0
    instances_qualifying_any_partition: int = 0
    instances_timed_out: int = 0
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)
    wall_time: float = 0.0

    def tally(self, name: str, ok: bool) -> None:
        entry = self.tallies.setdefault(name, {"pass": 0, "fail": 0})
        entry["pass" if ok else "fail"] += 1

    def failures(self, name: str) -> int:
        return self.tallies.get(name, {}).get("fail", 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.suite,
            "config": self.config,
            "instances_examined": self.instances_examined,
            "instances_qualifying": self.instances_qualifying,
            "instances_qualifying_any_partition": self.instances_qualifying_any_partition,
            "instances_timed_out": self.instances_timed_out,
            "tallies": {k: dict(self.tallies[k]) for k in sorted(self.tallies)},
            "counterexamples": self.counterexamples,
            "violations": self.violations,
            "wall_time": self.wall_time,
        }


class InstanceTimeout(Exception):
    pass


def _on_alarm(signum, frame):  # pragma: no cover - only fires on slow instances
    raise InstanceTimeout()


def _run_limited(fn, instance: Instance, timeout: Optional[float]) -> Optional[dict]:
    """Run ``fn(instance)``; None means it exceeded ``timeout`` seconds."""
    use_alarm = (
        timeout is not None
        and timeout > 0
        and hasattr(signal, "setitimer")
        and threading.current_thread() is threading.main_thread()
    )
    if not use_alarm:
        return fn(instance)
    previous = signal.signal(signal.SIGALRM, _on_alarm)
    signal.setitimer(signal.ITIMER_REAL, timeout)
    try:
        return fn(instance)
    except InstanceTimeout:
        return None
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def _conjecture_item(inst: Instance) -> dict[str, Any]:
    g = inst.graph
    out: dict[str, Any] = {"tallies": [], "qualifying": False, "qualifying_any": False}
    clique_sizes = {popcount(c) for c in enumerate_maximal_cliques(g)}
    if len(clique_sizes) != 1:
        return out
    s = clique_sizes.pop()
    report = enumerate_maximal_independent_sets(g)
    if not report.well_covered:
        return out
    generating = None
    if inst.partition is not None and len(inst.partition) == s:
        if is_partition_into_independent_sets(g, inst.partition):
            generating = inst.partition
    found = generating or find_s_partition(g, s)
    out["qualifying"] = generating is not None if inst.partition is not None else found is not None
    out["qualifying_any"] = found is not None
    if found is None:
        return out

    cert = is_uniformly_well_covered(g)
    balanced = find_balanced_partition(g, report)
    out["tallies"].append(("dominator_search_matches_definition", cert.verdict == (balanced is not None)))
    out["tallies"].append(("conjecture", cert.verdict))
    matchings = verify_part_matchings(g, found)
    out["tallies"].append(("part_matchings", matchings.applicable and matchings.holds))
    if not cert.verdict:
        out["counterexample"] = {
            "index": inst.index,
            "n": g.n,
            "graph6": _graph6(g),
            "edges": [[u + 1, v + 1] for u, v in g.edges()],
            "partition": [_labels(p) for p in found],
            "certificate": {
                "reason": cert.reason,
                "cover": [_labels(p) for p in cert.cover] if cert.cover else None,
                "part_index": None if cert.clique_index is None else cert.clique_index + 1,
                "witness": _labels(cert.witness) if cert.witness is not None else None,
            },
        }
    return out


def _violation(name: str, inst: Instance, detail: str) -> dict[str, Any]:
    g = inst.graph
    return {
        "property": name,
        "index": inst.index,
        "n": g.n,
        "graph6": _graph6(g),
        "edges": [[u + 1, v + 1] for u, v in g.edges()],
        "detail": detail,
    }


def _theorem_item(inst: Instance) -> dict[str, Any]:
    g = inst.graph
    checks: list[tuple[str, bool, str]] = []
    report = enumerate_maximal_independent_sets(g)
    cliques = enumerate_maximal_cliques(g)
    ideal = edge_ideal(g)

    cert = is_uniformly_well_covered(g)
    balanced = find_balanced_partition(g, report)
    checks.append(("dominator_search_matches_definition", cert.verdict == (balanced is not None), ""))

    for cover in find_all_clique_covers(g, cliques):
        if len(cover) not in report.sizes:
            continue
        label = ";".join(",".join(map(str, _labels(p))) for p in cover)
        criteria = check_clique_cover_criteria(g, cover, report)
        checks.append(("clique_cover_criteria", criteria.agree, f"cover {label}: {criteria.verdicts}"))
        sums = clique_sum_check(g, cover)
        checks.append(
            ("clique_sums_regular", sums.verdict == report.well_covered
             and sums.verdict == criteria.verdicts["no_independent_dominator"], f"cover {label}")
        )
        same = all(
            has_independent_dominating_set_outside(g, part)
            == linear_zero_divisor_witness(theta(g, cover, i), ideal)
            for i, part in enumerate(cover)
        )
        checks.append(("witness_bridge", same, f"cover {label}"))
        if g.n <= DOMINATION_LIMIT:
            cdom = check_complement_domination(g, cover)
            checks.append(("complement_domination", cdom.agree, f"cover {label}: {cdom.verdicts}"))

    if g.n <= DOMINATION_LIMIT:
        for s in sorted(report.sizes):
            chars = check_uniform_characterisations(g, s)
            if not chars.applicable:
                continue
            v = chars.verdicts
            core = {
                v["well_covered_with_cover"],
                v["cover_without_independent_dominator"],
                v["uniformly_well_covered"],
            }
            checks.append(("uniform_characterisations_core", len(core) == 1, f"s={s}: {v}"))
            checks.append(("uniform_characterisations", chars.agree, f"s={s}: {v}"))

    edges = matched_edge_check(g)
    if edges.applicable:
        checks.append(("matched_edges", edges.verdict == report.well_covered, f"matching {edges.matching}"))

    clique_sizes = {popcount(c) for c in cliques}
    if len(clique_sizes) == 1 and report.well_covered:
        s = next(iter(clique_sizes))
        parts = inst.partition if inst.partition and len(inst.partition) == s else None
        if parts is None or not is_partition_into_independent_sets(g, parts):
            parts = find_s_partition(g, s)
        if parts is not None:
            matchings = verify_part_matchings(g, parts)
            checks.append(("part_matchings", matchings.applicable and matchings.holds, f"parts {matchings.part_sizes}"))
    return {"checks": checks}


def _resolve_timeout(timeout: Optional[float]) -> Optional[float]:
    if timeout is not None:
        return timeout
    env = os.environ.get("WELLCOVER_TIMEOUT_SECS")
    return float(env) if env else DEFAULT_TIMEOUT


class _Task:
    """Picklable wrapper applying the per-instance timeout inside workers."""

    def __init__(self, fn, timeout):
        self.fn, self.timeout = fn, timeout

    def __call__(self, inst: Instance):
        return inst, _run_limited(self.fn, inst, self.timeout)


def _run(config: GeneratorConfig, fn, workers: int, timeout: Optional[float]):
    task = _Task(fn, _resolve_timeout(timeout))
    stream = generate(config)
    if workers <= 1:
        yield from map(task, stream)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(task, stream, chunksize=64)


def conjecture_scan(
    config: GeneratorConfig, workers: int = 1, timeout: Optional[float] = None
) -> ScanReport:
    """Look for s-partite well-covered graphs with all maximal cliques of
    size s that are not uniformly well-covered.  Reports, never asserts."""
    start = time.perf_counter()
    report = ScanReport(config.to_dict(), "conjecture")
    for inst, result in _run(config, _conjecture_item, workers, timeout):
        report.instances_examined += 1
        if result is None:
            report.instances_timed_out += 1
            continue
        report.instances_qualifying += result["qualifying"]
        report.instances_qualifying_any_partition += result["qualifying_any"]
        for name, ok in result["tallies"]:
            report.tally(name, ok)
        if result.get("counterexample"):
            report.counterexamples.append(result["counterexample"])
    report.wall_time = round(time.perf_counter() - start, 3)
    return report


def theorem_corpus_check(
    config: GeneratorConfig, workers: int = 1, timeout: Optional[float] = None
) -> ScanReport:
    """Run every recognition criterion on each instance and tally agreement.

    A failed property is recorded as a violation with the graph that
    produced it; per property the first few are kept, smallest graphs first.
    """
    start = time.perf_counter()
    report = ScanReport(config.to_dict(), "theorems")
    kept: dict[str, list[dict[str, Any]]] = {}
    for inst, result in _run(config, _theorem_item, workers, timeout):
        report.instances_examined += 1
        if result is None:
            report.instances_timed_out += 1
            continue
        for name, ok, detail in result["checks"]:
            report.tally(name, ok)
            if not ok:
                kept.setdefault(name, []).append(_violation(name, inst, detail))
    for name in sorted(kept):
        entries = sorted(kept[name], key=lambda v: (v["n"], len(v["edges"]), v["index"]))
        report.violations.extend(entries[:MAX_RECORDED])
    report.wall_time = round(time.perf_counter() - start, 3)
    return report


def reverify_counterexample(entry: dict[str, Any]) -> bool:
    """Re-run the conjecture check from a serialized counterexample alone."""
    from .formats import parse_graph6

    g = parse_graph6(entry["graph6"])
    parts = [to_mask(v - 1 for v in part) for part in entry["partition"]]
    return (
        qualifies_for_conjecture(g, parts)
        and isinstance(is_uniformly_well_covered(g), NotUniform)
        and find_balanced_partition(g) is None
    )


def reverify_violation(entry: dict[str, Any]) -> bool:
    """Re-run the named property on the serialized graph; True when it still fails."""
    from .formats import parse_graph6

    g = parse_graph6(entry["graph6"])
    inst = Instance(entry["index"], g, None)
    result = _theorem_item(inst)
    return any(name == entry["property"] and not ok for name, ok, _ in result["checks"])
