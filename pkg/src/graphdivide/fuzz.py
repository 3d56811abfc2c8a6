"""Randomized cross-checks of the tb identities on generated products."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .diagram import build_diagram
from .doubling import double
from .dsl import emit, parse
from .generate import instance_rng, random_product
from .link_invariants import determinant_of, identify, jones, load_reference_table, tb_geometric
from .tangles import (
    DOUBLE,
    IDENTITY,
    TangleProduct,
    assemble_graph,
    count_features,
    euler_from_counts,
    tb_table,
    trace_doubled_components,
    validate_product,
)


@dataclass
class InstanceResult:
    index: int
    dsl: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class FuzzSummary:
    seed: int
    count: int
    results: list[InstanceResult]
    seconds: float

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.results)

    def lines(self):
        yield f"fuzz seed={self.seed}: {self.passed}/{self.count} pass in {self.seconds:.1f}s"
        for r in self.results:
            if not r.ok:
                yield f"FAIL #{r.index} (--seed {self.seed}, instance {r.index}): {r.dsl}"
                for f in r.failures:
                    yield f"    {f}"


def with_extra_double(p: TangleProduct) -> TangleProduct | None:
    """p with one double point column inserted after the widest boundary."""
    counts = p.port_counts()
    best = max(range(1, len(counts) - 1), key=lambda b: counts[b], default=None)
    if best is None or counts[best] < 2:
        return None
    cols = [list(c) for c in p.columns]
    cols.insert(best, [DOUBLE] + [IDENTITY] * (counts[best] - 2))
    return validate_product(cols)


def check_instance(p: TangleProduct, trees_table=None) -> list[str]:
    """Run every identity on p; returns a list of failure descriptions."""
    failures = []
    counts = count_features(p)
    graph = assemble_graph(p)
    chi = euler_from_counts(counts)
    if chi != graph.euler_direct:
        failures.append(f"Euler characteristic: counts {chi}, graph {graph.euler_direct}")
    tb_f = 2 * counts.delta - chi
    tb_t = tb_table(p)
    left = tb_geometric(p, "left")
    right = tb_geometric(p, "right")
    if not tb_f == tb_t == left:
        failures.append(f"tb: formula {tb_f}, table {tb_t}, geometric {left}")
    if left != right:
        failures.append(f"offset side: left {left}, right {right}")
    mu_comb = trace_doubled_components(p)
    mu_geo = len(double(p).curves)
    if mu_comb != mu_geo:
        failures.append(f"components: traced {mu_comb}, geometric {mu_geo}")
    text = emit(p)
    if parse(text) != p or emit(parse(text)) != text:
        failures.append("DSL round trip changed the product")
    q = with_extra_double(p)
    if q is not None:
        cq = count_features(q)
        dq = 2 * cq.delta - euler_from_counts(cq)
        if dq - tb_f != 2 or tb_table(q) - tb_t != 2:
            failures.append(f"inserting a double point changed tb by {dq - tb_f}, not 2")
    if trees_table is not None:
        v = jones(build_diagram(double(p).curves))
        verdict = identify(mu_geo, v, determinant_of(v), trees_table)
        if verdict != "consistent with unknot":
            failures.append(f"embedded tree gave {verdict}")
    return failures


def run_fuzz(seed=42, count=200, max_tangles=12, max_x=6, trees_only=False) -> FuzzSummary:
    table = load_reference_table() if trees_only else None
    start = time.perf_counter()
    results = []
    for i in range(count):
        p = random_product(instance_rng(seed, i), max_tangles=max_tangles, max_x=max_x, trees_only=trees_only)
        r = InstanceResult(i, emit(p))
        try:
            r.failures = check_instance(p, table)
        except Exception as exc:  # every failure must be reported with its input
            r.failures = [f"{type(exc).__name__}: {exc}"]
        results.append(r)
    return FuzzSummary(seed, count, results, time.perf_counter() - start)
