"""Seeded verification campaigns for the amplitude and matrix inequalities.

A campaign walks every isomorphism class of graphs in a size range, samples
configurations from a per-sample seed, and records the smallest real part
and modulus of the amplitude seen on each graph.  Any sample with
``Re A < 1 - tolerance`` is reported as a violation.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import graphs as gr
from .amplitude import METHODS, amplitude, amplitude_frontier, build_spinor_system
from .errors import AmplitudeError, BudgetExceeded, SearchExhausted
from .matrix import Partition, check_conjecture_d, random_partition, random_psd

DEFAULT_TOLERANCE = 1e-9
DISTRIBUTIONS = ("gaussian", "clustered")

_MASK64 = (1 << 64) - 1
SEED_DERIVATION = "splitmix64 chain: h = splitmix64(h ^ k) for k in (master, graph_index, config_index), h0 = 0"


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix_seed(*keys: int) -> int:
    """Deterministic 64-bit seed from a tuple of integers."""
    h = 0
    for k in keys:
        h = _splitmix64(h ^ (int(k) & _MASK64))
    return h


def sample_configuration(n: int, rng: np.random.Generator, distribution: str = "gaussian",
                         cluster_eps: float = 1e-6) -> np.ndarray:
    """``n`` i.i.d. standard normal points; ``clustered`` then pulls one random pair to distance ``cluster_eps``."""
    x = rng.standard_normal((n, 3))
    if distribution == "gaussian" or n < 2:
        return x
    if distribution != "clustered":
        raise ValueError(f"unknown distribution {distribution!r}")
    i, j = rng.choice(n, size=2, replace=False)
    u = rng.standard_normal(3)
    x[j] = x[i] + cluster_eps * u / np.linalg.norm(u)
    return x


@dataclass
class CampaignConfig:
    n_min: int = 3
    n_max: int = 5
    configs_per_graph: int = 10000
    seed: int = 0
    connected_only: bool = True
    point_distribution: str = "gaussian"
    cluster_eps: float = 1e-6
    tolerance: float = DEFAULT_TOLERANCE
    method: str = "auto"

    def __post_init__(self):
        if not 2 <= self.n_min <= self.n_max <= 6:
            raise ValueError("need 2 <= n_min <= n_max <= 6")
        if self.configs_per_graph < 1:
            raise ValueError("configs_per_graph must be positive")
        if self.point_distribution not in DISTRIBUTIONS:
            raise ValueError(f"point_distribution must be one of {DISTRIBUTIONS}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> CampaignConfig:
        return cls(**data)


@dataclass
class GraphReport:
    graph: gr.SimpleGraph
    graph_index: int
    min_re: float = math.inf
    argmin_re_config: list | None = None
    min_abs: float = math.inf
    n_evaluated: int = 0
    violations: list = field(default_factory=list)
    method: str | None = None
    error: str | None = None

    @property
    def kind(self) -> str:
        if self.graph.n >= 2 and gr.is_complete(self.graph):
            return "complete"
        if gr.is_tree(self.graph):
            return "tree"
        return "connected" if gr.is_connected(self.graph) else "disconnected"

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "graph_index": self.graph_index,
            "kind": self.kind,
            "min_re": self.min_re,
            "argmin_re_config": self.argmin_re_config,
            "min_abs": self.min_abs,
            "n_evaluated": self.n_evaluated,
            "violations": self.violations,
            "method": self.method,
            "error": self.error,
        }

    @classmethod
    def from_json(cls, data: dict) -> GraphReport:
        return cls(
            graph=gr.SimpleGraph.from_json(data["graph"]),
            graph_index=data["graph_index"],
            min_re=data["min_re"],
            argmin_re_config=data["argmin_re_config"],
            min_abs=data["min_abs"],
            n_evaluated=data["n_evaluated"],
            violations=data["violations"],
            method=data["method"],
            error=data["error"],
        )


def evaluate_instances(G: gr.SimpleGraph, configs, tolerance: float = DEFAULT_TOLERANCE,
                       method: str = "auto", graph_index: int = 0) -> GraphReport:
    """Aggregate amplitudes of ``G`` over an explicit sequence of configurations."""
    report = GraphReport(G, graph_index)
    try:
        for x in configs:
            _record(report, x, amplitude(G, x, method), tolerance)
    except BudgetExceeded as exc:
        report.error = f"BudgetExceeded: {exc}"
    return report


def _record(report: GraphReport, x, result, tolerance: float):
    value = result.value
    report.method = result.method
    report.n_evaluated += 1
    if value.real < report.min_re:
        report.min_re = value.real
        report.argmin_re_config = np.asarray(x).tolist()
    report.min_abs = min(report.min_abs, abs(value))
    if value.real < 1.0 - tolerance:
        report.violations.append({"config": np.asarray(x).tolist(),
                                  "value_re": value.real, "value_im": value.imag})


def _campaign_graph(args) -> GraphReport:
    cfg, G, gi = args
    report = GraphReport(G, gi)
    try:
        for ci in range(cfg.configs_per_graph):
            rng = np.random.default_rng(mix_seed(cfg.seed, gi, ci))
            x = sample_configuration(G.n, rng, cfg.point_distribution, cfg.cluster_eps)
            _record(report, x, amplitude(G, x, cfg.method), cfg.tolerance)
    except BudgetExceeded as exc:
        report.error = f"BudgetExceeded: {exc}"
    return report


def campaign_graphs(cfg: CampaignConfig) -> list[gr.SimpleGraph]:
    out = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        out.extend(gr.enumerate_nonisomorphic(n, cfg.connected_only))
    return out


def run_campaign(cfg: CampaignConfig, jobs: int = 1, graphs=None) -> list[GraphReport]:
    """Evaluate ``configs_per_graph`` seeded samples on every selected graph.

    The sample for ``(graph_index, config_index)`` depends only on those
    indices and ``cfg.seed``, so reports do not depend on ``jobs``.
    """
    graphs = campaign_graphs(cfg) if graphs is None else list(graphs)
    work = [(cfg, G, gi) for gi, G in enumerate(graphs)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_campaign_graph, work))
    return [_campaign_graph(w) for w in work]


def any_violation(reports) -> bool:
    return any(r.violations for r in reports)


@dataclass
class CounterexampleResult:
    base_graph: gr.SimpleGraph
    base_config: list
    base_value: complex
    theta: float
    M: int
    graph: gr.SimpleGraph
    config: list
    final_value: complex
    final_re: float
    verified_directly: bool

    def to_json(self) -> dict:
        return {
            "base_graph": self.base_graph.to_json(),
            "base_config": {"points": self.base_config},
            "base_value": [self.base_value.real, self.base_value.imag],
            "theta": self.theta,
            "M": self.M,
            "graph": self.graph.to_json(),
            "config": {"points": self.config},
            "final_value": [self.final_value.real, self.final_value.imag],
            "final_re": self.final_re,
            "verified_directly": self.verified_directly,
        }


def find_counterexample(search_seed: int = 0, max_tries: int = 2000, n_max: int = 4,
                        min_imag: float = 1e-6) -> CounterexampleResult:
    """Build a disconnected graph whose amplitude has real part below 1.

    Samples connected graphs on at most ``n_max`` vertices until an amplitude
    with phase ``theta`` in ``(0, pi/2)`` turns up (reflecting the
    configuration flips the sign of the phase).  Taking ``M = ceil(pi / (2
    theta))`` disjoint copies multiplies the phase past ``pi/2``.  Among the
    samples, the largest phase is kept so ``M`` stays small.
    """
    pool = [G for n in range(2, n_max + 1) for G in gr.enumerate_nonisomorphic(n, True)]
    best = None
    for t in range(max_tries):
        rng = np.random.default_rng(mix_seed(search_seed, t))
        G = pool[int(rng.integers(len(pool)))]
        x = sample_configuration(G.n, rng)
        value = amplitude(G, x).value
        if abs(value.imag) <= min_imag or value.real <= 0:
            continue
        if value.imag < 0:
            x, value = -x, value.conjugate()
        theta = math.atan2(value.imag, value.real)
        if not 0 < theta < math.pi / 2:
            continue
        if best is None or theta > best[2]:
            best = (G, x, theta, value)
        if theta >= math.pi / 4:
            break
    if best is None:
        raise SearchExhausted(f"no non-real amplitude in {max_tries} tries")
    G, x, theta, value = best
    M = math.ceil((math.pi / 2) / theta)
    big, big_x = G, x
    for _ in range(M - 1):
        big = gr.disjoint_union(big, G)
        big_x = np.vstack([big_x, x])
    predicted = value**M
    final = predicted
    verified = False
    try:
        final = amplitude_frontier(build_spinor_system(big, big_x)).value
        verified = True
    except BudgetExceeded:
        pass
    return CounterexampleResult(G, x.tolist(), complex(value), theta, M, big, big_x.tolist(),
                                complex(final), float(final.real), verified)


@dataclass
class ConjDReport:
    n: int
    trials: int
    seed: int
    min_margin: float
    min_relative_margin: float
    violations: list
    distribution: str = "gaussian-gram: A = B B^H, B i.i.d. standard complex normal"
    partitions: str = "uniform over set partitions"

    def to_json(self) -> dict:
        return asdict(self)


def run_conjd_campaign(n: int, trials: int, seed: int = 0) -> ConjDReport:
    """Check the partition inequality on seeded random PSD matrices."""
    if not 1 <= n <= 7:
        raise ValueError("n must lie in 1..7")
    min_margin = math.inf
    min_rel = math.inf
    violations = []
    for t in range(trials):
        rng = np.random.default_rng(mix_seed(seed, n, t))
        A = random_psd(n, rng)
        p1, p2 = random_partition(n, rng), random_partition(n, rng)
        verdict = check_conjecture_d(A, p1, p2)
        min_margin = min(min_margin, verdict.margin)
        min_rel = min(min_rel, verdict.margin / max(1.0, verdict.bound))
        if not verdict.holds:
            violations.append({"trial": t, "p1": str(p1), "p2": str(p2), **verdict.to_json()})
    return ConjDReport(n, trials, seed, min_margin, min_rel, violations)


CSV_FIELDS = ["graph_id", "n", "edges", "kind", "min_re", "min_abs", "violations"]


def _summary_rows(reports):
    for r in reports:
        yield {
            "graph_id": r.graph_index,
            "n": r.graph.n,
            "edges": " ".join(f"{i}-{j}" for i, j in r.graph.edges),
            "kind": r.kind,
            "min_re": repr(r.min_re),
            "min_abs": repr(r.min_abs),
            "violations": len(r.violations),
        }


def report_document(reports, config: CampaignConfig | None = None) -> dict:
    return {
        "tool": "graph_amplitude",
        "version": __version__,
        "seed_derivation": SEED_DERIVATION,
        "config": config.to_json() if config is not None else None,
        "any_violation": any_violation(reports),
        "reports": [r.to_json() for r in reports],
    }


def report_dumps(reports, fmt: str = "json", config: CampaignConfig | None = None) -> str:
    if fmt == "json":
        return json.dumps(report_document(reports, config), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        if config is not None:
            buf.write(f"# graph_amplitude {__version__} config={json.dumps(config.to_json(), sort_keys=True)}\n")
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(_summary_rows(reports))
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def report_write(reports, path, fmt: str = "json", config: CampaignConfig | None = None) -> None:
    """Write a full JSON report or a CSV summary (one row per graph)."""
    Path(path).write_text(report_dumps(reports, fmt, config))


def report_read(path) -> tuple[list[GraphReport], CampaignConfig | None]:
    """Read back a JSON report written by :func:`report_write`."""
    doc = json.loads(Path(path).read_text())
    cfg = CampaignConfig.from_json(doc["config"]) if doc.get("config") else None
    return [GraphReport.from_json(r) for r in doc["reports"]], cfg
