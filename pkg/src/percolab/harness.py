"""Monte Carlo trials over seeded streams, CSV output and the polarity-graph
(K_{2,2}-free) corollary pipeline.

Trial ``i`` of an experiment with master seed ``s`` draws all of its
randomness from ``RngStream(s, i)``, so rows do not depend on how trials are
scheduled across worker processes.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cycles import FOUND, find_long_cycle, theorem3_params
from .dfs import run_dfs, theorem2_params
from .expansion import expansion_profile
from .generators import GeneratorSpec, extract_min_degree_subgraph, generate, polarity_graph
from .graph import Graph, read_edge_list
from .percolation import chernoff_tail
from .rng import RngStream

__all__ = [
    "CSV_COLUMNS",
    "ExperimentConfig",
    "TrialRecord",
    "Summary",
    "load_config",
    "parse_config",
    "run_trial",
    "run_experiment",
    "records_to_csv",
    "corollary_pipeline",
    "sweep",
    "plot_sweep",
]

CSV_COLUMNS = ("trial_id", "family", "n", "k", "d", "eps", "c", "p", "p1", "p2", "seed",
               "path_len", "path_target", "cycle_len", "cycle_target", "g", "n_successful",
               "outcome", "ms")

MODES = ("path-theorem", "cycle-theorem", "corollary")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment.  See :func:`parse_config` for the file format."""

    mode: str
    generator: GeneratorSpec | None = None
    input_file: str | None = None
    k: int | None = None
    d: float | None = None
    eps: float | None = None
    c: float | None = None
    p: float | None = None          # path-theorem only: overrides (1+eps)/d
    budget: int | None = None       # path-theorem only: overrides N1; 0 = unlimited
    q: int | None = None
    K: float | None = None
    samples: int = 200
    cycle_fraction: float = 0.1
    trials: int = 1
    seed: int = 0
    workers: int | None = None
    out: str | None = None
    timing: bool = False
    max_failures: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mode == "corollary":
            if self.q is None or self.K is None or self.eps is None:
                raise ValueError("corollary mode needs q, K and eps")
            return
        if (self.generator is None) == (self.input_file is None):
            raise ValueError("give exactly one of a generator family or an input file")
        if self.mode == "path-theorem":
            missing = [x for x in ("k", "d", "eps") if getattr(self, x) is None]
        else:
            missing = [x for x in ("c", "d", "eps") if getattr(self, x) is None]
        if missing:
            raise ValueError(f"{self.mode} needs {', '.join(missing)}")
        if self.mode == "path-theorem":
            theorem2_params(self.k, int(self.d), self.eps)
        elif not (0 < self.c < 1 and self.d > 0 and 0 < self.eps < 1):
            raise ValueError("cycle-theorem needs 0 < c < 1, d > 0 and 0 < eps < 1")
        if self.p is not None and not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")

    @property
    def family(self) -> str:
        if self.mode == "corollary":
            return "polarity"
        return self.generator.family if self.generator is not None else "file"

    def build_graph(self) -> Graph | None:
        if self.mode == "corollary":
            return None
        if self.generator is not None:
            return generate(self.generator)
        return read_edge_list(self.input_file)


@dataclass
class TrialRecord:
    trial_id: int
    family: str
    n: int
    seed: int
    outcome: str
    k: int | None = None
    d: float | None = None
    eps: float | None = None
    c: float | None = None
    p: float | None = None
    p1: float | None = None
    p2: float | None = None
    n1: int | None = None
    path_len: int | None = None
    path_target: int | None = None
    cycle_len: int | None = None
    cycle_target: int | None = None
    g: int | None = None
    n_successful: int | None = None
    positives: int | None = None
    n2: int | None = None
    success: bool = False
    ms: float | None = None
    extra: dict = field(default_factory=dict)

    def row(self, timing: bool = False) -> list[str]:
        vals = []
        for col in CSV_COLUMNS:
            if col == "ms":
                vals.append(_fmt(self.ms) if timing else "")
            else:
                vals.append(_fmt(getattr(self, col)))
        return vals


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


@dataclass
class Summary:
    mode: str
    trials: int
    successes: int
    errors: int
    success_frequency: float
    band_halfwidth: float | None = None
    band_hits: int | None = None
    band_frequency: float | None = None
    chernoff_bound: float | None = None

    def lines(self) -> list[str]:
        out = [f"mode={self.mode} trials={self.trials} successes={self.successes} "
               f"errors={self.errors} success_frequency={self.success_frequency:.4f}"]
        if self.band_halfwidth is not None:
            out.append(f"chernoff band_halfwidth={self.band_halfwidth:.4f} "
                       f"band_frequency={self.band_frequency:.4f} "
                       f"bound_on_miss={self.chernoff_bound:.4g}")
        return out


def _path_trial(cfg: ExperimentConfig, G: Graph, i: int) -> TrialRecord:
    params = theorem2_params(cfg.k, int(cfg.d), cfg.eps)
    p = params.p if cfg.p is None else cfg.p
    budget = params.n1 if cfg.budget is None else cfg.budget
    trace = run_dfs(G, p, RngStream(cfg.seed, i), query_budget=budget, params=params)
    path_len = trace.max_stack.length
    return TrialRecord(
        trial_id=i, family=cfg.family, n=G.n, seed=cfg.seed,
        outcome="path-ok" if path_len >= params.path_target else "path-short",
        k=cfg.k, d=cfg.d, eps=cfg.eps, p=p, n1=budget,
        path_len=path_len, path_target=params.path_target,
        positives=trace.positive_count, n2=trace.n2,
        success=path_len >= params.path_target,
        extra={"n_queries": trace.n_queries},
    )


def _cycle_trial(cfg: ExperimentConfig, G: Graph, i: int) -> TrialRecord:
    params = theorem3_params(cfg.c, cfg.d, cfg.eps, G.n)
    res = find_long_cycle(G, params, cfg.seed, i)
    return TrialRecord(
        trial_id=i, family=cfg.family, n=G.n, seed=cfg.seed, outcome=res.outcome,
        d=cfg.d, eps=cfg.eps, c=cfg.c, p=params.p, p1=params.p1, p2=params.p2,
        path_len=res.path_length, cycle_len=res.cycle_length,
        cycle_target=params.cycle_target, g=res.g, n_successful=res.n_successful,
        success=res.found and res.cycle_length >= params.cycle_target,
        extra={"r_nominal": params.r_nominal, "r_used": res.r_used},
    )


def run_trial(cfg: ExperimentConfig, G: Graph | None, trial_id: int) -> TrialRecord:
    """Run one trial; module errors become an ``error:`` outcome."""
    t0 = time.perf_counter()
    try:
        if cfg.mode == "path-theorem":
            rec = _path_trial(cfg, G, trial_id)
        elif cfg.mode == "cycle-theorem":
            rec = _cycle_trial(cfg, G, trial_id)
        else:
            rec = corollary_pipeline(cfg.q, cfg.eps, cfg.K, cfg.seed, stream=trial_id,
                                     samples=cfg.samples, cycle_fraction=cfg.cycle_fraction)
    except (ValueError, RuntimeError) as exc:
        rec = TrialRecord(trial_id=trial_id, family=cfg.family,
                          n=G.n if G is not None else 0, seed=cfg.seed,
                          outcome=f"error: {exc}")
    rec.ms = (time.perf_counter() - t0) * 1000.0
    return rec


_WORKER_STATE: tuple | None = None


def _init_worker(cfg, G):
    global _WORKER_STATE
    _WORKER_STATE = (cfg, G)


def _worker_trial(i):
    cfg, G = _WORKER_STATE
    return run_trial(cfg, G, i)


def _summarize(cfg: ExperimentConfig, records: list[TrialRecord]) -> Summary:
    n = len(records)
    succ = sum(r.success for r in records)
    errors = sum(r.outcome.startswith("error") for r in records)
    s = Summary(cfg.mode, n, succ, errors, succ / n)
    if cfg.mode == "path-theorem":
        ok = [r for r in records if r.positives is not None]
        if ok and ok[0].p > 0 and ok[0].n1:
            n1, p = ok[0].n1, ok[0].p
            mean = n1 * p
            t = mean / 2            # widest band the tail bound admits
            hits = sum(abs(r.positives - mean) <= t for r in ok)
            s.band_halfwidth, s.band_hits = t, hits
            s.band_frequency = hits / n
            s.chernoff_bound = chernoff_tail(n1, p, t)
    return s


def run_experiment(cfg: ExperimentConfig, G: Graph | None = None
                   ) -> tuple[list[TrialRecord], Summary]:
    """Execute ``cfg.trials`` trials; records come back in trial-id order."""
    if G is None:
        G = cfg.build_graph()
    workers = cfg.workers or os.cpu_count() or 1
    ids = range(cfg.trials)
    if workers <= 1 or cfg.trials == 1:
        records = [run_trial(cfg, G, i) for i in ids]
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(cfg, G)) as pool:
            chunk = max(1, cfg.trials // (4 * workers))
            records = list(pool.map(_worker_trial, ids, chunksize=chunk))
    records.sort(key=lambda r: r.trial_id)
    return records, _summarize(cfg, records)


def records_to_csv(records: list[TrialRecord], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row(timing))
    return buf.getvalue()


def corollary_pipeline(q: int, eps_density: float, K_factor: float, seed: int,
                       stream: int = 0, samples: int = 200,
                       cycle_fraction: float = 0.1) -> TrialRecord:
    """Percolate the polarity graph ER_q at ``p = K_factor / sqrt(n)`` and look
    for a cycle of length ``>= cycle_fraction * n``.

    The graph is first trimmed to its delta-core with ``delta`` half the
    average degree.  Sets of size ``k = ceil(sqrt(n))`` are sampled to
    measure the expansion.  The cycle search then runs the two-round
    construction with ``eps = eps_density`` and ``d = (1+eps)/p``, so the
    two rounds together retain edges with probability exactly ``p``, and
    ``c = k*d/n`` makes the block length ``k``.  Degenerate parameter
    combinations are reported in ``outcome`` rather than raised.
    """
    H = polarity_graph(q)
    delta = H.m / H.n               # half the average degree 2m/n
    G0 = extract_min_degree_subgraph(H, math.floor(delta))
    n0 = G0.n
    rec = TrialRecord(trial_id=stream, family="polarity", n=n0, seed=seed, outcome="",
                      eps=eps_density, cycle_target=math.ceil(cycle_fraction * n0),
                      extra={"q": q, "K": K_factor, "delta": math.floor(delta),
                             "host_n": H.n})
    if n0 < 3:
        rec.outcome = "degenerate: core has fewer than 3 vertices"
        return rec
    k = math.isqrt(n0 - 1) + 1
    rec.k = k
    prof = expansion_profile(G0, k, samples, RngStream(seed, stream).child(3).key)
    d_meas = min(prof) / k
    rec.extra["expansion_min"] = min(prof)
    rec.extra["d_measured"] = d_meas
    p = K_factor / math.sqrt(n0)
    rec.p = p
    if not 0 < p <= 1:
        rec.outcome = f"degenerate: p = {p:.4g} outside (0, 1]"
        return rec
    d = (1 + eps_density) / p
    c = k * d / n0
    rec.d, rec.c = d, c
    rec.extra["hypothesis_ok"] = d <= d_meas
    try:
        params = theorem3_params(c, d, eps_density, n0)
    except ValueError as exc:
        rec.outcome = f"degenerate: {exc}"
        return rec
    rec.p1, rec.p2 = params.p1, params.p2
    res = find_long_cycle(G0, params, seed, stream)
    rec.outcome = res.outcome
    rec.path_len = res.path_length
    rec.cycle_len = res.cycle_length
    rec.g, rec.n_successful = res.g, res.n_successful
    rec.success = res.found and res.cycle_length >= rec.cycle_target
    return rec


def sweep(cfg: ExperimentConfig, param: str, values) -> list[tuple[float, Summary]]:
    """Re-run ``cfg`` with ``param`` set to each of ``values``."""
    G = cfg.build_graph()
    out = []
    for v in values:
        sub = dataclasses.replace(cfg, **{param: v})
        _, summary = run_experiment(sub, G)
        out.append((v, summary))
    return out


def plot_sweep(results: list[tuple[float, Summary]], path, xlabel: str = "eps") -> None:
    """Write success frequency against the swept parameter as SVG."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [x for x, _ in results]
    ys = [s.success_frequency for _, s in results]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(xs, ys, marker="o")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("success frequency")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


_INT_KEYS = {"k", "budget", "q", "samples", "trials", "seed", "workers", "max_failures",
             "n", "a", "b", "degree", "size", "count", "gen_seed"}
_FLOAT_KEYS = {"d", "eps", "c", "p", "K", "cycle_fraction"}
_GEN_KEYS = {"family", "n", "a", "b", "degree", "q", "size", "count", "gen_seed"}


def parse_config(text: str, overrides: dict | None = None) -> ExperimentConfig:
    """Build a config from ``key=value`` lines; ``overrides`` win over the text.

    Generator keys: ``family`` plus ``n``, ``a``, ``b``, ``degree``, ``q``,
    ``size``, ``count``, ``gen_seed``.  Alternatively ``input=<edge-list file>``.
    Other keys: ``mode``, ``k``, ``d``, ``eps``, ``c``, ``p``, ``budget``, ``K``,
    ``samples``, ``cycle_fraction``, ``trials``, ``seed``, ``workers``, ``out``,
    ``timing``, ``max_failures``.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ValueError(f"config line {lineno}: expected key=value, got {line!r}")
        raw[key.strip()] = val.strip()
    for key, val in (overrides or {}).items():
        if val is not None:
            raw[key] = str(val)
    vals: dict = {}
    for key, val in raw.items():
        if key in _INT_KEYS:
            vals[key] = int(val)
        elif key in _FLOAT_KEYS:
            vals[key] = float(val)
        elif key == "timing":
            vals[key] = val.lower() in ("1", "true", "yes", "on")
        elif key in ("mode", "family", "input", "out"):
            vals[key] = val
        else:
            raise ValueError(f"unknown config key {key!r}")
    mode = vals.pop("mode", None)
    if mode is None:
        raise ValueError("config needs mode")
    gen = None
    gen_vals = {k: vals.pop(k) for k in list(vals) if k in _GEN_KEYS and k != "q"}
    if mode != "corollary" and "family" in gen_vals:
        fam = gen_vals.pop("family")
        gen = GeneratorSpec(family=fam, n=gen_vals.get("n"), a=gen_vals.get("a"),
                            b=gen_vals.get("b"), d=gen_vals.get("degree"),
                            q=vals.pop("q", None), size=gen_vals.get("size"),
                            count=gen_vals.get("count"), seed=gen_vals.get("gen_seed", 0))
    elif gen_vals.get("family") not in (None, "polarity"):
        raise ValueError("corollary mode always uses the polarity family")
    return ExperimentConfig(mode=mode, generator=gen, input_file=vals.pop("input", None), **vals)


def load_config(path, overrides: dict | None = None) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read(), overrides)
