"""Random-net ratio study, random search and evaluator benchmarks."""

from __future__ import annotations

import csv
import enum
import io
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .constants import constant_A, constant_B
from .errors import DimensionError, WafomError
from .exp_error import err_exp
from .merit import (
    DEFAULT_CHUNK_BITS,
    DEFAULT_DIGITS,
    build_lookup_tables,
    multiplications_per_point,
    wafom_lookup,
    wafom_pointwise,
)
from .net import NetParams, PointSet, generate_points_graycode, random_net
from .rng import derive_seed
from .walsh import as_weights

CSV_HEADER = ("trial", "seed", "wafom", "err", "ratio", "log2_wafom", "log2_ratio")


class Criterion(str, enum.Enum):
    WAFOM = "wafom"
    ERR_EXP = "err_exp"


@dataclass(frozen=True)
class ExperimentConfig:
    s: int
    m: int
    n: int = DEFAULT_DIGITS
    u: tuple[float, ...] | None = None
    q: int = 1024
    seed: int = 0
    criterion: Criterion = Criterion.WAFOM

    def __post_init__(self) -> None:
        if self.q < 1:
            raise DimensionError("q must be >= 1")
        if self.s < 1 or not (self.n >= self.m >= 1):
            raise DimensionError(f"need s >= 1 and n >= m >= 1, got s={self.s} n={self.n} m={self.m}")
        object.__setattr__(self, "u", as_weights(2.0 if self.u is None else self.u, self.s))
        object.__setattr__(self, "criterion", Criterion(self.criterion))

    @property
    def ratio_floor(self) -> float:
        """Merit values at or below this give an undefined ratio."""
        return math.ldexp(1.0, -self.n + 6)

    def trial_seed(self, trial: int) -> int:
        return derive_seed(self.seed, trial)

    def trial_net(self, trial: int) -> NetParams:
        return random_net(self.s, self.n, self.m, self.trial_seed(trial))


@dataclass(frozen=True)
class ExperimentRecord:
    trial: int
    seed: int
    wafom: float
    err: float
    ratio: float = field(default=math.nan)

    @property
    def ratio_defined(self) -> bool:
        return not math.isnan(self.ratio)


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.17g}"


def _log2(x: float) -> float:
    return math.log2(x) if x > 0 else math.nan


def records_to_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([r.trial, r.seed, _fmt(r.wafom), _fmt(r.err), _fmt(r.ratio),
                         _fmt(_log2(r.wafom)), _fmt(_log2(r.ratio))])
    return buf.getvalue()


def read_records_csv(text: str) -> list[ExperimentRecord]:
    reader = csv.DictReader(io.StringIO(text))
    return [ExperimentRecord(int(row["trial"]), int(row["seed"]), float(row["wafom"]),
                             float(row["err"]), float(row["ratio"])) for row in reader]


def make_record(cfg: ExperimentConfig, trial: int, wafom: float, err: float) -> ExperimentRecord:
    ratio = err / wafom if wafom > cfg.ratio_floor else math.nan
    return ExperimentRecord(trial, cfg.trial_seed(trial), wafom, err, ratio)


def run_ratio_experiment(cfg: ExperimentConfig,
                         chunk_bits: int = DEFAULT_CHUNK_BITS) -> list[ExperimentRecord]:
    """Score q random nets by merit (lookup tables) and exponential error."""
    tables = build_lookup_tables(cfg.u, cfg.n, chunk_bits)
    records = []
    for trial in range(cfg.q):
        points = generate_points_graycode(cfg.trial_net(trial))
        w = wafom_lookup(points, cfg.u, cfg.n, chunk_bits, tables)
        if trial == 0:
            naive = wafom_pointwise(points, cfg.u, cfg.n)
            if abs(w - naive) > 1e-10 * max(abs(naive), 1e-300):
                raise WafomError(f"lookup merit {w!r} disagrees with product formula {naive!r}")
        records.append(make_record(cfg, trial, w, err_exp(points, cfg.u)))
    return records


def score(points: PointSet, cfg: ExperimentConfig) -> float:
    if cfg.criterion is Criterion.WAFOM:
        return wafom_pointwise(points, cfg.u, cfg.n)
    return err_exp(points, cfg.u)


def random_search(cfg: ExperimentConfig) -> tuple[NetParams, float]:
    """Best of q random nets under cfg.criterion; earliest trial wins ties."""
    best: tuple[NetParams, float] | None = None
    for trial in range(cfg.q):
        net = cfg.trial_net(trial)
        value = score(generate_points_graycode(net), cfg)
        if best is None or value < best[1]:
            best = (net, value)
    assert best is not None
    return best


@dataclass(frozen=True)
class BenchRow:
    evaluator: str
    seconds_per_net: float
    mults_per_point: int
    exps_per_point: int


@dataclass(frozen=True)
class BenchReport:
    s: int
    m: int
    n: int
    q: int
    chunk_bits: int
    precompute_seconds: float
    rows: tuple[BenchRow, ...]
    max_lookup_rel_diff: float
    sandwich_ok: bool

    def row(self, evaluator: str) -> BenchRow:
        return next(r for r in self.rows if r.evaluator == evaluator)


def bench_compare(cfg: ExperimentConfig, chunk_bits: int = DEFAULT_CHUNK_BITS) -> BenchReport:
    """Time naive merit, lookup merit and exponential error on the same q nets.

    Point generation is excluded from all timings; table construction is
    timed on its own since it must be redone whenever u changes.
    """
    point_sets = [generate_points_graycode(cfg.trial_net(t)) for t in range(cfg.q)]

    t0 = time.perf_counter()
    tables = build_lookup_tables(cfg.u, cfg.n, chunk_bits)
    precompute = time.perf_counter() - t0

    def timed(fn) -> tuple[float, list[float]]:
        start = time.perf_counter()
        values = [fn(p) for p in point_sets]
        return (time.perf_counter() - start) / cfg.q, values

    t_naive, naive = timed(lambda p: wafom_pointwise(p, cfg.u, cfg.n))
    t_lookup, lookup = timed(lambda p: wafom_lookup(p, cfg.u, cfg.n, chunk_bits, tables))
    t_err, errs = timed(lambda p: err_exp(p, cfg.u))

    rel = max(abs(a - b) / max(abs(a), 1e-300) for a, b in zip(naive, lookup))
    A, B = constant_A(cfg.u), constant_B(cfg.u)
    tol = math.ldexp(1.0, -cfg.n + 4) * cfg.s * max(1.0, max(cfg.u))
    ok = all(B * w - tol <= e <= A * w + tol for w, e in zip(naive, errs))
    rows = (
        BenchRow("wafom_naive", t_naive, multiplications_per_point("naive", cfg.s, cfg.n), 0),
        BenchRow("wafom_lookup", t_lookup,
                 multiplications_per_point("lookup", cfg.s, cfg.n, chunk_bits), 0),
        BenchRow("err_exp", t_err, 0, 1),
    )
    return BenchReport(cfg.s, cfg.m, cfg.n, cfg.q, chunk_bits, precompute, rows, rel, ok)


def bench_to_csv(reports: Sequence[BenchReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("s", "m", "n", "q", "chunk_bits", "evaluator", "seconds_per_net",
                     "mults_per_point", "exps_per_point", "precompute_seconds"))
    for rep in reports:
        for row in rep.rows:
            writer.writerow((rep.s, rep.m, rep.n, rep.q, rep.chunk_bits, row.evaluator,
                             f"{row.seconds_per_net:.6g}", row.mults_per_point,
                             row.exps_per_point, f"{rep.precompute_seconds:.6g}"))
    return buf.getvalue()


def bench_to_text(reports: Sequence[BenchReport]) -> str:
    lines = [f"{'s':>4} {'evaluator':<14} {'sec/net':>12} {'mult/pt':>8} {'exp/pt':>7} {'precompute':>11}"]
    for rep in reports:
        for row in rep.rows:
            pre = f"{rep.precompute_seconds:11.3e}" if row.evaluator == "wafom_lookup" else f"{'-':>11}"
            lines.append(f"{rep.s:>4} {row.evaluator:<14} {row.seconds_per_net:12.4e} "
                         f"{row.mults_per_point:>8} {row.exps_per_point:>7} {pre}")
    return "\n".join(lines) + "\n"
