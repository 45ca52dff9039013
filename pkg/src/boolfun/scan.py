"""Bulk verification over ranges of truth tables.

Exhaustive mode walks every table integer of a small arity; random mode
draws tables from a seeded stream.  Either way the work is expressed as
range primitives over a contiguous index interval, so a scan can be split
into chunks, run on several processes, and merged.  merge_results is
associative and commutative, and witness selection always prefers the
numerically smallest table, so the final report is byte-for-byte identical
(wall_time aside) no matter how the range was partitioned.

The per-batch analysis is integer-only: spectra come from the in-place
transform on an int64 matrix, the conjecture comparison is done at scale
2^n, and the four equivalence inequalities at the common scale 2 * 4^D with
D = max(n, d).  Worst case (n = 16, d = 24) every scaled term stays below
about 2^56, well inside int64.  Derivative value counts for the equivalence
check come from table bits directly, not from the spectrum, so the check
exercises two genuinely different computation routes.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple, Sequence

import numpy as np

from .core import (
    MAX_ARITY,
    InputError,
    InvariantError,
    hex_digits,
    popcounts,
)
from .dyadic import DyadicRational
from .majority import maj_bound, majority_profile

_EXHAUSTIVE_DEFAULT_MAX_N = 4
_EXHAUSTIVE_HUGE_MAX_N = 5
_RANDOM_MAX_N = 16
_WITNESS_CAP = 1000
# sub-batch rows are capped so bits + spectrum matrices stay ~16 MB
_BATCH_CELLS = 1 << 21


@dataclass(frozen=True)
class ScanConfig:
    """Immutable description of one scan; merging requires equal configs."""

    n: int
    mode: str
    degree_filter: int | None = None
    equivalence_check: bool | None = None
    equivalence_d_range: tuple[int, ...] | None = None
    sample_count: int | None = None
    seed: int | None = None
    worker_count: int = 1
    chunk_size: int = 1 << 14
    allow_huge: bool = False

    def __post_init__(self):
        if self.mode not in ("exhaustive", "random"):
            raise InputError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"arity must be a positive integer, got {self.n!r}")
        if self.mode == "exhaustive":
            if self.n > _EXHAUSTIVE_HUGE_MAX_N:
                raise InputError(f"exhaustive scans support n <= {_EXHAUSTIVE_HUGE_MAX_N}")
            if self.n > _EXHAUSTIVE_DEFAULT_MAX_N and not self.allow_huge:
                raise InputError(
                    f"exhaustive n = {self.n} exceeds the default ceiling "
                    f"{_EXHAUSTIVE_DEFAULT_MAX_N}; set allow_huge to opt in"
                )
            if self.sample_count is not None or self.seed is not None:
                raise InputError("sample_count and seed only apply to random mode")
        else:
            if self.n > _RANDOM_MAX_N:
                raise InputError(f"random scans support n <= {_RANDOM_MAX_N}")
            if self.sample_count is None or not isinstance(self.sample_count, int):
                raise InputError("random mode requires an integer sample_count")
            if self.sample_count < 1:
                raise InputError("sample_count must be at least 1")
            if self.seed is not None and not 0 <= self.seed < 1 << 64:
                raise InputError("seed must fit in 64 bits")
        if self.degree_filter is not None and not 0 <= self.degree_filter <= self.n:
            raise InputError(f"degree filter must be in 0..{self.n}")
        if self.equivalence_d_range is not None:
            ds = tuple(sorted(set(self.equivalence_d_range)))
            for d in ds:
                if not isinstance(d, int) or not 1 <= d <= MAX_ARITY:
                    raise InputError(f"equivalence d values must be in 1..{MAX_ARITY}")
            object.__setattr__(self, "equivalence_d_range", ds)
        if not isinstance(self.worker_count, int) or self.worker_count < 1:
            raise InputError("worker_count must be at least 1")
        if not isinstance(self.chunk_size, int) or self.chunk_size < 1:
            raise InputError("chunk_size must be at least 1")

    @property
    def points(self) -> int:
        return 1 << self.n

    def resolved(self) -> "ScanConfig":
        """Fill the defaults that depend on n; idempotent."""
        check = self.equivalence_check
        if check is None:
            check = self.n <= 3
        d_range = self.equivalence_d_range if check else ()
        if check and not d_range:
            d_range = tuple(range(1, self.n + 2))
        seed = self.seed
        if self.mode == "random" and seed is None:
            seed = 0
        return replace(
            self,
            equivalence_check=check,
            equivalence_d_range=d_range,
            seed=seed,
        )


@dataclass(frozen=True)
class DegreeExtremal:
    """Largest singleton-coefficient sum seen among functions of one degree."""

    degree: int
    function_count: int
    max_linear_sum: DyadicRational
    witness: str
    witness_count: int
    bound: DyadicRational
    margin: DyadicRational


@dataclass(frozen=True)
class ConjectureWitness:
    """A function whose singleton-coefficient sum exceeds M(deg)."""

    table_hex: str
    n: int
    degree: int
    linear_sum: DyadicRational
    bound: DyadicRational


@dataclass(frozen=True)
class EquivalenceWitness:
    """A function and d where the four inequalities fail to agree."""

    table_hex: str
    n: int
    d: int
    original: bool
    ineq_a: bool
    ineq_b: bool
    ineq_c: bool


@dataclass(frozen=True)
class ScanResult:
    config: ScanConfig
    functions_examined: int
    violations: tuple[ConjectureWitness, ...]
    equivalence_failures: tuple[EquivalenceWitness, ...]
    per_degree: dict[int, DegreeExtremal]
    wall_time: float


class _EquivConsts(NamedTuple):
    # predicate sides pre-scaled by 2 * 4^D, D = max(n, d)
    d: int
    f_linear: int
    f_influence: int
    f_prob: int
    f_prob2: int
    rhs_original: int
    maj_influence: int
    maj_plus_sum: int


class _Consts(NamedTuple):
    bounds: tuple[tuple[int, int], ...]
    equiv: tuple[_EquivConsts, ...]


def _build_consts(cfg: ScanConfig) -> _Consts:
    bounds = []
    for d in range(cfg.n + 1):
        b = maj_bound(d)
        bounds.append((b.num, b.log2_den))
    equiv = []
    for d in cfg.equivalence_d_range or ():
        prof = majority_profile(d)
        big = max(cfg.n, d)
        shift = 2 * big + 1
        coef, inf, plus = prof.bound_M, prof.total_influence, prof.p_plus_per_coordinate
        equiv.append(
            _EquivConsts(
                d=d,
                f_linear=1 << (shift - cfg.n),
                f_influence=1 << (shift - 2 * cfg.n),
                f_prob=1 << (shift - cfg.n + 1),
                f_prob2=1 << (shift - cfg.n + 2),
                rhs_original=coef.num << (shift - coef.log2_den),
                maj_influence=inf.num << (shift - inf.log2_den),
                maj_plus_sum=(d * plus.num) << (shift - plus.log2_den),
            )
        )
    return _Consts(tuple(bounds), tuple(equiv))


class _Partial:
    """Mutable accumulator for one chunk; finalized into a ScanResult."""

    __slots__ = ("examined", "degrees", "violations", "equiv_failures")

    def __init__(self):
        self.examined = 0
        # degree -> [function_count, max L (scale 2^n), witness table, witness count]
        self.degrees: dict[int, list] = {}
        self.violations: list[tuple[int, int, int]] = []
        self.equiv_failures: list[tuple[int, int, bool, bool, bool, bool]] = []

    def update_degree(self, d: int, count: int, best: int, witness: int, hits: int):
        ent = self.degrees.get(d)
        if ent is None:
            self.degrees[d] = [count, best, witness, hits]
            return
        ent[0] += count
        if best > ent[1]:
            ent[1], ent[2], ent[3] = best, witness, hits
        elif best == ent[1]:
            ent[3] += hits
            if witness < ent[2]:
                ent[2] = witness


def _batch_butterfly(mat: np.ndarray) -> np.ndarray:
    # same recursion as core._butterfly, applied along axis 1
    rows, width = mat.shape
    half = 1
    while half < width:
        view = mat.reshape(rows, -1, 2, half)
        low = view[:, :, 0, :].copy()
        high = view[:, :, 1, :]
        view[:, :, 0, :] = low + high
        view[:, :, 1, :] = low - high
        half <<= 1
    return mat


def _bits_matrix(tables: Sequence[int], points: int) -> np.ndarray:
    nbytes = (points + 7) // 8
    buf = b"".join(t.to_bytes(nbytes, "little") for t in tables)
    packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(tables), nbytes)
    return np.unpackbits(packed, axis=1, bitorder="little")[:, :points]


def _sample_table(seed: int, index: int, points: int) -> int:
    """Deterministic table for sample #index; independent of partitioning."""
    material = seed.to_bytes(8, "big") + index.to_bytes(8, "big")
    digest = hashlib.shake_256(material).digest((points + 7) // 8)
    return int.from_bytes(digest, "little") & ((1 << points) - 1)


def _accumulate(part: _Partial, cfg: ScanConfig, consts: _Consts,
                tables: Sequence[int], bits: np.ndarray) -> None:
    n, points = cfg.n, cfg.points
    rows = len(tables)
    values = 1 - 2 * bits.astype(np.int64)
    coeffs = _batch_butterfly(values)
    squares = coeffs * coeffs
    if np.any(squares.sum(axis=1) != 1 << (2 * n)):
        raise InvariantError("spectrum norm check failed during scan")
    pc = popcounts(n)
    deg = np.where(coeffs != 0, pc[np.newaxis, :], -1).max(axis=1)
    lin = coeffs[:, [1 << k for k in range(n)]].sum(axis=1)
    total_inf = squares @ pc
    if cfg.degree_filter is None:
        mask = np.ones(rows, dtype=bool)
    else:
        mask = deg == cfg.degree_filter
    part.examined += rows

    for dval in np.unique(deg[mask]):
        d = int(dval)
        idx = np.nonzero(mask & (deg == dval))[0]
        sums = lin[idx]
        best = int(sums.max())
        attain = idx[sums == best]
        witness = min(tables[int(j)] for j in attain)
        part.update_degree(d, len(idx), best, witness, len(attain))
        num, ld = consts.bounds[d]
        bad = idx[sums * (1 << ld) > (num << n)]
        for j in bad:
            part.violations.append((tables[int(j)], d, int(lin[j])))

    if consts.equiv:
        sum_plus = np.zeros(rows, dtype=np.int64)
        sum_minus = np.zeros(rows, dtype=np.int64)
        ys = np.arange(points >> 1, dtype=np.int64)
        signed = bits.astype(np.int8)
        for i in range(1, n + 1):
            h = 1 << (i - 1)
            idx_plus = ((ys >> (i - 1)) << i) | (ys & (h - 1))
            diff = signed[:, idx_plus | h] - signed[:, idx_plus]
            sum_plus += (diff == 1).sum(axis=1)
            sum_minus += (diff == -1).sum(axis=1)
        for ec in consts.equiv:
            influence_term = total_inf * ec.f_influence
            sat_orig = lin * ec.f_linear <= ec.rhs_original
            sat_a = influence_term - ec.maj_influence <= sum_minus * ec.f_prob2
            sat_b = sum_plus * ec.f_prob - ec.maj_plus_sum <= sum_minus * ec.f_prob
            sat_c = sum_plus * ec.f_prob2 <= influence_term + ec.maj_influence
            agree = (sat_orig == sat_a) & (sat_orig == sat_b) & (sat_orig == sat_c)
            for j in np.nonzero(mask & ~agree)[0]:
                part.equiv_failures.append(
                    (tables[int(j)], ec.d,
                     bool(sat_orig[j]), bool(sat_a[j]), bool(sat_b[j]), bool(sat_c[j]))
                )


def _analyze_chunk(cfg: ScanConfig, consts: _Consts, tables: Sequence[int]) -> _Partial:
    part = _Partial()
    cap = max(1, _BATCH_CELLS // cfg.points)
    for off in range(0, len(tables), cap):
        sub = tables[off : off + cap]
        _accumulate(part, cfg, consts, sub, _bits_matrix(sub, cfg.points))
    return part


def _table_hex(table: int, n: int) -> str:
    return f"0x{table:0{hex_digits(n)}x}"


def _finalize(part: _Partial, cfg: ScanConfig, consts: _Consts, elapsed: float) -> ScanResult:
    n = cfg.n
    per_degree = {}
    for d in sorted(part.degrees):
        count, best, witness, hits = part.degrees[d]
        bound = DyadicRational(*consts.bounds[d])
        best_dy = DyadicRational(best, n)
        per_degree[d] = DegreeExtremal(
            degree=d,
            function_count=count,
            max_linear_sum=best_dy,
            witness=_table_hex(witness, n),
            witness_count=hits,
            bound=bound,
            margin=bound - best_dy,
        )
    violations = tuple(
        ConjectureWitness(
            table_hex=_table_hex(t, n),
            n=n,
            degree=d,
            linear_sum=DyadicRational(lin, n),
            bound=DyadicRational(*consts.bounds[d]),
        )
        for t, d, lin in sorted(part.violations)[:_WITNESS_CAP]
    )
    failures = tuple(
        EquivalenceWitness(_table_hex(t, n), n, d, o, a, b, c)
        for t, d, o, a, b, c in sorted(part.equiv_failures)[:_WITNESS_CAP]
    )
    return ScanResult(
        config=cfg,
        functions_examined=part.examined,
        violations=violations,
        equivalence_failures=failures,
        per_degree=per_degree,
        wall_time=elapsed,
    )


def scan_table_range(config: ScanConfig, start: int, stop: int) -> ScanResult:
    """Analyze truth-table integers in [start, stop); exhaustive-mode primitive."""
    cfg = config.resolved()
    if cfg.mode != "exhaustive":
        raise InputError("scan_table_range requires an exhaustive-mode config")
    if not 0 <= start <= stop <= 1 << cfg.points:
        raise InputError(f"table range [{start}, {stop}) out of bounds for n = {cfg.n}")
    begin = time.perf_counter()
    consts = _build_consts(cfg)
    part = _analyze_chunk(cfg, consts, range(start, stop))
    return _finalize(part, cfg, consts, time.perf_counter() - begin)


def scan_sample_range(config: ScanConfig, start: int, stop: int) -> ScanResult:
    """Analyze sample indices in [start, stop); random-mode primitive."""
    cfg = config.resolved()
    if cfg.mode != "random":
        raise InputError("scan_sample_range requires a random-mode config")
    if not 0 <= start <= stop <= cfg.sample_count:
        raise InputError(f"sample range [{start}, {stop}) out of bounds")
    begin = time.perf_counter()
    consts = _build_consts(cfg)
    tables = [_sample_table(cfg.seed, k, cfg.points) for k in range(start, stop)]
    part = _analyze_chunk(cfg, consts, tables)
    return _finalize(part, cfg, consts, time.perf_counter() - begin)


def merge_results(left: ScanResult, right: ScanResult) -> ScanResult:
    """Combine two partial results; associative, commutative, config-checked."""
    if left.config != right.config:
        raise InputError("cannot merge results from different scan configs")
    per_degree = {}
    for d in sorted(set(left.per_degree) | set(right.per_degree)):
        a, b = left.per_degree.get(d), right.per_degree.get(d)
        if a is None or b is None:
            per_degree[d] = a if b is None else b
            continue
        count = a.function_count + b.function_count
        if a.max_linear_sum != b.max_linear_sum:
            keep = a if a.max_linear_sum > b.max_linear_sum else b
            witness, hits = keep.witness, keep.witness_count
            best = keep.max_linear_sum
        else:
            best = a.max_linear_sum
            witness = min(a.witness, b.witness)
            hits = a.witness_count + b.witness_count
        per_degree[d] = DegreeExtremal(
            degree=d,
            function_count=count,
            max_linear_sum=best,
            witness=witness,
            witness_count=hits,
            bound=a.bound,
            margin=a.bound - best,
        )
    violations = tuple(
        sorted(left.violations + right.violations, key=lambda w: w.table_hex)[:_WITNESS_CAP]
    )
    failures = tuple(
        sorted(
            left.equivalence_failures + right.equivalence_failures,
            key=lambda w: (w.table_hex, w.d),
        )[:_WITNESS_CAP]
    )
    return ScanResult(
        config=left.config,
        functions_examined=left.functions_examined + right.functions_examined,
        violations=violations,
        equivalence_failures=failures,
        per_degree=per_degree,
        wall_time=left.wall_time + right.wall_time,
    )


def _range_worker(args: tuple[ScanConfig, int, int]) -> ScanResult:
    cfg, start, stop = args
    primitive = scan_table_range if cfg.mode == "exhaustive" else scan_sample_range
    return primitive(cfg, start, stop)


def run_scan(config: ScanConfig) -> ScanResult:
    """Full scan: chunk the index range, fan out if asked, merge, stamp time."""
    cfg = config.resolved()
    begin = time.perf_counter()
    total = (1 << cfg.points) if cfg.mode == "exhaustive" else cfg.sample_count
    spans = [
        (cfg, s, min(s + cfg.chunk_size, total))
        for s in range(0, total, cfg.chunk_size)
    ]
    if cfg.worker_count == 1:
        merged = None
        for span in spans:
            piece = _range_worker(span)
            merged = piece if merged is None else merge_results(merged, piece)
    else:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            merged = None
            for piece in pool.map(_range_worker, spans):
                merged = piece if merged is None else merge_results(merged, piece)
    return replace(merged, wall_time=time.perf_counter() - begin)


def exhaustive_scan(config: ScanConfig) -> ScanResult:
    if config.mode != "exhaustive":
        raise InputError("exhaustive_scan requires mode 'exhaustive'")
    return run_scan(config)


def random_scan(config: ScanConfig) -> ScanResult:
    if config.mode != "random":
        raise InputError("random_scan requires mode 'random'")
    return run_scan(config)
