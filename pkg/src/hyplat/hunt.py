"""Range scans over squared norms, with checkpointed JSONL output.

A scan walks n over [lo, hi] in fixed units of 4096 consecutive values and
emits one record per n.  Membership and factorizations come from shared
sieve tables built once before any worker forks, so the emitted byte stream
is identical for any worker count.  Checkpoints store the last finished
unit together with the byte length and SHA-256 of everything written so
far; resuming verifies the prefix and truncates any torn tail.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator, NamedTuple, Optional

import mpmath as mp
import numpy as np

from .angular import ANGLE_PRECISION_BITS, AngularMeasure, discrepancy
from .directions import angle_sort_key
from .errors import CapacityError, DomainError, ResumeError, VerificationError
from .hyperbolic import lattice_points_even_x, norm_occurs
from .zint import GaussInt, _reps_from_pairs, is_sum_two_squares, prime_above, primes_upto

UNIT_SIZE = 4096
SCAN_MAX_HI = 100_000_000
_CHECKPOINT_VERSION = 1

# Fixed JSONL field order; "anomaly" is appended only when set.
_RECORD_FIELDS = (
    "n", "in_N", "r_star_m", "gamma_count", "discrepancy",
    "c2_abs", "W2_m", "omega1_m", "Omega1_m",
)


@dataclass(frozen=True)
class ScanRecord:
    """One scanned norm.  Radius fields refer to m = n^2 - 4; they are None
    when n is not realized, and also at the degenerate n = 2 (m = 0)."""

    n: int
    in_N: bool
    r_star_m: Optional[int] = None
    gamma_count: Optional[int] = None
    discrepancy: Optional[float] = None
    c2_abs: Optional[float] = None
    W2_m: Optional[Fraction] = None
    omega1_m: Optional[int] = None
    Omega1_m: Optional[int] = None
    anomaly: bool = False

    def to_json_obj(self) -> dict:
        obj = {}
        for name in _RECORD_FIELDS:
            val = getattr(self, name)
            if isinstance(val, Fraction):
                val = f"{val.numerator}/{val.denominator}"
            obj[name] = val
        if self.anomaly:
            obj["anomaly"] = True
        return obj

    def to_json_line(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ScanRecord":
        try:
            w2 = obj["W2_m"]
            if w2 is not None:
                num, den = w2.split("/")
                w2 = Fraction(int(num), int(den))
            return cls(
                n=obj["n"], in_N=obj["in_N"], r_star_m=obj["r_star_m"],
                gamma_count=obj["gamma_count"], discrepancy=obj["discrepancy"],
                c2_abs=obj["c2_abs"], W2_m=w2, omega1_m=obj["omega1_m"],
                Omega1_m=obj["Omega1_m"], anomaly=bool(obj.get("anomaly", False)),
            )
        except (KeyError, ValueError, AttributeError) as exc:
            raise DomainError(f"malformed scan record: {exc}") from exc

    @classmethod
    def from_json_line(cls, line: str) -> "ScanRecord":
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DomainError(f"malformed scan record: {exc}") from exc
        return cls.from_json_obj(obj)


@dataclass(frozen=True)
class ScanConfig:
    lo: int
    hi: int
    workers: int = 1
    k_max: int = 0
    out: Optional[str] = None
    checkpoint: Optional[str] = None
    resume: bool = False
    checkpoint_interval: int = 1
    limit_units: Optional[int] = None
    # discrepancy is skipped (left None) once a circle has this many points
    discrepancy_atom_cap: int = 100_000

    def validate(self) -> None:
        if self.lo < 2 or self.hi < self.lo:
            raise DomainError("need 2 <= lo <= hi")
        if self.hi > SCAN_MAX_HI:
            raise CapacityError(f"scan limit is {SCAN_MAX_HI} (sieve memory)")
        if self.workers < 1:
            raise DomainError("workers must be >= 1")
        if self.k_max < 0 or self.checkpoint_interval < 1:
            raise DomainError("bad scan parameters")
        if self.checkpoint and not self.out:
            raise DomainError("checkpointing requires an output file")


# --- shared sieve tables (built before fork, inherited by workers) ---

_TABLE_LIMIT = 0
_SPF: Optional[np.ndarray] = None      # smallest prime factor
_SMASK: Optional[np.ndarray] = None    # representable as x^2 + y^2
_PRIME_CACHE: dict[int, GaussInt] = {}


def _ensure_tables(limit: int) -> None:
    global _TABLE_LIMIT, _SPF, _SMASK
    if limit <= _TABLE_LIMIT:
        return
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, limit + 1):
        if spf[p] == 0:
            sl = spf[p::p]
            sl[sl == 0] = p
    mask = np.zeros(limit + 1, dtype=bool)
    for x in range(isqrt(limit) + 1):
        ys = np.arange(isqrt(limit - x * x) + 1, dtype=np.int64)
        mask[x * x + ys * ys] = True
    _SPF, _SMASK, _TABLE_LIMIT = spf, mask, limit


def _factor_table(v: int) -> list[tuple[int, int]]:
    """Factor v (>= 1) off the smallest-prime-factor table."""
    pairs = []
    while v > 1:
        p = int(_SPF[v])
        e = 0
        while v % p == 0:
            v //= p
            e += 1
        pairs.append((p, e))
    return pairs


def _chi2_from_pairs(pairs: Iterable[tuple[int, int]]) -> Fraction:
    """Quadratic-character prime sum from a factorization (mirrors
    angular.chi2_sum_multiplicative, reusing the per-process root cache)."""
    total = Fraction(1)
    for p, e in pairs:
        if p == 2 or p % 4 == 3:
            if p == 2 or e % 2 == 1:
                return Fraction(0)
            continue
        g = _PRIME_CACHE.get(p)
        if g is None:
            g = prime_above(p)
            _PRIME_CACHE[p] = g
        cos2 = Fraction(g.re * g.re - g.im * g.im, p)
        u_prev, u_cur = Fraction(1), 2 * cos2
        for _ in range(e - 1):
            u_prev, u_cur = u_cur, 2 * cos2 * u_cur - u_prev
        total *= u_cur
    return total


def _uniform_discrepancy(points: list[tuple[int, int]]) -> float:
    """Box discrepancy of the uniform measure on exact-sorted directions."""
    pts = sorted(points, key=angle_sort_key)
    n = len(pts)
    with mp.workprec(ANGLE_PRECISION_BITS):
        two_pi = 2 * mp.pi
        best_hi = best_lo = None
        for i, (x, y) in enumerate(pts):
            g = mp.atan2(y, x)
            if g < 0:
                g += two_pi
            g /= two_pi
            lo_val = mp.mpf(i) / n - g
            hi_val = mp.mpf(i + 1) / n - g
            if best_hi is None or hi_val > best_hi:
                best_hi = hi_val
            if best_lo is None or lo_val < best_lo:
                best_lo = lo_val
        return float(best_hi - best_lo)


def _quarter_defect(points: list[tuple[int, int]], k_max: int) -> bool:
    """True if some coefficient with 4 !| k, |k| <= k_max is exactly nonzero.

    Odd coefficients vanish exactly iff the point set is antipodal (the
    theta / theta+pi pair cancels), so that set property is what gets
    checked; even non-multiples of 4 are checked by exact integer sums.
    """
    pts = set(points)
    if any((-x, -y) not in pts for x, y in pts):
        return True
    for k in range(2, k_max + 1, 2):
        if k % 4 == 0:
            continue
        re_sum = im_sum = 0
        for x, y in points:
            z = GaussInt(x, y) ** k
            re_sum += z.re
            im_sum += z.im
        if re_sum or im_sum:
            return True
    return False


def _class_counts(points: Iterable[tuple[int, int]]) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for x, y in points:
        key = (x & 1, y & 1)
        counts[key] = counts.get(key, 0) + 1
    return counts


def _record_for(n: int, k_max: int, atom_cap: int) -> ScanRecord:
    if n == 2:
        # degenerate radius: the orbit is the single point i, hit by the
        # identity and the order-2 stabilizer element
        return ScanRecord(n=2, in_N=True, gamma_count=2)
    if not (bool(_SMASK[n - 2]) and bool(_SMASK[n + 2])):
        return ScanRecord(n=n, in_N=False)

    pairs_minus = _factor_table(n - 2)
    pairs_plus = _factor_table(n + 2)
    merged: dict[int, int] = {}
    for p, e in pairs_minus + pairs_plus:
        merged[p] = merged.get(p, 0) + e
    pairs = sorted(merged.items())

    r = 4
    omega1 = bigomega1 = 0
    for p, e in pairs:
        if p % 4 == 1:
            r *= e + 1
            omega1 += 1
            bigomega1 += e
    r_star = r if n % 2 == 0 else r // 2

    w2 = _chi2_from_pairs(pairs)
    c2 = float(2 * abs(w2) / r_star) if n % 2 == 1 else 0.0

    counts_minus = _class_counts(_reps_from_pairs(pairs_minus, _PRIME_CACHE))
    counts_plus = _class_counts(_reps_from_pairs(pairs_plus, _PRIME_CACHE))
    matched = sum(
        c * counts_minus.get((py, px), 0) for (px, py), c in counts_plus.items()
    )
    gamma_count = matched // 2
    anomaly = gamma_count != 2 * r_star

    even_x = [(x, y) for x, y in _reps_from_pairs(pairs, _PRIME_CACHE) if x % 2 == 0]
    if len(even_x) != r_star:
        raise VerificationError(
            f"n={n}: even-abscissa count {len(even_x)} != expected {r_star}"
        )
    disc = _uniform_discrepancy(even_x) if r_star <= atom_cap else None
    if k_max >= 1 and n % 4 == 2 and _quarter_defect(even_x, k_max):
        anomaly = True

    return ScanRecord(
        n=n, in_N=True, r_star_m=r_star, gamma_count=gamma_count,
        discrepancy=disc, c2_abs=c2, W2_m=w2,
        omega1_m=omega1, Omega1_m=bigomega1, anomaly=anomaly,
    )


def _scan_unit(args: tuple[int, int, int, int]) -> list[ScanRecord]:
    lo, hi, k_max, atom_cap = args
    return [_record_for(n, k_max, atom_cap) for n in range(lo, hi + 1)]


def _init_worker(limit: int) -> None:
    # no-op under fork (tables inherited); rebuilds under spawn
    _ensure_tables(limit)


# --- checkpointing ---

def _write_checkpoint(path: str, cfg: ScanConfig, unit: int, nbytes: int,
                      digest: str) -> None:
    obj = {
        "version": _CHECKPOINT_VERSION, "lo": cfg.lo, "hi": cfg.hi,
        "unit_size": UNIT_SIZE, "unit": unit, "bytes": nbytes, "sha256": digest,
    }
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        json.dump(obj, fh)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _load_checkpoint(path: str, cfg: ScanConfig) -> dict:
    try:
        with open(path, encoding="ascii") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ResumeError(f"unreadable checkpoint {path}: {exc}") from exc
    for key in ("version", "lo", "hi", "unit_size", "unit", "bytes", "sha256"):
        if key not in obj:
            raise ResumeError(f"checkpoint {path} is missing field {key!r}")
    if obj["version"] != _CHECKPOINT_VERSION:
        raise ResumeError("checkpoint version mismatch")
    if (obj["lo"], obj["hi"], obj["unit_size"]) != (cfg.lo, cfg.hi, UNIT_SIZE):
        raise ResumeError("checkpoint was written for a different scan range")
    return obj


def _verified_prefix_hash(out_path: str, nbytes: int) -> "hashlib._Hash":
    hasher = hashlib.sha256()
    try:
        with open(out_path, "rb") as fh:
            remaining = nbytes
            while remaining > 0:
                chunk = fh.read(min(1 << 20, remaining))
                if not chunk:
                    raise ResumeError("output file is shorter than the checkpoint")
                hasher.update(chunk)
                remaining -= len(chunk)
    except OSError as exc:
        raise ResumeError(f"cannot reread output file: {exc}") from exc
    return hasher


def unit_count(lo: int, hi: int) -> int:
    return (hi - lo) // UNIT_SIZE + 1


def scan_range(cfg: ScanConfig) -> Iterator[ScanRecord]:
    """Scan [cfg.lo, cfg.hi], yielding records in order of n.

    Records of a unit are yielded only after the unit has been written and
    (when due) checkpointed, so consumers never see data that a crash could
    lose.  Resuming a finished scan yields nothing.
    """
    cfg.validate()
    _ensure_tables(cfg.hi + 2)
    total_units = unit_count(cfg.lo, cfg.hi)
    start_unit = 0
    out_fh = None
    hasher = hashlib.sha256()
    nbytes = 0

    if cfg.resume and cfg.checkpoint and os.path.exists(cfg.checkpoint):
        ck = _load_checkpoint(cfg.checkpoint, cfg)
        hasher = _verified_prefix_hash(cfg.out, ck["bytes"])
        if hasher.hexdigest() != ck["sha256"]:
            raise ResumeError("output prefix does not match checkpoint hash")
        nbytes = ck["bytes"]
        start_unit = ck["unit"] + 1
        if start_unit >= total_units:
            return
        out_fh = open(cfg.out, "r+b")
        out_fh.truncate(nbytes)
        out_fh.seek(nbytes)
    elif cfg.out:
        out_fh = open(cfg.out, "wb")

    done_units = 0
    pool = None
    try:
        jobs = range(start_unit, total_units)

        def unit_args(idx: int) -> tuple[int, int, int, int]:
            u_lo = cfg.lo + idx * UNIT_SIZE
            u_hi = min(u_lo + UNIT_SIZE - 1, cfg.hi)
            return (u_lo, u_hi, cfg.k_max, cfg.discrepancy_atom_cap)

        if cfg.workers > 1:
            import multiprocessing

            ctx_name = "fork" if "fork" in multiprocessing.get_all_start_methods() else "spawn"
            pool = ProcessPoolExecutor(
                max_workers=cfg.workers,
                mp_context=multiprocessing.get_context(ctx_name),
                initializer=_init_worker,
                initargs=(cfg.hi + 2,),
            )
            window = cfg.workers * 2
            pending = []
            job_iter = iter(jobs)
            for idx in job_iter:
                pending.append(pool.submit(_scan_unit, unit_args(idx)))
                if len(pending) >= window:
                    break
            job_iter_rest = job_iter

            def unit_results() -> Iterator[list[ScanRecord]]:
                while pending:
                    fut = pending.pop(0)
                    result = fut.result()
                    for nxt in job_iter_rest:
                        pending.append(pool.submit(_scan_unit, unit_args(nxt)))
                        break
                    yield result

            results = unit_results()
        else:
            results = (_scan_unit(unit_args(idx)) for idx in jobs)

        for offset, records in enumerate(results):
            unit_idx = start_unit + offset
            if out_fh is not None:
                blob = ("\n".join(r.to_json_line() for r in records) + "\n").encode("ascii")
                out_fh.write(blob)
                out_fh.flush()
                hasher.update(blob)
                nbytes += len(blob)
            is_last = unit_idx == total_units - 1 or (
                cfg.limit_units is not None and done_units + 1 >= cfg.limit_units
            )
            if cfg.checkpoint and (
                (unit_idx + 1 - start_unit) % cfg.checkpoint_interval == 0 or is_last
            ):
                os.fsync(out_fh.fileno())
                _write_checkpoint(cfg.checkpoint, cfg, unit_idx, nbytes, hasher.hexdigest())
            yield from records
            done_units += 1
            if cfg.limit_units is not None and done_units >= cfg.limit_units:
                break
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)
        if out_fh is not None:
            out_fh.close()


def read_scan_file(path: str) -> Iterator[ScanRecord]:
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield ScanRecord.from_json_line(line)


# --- aggregation over scan records ---

class CensusReport(NamedTuple):
    member_count: int
    median_exponent: float
    histogram: tuple[tuple[float, float, int], ...]
    median_discrepancy_few_points: Optional[float]
    median_discrepancy_many_points: Optional[float]
    few_points_max: int
    many_points_min: int


def census(
    x_max: int,
    records: Optional[Iterable[ScanRecord]] = None,
    workers: int = 1,
    few_points_max: int = 8,
    many_points_min: int = 64,
) -> CensusReport:
    """Count realized norms up to x_max and profile how circle sizes grow.

    The growth exponent of a record is log r*(m) / log log n; its median
    over members stays strictly between 0 and 1, reflecting that typical
    circles gain points but far slower than any power of n.
    """
    if x_max < 100:
        raise DomainError("census needs x_max >= 100")
    if records is None:
        records = scan_range(ScanConfig(lo=2, hi=x_max, workers=workers))
    count = 0
    exponents = []
    disc_few = []
    disc_many = []
    for rec in records:
        if not rec.in_N or rec.n > x_max:
            continue
        count += 1
        if rec.n <= 2 or rec.r_star_m is None:
            continue
        exponents.append(math.log(rec.r_star_m) / math.log(math.log(rec.n)))
        if rec.discrepancy is not None:
            if rec.r_star_m <= few_points_max:
                disc_few.append(rec.discrepancy)
            elif rec.r_star_m >= many_points_min:
                disc_many.append(rec.discrepancy)
    if not exponents:
        raise DomainError("census window contains no realized norms above 2")
    hi_edge = math.ceil(max(exponents) * 10) / 10
    edges = [i / 10 for i in range(int(hi_edge * 10) + 1)]
    bins = [0] * (len(edges) - 1) if len(edges) > 1 else [0]
    if len(edges) < 2:
        edges = [0.0, 0.1]
        bins = [0]
    for e in exponents:
        idx = min(int(e * 10), len(bins) - 1)
        bins[idx] += 1
    histogram = tuple(
        (edges[i], edges[i + 1], bins[i]) for i in range(len(bins))
    )
    return CensusReport(
        member_count=count,
        median_exponent=statistics.median(exponents),
        histogram=histogram,
        median_discrepancy_few_points=statistics.median(disc_few) if disc_few else None,
        median_discrepancy_many_points=statistics.median(disc_many) if disc_many else None,
        few_points_max=few_points_max,
        many_points_min=many_points_min,
    )


def find_asymmetric(
    x_max: int,
    delta: float,
    records: Optional[Iterable[ScanRecord]] = None,
    min_points: int = 1,
    workers: int = 1,
) -> list[ScanRecord]:
    """Odd realized norms whose second coefficient magnitude is >= delta,
    sorted by circle size (descending) then by n."""
    if x_max < 3:
        raise DomainError("need x_max >= 3")
    if delta <= 0:
        raise DomainError("delta must be positive")
    if records is None:
        records = scan_range(ScanConfig(lo=2, hi=x_max, workers=workers))
    hits = [
        rec for rec in records
        if rec.in_N and rec.n % 2 == 1 and rec.n <= x_max
        and rec.c2_abs is not None and rec.c2_abs >= delta
        and rec.r_star_m is not None and rec.r_star_m >= min_points
    ]
    hits.sort(key=lambda r: (-r.r_star_m, r.n))
    return hits


class SingularCandidate(NamedTuple):
    record: ScanRecord
    exact_discrepancy: Fraction


def find_singular(
    x_max: int,
    records: Optional[Iterable[ScanRecord]] = None,
    max_split_weight: int = 3,
    min_points: int = 8,
    min_discrepancy: float = 0.2,
    workers: int = 1,
) -> list[SingularCandidate]:
    """Norms whose radii have few split-prime factors yet many points and
    large discrepancy.  Each hit's discrepancy is recomputed exactly from
    the lattice points; disagreement beyond float rounding is an error."""
    if x_max < 3:
        raise DomainError("need x_max >= 3")
    if records is None:
        records = scan_range(ScanConfig(lo=2, hi=x_max, workers=workers))
    out = []
    for rec in records:
        if (
            not rec.in_N or rec.n <= 2 or rec.n > x_max
            or rec.Omega1_m is None or rec.Omega1_m > max_split_weight
            or rec.r_star_m is None or rec.r_star_m < min_points
            or rec.discrepancy is None or rec.discrepancy < min_discrepancy
        ):
            continue
        m = rec.n * rec.n - 4
        measure = AngularMeasure.from_points(lattice_points_even_x(m))
        exact = discrepancy(measure)
        if abs(float(exact) - rec.discrepancy) > 1e-9:
            raise VerificationError(
                f"n={rec.n}: scan discrepancy {rec.discrepancy} does not match "
                f"exact recomputation {float(exact)}"
            )
        out.append(SingularCandidate(rec, exact))
    out.sort(key=lambda c: (-c.record.discrepancy, c.record.n))
    return out


class SmallAnglePrime(NamedTuple):
    p: int
    x: int
    y: int
    angle: float


def find_small_angle_primes(x_max: int, eps: float) -> list[SmallAnglePrime]:
    """Split primes p = x^2 + y^2 <= x_max whose folded direction angle
    atan(y/x) (0 <= y <= x) is at most eps."""
    if not 0 < eps <= math.pi / 4:
        raise DomainError("eps must lie in (0, pi/4]")
    if x_max < 5:
        return []
    out = []
    for p in primes_upto(x_max):
        if p % 4 != 1:
            continue
        g = prime_above(p)
        x, y = abs(g.re), abs(g.im)
        if y > x:
            x, y = y, x
        angle = math.atan2(y, x)
        if angle <= eps:
            out.append(SmallAnglePrime(p, x, y, angle))
    return out


class PairCandidate(NamedTuple):
    n: int
    p: int
    q: int
    realized: bool
    point_count: Optional[int]
    discrepancy: Optional[Fraction]


def compose_prime_pairs(
    eps: float,
    p_lo: int,
    p_hi: int,
    x_max: int,
) -> list[PairCandidate]:
    """Try n = p*q + 2 for distinct small-angle primes p, q in [p_lo, p_hi].

    n - 2 = p*q is automatically a sum of two squares with nearly aligned
    prime directions; whether n is realized still hinges on n + 2, which is
    checked honestly.  Realized candidates carry the exact discrepancy of
    the circle measure at radius sqrt(n^2 - 4).
    """
    if p_lo > p_hi:
        raise DomainError("empty prime window")
    primes = [sp for sp in find_small_angle_primes(p_hi, eps) if sp.p >= p_lo]
    out = []
    for i in range(len(primes)):
        for j in range(i + 1, len(primes)):
            n = primes[i].p * primes[j].p + 2
            if n > x_max:
                continue
            if not is_sum_two_squares(n + 2):
                out.append(PairCandidate(n, primes[i].p, primes[j].p, False, None, None))
                continue
            pts = lattice_points_even_x(n * n - 4)
            measure = AngularMeasure.from_points(pts)
            out.append(PairCandidate(
                n, primes[i].p, primes[j].p, True, len(pts), discrepancy(measure),
            ))
    out.sort(key=lambda c: c.n)
    return out
