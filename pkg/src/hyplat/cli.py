"""Command line interface.

Exit codes: 0 success, 1 verification/consistency failure, 2 usage error
(argparse), 3 domain error (invalid argument values), 4 capacity error
(input beyond supported bounds).  Results go to stdout or --out; logs and
progress go to stderr.  Output bytes are reproducible unless --timestamp
is given.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import math
import sys
from fractions import Fraction
from typing import Optional

from . import angular, density, hunt, hyperbolic, zint
from .directions import angle_float
from .errors import CapacityError, DomainError, ResumeError, VerificationError


def _timestamp() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def _fmt_fraction(fr: Fraction, as_float: bool) -> str:
    if as_float:
        return "%.17g" % float(fr)
    return f"{fr.numerator}/{fr.denominator}"


def _fmt_float(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], rows: list[list[str]], timestamp: bool) -> str:
    buf = io.StringIO()
    if timestamp:
        buf.write(f"# generated_at={_timestamp()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj: dict, timestamp: bool) -> str:
    if timestamp:
        obj = {"generated_at": _timestamp(), **obj}
    return json.dumps(obj, indent=2) + "\n"


def _pick_format(args: argparse.Namespace, default: str) -> str:
    return args.format if args.format else default


# --- commands ---

def _cmd_verify(args: argparse.Namespace) -> int:
    if args.n is not None:
        targets = [args.n]
    else:
        targets = [n for n in range(3, args.upto + 1) if hyperbolic.norm_occurs(n)]
    reports = [hyperbolic.verify_angle_correspondence(n) for n in targets]
    failures = [r for r in reports if not r.passed]

    fmt = _pick_format(args, "csv")
    if fmt == "json":
        obj = {
            "checked": len(reports),
            "failed": len(failures),
            "results": [
                {
                    "n": r.n, "matrices": r.matrix_count, "points": r.point_count,
                    "expected": r.expected_count, "passed": r.passed,
                }
                for r in reports
            ],
        }
        _emit(_json_text(obj, args.timestamp), args.out)
    else:
        rows = [
            [str(r.n), str(r.matrix_count), str(r.point_count),
             str(r.expected_count), "ok" if r.passed else "FAIL"]
            for r in reports
        ]
        header = ["n", "matrices", "points", "expected", "status"]
        _emit(_csv_text(header, rows, args.timestamp), args.out)
    for r in failures:
        print(
            f"n={r.n}: missing={r.missing[:8]} extra={r.extra[:8]} "
            f"bad_multiplicity={r.bad_multiplicity[:8]} "
            f"fast_path_agrees={r.fast_path_agrees}",
            file=sys.stderr,
        )
    print(
        f"checked {len(reports)} norms: {len(reports) - len(failures)} ok, "
        f"{len(failures)} failed",
        file=sys.stderr,
    )
    return 1 if failures else 0


def _cmd_gamma(args: argparse.Namespace) -> int:
    mats = hyperbolic.matrices_with_norm(args.n)
    fmt = _pick_format(args, "csv")
    if fmt == "csv":
        rows = []
        for m in mats:
            x1, x2, x3, x4 = m.column_forms()
            y1, y2, y3, y4 = m.y_quadruple()
            rows.append([str(v) for v in (m.a, m.b, m.c, m.d, x1, x2, x3, x4, y1, y2, y3, y4)])
        header = ["a", "b", "c", "d", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"]
        _emit(_csv_text(header, rows, args.timestamp), args.out)
    else:
        obj = {
            "n": args.n,
            "count": len(mats),
            "matrices": [
                {
                    "a": m.a, "b": m.b, "c": m.c, "d": m.d,
                    "x": list(m.column_forms()), "y": list(m.y_quadruple()),
                }
                for m in mats
            ],
        }
        _emit(_json_text(obj, args.timestamp), args.out)
    return 0


def _cmd_measure(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.circle is None):
        raise DomainError("give exactly one of --n or --circle")
    if args.n is not None:
        measure = angular.orbit_angle_measure(args.n)
        m_radius = args.n * args.n - 4
    else:
        measure = angular.circle_angle_measure(args.circle)
        m_radius = args.circle

    if args.raw_points:
        pts = zint.repr_two_squares(m_radius)
        rows = [[str(x), str(y), str(int(x % 2 == 0))] for x, y in pts]
        _emit(_csv_text(["x", "y", "even_x"], rows, args.timestamp), args.out)
        return 0

    if args.k is not None:
        coeff = measure.fourier(args.k)
        obj = {
            "k": coeff.k,
            "real": _fmt_fraction(coeff.real, args.float),
            "imag": _fmt_fraction(coeff.imag, args.float),
            "exact": coeff.exact,
            "magnitude": coeff.magnitude(),
        }
        _emit(_json_text(obj, args.timestamp), args.out)
        return 0

    if args.stats:
        disc = angular.discrepancy(measure)
        defect = angular.symmetry_defect(measure)
        bound = angular.erdos_turan_bound(measure, args.kmax)
        obj = {
            "atoms": len(measure.atoms),
            "discrepancy": float(disc),
            "discrepancy_exact": _fmt_fraction(disc, False),
            "erdos_turan_bound": bound,
            "erdos_turan_k_max": args.kmax,
            "c2_abs": defect.c2.magnitude(),
            "quarter_defect": defect.quarter_defect,
        }
        _emit(_json_text(obj, args.timestamp), args.out)
        return 0

    fmt = _pick_format(args, "csv")
    if fmt == "csv":
        # lift each atom direction back to its lattice point on the circle
        # so the export carries the geometry (one point per direction here)
        rows = []
        for (dx, dy), w in measure.atoms:
            k2, rem = divmod(m_radius, dx * dx + dy * dy)
            k = math.isqrt(k2)
            if rem or k * k != k2:
                raise VerificationError(
                    f"atom ({dx},{dy}) does not lift to radius^2 {m_radius}"
                )
            rows.append(
                [str(k * dx), str(k * dy), str(w.numerator),
                 str(w.denominator), repr(angle_float(dx, dy))]
            )
        _emit(_csv_text(angular.CSV_HEADER, rows, args.timestamp), args.out)
    else:
        _emit(_json_text(angular.measure_to_json(measure), args.timestamp), args.out)
    return 0


def _cmd_w2(args: argparse.Namespace) -> int:
    val = angular.chi2_sum(args.m, check=not args.no_check)
    fmt = _pick_format(args, "json")
    if fmt == "json":
        obj = {
            "m": args.m,
            "W2": _fmt_fraction(val, args.float),
            "W2_float": float(val),
            "cross_checked": not args.no_check,
        }
        _emit(_json_text(obj, args.timestamp), args.out)
    else:
        rows = [[str(args.m), _fmt_fraction(val, args.float), repr(float(val))]]
        _emit(_csv_text(["m", "W2", "W2_float"], rows, args.timestamp), args.out)
    return 0


def _cmd_scan(args: argparse.Namespace) -> int:
    fmt = _pick_format(args, "json")
    if fmt == "csv" and args.checkpoint:
        raise DomainError("checkpoints cover the JSONL format only")
    cfg = hunt.ScanConfig(
        lo=args.lo, hi=args.hi, workers=args.workers, k_max=args.kmax,
        out=args.out if fmt == "json" else None,
        checkpoint=args.checkpoint, resume=args.resume,
        checkpoint_interval=args.checkpoint_interval, limit_units=args.limit_units,
    )
    members = 0
    total = 0
    if fmt == "csv":
        rows = []
        for rec in hunt.scan_range(cfg):
            total += 1
            members += rec.in_N
            obj = rec.to_json_obj()
            row = []
            for name in hunt._RECORD_FIELDS:
                val = obj[name]
                if val is None:
                    row.append("")
                elif isinstance(val, bool):
                    row.append("true" if val else "false")
                else:
                    row.append(str(val))
            rows.append(row + [str(int(rec.anomaly))])
        header = list(hunt._RECORD_FIELDS) + ["anomaly"]
        _emit(_csv_text(header, rows, args.timestamp), args.out)
    else:
        stream = None if args.out else sys.stdout
        for rec in hunt.scan_range(cfg):
            total += 1
            members += rec.in_N
            if stream is not None:
                stream.write(rec.to_json_line() + "\n")
    print(f"scanned {total} norms, {members} realized", file=sys.stderr)
    return 0


def _records_source(args: argparse.Namespace):
    if getattr(args, "from_scan", None):
        return hunt.read_scan_file(args.from_scan)
    return None


def _cmd_census(args: argparse.Namespace) -> int:
    rep = hunt.census(args.upto, records=_records_source(args), workers=args.workers)
    fmt = _pick_format(args, "json")
    if fmt == "json":
        obj = {
            "upto": args.upto,
            "member_count": rep.member_count,
            "median_exponent": rep.median_exponent,
            "histogram": [
                {"lo": lo, "hi": hi, "count": c} for lo, hi, c in rep.histogram
            ],
            "median_discrepancy_few_points": rep.median_discrepancy_few_points,
            "median_discrepancy_many_points": rep.median_discrepancy_many_points,
            "few_points_max": rep.few_points_max,
            "many_points_min": rep.many_points_min,
        }
        _emit(_json_text(obj, args.timestamp), args.out)
    else:
        rows = [[repr(lo), repr(hi), str(c)] for lo, hi, c in rep.histogram]
        _emit(_csv_text(["exponent_lo", "exponent_hi", "count"], rows, args.timestamp), args.out)
        print(
            f"members={rep.member_count} median_exponent={rep.median_exponent!r}",
            file=sys.stderr,
        )
    return 0


def _cmd_hunt_asym(args: argparse.Namespace) -> int:
    hits = hunt.find_asymmetric(
        args.upto, args.delta, records=_records_source(args),
        min_points=args.min_points, workers=args.workers,
    )
    rows = [
        [
            str(r.n), str(r.r_star_m), _fmt_float(r.c2_abs),
            _fmt_fraction(r.W2_m, args.float), str(r.gamma_count),
            _fmt_float(r.discrepancy),
        ]
        for r in hits
    ]
    header = ["n", "r_star_m", "c2_abs", "W2_m", "gamma_count", "discrepancy"]
    fmt = _pick_format(args, "csv")
    if fmt == "csv":
        _emit(_csv_text(header, rows, args.timestamp), args.out)
    else:
        obj = {"hits": [r.to_json_obj() for r in hits]}
        _emit(_json_text(obj, args.timestamp), args.out)
    return 0


def _cmd_hunt_singular(args: argparse.Namespace) -> int:
    hits = hunt.find_singular(
        args.upto, records=_records_source(args),
        max_split_weight=args.max_split_weight, min_points=args.min_points,
        min_discrepancy=args.min_discrepancy, workers=args.workers,
    )
    fmt = _pick_format(args, "csv")
    if fmt == "csv":
        rows = [
            [
                str(c.record.n), str(c.record.r_star_m), str(c.record.Omega1_m),
                _fmt_float(c.record.discrepancy),
                _fmt_fraction(c.exact_discrepancy, args.float),
            ]
            for c in hits
        ]
        header = ["n", "r_star_m", "Omega1_m", "discrepancy", "discrepancy_exact"]
        _emit(_csv_text(header, rows, args.timestamp), args.out)
    else:
        obj = {
            "hits": [
                {
                    **c.record.to_json_obj(),
                    "discrepancy_exact": _fmt_fraction(c.exact_discrepancy, False),
                }
                for c in hits
            ]
        }
        _emit(_json_text(obj, args.timestamp), args.out)
    return 0


def _cmd_primes(args: argparse.Namespace) -> int:
    if args.compose:
        cands = hunt.compose_prime_pairs(args.eps, args.p_lo, args.p_hi, args.upto)
        rows = [
            [
                str(c.n), str(c.p), str(c.q), str(int(c.realized)),
                "" if c.point_count is None else str(c.point_count),
                "" if c.discrepancy is None else _fmt_fraction(c.discrepancy, args.float),
            ]
            for c in cands
        ]
        header = ["n", "p", "q", "realized", "point_count", "discrepancy"]
        _emit(_csv_text(header, rows, args.timestamp), args.out)
        return 0
    hits = hunt.find_small_angle_primes(args.upto, args.eps)
    fmt = _pick_format(args, "csv")
    if fmt == "csv":
        rows = [[str(h.p), str(h.x), str(h.y), repr(h.angle)] for h in hits]
        _emit(_csv_text(["p", "x", "y", "angle"], rows, args.timestamp), args.out)
    else:
        obj = {
            "eps": args.eps,
            "hits": [{"p": h.p, "x": h.x, "y": h.y, "angle": h.angle} for h in hits],
        }
        _emit(_json_text(obj, args.timestamp), args.out)
    return 0


def _cmd_density(args: argparse.Namespace) -> int:
    if args.at is not None:
        obj = {
            "x": args.at,
            "closed": density.density_closed(args.at),
            "series": density.density_series(args.at, args.tol),
            "cdf": density.density_cdf(args.at),
        }
        _emit(_json_text(obj, args.timestamp), args.out)
        return 0
    grid = density.density_grid(args.grid, args.tol)
    fmt = _pick_format(args, "csv")
    if fmt == "csv":
        rows = [[repr(x), repr(p)] for x, p in grid]
        _emit(_csv_text(["x", "p"], rows, args.timestamp), args.out)
    else:
        obj = {"grid": [{"x": x, "p": p} for x, p in grid]}
        _emit(_json_text(obj, args.timestamp), args.out)
    return 0


def _cmd_realparts(args: argparse.Namespace) -> int:
    if args.n is not None:
        values = density.real_parts_mod1(args.n)
    else:
        if args.lo is None or args.hi is None:
            raise DomainError("give --n or both --lo and --hi")
        values = density.real_parts_window(args.lo, args.hi)
    fmt = _pick_format(args, "csv")
    if fmt == "csv":
        rows = [
            [str(v.numerator), str(v.denominator), repr(float(v))] for v in values
        ]
        _emit(_csv_text(["value_num", "value_den", "value_float"], rows, args.timestamp), args.out)
    else:
        obj = {"values": [_fmt_fraction(v, args.float) for v in values]}
        _emit(_json_text(obj, args.timestamp), args.out)
    if args.ks:
        stat = density.ks_statistic(values)
        print(f"ks_statistic={stat!r} sample_size={len(values)}", file=sys.stderr)
    return 0


# --- parser ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyplat",
        description="Angular statistics of modular-group orbits and"
        " two-squares lattice circles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_fmt: Optional[str] = None) -> None:
        p.add_argument("--format", choices=["csv", "json"], default=default_fmt)
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument(
            "--float", action="store_true",
            help="print exact rationals as 17-digit floats",
        )
        p.add_argument(
            "--timestamp", action="store_true",
            help="include a generation timestamp (off by default so output"
            " bytes are reproducible)",
        )

    p = sub.add_parser("verify", help="check orbit directions against circle points")
    p.add_argument("--n", type=int, help="verify a single squared norm")
    p.add_argument("--upto", type=int, default=300,
                   help="verify every realized norm in [3, UPTO]")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gamma", help="list matrices of a given squared norm")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser("measure", help="angular measure of an orbit or circle")
    p.add_argument("--n", type=int, help="squared matrix norm (orbit measure)")
    p.add_argument("--circle", type=int, help="radius squared (circle measure)")
    p.add_argument(
        "--raw-points", action="store_true",
        help="emit all lattice points on the circle instead of reduced atoms",
    )
    p.add_argument("--k", type=int, help="emit the k-th Fourier coefficient only")
    p.add_argument("--stats", action="store_true",
                   help="emit discrepancy / symmetry summary instead of atoms")
    p.add_argument("--kmax", type=int, default=16,
                   help="frequency cutoff for --stats bound")
    common(p)
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("w2", help="quadratic-character prime sum at radius^2 m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--no-check", action="store_true",
                   help="skip the direct-summation cross check")
    common(p)
    p.set_defaults(func=_cmd_w2)

    p = sub.add_parser("scan", help="stream per-norm records over a range")
    p.add_argument("--lo", type=int, default=2)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--kmax", type=int, default=0,
                   help="if >= 2, flag quarter-symmetry defects up to this frequency")
    p.add_argument("--checkpoint", help="checkpoint JSON path (requires --out)")
    p.add_argument("--resume", action="store_true",
                   help="resume from the checkpoint if present")
    p.add_argument("--checkpoint-interval", type=int, default=1,
                   help="units between checkpoints")
    p.add_argument("--limit-units", type=int, default=None,
                   help="stop after this many units (for testing resume)")
    common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("census", help="membership count and circle-size profile")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--from-scan", help="reuse records from a scan JSONL file")
    common(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("hunt-asym", help="find angularly asymmetric orbits")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--min-points", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--from-scan", help="reuse records from a scan JSONL file")
    common(p)
    p.set_defaults(func=_cmd_hunt_asym)

    p = sub.add_parser("hunt-singular",
                       help="find large near-singular orbit measures")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--max-split-weight", type=int, default=3)
    p.add_argument("--min-points", type=int, default=8)
    p.add_argument("--min-discrepancy", type=float, default=0.2)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--from-scan", help="reuse records from a scan JSONL file")
    common(p)
    p.set_defaults(func=_cmd_hunt_singular)

    p = sub.add_parser("primes", help="split primes with nearly axial directions")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--compose", action="store_true",
                   help="compose pairs into candidate norms n = p*q + 2")
    p.add_argument("--p-lo", type=int, default=5)
    p.add_argument("--p-hi", type=int, default=1000)
    common(p)
    p.set_defaults(func=_cmd_primes)

    p = sub.add_parser("density", help="limit density of real parts mod 1")
    p.add_argument("--grid", type=int, default=1001,
                   help="number of grid points over [0, 1]")
    p.add_argument("--at", type=float, help="evaluate at a single x instead")
    p.add_argument("--tol", type=float, default=1e-12)
    common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("realparts", help="orbit real parts reduced mod 1")
    p.add_argument("--n", type=int)
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)
    p.add_argument("--ks", action="store_true",
                   help="also print the KS distance against the limit density")
    common(p)
    p.set_defaults(func=_cmd_realparts)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except ResumeError as exc:
        print(f"resume failed: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
