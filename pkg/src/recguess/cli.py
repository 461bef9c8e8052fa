"""Command line interface.

Subcommands:

  guess       find a plausible recurrence for a sequence
  minterms    smallest prefix from which a method recovers a recurrence
  bound       Bombieri-Vaaler and soft bounds for a guessing cell
  experiment  synthetic minimal-N experiment over planted recurrences
  bruteforce  exhaustive small-coefficient search against a reference
  compare     classical vs lattice term counts on the bundled corpus

All reports are deterministic for fixed arguments: JSON key order is
fixed, CSV rows are emitted in a fixed order, and every random draw is
seeded.  Figures (--plot) are rendered with matplotlib when requested.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

from .analysis import (
    BruteForceSpec,
    BudgetExceededError,
    ExperimentRow,
    brute_force_counts,
    bv_bound,
    generic_experiment,
    search_space_size,
    soft_bound,
)
from .exact_linalg import MinorEnumerationLimitError, minor_gcd
from .guesser import (
    ALGORITHMS,
    CellResult,
    GuessProblem,
    build_matrix,
    default_families,
    default_grid,
    min_terms,
    run_cell,
)
from .lattice import ReductionParams
from .poly_basis import BasisFamily, make_family
from .recurrence import (
    LeadingCoefficientZeroError,
    Recurrence,
    SequenceData,
    format_recurrence,
    integrality_check,
    sequence_from,
    unroll,
)
from .sequences import CORPUS


def _parse_terms(text: str) -> list[Fraction]:
    items = [t for chunk in text.split(",") for t in chunk.split()]
    if not items:
        raise ValueError("empty term list")
    return [Fraction(t) for t in items]


def parse_bfile(path: str) -> tuple[list[Fraction], int]:
    """Parse an OEIS-style b-file: 'index value' per line, '#' comments.

    Returns the values and the offset (index of the first line).
    Indices must be consecutive.
    """
    values: list[Fraction] = []
    offset = 0
    expected: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'index value'")
            idx = int(parts[0])
            if expected is None:
                offset = idx
            elif idx != expected:
                raise ValueError(f"{path}:{lineno}: index {idx}, expected {expected}")
            expected = idx + 1
            values.append(Fraction(parts[1]))
    if not values:
        raise ValueError(f"{path}: no terms found")
    return values, offset


def _load_data(args: argparse.Namespace) -> SequenceData:
    if getattr(args, "bfile", None):
        values, offset = parse_bfile(args.bfile)
        if getattr(args, "offset", None) is not None:
            offset = args.offset
        return sequence_from(values, offset)
    if getattr(args, "terms", None):
        offset = args.offset if getattr(args, "offset", None) is not None else 0
        return sequence_from(_parse_terms(args.terms), offset)
    raise SystemExit("error: provide --terms or --bfile")


def _parse_int_list(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "-" in chunk[1:]:
            lo, hi = chunk.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    if not out:
        raise ValueError("empty integer list")
    return tuple(out)


def _family(args: argparse.Namespace, order: int) -> BasisFamily:
    return make_family(args.basis, order, getattr(args, "shift", None))


def _params(args: argparse.Namespace) -> ReductionParams:
    return ReductionParams(delta=Fraction(args.lll_delta))


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _add_data_arguments(p: argparse.ArgumentParser) -> None:
    p.add_argument("--terms", help="comma or space separated terms (fractions allowed)")
    p.add_argument("--bfile", help="OEIS-style b-file to read terms from")
    p.add_argument("--offset", type=int, default=None,
                   help="index of the first term (default 0, or the b-file's)")


def _add_common_guess_arguments(p: argparse.ArgumentParser, basis_default: str = "standard",
                                allow_all_bases: bool = False) -> None:
    choices = ["standard", "shifted", "binomial", "shifted-binomial"]
    if allow_all_bases:
        choices.insert(0, "all")
    p.add_argument("--basis", default=basis_default, choices=choices,
                   help="coefficient basis family")
    p.add_argument("--shift", type=int, default=None,
                   help="shift for the shifted families (default: order // 2)")
    p.add_argument("--lll-delta", default="99/100",
                   help="LLL quality parameter delta as a fraction")
    p.add_argument("--primes", default="",
                   help="comma separated primes to use first in the modular algorithm")
    p.add_argument("--plausibility-terms", type=int, default=10,
                   help="terms to continue when testing integrality")


# ---------------------------------------------------------------- guess

def _cmd_guess(args: argparse.Namespace) -> int:
    data = _load_data(args)
    params = _params(args)
    primes = _parse_int_list(args.primes) if args.primes else ()
    horizon = args.plausibility_terms
    algorithm = args.algorithm

    plans: list[tuple[str, GuessProblem]] = []
    if args.order is not None and (args.degree_min is not None or args.degree_max is not None):
        dmin = args.degree_min if args.degree_min is not None else 0
        dmax = args.degree_max if args.degree_max is not None else dmin
        algo = algorithm or "incremental"
        if dmin != dmax and algo != "incremental":
            raise SystemExit("error: a degree range needs --algorithm incremental")
        plans.append((algo, GuessProblem(
            data, args.order, dmin, dmax,
            family=_family(args, args.order), params=params,
            primes=primes, horizon=horizon,
        )))
    elif args.order is not None and args.degree is not None:
        algo = algorithm or "hnf-lll"
        plans.append((algo, GuessProblem.cell(
            data, args.order, args.degree,
            family=_family(args, args.order), params=params,
            primes=primes, horizon=horizon,
        )))
    else:
        cells = default_grid(data.last_index, args.max_order, args.max_degree)
        if args.order is not None:
            cells = [(r, d) for r, d in cells if r == args.order]
        if args.degree is not None:
            cells = [(r, d) for r, d in cells if d == args.degree]
        if not cells:
            print("no ansatz cells to try; provide more terms or explicit --order/--degree",
                  file=sys.stderr)
            return 1
        algo = algorithm or "hnf-lll"
        if algo == "incremental":
            orders = sorted({r for r, _ in cells})
            for r in orders:
                ds = [d for rr, d in cells if rr == r]
                plans.append((algo, GuessProblem(
                    data, r, min(ds), max(ds),
                    family=_family(args, r), params=params,
                    primes=primes, horizon=horizon,
                )))
        else:
            for r, d in cells:
                plans.append((algo, GuessProblem.cell(
                    data, r, d,
                    family=_family(args, r), params=params,
                    primes=primes, horizon=horizon,
                )))

    tried = []
    for algo, problem in plans:
        try:
            result = run_cell(problem, algo)
        except Exception as exc:  # cell-level failure should not kill the scan
            tried.append({"order": problem.order, "degree": problem.degree_max,
                          "error": str(exc)})
            continue
        rec = result.recurrence
        cell_note = {"order": problem.order, "degree": result.degree
                     if result.degree is not None else problem.degree_max}
        if rec is None:
            tried.append(cell_note)
            continue
        if not _plausible(rec, data, horizon):
            tried.append(cell_note)
            continue
        _report_guess(args, data, rec, result, problem.family)
        return 0
    if args.json:
        _emit_json({"recurrence": None, "cellsTried": tried})
    else:
        print(f"no plausible recurrence found ({len(tried)} cells tried)")
    return 1


def _plausible(rec: Recurrence, data: SequenceData, horizon: int) -> bool:
    if data.is_integral():
        return integrality_check(rec, data, horizon)
    return True


def _predicted_next(rec: Recurrence, data: SequenceData) -> Fraction | None:
    try:
        return unroll(rec, data.terms, len(data) + 1)[-1]
    except LeadingCoefficientZeroError:
        return None


def _fraction_json(x: Fraction | None):
    if x is None:
        return None
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def _report_guess(args, data: SequenceData, rec: Recurrence, result: CellResult,
                  family: BasisFamily) -> None:
    nxt = _predicted_next(rec, data)
    integral = integrality_check(rec, data, args.plausibility_terms)
    if args.json:
        _emit_json({
            "order": rec.order,
            "degree": rec.degree,
            "basisFamily": family.label(),
            "coefficients": [list(row) for row in rec.coeffs],
            "matchedTerms": len(data),
            "predictedNext": _fraction_json(nxt),
            "integral": integral,
            "kernelDim": result.kernel_dim,
            "supNorm": rec.sup_norm(),
            "algorithm": result.algorithm,
            "recurrence": format_recurrence(rec),
            "offset": data.offset,
        })
        return
    print(f"recurrence: {format_recurrence(rec)}")
    print(f"order: {rec.order}  degree: {rec.degree}  basis: {family.label()}")
    print(f"algorithm: {result.algorithm}  kernel dimension: {result.kernel_dim}")
    print(f"sup norm: {rec.sup_norm()}  matched terms: {len(data)}")
    print(f"integral continuation ({args.plausibility_terms} terms): "
          f"{'yes' if integral else 'no'}")
    if nxt is not None:
        print(f"predicted next term: {nxt}")
    else:
        print("predicted next term: undefined (leading coefficient vanishes)")


# ------------------------------------------------------------- minterms

def _cmd_minterms(args: argparse.Namespace) -> int:
    data = _load_data(args)
    params = _params(args)
    primes = _parse_int_list(args.primes) if args.primes else ()
    dmin = args.degree_min if args.degree_min is not None else args.degree
    dmax = args.degree_max if args.degree_max is not None else args.degree
    if dmin is None:
        raise SystemExit("error: provide --degree or --degree-min/--degree-max")
    if dmin != dmax and args.algorithm != "incremental":
        raise SystemExit("error: a degree range needs --algorithm incremental")
    if args.basis == "all":
        families = None
    else:
        families = [make_family(args.basis, args.order, args.shift)]
    result = min_terms(
        data, args.order, dmin, dmax,
        algorithm=args.algorithm,
        families=families,
        params=params,
        primes=primes,
        horizon=args.plausibility_terms,
    )
    if result is None:
        if args.json:
            _emit_json({"count": None})
        else:
            print("no prefix of the supplied data admits a fitting recurrence")
        return 1
    if args.json:
        _emit_json({
            "count": result.count,
            "order": result.recurrence.order,
            "degree": result.recurrence.degree,
            "algorithm": result.algorithm,
            "basisFamily": result.family.label(),
            "supNorm": result.recurrence.sup_norm(),
            "recurrence": format_recurrence(result.recurrence),
        })
    else:
        print(f"minimal terms: {result.count} (of {len(data)} supplied)")
        print(f"algorithm: {result.algorithm}  basis: {result.family.label()}")
        print(f"recurrence: {format_recurrence(result.recurrence)}")
    return 0


# ---------------------------------------------------------------- bound

def _cmd_bound(args: argparse.Namespace) -> int:
    data = _load_data(args)
    family = _family(args, args.order)
    gm = build_matrix(data, args.order, args.degree, family)
    n_val = data.last_index
    soft = soft_bound(args.order, args.degree)
    payload: dict = {
        "order": args.order,
        "degree": args.degree,
        "rows": gm.rows,
        "cols": gm.cols,
        "dataN": n_val,
        "softBoundN": soft,
        "belowSoftBound": n_val <= soft,
    }
    if gm.rows < gm.cols:
        try:
            g = minor_gcd(gm.matrix)
        except MinorEnumerationLimitError:
            g = None
        bound = bv_bound(gm.matrix, g if g is not None and g > 0 else 1)
        payload["minorGcd"] = g
        payload["bvBound"] = bound if bound != float("inf") else "inf"
    else:
        payload["minorGcd"] = None
        payload["bvBound"] = None
    if args.json:
        _emit_json(payload)
        return 0
    print(f"guess matrix: {gm.rows} rows x {gm.cols} cols (N = {n_val})")
    if payload["bvBound"] is not None:
        g_text = payload["minorGcd"] if payload["minorGcd"] is not None else "1 (too many minors)"
        print(f"minor gcd: {g_text}")
        print(f"kernel vector sup-norm bound: {payload['bvBound']}")
    else:
        print("kernel vector sup-norm bound: n/a (matrix is not underdetermined)")
    print(f"soft bound on N: {soft:.3f} "
          f"({'at or below' if n_val <= soft else 'above'} it with N = {n_val})")
    return 0


# ----------------------------------------------------------- experiment

def _cmd_experiment(args: argparse.Namespace) -> int:
    orders = _parse_int_list(args.orders)
    degrees = _parse_int_list(args.degrees)
    progress = None
    if args.progress:
        def progress(done: int, total: int) -> None:
            print(f"experiment: {done}/{total} trials", file=sys.stderr)
    rows = generic_experiment(orders, degrees, args.bitsize, args.trials, args.seed,
                              algorithm=args.algorithm, progress=progress)
    out, close = _open_out(args.csv)
    try:
        writer = csv.writer(out)
        writer.writerow(["r", "d", "trial", "minN"])
        for row in rows:
            writer.writerow([row.order, row.degree, row.trial, row.min_n])
    finally:
        if close:
            out.close()
    if args.plot:
        from .plots import render_experiment

        render_experiment(rows, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


# ----------------------------------------------------------- bruteforce

def _cmd_bruteforce(args: argparse.Namespace) -> int:
    data = _load_data(args)
    if not data.is_integral():
        raise SystemExit("error: brute force needs integer reference terms")
    reference = [int(t) for t in data.terms]
    horizon = args.horizon
    if horizon >= len(reference):
        raise SystemExit("error: horizon exceeds the supplied reference terms")
    progress = None
    if args.progress:
        def progress(done: int, total: int) -> None:
            pct = 100.0 * done / total
            print(f"bruteforce: {pct:5.1f}% of coefficient grids", file=sys.stderr)
    space = search_space_size(args.order, args.degree, args.coeff_bound, args.init_bound)
    if args.table:
        targets = {n: reference[n] for n in range(args.order, horizon + 1)}
    else:
        idx = args.target_index if args.target_index is not None else horizon
        targets = {idx: reference[idx]}
    try:
        counts, examples = brute_force_counts(
            args.order, args.degree, args.coeff_bound, args.init_bound, horizon,
            targets, budget=args.budget, huge=args.huge, progress=progress,
        )
    except BudgetExceededError as exc:
        raise SystemExit(f"error: {exc}")
    if args.table:
        out, close = _open_out(args.csv)
        try:
            writer = csv.writer(out)
            writer.writerow(["n", "target", "count"])
            for n in sorted(counts):
                writer.writerow([n, targets[n], counts[n]])
        finally:
            if close:
                out.close()
        return 0
    idx = next(iter(targets))
    if args.json:
        _emit_json({
            "searchSpace": space,
            "targetIndex": idx,
            "targetValue": targets[idx],
            "count": counts[idx],
            "examples": [
                {"recurrence": format_recurrence(rec), "initial": list(init)}
                for rec, init in examples[idx]
            ],
        })
        return 0
    print(f"search space: {space} cases "
          f"(coefficients in [-{args.coeff_bound}, {args.coeff_bound}], "
          f"initials in [0, {args.init_bound}])")
    print(f"sequences matching a({idx}) = {targets[idx]}: {counts[idx]}")
    for rec, init in examples[idx]:
        print(f"  {format_recurrence(rec)}   initial {list(init)}")
    return 0


# -------------------------------------------------------------- compare

def _cmd_compare(args: argparse.Namespace) -> int:
    results = []
    for entry in CORPUS:
        length = (entry.order + 1) * (entry.degree + 2) + args.margin
        data = sequence_from(entry.generator(length))
        classical = min_terms(data, entry.order, entry.degree, entry.degree,
                              algorithm="classical")
        lll = min_terms(data, entry.order, entry.degree, entry.degree,
                        algorithm="hnf-lll")
        if classical is None or lll is None:
            raise RuntimeError(f"no recurrence found for corpus entry {entry.name}")
        results.append((entry, classical, lll))
    out, close = _open_out(args.csv)
    try:
        writer = csv.writer(out)
        writer.writerow(["name", "order", "degree", "classicalTerms", "lllTerms",
                         "basis", "savingsPercent"])
        for entry, classical, lll in results:
            saving = 100.0 * (classical.count - lll.count) / classical.count
            writer.writerow([entry.name, entry.order, entry.degree,
                             classical.count, lll.count,
                             lll.family.label(), f"{saving:.1f}"])
    finally:
        if close:
            out.close()
    if args.plot:
        from .plots import render_compare

        render_compare(
            [(e.name, c.count, l.count) for e, c, l in results], args.plot
        )
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


# ----------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recguess",
        description="Guess linear recurrences with polynomial coefficients from few terms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("guess", help="guess a recurrence for the given terms")
    _add_data_arguments(p)
    _add_common_guess_arguments(p)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--degree-min", type=int, default=None)
    p.add_argument("--degree-max", type=int, default=None)
    p.add_argument("--max-order", type=int, default=None,
                   help="cap the order in the automatic cell scan")
    p.add_argument("--max-degree", type=int, default=None,
                   help="cap the degree in the automatic cell scan")
    p.add_argument("--algorithm", choices=list(ALGORITHMS), default=None,
                   help="guessing algorithm (default hnf-lll, or incremental "
                        "when a degree range is given)")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=_cmd_guess)

    p = sub.add_parser("minterms", help="minimal prefix length for a method")
    _add_data_arguments(p)
    _add_common_guess_arguments(p, basis_default="all", allow_all_bases=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--degree-min", type=int, default=None)
    p.add_argument("--degree-max", type=int, default=None)
    p.add_argument("--algorithm", choices=list(ALGORITHMS), default="hnf-lll")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_minterms)

    p = sub.add_parser("bound", help="predictive bounds for a guessing cell")
    _add_data_arguments(p)
    _add_common_guess_arguments(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("experiment", help="synthetic minimal-N experiment")
    p.add_argument("--orders", default="4,8", help="orders, e.g. 4,8")
    p.add_argument("--degrees", default="0-6", help="degrees, e.g. 0-6 or 0,2,4")
    p.add_argument("--bitsize", type=int, default=16, help="coefficient bitsize l")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithm", choices=["classical", "hnf-lll", "modular", "incremental"],
                   default="modular",
                   help="guess path for the scan (modular stays fast as terms grow)")
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    p.add_argument("--plot", default=None, help="render a figure to this path")
    p.add_argument("--progress", action="store_true", help="progress on stderr")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("bruteforce", help="exhaustive small-coefficient search")
    _add_data_arguments(p)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--coeff-bound", type=int, default=2)
    p.add_argument("--init-bound", type=int, default=3)
    p.add_argument("--horizon", type=int, default=10)
    p.add_argument("--target-index", type=int, default=None,
                   help="index whose value must match (default: the horizon)")
    p.add_argument("--table", action="store_true",
                   help="CSV of counts for every index up to the horizon")
    p.add_argument("--csv", default=None, help="CSV output path for --table")
    p.add_argument("--budget", type=int, default=10 ** 8,
                   help="refuse enumerations larger than this")
    p.add_argument("--huge", action="store_true",
                   help="allow enumerations beyond the budget (hours of runtime)")
    p.add_argument("--progress", action="store_true", help="progress on stderr")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_bruteforce)

    p = sub.add_parser("compare", help="classical vs lattice guessing on the corpus")
    p.add_argument("--margin", type=int, default=6,
                   help="extra validation terms beyond the classical need")
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    p.add_argument("--plot", default=None, help="render a figure to this path")
    p.set_defaults(func=_cmd_compare)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
