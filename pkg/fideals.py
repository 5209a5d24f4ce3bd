from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import pandas as pd

from census.census import DEFAULT_SEED, CensusEntry, SuiteReport, census, equivalence_suite
from fideal import add_report_columns, analyze_ideal
from monomial.complexes import (
    f_vector,
    facet_complex,
    hilbert_function_bruteforce,
    hilbert_series,
    nonface_complex,
)
from monomial.decomposition import primary_decomposition
from monomial.errors import InvariantError, TheoremViolation
from monomial.ideal import SquareFreeIdeal, parse_ideal, read_ideal

SUBCOMMANDS = ("check", "fvector", "decompose", "hilbert", "census", "suite")
DEFAULT_PAIRS = ((4, 2), (5, 2), (5, 3))

EXIT_OK = 0
EXIT_NOT_F_IDEAL = 1
EXIT_INPUT_ERROR = 2
EXIT_THEOREM_VIOLATION = 3

STRICT_THEOREM_HELP = "exit 3 on any disagreement with the characterization, not only on implementation faults"


def utc_now_iso() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def ensure_output_dir(path: str) -> None:
    os.makedirs(path, exist_ok=True)


def setup_logging(level: str = "INFO", output_dir: Optional[str] = None) -> logging.Logger:
    logger = logging.getLogger("fideals")
    if logger.handlers:
        return logger  # avoid duplicate handlers when main() runs more than once

    logger.setLevel(getattr(logging, level.upper(), logging.INFO))
    logger.propagate = False

    fmt = logging.Formatter("%(asctime)sZ %(levelname)s %(message)s")

    ch = logging.StreamHandler(stream=sys.stderr)
    ch.setFormatter(fmt)
    logger.addHandler(ch)

    if output_dir:
        ensure_output_dir(output_dir)
        fh = logging.FileHandler(os.path.join(output_dir, "fideals.log"), encoding="utf-8")
        fh.setFormatter(fmt)
        logger.addHandler(fh)

    return logger


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    input: Optional[str] = None
    format: str = "text"
    strict: bool = True
    workers: int = 1
    seed: int = DEFAULT_SEED
    force: bool = False
    fast: bool = False
    expect_f_ideal: bool = False
    strict_theorem: bool = False
    output_dir: Optional[str] = None
    n: Optional[int] = None
    d: Optional[int] = None
    representatives: int = 5
    orbits: bool = False
    watch: Tuple[str, ...] = ()
    pairs: Tuple[Tuple[int, int], ...] = DEFAULT_PAIRS
    samples: int = 200
    terms: int = 6
    verify: bool = False
    progress: bool = False

    def __post_init__(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.subcommand in ("census", "suite"):
            if self.subcommand == "census" and (self.n is None or self.d is None):
                raise ValueError("census needs --n and --d")
        elif not self.input:
            raise ValueError(f"{self.subcommand} needs an ideal: a file path, '-' for stdin, or --ideal")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")


def parse_pairs(text: str) -> Tuple[Tuple[int, int], ...]:
    """'4,2 5,3' -> ((4, 2), (5, 3))"""
    pairs = []
    for token in text.replace(";", " ").split():
        try:
            n, d = (int(x) for x in token.split(","))
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"pair {token!r} is not of the form n,d") from e
        pairs.append((n, d))
    if not pairs:
        raise argparse.ArgumentTypeError("no (n,d) pairs given")
    return tuple(pairs)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--log-level", default=os.getenv("FIDEALS_LOG_LEVEL", "INFO"))
    common.add_argument("--output-dir", default=os.getenv("FIDEALS_OUTPUT_DIR") or None)
    common.add_argument("--seed", type=int, default=int(os.getenv("FIDEALS_SEED", str(DEFAULT_SEED))))

    ideal_args = argparse.ArgumentParser(add_help=False)
    ideal_args.add_argument("path", nargs="?", help="ideal file, or '-' for stdin")
    ideal_args.add_argument("--ideal", help='inline ideal, e.g. "n=5; 124 125 345 145 235"')
    ideal_args.add_argument(
        "--strict",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="reject duplicate or non-minimal generators (default: on for check, off elsewhere)",
    )

    scan_args = argparse.ArgumentParser(add_help=False)
    scan_args.add_argument("--workers", type=int, default=int(os.getenv("FIDEALS_WORKERS", "1")))
    scan_args.add_argument("--force", action="store_true", help="allow scans above 10^9 candidates")
    scan_args.add_argument("--progress", action=argparse.BooleanOptionalAction, default=sys.stderr.isatty())
    scan_args.add_argument("--strict-theorem", action="store_true", help=STRICT_THEOREM_HELP)

    parser = argparse.ArgumentParser(description="Square-free monomial ideals: complexes, f-vectors and f-ideals.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    check = sub.add_parser("check", parents=[common, ideal_args], help="decide the f-ideal property")
    check.add_argument("--expect-f-ideal", action="store_true", help="exit 1 when the ideal is not an f-ideal")
    check.add_argument("--fast", action="store_true", help="trust the characterization, skip the f-vector comparison")
    check.add_argument("--strict-theorem", action="store_true", help=STRICT_THEOREM_HELP)

    sub.add_parser("fvector", parents=[common, ideal_args], help="both complexes and their f-vectors")
    sub.add_parser("decompose", parents=[common, ideal_args], help="minimal primary decomposition")

    hilbert = sub.add_parser("hilbert", parents=[common, ideal_args], help="Hilbert series of S/I")
    hilbert.add_argument("--terms", type=int, default=6, help="Hilbert function values to list")
    hilbert.add_argument("--verify", action="store_true", help="recount each value by enumerating monomials")

    cen = sub.add_parser("census", parents=[common, scan_args], help="count f-ideals at (n, d)")
    cen.add_argument("--n", type=int, required=True)
    cen.add_argument("--d", type=int, required=True)
    cen.add_argument("--representatives", type=int, default=5)
    cen.add_argument("--orbits", action="store_true", help="one representative per relabeling orbit (n <= 6)")
    cen.add_argument("--watch", action="append", default=[], help="ideal (file or inline) to report on")

    suite = sub.add_parser("suite", parents=[common, scan_args], help="theorem-equivalence suite")
    suite.add_argument("--pairs", type=parse_pairs, default=DEFAULT_PAIRS, help="e.g. '4,2 5,2 5,3'")
    suite.add_argument("--samples", type=int, default=200, help="pruned candidates to sample per pair")

    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    source = None
    if ns.subcommand not in ("census", "suite"):
        source = ns.ideal if ns.ideal else ns.path
    strict = getattr(ns, "strict", None)
    return CliConfig(
        subcommand=ns.subcommand,
        input=source,
        format=ns.format,
        strict=(ns.subcommand == "check") if strict is None else strict,
        workers=getattr(ns, "workers", 1),
        seed=ns.seed,
        force=getattr(ns, "force", False),
        fast=getattr(ns, "fast", False),
        expect_f_ideal=getattr(ns, "expect_f_ideal", False),
        strict_theorem=getattr(ns, "strict_theorem", False),
        output_dir=ns.output_dir,
        n=getattr(ns, "n", None),
        d=getattr(ns, "d", None),
        representatives=getattr(ns, "representatives", 5),
        orbits=getattr(ns, "orbits", False),
        watch=tuple(getattr(ns, "watch", ())),
        pairs=getattr(ns, "pairs", DEFAULT_PAIRS),
        samples=getattr(ns, "samples", 200),
        terms=getattr(ns, "terms", 6),
        verify=getattr(ns, "verify", False),
        progress=getattr(ns, "progress", False),
    )


def load_ideal(config: CliConfig, stdin: Optional[TextIO] = None) -> SquareFreeIdeal:
    assert config.input is not None
    if config.input == "-":
        return parse_ideal((stdin or sys.stdin).read(), strict=config.strict)
    return read_ideal(config.input, strict=config.strict)


def _emit(out: TextIO, config: CliConfig, text: str, payload: Dict[str, object]) -> None:
    if config.format == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text)


def _facets_json(masks: Sequence) -> List[List[int]]:
    return [list(f.members) for f in masks]


def cmd_check(config: CliConfig, ideal: SquareFreeIdeal, out: TextIO) -> int:
    report = analyze_ideal(ideal, fast=config.fast)
    payload = {"ideal": str(ideal), **report.to_json()}
    _emit(out, config, f"ideal: {ideal}\n" + report.render_text(), payload)
    if report.implementation_fault or (config.strict_theorem and report.theorem_violation):
        return EXIT_THEOREM_VIOLATION
    if config.expect_f_ideal and not report.f_ideal:
        return EXIT_NOT_F_IDEAL
    return EXIT_OK


def cmd_fvector(config: CliConfig, ideal: SquareFreeIdeal, out: TextIO) -> int:
    facet, nonface = facet_complex(ideal), nonface_complex(ideal)
    ff, fn = f_vector(facet), f_vector(nonface)
    text = (
        f"δ_F(I) = {facet.render()}\n"
        f"f(δ_F) = {ff.render()}\n"
        f"δ_N(I) = {nonface.render()}\n"
        f"f(δ_N) = {fn.render()}\n"
    )
    payload = {
        "n": ideal.n,
        "facet_complex": _facets_json(facet.facets),
        "f_facet": list(ff.counts),
        "nonface_complex": _facets_json(nonface.facets),
        "f_nonface": list(fn.counts),
    }
    _emit(out, config, text, payload)
    return EXIT_OK


def cmd_decompose(config: CliConfig, ideal: SquareFreeIdeal, out: TextIO) -> int:
    dec = primary_decomposition(ideal, seed=config.seed)
    text = (
        f"{dec.render()}\n"
        f"components: {len(dec)}  height: {dec.height}  unmixed: {str(dec.unmixed).lower()}\n"
    )
    _emit(out, config, text, dec.to_json())
    return EXIT_OK


def cmd_hilbert(config: CliConfig, ideal: SquareFreeIdeal, out: TextIO) -> int:
    series = hilbert_series(f_vector(nonface_complex(ideal)), ideal.n)
    reduced = series.reduced()
    values = series.expand(config.terms - 1) if config.terms > 0 else []
    if config.verify:
        for j, value in enumerate(values):
            expected = hilbert_function_bruteforce(ideal, j)
            if value != expected:
                raise InvariantError(f"Hilbert function at degree {j}: series gives {value}, direct count {expected}")
    text = (
        f"H(t) = {series.render()}\n"
        f"     = {reduced.render()}\n"
        f"Hilbert function: {', '.join(str(v) for v in values)}\n"
    )
    payload = {
        "n": ideal.n,
        "numerator": list(series.numerator),
        "denominator_power": series.denominator_power,
        "reduced": {"numerator": list(reduced.numerator), "denominator_power": reduced.denominator_power},
        "coefficients": values,
    }
    _emit(out, config, text, payload)
    return EXIT_OK


def load_existing_census(path: str) -> pd.DataFrame:
    if not os.path.exists(path):
        return pd.DataFrame()
    try:
        return pd.read_csv(path)
    except Exception:
        return pd.DataFrame()


def dedupe(df: pd.DataFrame) -> pd.DataFrame:
    if df is None or df.empty:
        return df
    # a re-run of the same (n, d) replaces the older row
    return df.drop_duplicates(subset=["kind", "n", "d"], keep="last").sort_values(by=["kind", "n", "d"])


def _census_rows(entries: Sequence[CensusEntry], kind: str) -> pd.DataFrame:
    rows = []
    for e in entries:
        row = {k: v for k, v in e.to_json().items() if not isinstance(v, (list, dict))}
        row["kind"] = kind
        row["finished_at"] = utc_now_iso()
        rows.append(row)
    return pd.DataFrame(rows)


def render_census_html(df: pd.DataFrame, out_path: str, *, title: str = "f-ideal census") -> None:
    table_html = df.to_html(index=False, escape=True, border=0, table_id="census")
    html = """<!doctype html>
<html lang="en">
<head>
  <meta charset="utf-8" />
  <title>{TITLE}</title>
  <style>
    body {{ font-family: ui-sans-serif, system-ui, sans-serif; margin: 24px; color: #111827; }}
    .meta {{ color: #6b7280; margin-bottom: 16px; }}
    table {{ border-collapse: collapse; }}
    th, td {{ border-bottom: 1px solid #e5e7eb; padding: 8px 12px; text-align: right; }}
    th {{ background: #f9fafb; }}
  </style>
</head>
<body>
  <h1>{TITLE}</h1>
  <div class="meta">Last generated: {UTC_NOW} | Rows: {ROWS}</div>
  {TABLE_HTML}
</body>
</html>
"""
    html = html.format(TITLE=title, UTC_NOW=utc_now_iso(), ROWS=len(df), TABLE_HTML=table_html)
    with open(out_path, "w", encoding="utf-8") as f:
        f.write(html)


def write_artifacts(
    output_dir: str, entries: Sequence[CensusEntry], kind: str, started: str, logger: logging.Logger
) -> Dict[str, object]:
    ensure_output_dir(output_dir)
    census_csv = os.path.join(output_dir, "census.csv")
    census_html = os.path.join(output_dir, "census.html")

    existing = load_existing_census(census_csv)
    new_rows = _census_rows(entries, kind)
    all_df = pd.concat([existing, new_rows], ignore_index=True) if not existing.empty else new_rows
    all_df = dedupe(all_df)
    all_df.to_csv(census_csv, index=False)
    logger.info(f"Saved census table to {census_csv} ({len(all_df)} rows)")
    render_census_html(all_df, census_html)
    logger.info(f"Rendered census table to {census_html}")

    for e in entries:
        if not e.representatives:
            continue
        reps = pd.DataFrame({"ideal": list(e.representatives)})
        reps = add_report_columns(reps)
        reps["ideal"] = reps["ideal"].apply(lambda g: g.render().strip().replace("\n", "; "))
        reps_csv = os.path.join(output_dir, f"representatives_n{e.n}_d{e.d}.csv")
        reps.to_csv(reps_csv, index=False)
        logger.info(f"Saved {len(reps)} representatives to {reps_csv}")

    status = {
        "ok": all(e.ok for e in entries),
        "started_at": started,
        "finished_at": utc_now_iso(),
        "rows_total": int(len(all_df)),
        "rows_new": int(len(new_rows)),
        "census_csv": os.path.abspath(census_csv),
        "census_html": os.path.abspath(census_html),
    }
    with open(os.path.join(output_dir, "last_run.json"), "w", encoding="utf-8") as f:
        json.dump(status, f, indent=2)
    return status


def cmd_census(config: CliConfig, out: TextIO, logger: logging.Logger) -> int:
    started = utc_now_iso()
    watch = [read_ideal(w, strict=False) for w in config.watch]
    assert config.n is not None and config.d is not None
    entry = census(
        config.n,
        config.d,
        workers=config.workers,
        representatives=config.representatives,
        orbits=config.orbits,
        force=config.force,
        progress=config.progress,
        watch=watch,
    )
    _emit(out, config, entry.render_text(), entry.to_json())
    if config.output_dir:
        write_artifacts(config.output_dir, [entry], "census", started, logger)
    if not entry.ok or (config.strict_theorem and not entry.theorem_holds):
        return EXIT_THEOREM_VIOLATION
    return EXIT_OK


def cmd_suite(config: CliConfig, out: TextIO, logger: logging.Logger) -> int:
    started = utc_now_iso()
    report: SuiteReport = equivalence_suite(
        config.pairs,
        workers=config.workers,
        samples=config.samples,
        seed=config.seed,
        force=config.force,
        progress=config.progress,
    )
    _emit(out, config, report.render_text(), report.to_json())
    if config.output_dir:
        write_artifacts(config.output_dir, report.entries, "suite", started, logger)
    if not report.ok or (config.strict_theorem and not report.theorem_holds):
        return EXIT_THEOREM_VIOLATION
    return EXIT_OK


def run(config: CliConfig, *, out: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> int:
    """Execute one subcommand; results go to `out`, diagnostics to the log."""
    out = out or sys.stdout
    logger = logging.getLogger("fideals")
    try:
        if config.subcommand == "census":
            return cmd_census(config, out, logger)
        if config.subcommand == "suite":
            return cmd_suite(config, out, logger)
        ideal = load_ideal(config, stdin)
        handler = {
            "check": cmd_check,
            "fvector": cmd_fvector,
            "decompose": cmd_decompose,
            "hilbert": cmd_hilbert,
        }[config.subcommand]
        return handler(config, ideal, out)
    except (InvariantError, TheoremViolation) as e:
        logger.error("THEOREM-VIOLATION: %s", e)
        return EXIT_THEOREM_VIOLATION
    except (ValueError, OSError) as e:
        logger.error("%s", e)
        return EXIT_INPUT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logger = setup_logging(ns.log_level, ns.output_dir)
    try:
        config = config_from_args(ns)
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_INPUT_ERROR
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
