"""Command-line interface: simulate, measure, fit, gof and sweep.

Every command writes CSV tables plus a ``meta.json`` sidecar into an output
directory.  Outputs carry no timestamps and all randomness is seeded, so a
command run twice with the same inputs produces byte-identical files.

Exit codes: 0 on success, 2 for usage or validation problems, 3 for I/O
failures.  A ``--config FILE`` of ``key=value`` lines can stand in for
flags; explicitly passed flags win on conflict.  ``CUMULDYN_THREADS`` caps
the number of technologies the sweep command measures concurrently.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .core import (
    BacklinkDistribution,
    CumulativenessSeries,
    KnowledgeGraph,
    LinearFit,
    ModelParams,
    PathLengthDistribution,
    SeriesPoint,
)
from .fitting import (
    classify_relative_cumulativeness,
    fit_series,
    geometric_gof,
    invention_rate,
    ols_fit,
    pathlength_gof,
    power_law_fit,
)
from .growth import GENERATOR_NAME, simulate
from .ingest import CorpusError, TechnologyQuery, build_graph, load_corpus
from .measures import measure_checkpoints
from .predictions import rate_predictions

__all__ = ["main", "entry_point"]

_SERIES_COLUMNS = ("n", "id", "ipl", "mipl", "ed")
_FIT_COLUMNS = ("quantity", "slope", "intercept", "r2", "se", "f", "n_obs")


def _fmt(value) -> str:
    if isinstance(value, float):  # includes numpy scalars, hence the cast
        return repr(float(value))
    return str(value)


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


@dataclass
class ReportBundle:
    """Run metadata plus the tables a command is about to write.

    The metadata (command, resolved parameters, seed, package version)
    suffices to reproduce the run; tables map file names to (header, rows).
    """

    command: str
    params: dict
    diagnostics: dict = field(default_factory=dict)
    tables: dict[str, tuple[Sequence[str], list]] = field(default_factory=dict)

    def add_table(self, name: str, header: Sequence[str], rows: list) -> None:
        self.tables[name] = (header, rows)

    def write(self, out_dir: Path) -> None:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, (header, rows) in self.tables.items():
            _write_csv(out_dir / name, header, rows)
        meta = {
            "command": self.command,
            "package": "cumuldyn",
            "version": __version__,
            "params": self.params,
            "diagnostics": self.diagnostics,
            "tables": sorted(self.tables),
        }
        with open(out_dir / "meta.json", "w", encoding="utf-8") as handle:
            json.dump(meta, handle, indent=2, sort_keys=True)
            handle.write("\n")


def _load_series(path: str) -> CumulativenessSeries:
    points = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        missing = [c for c in _SERIES_COLUMNS if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"{path}: missing series column(s) {', '.join(missing)}")
        for row in reader:
            points.append(
                SeriesPoint(
                    n=int(row["n"]),
                    id=float(row["id"]),
                    ipl=float(row["ipl"]),
                    mipl=int(float(row["mipl"])),
                    ed=float(row["ed"]),
                )
            )
    if not points:
        raise ValueError(f"{path}: empty series")
    return CumulativenessSeries(checkpoints=tuple(points))


def _load_backlinks(path: str) -> list[int]:
    rows = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        for row in reader:
            rows.append((int(row["ordinal"]), int(row["m"])))
    rows.sort()
    return [m for _, m in rows]


def _parse_count(raw: str) -> int | float:
    try:
        return int(raw)
    except ValueError:
        return float(raw)


def _load_backlink_dists(path: str) -> dict[int, BacklinkDistribution]:
    grouped: dict[int, dict[int, int]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            grouped.setdefault(int(row["n"]), {})[int(row["m"])] = int(row["count"])
    return {
        n: BacklinkDistribution(n=n, counts=counts) for n, counts in grouped.items()
    }


def _load_pathlen_dists(path: str) -> dict[int, PathLengthDistribution]:
    grouped: dict[int, dict[int, tuple[int | float, float]]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            grouped.setdefault(int(row["n"]), {})[int(row["k"])] = (
                _parse_count(row["count"]),
                float(row["normalized"]),
            )
    dists = {}
    for n, entries in grouped.items():
        counts = {k: c for k, (c, _) in entries.items()}
        normalized = {k: w for k, (_, w) in entries.items()}
        positive = [k for k, c in counts.items() if c > 0]
        if not positive:
            raise ValueError(f"{path}: distribution at n={n} has no paths")
        dists[n] = PathLengthDistribution(
            n=n,
            counts=counts,
            normalized=normalized,
            ipl=sum(k * w for k, w in normalized.items()),
            mipl=max(positive),
        )
    return dists


def _query_from_args(args: argparse.Namespace) -> TechnologyQuery:
    prefixes = []
    for chunk in args.prefix or []:
        prefixes.extend(p.strip() for p in chunk.split(",") if p.strip())
    if not prefixes:
        raise ValueError("at least one --prefix is required")
    return TechnologyQuery(
        name=args.name,
        class_prefixes=frozenset(prefixes),
        year_cutoff=args.year_cutoff,
    )


def _fit_row(quantity: str, fit: LinearFit) -> list:
    return [
        quantity,
        fit.slope,
        fit.intercept,
        fit.r_squared,
        fit.residual_se,
        fit.f_statistic,
        fit.n_obs,
    ]


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def cmd_simulate(args: argparse.Namespace) -> int:
    params = ModelParams(q=args.q, m1=args.m1)
    graph = simulate(params, args.n, args.seed)
    bundle = ReportBundle(
        command="simulate",
        params={
            "q": args.q,
            "m1": args.m1,
            "n": args.n,
            "seed": args.seed,
            "rng": GENERATOR_NAME,
        },
    )
    bundle.add_table(
        "nodes.csv",
        ("node_id", "year", "classes"),
        [[node.node_id, "", "SIM"] for node in graph.nodes],
    )
    bundle.add_table(
        "edges.csv",
        ("citing_id", "cited_id", "origin"),
        [
            [graph.nodes[citing].node_id, graph.nodes[cited].node_id, ""]
            for citing, cited in graph.internal_edges
        ],
    )
    bundle.write(Path(args.out))
    return 0


def _measure_graph(
    graph: KnowledgeGraph, stride: int, mode: str, bundle: ReportBundle
) -> None:
    checkpoints = measure_checkpoints(graph, stride, mode)
    bundle.add_table(
        "series.csv",
        _SERIES_COLUMNS,
        [[cp.n, cp.id, cp.path_dist.ipl, cp.path_dist.mipl, cp.ed] for cp in checkpoints],
    )
    bundle.add_table(
        "backlink_dist.csv",
        ("n", "m", "count"),
        [
            [cp.n, m, count]
            for cp in checkpoints
            for m, count in sorted(cp.backlink_dist.counts.items())
        ],
    )
    bundle.add_table(
        "pathlen_dist.csv",
        ("n", "k", "count", "normalized"),
        [
            [cp.n, k, cp.path_dist.counts[k], cp.path_dist.normalized.get(k, 0.0)]
            for cp in checkpoints
            for k in sorted(cp.path_dist.counts)
        ],
    )
    bundle.add_table(
        "backlinks.csv",
        ("ordinal", "node_id", "m"),
        [
            [node.ordinal, node.node_id, graph.backlink_counts[node.ordinal]]
            for node in graph.nodes
        ],
    )


def cmd_measure(args: argparse.Namespace) -> int:
    query = _query_from_args(args)
    corpus = load_corpus(args.nodes, args.edges)
    graph, diagnostics = build_graph(
        corpus, query, origin=args.origin, granted_only=args.granted_only
    )
    bundle = ReportBundle(
        command="measure",
        params={
            "nodes": args.nodes,
            "edges": args.edges,
            "technology": query.name,
            "prefixes": sorted(query.class_prefixes),
            "year_cutoff": query.year_cutoff,
            "origin": args.origin,
            "granted_only": args.granted_only,
            "stride": args.stride,
            "mode": args.mode,
        },
        diagnostics={
            **diagnostics.as_dict(),
            "self_citations_dropped": corpus.self_citations_dropped,
        },
    )
    _measure_graph(graph, args.stride, args.mode, bundle)
    bundle.write(Path(args.out))
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    series = _load_series(args.series)
    backlinks_path = args.backlinks
    if backlinks_path is None:
        sibling = Path(args.series).parent / "backlinks.csv"
        if sibling.exists():
            backlinks_path = str(sibling)
    backlinks = _load_backlinks(backlinks_path) if backlinks_path else None

    rows = []
    fitted: dict[str, LinearFit] = {}
    for quantity in ("id", "ipl", "mipl"):
        fitted[quantity] = fit_series(series, quantity)
        rows.append(_fit_row(quantity, fitted[quantity]))

    q_hat = fitted["id"].slope
    m0_hat = fitted["id"].intercept
    n_final = series.checkpoints[-1].n
    if q_hat <= 0:
        raise ValueError(
            f"fitted id slope {q_hat!r} is not positive; rate predictions "
            "are undefined for this series"
        )
    rates = rate_predictions(q_hat, m0_hat, n_final, backlinks=backlinks)
    bundle = ReportBundle(
        command="fit",
        params={
            "series": args.series,
            "backlinks": backlinks_path,
            "n_final": n_final,
        },
    )
    bundle.add_table("fits.csv", _FIT_COLUMNS, rows)
    bundle.add_table(
        "rates.csv",
        ("p", "q_prime_a", "p_prime_a", "q_prime_b", "p_prime_b", "v", "delta_n"),
        [
            [
                rates.p,
                rates.q_prime_a,
                rates.p_prime_a,
                rates.q_prime_b,
                rates.p_prime_b,
                rates.v,
                rates.delta_n,
            ]
        ],
    )
    bundle.write(Path(args.out))
    return 0


def _read_fitted_params(path: str) -> tuple[float, float]:
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            if row.get("quantity") == "id":
                return float(row["slope"]), float(row["intercept"])
    raise ValueError(f"{path}: no 'id' row to take fitted q and m0 from")


def cmd_gof(args: argparse.Namespace) -> int:
    if args.fits is not None:
        q_hat, m0_hat = _read_fitted_params(args.fits)
    elif args.q is not None and args.m0 is not None:
        q_hat, m0_hat = args.q, args.m0
    else:
        raise ValueError("either --fits or both --q and --m0 are required")
    params = ModelParams(q=q_hat, m1=m0_hat + 1.0)
    families = [f.strip() for f in args.families.split(",") if f.strip()]

    summary_rows = []
    point_rows = []
    if args.backlink_dist:
        for n, hist in sorted(_load_backlink_dists(args.backlink_dist).items()):
            fit = geometric_gof(hist, params, n)
            statistic, dof, p_value = fit.chi_square
            summary_rows.append(
                [n, "backlinks", fit.family, fit.plot_correlation, statistic, dof, p_value]
            )
            point_rows.extend(
                [n, "backlinks", fit.family, m, emp, mod]
                for m, (emp, mod) in enumerate(fit.plot_points)
            )
    if args.pathlen_dist:
        for n, dist in sorted(_load_pathlen_dists(args.pathlen_dist).items()):
            for family in families:
                fit = pathlength_gof(dist, family=family)
                statistic, dof, p_value = fit.chi_square
                summary_rows.append(
                    [n, "pathlengths", family, fit.plot_correlation, statistic, dof, p_value]
                )
                point_rows.extend(
                    [n, "pathlengths", family, k, emp, mod]
                    for k, (emp, mod) in enumerate(fit.plot_points)
                )
    if not summary_rows:
        raise ValueError("nothing to check: pass --backlink-dist and/or --pathlen-dist")

    bundle = ReportBundle(
        command="gof",
        params={
            "q": q_hat,
            "m0": m0_hat,
            "backlink_dist": args.backlink_dist,
            "pathlen_dist": args.pathlen_dist,
            "families": families,
        },
    )
    bundle.add_table(
        "gof_summary.csv",
        ("n", "target", "family", "correlation", "chi2", "dof", "p_value"),
        summary_rows,
    )
    bundle.add_table(
        "gof_points.csv",
        ("n", "target", "family", "value", "empirical", "model"),
        point_rows,
    )
    bundle.write(Path(args.out))
    return 0


def _read_tech_table(path: str) -> dict[str, set[str]]:
    techs: dict[str, set[str]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        missing = [c for c in ("group_name", "prefix") if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"{path}: missing column(s) {', '.join(missing)}")
        for row in reader:
            name = (row.get("group_name") or "").strip()
            prefix = (row.get("prefix") or "").strip()
            if not name or not prefix:
                raise ValueError(f"{path}:{reader.line_num}: empty group_name or prefix")
            techs.setdefault(name, set()).add(prefix)
    if not techs:
        raise ValueError(f"{path}: no technologies listed")
    return techs


def _sweep_one(corpus, name, prefixes, args):
    query = TechnologyQuery(
        name=name, class_prefixes=frozenset(prefixes), year_cutoff=args.year_cutoff
    )
    graph, _ = build_graph(
        corpus, query, origin=args.origin, granted_only=args.granted_only
    )
    checkpoints = measure_checkpoints(graph, args.stride, args.mode)
    series = CumulativenessSeries(checkpoints=tuple(cp.point for cp in checkpoints))
    last = series.checkpoints[-1]
    q_hat = p_hat = math.nan
    if len(series) >= 3:
        q_hat = fit_series(series, "id").slope
        p_hat = fit_series(series, "ipl").slope
    else:
        print(
            f"warning: {name}: only {len(series)} checkpoint(s) at stride "
            f"{args.stride}; slopes reported as nan",
            file=sys.stderr,
        )
    try:
        rate = invention_rate(graph)
    except ValueError:
        print(
            f"warning: {name}: missing years, invention rate reported as nan",
            file=sys.stderr,
        )
        rate = math.nan
    return {
        "tech": name,
        "n": last.n,
        "id": last.id,
        "ipl": last.ipl,
        "q": q_hat,
        "p": p_hat,
        "rate": rate,
    }


def cmd_sweep(args: argparse.Namespace) -> int:
    techs = _read_tech_table(args.tech_table)
    corpus = load_corpus(args.nodes, args.edges)
    env_threads = os.environ.get("CUMULDYN_THREADS")
    max_workers = max(1, int(env_threads)) if env_threads else min(8, os.cpu_count() or 1)
    names = sorted(techs)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(
            pool.map(lambda name: _sweep_one(corpus, name, techs[name], args), names)
        )

    labels = [""] * len(results)
    cross_rows = []
    classifiable = [
        i for i, r in enumerate(results) if r["n"] > 0 and r["id"] > 0
    ]
    if len(results) < 3:
        print(
            "warning: fewer than 3 technologies; cross-technology fits skipped",
            file=sys.stderr,
        )
    else:
        ids = [r["id"] for r in results]
        ipls = [r["ipl"] for r in results]
        try:
            cross_rows.append(_fit_row("id_on_ipl", ols_fit(ipls, ids)) + ["", ""])
            cross_rows.append(_fit_row("ipl_on_id", ols_fit(ids, ipls)) + ["", ""])
        except ValueError as exc:
            print(f"warning: pairwise id/ipl fit skipped: {exc}", file=sys.stderr)
        if len(classifiable) >= 3:
            points = [(float(results[i]["n"]), results[i]["id"]) for i in classifiable]
            try:
                cls_labels, (exponent, prefactor, fit) = classify_relative_cumulativeness(
                    points
                )
            except ValueError as exc:
                print(
                    f"warning: relative-cumulativeness labels skipped: {exc}",
                    file=sys.stderr,
                )
            else:
                for i, label in zip(classifiable, cls_labels):
                    labels[i] = label
                cross_rows.append(_fit_row("id_on_n_loglog", fit) + [exponent, prefactor])
        else:
            print(
                "warning: fewer than 3 technologies with positive id; "
                "relative-cumulativeness labels skipped",
                file=sys.stderr,
            )
        rate_points = [
            (r["q"], r["rate"])
            for r in results
            if math.isfinite(r["rate"]) and math.isfinite(r["q"]) and r["q"] > 0 and r["rate"] > 0
        ]
        if len(rate_points) >= 3:
            try:
                exponent, prefactor, fit = power_law_fit(
                    [p[0] for p in rate_points], [p[1] for p in rate_points]
                )
            except ValueError as exc:
                print(f"warning: power-law fit skipped: {exc}", file=sys.stderr)
            else:
                cross_rows.append(
                    _fit_row("rate_on_q_loglog", fit) + [exponent, prefactor]
                )
        else:
            print(
                "warning: fewer than 3 technologies with positive rate and q; "
                "power-law fit skipped",
                file=sys.stderr,
            )

    bundle = ReportBundle(
        command="sweep",
        params={
            "nodes": args.nodes,
            "edges": args.edges,
            "tech_table": args.tech_table,
            "stride": args.stride,
            "year_cutoff": args.year_cutoff,
            "origin": args.origin,
            "granted_only": args.granted_only,
            "mode": args.mode,
            "technologies": names,
            "max_workers": max_workers,
        },
    )
    bundle.add_table(
        "sweep.csv",
        ("tech", "n", "id", "ipl", "q", "p", "rate", "cumulativeness"),
        [
            [r["tech"], r["n"], r["id"], r["ipl"], r["q"], r["p"], r["rate"], label]
            for r, label in zip(results, labels)
        ],
    )
    bundle.add_table(
        "cross_fits.csv",
        ("relation",) + _FIT_COLUMNS[1:] + ("exponent", "prefactor"),
        cross_rows,
    )
    bundle.write(Path(args.out))
    return 0


# --------------------------------------------------------------------------
# Argument parsing
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cumuldyn",
        description="Measure and model the cumulativeness of technologies.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate", help="grow a synthetic citation corpus", allow_abbrev=False
    )
    sim.add_argument("--q", type=float, required=True, help="knowledge-need growth rate")
    sim.add_argument("--m1", type=float, required=True, help="initial knowledge need (> 1)")
    sim.add_argument("--n", type=int, required=True, help="number of inventions")
    sim.add_argument("--seed", type=int, default=0, help="64-bit random seed")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--config", help="key=value file standing in for flags")
    sim.set_defaults(func=cmd_simulate)

    mea = sub.add_parser(
        "measure", help="measure indicators of one technology", allow_abbrev=False
    )
    mea.add_argument("--nodes", required=True, help="nodes CSV path")
    mea.add_argument("--edges", required=True, help="citations CSV path")
    mea.add_argument("--name", default="technology", help="technology name")
    mea.add_argument(
        "--prefix",
        action="append",
        help="class prefix selecting the technology (repeatable or comma-separated)",
    )
    mea.add_argument("--year-cutoff", type=int, default=None, help="keep years <= cutoff")
    mea.add_argument("--origin", choices=("all", "app"), default="all")
    mea.add_argument("--granted-only", action="store_true")
    mea.add_argument("--stride", type=int, default=100, help="checkpoint spacing")
    mea.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    mea.add_argument("--out", required=True, help="output directory")
    mea.add_argument("--config", help="key=value file standing in for flags")
    mea.set_defaults(func=cmd_measure)

    fit = sub.add_parser(
        "fit", help="fit growth rates to a measured series", allow_abbrev=False
    )
    fit.add_argument("--series", required=True, help="series.csv path")
    fit.add_argument(
        "--backlinks",
        help="backlinks.csv path (default: sibling of --series when present)",
    )
    fit.add_argument("--out", required=True, help="output directory")
    fit.add_argument("--config", help="key=value file standing in for flags")
    fit.set_defaults(func=cmd_fit)

    gof = sub.add_parser(
        "gof", help="goodness of fit of the predicted distributions", allow_abbrev=False
    )
    gof.add_argument("--backlink-dist", help="backlink_dist.csv path")
    gof.add_argument("--pathlen-dist", help="pathlen_dist.csv path")
    gof.add_argument("--fits", help="fits.csv path to read fitted q and m0 from")
    gof.add_argument("--q", type=float, help="fitted id slope")
    gof.add_argument("--m0", type=float, help="fitted id intercept")
    gof.add_argument(
        "--families",
        default="binomial-type",
        help="comma list of path-length families to try",
    )
    gof.add_argument("--out", required=True, help="output directory")
    gof.add_argument("--config", help="key=value file standing in for flags")
    gof.set_defaults(func=cmd_gof)

    swp = sub.add_parser(
        "sweep", help="measure and compare many technologies", allow_abbrev=False
    )
    swp.add_argument("--nodes", required=True, help="nodes CSV path")
    swp.add_argument("--edges", required=True, help="citations CSV path")
    swp.add_argument(
        "--tech-table", required=True, help="CSV of group_name,prefix rows"
    )
    swp.add_argument("--year-cutoff", type=int, default=None)
    swp.add_argument("--origin", choices=("all", "app"), default="all")
    swp.add_argument("--granted-only", action="store_true")
    swp.add_argument("--stride", type=int, default=100)
    swp.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    swp.add_argument("--out", required=True, help="output directory")
    swp.add_argument("--config", help="key=value file standing in for flags")
    swp.set_defaults(func=cmd_sweep)
    return parser


def _read_config(path: str) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as handle:
        for line_num, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ValueError(f"{path}:{line_num}: expected key=value")
            key, _, value = stripped.partition("=")
            values[key.strip()] = value.strip()
    return values


def _merge_config(argv: list[str], config: dict[str, str]) -> list[str]:
    """Turn config entries into flags placed before the explicit ones.

    Later occurrences win for plain flags; for the repeatable --prefix the
    config entry is dropped entirely when the command line has its own.
    """
    explicit = {
        token.split("=", 1)[0][2:].replace("_", "-")
        for token in argv[1:]
        if token.startswith("--")
    }
    synthetic: list[str] = []
    for key, value in sorted(config.items()):
        flag = key.replace("_", "-")
        if flag == "config" or flag in explicit:
            continue
        if value.lower() == "true":
            synthetic.append(f"--{flag}")
        elif value.lower() == "false":
            continue
        else:
            synthetic.extend([f"--{flag}", value])
    return [argv[0], *synthetic, *argv[1:]]


def _config_path(argv: list[str]) -> str | None:
    for i, token in enumerate(argv):
        if token == "--config":
            return argv[i + 1] if i + 1 < len(argv) else None
        if token.startswith("--config="):
            return token.split("=", 1)[1]
    return None


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    config_file = _config_path(argv)
    if config_file is not None:
        try:
            config = _read_config(config_file)
        except OSError as exc:
            print(f"cumuldyn: {exc}", file=sys.stderr)
            return 3
        except ValueError as exc:
            print(f"cumuldyn: {exc}", file=sys.stderr)
            return 2
        argv = _merge_config(argv, config)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CorpusError,) as exc:
        print(f"cumuldyn: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"cumuldyn: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cumuldyn: {exc}", file=sys.stderr)
        return 3


def entry_point() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
