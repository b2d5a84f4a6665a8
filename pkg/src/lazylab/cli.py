"""Command-line front end: lazy-lab <gen|analyze|evolve|detect-discord|sparsity|sweep>.

All subcommands are deterministic given their full flag set (including
--seed), write to stdout unless an output path is given, and use exit
codes 0 (success), 2 (input/parse error) and 3 (numerical-domain error,
i.e. rank deficiency without --regularize).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import statefile
from .dynamics import decompose_hamiltonian, record_trajectory
from .laziness import (
    RankDeficientStateError,
    correlation_measures,
    laziness_commutator,
    rate_bounds,
)
from .protocol import (
    DEFAULT_DETECT_THRESHOLD,
    DEFAULT_LAZY_TOL,
    bound_sweep,
    detect_discord,
    sparsity_scan,
)
from .states import (
    BipartiteState,
    derive_rng,
    ginibre_mixed,
    haar_random_pure,
    maximally_entangled,
    product_state,
    zero_discord_state,
)
from .statefile import StateFileError

GEN_KINDS = ("product", "bell", "maxent", "zerodiscord", "haarpure", "ginibre")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_quote(field: str) -> str:
    if "," in field or '"' in field:
        return '"' + field.replace('"', '""') + '"'
    return field


def _csv_text(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _parse_probs(text: str) -> list[float]:
    try:
        probs = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"cannot parse probabilities {text!r}: {exc}") from exc
    if not probs:
        raise ValueError("at least one probability is required")
    return probs


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "bell":
        state = maximally_entangled(2)
        sf = statefile.from_bipartite(state)
    elif kind == "maxent":
        sf = statefile.from_bipartite(maximally_entangled(args.d))
    elif kind == "ginibre":
        rank = args.rank if args.rank is not None else args.ds * args.de
        rho = ginibre_mixed(args.ds * args.de, rank, derive_rng(args.seed, 0))
        sf = statefile.from_bipartite(BipartiteState(ds=args.ds, de=args.de, matrix=rho))
    elif kind == "haarpure":
        chi = haar_random_pure(args.ds * args.de, derive_rng(args.seed, 0))
        sf = statefile.from_vector(chi, args.ds, args.de)
    elif kind == "product":
        rank_s = args.rank_s if args.rank_s is not None else args.ds
        rank_e = args.rank_e if args.rank_e is not None else args.de
        s = ginibre_mixed(args.ds, rank_s, derive_rng(args.seed, 0))
        e = ginibre_mixed(args.de, rank_e, derive_rng(args.seed, 1))
        sf = statefile.from_bipartite(product_state(s, e))
    elif kind == "zerodiscord":
        probs = _parse_probs(args.probs)
        ds = len(probs)
        rank = args.rank if args.rank is not None else args.de
        basis = [np.eye(ds, dtype=complex)[:, j] for j in range(ds)]
        envs = [ginibre_mixed(args.de, rank, derive_rng(args.seed, j)) for j in range(ds)]
        sf = statefile.from_bipartite(zero_discord_state(probs, basis, envs))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown kind {kind!r}")
    _emit(statefile.dumps(sf), args.out)
    return 0


def _correlation_payload(report) -> dict:
    return {
        "mutual_information": report.mutual_information,
        "negativity": report.negativity,
        "system_entropy": report.system_entropy,
        "environment_entropy": report.environment_entropy,
        "total_entropy": report.total_entropy,
        "entanglement_entropy": report.entanglement_entropy,
        "pure_discord": report.pure_discord,
        "robustness_pure": report.robustness_pure,
    }


def _rate_payload(report) -> dict:
    return {
        "entropy_rate": report.entropy_rate,
        "purity_rate": report.purity_rate,
        "moment_rates": {str(n): v for n, v in sorted(report.moment_rates.items())},
        "entropy_bound": report.entropy_bound,
        "purity_bound": report.purity_bound,
        "mi_purity_bound": report.mi_purity_bound,
        "h_int_operator_norm": report.h_int_operator_norm,
        "ln_commutator_trace_norm": report.ln_commutator_trace_norm,
        "h_int_norm_kind": report.h_int_norm_kind,
    }


def _flatten(payload: dict, prefix: str = "") -> list[tuple[str, object]]:
    items: list[tuple[str, object]] = []
    for key in sorted(payload):
        value = payload[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(_flatten(value, prefix=f"{name}."))
        else:
            items.append((name, value))
    return items


def cmd_analyze(args) -> int:
    state = statefile.load_state(args.state)
    comm = laziness_commutator(state, tol=args.tol)
    corr = correlation_measures(state)
    payload = {
        "dims": [state.ds, state.de],
        "commutator": {
            "trace_norm": comm.trace_norm,
            "frobenius_norm": comm.frobenius_norm,
            "lazy": comm.lazy,
            "tolerance": comm.tolerance,
        },
        "correlations": _correlation_payload(corr),
    }
    if args.hamiltonian is not None:
        h_tot = statefile.load_hamiltonian(args.hamiltonian)
        triple = decompose_hamiltonian(h_tot, state.ds, state.de)
        ns = tuple(int(n) for n in args.moments.split(",")) if args.moments else ()
        report = rate_bounds(state, triple.h_int, ns=ns, regularize=args.regularize)
        payload["rates"] = _rate_payload(report)

    if args.json:
        _emit(_json_text(payload), args.out)
    elif args.csv:
        lines = ["key,value"]
        for k, v in _flatten(payload):
            rendered = _fmt(v) if isinstance(v, float) else json.dumps(v, separators=(",", ":"))
            lines.append(f"{k},{_csv_quote(rendered)}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [f"{k} = {v!r}" for k, v in _flatten(payload)]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_evolve(args) -> int:
    state = statefile.load_state(args.state)
    h_tot = statefile.load_hamiltonian(args.hamiltonian)
    if args.t_max <= 0:
        raise ValueError(f"--t-max must be positive, got {args.t_max}")
    if args.steps < 2:
        raise ValueError(f"--steps must be >= 2, got {args.steps}")
    ns = tuple(int(n) for n in args.moments.split(",")) if args.moments else ()
    times = np.linspace(0.0, args.t_max, args.steps)
    traj = record_trajectory(state, h_tot, times, ns=ns, regularize=args.regularize)

    header = [
        "time",
        "entropy",
        "purity",
        "comm_trace_norm",
        "entropy_rate",
        "entropy_bound",
        "purity_rate",
        "purity_bound",
    ] + [f"moment_{n}" for n in ns]
    rows = []
    for t, rec in zip(traj.times, traj.records):
        row = [
            float(t),
            rec.entropy,
            rec.purity,
            rec.comm_trace_norm,
            rec.entropy_rate,
            rec.entropy_bound,
            rec.purity_rate,
            rec.purity_bound,
        ] + [rec.moment_values[n] for n in ns]
        rows.append(row)
    _emit(_csv_text(header, rows), args.out)
    return 0


def cmd_detect_discord(args) -> int:
    state = statefile.load_state(args.state)
    verdict = detect_discord(
        state,
        samples=args.samples,
        seed=args.seed,
        threshold=args.threshold,
        use_fd=args.fd,
        fd_step=args.fd_step,
    )
    payload = {
        "samples": verdict.samples,
        "max_abs_purity_rate": verdict.max_abs_purity_rate,
        "threshold": verdict.threshold,
        "discord_detected": verdict.discord_detected,
        "per_sample_rates": list(verdict.per_sample_rates),
    }
    if args.json:
        _emit(_json_text(payload), args.out)
    else:
        lines = [
            f"samples = {verdict.samples}",
            f"max_abs_purity_rate = {_fmt(verdict.max_abs_purity_rate)}",
            f"threshold = {_fmt(verdict.threshold)}",
            f"discord_detected = {str(verdict.discord_detected).lower()}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_sparsity(args) -> int:
    include = statefile.load_state(args.include_file) if args.include_file else None
    rank = args.rank if args.rank is not None else args.ds * args.de
    summary = sparsity_scan(
        ds=args.ds,
        de=args.de,
        samples=args.samples,
        rank=rank,
        seed=args.seed,
        lazy_tol=args.lazy_tol,
        include=include,
        bins=args.bins,
    )
    payload = {
        "samples": summary.samples,
        "lazy_tol": summary.lazy_tol,
        "count_below_tol": summary.count_below_tol,
        "median_trace_norm": summary.median_trace_norm,
        "min_trace_norm": summary.min_trace_norm,
        "max_trace_norm": summary.max_trace_norm,
        "histogram_edges": list(summary.histogram_edges),
        "histogram_counts": list(summary.histogram_counts),
    }
    if args.json:
        _emit(_json_text(payload), args.out)
    else:
        lines = [
            f"samples = {summary.samples}",
            f"lazy_tol = {_fmt(summary.lazy_tol)}",
            f"count_below_tol = {summary.count_below_tol}",
            f"median_trace_norm = {_fmt(summary.median_trace_norm)}",
            "histogram (edge_lo, edge_hi, count):",
        ]
        for lo, hi, c in zip(
            summary.histogram_edges[:-1], summary.histogram_edges[1:], summary.histogram_counts
        ):
            lines.append(f"  {_fmt(lo)} {_fmt(hi)} {c}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_sweep(args) -> int:
    rows = bound_sweep(ds=args.ds, de=args.de, samples=args.samples, seed=args.seed)
    header = [
        "sample",
        "pure",
        "entropy_rate",
        "entropy_bound",
        "entropy_slack",
        "purity_rate",
        "purity_bound",
        "purity_slack",
        "mi_purity_bound",
    ]
    table = []
    for r in rows:
        table.append(
            [
                r.sample,
                int(r.pure),
                r.entropy_rate,
                r.entropy_bound,
                r.entropy_slack,
                r.purity_rate,
                r.purity_bound,
                r.purity_slack,
                "" if r.mi_purity_bound is None else r.mi_purity_bound,
            ]
        )
    lines = [",".join(header)]
    for row in table:
        rendered = []
        for v in row:
            if isinstance(v, float):
                rendered.append(_fmt(v))
            else:
                rendered.append(str(v))
        lines.append(",".join(rendered))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lazy-lab",
        description="Entropy/purity rates, lazy-state analysis and decoherence bounds "
        "for bipartite density matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a state file")
    p.add_argument("kind", choices=GEN_KINDS)
    p.add_argument("--ds", type=int, default=2, help="system dimension")
    p.add_argument("--de", type=int, default=2, help="environment dimension")
    p.add_argument("--d", type=int, default=2, help="local dimension (maxent)")
    p.add_argument("--rank", type=int, default=None, help="rank (ginibre/zerodiscord env)")
    p.add_argument("--rank-s", type=int, default=None, help="system factor rank (product)")
    p.add_argument("--rank-e", type=int, default=None, help="environment factor rank (product)")
    p.add_argument("--probs", type=str, default="0.5,0.5", help="comma list (zerodiscord)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="commutator/correlation (and rate) report")
    p.add_argument("state")
    p.add_argument("hamiltonian", nargs="?", default=None)
    p.add_argument("--tol", type=float, default=None, help="lazy trace-norm tolerance")
    p.add_argument("--moments", type=str, default=None, help="extra moment orders, e.g. 3,4")
    p.add_argument("--regularize", type=float, default=None)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("evolve", help="trajectory CSV under a total Hamiltonian")
    p.add_argument("state")
    p.add_argument("hamiltonian")
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--moments", type=str, default=None, help="extra moment orders, e.g. 3,4")
    p.add_argument("--regularize", type=float, default=None)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("detect-discord", help="purity-monitoring discord test")
    p.add_argument("state")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=DEFAULT_DETECT_THRESHOLD)
    p.add_argument("--fd", action="store_true", help="estimate rates by finite differences")
    p.add_argument("--fd-step", type=float, default=1e-5)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_detect_discord)

    p = sub.add_parser("sparsity", help="Monte Carlo scan of the commutator trace norm")
    p.add_argument("--ds", type=int, required=True)
    p.add_argument("--de", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--rank", type=int, default=None, help="Ginibre rank (default full)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lazy-tol", type=float, default=DEFAULT_LAZY_TOL)
    p.add_argument("--include-file", type=str, default=None, help="inject a state as sample 0")
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_sparsity)

    p = sub.add_parser("sweep", help="bound-tightness CSV over random pairs")
    p.add_argument("--ds", type=int, required=True)
    p.add_argument("--de", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RankDeficientStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (StateFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
