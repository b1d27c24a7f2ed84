"""Command line front end: ``depcross analyze | curve | simulate | verify``.

Exit codes: 0 on success, 1 on a fatal input error (unreadable file,
malformed sentence without ``--skip-bad``), 2 on a configuration error.
Output never depends on timing or worker count, so equal arguments give
byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analysis import SentenceAnalysis, analyze_sentence, display_value
from .arrangement import MAX_EXACT_N, d_max, d_min, sum_lengths
from .ensembles import (DEFAULT_SEED, MAX_EXHAUSTIVE_N, RNG_ALGORITHM, RandomSeed,
                        permutation_ensemble, sample_e0_random_labeled)
from .errors import DepcrossError, NotATree, ParseError, TooLarge
from .predictors import (e0_crossings_linear, e0_crossings_of, e0_crossings_quasi, e0_length,
                         expected_e0_random_labeled)
from .treebank_io import (CURVE_COLUMNS, format_value, parse_conllu,
                          parse_edge_lists, write_csv, write_metadata)
from .verification import format_table, run_all

EXHAUSTIVE_N_RANGE = (4, 12)


class ConfigError(Exception):
    pass


class InputError(Exception):
    pass


# ------------------------------------------------------------------ inputs

def _read_text(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _detect_format(path: str, text: str, fmt: str) -> str:
    if fmt != "auto":
        return fmt
    if path.endswith((".conllu", ".conll")):
        return "conllu"
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        return "conllu" if "\t" in s else "edgelist"
    return "edgelist"


def load_sentences(paths, fmt="auto", drop_punct=False, skip_bad=False, warn=None):
    """(sentence_id, tree, arrangement) for every accepted sentence, in input order."""
    warn = warn or (lambda msg: print(msg, file=sys.stderr))
    out = []
    for path in paths:
        text = _read_text(path)
        kind = _detect_format(path, text, fmt)
        source = "<stdin>" if path == "-" else path
        if kind == "conllu":
            def report(exc, source=source):
                warn(f"skipped: {source}: {exc}")

            records = parse_conllu(text, source=source, on_error=report if skip_bad else None)
            try:
                for rec in records:
                    try:
                        tree, arr = rec.to_tree(drop_punct)
                    except (ParseError, NotATree) as exc:
                        if not skip_bad:
                            raise
                        report(exc)
                        continue
                    out.append((rec.sentence_id, tree, arr))
            except (ParseError, NotATree) as exc:
                raise InputError(f"{source}: {exc}") from None
        elif kind == "edgelist":
            out.extend(_edge_list_entries(text, source, skip_bad, warn))
        else:
            raise ConfigError(f"unknown format {fmt!r}")
    return out


def _edge_list_entries(text, source, skip_bad, warn):
    def report(exc):
        warn(f"skipped: {source}: {exc}")

    try:
        return [(e.sentence_id, e.tree, e.arrangement)
                for e in parse_edge_lists(text, source=source, on_error=report if skip_bad else None)]
    except (ParseError, NotATree) as exc:
        raise InputError(f"{source}: {exc}") from None


# ------------------------------------------------------------------ output

@contextmanager
def _sink(out):
    if out in (None, "-"):
        yield sys.stdout
    else:
        try:
            fh = open(out, "w", encoding="utf-8", newline="")
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc}") from None
        with fh:
            yield fh


def _json_number(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    if isinstance(x, float) and math.isnan(x):
        return None
    return x


def _dump_json(obj, sink):
    json.dump(obj, sink, indent=2, allow_nan=False)
    sink.write("\n")


def _metadata(args, command, **extra):
    meta = {"tool": f"depcross {__version__}", "command": command}
    for key in ("seed", "samples", "max_exhaustive_n", "alpha"):
        if hasattr(args, key):
            meta[key] = getattr(args, key)
    meta.update(extra)
    return meta


def _table(rows: list[SentenceAnalysis]) -> str:
    """Transposed view, one column per sentence, two significant digits."""
    if not rows:
        return ""
    fields = list(rows[0].as_row())
    body = [[f] + [display_value(r.as_row()[f]) for r in rows] for f in fields]
    widths = [max(len(line[i]) for line in body) for i in range(len(body[0]))]
    return "\n".join("  ".join(c.rjust(w) if j else c.ljust(w) for j, (c, w) in
                               enumerate(zip(line, widths))).rstrip() for line in body) + "\n"


# ---------------------------------------------------------------- commands

def _analyze_job(job):
    index, sid, tree, arr, opts = job
    return analyze_sentence(tree, arr, sid, stream=index, **opts)


def cmd_analyze(args) -> int:
    sentences = load_sentences(args.inputs, args.format, args.drop_punct, args.skip_bad)
    opts = dict(max_exhaustive_n=args.max_exhaustive_n, samples=args.samples, seed=args.seed,
                alpha=args.alpha_exact, backend=args.backend)
    jobs = [(i, sid, t, a, opts) for i, (sid, t, a) in enumerate(sentences)]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_analyze_job, jobs))  # map keeps input order
    else:
        rows = [_analyze_job(j) for j in jobs]
    meta = _metadata(args, "analyze",
                     method=f"exhaustive for n <= {args.max_exhaustive_n}, monte_carlo above",
                     rng=RNG_ALGORITHM)
    with _sink(args.out) as out:
        if args.emit == "csv":
            write_csv(rows, out, meta)
        elif args.emit == "json":
            _dump_json({"metadata": meta, "rows": [r.as_json() for r in rows]}, out)
        else:
            write_metadata(out, meta)
            out.write(_table(rows))
    return 0


def cmd_curve(args) -> int:
    sentences = load_sentences(args.inputs, args.format, args.drop_punct, args.skip_bad)
    if not sentences:
        raise InputError("no sentence in input")
    if args.sentence is None:
        sid, t, arr = sentences[0]
    else:
        match = [s for s in sentences if s[0] == args.sentence]
        if not match:
            raise ConfigError(f"no sentence with id {args.sentence!r}")
        sid, t, arr = match[0]
    if t.n > args.max_exhaustive_n and not args.sampled:
        raise TooLarge(f"sentence {sid} has n={t.n} > --max-exhaustive-n {args.max_exhaustive_n}; "
                       "pass --sampled for a Monte Carlo curve")
    ens = permutation_ensemble(t, max_exhaustive_n=args.max_exhaustive_n, samples=args.samples,
                               seed=RandomSeed(args.seed), backend=args.backend)
    rows = [
        {"D": D, "R": ens.R(D) if ens.exhaustive else ens.estimated_R(D),
         "mean_C": ens.mean_C(D), "mean_E1C": ens.mean_E1(D)}
        for D in ens.D_values
    ]
    extra = {"sentence_id": sid, "n": t.n, "method": ens.method, "attested_D": sum_lengths(arr, t),
             "E0_D": format_value(e0_length(t.n)), "E0_C": format_value(e0_crossings_of(t))}
    if t.n <= MAX_EXACT_N:
        extra["D_min"] = d_min(t)[0]
        extra["D_max"] = d_max(t)[0]
    meta = _metadata(args, "curve", **extra)
    if ens.exhaustive:
        meta.pop("seed", None)
        meta.pop("samples", None)
    with _sink(args.out) as out:
        if args.emit == "json":
            _dump_json({"metadata": meta,
                        "rows": [{k: _json_number(v) for k, v in r.items()} for r in rows]}, out)
        elif args.emit == "csv":
            write_metadata(out, meta)
            out.write(",".join(CURVE_COLUMNS) + "\n")
            for r in rows:
                out.write(",".join(format_value(r[c]) for c in CURVE_COLUMNS) + "\n")
        else:
            write_metadata(out, meta)
            for r in rows:
                out.write("  ".join(f"{c}={display_value(r[c])}" for c in CURVE_COLUMNS) + "\n")
    return 0


SIMULATE_COLUMNS = ("n", "E0_linear", "E0_quasi", "E_E0_random", "sampled_mean", "sampled_se", "note")


def simulate_rows(n_min: int, n_max: int, trials: int, seed: int) -> list[dict]:
    """Expected crossings against n for linear, quasi-star and random labeled trees."""
    rows = []
    for n in range(n_min, n_max + 1):
        vals = {"E0_linear": e0_crossings_linear(n), "E0_quasi": e0_crossings_quasi(n),
                "E_E0_random": expected_e0_random_labeled(n)}
        note = ""
        if any(v <= 0 for v in vals.values()):
            vals = {k: max(v, Fraction(0)) for k, v in vals.items()}
            note = "no crossings possible below n=4; clipped to 0"
        row = {"n": n, **vals, "sampled_mean": None, "sampled_se": None, "note": note}
        if trials > 0:
            s = sample_e0_random_labeled(n, trials, RandomSeed(seed, stream=n))
            row["sampled_mean"] = max(s.mean, 0.0) if note else s.mean
            row["sampled_se"] = s.se
        rows.append(row)
    return rows


def cmd_simulate(args) -> int:
    if not 3 <= args.n_min <= args.n_max:
        raise ConfigError("need 3 <= --n-min <= --n-max")
    if args.trials < 0:
        raise ConfigError("--trials must be >= 0")
    rows = simulate_rows(args.n_min, args.n_max, args.trials, args.seed)
    meta = _metadata(args, "simulate", trials=args.trials, rng=RNG_ALGORITHM)
    meta.pop("samples", None)
    with _sink(args.out) as out:
        if args.emit == "json":
            _dump_json({"metadata": meta,
                        "rows": [{k: _json_number(v) for k, v in r.items()} for r in rows]}, out)
        else:
            write_metadata(out, meta)
            out.write(",".join(SIMULATE_COLUMNS) + "\n")
            for r in rows:
                out.write(",".join(format_value(r[c]) for c in SIMULATE_COLUMNS) + "\n")
    return 0


def cmd_verify(args) -> int:
    if not 3 <= args.max_n <= 8:
        raise ConfigError("--max-n must lie in 3..8")
    if args.p_max_n < 4:
        raise ConfigError("--p-max-n must be >= 4")
    results = run_all(args.max_n, args.p_max_n, labeled=args.labeled)
    with _sink(args.out) as out:
        if args.emit == "json":
            _dump_json([{"check": r.name, "scope": r.scope, "cases": r.cases,
                         "counterexamples": len(r.counterexamples), "passed": r.passed}
                        for r in results], out)
        else:
            out.write(format_table(results) + "\n")
    if args.strict and not all(r.passed for r in results):
        return 1
    return 0


# ------------------------------------------------------------------ parser

def _add_common(p, samples=True):
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default %(default)s)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    if samples:
        p.add_argument("--samples", type=int, default=1_000_000,
                       help="Monte Carlo permutations when n exceeds the exhaustive bound")
        p.add_argument("--max-exhaustive-n", type=int, default=MAX_EXHAUSTIVE_N,
                       help="largest n enumerated exhaustively, 4..12 (default %(default)s)")
        p.add_argument("--backend", choices=("cython", "python"), default=None,
                       help="force a kernel implementation")


def _add_input(p):
    p.add_argument("inputs", nargs="+", help="input files, '-' for stdin")
    p.add_argument("--format", choices=("auto", "conllu", "edgelist"), default="auto")
    p.add_argument("--skip-bad", action="store_true", help="report and skip malformed sentences")
    p.add_argument("--drop-punct", action="store_true", help="remove tokens with relation 'punct'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="depcross", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"depcross {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="observed C and D against the three predictors, per sentence")
    _add_input(p)
    _add_common(p)
    p.add_argument("--alpha", default="0.05", help="significance level (default %(default)s)")
    p.add_argument("--emit", choices=("csv", "json", "table"), default="csv")
    p.add_argument("--workers", type=int, default=1, help="sentences analysed in parallel")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("curve", help="E[C|D] and mean E1[C] for every reachable D of one sentence")
    _add_input(p)
    _add_common(p)
    p.add_argument("--sentence", default=None, help="sentence id (default: the first)")
    p.add_argument("--sampled", action="store_true", help="allow a Monte Carlo curve above the bound")
    p.add_argument("--emit", choices=("csv", "json", "table"), default="csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("simulate", help="expected crossings against n for three tree families")
    _add_common(p, samples=False)
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=50)
    p.add_argument("--trials", type=int, default=1000, help="random trees sampled per n (0 to skip)")
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="exhaustive checks of the degree and probability identities")
    p.add_argument("--max-n", type=int, default=8, help="largest tree size enumerated (3..8)")
    p.add_argument("--p-max-n", type=int, default=50, help="largest n for the probability identities")
    p.add_argument("--labeled", action="store_true", help="enumerate labeled trees instead of unlabeled ones")
    p.add_argument("--strict", action="store_true", help="exit 1 when a check fails")
    p.add_argument("--out", default=None)
    p.add_argument("--emit", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_verify)
    return parser


def _validate(args):
    if hasattr(args, "samples") and args.samples < 1:
        raise ConfigError("--samples must be >= 1")
    if hasattr(args, "max_exhaustive_n"):
        lo, hi = EXHAUSTIVE_N_RANGE
        if not lo <= args.max_exhaustive_n <= hi:
            raise ConfigError(f"--max-exhaustive-n must lie in {lo}..{hi}")
    if hasattr(args, "alpha"):
        try:
            alpha = Fraction(args.alpha)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"--alpha must be a number, got {args.alpha!r}") from None
        if not 0 < alpha < 1:
            raise ConfigError("--alpha must lie strictly between 0 and 1")
        args.alpha_exact = alpha
    if hasattr(args, "workers") and args.workers < 1:
        raise ConfigError("--workers must be >= 1")
    if getattr(args, "seed", 0) < 0:
        raise ConfigError("--seed must be >= 0")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, which matches the config-error code
        return int(exc.code or 0)
    try:
        _validate(args)
        return args.func(args)
    except (ConfigError, TooLarge) as exc:
        print(f"depcross: config error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ParseError, NotATree) as exc:
        print(f"depcross: input error: {exc}", file=sys.stderr)
        return 1
    except DepcrossError as exc:
        print(f"depcross: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
