"""``stylo`` command line.

    stylo ingest --manifest corpus.json
    stylo run --manifest corpus.json --spec studies.json --out results/

Exit codes: 0 success, 2 bad input (corpus, spec, flags, I/O), 3 numerical
non-convergence. Reports and summaries go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import replace
from pathlib import Path

from pydantic import ValidationError

from adapters.corpus.experiment_file import load_experiment_specs
from adapters.corpus.manifest import ManifestCorpusSource
from adapters.reports.model_store import dump_model
from adapters.reports.writer import ReportBatch
from adapters.text.tokenizer import tokenize_words
from core import __version__
from core.entities.document import Corpus
from core.entities.experiment import ExperimentSpec, FeatureMode, ResultTable, StudyKind
from core.exceptions import ConvergenceError, ExperimentError, StylometryError
from core.ports.corpus_source import CorpusSource
from core.ports.report_writer import ReportFormat, ReportWriter
from experiments.runner import StudyOutput, run_experiment
from interface.config import IngestConfig, RunConfig, StylometrySettings, get_settings
from interface.observability import (
    configure_logging,
    ensure_run_id,
    list_events,
    record_event,
    reset_run_id,
    set_run_id,
)

logger = logging.getLogger("interface.cli")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONVERGENCE = 3


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


# ── ingest ────────────────────────────────────────────────────────────────────


def _vocabulary_size(corpus: Corpus, doc_id: str) -> int:
    unit = corpus.by_id(doc_id)
    if unit.word_table is not None:
        return len(unit.word_table)
    return len(set(tokenize_words(unit.text)))


def render_ingest_report(corpus: Corpus) -> str:
    header = f"{'id':<20} {'author':<16} {'work':<20} {'role':<11} {'codepoints':>10} {'vocab':>7} table"
    lines = [f"Corpus: {len(corpus)} documents ({corpus.normalization_policy})", header]
    for unit in corpus.units:
        lines.append(
            f"{unit.id:<20} {unit.author:<16} {unit.work:<20} {unit.role:<11} "
            f"{unit.length:>10} {_vocabulary_size(corpus, unit.id):>7} "
            f"{'ingested' if unit.word_table is not None else 'tokenizer'}"
        )
    lines.append("Truncation length preview (shortest chapter):")
    works = dict.fromkeys(unit.work for unit in corpus.units)
    for work in works:
        lengths = [unit.length for unit in corpus.units if unit.work == work]
        lines.append(f"  {work}: {min(lengths)}")
    lines.append(f"  all documents: {min(unit.length for unit in corpus.units)}")
    return "\n".join(lines)


def cmd_ingest(args: argparse.Namespace, settings: StylometrySettings) -> int:
    config = IngestConfig(manifest=args.manifest)
    source: CorpusSource = ManifestCorpusSource()
    corpus = source.load(config.manifest)
    print(render_ingest_report(corpus))
    record_event(flow="ingest", level="info", message="corpus valid", metadata={"documents": len(corpus)})
    return EXIT_OK


# ── run ───────────────────────────────────────────────────────────────────────


def build_run_config(args: argparse.Namespace, settings: StylometrySettings) -> RunConfig:
    """CLI flags over settings."""

    def pick[T](flag: T | None, fallback: T) -> T:
        return fallback if flag is None else flag

    return RunConfig(
        manifest=args.manifest,
        spec=args.spec,
        out=args.out,
        report_format=pick(args.format, settings.output_format),
        n_values=pick(args.n, settings.n_values),
        top_k=pick(args.top_k, settings.top_k),
        alpha=pick(args.alpha, settings.alpha),
        c=pick(args.C, settings.svm_c),
        tol=pick(args.tol, settings.svm_tol),
        max_iter=pick(args.max_iter, settings.svm_max_iter),
        strip_punctuation=args.strip_punctuation or settings.strip_punctuation,
        max_workers=pick(args.max_workers, settings.max_workers),
        model_dir=args.save_models,
    )


def apply_overrides(
    spec: ExperimentSpec,
    *,
    n_values: Sequence[int] | None,
    feature_modes: Sequence[FeatureMode] | None,
) -> ExperimentSpec:
    """Explicit --n / --top-k flags replace what the spec file says."""
    if spec.kind == StudyKind.LOO_CLASSIFICATION:
        if feature_modes is not None:
            return replace(spec, feature_modes=tuple(feature_modes))
        return spec
    if n_values is not None:
        return replace(spec, n_values=tuple(dict.fromkeys(n_values)))
    return spec


def render_summary(name: str, path: Path, table: ResultTable) -> str:
    lines = [f"{name} -> {path}"]
    for row in table.rows:
        label = f"  {row.label}" if row.label is not None else ""
        lines.append(f"  {row.chapter:<20} {row.series:<14} {row.value:>10.4f}{label}")
    return "\n".join(lines)


def stage_output(
    writer: ReportWriter,
    output: StudyOutput,
    path: Path,
    report_format: ReportFormat,
    model_dir: Path | None,
) -> list[Path]:
    """Hand one output's table and model dumps to ``writer``; return every path used."""
    paths = [writer.write(output.table, report_format, path)]
    if model_dir is not None:
        paths.extend(
            writer.write_text(dump_model(trained.model), model_dir / trained.path)
            for trained in output.models
        )
    record_event(
        flow="run",
        level="info",
        message=f"staged {output.name}",
        metadata={"rows": len(output.table), "path": str(path), "models": len(paths) - 1},
    )
    return paths


def run_summary_header(run_id: str, out: Path) -> str:
    """Count this run's staged outputs from the event buffer."""
    staged = [event for event in list_events(flow="run", limit=400) if event["run_id"] == run_id]
    files = len(staged)
    models = sum(int(event["metadata"].get("models", 0)) for event in staged)
    header = f"Run {run_id}: {files} result files in {out}"
    return f"{header}, {models} model dumps" if models else header


def cmd_run(args: argparse.Namespace, settings: StylometrySettings) -> int:
    config = build_run_config(args, settings)
    run_id = ensure_run_id()
    source: CorpusSource = ManifestCorpusSource()
    corpus = source.load(config.manifest)
    specs = load_experiment_specs(
        config.spec,
        default_n_values=config.n_values,
        default_feature_modes=config.feature_modes(),
    )
    specs = [
        apply_overrides(
            spec,
            n_values=config.n_values if args.n is not None else None,
            feature_modes=config.feature_modes() if args.top_k is not None else None,
        )
        for spec in specs
    ]
    options = config.to_options(run_id)
    extension = config.report_format.value

    summaries: list[str] = []
    written: set[Path] = set()
    config.out.mkdir(parents=True, exist_ok=True)
    with ReportBatch() as batch:
        for spec in specs:
            for output in run_experiment(spec, corpus, options):
                path = config.out / f"{output.name}.{extension}"
                if path in written:
                    raise ExperimentError(f"Two outputs would be written to {path}")
                written.update(
                    stage_output(batch, output, path, config.report_format, config.model_dir)
                )
                summaries.append(render_summary(output.name, path, output.table))
    print(run_summary_header(run_id, config.out))
    print("\n".join(summaries))
    return EXIT_OK


# ── entry point ───────────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stylo", description="Stylometric authorship studies")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="Validate a corpus manifest and print its documents")
    ingest.add_argument("--manifest", type=Path, required=True)
    ingest.set_defaults(handler=cmd_ingest)

    run = sub.add_parser("run", help="Run every study of a spec file")
    run.add_argument("--manifest", type=Path, required=True)
    run.add_argument("--spec", type=Path, required=True)
    run.add_argument("--out", type=Path, required=True)
    run.add_argument("--format", choices=[f.value for f in ReportFormat], type=ReportFormat, default=None)
    run.add_argument("--n", type=_int_list, default=None, help="N-gram sizes, e.g. 2,3,4")
    run.add_argument("--top-k", type=_int_list, default=None, help="Top-word counts, e.g. 50,75,100")
    run.add_argument("--alpha", type=float, default=None, help="Naive Bayes smoothing")
    run.add_argument("--C", type=float, default=None, help="SVM soft-margin penalty")
    run.add_argument("--tol", type=float, default=None, help="SVM KKT tolerance")
    run.add_argument("--max-iter", type=int, default=None, help="SVM pair-update cap")
    run.add_argument("--strip-punctuation", action="store_true")
    run.add_argument("--max-workers", type=int, default=None)
    run.add_argument("--save-models", type=Path, default=None, help="Directory for model JSON dumps")
    run.set_defaults(handler=cmd_run)
    return parser


def _fail(code: int, message: str) -> int:
    print(f"stylo: error: {message}", file=sys.stderr)
    record_event(flow="cli", level="error", message=message, metadata={"exit_code": code})
    return code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(args.log_level or settings.log_level, json_lines=settings.log_json)
    handler: Callable[[argparse.Namespace, StylometrySettings], int] = args.handler
    token = set_run_id("")
    try:
        return handler(args, settings)
    except ConvergenceError as exc:
        return _fail(EXIT_CONVERGENCE, str(exc))
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        value = first.get("input")
        shown = f" ({value})" if isinstance(value, str | Path) else ""
        return _fail(EXIT_INPUT, f"{where}: {first.get('msg', 'invalid value')}{shown}")
    except (StylometryError, OSError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    finally:
        reset_run_id(token)


if __name__ == "__main__":
    sys.exit(main())
