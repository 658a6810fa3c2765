"""The ``lpc-ad`` command line.

Exit codes: 0 on success, 1 for usage and configuration errors, 2 for data,
dimension and contract errors, 3 when a computation produced NaN or Inf.
"""
import logging
import os
from typing import List, Optional, Tuple

import click

from lpc_ad.cli.runner import ProtocolRunner, evaluate_scores
from lpc_ad.data import (
    discover_datasets,
    load_dataset,
    load_synth_spec,
    read_labels,
    synth_generate,
    write_dataset,
)
from lpc_ad.data.checkpoint import load_checkpoint, save_checkpoint
from lpc_ad.data.plot import emit_plot_data
from lpc_ad.detect import (
    NoiseMode,
    detect,
    read_score_dump,
    score_windows,
    write_score_dump,
)
from lpc_ad.error import ConfigError, LpcError, NonFiniteValueError
from lpc_ad.evaluation import aggregate, write_metric_report
from lpc_ad.train import (
    apply_normalizer,
    load_train_config,
    train_on_series,
    write_loss_history,
)
from lpc_ad.train.config import CONFIG_CONVERTERS
from lpc_ad.version import __version__

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
FILE = click.Path(dir_okay=False)
DIRECTORY = click.Path(file_okay=False)


def exit_code_for(error: Exception) -> int:
    if isinstance(error, ConfigError):
        return 1
    if isinstance(error, NonFiniteValueError):
        return 3
    return 2


class LpcGroup(click.Group):
    """Maps library errors to exit codes; usage errors exit with 1."""

    def parse_args(self, ctx: click.Context, args: List[str]) -> List[str]:
        try:
            return super().parse_args(ctx, args)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise
        except LpcError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(exit_code_for(e))


def parse_window(
    ctx: click.Context, param: click.Parameter, value: Optional[str]
) -> Optional[Tuple[int, int]]:
    if value is None:
        return None
    try:
        start, stop = (int(v) for v in value.split(":"))
    except ValueError:
        raise click.BadParameter("expected START:STOP", ctx=ctx, param=param)
    if not 0 <= start < stop:
        raise click.BadParameter("expected 0 <= START < STOP", ctx=ctx, param=param)
    return start, stop


@click.group(cls=LpcGroup)
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default="WARNING",
    envvar="LPC_AD_LOG_LEVEL",
    show_default=True,
)
@click.version_option(__version__, prog_name="lpc-ad")
def cli(log_level: str) -> None:
    """Latent-predictive anomaly detection for multivariate time series."""
    logging.basicConfig(format=LOG_FORMAT)
    logging.getLogger().setLevel(log_level.upper())


@cli.command()
@click.option("--spec", "spec_path", type=FILE)
@click.option("--seed", type=int, help="Overrides the seed of the data config.")
@click.option("--out", required=True, type=DIRECTORY)
def synth(spec_path: Optional[str], seed: Optional[int], out: str) -> None:
    """Generates a labeled synthetic dataset directory."""
    bundle = synth_generate(load_synth_spec(spec_path, seed=seed))
    write_dataset(bundle, out)


@cli.command()
@click.option("--data", required=True, type=DIRECTORY)
@click.option("--config", "config_path", type=FILE)
@click.option("--variant", help="Overrides the variant of the config file.")
@click.option("--seed", type=int, help="Overrides the seed of the config file.")
@click.option("--out", required=True, type=FILE)
@click.option("--history", "history_path", type=FILE)
def train(
    data: str,
    config_path: Optional[str],
    variant: Optional[str],
    seed: Optional[int],
    out: str,
    history_path: Optional[str],
) -> None:
    """Trains on the train split of a dataset and writes a checkpoint."""
    config = load_train_config(config_path, variant=variant, seed=seed)
    bundle = load_dataset(data)
    result = train_on_series(bundle.train, config)
    save_checkpoint(result.model, out, result.stats)
    if history_path is not None:
        write_loss_history(result.history, history_path)


@cli.command("detect")
@click.option("--ckpt", required=True, type=FILE)
@click.option("--data", required=True, type=DIRECTORY)
@click.option("--lambda", "threshold", required=True, type=float)
@click.option("--noise", default="sample", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--batch-size", type=int, default=256, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--scores", "scores_path", required=True, type=FILE)
def detect_command(
    ckpt: str,
    data: str,
    threshold: float,
    noise: str,
    seed: int,
    batch_size: int,
    workers: int,
    scores_path: str,
) -> None:
    """Scores the test split of a dataset and flags anomalies."""
    model, stats = load_checkpoint(ckpt)
    test = load_dataset(data).test
    if stats is not None:
        test = apply_normalizer(stats, test)
    scores = score_windows(
        model,
        test,
        noise_mode=NoiseMode.parse(noise),
        seed=seed,
        batch_size=batch_size,
        workers=workers,
    )
    write_score_dump(detect(scores, threshold), scores_path)


@cli.command("eval")
@click.option("--scores", "scores_path", required=True, type=FILE)
@click.option("--labels", "labels_path", required=True, type=FILE)
@click.option("--lambda", "threshold", type=float)
@click.option("--search-lambda", is_flag=True)
@click.option(
    "--auroc",
    "auroc_mode",
    type=click.Choice(["adjusted", "raw"]),
    default="adjusted",
    show_default=True,
)
@click.option("--report", "report_path", required=True, type=FILE)
def eval_command(
    scores_path: str,
    labels_path: str,
    threshold: Optional[float],
    search_lambda: bool,
    auroc_mode: str,
    report_path: str,
) -> None:
    """Computes point-adjusted metrics of a score dump.

    Without --search-lambda or --lambda the flags of the dump are evaluated.
    """
    if search_lambda and threshold is not None:
        raise click.UsageError("pass at most one of --lambda and --search-lambda")
    dump = read_score_dump(scores_path)
    labels = read_labels(labels_path)
    if dump.timestamps.size and dump.timestamps.max() >= labels.size:
        raise click.BadParameter(
            f"score timestamps reach {int(dump.timestamps.max())} "
            f"but only {labels.size} labels were given",
            param_hint="--labels",
        )
    metrics = evaluate_scores(
        dump.scores,
        labels[dump.timestamps],
        series_id=os.path.basename(os.path.abspath(scores_path)),
        threshold=threshold,
        flags=None if search_lambda or threshold is not None else dump.flags,
        adjust_auroc=auroc_mode == "adjusted",
    )
    write_metric_report(aggregate([metrics]).to_dict(), report_path)


@cli.command()
@click.option("--data", required=True, type=DIRECTORY)
@click.option("--config", "config_path", type=FILE)
@click.option("--variant", help="Overrides the variant of the config file.")
@click.option("--seed", type=int, help="Base seed; repeat j uses seed + j.")
@click.option("--repeats", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--report", "report_path", required=True, type=FILE)
def run(
    data: str,
    config_path: Optional[str],
    variant: Optional[str],
    seed: Optional[int],
    repeats: int,
    report_path: str,
) -> None:
    """Runs the full protocol over every series of a dataset root."""
    config = load_train_config(config_path, variant=variant, seed=seed)
    bundles = discover_datasets(data)
    bundle = ProtocolRunner(config, repeats=repeats).run(bundles)
    write_metric_report(bundle.to_dict(), report_path)


@cli.command()
@click.option("--data", required=True, type=DIRECTORY)
@click.option("--config", "config_path", type=FILE)
@click.option("--param", required=True, type=click.Choice(sorted(CONFIG_CONVERTERS)))
@click.option("--values", required=True, help="Comma separated values of --param.")
@click.option("--repeats", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--report", "report_path", required=True, type=FILE)
def sweep(
    data: str,
    config_path: Optional[str],
    param: str,
    values: str,
    repeats: int,
    report_path: str,
) -> None:
    """Runs the protocol once per value of one config field."""
    convert = CONFIG_CONVERTERS[param]
    try:
        parsed = [convert(v.strip()) for v in values.split(",") if v.strip()]
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--values")
    if not parsed:
        raise click.BadParameter("no values given", param_hint="--values")
    config = load_train_config(config_path)
    for value in parsed:
        # fail before any training starts
        config.replace(**{param: value})
    cells = ProtocolRunner(config, repeats=repeats).sweep(
        discover_datasets(data), param, parsed
    )
    write_metric_report({"param": param, "cells": cells}, report_path)


@cli.command()
@click.option("--ckpt", required=True, type=FILE)
@click.option("--data", required=True, type=DIRECTORY)
@click.option("--lambda", "threshold", type=float, default=0.0, show_default=True)
@click.option("--noise", default="deterministic", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--window", callback=parse_window, help="START:STOP timestamps.")
@click.option("--out", required=True, type=FILE)
@click.option("--svg", "svg_path", type=FILE)
def plot(
    ckpt: str,
    data: str,
    threshold: float,
    noise: str,
    seed: int,
    window: Optional[Tuple[int, int]],
    out: str,
    svg_path: Optional[str],
) -> None:
    """Writes per-timestamp plot data (and optionally an SVG) of a test split."""
    model, stats = load_checkpoint(ckpt)
    test = load_dataset(data).test
    if stats is not None:
        test = apply_normalizer(stats, test)
    scores = score_windows(model, test, noise_mode=NoiseMode.parse(noise), seed=seed)
    emit_plot_data(
        test,
        scores.reconstruction,
        detect(scores, threshold),
        out,
        window=window,
        svg_path=svg_path,
    )


def main(args: Optional[List[str]] = None) -> None:
    cli.main(args=args, prog_name="lpc-ad")
