from typing import Sequence, Tuple


# -------------------------------
# Error
# -------------------------------


def error_shape_mismatch(
    op_name: str, left: Sequence[int], right: Sequence[int]
) -> str:
    return f"{op_name}: incompatible shapes {tuple(left)} and {tuple(right)}"


def error_unexpected_rank(op_name: str, expected: int, shape: Sequence[int]) -> str:
    return f"{op_name}: expected a {expected}-d tensor but got shape {tuple(shape)}"


def error_non_finite_value(op_name: str) -> str:
    return f"{op_name} produced a non-finite value (NaN or Inf)"


def error_non_scalar_root(shape: Sequence[int]) -> str:
    return f"backward() requires a scalar root but got shape {tuple(shape)}"


def error_no_active_tape() -> str:
    return "backward() needs the ComputationTape that recorded the root"


def error_missing_grad(name: str) -> str:
    return f"Parameter `{name}` has no gradient; run backward() before adam_step()"


def error_unknown_elementwise_op(op: str) -> str:
    return f"Unknown elementwise operation: {op}"


def error_empty_sequence(what: str) -> str:
    return f"{what} must not be empty"


def error_attention_not_normalized(total: float) -> str:
    return f"Attention weights must be non-negative and sum to 1 (sum: {total!r})"


def error_latent_dim_too_large(latent_dim: int, dims: int) -> str:
    return (
        f"The latent dimension N ({latent_dim}) must be smaller than "
        f"the number of series dimensions M ({dims})"
    )


def error_negative_sigma2(sigma2: float) -> str:
    return f"sigma2 must be >= 0 (got {sigma2})"


def error_unknown_variant(tag: str, valid: Sequence[str]) -> str:
    return f"Unknown variant `{tag}` (valid: {', '.join(valid)})"


def error_no_predictor(variant: str) -> str:
    return f"Variant `{variant}` has no latent predictor"


def error_predictor_mismatch(variant: str, kind: str) -> str:
    return f"Variant `{variant}` cannot use a `{kind}` predictor"


def error_invalid_config_value(key: str, value: object, reason: str) -> str:
    return f"Invalid value for `{key}`: {value!r} ({reason})"


def error_unknown_config_key(key: str, location: str) -> str:
    return f"Unknown config key `{key}` ({location})"


def error_duplicate_config_key(key: str, location: str) -> str:
    return f"Duplicated config key `{key}` ({location})"


def error_malformed_config_line(location: str) -> str:
    return f"Expected `key=value` ({location})"


def error_unreadable_file(path: str, reason: str) -> str:
    return f"Failed to read {path}: {reason}"


def error_parse_failure(path: str, line: int, reason: str) -> str:
    return f"{path}:{line}: {reason}"


def error_empty_file(path: str) -> str:
    return f"{path} contains no data rows"


def error_missing_dataset_file(path: str) -> str:
    return f"Dataset file not found: {path}"


def error_dimension_mismatch(what: str, expected: int, actual: int) -> str:
    return f"{what}: expected {expected} dimensions but got {actual}"


def error_label_length_mismatch(labels: int, rows: int) -> str:
    return f"The label file has {labels} lines while test.csv has {rows} rows"


def error_invalid_labels(series_id: str) -> str:
    return f"Labels of {series_id} must be 0 or 1"


def error_series_too_short(length: int, history: int, future: int) -> str:
    return (
        f"A series of length {length} is shorter than "
        f"history_window + future_window ({history} + {future})"
    )


def error_empty_series(what: str) -> str:
    return f"{what} has no timestamps"


def error_overlapping_segments(first: Tuple[int, int], second: Tuple[int, int]) -> str:
    return f"Anomaly segments overlap: {first} and {second}"


def error_segment_out_of_range(segment: Tuple[int, int], low: int, high: int) -> str:
    return f"Anomaly segment {segment} is outside of [{low}, {high})"


def error_segments_do_not_fit(total: int, max_length: int, span: int) -> str:
    return (
        f"{total} anomaly segments of length up to {max_length} "
        f"do not fit in {span} test timestamps"
    )


def error_checkpoint_format(path: str, reason: str) -> str:
    return f"Invalid checkpoint {path}: {reason}"


def error_checkpoint_shape(
    name: str, expected: Sequence[int], actual: Sequence[int]
) -> str:
    return (
        f"Checkpoint parameter `{name}` has shape {tuple(actual)} "
        f"but the hyperparameters require {tuple(expected)}"
    )


def error_single_class_labels() -> str:
    return "AUROC is undefined when the labels contain a single class"


def error_length_mismatch(what: str, left: int, right: int) -> str:
    return f"{what}: length mismatch ({left} vs {right})"


def error_empty_scores() -> str:
    return "No scores to evaluate"


def error_missing_grid_cells(missing: Sequence[Tuple[str, int]]) -> str:
    return f"Missing (series, repeat) results: {list(missing)}"


def error_training_diverged(epoch: int, batch: int, cause: str) -> str:
    return f"Training diverged at epoch {epoch}, batch {batch}: {cause}"


def error_empty_training_set() -> str:
    return "No window pairs to train on"


def error_unknown_noise_mode(mode: str) -> str:
    return f"Unknown noise mode `{mode}` (valid: sample, deterministic, mc:<k>)"


def error_negative_threshold(threshold: float) -> str:
    return f"The alert threshold must be >= 0 (got {threshold})"


# -------------------------------
# Warning
# -------------------------------


def warning_latent_dim_not_smaller(latent_dim: int, dims: int) -> str:
    return f"latent_dim={latent_dim} is not smaller than M={dims}"


def warning_no_anomalies_in_labels(series_id: str) -> str:
    return f"Series {series_id} has no labeled anomalies; AUROC is skipped"


def warning_zero_scores() -> str:
    return "All anomaly scores are zero; the threshold search collapses to 0"


# -------------------------------
# Info
# -------------------------------


def info_epoch_completed(epoch: int, mean_loss: float, seconds: float) -> str:
    return f"epoch {epoch}: mean loss {mean_loss:.6f} ({seconds:.2f}s)"


def info_training_started(variant: str, pairs: int, params: int) -> str:
    return f"Training variant `{variant}` on {pairs} window pairs ({params} parameters)"


def info_run_completed(series_id: str, repeat: int, f1: float, threshold: float) -> str:
    return f"series {series_id} repeat {repeat}: F1={f1:.4f} at lambda={threshold:.6g}"


def info_file_written(what: str, path: str) -> str:
    return f"{what} written to {path}"


# -------------------------------
# Debug
# -------------------------------


def debug_batch_loss(epoch: int, batch: int, loss: float) -> str:
    return f"epoch {epoch} batch {batch}: loss {loss:.6f}"


def debug_scoring_anchors(anchors: int, noise_mode: str) -> str:
    return f"Scoring {anchors} window anchors (noise: {noise_mode})"


def debug_loaded_series(series_id: str, rows: int, dims: int) -> str:
    return f"Loaded series {series_id} ({rows} x {dims})"
