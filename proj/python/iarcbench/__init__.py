# Copyright 2026 The iarcbench Authors
# SPDX-License-Identifier: Apache-2.0
"""Task-switching benchmark: stream generation, attention maps, models, training."""

from iarcbench._core import (
    EpochPoint,
    EvalResult,
    Model,
    ModelSpec,
    NumericalError,
    TaskConfig,
    TokenStream,
    TrainConfig,
    TrainReport,
    __version__,
    attention_scores,
    build_model,
    dpa,
    dump_stream,
    ea,
    evaluate,
    generate_stream,
    load_checkpoint,
    param_count,
    parse_stream_dump,
    save_checkpoint,
    slice_windows,
    train,
    validate_stream,
    write_report_csv,
)

__all__ = [
    "EpochPoint",
    "EvalResult",
    "Model",
    "ModelSpec",
    "NumericalError",
    "TaskConfig",
    "TokenStream",
    "TrainConfig",
    "TrainReport",
    "__version__",
    "attention_scores",
    "build_model",
    "dpa",
    "dump_stream",
    "ea",
    "evaluate",
    "generate_stream",
    "load_checkpoint",
    "param_count",
    "parse_stream_dump",
    "save_checkpoint",
    "slice_windows",
    "train",
    "validate_stream",
    "write_report_csv",
]
