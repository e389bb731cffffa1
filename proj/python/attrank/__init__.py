# Copyright 2026 The attrank Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Attribute importance ranking from buyer enquiries."""

from ._attrank import (
    DataError,
    EmbeddingModel,
    Normalizer,
    PipelineConfig,
    UsageError,
    load_vectors,
    match_sentence,
    rank_matches,
    run_stage,
    set_metrics,
    textrank_keywords,
    train_embeddings,
    write_synthetic,
)


def run_pipeline(config_path, **overrides):
    """Runs every stage for the config; keyword overrides set config fields.

    Returns the evaluation report as tab-separated text.
    """
    config = PipelineConfig.load(str(config_path))
    for name, value in overrides.items():
        setattr(config, name, value)
    config.validate()
    return run_stage(config, "pipeline")


__all__ = [
    "DataError",
    "EmbeddingModel",
    "Normalizer",
    "PipelineConfig",
    "UsageError",
    "load_vectors",
    "match_sentence",
    "rank_matches",
    "run_pipeline",
    "run_stage",
    "set_metrics",
    "textrank_keywords",
    "train_embeddings",
    "write_synthetic",
]
