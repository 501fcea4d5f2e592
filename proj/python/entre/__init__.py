# Copyright 2026 The ENTRE Authors.
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

"""Type-constrained entity replacement for relation extraction."""

from entre._entre import (
    CallbackOracle,
    ContextReaderOracle,
    EntreError,
    Instance,
    Lexicon,
    MemorizerOracle,
    RelationOracle,
    RemoteOracle,
    apply_entity_mask,
    corpus_stats,
    diversity_stats,
    eligibility_filter,
    load_corpus,
    mask_context,
    micro_f1,
    parse_corpus,
    replace_entity,
    robustness_eval,
    run_cli,
    run_entre,
    serialize_corpus,
    shortcut_analysis,
)

__version__ = "0.1.0"

__all__ = [
    "CallbackOracle",
    "ContextReaderOracle",
    "EntreError",
    "Instance",
    "Lexicon",
    "MemorizerOracle",
    "RelationOracle",
    "RemoteOracle",
    "apply_entity_mask",
    "corpus_stats",
    "diversity_stats",
    "eligibility_filter",
    "load_corpus",
    "mask_context",
    "micro_f1",
    "parse_corpus",
    "replace_entity",
    "robustness_eval",
    "run_cli",
    "run_entre",
    "serialize_corpus",
    "shortcut_analysis",
]
