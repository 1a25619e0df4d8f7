#pragma once

#include <string>

#include "dbcs/confidence.hpp"
#include "dbcs/dag.hpp"
#include "dbcs/experiment.hpp"
#include "dbcs/ranking.hpp"
#include "dbcs/selection.hpp"

namespace dbcs {

/// All artifacts are JSON with lexicographically sorted keys, pretty-printed.
/// Parsers validate structure and report content problems as ValidationError.

std::string precision_table_to_json(const PrecisionTable& pt);
PrecisionTable precision_table_from_json(const std::string& text);

std::string ranking_bundle_to_json(const RankingBundle& bundle);
RankingBundle ranking_bundle_from_json(const std::string& text);

std::string dag_to_json(const LayeredDag& dag);
LayeredDag dag_from_json(const std::string& text);
/// parse(serialize(dag)); structurally identical to its input.
LayeredDag dag_roundtrip(const LayeredDag& dag);

std::string selection_result_to_json(const SelectionResult& result,
                                     const std::vector<TaskId>& tasks);

std::string eval_report_to_json(const EvalReport& report);

/// Registry file: format tag, classifier config, training-fold fingerprint, the
/// model keys and the shared training fold. Models are rebuilt on load, which
/// reproduces the saved registry exactly (k-NN models are the stored fold).
inline constexpr const char* kRegistryFormat = "dbcs-registry/1";

std::string registry_to_json(const ConfidenceRegistry& reg);
ConfidenceRegistry registry_from_json(const std::string& text);

void save_registry(const std::string& path, const ConfidenceRegistry& reg);
ConfidenceRegistry load_registry(const std::string& path);

PrecisionTable load_precision_table(const std::string& path);
RankingBundle load_ranking_bundle(const std::string& path);
LayeredDag load_dag(const std::string& path);

}  // namespace dbcs
