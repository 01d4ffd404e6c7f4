#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fts/corpus.hpp"
#include "fts/ctfidf.hpp"
#include "fts/keywords.hpp"
#include "fts/metrics.hpp"

namespace fts::report {

nlohmann::json to_json(const metrics::MetricsReport& m);
metrics::MetricsReport metrics_from_json(const nlohmann::json& j);

// "weighted (raw)" with three decimals, "n/a" when absent.
std::string format_cell(std::optional<double> weighted, std::optional<double> raw);

std::string metrics_csv(const std::vector<metrics::MetricsReport>& rows);

// Keyword-domain tag for a representation token: the single matching domain
// name, "mixed" when several domains match, "none" otherwise.
std::string domain_tag(const std::string& token, const keywords::KeywordList& keywords);

nlohmann::json wordcloud_json(const topics::TopicRepresentation& topics,
                              const keywords::KeywordList& keywords);

// Writes metrics.csv, wordcloud.json and funnel.json into `dir`.
void emit_report(const std::vector<metrics::MetricsReport>& metrics,
                 const topics::TopicRepresentation& topics, const corpus::FunnelReport& funnel,
                 const keywords::KeywordList& keywords, const std::filesystem::path& dir);

}  // namespace fts::report
