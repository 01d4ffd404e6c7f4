#include "fts/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts::report {

namespace {

nlohmann::json opt(std::optional<double> v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto& v = j.at(key);
  if (v.is_string()) {
    return v.get<std::string>() == "-inf" ? -INFINITY : INFINITY;
  }
  return v.get<double>();
}

std::string fmt3(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // avoid "-0.000"
  if (std::string(buf) == "-0.000") return "0.000";
  return buf;
}

}  // namespace

nlohmann::json to_json(const metrics::MetricsReport& m) {
  nlohmann::json intra = nlohmann::json::object();
  for (const auto& [c, v] : m.intratopic_per_topic) intra[std::to_string(c)] = v;
  return {
      {"model", m.model},
      {"input", m.input},
      {"npmi_raw", opt(m.npmi_raw)},
      {"npmi_weighted", opt(m.npmi_weighted())},
      {"topic_precision", opt(m.topic_precision)},
      {"intratopic_raw", opt(m.intratopic_raw)},
      {"intratopic_weighted", opt(m.intratopic_weighted())},
      {"intertopic_raw", opt(m.intertopic_raw)},
      {"intertopic_weighted", opt(m.intertopic_weighted())},
      {"outlier_count", m.outlier_count},
      {"npmi_per_topic", m.npmi_per_topic},
      {"precision_per_domain", m.precision_per_domain},
      {"intratopic_per_topic", intra},
  };
}

metrics::MetricsReport metrics_from_json(const nlohmann::json& j) {
  metrics::MetricsReport m;
  m.model = j.at("model").get<std::string>();
  m.input = j.at("input").get<std::string>();
  m.npmi_raw = opt_from(j, "npmi_raw");
  m.topic_precision = opt_from(j, "topic_precision");
  m.intratopic_raw = opt_from(j, "intratopic_raw");
  m.intertopic_raw = opt_from(j, "intertopic_raw");
  m.outlier_count = j.value("outlier_count", std::size_t{0});
  if (j.contains("npmi_per_topic")) m.npmi_per_topic = j.at("npmi_per_topic").get<std::vector<double>>();
  if (j.contains("precision_per_domain")) {
    m.precision_per_domain = j.at("precision_per_domain").get<std::vector<double>>();
  }
  if (j.contains("intratopic_per_topic")) {
    for (const auto& [k, v] : j.at("intratopic_per_topic").items()) {
      m.intratopic_per_topic[std::stoi(k)] = v.get<double>();
    }
  }
  return m;
}

std::string format_cell(std::optional<double> weighted, std::optional<double> raw) {
  if (!raw) return "n/a";
  if (!weighted) return "n/a (" + fmt3(*raw) + ")";
  return fmt3(*weighted) + " (" + fmt3(*raw) + ")";
}

std::string metrics_csv(const std::vector<metrics::MetricsReport>& rows) {
  std::ostringstream os;
  os << "model,input,topic_precision,npmi,intratopic,intertopic,outliers\n";
  for (const auto& m : rows) {
    os << m.model << ',' << m.input << ','
       << (m.topic_precision ? fmt3(*m.topic_precision) : std::string("n/a")) << ','
       << format_cell(m.npmi_weighted(), m.npmi_raw) << ','
       << format_cell(m.intratopic_weighted(), m.intratopic_raw) << ','
       << format_cell(m.intertopic_weighted(), m.intertopic_raw) << ',' << m.outlier_count << '\n';
  }
  return os.str();
}

std::string domain_tag(const std::string& token, const keywords::KeywordList& keywords) {
  const auto hits = keywords.topics_of_word(token);
  if (hits.empty()) return "none";
  if (hits.size() > 1) return "mixed";
  return keywords.name(hits.front());
}

nlohmann::json wordcloud_json(const topics::TopicRepresentation& topics,
                              const keywords::KeywordList& keywords) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : topics) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& [w, v] : t.words) {
      words.push_back({{"token", w}, {"weight", v}, {"domain", domain_tag(w, keywords)}});
    }
    out.push_back({{"cluster", t.cluster}, {"words", words}});
  }
  return {{"topics", out}};
}

void emit_report(const std::vector<metrics::MetricsReport>& metrics,
                 const topics::TopicRepresentation& topics, const corpus::FunnelReport& funnel,
                 const keywords::KeywordList& keywords, const std::filesystem::path& dir) {
  io::write_text(dir / "metrics.csv", metrics_csv(metrics));
  io::write_json(dir / "wordcloud.json", wordcloud_json(topics, keywords));
  corpus::write_funnel(funnel, dir / "funnel.json");
}

}  // namespace fts::report
