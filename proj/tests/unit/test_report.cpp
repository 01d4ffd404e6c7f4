#include <doctest.h>

#include <cmath>

#include "fts/io.hpp"
#include "fts/report.hpp"
#include "synthetic.hpp"

using namespace fts::report;
using fts::keywords::KeywordList;
using fts::metrics::MetricsReport;

namespace {

MetricsReport sample() {
  MetricsReport m;
  m.model = "density-ctfidf";
  m.input = "sentences";
  m.npmi_raw = 0.341;
  m.topic_precision = 0.311;
  m.intratopic_raw = 0.6;
  m.intertopic_raw = 0.2;
  m.outlier_count = 7;
  m.npmi_per_topic = {0.3, 0.382};
  m.intratopic_per_topic = {{0, 0.4}, {3, 0.6}};
  return m;
}

}  // namespace

TEST_CASE("cell formatting") {
  CHECK(format_cell(0.10605, 0.341) == "0.106 (0.341)");
  CHECK(format_cell(std::nullopt, std::nullopt) == "n/a");
  CHECK(format_cell(-0.0001, -0.0002) == "0.000 (0.000)");
  CHECK(format_cell(INFINITY, 0.2) == "inf (0.200)");
}

TEST_CASE("metrics csv") {
  auto none = sample();
  none.model = "nmf";
  none.intertopic_raw.reset();
  const auto csv = metrics_csv({sample(), none});
  CHECK(csv ==
        "model,input,topic_precision,npmi,intratopic,intertopic,outliers\n"
        "density-ctfidf,sentences,0.311,0.106 (0.341),0.187 (0.600),0.643 (0.200),7\n"
        "nmf,sentences,0.311,0.106 (0.341),0.187 (0.600),n/a,7\n");
}

TEST_CASE("metrics json round trip including infinity") {
  auto m = sample();
  m.topic_precision = 0.0;
  const auto j = to_json(m);
  CHECK(j.at("intertopic_weighted") == "inf");
  const auto back = metrics_from_json(j);
  CHECK(back.model == m.model);
  CHECK(back.npmi_raw == m.npmi_raw);
  CHECK(back.topic_precision == 0.0);
  CHECK(back.intratopic_per_topic == m.intratopic_per_topic);
  CHECK(back.npmi_per_topic == m.npmi_per_topic);
  CHECK(std::isinf(*back.intertopic_weighted()));
}

TEST_CASE("domain tags and word cloud") {
  const auto kw = KeywordList::financial();
  CHECK(domain_tag("revenue", kw) == "Sales");
  CHECK(domain_tag("cashflow", kw) == "Liquidity");
  CHECK(domain_tag("weather", kw) == "none");
  CHECK(domain_tag("cash_dividend", kw) == "mixed");
  const fts::topics::TopicRepresentation t = {{2, {{"revenue", 3.0}, {"weather", 1.0}}, false}};
  const auto j = wordcloud_json(t, kw);
  CHECK(j.at("topics")[0].at("cluster") == 2);
  CHECK(j.at("topics")[0].at("words")[0].at("domain") == "Sales");
  CHECK(j.at("topics")[0].at("words")[1].at("weight") == 1.0);
}

TEST_CASE("emit_report writes the three artifacts") {
  const auto dir = synth::temp_dir("report_emit");
  fts::corpus::FunnelReport f;
  f.input = 3;
  f.add({"extraction", 3, 0});
  emit_report({sample()}, {{0, {{"cash", 1.0}}, false}}, f, KeywordList::financial(), dir);
  CHECK(std::filesystem::exists(dir / "metrics.csv"));
  CHECK(fts::io::read_json(dir / "wordcloud.json").at("topics").size() == 1);
  CHECK(fts::corpus::read_funnel(dir / "funnel.json").input == 3);
}
