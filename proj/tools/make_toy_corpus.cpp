// Regenerates the bundled toy corpus under data/toy: 50 synthetic 10-K
// filings, their manifest, a pipeline config, and pre-encoded sentence
// vectors with one planted direction per keyword domain.
//
// usage: make_toy_corpus [data_dir]
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fts/config.hpp"
#include "fts/error.hpp"
#include "fts/io.hpp"
#include "fts/keywords.hpp"
#include "fts/pipeline.hpp"
#include "fts/textprep.hpp"
#include "fts/vectors.hpp"

namespace fs = std::filesystem;

namespace {

using Rng = std::mt19937_64;

const std::map<std::string, std::vector<std::string>> kSlots = {
    {"region", {"north american", "european", "asian", "latin american", "pacific", "nordic",
                "midwest", "coastal"}},
    {"product", {"specialty chemicals", "medical devices", "software licenses", "aerospace components",
                 "packaged foods", "semiconductors", "cloud subscriptions", "industrial pumps"}},
    {"input", {"steel", "resin", "copper", "aluminum", "packaging material", "freight lane"}},
    {"fixed", {"equipment", "facilities", "stores", "data centers", "vessels", "warehouses"}},
    {"adv", {"modestly", "sharply", "slightly", "steadily", "notably", "gradually"}},
};

// Domain name -> templates. Each template carries at least two keywords of
// its own domain and none of any other; the generator checks this.
const std::vector<std::pair<std::string, std::vector<std::string>>> kTemplates = {
    {"Sales",
     {"Net sales in the {region} segment rose {adv} as demand for our {product} remained firm.",
      "Revenue from {product} grew because pricing actions offset weaker {region} volumes.",
      "Competition in the {region} market intensified and put pressure on our average selling price.",
      "Consumer demand for {product} softened {adv} in the {region} channel during the second half.",
      "We renewed several contract awards with {region} customers at higher price points."}},
    {"Cost",
     {"Cost of goods sold increased {adv} due to higher freight expense and {input} inflation.",
      "We recorded a goodwill impairment charge related to the {product} unit.",
      "Selling and administrative expense rose while depreciation on new {fixed} climbed {adv}.",
      "We expect cost inflation and higher expense for {input} to persist in {region} plants."}},
    {"Profit/Loss",
     {"Operating income improved and gross margin expanded {adv} on {product}.",
      "The net loss narrowed as earnings from the {product} line recovered in {region} units.",
      "Segment profit declined {adv} and overall performance fell short of our prior results.",
      "Adjusted EBIT rose, reflecting stronger profit in the {region} {product} line."}},
    {"Operations",
     {"Our manufacturing plants and supply chain in {region} ran near full utilization.",
      "Production volumes at the {region} site were constrained {adv} by logistic bottlenecks.",
      "We streamlined our business process and transport routes for {product}.",
      "Advertising spend supported the launch of new {product} operations in {region}."}},
    {"Liquidity",
     {"Cash flow from operating activities remained sufficient to meet our liquidity needs in {region}.",
      "We ended the period with cash and cash equivalents in excess of our capital requirements.",
      "Interest coverage improved {adv} as the cash balance grew across {region} units.",
      "Liquidity remained strong and cash on hand rose {adv} after the {product} divisions paid down."}},
    {"Investment",
     {"Expenditure on new {fixed} assets rose {adv} in {region}.",
      "We continue to invest in {product} and completed the divestiture of a noncore unit.",
      "The disposal of legacy assets and planned divestment activity shaped our {region} portfolio.",
      "We plan to invest further in {fixed} to add assets in {region}."}},
    {"Financing",
     {"We issued new debt and used the proceeds to repurchase shares {adv}.",
      "The board approved a higher quarterly dividend and expanded the equity buyback.",
      "Borrowing under the revolving credit facility funded the {product} acquisition.",
      "We refinanced senior debt and lowered borrowing spreads with {region} lenders."}},
    {"Litigation",
     {"We are party to a patent dispute and a separate lawsuit in {region} courts.",
      "Legal proceedings and arbitration over a commercial complaint remain pending.",
      "We believe the outcome of this litigation matter will not be material.",
      "A {region} court dismissed the patent lawsuit brought by a former distributor."}},
    {"HR",
     {"We added employees and expanded training for our {region} staff.",
      "Wage and salary increases for hourly labor weighed {adv} on personnel spending.",
      "Retention incentive programs helped us hire and keep a skilled team in {region}.",
      "Our {region} employees completed safety training and staff onboarding {adv}."}},
    {"Regulation",
     {"New federal regulation and pending legislation could change our tax position.",
      "Government regulators in {region} tightened rules for {product}.",
      "Tax legislation enacted in {region} lowered our statutory rate {adv}.",
      "We engage with federal regulators on rules affecting {product}."}},
    {"Accounting",
     {"Our audit committee reviewed internal control over financial reporting.",
      "We made an adjustment to the account classification in this filing.",
      "The audit of our {region} units found no control deficiencies.",
      "We report {product} figures under a new account structure after the adjustment."}},
    {"Energy",
     {"Solar and wind generation added megawatts of capacity in {region}.",
      "Coal and oil volumes declined while water usage at {region} plants fell {adv}.",
      "Electric load growth and lower fuel inputs shaped energy output in {region}.",
      "Our energy purchases shifted {adv} from coal toward wind farms in {region}."}},
    {"ESG",
     {"We reduced carbon emission intensity and expanded renewable sourcing in {region}.",
      "Plastic waste programs helped us recycle more {product} packaging.",
      "Our environment goals and sustainability targets guide long range planning.",
      "Carbon emission targets for {region} plants tightened {adv} this period."}},
    {"Covid-19",
     {"The covid pandemic disrupted {region} shipments of {product}.",
      "Disease outbreaks linked to the coronavirus slowed foot traffic {adv}.",
      "Pandemic restrictions eased {adv} in {region} by the end of the period.",
      "The covid outbreak delayed {product} deliveries in {region}."}},
};

const std::vector<std::string> kGeneric = {
    "Our outlook reflects several trends described below.",
    "The following discussion should be read together with the consolidated statements.",
    "Amounts in the tables below are rounded to the nearest whole figure.",
    "We describe the key drivers of these changes in the sections that follow.",
    "This overview highlights trends we monitor across the {region} region.",
    "Certain prior figures were reclassified to conform to the current presentation.",
};

// Vocabulary for the off-topic filings that the cosine filter should drop.
const std::vector<std::string> kOffTopic = {
    "sponsor", "trust", "vote", "charter", "merger", "target", "redemption", "warrant", "founder",
    "extension", "deadline", "blank", "check", "units", "escrow", "nasdaq", "listing",
    "combination", "deposit", "meeting", "proxy", "ballot", "bylaws", "clause", "notice",
};

std::string pick(Rng& rng, const std::vector<std::string>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::string fill(Rng& rng, std::string t) {
  for (std::size_t open = t.find('{'); open != std::string::npos; open = t.find('{')) {
    const std::size_t close = t.find('}', open);
    const std::string slot = t.substr(open + 1, close - open - 1);
    t.replace(open, close - open + 1, pick(rng, kSlots.at(slot)));
  }
  return t;
}

// Every filled template must label as its own domain, generic text must not
// match any keyword.
void check_templates(const fts::keywords::KeywordList& kw) {
  Rng rng(7);
  const std::set<std::size_t> relaxed = {*kw.index_of("Litigation"), *kw.index_of("Covid-19")};
  for (const auto& [domain, templates] : kTemplates) {
    const auto want = *kw.index_of(domain);
    for (const auto& t : templates) {
      for (int rep = 0; rep < 40; ++rep) {
        const auto s = fts::textprep::clean_sentence(fill(rng, t));
        const auto counts = fts::keywords::match_keywords(s, kw);
        auto got = fts::keywords::label_sentence(counts);
        if (!got) got = fts::keywords::relaxed_label(counts, relaxed);
        if (got != want) throw std::runtime_error("template does not label as " + domain + ": " + s);
      }
    }
  }
  for (const auto& g : kGeneric) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto counts = fts::keywords::match_keywords(fts::textprep::clean_sentence(fill(rng, g)), kw);
      if (std::any_of(counts.begin(), counts.end(), [](int c) { return c != 0; })) {
        throw std::runtime_error("generic sentence matches a keyword: " + g);
      }
    }
  }
  for (const auto& w : kOffTopic) {
    if (!kw.topics_of_word(w).empty()) throw std::runtime_error("off-topic word matches a keyword: " + w);
  }
}

std::string mdna_paragraphs(Rng& rng, std::size_t n_sentences) {
  std::string out;
  for (std::size_t i = 0; i < n_sentences; ++i) {
    std::string s;
    if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.12) {
      s = fill(rng, pick(rng, kGeneric));
    } else {
      const auto& [domain, templates] =
          kTemplates[std::uniform_int_distribution<std::size_t>(0, kTemplates.size() - 1)(rng)];
      s = fill(rng, pick(rng, templates));
    }
    out += s;
    out += (i % 5 == 4) ? "\n\n" : " ";
  }
  return out;
}

std::string off_topic_paragraphs(Rng& rng, std::size_t n_sentences) {
  std::string out;
  for (std::size_t i = 0; i < n_sentences; ++i) {
    std::string s = "The";
    const std::size_t len = std::uniform_int_distribution<std::size_t>(8, 14)(rng);
    for (std::size_t w = 0; w < len; ++w) s += " " + pick(rng, kOffTopic);
    out += s + ". ";
    if (i % 5 == 4) out += "\n\n";
  }
  return out;
}

enum class Shape { Normal, NoItem8, Short, Long, OffTopic };

std::string filing(Rng& rng, const std::string& company, int year, Shape shape) {
  std::string body = "UNITED STATES SECURITIES AND EXCHANGE COMMISSION\nFORM 10-K\n";
  body += company + " Inc.\nAnnual filing for the fiscal year ended December 31, " + std::to_string(year) + "\n\n";
  body +=
      "TABLE OF CONTENTS\n"
      "Item 1. Business\n"
      "Item 1A. Risk Factors\n"
      "Item 7. Management's Discussion and Analysis of Financial Condition and Results of Operations\n"
      "Item 7A. Quantitative and Qualitative Disclosures About Market Risk\n";
  if (shape != Shape::NoItem8) body += "Item 8. Financial Statements and Supplementary Data\n";
  body += "\nPART I\n\nItem 1. Business\n\n" + company +
          " designs and distributes " + pick(rng, kSlots.at("product")) + " worldwide.\n\n";
  body += "Item 1A. Risk Factors\n\nOur results could differ from expectations.\n\nPART II\n\n";
  body += "Item 7. Management's Discussion and Analysis of Financial Condition and Results of Operations\n\n";
  body += "Overview\n\n";
  switch (shape) {
    case Shape::Short: body += mdna_paragraphs(rng, 8); break;
    case Shape::Long: body += mdna_paragraphs(rng, 420); break;
    case Shape::OffTopic: body += off_topic_paragraphs(rng, 70); break;
    default: body += mdna_paragraphs(rng, std::uniform_int_distribution<std::size_t>(60, 80)(rng));
  }
  body += "\nItem 7A. Quantitative and Qualitative Disclosures About Market Risk\n\n";
  body += "Interest rate and commodity price exposure is discussed in the notes.\n\n";
  if (shape != Shape::NoItem8) {
    body += "Item 8. Financial Statements and Supplementary Data\n\nSee the index to the consolidated statements.\n";
  }
  return body;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    const fs::path data = argc > 1 ? fs::path(argv[1]) : fs::path(FTS_DATA_DIR);
    const fs::path toy = data / "toy";
    const auto kw = fts::keywords::KeywordList::financial();
    check_templates(kw);
    kw.save(data / "keywords.json");

    Rng rng(20240607);
    fs::remove_all(toy / "filings");
    fs::create_directories(toy / "filings");
    const std::vector<std::string> companies = {"Alder", "Birch", "Cedar", "Dogwood", "Elm",
                                                "Fir",   "Ginkgo", "Hazel", "Ivy", "Juniper"};
    std::vector<nlohmann::json> manifest;
    for (std::size_t i = 0; i < 50; ++i) {
      const auto& company = companies[i % companies.size()];
      int year = 2016 + static_cast<int>(i / companies.size()) + static_cast<int>(i % 3);
      Shape shape = Shape::Normal;
      switch (i) {
        case 3: shape = Shape::NoItem8; break;
        case 11: shape = Shape::Short; break;
        case 17: shape = Shape::Long; break;
        case 23: year = 2014; break;
        case 29: year = 2023; break;
        case 36: case 42: shape = Shape::OffTopic; break;
        default: break;
      }
      char id[32];
      std::snprintf(id, sizeof id, "toy%02zu-%s-%d", i, company.c_str(), year);
      const std::string rel = std::string("filings/") + id + ".txt";
      fts::io::write_text(toy / rel, filing(rng, company, year, shape));
      manifest.push_back({{"id", id}, {"fiscal_year", year}, {"path", rel}});
    }
    fts::io::write_jsonl(toy / "manifest.jsonl", manifest);

    const nlohmann::json config = {
        {"paths", {{"manifest", "manifest.jsonl"}, {"keywords", "../keywords.json"},
                   {"stopwords", {"../stopwords.txt"}}, {"lemmas", "../lemmas.tsv"},
                   {"vectors", "vectors.ftsvec"}}},
        {"textprep", {{"cosine_floor", 0.25}, {"phrase_threshold", 1000.0}}},
        {"cluster", {{"min_cluster_size", 60}, {"min_samples", 10}}},
        {"topics", {{"min_df", 5}}},
        {"nmf", {{"candidate_ks", {10, 14}}, {"max_iters", 200}}},
        {"rng_seed", 42},
    };
    fts::io::write_json(toy / "config.json", config);

    // Run ingest and prep once to learn the sentence keys.
    auto cfg = fts::PipelineConfig::from_json(config, toy);
    cfg.paths.vectors.clear();
    const fs::path tmp = fs::temp_directory_path() / "fts_toy_keys";
    fs::remove_all(tmp);
    const auto m = fts::pipeline::run_pipeline(cfg, tmp, {fts::pipeline::Stage::Ingest, fts::pipeline::Stage::Prep});
    (void)m;
    const auto sentences = fts::textprep::read_sentences(tmp / "prep/sentences.jsonl");
    std::printf("funnel: %s\n", fts::io::read_text(tmp / "prep/funnel.json").c_str());
    fs::remove_all(tmp);

    // One unit direction per domain plus one for generic text, spread over the
    // first ten coordinates; isotropic noise everywhere.
    constexpr std::uint32_t kDim = 32;
    constexpr std::size_t kSpan = 10;
    const std::size_t n_dirs = kw.size() + 1;
    Rng vrng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> centers;
    while (centers.size() < n_dirs) {
      std::vector<double> c(kDim, 0.0);
      double n2 = 0.0;
      for (std::size_t d = 0; d < kSpan; ++d) n2 += (c[d] = gauss(vrng)) * c[d];
      for (auto& x : c) x /= std::sqrt(n2);
      bool far = true;
      for (const auto& o : centers) {
        double d2 = 0.0;
        for (std::size_t d = 0; d < kDim; ++d) d2 += (c[d] - o[d]) * (c[d] - o[d]);
        far = far && d2 > 0.9 * 0.9;
      }
      if (far) centers.push_back(std::move(c));
    }

    const std::set<std::size_t> relaxed = {*kw.index_of("Litigation"), *kw.index_of("Covid-19")};
    fts::vectors::EmbeddingMatrix vecs;
    vecs.dim = kDim;
    for (const auto& s : sentences) {
      const auto counts = fts::keywords::match_keywords(s.cleaned, kw);
      auto dom = fts::keywords::label_sentence(counts);
      if (!dom) dom = fts::keywords::relaxed_label(counts, relaxed);
      if (!dom) dom = fts::keywords::dominant_topic(counts);
      const auto& c = centers[dom.value_or(kw.size())];
      std::vector<double> row(kDim);
      double n2 = 0.0;
      for (std::size_t d = 0; d < kDim; ++d) n2 += (row[d] = c[d] + 0.04 * gauss(vrng)) * row[d];
      for (double x : row) vecs.data.push_back(static_cast<float>(x / std::sqrt(n2)));
      vecs.keys.push_back(s.key());
    }
    fts::vectors::write_vectors(vecs, toy / "vectors.ftsvec");
    std::printf("wrote %zu filings and %zu sentence vectors to %s\n", manifest.size(), vecs.rows(),
                toy.string().c_str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
