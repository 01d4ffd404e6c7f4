#pragma once
// Independent reference implementations used as test oracles. They favour
// obviousness over speed and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Tokens = std::vector<std::string>;

// Every window of the corpus materialised as a set of words. Documents no
// longer than `window` contribute themselves as a single window.
inline std::vector<std::set<std::string>> enumerate_windows(const std::vector<Tokens>& docs,
                                                            std::size_t window) {
  std::vector<std::set<std::string>> out;
  for (const auto& d : docs) {
    if (d.empty()) continue;
    if (d.size() <= window) {
      out.emplace_back(d.begin(), d.end());
      continue;
    }
    for (std::size_t start = 0; start + window <= d.size(); ++start) {
      out.emplace_back(d.begin() + static_cast<std::ptrdiff_t>(start),
                       d.begin() + static_cast<std::ptrdiff_t>(start + window));
    }
  }
  return out;
}

// NPMI of a word pair straight from the definition. Conventions: a word
// that never occurs scores -1; a pair present in every window scores 1.
inline double npmi_pair(const std::vector<std::set<std::string>>& windows, const std::string& a,
                        const std::string& b, double eps) {
  double na = 0, nb = 0, nab = 0;
  for (const auto& w : windows) {
    const bool ha = w.count(a) != 0;
    const bool hb = w.count(b) != 0;
    na += ha;
    nb += hb;
    nab += ha && hb;
  }
  const double n = static_cast<double>(windows.size());
  if (n == 0 || na == 0 || nb == 0) return -1.0;
  if (nab == n) return 1.0;
  const double pab = nab / n + eps;
  return std::log(pab / ((na / n) * (nb / n))) / -std::log(pab);
}

inline std::vector<double> npmi_topics(const std::vector<Tokens>& topics, const std::vector<Tokens>& docs,
                                       std::size_t window, std::size_t top_k, double eps) {
  const auto windows = enumerate_windows(docs, window);
  std::vector<double> scores;
  for (const auto& t : topics) {
    const std::size_t k = std::min(top_k, t.size());
    double sum = 0;
    int pairs = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        sum += npmi_pair(windows, t[i], t[j], eps);
        ++pairs;
      }
    }
    scores.push_back(pairs ? sum / pairs : 0.0);
  }
  return scores;
}

using Point = std::vector<double>;

inline double dist(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Core distance: distance to the min_samples-th nearest point, the point
// itself counted as the first.
inline std::vector<double> core_distances(const std::vector<Point>& pts, std::size_t min_samples) {
  std::vector<double> core;
  for (const auto& p : pts) {
    std::vector<double> d;
    for (const auto& q : pts) d.push_back(dist(p, q));
    std::sort(d.begin(), d.end());
    core.push_back(d[min_samples - 1]);
  }
  return core;
}

// Kruskal over the complete mutual-reachability graph.
inline double mst_weight(const std::vector<Point>& pts, std::size_t min_samples) {
  const auto core = core_distances(pts, min_samples);
  struct E {
    double w;
    std::size_t a, b;
  };
  std::vector<E> edges;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      edges.push_back({std::max({core[i], core[j], dist(pts[i], pts[j])}), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) { return x.w < y.w; });
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  double total = 0;
  for (const auto& e : edges) {
    const auto ra = find(e.a);
    const auto rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    total += e.w;
  }
  return total;
}

// Hubert-Arabie adjusted Rand index; every distinct label (noise included)
// is its own class.
inline double adjusted_rand(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, double> nij;
  std::map<int, double> ai, bj;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++nij[{a[i], b[i]}];
    ++ai[a[i]];
    ++bj[b[i]];
  }
  auto c2 = [](double x) { return x * (x - 1) / 2; };
  double sum_ij = 0, sum_a = 0, sum_b = 0;
  for (const auto& [k, v] : nij) sum_ij += c2(v);
  for (const auto& [k, v] : ai) sum_a += c2(v);
  for (const auto& [k, v] : bj) sum_b += c2(v);
  const double expected = sum_a * sum_b / c2(static_cast<double>(a.size()));
  const double max_index = (sum_a + sum_b) / 2;
  if (max_index == expected) return 1.0;
  return (sum_ij - expected) / (max_index - expected);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

// Fourth-order stencil; lets h grow enough to keep cancellation error small
// when the function value dwarfs its slope.
inline double five_point_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

// Relative error with an absolute floor so that near-zero derivatives do not
// blow up the ratio.
inline double rel_error(double got, double want, double floor = 1e-4) {
  return std::abs(got - want) / std::max({std::abs(got), std::abs(want), floor});
}

}  // namespace oracle
