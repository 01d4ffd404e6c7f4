#include "fts/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fts/error.hpp"
#include "fts/io.hpp"

namespace fts::cluster {

namespace {

// Keeps stabilities finite when duplicate points give zero distances.
constexpr double kLambdaCap = 1e250;

double lambda_of(double distance) {
  return distance > 1.0 / kLambdaCap ? 1.0 / distance : kLambdaCap;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

// Binary merge tree: nodes [0, n) are points, node n + i is the i-th merge.
struct LinkageNode {
  std::size_t left = 0;
  std::size_t right = 0;
  double distance = 0.0;
  std::size_t size = 1;
};

std::vector<LinkageNode> single_linkage(std::vector<MstEdge> mst, std::size_t n) {
  std::stable_sort(mst.begin(), mst.end(),
                   [](const MstEdge& x, const MstEdge& y) { return x.weight < y.weight; });
  std::vector<LinkageNode> nodes(n);
  nodes.reserve(2 * n - 1);
  UnionFind uf(2 * n - 1);
  for (const auto& e : mst) {
    const std::size_t ra = uf.find(e.a);
    const std::size_t rb = uf.find(e.b);
    const std::size_t id = nodes.size();
    nodes.push_back({ra, rb, e.weight, nodes[ra].size + nodes[rb].size});
    uf.parent[ra] = id;
    uf.parent[rb] = id;
  }
  return nodes;
}

struct CondensedCluster {
  std::ptrdiff_t parent = -1;
  double birth_lambda = 0.0;
  std::size_t size = 0;
  std::vector<std::size_t> children;
  double stability = 0.0;
};

struct CondensedTree {
  std::vector<CondensedCluster> clusters;  // index 0 is the root
  std::vector<std::size_t> point_cluster;  // cluster each point falls out of
};

void collect_points(const std::vector<LinkageNode>& nodes, std::size_t node, std::size_t n,
                    std::vector<std::size_t>& out) {
  std::vector<std::size_t> stack{node};
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    if (cur < n) {
      out.push_back(cur);
    } else {
      stack.push_back(nodes[cur].left);
      stack.push_back(nodes[cur].right);
    }
  }
}

CondensedTree condense(const std::vector<LinkageNode>& nodes, std::size_t n, std::size_t min_size) {
  CondensedTree tree;
  tree.point_cluster.assign(n, 0);
  tree.clusters.push_back({-1, 0.0, n, {}, 0.0});

  auto fall_out = [&](std::size_t node, std::size_t cluster, double lambda) {
    std::vector<std::size_t> pts;
    collect_points(nodes, node, n, pts);
    for (auto p : pts) tree.point_cluster[p] = cluster;
    tree.clusters[cluster].stability +=
        static_cast<double>(pts.size()) * (lambda - tree.clusters[cluster].birth_lambda);
  };

  if (n == 1) {
    fall_out(0, 0, 0.0);
    return tree;
  }
  std::vector<std::pair<std::size_t, std::size_t>> work{{nodes.size() - 1, 0}};
  while (!work.empty()) {
    const auto [node, cluster] = work.back();
    work.pop_back();
    const auto& nd = nodes[node];
    const double lambda = lambda_of(nd.distance);
    const bool big_l = nodes[nd.left].size >= min_size;
    const bool big_r = nodes[nd.right].size >= min_size;
    if (big_l && big_r) {
      for (std::size_t child : {nd.left, nd.right}) {
        const std::size_t id = tree.clusters.size();
        tree.clusters.push_back({static_cast<std::ptrdiff_t>(cluster), lambda, nodes[child].size, {}, 0.0});
        tree.clusters[cluster].children.push_back(id);
        tree.clusters[cluster].stability +=
            static_cast<double>(nodes[child].size) * (lambda - tree.clusters[cluster].birth_lambda);
        work.emplace_back(child, id);
      }
    } else if (big_l) {
      fall_out(nd.right, cluster, lambda);
      work.emplace_back(nd.left, cluster);
    } else if (big_r) {
      fall_out(nd.left, cluster, lambda);
      work.emplace_back(nd.right, cluster);
    } else {
      fall_out(nd.left, cluster, lambda);
      fall_out(nd.right, cluster, lambda);
    }
  }
  return tree;
}

// Excess-of-mass selection; the root is never selected.
std::vector<bool> select_clusters(const CondensedTree& tree) {
  const std::size_t k = tree.clusters.size();
  std::vector<bool> selected(k, false);
  std::vector<double> best(k, 0.0);
  // Children always have larger ids than their parent.
  for (std::size_t c = k; c-- > 1;) {
    const auto& cl = tree.clusters[c];
    double children = 0.0;
    for (auto ch : cl.children) children += best[ch];
    if (cl.children.empty() || cl.stability >= children) {
      selected[c] = true;
      best[c] = cl.stability;
      std::vector<std::size_t> stack(cl.children.begin(), cl.children.end());
      while (!stack.empty()) {
        const auto d = stack.back();
        stack.pop_back();
        selected[d] = false;
        for (auto g : tree.clusters[d].children) stack.push_back(g);
      }
    } else {
      best[c] = children;
    }
  }
  return selected;
}

}  // namespace

double euclidean(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<double> core_distances(const vectors::EmbeddingMatrix& points, std::size_t min_samples) {
  const std::size_t n = points.rows();
  if (min_samples == 0 || n < min_samples) {
    throw Error(Errc::TooFewPoints, std::to_string(n) + " points for min_samples " +
                                        std::to_string(min_samples));
  }
  std::vector<double> core(n);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = i == j ? 0.0 : euclidean(points.row(i), points.row(j));
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(min_samples - 1), dist.end());
    core[i] = dist[min_samples - 1];
  }
  return core;
}

double mutual_reachability(const vectors::EmbeddingMatrix& points, const std::vector<double>& core,
                           std::size_t a, std::size_t b) {
  return std::max({core[a], core[b], euclidean(points.row(a), points.row(b))});
}

std::vector<MstEdge> mutual_reachability_mst(const vectors::EmbeddingMatrix& points,
                                             const std::vector<double>& core) {
  const std::size_t n = points.rows();
  std::vector<MstEdge> edges;
  if (n < 2) return edges;
  edges.reserve(n - 1);
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> from(n, 0);
  std::size_t cur = 0;
  in_tree[0] = true;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    double next_w = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double w = mutual_reachability(points, core, cur, j);
      if (w < best[j]) {
        best[j] = w;
        from[j] = cur;
      }
      if (best[j] < next_w) {
        next_w = best[j];
        next = j;
      }
    }
    in_tree[next] = true;
    edges.push_back({from[next], next, next_w});
    cur = next;
  }
  return edges;
}

ClusterAssignment density_cluster(const vectors::EmbeddingMatrix& reduced, ClusterParams params) {
  if (params.min_cluster_size < 2) throw Error(Errc::InvalidParams, "min_cluster_size must be >= 2");
  reduced.validate();
  const std::size_t n = reduced.rows();
  const auto core = core_distances(reduced, params.min_samples);

  ClusterAssignment out;
  out.params = params;
  out.labels.assign(n, kNoise);

  const auto linkage = single_linkage(mutual_reachability_mst(reduced, core), n);
  const auto tree = condense(linkage, n, params.min_cluster_size);
  const auto selected = select_clusters(tree);

  std::vector<std::ptrdiff_t> owner(tree.clusters.size(), -1);
  for (std::size_t c = 0; c < tree.clusters.size(); ++c) {
    std::ptrdiff_t cur = static_cast<std::ptrdiff_t>(c);
    while (cur >= 0 && !selected[static_cast<std::size_t>(cur)]) cur = tree.clusters[cur].parent;
    owner[c] = cur;
  }
  // Number selected clusters by their lowest member row.
  std::vector<int> number(tree.clusters.size(), kNoise);
  int next = 0;
  for (std::size_t p = 0; p < n; ++p) {
    const auto o = owner[tree.point_cluster[p]];
    if (o < 0) continue;
    if (number[o] == kNoise) number[o] = next++;
    out.labels[p] = number[o];
  }
  out.n_clusters = static_cast<std::size_t>(next);
  return out;
}

std::size_t count_outliers(const ClusterAssignment& assignment) noexcept {
  return static_cast<std::size_t>(std::count(assignment.labels.begin(), assignment.labels.end(), kNoise));
}

void write_assignments(const ClusterAssignment& a, const std::vector<std::string>& keys,
                       const std::filesystem::path& path) {
  if (keys.size() != a.labels.size()) throw Error(Errc::DimensionMismatch, "keys vs labels");
  std::vector<nlohmann::json> rows;
  rows.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) rows.push_back({{"key", keys[i]}, {"label", a.labels[i]}});
  io::write_jsonl(path, rows);
}

std::vector<std::pair<std::string, int>> read_assignments(const std::filesystem::path& path) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& r : io::read_jsonl(path)) {
    out.emplace_back(r.at("key").get<std::string>(), r.at("label").get<int>());
  }
  return out;
}

}  // namespace fts::cluster
