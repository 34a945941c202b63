// Acceptance checks AC1..AC11. Prints one PASS/FAIL line per criterion and
// exits non-zero when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "flowclust/embed.hpp"
#include "flowclust/imagegraph.hpp"
#include "flowclust/improve.hpp"
#include "flowclust/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace fc = flowclust;
namespace ft = flowclust::testing;
using fc::NodeId;
using fc::NodeSet;
using fc::Rational;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
};

Rational as_rational(double x) { return Rational(static_cast<long long>(std::llround(x))); }

Rational exact_conductance(const fc::WeightedGraph& g, const NodeSet& s) {
  double vol = s.volume();
  double other = g.total_volume() - vol;
  return as_rational(fc::cut(g, s)) / as_rational(std::min(vol, other));
}

// ---------------------------------------------------------------------------
// shared corpus for AC1, AC2, AC4, AC7, AC8

const Rational kLocalDeltas[] = {Rational(1, 10), Rational(1), Rational(10)};

struct Run {
  std::string name;
  fc::ImproveResult dinkelbach;
  fc::ImproveResult bisection;
  Rational optimum;
  Rational kappa;  // zero for MQI
  Rational delta;  // LocalFlowImprove parameter
};

struct Case {
  fc::WeightedGraph graph;
  ft::DenseGraph dense;
  NodeSet seed;
  std::uint32_t ref = 0;
  Rational theta;
  std::vector<Run> runs;  // mqi, fi, lfi(0.1), lfi(1), lfi(10)
};

struct Corpus {
  std::vector<Case> cases;
  double improve_seconds = 0.0;
  double oracle_seconds = 0.0;
};

Corpus build_corpus(std::size_t count) {
  Corpus corpus;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> size(3, 12);
  std::uniform_real_distribution<double> density(0.05, 0.7);
  fc::ImproveOptions raw;
  raw.small_side = false;
  fc::ImproveOptions raw_bisection = raw;
  raw_bisection.mode = fc::DriverMode::bisection;
  while (corpus.cases.size() < count) {
    std::size_t n = size(rng);
    auto edges = ft::random_connected_edges(rng, n, density(rng), 3);
    Case c;
    c.graph = fc::WeightedGraph::from_edges(n, edges);
    c.dense = ft::dense_from_edges(n, edges);
    c.seed = NodeSet(c.graph, ft::random_seed(rng, c.graph));
    if (c.seed.volume() > c.graph.total_volume() / 2) continue;
    c.ref = ft::to_mask(c.seed);
    c.theta = as_rational(c.seed.volume()) / as_rational(c.graph.total_volume() - c.seed.volume());

    auto t0 = Clock::now();
    auto add = [&](std::string name, fc::Algorithm a, Rational kappa, Rational delta) {
      Run r;
      r.name = std::move(name);
      r.kappa = kappa;
      r.delta = delta;
      r.dinkelbach = fc::improve(c.graph, c.seed, a, delta, raw);
      r.bisection = fc::improve(c.graph, c.seed, a, delta, raw_bisection);
      c.runs.push_back(std::move(r));
    };
    add("mqi", fc::Algorithm::mqi, Rational(0), Rational(0));
    add("fi", fc::Algorithm::flow_improve, c.theta, Rational(0));
    for (const Rational& d : kLocalDeltas) add("lfi(" + d.str() + ")", fc::Algorithm::local_flow_improve, c.theta + d, d);
    corpus.improve_seconds += seconds_since(t0);

    t0 = Clock::now();
    for (Run& r : c.runs) {
      auto kind = r.name == "mqi" ? ft::OracleKind::mqi : ft::OracleKind::relative;
      r.optimum = ft::brute_force_ratio(c.dense, c.ref, kind, r.kappa).value;
    }
    corpus.oracle_seconds += seconds_since(t0);
    corpus.cases.push_back(std::move(c));
  }
  return corpus;
}

Verdict ac1(const Corpus& corpus) {
  Verdict v;
  std::size_t checked = 0, mismatches = 0;
  std::string first;
  for (std::size_t i = 0; i < corpus.cases.size(); ++i) {
    for (const Run& r : corpus.cases[i].runs) {
      ++checked;
      Rational got = Rational::parse(r.dinkelbach.objective_exact);
      if (!(got == r.optimum)) {
        ++mismatches;
        if (first.empty()) first = "; first: case " + std::to_string(i) + " " + r.name + " got " + got.str() +
                                   " want " + r.optimum.str();
      }
    }
  }
  double total = corpus.improve_seconds + corpus.oracle_seconds;
  v.pass = mismatches == 0 && total < 120.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu graphs, %zu runs, %zu mismatches, solve %.2fs + oracle %.2fs", corpus.cases.size(),
                checked, mismatches, corpus.improve_seconds, corpus.oracle_seconds);
  v.detail = buf + first;
  return v;
}

Verdict ac2(const Corpus& corpus) {
  Verdict v;
  std::size_t compared = 0, violations = 0;
  std::string first;
  for (std::size_t i = 0; i < corpus.cases.size(); ++i) {
    const Case& c = corpus.cases[i];
    auto small = [&](const fc::ImproveResult& r) { return r.set.volume() <= c.graph.total_volume() / 2; };
    const fc::ImproveResult& mqi = c.runs[0].dinkelbach;
    const fc::ImproveResult& fi = c.runs[1].dinkelbach;
    if (!small(fi)) continue;
    Rational phi_mqi = exact_conductance(c.graph, mqi.set);
    Rational phi_fi = exact_conductance(c.graph, fi.set);
    for (std::size_t k = 2; k < c.runs.size(); ++k) {
      const fc::ImproveResult& lfi = c.runs[k].dinkelbach;
      if (!small(lfi)) continue;
      ++compared;
      Rational phi_lfi = exact_conductance(c.graph, lfi.set);
      if (phi_lfi < phi_fi || phi_mqi < phi_lfi) {
        ++violations;
        if (first.empty()) {
          first = "; first: case " + std::to_string(i) + " " + c.runs[k].name + " phi fi/lfi/mqi " + phi_fi.str() +
                  " " + phi_lfi.str() + " " + phi_mqi.str();
        }
      }
    }
  }
  v.pass = violations == 0 && compared > 0;
  v.detail = std::to_string(compared) + " (fi, lfi, mqi) triples on the small side, " + std::to_string(violations) +
             " violations" + first;
  return v;
}

Verdict ac3() {
  Verdict v;
  std::size_t seeds = 0, failures = 0;
  std::string first;
  for (std::size_t N : {5, 10, 25}) {
    ft::ChordedCycle cyc = ft::chorded_cycle(N);
    const fc::WeightedGraph& g = cyc.graph;
    for (NodeId s = 0; s < g.node_count(); ++s) {
      if (g.degree(s) != 4.0) continue;
      ++seeds;
      fc::ImproveResult r = fc::flow_improve(g, NodeSet(g, {s}));
      bool in_a = std::find(cyc.region_a.begin(), cyc.region_a.end(), s) != cyc.region_a.end();
      const auto& segment = in_a ? cyc.segment_a : cyc.segment_b;
      bool ok = r.set.size() == N + 4 && fc::cut(g, r.set) == 2.0 && r.set.members() == segment;
      if (!ok) {
        ++failures;
        if (first.empty()) {
          first = "; first: N=" + std::to_string(N) + " seed " + std::to_string(s) + " got " +
                  std::to_string(r.set.size()) + " nodes, cut " + std::to_string(fc::cut(g, r.set));
        }
      }
    }
  }
  v.pass = failures == 0 && seeds == 2 * (5 + 10 + 25);
  v.detail = std::to_string(seeds) + " degree-4 seeds over N in {5,10,25}, " + std::to_string(failures) +
             " not returning the (N+4)-node cut-2 segment" + first;
  return v;
}

Verdict ac4(const Corpus& corpus) {
  Verdict v;
  std::size_t runs = 0, over = 0, disagree = 0, max_iter = 0;
  std::string first;
  for (std::size_t i = 0; i < corpus.cases.size(); ++i) {
    const Case& c = corpus.cases[i];
    double cut_r = fc::cut(c.graph, c.seed);
    for (const Run& r : c.runs) {
      ++runs;
      max_iter = std::max(max_iter, r.dinkelbach.iterations);
      if (static_cast<double>(r.dinkelbach.iterations) > cut_r) {
        ++over;
        if (first.empty()) {
          first = "; first: case " + std::to_string(i) + " " + r.name + " " +
                  std::to_string(r.dinkelbach.iterations) + " iterations, cut(R) " + std::to_string(cut_r);
        }
      }
      if (r.bisection.objective_exact != r.dinkelbach.objective_exact) {
        ++disagree;
        if (first.empty()) {
          first = "; first: case " + std::to_string(i) + " " + r.name + " bisection " + r.bisection.objective_exact +
                  " vs " + r.dinkelbach.objective_exact;
        }
      }
    }
  }
  v.pass = over == 0 && disagree == 0;
  v.detail = std::to_string(runs) + " runs, " + std::to_string(over) + " over the cut(R) bound (max " +
             std::to_string(max_iter) + " iterations), " + std::to_string(disagree) +
             " bisection/dinkelbach objective mismatches" + first;
  return v;
}

Verdict ac5() {
  Verdict v;
  auto t0 = Clock::now();
  const std::size_t cliques = 10000, k = 10;
  fc::WeightedGraph g = ft::ring_of_cliques(cliques, k);
  // a clique plus half of the next one, so the driver has to move
  std::vector<NodeId> seed = ft::clique_members(cliques / 2, k);
  for (NodeId u : ft::clique_members(cliques / 2 + 1, k))
    if (seed.size() < k + k / 2) seed.push_back(u);
  NodeSet r(g, seed);
  NodeSet home(g, ft::clique_members(cliques / 2, k));
  double build = seconds_since(t0);

  auto t1 = Clock::now();
  fc::ImproveResult lfi = fc::local_flow_improve(g, r, Rational(1));
  double lfi_time = seconds_since(t1);

  Rational theta = as_rational(r.volume()) / as_rational(g.total_volume() - r.volume());
  Rational sigma = theta + Rational(1);
  double sig = sigma.to_double();
  double vol_r = r.volume();
  // re-run each traced subproblem to read its frontier
  std::size_t worst_nodes = 0;
  bool nodes_ok = true;
  for (const fc::TraceEntry& t : lfi.trace) {
    fc::LocalOutcome out = fc::lfi_subproblem(g, r, Rational::parse(t.delta_exact), sigma);
    double limit = static_cast<double>(r.size()) + vol_r / sig + static_cast<double>(out.frontier.boundary_size);
    worst_nodes = std::max(worst_nodes, out.frontier.materialized.size());
    if (static_cast<double>(out.frontier.materialized.size()) > limit) nodes_ok = false;
  }
  double arc_limit = 4.0 * (1.0 + 1.0 / sig) * vol_r;
  bool arcs_ok = static_cast<double>(lfi.arcs_touched) <= arc_limit;

  auto t2 = Clock::now();
  fc::ImproveResult fi = fc::flow_improve(g, r);
  double fi_time = seconds_since(t2);
  double m = static_cast<double>(g.edge_count());
  double fi_per_solve = static_cast<double>(fi.arcs_touched) / static_cast<double>(std::max<std::size_t>(1, fi.iterations));
  bool fi_linear = fi_per_solve >= m;
  double total = seconds_since(t0);

  v.pass = nodes_ok && arcs_ok && fi_linear && total < 30.0 && lfi.set == home;
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "n=%zu m=%.0f |R|=%zu; lfi: %zu solves, max %zu nodes materialized, %zu arcs touched (limit %.1f), %.3fs; "
                "fi: %zu solves, %zu arcs touched (%.2f m per solve), %.3fs; build %.2fs, total %.2fs",
                g.node_count(), m, r.size(), lfi.iterations, worst_nodes, lfi.arcs_touched, arc_limit, lfi_time, fi.iterations,
                fi.arcs_touched, fi_per_solve / m, fi_time, build, total);
  v.detail = buf;
  return v;
}

Verdict ac6() {
  Verdict v;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> size(2, 10);
  std::uniform_int_distribution<long long> cap(0, 9);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = size(rng);
    std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
    fc::FlowNetwork<fc::Int128> net(n, 0, static_cast<std::uint32_t>(n - 1));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        c[a][b] = cap(rng);
        if (c[a][b] > 0) net.add_arc(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), c[a][b]);
      }
    net.max_flow();
    long long dinic = static_cast<long long>(net.flow_value());
    long long oracle = ft::edmonds_karp(c, 0, n - 1);
    auto side = net.source_side_mask();
    long long cut = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (side[a] && !side[b]) cut += c[a][b];
    if (dinic != oracle || cut != oracle || side[n - 1]) ++bad;
  }
  v.pass = bad == 0;
  v.detail = "1000 networks, " + std::to_string(bad) + " with dinic, augmenting-path and source-side cut not all equal";
  return v;
}

Verdict ac7(const Corpus& corpus) {
  Verdict v;
  std::size_t runs = 0, bad = 0;
  std::string first;
  for (std::size_t i = 0; i < corpus.cases.size(); ++i) {
    for (const Run& r : corpus.cases[i].runs) {
      const auto& trace = r.dinkelbach.trace;
      if (trace.size() < 2) continue;
      ++runs;
      for (std::size_t k = 1; k < trace.size(); ++k) {
        if (!(trace[k].cut < trace[k - 1].cut) || !(trace[k].denominator < trace[k - 1].denominator)) {
          ++bad;
          if (first.empty()) first = "; first: case " + std::to_string(i) + " " + r.name + " step " + std::to_string(k);
          break;
        }
      }
    }
  }
  v.pass = bad == 0 && runs > 0;
  v.detail = std::to_string(runs) + " runs with >= 2 iterations, " + std::to_string(bad) +
             " where cut_k or g_k failed to decrease strictly" + first;
  return v;
}

Verdict ac8(const Corpus& corpus) {
  Verdict v;
  std::size_t outputs = 0, bad = 0;
  for (const Case& c : corpus.cases) {
    Rational vol_r = as_rational(c.seed.volume());
    Rational vol_rbar = as_rational(c.graph.total_volume() - c.seed.volume());
    for (std::size_t k = 2; k < c.runs.size(); ++k) {
      const Run& r = c.runs[k];
      for (const fc::ImproveResult* res : {&r.dinkelbach, &r.bisection}) {
        ++outputs;
        Rational limit = (Rational(1) + vol_rbar / (vol_r + r.delta * vol_rbar)) * vol_r;
        if (!(as_rational(res->set.volume()) < limit)) ++bad;
      }
    }
  }
  v.pass = bad == 0;
  v.detail = std::to_string(outputs) + " lfi outputs, " + std::to_string(bad) + " violating the strict volume bound";
  return v;
}

Verdict ac9() {
  Verdict v;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 6 + trial % 30;
    auto edges = ft::random_connected_edges(rng, n, 0.2, 5);
    for (auto& e : edges) e.weight *= 0.5 + unit(rng);
    fc::WeightedGraph g = fc::WeightedGraph::from_edges(n, edges);
    NodeSet r(g, ft::random_seed(rng, g));
    if (r.volume() > g.total_volume() / 2 || r.size() == n) {
      --trial;
      continue;
    }
    std::vector<NodeId> s_ids;
    for (NodeId u = 0; u < n; ++u)
      if (unit(rng) < 0.4) s_ids.push_back(u);
    NodeSet s(g, s_ids);
    double theta = r.volume() / (g.total_volume() - r.volume());
    double delta = 0.05 + 2.0 * unit(rng);
    double sigma = theta + 3.0 * unit(rng);
    double kappa = delta * (sigma - theta) / (1.0 + theta);
    double delta_hat = delta + kappa;

    auto lfi = fc::build_explicit_network<double>(g, r, delta, sigma, false);
    auto fi = fc::build_explicit_network<double>(g, r, delta_hat, theta, false);
    auto mask_of = [&](const fc::ExplicitNetwork<double>& net) {
      std::vector<char> m(2 + net.node_of_slot.size(), 0);
      m[0] = 1;
      for (std::size_t i = 0; i < net.node_of_slot.size(); ++i) m[2 + i] = s.contains(net.node_of_slot[i]);
      return m;
    };
    double lhs = lfi.network.cut_capacity(mask_of(lfi));
    // the two objectives differ by kappa ||D x||_1 and the constant kappa vol(R)
    double rhs = fi.network.cut_capacity(mask_of(fi)) + kappa * s.volume() - kappa * r.volume();
    double rel = std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs));
    worst = std::max(worst, rel);
  }
  v.pass = worst <= 1e-9;
  char buf[120];
  std::snprintf(buf, sizeof buf, "100 tuples, worst relative gap %.3g", worst);
  v.detail = buf;
  return v;
}

Verdict ac10() {
  Verdict v;
  const std::size_t n = 20;
  fc::Image im;
  im.rows = im.cols = n;
  im.data.assign(n * n, 0.0);
  auto in_block = [](std::size_t r, std::size_t c) { return r >= 6 && r < 14 && c >= 5 && c < 13; };
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (in_block(r, c)) im.at(r, c, 0) = 1.0;
  fc::ImageGraph ig = fc::image_to_graph(im, {8.0, 2.0, 0.05});
  std::vector<NodeId> rect;
  for (std::size_t r = 4; r < 16; ++r)
    for (std::size_t c = 3; c < 15; ++c) rect.push_back(ig.map.node(r, c));
  fc::ImproveResult res = fc::mqi(ig.graph, NodeSet(ig.graph, rect));
  std::size_t hit = 0;
  for (NodeId u : res.set) hit += in_block(ig.map.row(u), ig.map.col(u));
  double precision = res.set.empty() ? 0.0 : static_cast<double>(hit) / static_cast<double>(res.set.size());
  double recall = static_cast<double>(hit) / 64.0;
  v.pass = precision >= 0.95 && recall >= 0.95;
  char buf[160];
  std::snprintf(buf, sizeof buf, "r=8 sigma_d2=2 sigma_i2=0.05, 144-pixel seed -> %zu pixels, precision %.3f recall %.3f",
                res.set.size(), precision, recall);
  v.detail = buf;
  return v;
}

Verdict ac11() {
  Verdict v;
  // rank-1: every sample is the whole stable clique
  fc::WeightedGraph g = ft::ring_of_cliques(6, 6);
  NodeSet s(g, ft::clique_members(3, 6));
  fc::EmbeddingParams p;
  p.samples = 10;
  p.subset_size = s.size();
  p.hops = 0;
  p.dimensions = 2;
  fc::Embedding e = fc::flow_coordinates(g, s, p, 11);
  double ratio = e.singular_values(1) / e.singular_values(0);
  double off = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    double want = s.contains(u) ? 1.0 / std::sqrt(static_cast<double>(s.size())) : 0.0;
    off = std::max(off, std::fabs(e.coordinates(u, 0) - want));
  }
  bool rank_one = ratio < 1e-8 && off < 1e-10;

  // two cliques, single-node samples grown by one hop
  fc::WeightedGraph h = ft::ring_of_cliques(4, 8);
  auto a = ft::clique_members(0, 8), b = ft::clique_members(2, 8);
  std::vector<NodeId> both = a;
  both.insert(both.end(), b.begin(), b.end());
  fc::EmbeddingParams q;
  q.samples = 30;
  q.subset_size = 1;
  q.hops = 1;
  q.dimensions = 2;
  fc::Embedding f = fc::flow_coordinates(h, NodeSet(h, both), q, 12);
  auto sign = [](double x) { return x > 1e-9 ? 1 : (x < -1e-9 ? -1 : 0); };
  auto pattern = [&](NodeId u) { return std::make_pair(sign(f.coordinates(u, 0)), sign(f.coordinates(u, 1))); };
  bool separated = pattern(a[0]) != pattern(b[0]) && pattern(a[0]) != std::make_pair(0, 0) &&
                   pattern(b[0]) != std::make_pair(0, 0);
  for (NodeId u : a) separated &= pattern(u) == pattern(a[0]);
  for (NodeId u : b) separated &= pattern(u) == pattern(b[0]);

  v.pass = rank_one && separated;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "rank-1: sigma2/sigma1 = %.2g, max deviation from 1_S/sqrt|S| %.2g; two cliques %s sign-separated",
                ratio, off, separated ? "are" : "are not");
  v.detail = buf;
  return v;
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  Corpus corpus = build_corpus(500);
  std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"AC1", [&] { return ac1(corpus); }}, {"AC2", [&] { return ac2(corpus); }}, {"AC3", ac3},
      {"AC4", [&] { return ac4(corpus); }}, {"AC5", ac5},
      {"AC6", ac6},
      {"AC7", [&] { return ac7(corpus); }}, {"AC8", [&] { return ac8(corpus); }}, {"AC9", ac9},
      {"AC10", ac10},
      {"AC11", ac11},
  };
  int failed = 0;
  for (auto& [name, fn] : checks) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("%-4s %s  %s\n", name.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed (%.1fs)\n", failed, checks.size(), seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
