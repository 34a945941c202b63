#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flowclust/diffusion.hpp"
#include "flowclust/embed.hpp"
#include "flowclust/errors.hpp"
#include "flowclust/graph_io.hpp"
#include "flowclust/imagegraph.hpp"
#include "flowclust/improve.hpp"
#include "flowclust/metrics.hpp"
#include "flowclust/parallel.hpp"
#include "png_input.hpp"

namespace flowclust::cli {
namespace {

using json = nlohmann::ordered_json;

struct GraphArgs {
  std::string path;
  bool relabel = false;
  bool fold_self_loops = false;

  void attach(CLI::App* app) {
    app->add_option("-g,--graph", path, "Edge list: lines 'u v [w]', '#' comments")->required();
    app->add_flag("--relabel", relabel, "Accept arbitrary ids and renumber them densely");
    app->add_flag("--fold-self-loops", fold_self_loops, "Count self-loop weight in the degree instead of dropping it");
  }

  WeightedGraph load() const {
    EdgeListOptions opts;
    opts.relabel = relabel;
    opts.fold_self_loops = fold_self_loops;
    return load_edge_list_file(path, opts);
  }
};

struct SetArgs {
  std::string file;
  std::string ids;
  CLI::Option* file_opt = nullptr;
  CLI::Option* ids_opt = nullptr;

  void attach(CLI::App* app, const std::string& what) {
    file_opt = app->add_option("-s,--seed-set", file, what + " file, one id per line");
    ids_opt = app->add_option("--ids", ids, what + " as whitespace separated ids");
    file_opt->excludes(ids_opt);
  }

  NodeSet load(const WeightedGraph& g) const {
    if (file_opt->count()) return read_node_set_file(file, g);
    if (ids_opt->count()) return parse_node_ids(ids, g);
    throw InputError("a node set is required (--seed-set or --ids)");
  }
};

struct ImproveArgs {
  std::string algorithm = "mqi";
  std::string delta = "0";
  std::string mode = "dinkelbach";
  double eps = 0.0;
  std::string arithmetic = "auto";
  bool allow_large_seed = false;
  bool keep_side = false;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* eps_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--alg", algorithm, "mqi, fi or lfi")
        ->check(CLI::IsMember({"mqi", "fi", "lfi"}))
        ->capture_default_str();
    delta_opt = app->add_option("--delta", delta, "Locality parameter for lfi (decimal or p/q, >= 0)");
    app->add_option("--mode", mode, "dinkelbach or bisection")
        ->check(CLI::IsMember({"dinkelbach", "bisection"}))
        ->capture_default_str();
    eps_opt = app->add_option("--eps", eps,
                              "Bisection tolerance; defaults to the exactness threshold on integer graphs");
    app->add_option("--arith", arithmetic, "auto, exact or float")
        ->check(CLI::IsMember({"auto", "exact", "float"}))
        ->capture_default_str();
    app->add_flag("--allow-large-seed", allow_large_seed, "Permit vol(R) > vol(G)/2 (mqi reports ncut')");
    app->add_flag("--keep-side", keep_side, "Do not report fi/lfi results on the smaller side");
  }

  Algorithm parsed_algorithm() const {
    if (algorithm == "fi") return Algorithm::flow_improve;
    if (algorithm == "lfi") return Algorithm::local_flow_improve;
    return Algorithm::mqi;
  }

  // eps only with bisection, delta only with lfi
  void validate() const {
    if (eps_opt->count() && mode != "bisection") throw InputError("--eps requires --mode bisection");
    if (delta_opt->count() && algorithm != "lfi") throw InputError("--delta requires --alg lfi");
    if (eps_opt->count() && !(eps > 0.0 && eps <= 1.0)) throw InputError("--eps must lie in (0, 1]");
  }

  Rational parsed_delta() const {
    Rational d;
    try {
      d = Rational::parse(delta);
    } catch (const std::exception& e) {
      throw InputError("invalid --delta '" + delta + "'");
    }
    if (d.sign() < 0) throw InputError("--delta must be non-negative");
    return d;
  }

  ImproveOptions options() const {
    ImproveOptions o;
    o.mode = mode == "bisection" ? DriverMode::bisection : DriverMode::dinkelbach;
    if (eps_opt->count()) o.eps = eps;
    o.allow_large_seed = allow_large_seed;
    o.arithmetic = arithmetic == "exact" ? Arithmetic::exact
                   : arithmetic == "float" ? Arithmetic::floating
                                           : Arithmetic::automatic;
    o.small_side = !keep_side;
    return o;
  }
};

json null_if_nan(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json labels_of(const WeightedGraph& g, const NodeSet& s) {
  json a = json::array();
  for (NodeId v : s) a.push_back(g.label(v));
  return a;
}

double safe_conductance(const WeightedGraph& g, const NodeSet& s) {
  try {
    return conductance(g, s).conductance;
  } catch (const std::domain_error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

json result_json(const WeightedGraph& g, const ImproveResult& r) {
  json j;
  j["algorithm"] = algorithm_name(r.algorithm);
  j["mode"] = mode_name(r.mode);
  j["objective_kind"] = r.objective_kind;
  j["set"] = labels_of(g, r.set);
  j["size"] = r.set.size();
  j["cut"] = cut(g, r.set);
  j["vol"] = r.set.volume();
  j["conductance"] = null_if_nan(safe_conductance(g, r.set));
  j["objective"] = r.objective;
  if (r.exact) j["objective_exact"] = r.objective_exact;
  j["iterations"] = r.iterations;
  j["arcs_touched"] = r.arcs_touched;
  j["flipped"] = r.flipped;
  json trace = json::array();
  for (const TraceEntry& t : r.trace) {
    json e;
    e["delta"] = t.delta;
    if (!t.delta_exact.empty()) e["delta_exact"] = t.delta_exact;
    e["cut"] = t.cut;
    e["denominator"] = t.denominator;
    e["arcs_touched"] = t.arcs_touched;
    e["nodes_touched"] = t.nodes_touched;
    trace.push_back(std::move(e));
  }
  j["trace"] = std::move(trace);
  j["warnings"] = r.warnings;
  return j;
}

json metrics_json(const WeightedGraph& g, const NodeSet& s) {
  double c = cut(g, s);
  double vol = s.volume();
  double vol_bar = g.total_volume() - vol;
  double nan = std::numeric_limits<double>::quiet_NaN();
  bool proper = !s.empty() && s.size() < g.node_count();
  AuxMetrics aux{nan, nan, nan, nan, nan};
  if (proper) aux = aux_metrics(g, s);
  json j;
  j["cut"] = c;
  j["vol"] = vol;
  j["vol_bar"] = vol_bar;
  j["size"] = s.size();
  j["conductance"] = null_if_nan(safe_conductance(g, s));
  j["ncut"] = null_if_nan(aux.ncut);
  j["expansion"] = null_if_nan(aux.expansion);
  j["sparsity"] = null_if_nan(aux.sparsity);
  j["ratio_cut"] = null_if_nan(aux.ratio_cut);
  return j;
}

// Writes to the named file, or to the default stream when the name is empty.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw InputError("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void report_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

struct SeedLine {
  std::size_t line = 0;
  NodeSet set;
};

std::vector<SeedLine> read_seed_lines(const std::string& path, const WeightedGraph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open seed sets file '" + path + "'");
  std::vector<SeedLine> out;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back({number, parse_node_ids(line, g)});
    } catch (const InputError& e) {
      throw InputError(path + ": line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

Image load_image(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    if (path.size() < suffix.size()) return false;
    std::string tail = path.substr(path.size() - suffix.size());
    for (char& c : tail) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return tail == suffix;
  };
  if (ends_with(".png")) return read_png_file(path);
  return read_pnm_file(path);
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flow-based local graph clustering: seed refinement, metrics, diffusion and embeddings"};
  app.require_subcommand(1);

  // improve
  GraphArgs improve_graph;
  SetArgs improve_seed;
  ImproveArgs improve_args;
  std::string improve_out;
  auto* improve_cmd = app.add_subcommand("improve", "Refine a seed set with MQI, FlowImprove or LocalFlowImprove");
  improve_graph.attach(improve_cmd);
  improve_seed.attach(improve_cmd, "Seed set");
  improve_args.attach(improve_cmd);
  improve_cmd->add_option("-o,--output", improve_out, "Write the result JSON here instead of stdout");

  // metrics
  GraphArgs metrics_graph;
  SetArgs metrics_set;
  auto* metrics_cmd = app.add_subcommand("metrics", "Cut, volume, conductance and related scores of a node set");
  metrics_graph.attach(metrics_cmd);
  metrics_set.attach(metrics_cmd, "Node set");

  // ppr and sweep
  GraphArgs ppr_graph, sweep_graph;
  SetArgs ppr_seed, sweep_seed;
  double alpha = 0.15, rho = 1e-6;
  std::string ppr_out;
  auto* ppr_cmd = app.add_subcommand("ppr", "Approximate seeded PageRank by push; prints 'node score' lines");
  ppr_graph.attach(ppr_cmd);
  ppr_seed.attach(ppr_cmd, "Seed set");
  ppr_cmd->add_option("--alpha", alpha, "Teleport probability in (0, 1]")->capture_default_str();
  ppr_cmd->add_option("--rho", rho, "Push threshold per unit degree")->capture_default_str();
  ppr_cmd->add_option("-o,--output", ppr_out, "Write scores here instead of stdout");
  auto* sweep_cmd = app.add_subcommand("sweep", "Seeded PageRank followed by a conductance sweep");
  sweep_graph.attach(sweep_cmd);
  sweep_seed.attach(sweep_cmd, "Seed set");
  sweep_cmd->add_option("--alpha", alpha, "Teleport probability in (0, 1]")->capture_default_str();
  sweep_cmd->add_option("--rho", rho, "Push threshold per unit degree")->capture_default_str();

  // embed
  GraphArgs embed_graph;
  SetArgs embed_ref;
  EmbeddingParams embed_params;
  std::string embed_improver = "mqi", embed_delta = "1", embed_out, embed_values;
  std::uint64_t rng_seed = 0;
  bool spectral = false;
  auto* embed_cmd = app.add_subcommand("embed", "Coordinates from improved random subsets of a reference set (CSV)");
  embed_graph.attach(embed_cmd);
  embed_ref.attach(embed_cmd, "Reference set");
  embed_cmd->add_option("--samples", embed_params.samples, "Number of sampled sets N")->capture_default_str();
  embed_cmd->add_option("--subset-size", embed_params.subset_size, "Members drawn per sample k")
      ->capture_default_str();
  embed_cmd->add_option("--hops", embed_params.hops, "Grow each sample by d hops")->capture_default_str();
  embed_cmd->add_option("--dims", embed_params.dimensions, "Coordinates to keep c")->capture_default_str();
  embed_cmd->add_option("--improver", embed_improver, "mqi, fi or lfi")
      ->check(CLI::IsMember({"mqi", "fi", "lfi"}))
      ->capture_default_str();
  embed_cmd->add_option("--delta", embed_delta, "Locality parameter for the lfi improver")->capture_default_str();
  embed_cmd->add_option("--threads", embed_params.threads, "Worker threads")->capture_default_str();
  embed_cmd->add_option("--seed", rng_seed, "Random seed")->capture_default_str();
  embed_cmd->add_flag("--rank", embed_params.rank_transform, "Replace coordinates by per-column ranks");
  embed_cmd->add_flag("--spectral", spectral, "Use log10 seeded PageRank columns instead of improved sets");
  embed_cmd->add_option("--alpha", alpha, "PageRank teleport for --spectral")->capture_default_str();
  embed_cmd->add_option("--rho", rho, "PageRank threshold for --spectral")->capture_default_str();
  embed_cmd->add_option("-o,--output", embed_out, "Write the CSV here instead of stdout");
  embed_cmd->add_option("--values", embed_values, "Also write the singular values, one per line");

  // img2graph
  std::string image_path, image_edges, image_map;
  ImageGraphParams image_params;
  auto* img_cmd = app.add_subcommand("img2graph", "Pixel similarity graph from a PNG, PGM or PPM image");
  img_cmd->add_option("-i,--image", image_path, "Input image")->required();
  img_cmd->add_option("-r,--radius", image_params.r, "Join pixels with squared distance <= r")->required();
  img_cmd->add_option("--sigma-d2", image_params.sigma_d2, "Spatial kernel width (squared)")->required();
  img_cmd->add_option("--sigma-i2", image_params.sigma_i2, "Intensity kernel width (squared)")->required();
  img_cmd->add_option("-o,--output", image_edges, "Edge list output")->required();
  img_cmd->add_option("--map", image_map, "Pixel map output, lines 'nodeid row col'")->required();

  // batch
  GraphArgs batch_graph;
  ImproveArgs batch_args;
  std::string batch_sets, batch_out;
  std::size_t batch_threads = 1;
  auto* batch_cmd = app.add_subcommand("batch", "Improve many seed sets; one JSON result per line, in input order");
  batch_graph.attach(batch_cmd);
  batch_cmd->add_option("--sets", batch_sets, "Seed sets, one whitespace separated set per line")->required();
  batch_args.attach(batch_cmd);
  batch_cmd->add_option("--threads", batch_threads, "Worker threads")->capture_default_str();
  batch_cmd->add_option("-o,--output", batch_out, "Write JSON lines here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  if (improve_cmd->parsed()) {
    improve_args.validate();
    WeightedGraph g = improve_graph.load();
    NodeSet seed = improve_seed.load(g);
    ImproveResult r =
        improve(g, seed, improve_args.parsed_algorithm(), improve_args.parsed_delta(), improve_args.options());
    report_warnings(err, r.warnings);
    Output o(improve_out, out);
    *o << result_json(g, r).dump(2) << '\n';
    return 0;
  }
  if (metrics_cmd->parsed()) {
    WeightedGraph g = metrics_graph.load();
    NodeSet s = metrics_set.load(g);
    out << metrics_json(g, s).dump(2) << '\n';
    return 0;
  }
  if (ppr_cmd->parsed()) {
    WeightedGraph g = ppr_graph.load();
    SparseScoreVector v = seeded_pagerank(g, ppr_seed.load(g), alpha, rho);
    Output o(ppr_out, out);
    *o << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& [node, score] : v.scores) *o << g.label(node) << ' ' << score << '\n';
    return 0;
  }
  if (sweep_cmd->parsed()) {
    WeightedGraph g = sweep_graph.load();
    SparseScoreVector v = seeded_pagerank(g, sweep_seed.load(g), alpha, rho);
    SweepResult s = sweep_cut(g, v);
    if (s.set.empty()) throw PreconditionError("sweep found no prefix with defined conductance");
    json j;
    j["set"] = labels_of(g, s.set);
    j["size"] = s.set.size();
    j["cut"] = s.profile.cut;
    j["vol"] = s.profile.volume;
    j["conductance"] = s.profile.conductance;
    j["pushes"] = v.pushes;
    out << j.dump(2) << '\n';
    return 0;
  }
  if (embed_cmd->parsed()) {
    WeightedGraph g = embed_graph.load();
    NodeSet r = embed_ref.load(g);
    if (embed_improver == "fi") embed_params.improver = Algorithm::flow_improve;
    if (embed_improver == "lfi") embed_params.improver = Algorithm::local_flow_improve;
    try {
      embed_params.delta = Rational::parse(embed_delta);
    } catch (const std::exception&) {
      throw InputError("invalid --delta '" + embed_delta + "'");
    }
    Embedding e = spectral ? spectral_coordinates(g, r, embed_params, alpha, rho, rng_seed)
                           : flow_coordinates(g, r, embed_params, rng_seed);
    report_warnings(err, e.warnings);
    Output o(embed_out, out);
    *o << "node";
    for (Eigen::Index c = 0; c < e.coordinates.cols(); ++c) *o << ",x" << c + 1;
    *o << '\n' << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      *o << g.label(v);
      for (Eigen::Index c = 0; c < e.coordinates.cols(); ++c) *o << ',' << e.coordinates(v, c);
      *o << '\n';
    }
    if (!embed_values.empty()) {
      Output vo(embed_values, out);
      *vo << std::setprecision(std::numeric_limits<double>::max_digits10);
      for (Eigen::Index c = 0; c < e.singular_values.size(); ++c) *vo << e.singular_values(c) << '\n';
    }
    return 0;
  }
  if (img_cmd->parsed()) {
    ImageGraph ig = image_to_graph(load_image(image_path), image_params);
    report_warnings(err, ig.warnings);
    {
      Output eo(image_edges, out);
      write_edge_list(*eo, ig.graph);
    }
    Output mo(image_map, out);
    write_pixel_map(*mo, ig.map);
    json j;
    j["nodes"] = ig.graph.node_count();
    j["edges"] = ig.graph.edge_count();
    out << j.dump() << '\n';
    return 0;
  }
  if (batch_cmd->parsed()) {
    batch_args.validate();
    WeightedGraph g = batch_graph.load();
    std::vector<SeedLine> seeds = read_seed_lines(batch_sets, g);
    Algorithm algorithm = batch_args.parsed_algorithm();
    Rational delta = batch_args.parsed_delta();
    ImproveOptions options = batch_args.options();
    std::vector<json> results(seeds.size());
    parallel_for(seeds.size(), batch_threads, [&](std::size_t i) {
      json j;
      j["index"] = i;
      j["line"] = seeds[i].line;
      try {
        json r = result_json(g, improve(g, seeds[i].set, algorithm, delta, options));
        j.update(r);
      } catch (const PreconditionError& e) {
        j["error"] = e.what();
        j["exit_code"] = 2;
      } catch (const std::exception& e) {
        j["error"] = e.what();
        j["exit_code"] = 1;
      }
      results[i] = std::move(j);
    });
    Output o(batch_out, out);
    for (const json& j : results) *o << j.dump() << '\n';
    return 0;
  }
  return 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(argc, argv, out, err);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace flowclust::cli
