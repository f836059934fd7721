// Command-line surface for the adaptive-neighborhood toolkit.
//
// Subcommands:
//   gen       synthesize a labeled point cloud (CSV + JSON sidecar)
//   run       infer the pruned neighborhood graph and kernel scales
//   geodesic  single-source geodesic field (shortest-path or heat method)
//   dim       per-node intrinsic dimension (NCD, optional k-NN MLE)
//   embed     isomap or diffusion-map coordinates
//
// Every command writes a manifest.json with the argv, effective config,
// output list, and timings; re-running the stored argv reproduces the
// outputs byte for byte. Exit codes: 0 success (run: converged),
// 2 run finished at the iteration cap, 64 usage error, 65 data error.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ian/dimension.hpp"
#include "ian/distance_matrix.hpp"
#include "ian/embedding.hpp"
#include "ian/gabriel.hpp"
#include "ian/geodesics.hpp"
#include "ian/ian_driver.hpp"
#include "ian/io.hpp"
#include "ian/kernel_stats.hpp"
#include "ian/point_cloud.hpp"

namespace {

using nlohmann::json;
using namespace ian;

constexpr const char* kVersion = "0.1.0";
constexpr int kExitNonConverged = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

// Thrown for problems with input data or prerequisite files (exit 65).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects outputs and timings for the manifest as a command executes.
struct Manifest {
  std::string command;
  std::string out_dir;
  json config = json::object();
  json timings = json::object();
  std::vector<std::string> outputs;
  std::vector<std::string> argv;
  std::string input;

  std::string path(const std::string& name) const {
    return (std::filesystem::path(out_dir) / name).string();
  }
  // Registers `name` as an output and returns its full path.
  std::string out(const std::string& name) {
    outputs.push_back(name);
    return path(name);
  }
  void write() const {
    json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["argv"] = argv;
    if (!input.empty()) m["input"] = input;
    m["config"] = config;
    m["outputs"] = outputs;
    m["timings"] = timings;
    std::ofstream f(path("manifest.json"), std::ios::binary);
    if (!f) throw DataError("cannot write " + path("manifest.json"));
    f << m.dump(2) << "\n";
  }
};

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
}

// Square symmetric CSV -> distance matrix, with module context on failure.
DistanceMatrix load_distances(const std::string& path) {
  try {
    return DistanceMatrix(read_matrix_csv(path));
  } catch (const std::invalid_argument& e) {
    throw DataError(path + ": not a valid distance matrix: " + e.what());
  }
}

struct LoadedInput {
  PointCloud pc;          // empty points when only distances were given
  DistanceMatrix dm;
  bool has_points = false;
};

LoadedInput load_input(const std::string& points_path, const std::string& dist_path) {
  LoadedInput in;
  if (!dist_path.empty()) {
    in.dm = load_distances(dist_path);
    return in;
  }
  in.pc = read_point_cloud(points_path);
  if (in.pc.size() < 2) throw DataError(points_path + ": need at least 2 points");
  in.dm = pairwise_distances(in.pc.points);
  in.has_points = true;
  return in;
}

Index parse_source(const std::string& text, const DistanceMatrix& dm) {
  if (text == "medoid") {
    Index best = 0;
    Scalar best_sum = std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < dm.size(); ++i) {
      Scalar s = dm.matrix().row(i).sum();
      if (s < best_sum) {
        best_sum = s;
        best = i;
      }
    }
    return best;
  }
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used != text.size() || v < 0 || v >= dm.size())
      throw std::invalid_argument("out of range");
    return static_cast<Index>(v);
  } catch (const std::exception&) {
    throw DataError("invalid --source '" + text + "' (node index or 'medoid')");
  }
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string kind;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool svg = false;
  // every generator parameter is an optional flag; only user-set ones are
  // forwarded so generate() can apply its kind-specific defaults
  std::map<std::string, double> params;
};

int cmd_gen(const GenArgs& a, Manifest& man) {
  DatasetSpec spec;
  try {
    spec.kind = dataset_kind_from_string(a.kind);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "gen: %s\n", e.what());
    return kExitUsage;
  }
  for (const auto& kv : a.params) spec.params[kv.first] = kv.second;

  PointCloud pc;
  try {
    pc = generate(spec, a.seed);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "gen: %s\n", e.what());
    return kExitUsage;
  }

  man.config["kind"] = a.kind;
  man.config["seed"] = a.seed;
  for (const auto& kv : pc.params) man.config[kv.first] = kv.second;

  auto t0 = Clock::now();
  write_point_cloud(man.out("points.csv"), pc);
  man.outputs.push_back("points.csv.json");
  if (a.svg && pc.dim() >= 2) {
    Vector color = pc.position.size() == pc.size() ? pc.position : Vector();
    write_svg_scatter(man.out("points.svg"), pc.points.leftCols(2), {}, color);
  }
  man.timings["write_s"] = seconds_since(t0);
  man.write();
  std::printf("gen: %ld points (%s, seed %llu) -> %s\n", static_cast<long>(pc.size()),
              a.kind.c_str(), static_cast<unsigned long long>(a.seed),
              man.path("points.csv").c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// run

struct RunArgs {
  std::string input;
  std::string distances;
  std::string out_dir = ".";
  double c_fixed = -1;  // <0: auto-tune
  long max_iterations = -1;
  double retune_gap = 0.1;
  double outlier_multiplier = 4.5;
  std::string policy = "one";
  std::string stat = "delta-prime";
  std::string scale_method = "auto";
  long greedy_threshold = 20000;
  double kernel_cutoff = 1e-16;
  bool keep_connected = false;
  bool no_weights = false;
  bool svg = false;
};

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::no_outliers: return "no_outliers";
    case StopReason::no_prunable_edges: return "no_prunable_edges";
    default: return "max_iterations";
  }
}

int cmd_run(const RunArgs& a, Manifest& man) {
  IANConfig cfg;
  if (a.c_fixed >= 0) {
    if (a.c_fixed == 0) {
      std::fprintf(stderr, "run: --c-fixed must be positive\n");
      return kExitUsage;
    }
    cfg.auto_tune = false;
    cfg.c = a.c_fixed;
  }
  cfg.max_iterations = a.max_iterations;
  cfg.retune_gap = a.retune_gap;
  cfg.outlier_multiplier = a.outlier_multiplier;
  cfg.keep_connected = a.keep_connected;
  cfg.greedy_edge_threshold = a.greedy_threshold;
  cfg.kernel_cutoff = a.kernel_cutoff;
  cfg.build_weighted_output = !a.no_weights;
  if (a.policy == "one") cfg.policy = PrunePolicy::one_edge_per_outlier;
  else if (a.policy == "global") cfg.policy = PrunePolicy::single_global_edge;
  else { std::fprintf(stderr, "run: --policy must be one|global\n"); return kExitUsage; }
  if (a.stat == "delta-prime") cfg.stat = ConvergenceStat::delta_prime;
  else if (a.stat == "delta-prime-ms") cfg.stat = ConvergenceStat::delta_prime_ms;
  else { std::fprintf(stderr, "run: --stat must be delta-prime|delta-prime-ms\n"); return kExitUsage; }
  if (a.scale_method == "auto") cfg.scale_method = ScaleMethod::automatic;
  else if (a.scale_method == "lp") cfg.scale_method = ScaleMethod::lp;
  else if (a.scale_method == "greedy") cfg.scale_method = ScaleMethod::greedy;
  else { std::fprintf(stderr, "run: --scale-method must be auto|lp|greedy\n"); return kExitUsage; }

  man.config["auto_tune"] = cfg.auto_tune;
  if (!cfg.auto_tune) man.config["c"] = cfg.c;
  man.config["retune_gap"] = cfg.retune_gap;
  man.config["outlier_multiplier"] = cfg.outlier_multiplier;
  man.config["policy"] = a.policy;
  man.config["stat"] = a.stat;
  man.config["scale_method"] = a.scale_method;
  man.config["greedy_edge_threshold"] = cfg.greedy_edge_threshold;
  man.config["kernel_cutoff"] = cfg.kernel_cutoff;
  man.config["keep_connected"] = cfg.keep_connected;
  man.config["max_iterations"] = cfg.max_iterations;

  auto t0 = Clock::now();
  LoadedInput in = load_input(a.input, a.distances);
  man.timings["load_s"] = seconds_since(t0);

  auto t1 = Clock::now();
  IANResult res = run_ian(in.dm, cfg);
  man.timings["run_s"] = seconds_since(t1);

  auto t2 = Clock::now();
  write_edge_tsv(man.out("graph.tsv"), res.g_star, in.dm);
  if (cfg.build_weighted_output) write_weights_tsv(man.out("weights.tsv"), res.gw_star);
  const Index n = in.dm.size();
  write_table_csv(man.out("sigma.csv"), {"sigma"}, {res.sigma});
  write_table_csv(man.out("stats.csv"), {"delta", "delta_prime", "delta_prime_ms", "d_tilde"},
                  {res.stats.delta, res.stats.delta_prime, res.stats.delta_prime_ms,
                   res.stats.d_tilde});
  if (a.svg) {
    if (in.has_points && in.pc.dim() == 2) {
      Vector color = res.stats.delta_prime;
      for (Index i = 0; i < n; ++i)
        if (!res.stats.valid[i]) color[i] = 0;
      write_svg_scatter(man.out("graph.svg"), in.pc.points, res.g_star.edges(), color);
    } else {
      std::fprintf(stderr, "run: --svg skipped (needs 2-D point input)\n");
    }
  }

  Index components = 0;
  res.g_star.component_labels(&components);
  std::vector<Scalar> vals = res.stats.valid_values(cfg.stat == ConvergenceStat::delta_prime_ms);
  json summary;
  summary["n"] = n;
  summary["edges_initial"] = res.history.empty() ? res.g_star.edge_count() : res.history.front().edges;
  summary["edges_final"] = res.g_star.edge_count();
  summary["iterations"] = res.iterations;
  summary["converged"] = res.converged;
  summary["stop_reason"] = stop_reason_name(res.stop_reason);
  summary["c_star"] = res.c_star;
  summary["pruned"] = res.pruned_edges.size();
  summary["median_delta_prime"] = vals.empty() ? 0.0 : quantile(vals, 0.5);
  summary["threshold"] = res.threshold.threshold;
  summary["components"] = components;
  json hist = json::array();
  for (const IterationRecord& rec : res.history) {
    json h;
    h["iteration"] = rec.iteration;
    h["edges"] = rec.edges;
    h["c"] = rec.c;
    h["tuned"] = rec.tuned;
    h["median_stat"] = rec.median_stat;
    h["threshold"] = rec.threshold;
    h["outliers"] = rec.outliers;
    h["pruned"] = rec.pruned.size();
    hist.push_back(h);
  }
  summary["history"] = hist;
  {
    std::ofstream f(man.out("summary.json"), std::ios::binary);
    if (!f) throw DataError("cannot write summary.json");
    f << summary.dump(2) << "\n";
  }
  man.timings["write_s"] = seconds_since(t2);
  man.timings["total_s"] = seconds_since(t0);
  man.write();

  std::printf("run: n=%ld edges %ld -> %ld, %ld iteration(s), c*=%g, %s, %ld component(s)\n",
              static_cast<long>(n), static_cast<long>(summary["edges_initial"].get<long>()),
              static_cast<long>(res.g_star.edge_count()), res.iterations, res.c_star,
              res.converged ? "converged" : "iteration cap", static_cast<long>(components));
  return res.converged ? 0 : kExitNonConverged;
}

// ---------------------------------------------------------------------------
// geodesic

struct GeodesicArgs {
  std::string input;
  std::string distances;
  std::string graph;
  std::string weights;
  std::string sigma;
  std::string method = "graph";
  std::string source = "medoid";
  std::string out_dir = ".";
  double t = -1;  // heat only; <0: (median sigma)^2 from --sigma
};

int cmd_geodesic(const GeodesicArgs& a, Manifest& man) {
  auto t0 = Clock::now();
  LoadedInput in = load_input(a.input, a.distances);
  const Index n = in.dm.size();
  Index source = parse_source(a.source, in.dm);
  man.config["method"] = a.method;
  man.config["source"] = source;

  Vector dist;
  if (a.method == "graph") {
    if (a.graph.empty()) {
      std::fprintf(stderr, "geodesic: --method graph needs --graph\n");
      return kExitUsage;
    }
    NeighborGraph g = read_edge_tsv(a.graph, n).graph();
    dist = graph_geodesics(g, in.dm, source);
  } else if (a.method == "heat") {
    if (a.weights.empty()) {
      std::fprintf(stderr, "geodesic: --method heat needs --weights\n");
      return kExitUsage;
    }
    WeightedGraph gw = read_weights_tsv(a.weights, n);
    double t = a.t;
    if (t <= 0) {
      if (a.sigma.empty()) {
        std::fprintf(stderr, "geodesic: --method heat needs --t or --sigma\n");
        return kExitUsage;
      }
      std::vector<std::string> names;
      std::vector<Vector> cols = read_table_csv(a.sigma, &names);
      if (cols.empty() || cols[0].size() != n)
        throw DataError(a.sigma + ": sigma column does not match input size");
      std::vector<Scalar> s(cols[0].data(), cols[0].data() + cols[0].size());
      Scalar med = quantile(s, 0.5);
      t = med * med;
    }
    man.config["t"] = t;
    dist = heat_geodesics(gw, source, t);
  } else {
    std::fprintf(stderr, "geodesic: --method must be graph|heat\n");
    return kExitUsage;
  }

  write_table_csv(man.out("geodesic.csv"), {"distance"}, {dist});
  man.timings["total_s"] = seconds_since(t0);
  man.write();
  std::printf("geodesic: source %ld (%s) -> %s\n", static_cast<long>(source), a.method.c_str(),
              man.path("geodesic.csv").c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// dim

struct DimArgs {
  std::string input;
  std::string distances;
  std::string graph;
  std::string out_dir = ".";
  bool mle = false;
  int k = 32;
};

int cmd_dim(const DimArgs& a, Manifest& man) {
  auto t0 = Clock::now();
  LoadedInput in = load_input(a.input, a.distances);
  const Index n = in.dm.size();
  if (a.graph.empty()) {
    std::fprintf(stderr, "dim: needs --graph (run output graph.tsv)\n");
    return kExitUsage;
  }
  NeighborGraph g = read_edge_tsv(a.graph, n).graph();
  man.config["mle"] = a.mle;
  if (a.mle) man.config["k"] = a.k;

  DimensionEstimate est = ncd_dimension(in.dm, g);
  std::vector<std::string> names = {"d_hat", "d_hat_prime", "d_tilde_prime", "d_star"};
  std::vector<Vector> cols = {est.d_hat, est.d_hat_prime, est.d_tilde_prime, est.d_star};
  if (a.mle) {
    if (a.k < 2 || a.k > n - 1) {
      std::fprintf(stderr, "dim: --k must be in [2, n-1]\n");
      return kExitUsage;
    }
    names.push_back("mle");
    cols.push_back(mle_dimension_knn(in.dm, a.k));
  }
  write_table_csv(man.out("dimension.csv"), names, cols);

  double sum = 0;
  long cnt = 0;
  for (Index i = 0; i < n; ++i)
    if (est.valid[i]) {
      sum += est.d_star[i];
      ++cnt;
    }
  man.timings["total_s"] = seconds_since(t0);
  man.config["d_star_mean"] = cnt ? sum / static_cast<double>(cnt) : 0.0;
  man.write();
  std::printf("dim: d* mean %.3f over %ld node(s) -> %s\n", cnt ? sum / cnt : 0.0, cnt,
              man.path("dimension.csv").c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// embed

struct EmbedArgs {
  std::string input;
  std::string distances;
  std::string graph;
  std::string weights;
  std::string method = "isomap";
  std::string out_dir = ".";
  int m = 2;
  double t = 1;
  bool svg = false;
};

int cmd_embed(const EmbedArgs& a, Manifest& man) {
  auto t0 = Clock::now();
  man.config["method"] = a.method;
  man.config["m"] = a.m;
  if (a.m < 1) {
    std::fprintf(stderr, "embed: --m must be at least 1\n");
    return kExitUsage;
  }

  EmbeddingResult emb;
  Index n = 0;
  if (a.method == "isomap") {
    if (a.graph.empty()) {
      std::fprintf(stderr, "embed: --method isomap needs --graph\n");
      return kExitUsage;
    }
    LoadedInput in = load_input(a.input, a.distances);
    n = in.dm.size();
    NeighborGraph g = read_edge_tsv(a.graph, n).graph();
    try {
      emb = isomap(g, in.dm, a.m);
    } catch (const std::invalid_argument& e) {
      throw DataError(std::string("isomap: ") + e.what());
    }
  } else if (a.method == "diffusion") {
    if (a.weights.empty()) {
      std::fprintf(stderr, "embed: --method diffusion needs --weights\n");
      return kExitUsage;
    }
    WeightedGraph gw = read_weights_tsv(a.weights);
    n = gw.size();
    man.config["t"] = a.t;
    emb = diffusion_map(gw, a.m, a.t);
  } else {
    std::fprintf(stderr, "embed: --method must be isomap|diffusion\n");
    return kExitUsage;
  }

  std::vector<std::string> names;
  std::vector<Vector> cols;
  for (int k = 0; k < a.m; ++k) {
    names.push_back("coord_" + std::to_string(k + 1));
    cols.push_back(emb.coords.col(k));
  }
  write_table_csv(man.out("embedding.csv"), names, cols);
  if (a.svg && a.m >= 2)
    write_svg_scatter(man.out("embedding.svg"), emb.coords.leftCols(2), {}, Vector());

  json summary;
  summary["n"] = n;
  summary["method"] = a.method;
  json eig = json::array();
  for (Index k = 0; k < emb.eigenvalues.size(); ++k) eig.push_back(emb.eigenvalues[k]);
  summary["eigenvalues"] = eig;
  summary["disconnected"] = emb.disconnected;
  {
    std::ofstream f(man.out("summary.json"), std::ios::binary);
    if (!f) throw DataError("cannot write summary.json");
    f << summary.dump(2) << "\n";
  }
  man.timings["total_s"] = seconds_since(t0);
  man.write();
  std::printf("embed: %s m=%d -> %s\n", a.method.c_str(), a.m, man.path("embedding.csv").c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive neighborhood graphs and kernel scales from pairwise distances"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; flags override");
  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (0 = library default)")
      ->check(CLI::NonNegativeNumber);

  GenArgs gen;
  CLI::App* sgen = app.add_subcommand("gen", "generate a synthetic dataset");
  sgen->add_option("--kind", gen.kind,
                   "grid|jittered_grid|ball|stingray|spiral|bent_plane|cylinder5d|"
                   "gauss_clusters|swiss_cheese|horseshoe")
      ->required();
  sgen->add_option("--seed", gen.seed, "RNG seed");
  sgen->add_option("--out", gen.out_dir, "output directory");
  sgen->add_flag("--svg", gen.svg, "also write points.svg (2-D kinds)");
  // generator parameters; unset flags fall back to kind-specific defaults
  static const char* kParamNames[] = {
      "dim", "n", "side", "spacing", "lattice", "jitter", "radius", "tail_length",
      "delete_frac", "arc_radius", "a", "theta0", "turns", "length", "width", "k",
      "sep", "std", "holes", "hole_radius", "mid_radius", "half_width", "span_deg"};
  std::map<std::string, double> param_values;
  for (const char* name : kParamNames)
    sgen->add_option(std::string("--") + name, param_values[name]);

  RunArgs run;
  CLI::App* srun = app.add_subcommand("run", "infer neighborhood graph and scales");
  srun->add_option("--input", run.input, "point CSV (from gen or external)");
  srun->add_option("--distances", run.distances, "square distance-matrix CSV (alternative input)");
  srun->add_option("--out", run.out_dir, "output directory");
  srun->add_option("--c-fixed", run.c_fixed, "skip tuning and use this bandwidth factor");
  srun->add_option("--max-iterations", run.max_iterations, "iteration cap (-1: initial edge count)");
  srun->add_option("--retune-gap", run.retune_gap, "re-tune when |median - 1| exceeds this");
  srun->add_option("--outlier-multiplier", run.outlier_multiplier, "threshold std multiplier");
  srun->add_option("--policy", run.policy, "one|global (edges pruned per iteration)");
  srun->add_option("--stat", run.stat, "delta-prime|delta-prime-ms convergence statistic");
  srun->add_option("--scale-method", run.scale_method, "auto|lp|greedy");
  srun->add_option("--greedy-threshold", run.greedy_threshold, "edge count where auto switches to greedy");
  srun->add_option("--kernel-cutoff", run.kernel_cutoff, "drop kernel weights below this");
  srun->add_flag("--keep-connected", run.keep_connected, "never prune bridge edges");
  srun->add_flag("--no-weights", run.no_weights, "skip weights.tsv (large runs)");
  srun->add_flag("--svg", run.svg, "also write graph.svg (2-D input)");

  GeodesicArgs geo;
  CLI::App* sgeo = app.add_subcommand("geodesic", "single-source geodesic field");
  sgeo->add_option("--input", geo.input, "point CSV");
  sgeo->add_option("--distances", geo.distances, "square distance-matrix CSV");
  sgeo->add_option("--graph", geo.graph, "edge TSV from run (graph method)");
  sgeo->add_option("--weights", geo.weights, "weight TSV from run (heat method)");
  sgeo->add_option("--sigma", geo.sigma, "sigma CSV from run (heat default t)");
  sgeo->add_option("--method", geo.method, "graph|heat");
  sgeo->add_option("--source", geo.source, "node index or 'medoid'");
  sgeo->add_option("--t", geo.t, "heat diffusion time (default: median sigma squared)");
  sgeo->add_option("--out", geo.out_dir, "output directory");

  DimArgs dim;
  CLI::App* sdim = app.add_subcommand("dim", "per-node intrinsic dimension");
  sdim->add_option("--input", dim.input, "point CSV");
  sdim->add_option("--distances", dim.distances, "square distance-matrix CSV");
  sdim->add_option("--graph", dim.graph, "edge TSV from run")->required();
  sdim->add_flag("--mle", dim.mle, "add a k-NN MLE column");
  sdim->add_option("--k", dim.k, "MLE neighbor count");
  sdim->add_option("--out", dim.out_dir, "output directory");

  EmbedArgs emb;
  CLI::App* semb = app.add_subcommand("embed", "isomap / diffusion-map coordinates");
  semb->add_option("--input", emb.input, "point CSV (isomap)");
  semb->add_option("--distances", emb.distances, "square distance-matrix CSV (isomap)");
  semb->add_option("--graph", emb.graph, "edge TSV from run (isomap)");
  semb->add_option("--weights", emb.weights, "weight TSV from run (diffusion)");
  semb->add_option("--method", emb.method, "isomap|diffusion");
  semb->add_option("--m", emb.m, "number of coordinates");
  semb->add_option("--t", emb.t, "diffusion time parameter");
  semb->add_flag("--svg", emb.svg, "also write embedding.svg");
  semb->add_option("--out", emb.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (threads > 0) Eigen::setNbThreads(threads);

  // point CSV and distance CSV are mutually exclusive; exactly one is needed
  auto check_inputs = [](const std::string& cmd, const std::string& pts,
                         const std::string& dist) -> bool {
    if (pts.empty() == dist.empty()) {
      std::fprintf(stderr, "%s: give exactly one of --input / --distances\n", cmd.c_str());
      return false;
    }
    return true;
  };

  Manifest man;
  for (int i = 0; i < argc; ++i) man.argv.push_back(argv[i]);
  try {
    if (sgen->parsed()) {
      for (const CLI::Option* opt : sgen->get_options())
        if (opt->count() > 0) {
          std::string name = opt->get_name();
          if (name.rfind("--", 0) == 0) name = name.substr(2);
          if (param_values.count(name)) gen.params[name] = param_values[name];
        }
      man.command = "gen";
      man.out_dir = gen.out_dir;
      ensure_out_dir(man.out_dir);
      return cmd_gen(gen, man);
    }
    if (srun->parsed()) {
      if (!check_inputs("run", run.input, run.distances)) return kExitUsage;
      man.command = "run";
      man.out_dir = run.out_dir;
      man.input = run.input.empty() ? run.distances : run.input;
      ensure_out_dir(man.out_dir);
      return cmd_run(run, man);
    }
    if (sgeo->parsed()) {
      if (!check_inputs("geodesic", geo.input, geo.distances)) return kExitUsage;
      man.command = "geodesic";
      man.out_dir = geo.out_dir;
      man.input = geo.input.empty() ? geo.distances : geo.input;
      ensure_out_dir(man.out_dir);
      return cmd_geodesic(geo, man);
    }
    if (sdim->parsed()) {
      if (!check_inputs("dim", dim.input, dim.distances)) return kExitUsage;
      man.command = "dim";
      man.out_dir = dim.out_dir;
      man.input = dim.input.empty() ? dim.distances : dim.input;
      ensure_out_dir(man.out_dir);
      return cmd_dim(dim, man);
    }
    if (semb->parsed()) {
      if (emb.method == "isomap" && !check_inputs("embed", emb.input, emb.distances))
        return kExitUsage;
      man.command = "embed";
      man.out_dir = emb.out_dir;
      man.input = !emb.input.empty() ? emb.input
                  : !emb.distances.empty() ? emb.distances
                                           : emb.weights;
      ensure_out_dir(man.out_dir);
      return cmd_embed(emb, man);
    }
  } catch (const DataError& e) {
    std::fprintf(stderr, "%s: %s\n", man.command.c_str(), e.what());
    return kExitData;
  } catch (const IoError& e) {
    std::fprintf(stderr, "%s: %s\n", man.command.c_str(), e.what());
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s: %s\n", man.command.c_str(), e.what());
    return kExitData;
  }
  return kExitUsage;
}
