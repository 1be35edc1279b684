// Command-line front end for the edge domination clustering library.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eds/community.h"
#include "eds/datasets.h"
#include "eds/dynamics.h"
#include "eds/errors.h"
#include "eds/eval.h"
#include "eds/export.h"
#include "eds/graph.h"
#include "eds/modularity.h"
#include "eds/pipeline.h"
#include "eds/plot.h"

namespace {

using nlohmann::json;
using namespace eds;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

// "1-5,8,10" -> {1,2,3,4,5,8,10}
std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    try {
      auto dash = part.find('-', 1);
      if (dash == std::string::npos) {
        out.push_back(std::stoi(part));
        continue;
      }
      int lo = std::stoi(part.substr(0, dash));
      int hi = std::stoi(part.substr(dash + 1));
      if (hi < lo) throw ParameterError(flag + ": empty range '" + part + "'");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } catch (const std::logic_error&) {
      throw ParameterError(flag + ": cannot parse '" + part + "' as an integer or range");
    }
  }
  if (out.empty()) throw ParameterError(flag + ": empty list");
  return out;
}

Weighting parse_weighting(const std::string& name) {
  if (name == "gaussian") return Weighting::kGaussian;
  if (name == "unit") return Weighting::kUnit;
  if (name == "inverse") return Weighting::kInverse;
  throw ParameterError("--weighting must be gaussian, unit or inverse");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot write " + out_path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct Input {
  std::string name;
  WeightedGraph graph;
  std::optional<std::vector<int>> truth;
  std::optional<PointDataset> points;
};

bool is_csv(const std::string& path) {
  return std::filesystem::path(path).extension() == ".csv";
}

// `karate`, a point CSV (needs --knn) or an edge list.
Input load_input(const std::string& path, std::optional<int> knn, Weighting weighting,
                 const std::optional<std::string>& label_column) {
  Input in;
  in.name = path;
  if (path == "karate") {
    auto d = karate_club();
    in.graph = std::get<WeightedGraph>(d.payload);
    in.truth = d.ground_truth;
    return in;
  }
  if (is_csv(path)) {
    auto d = load_csv(path, label_column);
    for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
    if (!knn) throw ParameterError("point input " + path + " requires --knn");
    in.points = std::get<PointDataset>(d.payload);
    in.truth = d.ground_truth;
    in.graph = build_knn_graph(*in.points, *knn, weighting);
    return in;
  }
  std::ifstream file(path);
  if (!file) throw DataError("cannot open " + path);
  in.graph = read_edge_list(file);
  return in;
}

// Options shared by the commands that run the dynamics.
struct DynamicsFlags {
  int classes = 2;
  double lambda = 0.5;
  int steps = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string seed_vertices;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--classes", classes, "number of particle classes K")->check(CLI::Range(1, 1 << 20));
    cmd->add_option("--lambda", lambda, "competition parameter")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--steps", steps, "maximum steps T")->check(CLI::Range(1, 1 << 30));
    cmd->add_option("--tol", tol, "convergence tolerance on the L1 change of nu")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--seed-vertices", seed_vertices, "explicit start vertex per class, comma separated");
  }

  CompetitionConfig config() const {
    CompetitionConfig cfg;
    cfg.class_count = classes;
    cfg.lambda = lambda;
    cfg.max_steps = steps;
    cfg.convergence_tol = tol;
    cfg.seed = seed;
    if (!seed_vertices.empty()) {
      for (int v : parse_int_list(seed_vertices, "--seed-vertices")) {
        if (v < 0) throw ParameterError("--seed-vertices: negative vertex");
        cfg.seed_vertices.push_back(static_cast<VertexId>(v));
      }
    }
    return cfg;
  }
};

struct InputFlags {
  std::string path;
  std::optional<int> knn;
  std::string weighting = "gaussian";
  std::optional<std::string> label_column;

  void add_to(CLI::App* cmd) {
    cmd->add_option("input", path, "edge list, point CSV, or 'karate'")->required();
    cmd->add_option("--knn", knn, "k for the k-NN graph (point input)")->check(CLI::Range(1, 1 << 20));
    cmd->add_option("--weighting", weighting, "gaussian | unit | inverse")
        ->check(CLI::IsMember({"gaussian", "unit", "inverse"}));
    cmd->add_option("--label-column", label_column, "ground-truth column name");
  }

  Input load() const { return load_input(path, knn, parse_weighting(weighting), label_column); }
};

json partition_json(const Partition& p) {
  return {{"labels", p.labels}, {"community_count", p.community_count}};
}

std::string partition_csv(const Partition& p) {
  std::ostringstream out;
  write_partition_csv(out, p);
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

void plot_graph(const std::string& path, const WeightedGraph& g, const SystemState& state,
                const Partition& p) {
  write_text_file(path, graph_svg(g, spring_layout(g), dominating_classes(g, state.flows), p.labels));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge domination particle competition: community detection and clustering"};
  app.require_subcommand(1, 1);

  std::string out_path;
  std::string format = "json";
  std::string plot_path;
  auto add_output = [&](CLI::App* cmd, bool has_format) {
    cmd->add_option("--out", out_path, "output path (default stdout)");
    if (has_format) {
      cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    }
    cmd->add_option("--plot", plot_path, "write an SVG figure to this path");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic two-class 2-D dataset as CSV");
  std::string shape;
  int gen_n = 600;
  std::uint64_t gen_seed = 0;
  gen->add_option("--shape", shape, "banana | highleyman | lithuanian | spirals")->required();
  gen->add_option("--n", gen_n, "number of points (even, >= 4)")->check(CLI::Range(4, 1 << 24));
  gen->add_option("--seed", gen_seed, "RNG seed");
  add_output(gen, false);

  // graph
  auto* graph = app.add_subcommand("graph", "build the k-NN graph of a point CSV as an edge list");
  InputFlags graph_in;
  graph_in.add_to(graph);
  add_output(graph, false);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the deterministic dynamics and dump the state");
  InputFlags sim_in;
  DynamicsFlags sim_dyn;
  sim_in.add_to(simulate);
  sim_dyn.add_to(simulate);
  add_output(simulate, false);
  std::string unfoldings_path;
  simulate->add_option("--unfoldings", unfoldings_path, "write per-class edge lists here");

  // communities
  auto* communities = app.add_subcommand("communities", "detect K communities by edge density");
  InputFlags com_in;
  DynamicsFlags com_dyn;
  int com_order = 1;
  com_in.add_to(communities);
  com_dyn.add_to(communities);
  communities->add_option("--order", com_order, "neighbourhood order o")->check(CLI::Range(1, 1 << 20));
  add_output(communities, true);

  // cluster
  auto* clus = app.add_subcommand("cluster", "full clustering: dynamics, density communities, merge to C");
  InputFlags clus_in;
  DynamicsFlags clus_dyn;
  int clus_order = 1;
  int clus_target = 2;
  int clus_seeds = 1;
  bool unweighted_q = false;
  clus_in.add_to(clus);
  clus_dyn.add_to(clus);
  clus->add_option("--order", clus_order, "neighbourhood order o")->check(CLI::Range(1, 1 << 20));
  clus->add_option("--target", clus_target, "number of clusters C")->check(CLI::Range(1, 1 << 20));
  clus->add_option("--seeds", clus_seeds, "try seeds seed..seed+n-1, keep the best modularity")
      ->check(CLI::Range(1, 1 << 20));
  clus->add_flag("--unweighted-q", unweighted_q, "evaluate modularity with unit weights");
  add_output(clus, true);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "grid search over k, K, o and seeds");
  InputFlags sweep_in;
  std::string knn_values = "1-30";
  std::string class_values = "2-30";
  std::string order_values = "1-4";
  int sweep_seeds = 1;
  std::uint64_t sweep_base = 0;
  int sweep_target = 2;
  double sweep_lambda = 0.5;
  int sweep_steps = 500;
  int jobs = 1;
  std::string labels_dir;
  sweep_cmd->add_option("input", sweep_in.path, "point CSV, edge list, or 'karate'")->required();
  sweep_cmd->add_option("--weighting", sweep_in.weighting, "gaussian | unit | inverse")
      ->check(CLI::IsMember({"gaussian", "unit", "inverse"}));
  sweep_cmd->add_option("--label-column", sweep_in.label_column, "ground-truth column name");
  sweep_cmd->add_option("--knn-values", knn_values, "k values, e.g. 1-30");
  sweep_cmd->add_option("--classes-values", class_values, "K values, e.g. 2-30");
  sweep_cmd->add_option("--orders", order_values, "neighbourhood orders, e.g. 1-4");
  sweep_cmd->add_option("--seeds", sweep_seeds, "number of seeds per cell")->check(CLI::Range(1, 1 << 20));
  sweep_cmd->add_option("--seed", sweep_base, "first seed");
  sweep_cmd->add_option("--target", sweep_target, "number of clusters C")->check(CLI::Range(1, 1 << 20));
  sweep_cmd->add_option("--lambda", sweep_lambda, "competition parameter")->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--steps", sweep_steps, "maximum steps T")->check(CLI::Range(1, 1 << 30));
  sweep_cmd->add_option("--jobs", jobs, "parallel workers")->check(CLI::Range(1, 1024));
  sweep_cmd->add_option("--labels-dir", labels_dir, "write each cell's partition CSV here");
  sweep_cmd->add_option("--out", out_path, "output path for JSON lines (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "ARI ranking, Friedman test and Bonferroni-Dunn CD");
  std::string table = "real";
  double alpha = 0.05;
  eval->add_option("--table", table, "real | artificial | path to {datasets, techniques, ari_table} JSON");
  eval->add_option("--alpha", alpha, "significance level (0.05 or 0.10)")->check(CLI::Range(0.0, 1.0));
  add_output(eval, false);

  // karate
  auto* karate = app.add_subcommand("karate", "community detection on Zachary's karate club");
  DynamicsFlags kar_dyn;
  int kar_seeds = 20;
  std::string kar_orders = "1,2";
  kar_dyn.add_to(karate);
  karate->add_option("--seeds", kar_seeds, "number of seeds to try")->check(CLI::Range(1, 1 << 20));
  karate->add_option("--orders", kar_orders, "neighbourhood orders to try");
  add_output(karate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      auto d = generate(parse_shape(shape), gen_n, gen_seed);
      std::ostringstream csv;
      write_csv(csv, std::get<PointDataset>(d.payload));
      emit(csv.str(), out_path);
      if (!plot_path.empty()) {
        write_text_file(plot_path, scatter_svg(std::get<PointDataset>(d.payload), *d.ground_truth));
      }
    } else if (graph->parsed()) {
      if (!graph_in.knn) throw ParameterError("graph requires --knn");
      auto in = graph_in.load();
      std::ostringstream edges;
      write_edge_list(edges, in.graph);
      emit(edges.str(), out_path);
    } else if (simulate->parsed()) {
      auto in = sim_in.load();
      auto result = run(in.graph, sim_dyn.config());
      auto j = state_to_json(in.graph, result.state);
      j["converged"] = result.converged;
      emit(dump(j), out_path);
      if (!unfoldings_path.empty()) {
        std::ostringstream text;
        write_unfoldings(text, unfold(in.graph, result.state));
        write_text_file(unfoldings_path, text.str());
      }
      if (!plot_path.empty()) {
        auto p = assign_communities(in.graph, unfold(in.graph, result.state), {1});
        plot_graph(plot_path, in.graph, result.state, p);
      }
    } else if (communities->parsed()) {
      auto in = com_in.load();
      auto result = run(in.graph, com_dyn.config());
      auto p = assign_communities(in.graph, unfold(in.graph, result.state), {com_order});
      if (format == "csv") {
        emit(partition_csv(p), out_path);
      } else {
        auto j = partition_json(p);
        j["modularity"] = modularity(in.graph, p);
        j["steps"] = result.state.step;
        j["converged"] = result.converged;
        if (in.truth) j["ari"] = adjusted_rand_index(*in.truth, p.labels);
        emit(dump(j), out_path);
      }
      if (!plot_path.empty()) plot_graph(plot_path, in.graph, result.state, p);
    } else if (clus->parsed()) {
      auto in = clus_in.load();
      PipelineConfig cfg;
      cfg.competition = clus_dyn.config();
      cfg.neighborhood.order = clus_order;
      cfg.target_clusters = clus_target;
      cfg.knn_k = clus_in.knn;
      cfg.weighting = parse_weighting(clus_in.weighting);
      cfg.weighted_modularity = !unweighted_q;
      std::vector<std::uint64_t> seeds;
      for (int s = 0; s < clus_seeds; ++s) seeds.push_back(clus_dyn.seed + static_cast<std::uint64_t>(s));
      auto r = best_of_seeds(in.graph, cfg, seeds);
      if (format == "csv") {
        emit(partition_csv(r.partition), out_path);
      } else {
        auto j = partition_json(r.partition);
        j["q"] = r.modularity;
        j["trace"] = trace_to_json(r.trace);
        j["initial_modularity"] = r.trace.initial_modularity;
        j["evaluations"] = r.trace.evaluations;
        j["evaluation_bound"] =
            merge_evaluation_bound(cfg.competition.class_count, cfg.target_clusters);
        j["steps"] = r.state.step;
        j["converged"] = r.converged;
        j["underfull"] = r.underfull;
        j["ari"] = in.truth ? json(adjusted_rand_index(*in.truth, r.partition.labels)) : json(nullptr);
        emit(dump(j), out_path);
      }
      if (!plot_path.empty()) {
        if (in.points) {
          write_text_file(plot_path, scatter_svg(*in.points, r.partition.labels));
        } else {
          plot_graph(plot_path, in.graph, r.state, r.partition);
        }
      }
    } else if (sweep_cmd->parsed()) {
      SweepGrid grid;
      grid.class_count_values = parse_int_list(class_values, "--classes-values");
      grid.order_values = parse_int_list(order_values, "--orders");
      for (int s = 0; s < sweep_seeds; ++s) grid.seeds.push_back(sweep_base + static_cast<std::uint64_t>(s));
      SweepOptions options;
      options.lambda = sweep_lambda;
      options.max_steps = sweep_steps;
      options.weighting = parse_weighting(sweep_in.weighting);
      options.jobs = jobs;
      std::vector<SweepResult> results;
      if (is_csv(sweep_in.path)) {
        grid.knn_values = parse_int_list(knn_values, "--knn-values");
        auto d = load_csv(sweep_in.path, sweep_in.label_column);
        for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
        options.want_ari = d.ground_truth.has_value();
        results = sweep(std::get<PointDataset>(d.payload), grid, sweep_target, options);
      } else {
        auto in = load_input(sweep_in.path, std::nullopt, options.weighting, std::nullopt);
        options.want_ari = in.truth.has_value();
        results = sweep(in.graph, in.truth, grid, sweep_target, options);
      }
      if (!labels_dir.empty()) std::filesystem::create_directories(labels_dir);
      std::ostringstream lines;
      for (const auto& r : results) {
        std::string file;
        if (!labels_dir.empty()) {
          file = (std::filesystem::path(labels_dir) /
                  ("k" + std::to_string(r.knn) + "_K" + std::to_string(r.classes) + "_o" +
                   std::to_string(r.order) + "_s" + std::to_string(r.seed) + ".csv"))
                     .string();
          write_text_file(file, partition_csv(r.partition));
        }
        lines << sweep_result_to_json(r, file).dump() << '\n';
      }
      emit(lines.str(), out_path);
    } else if (eval->parsed()) {
      PublishedTable source;
      if (table == "real") {
        source = published_real_results();
      } else if (table == "artificial") {
        source = published_artificial_results();
      } else {
        std::ifstream file(table);
        if (!file) throw DataError("cannot open " + table);
        try {
          auto j = json::parse(file);
          source.datasets = j.at("datasets").get<std::vector<std::string>>();
          source.techniques = j.at("techniques").get<std::vector<std::string>>();
          source.ari = j.at("ari_table").get<ScoreTable>();
        } catch (const json::exception& e) {
          throw DataError(table + ": " + e.what());
        }
      }
      auto report = make_report(source.datasets, source.techniques, source.ari, alpha);
      auto j = report_to_json(report);
      if (table == "real") {
        j["published"] = {{"f_f", kPublishedFriedmanF}, {"cd", kPublishedCriticalDifference}};
      }
      emit(dump(j), out_path);
      if (!plot_path.empty()) {
        write_text_file(plot_path, rank_diagram_svg(report.techniques, report.avg_ranks,
                                                    report.critical_difference,
                                                    report.n_techniques - 1));
      }
    } else if (karate->parsed()) {
      auto d = karate_club();
      const auto& g = std::get<WeightedGraph>(d.payload);
      auto orders = parse_int_list(kar_orders, "--orders");
      json runs = json::array();
      std::optional<ClusterResult> best;
      json best_info;
      for (int s = 0; s < kar_seeds; ++s) {
        PipelineConfig cfg;
        cfg.competition = kar_dyn.config();
        cfg.competition.seed = kar_dyn.seed + static_cast<std::uint64_t>(s);
        cfg.target_clusters = std::min(2, cfg.competition.class_count);
        auto ran = run(g, cfg.competition);
        for (int o : orders) {
          if (o < 1) throw ParameterError("--orders: values must be >= 1");
          cfg.neighborhood.order = o;
          auto r = cluster_from_state(g, ran.state, cfg);
          r.converged = ran.converged;
          double ari = adjusted_rand_index(*d.ground_truth, r.partition.labels);
          json info = {{"seed", cfg.competition.seed}, {"order", o},     {"q", r.modularity},
                       {"ari", ari},                   {"steps", r.state.step},
                       {"converged", r.converged}};
          runs.push_back(info);
          if (!best || r.modularity > best->modularity) {
            best = std::move(r);
            best_info = info;
          }
        }
      }
      best_info["labels"] = best->partition.labels;
      json j = {{"best", best_info},
                {"best_ari", best_info["ari"]},
                {"max_ari", std::max_element(runs.begin(), runs.end(),
                                             [](const json& a, const json& b) {
                                               return a["ari"].get<double>() < b["ari"].get<double>();
                                             })->at("ari")},
                {"runs", runs}};
      emit(dump(j), out_path);
      if (!plot_path.empty()) plot_graph(plot_path, g, best->state, best->partition);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const SimulationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
