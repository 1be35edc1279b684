#include "eds/export.h"

#include <ostream>
#include <string>

#include "eds/errors.h"

namespace eds {

using nlohmann::json;

json state_to_json(const WeightedGraph& g, const SystemState& state) {
  json flows = json::array();
  for (int c = 0; c < state.class_count(); ++c) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edge(e);
      if (double f = state.flows[c][2 * e]; f != 0.0) {
        flows.push_back({{"class", c}, {"i", edge.u}, {"j", edge.v}, {"value", f}});
      }
      if (double f = state.flows[c][2 * e + 1]; f != 0.0) {
        flows.push_back({{"class", c}, {"i", edge.v}, {"j", edge.u}, {"value", f}});
      }
    }
  }
  return {{"step", state.step}, {"nu", state.nu}, {"flows", std::move(flows)}};
}

SystemState state_from_json(const WeightedGraph& g, const json& j) {
  SystemState s;
  try {
    s.step = j.at("step").get<int>();
    s.nu = j.at("nu").get<std::vector<std::vector<double>>>();
    s.flows.assign(s.nu.size(), std::vector<double>(2 * g.edge_count(), 0.0));
    for (const auto& f : j.at("flows")) {
      auto c = f.at("class").get<std::size_t>();
      auto i = f.at("i").get<VertexId>();
      auto k = f.at("j").get<VertexId>();
      auto e = g.find_edge(i, k);
      if (!e || c >= s.flows.size()) throw DataError("snapshot flow on a non-edge or bad class");
      s.flows[c][g.slot(*e, i)] = f.at("value").get<double>();
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed state snapshot: ") + e.what());
  }
  for (const auto& row : s.nu) {
    if (row.size() != g.vertex_count()) throw DataError("snapshot nu has the wrong vertex count");
  }
  return s;
}

json trace_to_json(const MergeTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) steps.push_back({{"a", s.a}, {"b", s.b}, {"q", s.q}});
  return steps;
}

json report_to_json(const EvalReport& r) {
  return {
      {"datasets", r.datasets},
      {"techniques", r.techniques},
      {"ari_table", r.ari_table},
      {"avg_ranks", r.avg_ranks},
      {"chi2", r.friedman.chi2},
      {"f_f", r.friedman.f_f},
      {"df", {r.friedman.df1, r.friedman.df2}},
      {"cd", r.critical_difference},
      {"alpha", r.alpha},
      {"n_datasets", r.n_datasets},
      {"n_techniques", r.n_techniques},
  };
}

json sweep_result_to_json(const SweepResult& r, const std::string& labels_file) {
  json out = {{"knn", r.knn},  {"K", r.classes},      {"o", r.order},
              {"seed", r.seed}, {"q", r.q},           {"converged", r.converged},
              {"labels_file", labels_file}};
  out["ari"] = r.ari ? json(*r.ari) : json(nullptr);
  return out;
}

void write_partition_csv(std::ostream& out, const Partition& p) {
  out << "vertex,label\n";
  for (std::size_t v = 0; v < p.labels.size(); ++v) out << v << ',' << p.labels[v] << '\n';
}

void write_unfoldings(std::ostream& out, const std::vector<Unfolding>& unfoldings) {
  for (const auto& u : unfoldings) {
    out << "# class " << u.class_id << '\n';
    for (const auto& e : u.graph.edges()) out << e.u << ' ' << e.v << " 1\n";
  }
}

}  // namespace eds
