#include <sstream>

#include <gtest/gtest.h>

#include "eds/community.h"
#include "eds/dynamics.h"
#include "eds/errors.h"
#include "eds/eval.h"
#include "eds/export.h"
#include "eds/modularity.h"
#include "eds/plot.h"
#include "support.h"

namespace eds {
namespace {

using nlohmann::json;

SystemState sample_state(const WeightedGraph& g, int steps) {
  CompetitionConfig cfg;
  cfg.class_count = 3;
  cfg.max_steps = steps;
  cfg.seed = 2;
  return run(g, cfg).state;
}

TEST(StateJson, RoundTrip) {
  auto g = testing::random_graph(15, 0.2, 1);
  auto s = sample_state(g, 12);
  auto j = state_to_json(g, s);
  EXPECT_EQ(j["step"], 12);
  EXPECT_EQ(state_from_json(g, json::parse(j.dump())), s);
}

TEST(StateJson, OmitsZeroFlows) {
  auto g = testing::path_graph(4);
  CompetitionConfig cfg;
  cfg.seed_vertices = {0, 3};
  auto s = initial_state(g, cfg);
  EXPECT_TRUE(state_to_json(g, s)["flows"].empty());
  auto next = step(g, s, cfg);
  // class 0 moved 0->1 and class 1 moved 3->2
  auto flows = state_to_json(g, next)["flows"];
  ASSERT_EQ(flows.size(), 2u);
  EXPECT_EQ(flows[0]["class"], 0);
  EXPECT_EQ(flows[0]["i"], 0);
  EXPECT_EQ(flows[0]["j"], 1);
  EXPECT_EQ(flows[1]["i"], 3);
  EXPECT_EQ(flows[1]["j"], 2);
}

TEST(StateJson, Malformed) {
  auto g = testing::path_graph(3);
  EXPECT_THROW(state_from_json(g, json{{"step", 1}}), DataError);
  json bad_edge = {{"step", 1}, {"nu", {{1, 0, 0}}}, {"flows", {{{"class", 0}, {"i", 0}, {"j", 2}, {"value", 1.0}}}}};
  EXPECT_THROW(state_from_json(g, bad_edge), DataError);
  json bad_size = {{"step", 1}, {"nu", {{1, 0}}}, {"flows", json::array()}};
  EXPECT_THROW(state_from_json(g, bad_size), DataError);
}

TEST(TraceJson, Steps) {
  auto g = testing::cliques(4, 3, true);
  auto r = reduce(g, Partition::from_labels(testing::block_labels(4, 3)), 2);
  auto j = trace_to_json(r.trace);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["a"], r.trace.steps[0].a);
  EXPECT_EQ(j[1]["b"], r.trace.steps[1].b);
  EXPECT_EQ(j[1]["q"].get<double>(), r.trace.steps[1].q);
}

TEST(ReportJson, Fields) {
  const auto& t = published_real_results();
  auto j = report_to_json(make_report(t.datasets, t.techniques, t.ari));
  for (const char* key : {"ari_table", "avg_ranks", "chi2", "f_f", "df", "cd", "alpha"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["df"], json({6, 54}));
}

TEST(SweepJson, Fields) {
  SweepResult r;
  r.knn = 5;
  r.classes = 18;
  r.order = 1;
  r.seed = 3;
  r.q = 0.4;
  auto j = sweep_result_to_json(r, "x.csv");
  EXPECT_EQ(j["knn"], 5);
  EXPECT_EQ(j["K"], 18);
  EXPECT_EQ(j["o"], 1);
  EXPECT_TRUE(j["ari"].is_null());
  EXPECT_EQ(j["labels_file"], "x.csv");
  r.ari = 0.9;
  EXPECT_EQ(sweep_result_to_json(r, "")["ari"], 0.9);
}

TEST(TextExport, PartitionAndUnfoldings) {
  std::ostringstream csv;
  write_partition_csv(csv, Partition::from_labels({0, 1, 1}));
  EXPECT_EQ(csv.str(), "vertex,label\n0,0\n1,1\n2,1\n");

  auto g = testing::cliques(2, 3, true);
  std::ostringstream text;
  auto u = unfold(g, sample_state(g, 30));
  write_unfoldings(text, u);
  std::istringstream in(text.str());
  std::string line;
  int headers = 0, edges = 0;
  while (std::getline(in, line)) (line.rfind("# class ", 0) == 0 ? headers : edges)++;
  EXPECT_EQ(headers, 3);
  EXPECT_EQ(edges, static_cast<int>(g.edge_count()));
}

TEST(Plot, SpringLayoutDeterministicInUnitSquare) {
  auto g = testing::random_graph(25, 0.1, 4);
  auto a = spring_layout(g);
  EXPECT_EQ(a, spring_layout(g));
  ASSERT_EQ(a.size(), 25u);
  for (const auto& p : a) {
    EXPECT_GE(p[0], 0.0);
    EXPECT_LE(p[0], 1.0);
    EXPECT_GE(p[1], 0.0);
    EXPECT_LE(p[1], 1.0);
  }
}

std::size_t count(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto pos = text.find(what); pos != std::string::npos; pos = text.find(what, pos + 1)) ++n;
  return n;
}

TEST(Plot, SvgContent) {
  auto g = testing::cliques(2, 4, true);
  auto svg = graph_svg(g, spring_layout(g), std::vector<int>(g.edge_count(), 0), testing::block_labels(2, 4));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "<circle"), 8u);
  EXPECT_EQ(count(svg, "<line"), g.edge_count());

  PointDataset d;
  d.points = {{0, 0}, {1, 1}, {2, 0}};
  EXPECT_EQ(count(scatter_svg(d, {0, 1, 1}), "<circle"), 3u);

  auto ranks = rank_diagram_svg({"A", "B", "C"}, {1.2, 2.0, 2.8}, 0.9, 0);
  EXPECT_NE(ranks.find(">A (1.2)<"), std::string::npos);
  EXPECT_NE(ranks.find(">C (2.8)<"), std::string::npos);
}

}  // namespace
}  // namespace eds
