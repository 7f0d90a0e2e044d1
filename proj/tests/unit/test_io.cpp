#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "amc/io.hpp"
#include "oracles.hpp"

using namespace amc;

namespace {

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Pgm, PlainAndBinaryRoundTrip) {
  std::vector<double> v;
  for (int i = 0; i < 6; ++i) v.push_back(i * 51 / 255.0);
  const EdgeMap map(2, 3, v);
  for (bool binary : {false, true}) {
    std::stringstream buffer;
    io::write_pgm(buffer, map, binary);
    const auto back = io::read_pgm(buffer);
    ASSERT_EQ(back.height(), 2u);
    ASSERT_EQ(back.width(), 3u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(back.values()[i], v[i], 1e-12);
  }
}

TEST(Pgm, CommentsAndErrors) {
  std::istringstream ok("P2\n# a comment\n2 1\n255\n0 255\n");
  const auto map = io::read_pgm(ok);
  EXPECT_DOUBLE_EQ(map.at(0, 1), 1.0);
  std::istringstream bad_max("P2\n1 1\n15\n3\n");
  EXPECT_THROW(io::read_pgm(bad_max), io::ParseError);
  std::istringstream bad_magic("P6\n1 1\n255\n0\n");
  EXPECT_THROW(io::read_pgm(bad_magic), io::ParseError);
  std::istringstream truncated("P2\n2 2\n255\n1 2 3\n");
  EXPECT_THROW(io::read_pgm(truncated), io::ParseError);
}

TEST(EdgeMapCsv, ReadAndErrors) {
  std::istringstream ok("0.1,0.2\n0.3,0.4\n");
  const auto map = io::read_edge_map_csv(ok);
  EXPECT_EQ(map.height(), 2u);
  EXPECT_DOUBLE_EQ(map.at(1, 0), 0.3);
  std::istringstream ragged("0.1,0.2\n0.3\n");
  EXPECT_NE(error_of([&] { io::read_edge_map_csv(ragged); }).find("line 2"), std::string::npos);
  std::istringstream junk("0.1,abc\n");
  EXPECT_NE(error_of([&] { io::read_edge_map_csv(junk); }).find("line 1"), std::string::npos);
}

TEST(GraphFile, RoundTrip) {
  std::mt19937 rng(3);
  const auto edges = oracle::random_edges(12, 0.4, rng);
  const EdgeGraph g(12, edges, oracle::random_probs(edges.size(), rng));
  std::stringstream buffer;
  io::write_graph(buffer, g);
  const auto back = io::read_graph(buffer);
  ASSERT_EQ(back.num_nodes(), g.num_nodes());
  ASSERT_EQ(back.num_edges(), g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    EXPECT_EQ(back.edge(e), g.edge(e));
    EXPECT_NEAR(back.probs()[e], g.probs()[e], 1e-6);
    EXPECT_NEAR(back.costs()[e], probs_to_costs(back.probs()[e]), 1e-12);
  }
}

TEST(GraphFile, Errors) {
  std::istringstream header("vertices 3\n");
  EXPECT_NE(error_of([&] { io::read_graph(header); }).find("line 1"), std::string::npos);
  std::istringstream range("nodes 2 edges 1\n0 5 0.5\n");
  EXPECT_NE(error_of([&] { io::read_graph(range); }).find("line 2"), std::string::npos);
  std::istringstream prob("nodes 2 edges 1\n0 1 1.5\n");
  EXPECT_NE(error_of([&] { io::read_graph(prob); }).find("line 2"), std::string::npos);
  std::istringstream short_file("nodes 3 edges 2\n0 1 0.5\n");
  EXPECT_THROW(io::read_graph(short_file), io::ParseError);
  std::istringstream dup("nodes 3 edges 2\n0 1 0.5\n1 0 0.5\n");
  EXPECT_THROW(io::read_graph(dup), io::ParseError);
}

TEST(PartitionFile, RoundTripAndErrors) {
  const Partition p{0, 1, 1, 2};
  std::stringstream buffer;
  io::write_partition(buffer, p);
  EXPECT_EQ(io::read_partition(buffer), p);
  std::istringstream bad("node,component\n0,1\nx,2\n");
  EXPECT_NE(error_of([&] { io::read_partition(bad); }).find("line 3"), std::string::npos);
  std::istringstream gap("0,0\n2,0\n");
  EXPECT_THROW(io::read_partition(gap), io::ParseError);
}

TEST(LabelingFile, RoundTripAndErrors) {
  const EdgeGraph g(3, oracle::complete_edges(3), {0.1, 0.2, 0.3});
  const Labeling y{1, 0, 1};
  std::stringstream buffer;
  io::write_labeling(buffer, g, y);
  EXPECT_EQ(io::read_labeling(buffer, g), y);
  std::istringstream mismatch("edge,u,v,cut\n0,0,2,1\n");
  EXPECT_NE(error_of([&] { io::read_labeling(mismatch, g); }).find("line 2"), std::string::npos);
  std::istringstream partial("0,0,1,1\n");
  EXPECT_THROW(io::read_labeling(partial, g), io::ParseError);
}

TEST(ParamsFile, RoundTripAndErrors) {
  const PotentialParams p{0.25, 1.5, 2.0, 12.0, 0.75};
  std::stringstream buffer;
  io::write_params(buffer, p);
  EXPECT_EQ(io::read_params(buffer), p);
  std::istringstream partial("# tuned\ngamma_max = 3  # inline\n\n");
  const auto q = io::read_params(partial);
  EXPECT_DOUBLE_EQ(q.gamma_max, 3.0);
  EXPECT_DOUBLE_EQ(q.unary_weight, 1.0);
  std::istringstream unknown("gamma = 1\n");
  EXPECT_NE(error_of([&] { io::read_params(unknown); }).find("line 1"), std::string::npos);
  std::istringstream bad("gamma_max = lots\n");
  EXPECT_THROW(io::read_params(bad), io::ParseError);
}
