#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schulze/dscc.hpp"

using namespace schulze;

namespace {

using Adjacency = std::vector<std::vector<char>>;

Adjacency complete(std::size_t m) {
  Adjacency adj(m, std::vector<char>(m, 1));
  for (std::size_t v = 0; v < m; ++v) adj[v][v] = 0;
  return adj;
}

/// Compares the structure against Tarjan plus definitional in-degrees.
void expect_consistent(const DecrementalScc& scc, const Adjacency& adj) {
  const std::size_t m = adj.size();
  const auto label = oracle::tarjan(adj);
  std::vector<std::size_t> ids(m);
  for (std::size_t v = 0; v < m; ++v) ids[v] = scc.scc_id(v);
  ASSERT_TRUE(oracle::same_partition(label, ids));
  for (std::size_t v = 0; v < m; ++v) {
    ASSERT_EQ(scc.in_degree(scc.scc_id(v)), oracle::in_degree_of(adj, label, v));
    const auto& members = scc.members(scc.scc_id(v));
    ASSERT_TRUE(std::binary_search(members.begin(), members.end(), v));
  }
}

}  // namespace

TEST(DecrementalScc, FreshCompleteGraph) {
  for (std::size_t m : {1, 2, 3, 9}) {
    DecrementalScc scc(m);
    EXPECT_EQ(scc.scc_count(), 1u);
    EXPECT_EQ(scc.in_degree(scc.scc_id(0)), 0);
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) EXPECT_TRUE(scc.same_scc(u, v));
    }
  }
}

TEST(DecrementalScc, ThreeCycleSplitsCompletely) {
  const std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 0}};
  DecrementalScc scc(3, cycle);
  ASSERT_EQ(scc.scc_count(), 1u);
  const SccId old_id = scc.scc_id(0);
  const auto created = scc.delete_edge(2, 0);
  EXPECT_EQ(created.size(), 2u);
  EXPECT_FALSE(scc.same_scc(0, 1));
  EXPECT_FALSE(scc.same_scc(1, 2));
  std::vector<SccId> ids{scc.scc_id(0), scc.scc_id(1), scc.scc_id(2)};
  EXPECT_EQ(std::count(ids.begin(), ids.end(), old_id), 1);
  // Vertex 1 keeps two live edges, more than either neighbour.
  EXPECT_EQ(scc.scc_id(1), old_id);
  for (auto id : created) EXPECT_NE(id, old_id);
  Adjacency adj(3, std::vector<char>(3, 0));
  adj[0][1] = adj[1][2] = 1;
  expect_consistent(scc, adj);
}

TEST(DecrementalScc, CrossEdgeOnlyUpdatesInDegree) {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {2, 3}, {3, 2}, {0, 2}, {1, 2}, {1, 3}};
  DecrementalScc scc(4, edges);
  ASSERT_EQ(scc.scc_count(), 2u);
  const auto y = scc.scc_id(2);
  const auto x = scc.scc_id(0);
  EXPECT_EQ(scc.in_degree(y), 3);
  EXPECT_EQ(scc.in_degree(x), 0);
  EXPECT_TRUE(scc.delete_edge(1, 2).empty());
  EXPECT_EQ(scc.in_degree(y), 2);
  EXPECT_EQ(scc.scc_count(), 2u);
}

TEST(DecrementalScc, DeletionWithDetourKeepsScc) {
  const std::vector<Edge> edges{{0, 1}, {0, 2}, {2, 1}, {1, 3}, {3, 0}};
  DecrementalScc scc(4, edges);
  ASSERT_EQ(scc.scc_count(), 1u);
  EXPECT_TRUE(scc.delete_edge(0, 1).empty());
  EXPECT_TRUE(scc.same_scc(0, 1));
  EXPECT_EQ(scc.scc_count(), 1u);
}

TEST(DecrementalScc, FullDeletionLeavesSingletons) {
  const std::size_t m = 5;
  DecrementalScc scc(m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (u != v) scc.delete_edge(u, v);
    }
  }
  EXPECT_EQ(scc.scc_count(), m);
  for (std::size_t u = 0; u < m; ++u) {
    EXPECT_EQ(scc.in_degree(scc.scc_id(u)), 0);
    for (std::size_t v = 0; v < m; ++v) EXPECT_EQ(scc.same_scc(u, v), u == v);
  }
}

TEST(DecrementalScc, ContractViolations) {
  DecrementalScc scc(3);
  scc.delete_edge(0, 1);
  EXPECT_THROW(scc.delete_edge(0, 1), ContractViolation);
  EXPECT_THROW(scc.delete_edge(1, 1), ContractViolation);
  EXPECT_THROW(scc.delete_edge(0, 7), ContractViolation);
  EXPECT_THROW(scc.in_degree(99), ContractViolation);
  EXPECT_THROW(scc.members(99), ContractViolation);
}

TEST(DecrementalScc, ReplayAgainstTarjan) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + trial % 10;
    Adjacency adj = complete(m);
    std::vector<Edge> edges;
    if (trial % 3 == 0) {
      for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = 0; v < m; ++v) {
          if (adj[u][v] && rng() % 2) adj[u][v] = 0;
        }
      }
    }
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) {
        if (adj[u][v]) edges.push_back({u, v});
      }
    }
    DecrementalScc scc = trial % 3 == 0 ? DecrementalScc(m, edges) : DecrementalScc(m);
    expect_consistent(scc, adj);
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const auto& e : edges) {
      const SccId before = scc.scc_id(e.from);
      const std::size_t count_before = scc.scc_count();
      const bool inside = scc.same_scc(e.from, e.to);
      const auto created = scc.delete_edge(e.from, e.to);
      adj[e.from][e.to] = 0;
      ASSERT_NO_FATAL_FAILURE(expect_consistent(scc, adj));
      ASSERT_EQ(scc.scc_count(), count_before + created.size());
      if (!inside) {
        ASSERT_TRUE(created.empty());
      }
      if (!created.empty()) {
        // Exactly one fragment of the old SCC still carries its id.
        std::size_t carriers = 0;
        for (std::size_t v = 0; v < m; ++v) carriers += scc.scc_id(v) == before;
        ASSERT_GT(carriers, 0u);
        for (auto id : created) ASSERT_GE(id, count_before);
      }
    }
  }
}

TEST(DecrementalScc, BatchMatchesSingleDeletions) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 2 + trial % 9;
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) {
        if (u != v) edges.push_back({u, v});
      }
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    DecrementalScc batch(m);
    Adjacency adj = complete(m);
    for (std::size_t lo = 0; lo < edges.size();) {
      const std::size_t hi = std::min(edges.size(), lo + 1 + rng() % 6);
      const std::span<const Edge> level(edges.data() + lo, hi - lo);
      std::vector<SccId> before(m);
      for (std::size_t v = 0; v < m; ++v) before[v] = batch.scc_id(v);
      const auto splits = batch.delete_edges(level);
      for (const auto& e : level) adj[e.from][e.to] = 0;
      ASSERT_NO_FATAL_FAILURE(expect_consistent(batch, adj));
      for (const auto& s : splits) {
        for (auto id : s.created) {
          for (auto v : batch.members(id)) ASSERT_EQ(before[v], s.old_id);
        }
      }
      lo = hi;
    }
  }
}

TEST(DecrementalScc, SccsOnlySplit) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 8;
    DecrementalScc scc(m);
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < m; ++u) {
      for (std::size_t v = 0; v < m; ++v) {
        if (u != v) edges.push_back({u, v});
      }
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const auto& e : edges) {
      std::vector<std::vector<char>> together(m, std::vector<char>(m));
      for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = 0; v < m; ++v) together[u][v] = scc.same_scc(u, v);
      }
      scc.delete_edge(e.from, e.to);
      for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t v = 0; v < m; ++v) {
          if (scc.same_scc(u, v)) {
            ASSERT_TRUE(together[u][v]);
          }
        }
      }
    }
  }
}
