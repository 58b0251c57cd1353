#pragma once

// The random-graph experiment: does the generic edge-count bound predict
// where greedy deletion succeeds?

#include <cstdint>
#include <optional>
#include <vector>

#include "isospec/search.hpp"

namespace isospec {

struct ExperimentRow {
    std::uint64_t seed = 0;  // the seed that produced the (connected) graph
    int n = 0;
    int m = 0;
    int k = 0;
    int deletions = 0;
    bool predicted = false;  // k <= heuristic max-k
    bool agreement = false;  // predicted == (deletions > 0)
};

struct ExperimentTable {
    int n = 0, m = 0, trials = 0;
    std::uint64_t master_seed = 0;
    std::optional<int> heuristic_max_k;
    int rejected_disconnected = 0;
    std::vector<ExperimentRow> rows;

    // fraction of rows at k with deletions > 0
    double deletion_rate(int k) const;
    double agreement_rate(int k) const;
};

// Per trial t: graphs are drawn from seeds splitmix64-chained off
// master_seed + t until a connected one appears; greedy runs at every k in
// k_list. Fully deterministic for a fixed master_seed.
ExperimentTable run_experiment(int n, int m, const std::vector<int>& k_list, int trials,
                               std::uint64_t master_seed, const SolverOptions& opt = {});

}  // namespace isospec
