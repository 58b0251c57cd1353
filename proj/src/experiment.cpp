#include "isospec/experiment.hpp"

#include "isospec/common.hpp"
#include "isospec/rng.hpp"

namespace isospec {

double ExperimentTable::deletion_rate(int k) const {
    int have = 0, total = 0;
    for (const auto& r : rows)
        if (r.k == k) {
            ++total;
            if (r.deletions > 0) ++have;
        }
    return total ? static_cast<double>(have) / total : 0.0;
}

double ExperimentTable::agreement_rate(int k) const {
    int agree = 0, total = 0;
    for (const auto& r : rows)
        if (r.k == k) {
            ++total;
            if (r.agreement) ++agree;
        }
    return total ? static_cast<double>(agree) / total : 0.0;
}

ExperimentTable run_experiment(int n, int m, const std::vector<int>& k_list, int trials,
                               std::uint64_t master_seed, const SolverOptions& opt) {
    if (n < 2 || trials < 1) throw Error("need n >= 2 and trials >= 1");
    if (m < 0 || static_cast<long long>(m) > static_cast<long long>(n) * (n - 1) / 2)
        throw Error("edge count out of range");
    for (int k : k_list)
        if (k < 2 || k > n) throw Error("every k must satisfy 2 <= k <= n");

    ExperimentTable table;
    table.n = n;
    table.m = m;
    table.trials = trials;
    table.master_seed = master_seed;
    table.heuristic_max_k = la_heuristic_max_k(n, m);

    for (int t = 0; t < trials; ++t) {
        std::uint64_t chain = master_seed + static_cast<std::uint64_t>(t);
        std::uint64_t graph_seed = chain;
        WeightedGraph g;
        for (;;) {
            g = erdos_renyi_conditioned(n, m, graph_seed);
            if (connected(g)) break;
            ++table.rejected_disconnected;
            graph_seed = splitmix64_next(chain);
        }
        const EigenBasis basis = laplacian_eigbasis(g);
        for (int k : k_list) {
            const SpectralStructure s = build_structure(g, k, basis);
            const GreedyResult greedy = greedy_sparsify(s, EdgeOrder::slack, opt);
            ExperimentRow row;
            row.seed = graph_seed;
            row.n = n;
            row.m = m;
            row.k = k;
            row.deletions = static_cast<int>(greedy.certificate.deleted_edges.size());
            row.predicted = table.heuristic_max_k && k <= *table.heuristic_max_k;
            row.agreement = row.predicted == (row.deletions > 0);
            table.rows.push_back(row);
        }
    }
    return table;
}

}  // namespace isospec
