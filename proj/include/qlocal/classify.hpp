#pragma once

#include <vector>

#include "local_function.hpp"
#include "potential.hpp"

namespace qlocal {

struct NeighborhoodReport {
    int index = 0;
    std::vector<int> neighborhood;  // N_S(index) within the first n outputs
    Dyadic tv;                      // distance of the marginal to U_{1/4}
    Dyadic threshold;               // 2^(-5t)
    bool type1 = false;             // far from the (1/4)-biased product
};

// Classifies each index's x-part neighborhood marginal of f_rho(pi) against
// the (1/4)-biased product, with threshold 2^(-5t).  The restriction supplies
// both the deleted set S (its domain) and the concrete fixing.
inline std::vector<NeighborhoodReport> classify_neighborhoods(const LocalFunction& f, int n_split,
                                                              const ProductDist& pi, const Restriction& rho,
                                                              const std::vector<int>& indices, int t,
                                                              int budget_bits = kDefaultBudgetBits) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    LocalFunction f_rho = restrict_function(f, rho);
    DepGraph gx = dep_graph_xpart(f_rho, n_split);
    ExactDist out = output_dist(f_rho, pi, budget_bits);
    Dyadic threshold = Dyadic::pow2(static_cast<unsigned>(5 * t));
    std::vector<NeighborhoodReport> reports;
    for (int i : indices) {
        if (i < 0 || i >= n_split) throw std::invalid_argument("index outside the x part");
        NeighborhoodReport r;
        r.index = i;
        r.neighborhood = neighborhood(gx, i);
        ExactDist marg = marginal(out, r.neighborhood);
        ExactDist biased = ProductDist::biased(r.neighborhood.size(), Dyadic(1, 2)).expand(budget_bits);
        r.tv = tv_distance(marg, biased);
        r.threshold = threshold;
        r.type1 = r.tv >= threshold;
        reports.push_back(std::move(r));
    }
    return reports;
}

}  // namespace qlocal
