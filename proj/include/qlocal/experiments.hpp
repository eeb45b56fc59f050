#pragma once

#include <cmath>
#include <vector>

#include "local_function.hpp"
#include "potential.hpp"

namespace qlocal {

// 1 - 2 exp(-eps^2 b / 2): the product-marginal separation bound.
inline double tv_product_lower_bound(const Dyadic& epsilon, int b) {
    if (epsilon.sign() < 0 || Dyadic::one() < epsilon) throw std::invalid_argument("epsilon outside [0,1]");
    if (b < 1) throw std::invalid_argument("b must be >= 1");
    double e = epsilon.to_double();
    return 1.0 - 2.0 * std::exp(-e * e * static_cast<double>(b) / 2.0);
}

struct DirectProductReport {
    Dyadic per_copy_tv;
    Dyadic kfold_tv;
    double bound = 0.0;  // 1 - 2 exp(-delta^2 k / 2)
    bool bound_holds = false;
};

// Exact k-fold experiment: computes TV(f(pi), target) and the exact TV of the
// k-fold products, and checks the measured value against the concentration
// bound with delta = per-copy TV.
inline DirectProductReport direct_product_experiment(const LocalFunction& f, const ProductDist& pi,
                                                     const ExactDist& target, int k,
                                                     int budget_bits = kDefaultBudgetBits) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    DirectProductReport r;
    ExactDist p = output_dist(f, pi, budget_bits);
    r.per_copy_tv = tv_distance(p, target);
    r.kfold_tv = tv_distance(kfold(p, k, budget_bits), kfold(target, k, budget_bits));
    r.bound = tv_product_lower_bound(r.per_copy_tv, k);
    // Exact dyadic vs. a transcendental bound: compare in doubles with the
    // bound's sign handled exactly (non-positive bounds are vacuous).
    r.bound_holds = r.bound <= 0.0 || r.kfold_tv.to_double() >= r.bound - 1e-12;
    return r;
}

struct ConditioningBoundReport {
    Dyadic best_bound;   // best eta2/(b-a) - (l+1) eta1 over valid splits
    Dyadic actual_tv;    // measured TV(f(pi), target)
    bool holds = false;  // best_bound <= actual_tv
};

// Evaluates the mixture-conditioning inequality on a concrete instance: for
// every threshold split of the restrictions into "far in TV" and "far in
// potential gap", the implied lower bound must not exceed the directly
// measured distance.  phi is the real part of h with the given x-split, so
// its range is [-1, 1].
inline ConditioningBoundReport conditioning_bound_check(const LocalFunction& f, const ProductDist& pi,
                                                        const ExactDist& target, int n_split,
                                                        const std::vector<int>& s,
                                                        int budget_bits = kDefaultBudgetBits) {
    if (s.size() > 12) throw BudgetExceeded("restriction set too large");
    ConditioningBoundReport report;
    report.actual_tv = tv_distance(output_dist(f, pi, budget_bits), target);

    GaussSqrt2 target_h = expected_h(target, n_split);
    if (target_h.sqrt2_exp % 2 != 0) throw std::logic_error("target potential not dyadic");
    Dyadic target_re(target_h.re, target_h.sqrt2_exp / 2);

    struct PerRho {
        Dyadic tv;
        Dyadic gap;
    };
    std::vector<PerRho> rows;
    for (uint64_t a = 0; a < (uint64_t{1} << s.size()); ++a) {
        Restriction rho;
        for (size_t i = 0; i < s.size(); ++i) rho.fixed[s[i]] = (a >> i) & 1;
        ExactDist d = output_dist(restrict_function(f, rho), pi, budget_bits);
        GaussSqrt2 h = expected_h(d, n_split);
        if (h.sqrt2_exp % 2 != 0) throw std::logic_error("potential not dyadic");
        Dyadic h_re(h.re, h.sqrt2_exp / 2);
        rows.push_back({tv_distance(d, target), target_re - h_re});
    }

    long ell = static_cast<long>(rows.size());
    bool first = true;
    for (const auto& pivot : rows) {
        // eta1 chosen so every restriction with tv >= 1 - eta1 is "far";
        // the rest must supply the potential gap eta2.
        Dyadic eta1 = Dyadic::one() - pivot.tv;
        if (eta1.sign() < 0) eta1 = Dyadic::zero();
        bool ok = true;
        Dyadic eta2;
        bool have_gap = false;
        for (const auto& row : rows) {
            if (row.tv >= Dyadic::one() - eta1) continue;
            if (row.gap.sign() <= 0) {
                ok = false;
                break;
            }
            if (!have_gap || row.gap < eta2) {
                eta2 = row.gap;
                have_gap = true;
            }
        }
        if (!ok) continue;
        if (!have_gap) eta2 = Dyadic(2);  // all rows far in TV; range bound caps eta2 at b-a
        Dyadic bound = eta2.shifted_down(1) - Dyadic(ell + 1) * eta1;  // b-a = 2 for Re h
        if (first || report.best_bound < bound) {
            report.best_bound = bound;
            first = false;
        }
    }
    if (first) report.best_bound = Dyadic(-1);
    report.holds = report.best_bound <= report.actual_tv;
    return report;
}

}  // namespace qlocal
