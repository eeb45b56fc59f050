#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "local_function.hpp"

namespace qlocal {

struct AdversaryBudget {
    int start_grid_log2 = 4;   // coordinate-descent anchors on the 2^-k grid
    int witness_prec = 12;     // dyadic precision of the returned witness biases
    int max_outputs = 6;       // structure enumeration cap
    int pair_pool = 3;         // shared-input pool for the d >= 2 family
    int pair_grid_log2 = 3;    // bias grid for the d >= 2 family
};

struct AdversaryResult {
    Dyadic best_tv;               // exact distance of the returned witness
    LocalFunction witness;        // the minimizing function
    ProductDist witness_biases;   // dyadic biases of the witness
    double rational_optimum = 0;  // best exact value found before dyadic rounding
    std::string rational_optimum_str;
    bool complete = false;  // false for d >= 2 (grid family, documented gap)
};

namespace detail {

// One d = 1 structure: each output is const 0, const 1, or reads its group's
// shared bit, possibly negated.  Polarity of the first reader in each group is
// absorbed into the bias, so it is fixed to identity.
struct OneLocalStructure {
    std::vector<int> role;      // per output: -2 const0, -1 const1, else group id
    std::vector<int> polarity;  // per output: 1 = negated (readers only)
    int groups = 0;
};

inline void enumerate_one_local_structures(int outputs, const std::function<void(const OneLocalStructure&)>& visit) {
    std::vector<int> role(outputs, 0), polarity(outputs, 0);
    // const assignment: 0 = reads, 1 = const0, 2 = const1
    std::vector<int> mode(outputs, 0);
    std::function<void(int)> pick_mode = [&](int i) {
        if (i == outputs) {
            std::vector<int> readers;
            for (int j = 0; j < outputs; ++j)
                if (mode[j] == 0) readers.push_back(j);
            // set partitions of the readers via restricted growth strings
            std::vector<int> part(readers.size(), 0);
            std::function<void(size_t, int)> pick_part = [&](size_t k, int used) {
                if (k == readers.size()) {
                    // polarity of non-first group members
                    std::vector<int> later;
                    std::vector<bool> seen(used, false);
                    for (size_t r = 0; r < readers.size(); ++r) {
                        if (!seen[part[r]])
                            seen[part[r]] = true;
                        else
                            later.push_back(readers[r]);
                    }
                    for (uint64_t pol = 0; pol < (uint64_t{1} << later.size()); ++pol) {
                        OneLocalStructure s;
                        s.role.assign(outputs, 0);
                        s.polarity.assign(outputs, 0);
                        s.groups = used;
                        for (int j = 0; j < outputs; ++j)
                            if (mode[j] == 1)
                                s.role[j] = -2;
                            else if (mode[j] == 2)
                                s.role[j] = -1;
                        for (size_t r = 0; r < readers.size(); ++r) s.role[readers[r]] = part[r];
                        for (size_t t = 0; t < later.size(); ++t)
                            s.polarity[later[t]] = (pol >> t) & 1;
                        visit(s);
                    }
                    return;
                }
                for (int g = 0; g <= used && g < static_cast<int>(readers.size()); ++g) {
                    part[k] = g;
                    pick_part(k + 1, std::max(used, g + 1));
                }
            };
            if (readers.empty()) {
                OneLocalStructure s;
                s.role.assign(outputs, 0);
                s.polarity.assign(outputs, 0);
                s.groups = 0;
                for (int j = 0; j < outputs; ++j) s.role[j] = mode[j] == 1 ? -2 : -1;
                visit(s);
            } else {
                pick_part(0, 0);
            }
            return;
        }
        for (int m = 0; m < 3; ++m) {
            mode[i] = m;
            pick_mode(i + 1);
        }
    };
    pick_mode(0);
}

// Target masses as exact rationals indexed by output pattern.
inline std::vector<mpq_class> target_table(const ExactDist& target) {
    std::vector<mpq_class> t(size_t{1} << target.len(), 0);
    for (const auto& [key, mass] : target.pmf()) {
        mpq_class q(mass.num());
        q /= mpq_class(mpz_class(1) << mass.denom_exp());
        t[key.to_ullong()] = q;
    }
    return t;
}

// For a structure with g groups, the output distribution has one atom per
// group-bit vector.  Returns, per atom, the output pattern and which groups
// are set.
struct Atom {
    uint64_t pattern = 0;
    uint64_t group_bits = 0;
};

inline std::vector<Atom> structure_atoms(const OneLocalStructure& s) {
    int outputs = static_cast<int>(s.role.size());
    std::vector<Atom> atoms(size_t{1} << s.groups);
    for (uint64_t gb = 0; gb < atoms.size(); ++gb) {
        uint64_t pat = 0;
        for (int j = 0; j < outputs; ++j) {
            bool bit;
            if (s.role[j] == -2)
                bit = false;
            else if (s.role[j] == -1)
                bit = true;
            else
                bit = (((gb >> s.role[j]) & 1) != 0) ^ (s.polarity[j] != 0);
            if (bit) pat |= uint64_t{1} << j;
        }
        atoms[gb] = {pat, gb};
    }
    return atoms;
}

// TV of the structure's output distribution at the given group biases.
inline mpq_class structure_tv(const std::vector<Atom>& atoms, const std::vector<mpq_class>& target,
                              const std::vector<mpq_class>& biases) {
    std::vector<mpq_class> mass(target.size(), 0);
    for (const auto& atom : atoms) {
        mpq_class m = 1;
        for (size_t g = 0; g < biases.size(); ++g)
            m *= ((atom.group_bits >> g) & 1) ? biases[g] : mpq_class(1) - biases[g];
        mass[atom.pattern] += m;
    }
    mpq_class l1 = 0;
    for (size_t z = 0; z < target.size(); ++z) l1 += abs(mass[z] - target[z]);
    return l1 / 2;
}

// Exact one-dimensional minimization in group g: TV is piecewise linear in
// the bias, so the minimum is at 0, 1, or a breakpoint where some atom mass
// crosses its target.
inline void optimize_group(const std::vector<Atom>& atoms, const std::vector<mpq_class>& target,
                           std::vector<mpq_class>& biases, size_t g) {
    // mass(z) = A_z * p + B_z
    std::vector<mpq_class> a(target.size(), 0), b(target.size(), 0);
    for (const auto& atom : atoms) {
        mpq_class rest = 1;
        for (size_t h = 0; h < biases.size(); ++h) {
            if (h == g) continue;
            rest *= ((atom.group_bits >> h) & 1) ? biases[h] : mpq_class(1) - biases[h];
        }
        if ((atom.group_bits >> g) & 1)
            a[atom.pattern] += rest;
        else {
            a[atom.pattern] -= rest;
            b[atom.pattern] += rest;
        }
    }
    std::vector<mpq_class> candidates{0, 1, biases[g]};
    for (size_t z = 0; z < target.size(); ++z) {
        if (a[z] == 0) continue;
        mpq_class p = (target[z] - b[z]) / a[z];
        if (p >= 0 && p <= 1) candidates.push_back(p);
    }
    mpq_class best_tv;
    mpq_class best_p = biases[g];
    bool first = true;
    for (const auto& p : candidates) {
        std::vector<mpq_class> trial = biases;
        trial[g] = p;
        mpq_class tv = structure_tv(atoms, target, trial);
        if (first || tv < best_tv) {
            best_tv = tv;
            best_p = p;
            first = false;
        }
    }
    biases[g] = best_p;
}

inline mpq_class descend(const std::vector<Atom>& atoms, const std::vector<mpq_class>& target,
                         std::vector<mpq_class>& biases) {
    mpq_class cur = structure_tv(atoms, target, biases);
    for (int round = 0; round < 32; ++round) {
        for (size_t g = 0; g < biases.size(); ++g) optimize_group(atoms, target, biases, g);
        mpq_class next = structure_tv(atoms, target, biases);
        if (next == cur) break;
        cur = next;
    }
    return cur;
}

inline std::optional<Dyadic> rational_to_dyadic(const mpq_class& q) {
    mpz_class den = q.get_den();
    mp_bitcnt_t bit = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class shifted = den >> bit;
    if (shifted != 1) return std::nullopt;
    return Dyadic(q.get_num(), static_cast<unsigned>(bit));
}

inline LocalFunction structure_function(const OneLocalStructure& s) {
    std::vector<OutputBit> outs;
    for (size_t j = 0; j < s.role.size(); ++j) {
        if (s.role[j] == -2) {
            outs.push_back({{}, {0}});
        } else if (s.role[j] == -1) {
            outs.push_back({{}, {1}});
        } else if (s.polarity[j]) {
            outs.push_back({{s.role[j]}, {1, 0}});
        } else {
            outs.push_back({{s.role[j]}, {0, 1}});
        }
    }
    int inputs = std::max(1, s.groups);
    return LocalFunction(inputs, std::move(outs));
}

}  // namespace detail

// Minimizes exact TV to the target over d-local functions with optimizable
// product-input biases.  d = 1 enumerates the full canonical family (shared
// or fresh inputs read through id/not/const) and optimizes biases by exact
// piecewise-linear coordinate descent from a dyadic anchor grid; the interior
// optima are exact rationals, and the returned witness carries the best
// nearby dyadic biases.  d >= 2 additionally scans a bounded 2-local family
// on a dyadic bias grid and is not complete.
inline AdversaryResult adversary_search(int d, const ExactDist& target,
                                        const AdversaryBudget& budget = {}) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    int outputs = static_cast<int>(target.len());
    if (outputs > budget.max_outputs) throw BudgetExceeded("too many outputs for adversary search");
    auto tbl = detail::target_table(target);

    mpq_class best_rational = 2;
    detail::OneLocalStructure best_structure;
    std::vector<mpq_class> best_biases;

    detail::enumerate_one_local_structures(outputs, [&](const detail::OneLocalStructure& s) {
        auto atoms = detail::structure_atoms(s);
        int g = s.groups;
        if (g == 0) {
            mpq_class tv = detail::structure_tv(atoms, tbl, {});
            if (tv < best_rational) {
                best_rational = tv;
                best_structure = s;
                best_biases = {};
            }
            return;
        }
        // anchors: full grid for <= 2 groups, a coarse one beyond
        int step_log2 = g <= 2 ? budget.start_grid_log2 : 2;
        int steps = 1 << step_log2;
        std::vector<int> anchor(g, 0);
        std::function<void(int)> scan = [&](int gi) {
            if (gi == g) {
                std::vector<mpq_class> biases(g);
                for (int h = 0; h < g; ++h) biases[h] = mpq_class(anchor[h], steps);
                mpq_class tv = detail::descend(atoms, tbl, biases);
                if (tv < best_rational) {
                    best_rational = tv;
                    best_structure = s;
                    best_biases = biases;
                }
                return;
            }
            for (anchor[gi] = 0; anchor[gi] <= steps; ++anchor[gi]) scan(gi + 1);
        };
        scan(0);
    });

    // Round the optimal biases to dyadics, keeping the best exact value among
    // floor/ceil combinations at the witness precision.
    AdversaryResult result;
    result.rational_optimum = best_rational.get_d();
    result.rational_optimum_str = best_rational.get_str();
    result.complete = d == 1;
    auto atoms = detail::structure_atoms(best_structure);
    size_t g = best_biases.size();
    std::vector<std::vector<mpq_class>> choices(g);
    mpz_class scale = mpz_class(1) << budget.witness_prec;
    for (size_t h = 0; h < g; ++h) {
        if (detail::rational_to_dyadic(best_biases[h]) &&
            best_biases[h].get_den() <= scale) {
            choices[h] = {best_biases[h]};
            continue;
        }
        mpz_class floor_num = (best_biases[h].get_num() * scale) / best_biases[h].get_den();
        for (int delta = 0; delta <= 1; ++delta)
            choices[h].push_back(mpq_class(floor_num + delta, scale));
    }
    std::vector<mpq_class> pick(g);
    mpq_class best_dyadic_tv = 2;
    std::vector<mpq_class> best_dyadic;
    std::function<void(size_t)> choose = [&](size_t h) {
        if (h == g) {
            mpq_class tv = detail::structure_tv(atoms, tbl, pick);
            if (tv < best_dyadic_tv) {
                best_dyadic_tv = tv;
                best_dyadic = pick;
            }
            return;
        }
        for (const auto& c : choices[h]) {
            pick[h] = c;
            choose(h + 1);
        }
    };
    choose(0);
    if (g == 0) best_dyadic_tv = best_rational;

    result.witness = detail::structure_function(best_structure);
    std::vector<Dyadic> dy;
    for (const auto& q : best_dyadic) dy.push_back(*detail::rational_to_dyadic(q));
    if (dy.empty()) dy.push_back(Dyadic::one_half());  // placeholder input, never read
    result.witness_biases = ProductDist(dy);
    auto tv_dy = detail::rational_to_dyadic(best_dyadic_tv);
    if (!tv_dy) throw std::logic_error("dyadic witness produced a non-dyadic distance");
    result.best_tv = *tv_dy;

    // d >= 2: bounded 2-local family over a small shared pool with grid
    // biases.  Kept only if it beats the d = 1 result.
    if (d >= 2) {
        int pool = budget.pair_pool;
        int steps = 1 << budget.pair_grid_log2;
        // per output: dependency choice (none, single i, pair (i, j)) + table
        struct Choice {
            std::vector<int> deps;
            std::vector<uint8_t> table;
        };
        std::vector<Choice> menu;
        menu.push_back({{}, {0}});
        menu.push_back({{}, {1}});
        for (int i = 0; i < pool; ++i)
            for (uint8_t t = 0; t < 4; ++t) {
                if (t == 0b00 || t == 0b11) continue;  // constants already covered
                menu.push_back({{i}, {static_cast<uint8_t>(t & 1), static_cast<uint8_t>((t >> 1) & 1)}});
            }
        for (int i = 0; i < pool; ++i)
            for (int j = i + 1; j < pool; ++j)
                for (int t = 0; t < 16; ++t) {
                    std::vector<uint8_t> table{static_cast<uint8_t>(t & 1), static_cast<uint8_t>((t >> 1) & 1),
                                               static_cast<uint8_t>((t >> 2) & 1),
                                               static_cast<uint8_t>((t >> 3) & 1)};
                    // skip tables that ignore one of the two inputs
                    if (table[0] == table[1] && table[2] == table[3]) continue;
                    if (table[0] == table[2] && table[1] == table[3]) continue;
                    menu.push_back({{i, j}, table});
                }

        std::vector<size_t> sel(static_cast<size_t>(outputs), 0);
        std::vector<Dyadic> grid;
        for (int v = 0; v <= steps; ++v) grid.push_back(Dyadic(v).shifted_down(budget.pair_grid_log2));
        std::function<void(size_t)> scan_outputs = [&](size_t j) {
            if (j == sel.size()) {
                std::vector<OutputBit> outs;
                for (size_t o = 0; o < sel.size(); ++o) outs.push_back({menu[sel[o]].deps, menu[sel[o]].table});
                LocalFunction f(pool, std::move(outs));
                std::vector<int> live = f.live_inputs();
                // grid over live biases only
                std::vector<Dyadic> biases(pool, Dyadic::one_half());
                std::function<void(size_t)> scan_bias = [&](size_t li) {
                    if (li == live.size()) {
                        Dyadic tv = tv_distance(output_dist(f, ProductDist(biases)), target);
                        if (tv < result.best_tv) {
                            result.best_tv = tv;
                            result.witness = f;
                            result.witness_biases = ProductDist(biases);
                            if (tv.to_double() < result.rational_optimum) {
                                result.rational_optimum = tv.to_double();
                                result.rational_optimum_str = tv.to_string();
                            }
                        }
                        return;
                    }
                    for (const auto& b : grid) {
                        biases[static_cast<size_t>(live[li])] = b;
                        scan_bias(li + 1);
                    }
                };
                scan_bias(0);
                return;
            }
            for (size_t m = 0; m < menu.size(); ++m) {
                sel[j] = m;
                scan_outputs(j + 1);
            }
        };
        if (outputs <= 2) scan_outputs(0);  // combinatorial guard
    }
    return result;
}

}  // namespace qlocal
