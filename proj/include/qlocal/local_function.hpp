#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "dist.hpp"

namespace qlocal {

inline constexpr int kMaxOutputLocality = 12;

// One output bit: a sorted dependency set and a truth table with 2^|deps|
// rows.  deps[0] is the least significant bit of the row index.
struct OutputBit {
    std::vector<int> deps;
    std::vector<uint8_t> table;
};

class LocalFunction {
  public:
    LocalFunction() = default;
    LocalFunction(int input_count, std::vector<OutputBit> outputs)
        : input_count_(input_count), outputs_(std::move(outputs)) {
        validate();
    }

    int input_count() const { return input_count_; }
    int output_count() const { return static_cast<int>(outputs_.size()); }
    const std::vector<OutputBit>& outputs() const { return outputs_; }
    const OutputBit& output(int i) const { return outputs_[i]; }

    int locality() const {
        size_t d = 0;
        for (const auto& o : outputs_) d = std::max(d, o.deps.size());
        return static_cast<int>(d);
    }

    bool eval_output(int j, const BitString& input) const {
        const OutputBit& o = outputs_[j];
        size_t row = 0;
        for (size_t k = 0; k < o.deps.size(); ++k)
            if (input.get(static_cast<size_t>(o.deps[k]))) row |= size_t{1} << k;
        return o.table[row] != 0;
    }

    BitString evaluate(const BitString& input) const {
        if (static_cast<int>(input.size()) != input_count_)
            throw std::invalid_argument("input length mismatch");
        BitString out(outputs_.size());
        for (int j = 0; j < output_count(); ++j) out.set(static_cast<size_t>(j), eval_output(j, input));
        return out;
    }

    // Input indices some output actually depends on.
    std::vector<int> live_inputs() const {
        std::set<int> s;
        for (const auto& o : outputs_) s.insert(o.deps.begin(), o.deps.end());
        return {s.begin(), s.end()};
    }

  private:
    void validate() const {
        for (const auto& o : outputs_) {
            if (o.deps.size() > kMaxOutputLocality)
                throw std::invalid_argument("output locality exceeds cap");
            if (o.table.size() != (size_t{1} << o.deps.size()))
                throw std::invalid_argument("truth table size mismatch");
            int prev = -1;
            for (int d : o.deps) {
                if (d <= prev) throw std::invalid_argument("deps must be sorted and distinct");
                if (d < 0 || d >= input_count_) throw std::invalid_argument("dep out of range");
                prev = d;
            }
        }
    }

    int input_count_ = 0;
    std::vector<OutputBit> outputs_;
};

// Builds an output from a raw (possibly repeated) dependency list and a
// predicate on the raw values; duplicates are merged before tabulation.
inline OutputBit make_output(const std::vector<int>& raw_deps,
                             const std::function<bool(const std::vector<uint8_t>&)>& fn) {
    std::vector<int> deps(raw_deps);
    std::sort(deps.begin(), deps.end());
    deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
    if (deps.size() > kMaxOutputLocality) throw std::invalid_argument("output locality exceeds cap");
    OutputBit o;
    o.deps = deps;
    o.table.resize(size_t{1} << deps.size());
    std::vector<uint8_t> raw_vals(raw_deps.size());
    for (size_t row = 0; row < o.table.size(); ++row) {
        for (size_t i = 0; i < raw_deps.size(); ++i) {
            size_t pos = static_cast<size_t>(
                std::lower_bound(deps.begin(), deps.end(), raw_deps[i]) - deps.begin());
            raw_vals[i] = (row >> pos) & 1;
        }
        o.table[row] = fn(raw_vals) ? 1 : 0;
    }
    return o;
}

struct Restriction {
    std::map<int, int> fixed;  // input index -> bit value

    std::vector<int> domain() const {
        std::vector<int> s;
        for (auto [k, v] : fixed) s.push_back(k);
        return s;
    }
};

// Partially evaluates f on the fixed inputs; locality never increases.
inline LocalFunction restrict_function(const LocalFunction& f, const Restriction& rho) {
    for (auto [k, v] : rho.fixed)
        if (k < 0 || k >= f.input_count()) throw std::invalid_argument("restriction index out of range");
    std::vector<OutputBit> outs;
    for (const auto& o : f.outputs()) {
        OutputBit no;
        std::vector<size_t> kept_pos;
        size_t fixed_row_bits = 0;
        for (size_t k = 0; k < o.deps.size(); ++k) {
            auto it = rho.fixed.find(o.deps[k]);
            if (it == rho.fixed.end()) {
                no.deps.push_back(o.deps[k]);
                kept_pos.push_back(k);
            } else if (it->second) {
                fixed_row_bits |= size_t{1} << k;
            }
        }
        no.table.resize(size_t{1} << no.deps.size());
        for (size_t row = 0; row < no.table.size(); ++row) {
            size_t full = fixed_row_bits;
            for (size_t k = 0; k < kept_pos.size(); ++k)
                if ((row >> k) & 1) full |= size_t{1} << kept_pos[k];
            no.table[row] = o.table[full];
        }
        outs.push_back(std::move(no));
    }
    return LocalFunction(f.input_count(), std::move(outs));
}

// outer(inner(.)): outer's inputs are inner's outputs.
inline LocalFunction compose(const LocalFunction& outer, const LocalFunction& inner) {
    if (outer.input_count() != inner.output_count())
        throw std::invalid_argument("compose arity mismatch");
    std::vector<OutputBit> outs;
    for (const auto& g : outer.outputs()) {
        std::set<int> dep_set;
        for (int d : g.deps)
            for (int e : inner.output(d).deps) dep_set.insert(e);
        std::vector<int> deps(dep_set.begin(), dep_set.end());
        if (deps.size() > kMaxOutputLocality)
            throw std::invalid_argument("composed output locality exceeds cap");
        OutputBit no;
        no.deps = deps;
        no.table.resize(size_t{1} << deps.size());
        for (size_t row = 0; row < no.table.size(); ++row) {
            BitString partial(static_cast<size_t>(inner.input_count()));
            for (size_t k = 0; k < deps.size(); ++k)
                if ((row >> k) & 1) partial.set(static_cast<size_t>(deps[k]), true);
            size_t grow = 0;
            for (size_t k = 0; k < g.deps.size(); ++k)
                if (inner.eval_output(g.deps[k], partial)) grow |= size_t{1} << k;
            no.table[row] = g.table[grow];
        }
        outs.push_back(std::move(no));
    }
    return LocalFunction(inner.input_count(), std::move(outs));
}

// Exact output distribution of f on a product input.  Enumerates only the
// live inputs; dead inputs integrate out.
inline ExactDist output_dist(const LocalFunction& f, const ProductDist& pi,
                             int budget_bits = kDefaultBudgetBits) {
    if (pi.len() != static_cast<size_t>(f.input_count()))
        throw std::invalid_argument("input distribution length mismatch");
    std::vector<int> live = f.live_inputs();
    check_budget(static_cast<long>(live.size()), budget_bits);
    ExactDist::Pmf pmf;
    BitString input(static_cast<size_t>(f.input_count()));
    for (uint64_t a = 0; a < (uint64_t{1} << live.size()); ++a) {
        Dyadic mass = Dyadic::one();
        for (size_t k = 0; k < live.size(); ++k) {
            bool bit = (a >> k) & 1;
            input.set(static_cast<size_t>(live[k]), bit);
            mass *= bit ? pi.bias(static_cast<size_t>(live[k]))
                        : Dyadic::one() - pi.bias(static_cast<size_t>(live[k]));
        }
        if (mass.is_zero()) continue;
        BitString out = f.evaluate(input);
        auto [it, inserted] = pmf.emplace(out, mass);
        if (!inserted) it->second += mass;
    }
    return ExactDist(static_cast<size_t>(f.output_count()), std::move(pmf));
}

// f applied to (base x unbiased aux): the first base.len() inputs are drawn
// from base, the remaining inputs are fresh unbiased bits.
inline ExactDist output_dist_on(const LocalFunction& f, const ExactDist& base,
                                int budget_bits = kDefaultBudgetBits) {
    int aux = f.input_count() - static_cast<int>(base.len());
    if (aux < 0) throw std::invalid_argument("function has fewer inputs than base distribution");
    check_budget(static_cast<long>(aux), budget_bits);
    ExactDist::Pmf pmf;
    for (const auto& [key, mass] : base.pmf()) {
        for (uint64_t a = 0; a < (uint64_t{1} << aux); ++a) {
            BitString input = key.concat(BitString::from_index(a, static_cast<size_t>(aux)));
            Dyadic m = mass.shifted_down(static_cast<unsigned>(aux));
            BitString out = f.evaluate(input);
            auto [it, inserted] = pmf.emplace(out, m);
            if (!inserted) it->second += m;
        }
    }
    return ExactDist(static_cast<size_t>(f.output_count()), std::move(pmf));
}

// Bipartite dependency graph: left vertices are output bits, right vertices
// are input bits.
struct DepGraph {
    int left_count = 0;
    int right_count = 0;
    std::vector<std::vector<int>> adj;  // left vertex -> sorted input indices

    int left_degree_bound() const {
        size_t d = 0;
        for (const auto& a : adj) d = std::max(d, a.size());
        return static_cast<int>(d);
    }
};

inline DepGraph dep_graph(const LocalFunction& f) {
    DepGraph g;
    g.left_count = f.output_count();
    g.right_count = f.input_count();
    for (const auto& o : f.outputs()) g.adj.push_back(o.deps);
    return g;
}

// Dependency graph restricted to the first n outputs (the x part).
inline DepGraph dep_graph_xpart(const LocalFunction& f, int n) {
    if (n < 0 || n > f.output_count()) throw std::invalid_argument("bad x-part size");
    DepGraph g;
    g.left_count = n;
    g.right_count = f.input_count();
    for (int i = 0; i < n; ++i) g.adj.push_back(f.output(i).deps);
    return g;
}

// N(i) = outputs sharing an input with i, always including i itself.
inline std::vector<int> neighborhood(const DepGraph& g, int i,
                                     const std::vector<int>& deleted_inputs = {}) {
    std::set<int> del(deleted_inputs.begin(), deleted_inputs.end());
    std::set<int> mine;
    for (int d : g.adj[i])
        if (!del.count(d)) mine.insert(d);
    std::vector<int> result{i};
    for (int j = 0; j < g.left_count; ++j) {
        if (j == i) continue;
        for (int d : g.adj[j]) {
            if (mine.count(d)) {
                result.push_back(j);
                break;
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

// Checks that f(pi) equals the mixture over all fixings of S of the restricted
// functions, weighted by pi's mass on the fixing.  Exact equality.
inline bool decompose_check(const LocalFunction& f, const ProductDist& pi, const std::vector<int>& s,
                            int budget_bits = kDefaultBudgetBits) {
    if (s.size() > 12) throw BudgetExceeded("restriction set too large");
    ExactDist whole = output_dist(f, pi, budget_bits);
    std::vector<Dyadic> weights;
    std::vector<ExactDist> parts;
    for (uint64_t a = 0; a < (uint64_t{1} << s.size()); ++a) {
        Restriction rho;
        Dyadic w = Dyadic::one();
        for (size_t k = 0; k < s.size(); ++k) {
            int bit = (a >> k) & 1;
            rho.fixed[s[k]] = bit;
            w *= bit ? pi.bias(static_cast<size_t>(s[k]))
                     : Dyadic::one() - pi.bias(static_cast<size_t>(s[k]));
        }
        if (w.is_zero()) continue;
        weights.push_back(w);
        parts.push_back(output_dist(restrict_function(f, rho), pi, budget_bits));
    }
    return mix(weights, parts) == whole;
}

}  // namespace qlocal
