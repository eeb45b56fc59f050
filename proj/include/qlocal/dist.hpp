#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bitstring.hpp"
#include "budget.hpp"
#include "dyadic.hpp"
#include "rng.hpp"

namespace qlocal {

// Exact probability mass function over fixed-length bit strings.  Zero-mass
// entries are never stored; masses always sum to exactly 1.
class ExactDist {
  public:
    using Pmf = std::map<BitString, Dyadic>;

    ExactDist() : len_(0) { pmf_[BitString(0)] = Dyadic::one(); }

    ExactDist(size_t len, Pmf pmf) : len_(len) {
        Dyadic total;
        for (auto& [key, mass] : pmf) {
            if (key.size() != len) throw std::invalid_argument("pmf key length mismatch");
            if (mass.sign() < 0) throw std::invalid_argument("negative mass");
            if (mass.is_zero()) continue;
            total += mass;
            pmf_.emplace(key, std::move(mass));
        }
        if (total != Dyadic::one()) throw std::invalid_argument("pmf does not sum to 1: " + total.to_string());
    }

    static ExactDist point_mass(const BitString& x) {
        Pmf pmf;
        pmf[x] = Dyadic::one();
        return ExactDist(x.size(), std::move(pmf));
    }

    static ExactDist uniform(size_t len, int budget_bits = kDefaultBudgetBits) {
        check_budget(static_cast<long>(len), budget_bits);
        Pmf pmf;
        for (uint64_t i = 0; i < (uint64_t{1} << len); ++i)
            pmf[BitString::from_index(i, len)] = Dyadic::pow2(static_cast<unsigned>(len));
        return ExactDist(len, std::move(pmf));
    }

    size_t len() const { return len_; }
    const Pmf& pmf() const { return pmf_; }
    size_t support_size() const { return pmf_.size(); }

    Dyadic mass(const BitString& x) const {
        auto it = pmf_.find(x);
        return it == pmf_.end() ? Dyadic::zero() : it->second;
    }

    friend bool operator==(const ExactDist& a, const ExactDist& b) {
        return a.len_ == b.len_ && a.pmf_ == b.pmf_;
    }

  private:
    size_t len_;
    Pmf pmf_;
};

// Product of independent bits; bias i is the probability that bit i is 1.
class ProductDist {
  public:
    ProductDist() = default;
    explicit ProductDist(std::vector<Dyadic> biases) : biases_(std::move(biases)) {
        for (const auto& b : biases_)
            if (b.sign() < 0 || Dyadic::one() < b) throw std::invalid_argument("bias outside [0,1]");
    }

    static ProductDist unbiased(size_t n) { return ProductDist(std::vector<Dyadic>(n, Dyadic::one_half())); }
    static ProductDist biased(size_t n, const Dyadic& gamma) { return ProductDist(std::vector<Dyadic>(n, gamma)); }

    size_t len() const { return biases_.size(); }
    const Dyadic& bias(size_t i) const { return biases_[i]; }
    const std::vector<Dyadic>& biases() const { return biases_; }

    Dyadic mass_of(const BitString& x) const {
        if (x.size() != biases_.size()) throw std::invalid_argument("length mismatch");
        Dyadic m = Dyadic::one();
        for (size_t i = 0; i < biases_.size(); ++i)
            m *= x.get(i) ? biases_[i] : Dyadic::one() - biases_[i];
        return m;
    }

    ExactDist expand(int budget_bits = kDefaultBudgetBits) const {
        size_t n = biases_.size();
        check_budget(static_cast<long>(n), budget_bits);
        ExactDist::Pmf pmf;
        for (uint64_t i = 0; i < (uint64_t{1} << n); ++i) {
            BitString key = BitString::from_index(i, n);
            Dyadic m = mass_of(key);
            if (!m.is_zero()) pmf[key] = m;
        }
        return ExactDist(n, std::move(pmf));
    }

  private:
    std::vector<Dyadic> biases_;
};

// Half L1 distance, computed exactly.
inline Dyadic tv_distance(const ExactDist& p, const ExactDist& q) {
    if (p.len() != q.len()) throw std::invalid_argument("tv_distance length mismatch");
    Dyadic sum;
    auto it = p.pmf().begin();
    auto jt = q.pmf().begin();
    while (it != p.pmf().end() || jt != q.pmf().end()) {
        if (jt == q.pmf().end() || (it != p.pmf().end() && it->first < jt->first)) {
            sum += it->second;
            ++it;
        } else if (it == p.pmf().end() || jt->first < it->first) {
            sum += jt->second;
            ++jt;
        } else {
            sum += (it->second - jt->second).abs();
            ++it;
            ++jt;
        }
    }
    return sum.shifted_down(1);
}

// max_E p(E) - q(E), realized by the event {x : p(x) > q(x)}.
inline Dyadic tv_best_event_gap(const ExactDist& p, const ExactDist& q) {
    if (p.len() != q.len()) throw std::invalid_argument("length mismatch");
    Dyadic sum;
    for (const auto& [key, mass] : p.pmf()) {
        Dyadic diff = mass - q.mass(key);
        if (diff.sign() > 0) sum += diff;
    }
    return sum;
}

inline bool tv_event_characterization_check(const ExactDist& p, const ExactDist& q) {
    if (p.support_size() + q.support_size() > (size_t{1} << 20))
        throw BudgetExceeded("combined support too large");
    return tv_best_event_gap(p, q) == tv_distance(p, q);
}

inline ExactDist marginal(const ExactDist& p, const std::vector<int>& coords) {
    if (coords.empty()) throw std::invalid_argument("empty coordinate set");
    for (int c : coords)
        if (c < 0 || static_cast<size_t>(c) >= p.len()) throw std::invalid_argument("coordinate out of range");
    ExactDist::Pmf pmf;
    for (const auto& [key, mass] : p.pmf()) {
        BitString proj = key.project(coords);
        auto [it, inserted] = pmf.emplace(proj, mass);
        if (!inserted) it->second += mass;
    }
    return ExactDist(coords.size(), std::move(pmf));
}

inline ExactDist mix(const std::vector<Dyadic>& weights, const std::vector<ExactDist>& dists) {
    if (weights.size() != dists.size() || dists.empty()) throw std::invalid_argument("mix arity mismatch");
    Dyadic total;
    for (const auto& w : weights) {
        if (w.sign() < 0) throw std::invalid_argument("negative mixture weight");
        total += w;
    }
    if (total != Dyadic::one()) throw std::invalid_argument("mixture weights do not sum to 1");
    size_t len = dists[0].len();
    ExactDist::Pmf pmf;
    for (size_t i = 0; i < dists.size(); ++i) {
        if (dists[i].len() != len) throw std::invalid_argument("mix length mismatch");
        if (weights[i].is_zero()) continue;
        for (const auto& [key, mass] : dists[i].pmf()) {
            auto [it, inserted] = pmf.emplace(key, weights[i] * mass);
            if (!inserted) it->second += weights[i] * mass;
        }
    }
    return ExactDist(len, std::move(pmf));
}

inline ExactDist product(const ExactDist& p, const ExactDist& q, int budget_bits = kDefaultBudgetBits) {
    check_budget(static_cast<long>(p.len() + q.len()), budget_bits);
    ExactDist::Pmf pmf;
    for (const auto& [kp, mp] : p.pmf())
        for (const auto& [kq, mq] : q.pmf()) pmf[kp.concat(kq)] = mp * mq;
    return ExactDist(p.len() + q.len(), std::move(pmf));
}

inline ExactDist kfold(const ExactDist& p, int k, int budget_bits = kDefaultBudgetBits) {
    if (k < 1) throw std::invalid_argument("kfold needs k >= 1");
    ExactDist r = p;
    for (int i = 1; i < k; ++i) r = product(r, p, budget_bits);
    return r;
}

// Deterministic inverse-CDF sampling; iteration order of the pmf fixes the
// cumulative layout, so identical seeds give identical sequences.
inline std::vector<BitString> sample(const ExactDist& p, uint64_t seed, size_t count) {
    unsigned max_exp = 0;
    for (const auto& [key, mass] : p.pmf()) max_exp = std::max(max_exp, mass.denom_exp());
    std::vector<std::pair<mpz_class, const BitString*>> cdf;
    cdf.reserve(p.support_size());
    mpz_class cum = 0;
    for (const auto& [key, mass] : p.pmf()) {
        cum += mass.num() << (max_exp - mass.denom_exp());
        cdf.emplace_back(cum, &key);
    }
    SplitMix64 rng(seed);
    std::vector<BitString> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        mpz_class r = rng.uniform_bits(max_exp);
        size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (cdf[mid].first <= r)
                lo = mid + 1;
            else
                hi = mid;
        }
        out.push_back(*cdf[lo].second);
    }
    return out;
}

inline std::vector<BitString> sample(const ProductDist& p, uint64_t seed, size_t count) {
    SplitMix64 rng(seed);
    std::vector<BitString> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        BitString x(p.len());
        for (size_t j = 0; j < p.len(); ++j) x.set(j, rng.bernoulli(p.bias(j)));
        out.push_back(std::move(x));
    }
    return out;
}

// Empirical distribution of a sample set, for convergence checks.
inline ExactDist empirical(const std::vector<BitString>& samples) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    std::map<BitString, size_t> counts;
    for (const auto& s : samples) ++counts[s];
    // total = 2^k * odd is not guaranteed, so scale by exact count ratio:
    // represent count/total only when total is a power of two; otherwise fall
    // back to the closest dyadic with 40 fractional bits.  Tests that need
    // exactness use power-of-two sample counts.
    size_t total = samples.size();
    ExactDist::Pmf pmf;
    if ((total & (total - 1)) == 0) {
        unsigned e = 0;
        while ((size_t{1} << e) < total) ++e;
        for (auto& [key, c] : counts) pmf[key] = Dyadic(mpz_class(static_cast<unsigned long>(c)), e);
        return ExactDist(samples[0].size(), std::move(pmf));
    }
    throw std::invalid_argument("empirical() needs a power-of-two sample count");
}

}  // namespace qlocal
