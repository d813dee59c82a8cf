#pragma once

// Weight sequences for the weighted Hardy spaces under study.  A weight
// model is either the parametric family w_k = (k+1)^alpha (alpha = -1, 0, 1
// give the Bergman, Hardy and Dirichlet norms) or a user-supplied table.
// The model also materializes the partial sums S_n = sum_{k<=n} 1/w_k, which
// drive every asymptotic quantity downstream.

#include <cstddef>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opalab/precision.hpp"

namespace opalab {

enum class weight_family { dirichlet, table };

enum class divergence_verdict {
    diverges_analytically,    // sum 1/w_k provably diverges for this family
    converges_analytically,   // provably converges: the space is too small to be useful here
    inconclusive              // finite data only; no analytic form available
};

template <class P> struct growth_sample {
    std::size_t n = 0;
    typename P::real sup_ratio{};       // sup_{k<=n} w_n / w_k
    typename P::real sup_over_power{};  // sup_ratio / n^{1+eps}
};

/// Diagnostic report for the structural conditions a usable weight must
/// satisfy.  `normalized` and `monotone` are hard gates; the remaining
/// entries are finite-sample trend diagnostics and, for tables, can only
/// ever support an "inconclusive" verdict.
template <class P> struct admissibility_report {
    using R = typename P::real;

    bool normalized = false;  // w_0 == 1 exactly
    bool monotone = false;    // non-decreasing or non-increasing over the checked prefix

    // (n, w_n / w_{n - floor(sqrt(n))}) at logarithmically spaced n.
    std::vector<std::pair<std::size_t, R>> ratio_samples;
    bool ratio_trend_ok = false;

    // (n, S_n) at the same checkpoints.
    std::vector<std::pair<std::size_t, R>> sum_checkpoints;
    divergence_verdict verdict = divergence_verdict::inconclusive;

    std::vector<growth_sample<P>> growth_samples;
    R epsilon{};

    bool hard_pass() const { return normalized && monotone; }
};

template <class P> class weight_model {
  public:
    using R = typename P::real;

    static weight_model dirichlet(R alpha) {
        weight_model w;
        w.kind_ = weight_family::dirichlet;
        w.alpha_ = alpha;
        w.state_ = std::make_shared<shared_state>();
        return w;
    }

    /// Table weights are used verbatim; every index that a computation needs
    /// must be present, there is no tail extrapolation.
    static weight_model table(std::vector<R> values) {
        if (values.empty()) throw std::invalid_argument("weight table must not be empty");
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (!(values[k] > R(0)))
                throw std::invalid_argument("weight table entries must be positive (index " +
                                            std::to_string(k) + ")");
        }
        weight_model w;
        w.kind_ = weight_family::table;
        w.table_ = std::move(values);
        w.state_ = std::make_shared<shared_state>();
        return w;
    }

    weight_family family() const { return kind_; }

    R alpha() const {
        if (kind_ != weight_family::dirichlet)
            throw std::logic_error("alpha() is only defined for the dirichlet family");
        return alpha_;
    }

    std::size_t table_size() const { return table_.size(); }

    R weight_at(std::size_t k) const {
        if (kind_ == weight_family::dirichlet) {
            using std::pow;
            return pow(R(static_cast<double>(k) + 1.0), alpha_);
        }
        if (k >= table_.size())
            throw std::out_of_range("weight table of length " + std::to_string(table_.size()) +
                                    " has no entry for index " + std::to_string(k) +
                                    "; a table of length at least " + std::to_string(k + 1) +
                                    " is required");
        return table_[k];
    }

    /// S_n = sum_{k<=n} 1/w_k.  Cached; the cache is extended sequentially so
    /// repeated calls return bit-identical values regardless of call order,
    /// and the lock makes concurrent sweeps safe.
    R partial_sum(std::size_t n) const {
        std::lock_guard<std::mutex> lock(state_->mu);
        auto& sums = state_->sums;
        if (sums.empty()) sums.push_back(R(1) / weight_at(0));
        while (sums.size() <= n) {
            const std::size_t k = sums.size();
            sums.push_back(sums.back() + R(1) / weight_at(k));
        }
        return sums[n];
    }

    /// Gate used by the approximant solvers: the underlying space must not be
    /// provably degenerate.  Dirichlet weights with alpha > 1 make sum 1/w_k
    /// converge, which collapses the whole asymptotic theory, so they are
    /// rejected.  Tables must be normalized (w_0 = 1) and monotone.
    void require_usable_for_opa() const {
        if (kind_ == weight_family::dirichlet) {
            if (alpha_ > R(1))
                throw std::domain_error(
                    "weight rejected: sum of reciprocal weights converges for alpha > 1");
            return;
        }
        if (!(table_[0] == R(1)))
            throw std::domain_error("weight rejected: table is not normalized (w_0 != 1)");
        if (!prefix_monotone(table_.size() - 1))
            throw std::domain_error("weight rejected: table is not monotone");
    }

    /// True when w_0..w_n is non-decreasing or non-increasing (ties allowed).
    bool prefix_monotone(std::size_t n) const {
        bool up = true, down = true;
        R prev = weight_at(0);
        for (std::size_t k = 1; k <= n; ++k) {
            const R cur = weight_at(k);
            if (cur < prev) up = false;
            if (cur > prev) down = false;
            prev = cur;
        }
        return up || down;
    }

  private:
    weight_model() = default;

    struct shared_state {
        std::mutex mu;
        std::vector<R> sums;
    };

    weight_family kind_ = weight_family::dirichlet;
    R alpha_{};
    std::vector<R> table_;
    std::shared_ptr<shared_state> state_;
};

namespace detail {
inline std::size_t floor_sqrt(std::size_t n) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::vector<std::size_t> log_checkpoints(std::size_t n_max) {
    std::vector<std::size_t> ns;
    for (std::size_t n = 16; n < n_max; n *= 2) ns.push_back(n);
    ns.push_back(n_max);
    return ns;
}
}  // namespace detail

/// Evaluate the admissibility diagnostics over the prefix [0, n_max].
///
/// The ratio samples probe w_n / w_{n - floor(sqrt(n))}, which must trend to
/// one for an admissible weight; the trend flag compares the deviation at the
/// last checkpoint against the first.  The divergence verdict is analytic for
/// the dirichlet family and "inconclusive" for tables, whose finite prefix
/// can never settle the question.
template <class P>
admissibility_report<P> check_admissibility(const weight_model<P>& w, std::size_t n_max,
                                            typename P::real epsilon) {
    using R = typename P::real;
    if (n_max < 16) throw std::invalid_argument("check_admissibility requires n_max >= 16");
    if (!(epsilon > R(0))) throw std::invalid_argument("check_admissibility requires epsilon > 0");

    admissibility_report<P> rep;
    rep.epsilon = epsilon;
    rep.normalized = (w.weight_at(0) == R(1));
    rep.monotone = w.prefix_monotone(n_max);

    const auto ns = detail::log_checkpoints(n_max);
    for (const std::size_t n : ns) {
        const std::size_t lag = detail::floor_sqrt(n);
        rep.ratio_samples.emplace_back(n, w.weight_at(n) / w.weight_at(n - lag));
        rep.sum_checkpoints.emplace_back(n, w.partial_sum(n));
    }

    {
        using std::abs;
        const R first_dev = abs(rep.ratio_samples.front().second - R(1));
        const R last_dev = abs(rep.ratio_samples.back().second - R(1));
        rep.ratio_trend_ok = (last_dev <= first_dev + R(1e-9)) || (last_dev <= R(1) / R(10));
    }

    if (w.family() == weight_family::dirichlet) {
        rep.verdict = (w.alpha() <= R(1)) ? divergence_verdict::diverges_analytically
                                          : divergence_verdict::converges_analytically;
    } else {
        rep.verdict = divergence_verdict::inconclusive;
    }

    // Growth samples: sup_{k<=n} w_n/w_k against n^{1+eps}.  One pass keeps a
    // running minimum of the weights seen so far.
    {
        using std::pow;
        R running_min = w.weight_at(0);
        std::size_t next = 0;
        for (std::size_t k = 0; k <= n_max && next < ns.size(); ++k) {
            const R wk = w.weight_at(k);
            if (wk < running_min) running_min = wk;
            if (k == ns[next]) {
                growth_sample<P> g;
                g.n = k;
                g.sup_ratio = wk / running_min;
                g.sup_over_power = g.sup_ratio / pow(R(static_cast<double>(k)), R(1) + epsilon);
                rep.growth_samples.push_back(g);
                ++next;
            }
        }
    }

    return rep;
}

}  // namespace opalab
