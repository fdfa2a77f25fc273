#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "codet/errors.hpp"
#include "codet/rng.hpp"
#include "codet/sample.hpp"
#include "codet/transfer.hpp"

namespace codet {

/// Source of system inputs: iid scaled Beta draws, iid uniform draws, or the
/// deterministic equispaced grid used for vulnerability testing.
struct InputModel {
    enum class Kind { ScaledBeta, Uniform01, DeterministicGrid };

    Kind kind = Kind::Uniform01;
    double alpha = 1.0;
    double beta = 1.0;
    double scale = 1.0;
    double a = 0.0;
    double b = 1.0;

    static InputModel scaled_beta(double alpha, double beta, double scale) {
        InputModel m;
        m.kind = Kind::ScaledBeta;
        m.alpha = alpha;
        m.beta = beta;
        m.scale = scale;
        return m;
    }

    static InputModel uniform01() {
        InputModel m;
        m.kind = Kind::Uniform01;
        return m;
    }

    static InputModel grid(double a, double b) {
        InputModel m;
        m.kind = Kind::DeterministicGrid;
        m.a = a;
        m.b = b;
        return m;
    }

    double support_lo() const noexcept {
        return kind == Kind::DeterministicGrid ? a : 0.0;
    }

    double support_hi() const noexcept {
        switch (kind) {
            case Kind::ScaledBeta: return scale;
            case Kind::Uniform01: return 1.0;
            case Kind::DeterministicGrid: return b;
        }
        return 1.0;
    }

    void validate() const {
        switch (kind) {
            case Kind::ScaledBeta:
                if (!(alpha > 0.0) || !(beta > 0.0) || !(scale > 0.0)) {
                    throw BadParametersError(
                        "scaled beta requires alpha, beta, scale > 0");
                }
                break;
            case Kind::Uniform01:
                break;
            case Kind::DeterministicGrid:
                if (!(a < b)) {
                    throw BadParametersError("grid requires a < b");
                }
                break;
        }
    }

    friend bool operator==(const InputModel&, const InputModel&) = default;
};

/// Additive output disturbance: none, centred Gaussian, or a caller-supplied
/// iid sampler (which must have mean 0 and finite variance).
struct IntrusionModel {
    enum class Kind { Degenerate, Gaussian, CustomIid };

    Kind kind = Kind::Degenerate;
    double sigma2 = 0.0;
    std::function<double(RandomEngine&)> sampler;

    static IntrusionModel degenerate() { return IntrusionModel{}; }

    static IntrusionModel gaussian(double sigma2) {
        IntrusionModel m;
        m.kind = Kind::Gaussian;
        m.sigma2 = sigma2;
        return m;
    }

    static IntrusionModel custom(std::function<double(RandomEngine&)> fn) {
        IntrusionModel m;
        m.kind = Kind::CustomIid;
        m.sampler = std::move(fn);
        return m;
    }

    void validate() const {
        if (kind == Kind::Gaussian && !(sigma2 >= 0.0)) {
            throw BadParametersError("gaussian intrusion requires sigma2 >= 0");
        }
        if (kind == Kind::CustomIid && !sampler) {
            throw BadParametersError("custom intrusion requires a sampler");
        }
    }

    bool present() const noexcept {
        return (kind == Kind::Gaussian && sigma2 > 0.0) ||
               kind == Kind::CustomIid;
    }
};

/// Draw n inputs. The grid returns exactly
///   x_k = a + (b - a) * (k - 1) / (n - 1),  k = 1..n,
/// random models draw iid from the seed's input sub-stream.
inline std::vector<double> sample_inputs(const InputModel& model,
                                         std::size_t n, const Seed& seed) {
    model.validate();
    if (n < 1) throw BadParametersError("need at least one input");
    std::vector<double> xs;
    xs.reserve(n);
    switch (model.kind) {
        case InputModel::Kind::DeterministicGrid: {
            if (n < 2) {
                throw BadParametersError("grid requires at least two points");
            }
            // the closing point is pinned to b: rounding in the fraction
            // must not push the grid outside the window
            for (std::size_t k = 0; k + 1 < n; ++k) {
                xs.push_back(model.a + (model.b - model.a) *
                                           static_cast<double>(k) /
                                           static_cast<double>(n - 1));
            }
            xs.push_back(model.b);
            break;
        }
        case InputModel::Kind::ScaledBeta: {
            RandomEngine eng(seed, kInputPurpose);
            for (std::size_t k = 0; k < n; ++k) {
                xs.push_back(model.scale * eng.beta(model.alpha, model.beta));
            }
            break;
        }
        case InputModel::Kind::Uniform01: {
            RandomEngine eng(seed, kInputPurpose);
            for (std::size_t k = 0; k < n; ++k) xs.push_back(eng.uniform01());
            break;
        }
    }
    return xs;
}

/// Draw n intrusion values from the seed's intrusion sub-stream.
inline std::vector<double> sample_intrusions(const IntrusionModel& intrusion,
                                             std::size_t n, const Seed& seed) {
    intrusion.validate();
    std::vector<double> eps(n, 0.0);
    if (intrusion.kind == IntrusionModel::Kind::Degenerate) return eps;
    RandomEngine eng(seed, kIntrusionPurpose);
    if (intrusion.kind == IntrusionModel::Kind::Gaussian) {
        const double sigma = std::sqrt(intrusion.sigma2);
        for (auto& e : eps) e = sigma * eng.normal();
    } else {
        for (auto& e : eps) e = intrusion.sampler(eng);
    }
    return eps;
}

/// Pass inputs through the transfer function and add one intrusion draw per
/// output: pairs (x_k, h(x_k) + eps_k). Intrusions come from their own
/// sub-stream of the seed, independent of any input draws.
inline PairedSample generate_outputs(const TransferFunction& h,
                                     std::span<const double> x,
                                     const IntrusionModel& intrusion,
                                     const Seed& seed) {
    for (double xi : x) {
        if (!h.in_domain(xi)) {
            throw DomainViolationError("input " + std::to_string(xi) +
                                       " outside transfer window of '" +
                                       h.name + "'");
        }
    }
    const std::vector<double> eps = sample_intrusions(intrusion, x.size(), seed);
    PairedSample out;
    out.pairs.reserve(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        out.pairs.emplace_back(x[k], h.eval(x[k]) + eps[k]);
    }
    return out;
}

} // namespace codet
