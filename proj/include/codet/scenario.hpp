#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "codet/csv.hpp"
#include "codet/errors.hpp"
#include "codet/rng.hpp"
#include "codet/stochastic.hpp"
#include "codet/transfer.hpp"

namespace codet {

/// One simulation configuration: an input source, a transfer function, an
/// intrusion model and the run length. The transfer window must cover the
/// input support exactly.
struct Scenario {
    std::string name;
    InputModel input;
    std::string transfer_name = "quadratic";
    std::vector<double> transfer_coeffs;
    double domain_a = 0.0;
    double domain_b = 1.0;
    IntrusionModel intrusion;
    std::size_t n_max = 300;
    Seed seed;
    std::size_t replications = 1;

    TransferFunction transfer() const {
        return make_transfer(transfer_name, domain_a, domain_b,
                             transfer_coeffs);
    }

    void validate() const {
        input.validate();
        intrusion.validate();
        if (name.empty()) throw BadParametersError("scenario needs a name");
        if (n_max < 2) throw BadParametersError("n_max must be >= 2");
        if (replications < 1) {
            throw BadParametersError("replications must be >= 1");
        }
        if (input.support_lo() != domain_a || input.support_hi() != domain_b) {
            throw BadParametersError(
                "transfer window must cover the input support exactly");
        }
        (void)transfer();
    }
};

namespace detail {

inline std::string input_kind_name(InputModel::Kind k) {
    switch (k) {
        case InputModel::Kind::ScaledBeta: return "scaled_beta";
        case InputModel::Kind::Uniform01: return "uniform01";
        case InputModel::Kind::DeterministicGrid: return "grid";
    }
    return "?";
}

inline std::string intrusion_kind_name(IntrusionModel::Kind k) {
    switch (k) {
        case IntrusionModel::Kind::Degenerate: return "degenerate";
        case IntrusionModel::Kind::Gaussian: return "gaussian";
        case IntrusionModel::Kind::CustomIid: return "custom";
    }
    return "?";
}

} // namespace detail

/// Flat key-value rendering of a scenario (one `key = value` per line).
/// Custom intrusion samplers are code, not data, and cannot be serialized.
inline std::string serialize_scenario(const Scenario& s) {
    if (s.intrusion.kind == IntrusionModel::Kind::CustomIid) {
        throw BadParametersError("custom intrusion models are not serializable");
    }
    std::ostringstream os;
    os << "scenario.name = " << s.name << "\n";
    os << "input.kind = " << detail::input_kind_name(s.input.kind) << "\n";
    switch (s.input.kind) {
        case InputModel::Kind::ScaledBeta:
            os << "input.alpha = " << format_sig12(s.input.alpha) << "\n";
            os << "input.beta = " << format_sig12(s.input.beta) << "\n";
            os << "input.scale = " << format_sig12(s.input.scale) << "\n";
            break;
        case InputModel::Kind::Uniform01:
            break;
        case InputModel::Kind::DeterministicGrid:
            os << "input.a = " << format_sig12(s.input.a) << "\n";
            os << "input.b = " << format_sig12(s.input.b) << "\n";
            break;
    }
    os << "transfer.name = " << s.transfer_name << "\n";
    os << "transfer.a = " << format_sig12(s.domain_a) << "\n";
    os << "transfer.b = " << format_sig12(s.domain_b) << "\n";
    if (!s.transfer_coeffs.empty()) {
        os << "transfer.coeffs = ";
        for (std::size_t k = 0; k < s.transfer_coeffs.size(); ++k) {
            if (k) os << ',';
            os << format_sig12(s.transfer_coeffs[k]);
        }
        os << "\n";
    }
    os << "intrusion.kind = " << detail::intrusion_kind_name(s.intrusion.kind)
       << "\n";
    if (s.intrusion.kind == IntrusionModel::Kind::Gaussian) {
        os << "intrusion.sigma2 = " << format_sig12(s.intrusion.sigma2) << "\n";
    }
    os << "n_max = " << s.n_max << "\n";
    os << "seed = " << s.seed.value << "\n";
    os << "seed.stream = " << s.seed.stream << "\n";
    os << "replications = " << s.replications << "\n";
    return os.str();
}

/// Parse the flat key-value config format. Lines are `key = value`; blank
/// lines and lines starting with `#` are ignored. Unknown and duplicate keys
/// are rejected.
inline Scenario parse_scenario(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view row = detail::strip_cr(line);
        while (!row.empty() && (row.front() == ' ' || row.front() == '\t')) {
            row.remove_prefix(1);
        }
        if (row.empty() || row.front() == '#') continue;
        const auto eq = row.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("config line " + std::to_string(lineno) +
                             ": expected 'key = value'");
        }
        auto trim = [](std::string_view v) {
            while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) {
                v.remove_prefix(1);
            }
            while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) {
                v.remove_suffix(1);
            }
            return std::string(v);
        };
        const std::string key = trim(row.substr(0, eq));
        const std::string value = trim(row.substr(eq + 1));
        if (kv.count(key)) {
            throw ParseError("config line " + std::to_string(lineno) +
                             ": duplicate key '" + key + "'");
        }
        kv[key] = value;
    }

    auto take = [&kv](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw ParseError("config: missing required key '" + key + "'");
        }
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_opt = [&kv](const std::string& key,
                          const std::string& fallback) {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto num = [](const std::string& key, const std::string& v) {
        const auto d = detail::parse_double_field(v);
        if (!d) throw ParseError("config: key '" + key + "': malformed number");
        return *d;
    };
    auto unum = [&num](const std::string& key, const std::string& v) {
        const double d = num(key, v);
        if (d < 0.0 || d != static_cast<double>(static_cast<std::uint64_t>(d))) {
            throw ParseError("config: key '" + key +
                             "': expected a nonnegative integer");
        }
        return static_cast<std::uint64_t>(d);
    };

    Scenario s;
    s.name = take("scenario.name");
    const std::string ikind = take("input.kind");
    if (ikind == "scaled_beta") {
        s.input = InputModel::scaled_beta(
            num("input.alpha", take("input.alpha")),
            num("input.beta", take("input.beta")),
            num("input.scale", take("input.scale")));
    } else if (ikind == "uniform01") {
        s.input = InputModel::uniform01();
    } else if (ikind == "grid") {
        s.input = InputModel::grid(num("input.a", take("input.a")),
                                   num("input.b", take("input.b")));
    } else {
        throw ParseError("config: unknown input.kind '" + ikind + "'");
    }
    s.transfer_name = take("transfer.name");
    s.domain_a = num("transfer.a", take("transfer.a"));
    s.domain_b = num("transfer.b", take("transfer.b"));
    const std::string coeffs = take_opt("transfer.coeffs", "");
    if (!coeffs.empty()) {
        std::string_view rest = coeffs;
        while (true) {
            const auto comma = rest.find(',');
            const std::string_view field = rest.substr(0, comma);
            const auto d = detail::parse_double_field(field);
            if (!d) {
                throw ParseError(
                    "config: key 'transfer.coeffs': malformed number");
            }
            s.transfer_coeffs.push_back(*d);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    const std::string ekind = take("intrusion.kind");
    if (ekind == "degenerate") {
        s.intrusion = IntrusionModel::degenerate();
    } else if (ekind == "gaussian") {
        s.intrusion = IntrusionModel::gaussian(
            num("intrusion.sigma2", take("intrusion.sigma2")));
    } else {
        throw ParseError("config: unknown intrusion.kind '" + ekind + "'");
    }
    s.n_max = static_cast<std::size_t>(unum("n_max", take_opt("n_max", "300")));
    s.seed.value = unum("seed", take_opt("seed", "0"));
    s.seed.stream = unum("seed.stream", take_opt("seed.stream", "0"));
    s.replications = static_cast<std::size_t>(
        unum("replications", take_opt("replications", "1")));

    if (!kv.empty()) {
        throw ParseError("config: unknown key '" + kv.begin()->first + "'");
    }
    s.validate();
    return s;
}

/// FNV-1a hash of the canonical serialization; printed in reports so a run
/// can be matched to its exact configuration.
inline std::uint64_t scenario_hash(const Scenario& s) {
    const std::string text = serialize_scenario(s);
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

/// A named bundle of scenarios that are run and reported together (one
/// bundle per stock figure; Beta-input figures carry three shape panels).
struct Preset {
    std::string name;
    std::string description;
    std::vector<Scenario> panels;
};

namespace detail {

inline Scenario beta_panel(const std::string& preset, double alpha,
                           double beta, double scale, double sigma2,
                           std::uint64_t seed) {
    Scenario s;
    std::ostringstream nm;
    nm << preset << "_" << alpha << "_" << beta;
    s.name = nm.str();
    s.input = InputModel::scaled_beta(alpha, beta, scale);
    s.transfer_name = "quadratic";
    s.domain_a = 0.0;
    s.domain_b = scale;
    s.intrusion = sigma2 > 0.0 ? IntrusionModel::gaussian(sigma2)
                               : IntrusionModel::degenerate();
    s.seed = Seed{seed, 0};
    return s;
}

inline Preset beta_preset(const std::string& name,
                          const std::string& description, double scale,
                          double sigma2, std::uint64_t seed) {
    Preset p;
    p.name = name;
    p.description = description;
    for (const auto& [alpha, beta] :
         {std::pair{2.0, 3.0}, std::pair{2.0, 2.0}, std::pair{3.0, 2.0}}) {
        p.panels.push_back(
            beta_panel(name, alpha, beta, scale, sigma2, seed));
    }
    return p;
}

inline Scenario single_panel(const std::string& name, InputModel input,
                             double a, double b, double sigma2,
                             std::uint64_t seed) {
    Scenario s;
    s.name = name;
    s.input = input;
    s.transfer_name = "quadratic";
    s.domain_a = a;
    s.domain_b = b;
    s.intrusion = sigma2 > 0.0 ? IntrusionModel::gaussian(sigma2)
                               : IntrusionModel::degenerate();
    s.seed = Seed{seed, 0};
    return s;
}

} // namespace detail

/// The stock catalog: eight presets covering clean and compromised runs over
/// Beta, uniform and deterministic-grid inputs. Seeds are fixed so every
/// run replays byte-identically.
inline const std::vector<Preset>& list_presets() {
    static const std::vector<Preset> presets = [] {
        std::vector<Preset> v;
        v.push_back(detail::beta_preset(
            "fig3", "Beta(a,b) inputs on [0,1], quadratic transfer, clean",
            1.0, 0.0, 301));
        v.push_back(detail::beta_preset(
            "fig4",
            "Beta(a,b) inputs on [0,1], quadratic transfer, Gaussian "
            "intrusions (sigma2 = 0.01)",
            1.0, 0.01, 401));
        v.push_back(detail::beta_preset(
            "fig5",
            "(8/5)Beta(a,b) inputs on [0,8/5] (equal transfer endpoints), "
            "Gaussian intrusions (sigma2 = 0.01)",
            1.6, 0.01, 501));
        v.push_back(detail::beta_preset(
            "fig6",
            "(8/5)Beta(a,b) inputs on [0,8/5] (equal transfer endpoints), "
            "clean",
            1.6, 0.0, 601));
        Preset f7n;
        f7n.name = "fig7_noisy";
        f7n.description =
            "deterministic grid on [0,8/5], Gaussian intrusions (sigma2 = "
            "0.01)";
        f7n.panels.push_back(detail::single_panel(
            "fig7_noisy", InputModel::grid(0.0, 1.6), 0.0, 1.6, 0.01, 701));
        v.push_back(f7n);
        Preset f7c;
        f7c.name = "fig7_clean";
        f7c.description = "deterministic grid on [0,8/5], clean";
        f7c.panels.push_back(detail::single_panel(
            "fig7_clean", InputModel::grid(0.0, 1.6), 0.0, 1.6, 0.0, 702));
        v.push_back(f7c);
        Preset f8r;
        f8r.name = "fig8_rand";
        f8r.description =
            "Uniform(0,1] inputs, quadratic transfer, Gaussian intrusions "
            "(sigma2 = 0.01)";
        f8r.panels.push_back(detail::single_panel(
            "fig8_rand", InputModel::uniform01(), 0.0, 1.0, 0.01, 3401));
        v.push_back(f8r);
        Preset f8g;
        f8g.name = "fig8_grid";
        f8g.description =
            "deterministic grid on [0,1], Gaussian intrusions (sigma2 = 0.01)";
        f8g.panels.push_back(detail::single_panel(
            "fig8_grid", InputModel::grid(0.0, 1.0), 0.0, 1.0, 0.01, 3401));
        v.push_back(f8g);
        return v;
    }();
    return presets;
}

inline const Preset& find_preset(const std::string& name) {
    for (const auto& p : list_presets()) {
        if (p.name == name) return p;
    }
    throw UnknownPresetError("unknown scenario preset '" + name + "'");
}

} // namespace codet
