#include "mlbc/ensemble.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"

namespace mlbc {

EnsembleSpec EnsembleSpec::parse(const std::string& json_text, const std::string& base_dir) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::parse_error, "ensemble file: malformed JSON");
    if (!j.contains("interleaver_length"))
        fail(ErrorCode::parse_error, "ensemble file needs 'interleaver_length'");
    EnsembleSpec spec;
    spec.interleaver_length = j["interleaver_length"].get<unsigned>();
    if (spec.interleaver_length == 0)
        fail(ErrorCode::parse_error, "interleaver_length must be >= 1");
    const auto component = [&](const char* key) -> ConvolutionalComponent {
        if (!j.contains(key)) fail(ErrorCode::parse_error, std::string("ensemble file needs '") + key + "'");
        const auto& v = j[key];
        if (v.is_string()) {
            std::filesystem::path p = v.get<std::string>();
            if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
            return ConvolutionalComponent::load(p.string());
        }
        return ConvolutionalComponent::parse(v.dump());
    };
    spec.component1 = component("component1");
    spec.component2 = component("component2");
    return spec;
}

EnsembleSpec EnsembleSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open ensemble file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), std::filesystem::path(path).parent_path().string());
}

Iowef uniform_interleaver_combine(const Iowef& a1, const Iowef& a2, unsigned n_interleaver) {
    if (a1.k != n_interleaver || a2.k != n_interleaver)
        fail(ErrorCode::invalid_argument,
             "uniform_interleaver_combine: component tables must be for input length N");
    if (a1.convention != OutputWeightConvention::parity ||
        a2.convention != OutputWeightConvention::parity)
        fail(ErrorCode::invalid_argument,
             "uniform_interleaver_combine: parity-weight convention required");
    // Dense rows per input weight.
    const auto rows_of = [](const Iowef& a) {
        std::vector<std::vector<long double>> rows;
        for (const auto& [wj, v] : a.terms) {
            const auto [w, j] = wj;
            if (rows.size() <= w) rows.resize(w + 1);
            if (rows[w].size() <= j) rows[w].resize(j + 1, 0.0L);
            rows[w][j] = v;
        }
        return rows;
    };
    const auto r1 = rows_of(a1), r2 = rows_of(a2);
    Iowef out;
    out.n = a1.n + a2.n - n_interleaver;
    out.k = n_interleaver;
    out.convention = OutputWeightConvention::parity;
    const std::size_t w_hi = std::min(r1.size(), r2.size());
    for (std::size_t w = 0; w < w_hi; ++w) {
        if (r1[w].empty() || r2[w].empty()) continue;
        const long double denom = binomial_ld(n_interleaver, static_cast<unsigned>(w));
        std::vector<long double> conv(r1[w].size() + r2[w].size() - 1, 0.0L);
        for (std::size_t j1 = 0; j1 < r1[w].size(); ++j1) {
            if (r1[w][j1] == 0.0L) continue;
            for (std::size_t j2 = 0; j2 < r2[w].size(); ++j2) {
                if (r2[w][j2] == 0.0L) continue;
                conv[j1 + j2] += r1[w][j1] * r2[w][j2];
            }
        }
        for (std::size_t j = 0; j < conv.size(); ++j) {
            if (conv[j] != 0.0L) out.terms[{static_cast<unsigned>(w), static_cast<unsigned>(j)}] =
                conv[j] / denom;
        }
    }
    return out;
}

EnsembleSpectrumResult ensemble_spectrum(const EnsembleSpec& spec, unsigned w_max,
                                         unsigned d_max) {
    const unsigned N = spec.interleaver_length;
    w_max = std::min({w_max, d_max, N});
    EnsembleSpectrumResult res;
    const auto run = [&](const ConvolutionalComponent& c) {
        return conv_iowef(c, N, w_max, d_max);
    };
    const ConvIowefResult t1 = run(spec.component1);
    // Identical components share one DP pass.
    const bool same = spec.component1.feedback == spec.component2.feedback &&
                      spec.component1.feedforward == spec.component2.feedforward &&
                      spec.component1.termination == spec.component2.termination;
    const ConvIowefResult t2 = same ? t1 : run(spec.component2);
    res.w_truncated = t1.w_truncated || t2.w_truncated;
    res.j_truncated = t1.j_truncated || t2.j_truncated;

    Iowef combined = uniform_interleaver_combine(t1.iowef, t2.iowef, N);
    // Drop total weights beyond the cap; their mass is accounted below.
    Iowef capped;
    capped.n = combined.n;
    capped.k = combined.k;
    capped.convention = combined.convention;
    for (const auto& [wj, v] : combined.terms) {
        if (wj.first + wj.second <= d_max) capped.terms[wj] = v;
    }
    res.iowef = std::move(capped);
    res.spectrum = res.iowef.marginal_spectrum();
    res.computed_mass = res.iowef.total();
    res.missing_mass = powl(2.0L, static_cast<long double>(N)) - res.computed_mass;
    res.assumptions = {
        "components-terminated-independently",
        "termination-bits-counted-as-parity-weight",
        "uniform-interleaver-over-information-block",
    };
    if (spec.component1.termination == Termination::truncate ||
        spec.component2.termination == Termination::truncate) {
        res.assumptions[0] = "components-truncated-without-termination";
    }
    return res;
}

}  // namespace mlbc
