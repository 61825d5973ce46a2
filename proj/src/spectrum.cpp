#include "mlbc/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlbc/errors.hpp"

namespace mlbc {

namespace {

std::string count_to_string(long double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Lg", v);
    return buf;
}

long double count_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        char* end = nullptr;
        const long double v = std::strtold(s.c_str(), &end);
        if (end == s.c_str()) fail(ErrorCode::parse_error, "bad count string: " + s);
        return v;
    }
    if (j.is_number()) return static_cast<long double>(j.get<double>());
    fail(ErrorCode::parse_error, "count must be a decimal string or number");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io_error, "cannot write file: " + path);
    out << text;
}

nlohmann::json parse_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::parse_error, "malformed JSON document");
    return j;
}

}  // namespace

long double DistanceSpectrum::at(unsigned d) const {
    auto it = terms.find(d);
    return it == terms.end() ? 0.0L : it->second;
}

long double DistanceSpectrum::total() const {
    long double t = 0.0L;
    for (const auto& [d, a] : terms) t += a;
    return t;
}

unsigned DistanceSpectrum::min_nonzero_distance() const {
    for (const auto& [d, a] : terms)
        if (d >= 1 && a > 0.0L) return d;
    fail(ErrorCode::invalid_argument, "spectrum has no nonzero-weight terms");
}

std::string DistanceSpectrum::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    if (k >= 0) j["k"] = k;
    j["terms"] = nlohmann::json::array();
    for (const auto& [d, a] : terms) {
        j["terms"].push_back({{"d", d}, {"count", count_to_string(a)}});
    }
    return j.dump(2) + "\n";
}

DistanceSpectrum DistanceSpectrum::from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    DistanceSpectrum s;
    if (!j.contains("n") || !j.contains("terms"))
        fail(ErrorCode::parse_error, "spectrum document needs 'n' and 'terms'");
    s.n = j["n"].get<std::size_t>();
    s.k = j.value("k", -1LL);
    for (const auto& t : j["terms"]) {
        if (!t.contains("d")) fail(ErrorCode::parse_error, "spectrum term needs 'd'");
        const unsigned d = t["d"].get<unsigned>();
        if (d > s.n) fail(ErrorCode::parse_error, "spectrum term with d > n");
        const long double c = count_from_json(t.at("count"));
        if (c < 0.0L) fail(ErrorCode::parse_error, "negative spectrum count");
        s.terms[d] += c;
    }
    return s;
}

DistanceSpectrum DistanceSpectrum::load(const std::string& path) {
    return from_json(read_file(path));
}

void DistanceSpectrum::store(const std::string& path) const { write_file(path, to_json()); }

long double Iowef::total() const {
    long double t = 0.0L;
    for (const auto& [wj, a] : terms) t += a;
    return t;
}

DistanceSpectrum Iowef::marginal_spectrum() const {
    DistanceSpectrum s;
    s.n = n;
    s.k = static_cast<long long>(k);
    for (const auto& [wj, a] : terms) s.terms[total_weight(wj.first, wj.second)] += a;
    return s;
}

DistanceSpectrum Iowef::bit_weighted_spectrum() const {
    DistanceSpectrum s;
    s.n = n;
    s.k = static_cast<long long>(k);
    for (const auto& [wj, a] : terms) {
        if (wj.first == 0) continue;
        s.terms[total_weight(wj.first, wj.second)] +=
            a * static_cast<long double>(wj.first) / static_cast<long double>(k);
    }
    return s;
}

std::string Iowef::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["convention"] = convention == OutputWeightConvention::parity ? "parity" : "codeword";
    j["terms"] = nlohmann::json::array();
    for (const auto& [wj, a] : terms) {
        j["terms"].push_back({{"w", wj.first}, {"j", wj.second}, {"count", count_to_string(a)}});
    }
    return j.dump(2) + "\n";
}

Iowef Iowef::from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    Iowef t;
    if (!j.contains("n") || !j.contains("k") || !j.contains("terms"))
        fail(ErrorCode::parse_error, "iowef document needs 'n', 'k', 'terms'");
    t.n = j["n"].get<std::size_t>();
    t.k = j["k"].get<std::size_t>();
    const std::string conv = j.value("convention", "parity");
    if (conv == "parity") {
        t.convention = OutputWeightConvention::parity;
    } else if (conv == "codeword") {
        t.convention = OutputWeightConvention::codeword;
    } else {
        fail(ErrorCode::parse_error, "unknown iowef convention: " + conv);
    }
    for (const auto& e : j["terms"]) {
        const unsigned w = e.at("w").get<unsigned>();
        const unsigned jj = e.at("j").get<unsigned>();
        const long double c = count_from_json(e.at("count"));
        if (c < 0.0L) fail(ErrorCode::parse_error, "negative iowef count");
        t.terms[{w, jj}] += c;
    }
    return t;
}

Iowef Iowef::load(const std::string& path) { return from_json(read_file(path)); }

void Iowef::store(const std::string& path) const { write_file(path, to_json()); }

namespace {

constexpr std::size_t kEnumerationGuard = 28;  // keeps 2^k scans tractable

void check_enumeration_guard(const LinearCode& code) {
    if (code.k() > kEnumerationGuard)
        fail(ErrorCode::size_guard, "code dimension too large for exhaustive enumeration (k <= " +
                                        std::to_string(kEnumerationGuard) + ")");
}

}  // namespace

DistanceSpectrum enumerate_spectrum(const LinearCode& code) {
    check_enumeration_guard(code);
    std::vector<long double> counts(code.n() + 1, 0.0L);
    code.for_each_codeword(
        [&](std::uint64_t, const std::vector<std::uint64_t>& cw) { counts[popcount_words(cw)] += 1.0L; });
    DistanceSpectrum s;
    s.n = code.n();
    s.k = static_cast<long long>(code.k());
    for (unsigned d = 0; d <= code.n(); ++d)
        if (counts[d] > 0.0L) s.terms[d] = counts[d];
    return s;
}

Iowef enumerate_iowef(const LinearCode& code) {
    check_enumeration_guard(code);
    if (!code.is_systematic())
        fail(ErrorCode::invalid_argument,
             "IOWEF enumeration needs a systematic generator or an information-bit mask");
    Iowef t;
    t.n = code.n();
    t.k = code.k();
    t.convention = OutputWeightConvention::parity;
    code.for_each_codeword([&](std::uint64_t message, const std::vector<std::uint64_t>& cw) {
        const unsigned w = static_cast<unsigned>(std::popcount(message));
        const unsigned d = popcount_words(cw);
        t.terms[{w, d - w}] += 1.0L;
    });
    return t;
}

void validate_specific_code_spectrum(const DistanceSpectrum& s) {
    if (s.k < 0) fail(ErrorCode::invalid_argument, "spectrum has unknown dimension k");
    if (fabsl(s.at(0) - 1.0L) > 1e-9L)
        fail(ErrorCode::invalid_argument, "specific code must have A_0 = 1");
    const long double expect = powl(2.0L, static_cast<long double>(s.k));
    if (fabsl(s.total() - expect) > 1e-6L * expect)
        fail(ErrorCode::invalid_argument, "spectrum counts do not sum to 2^k");
    for (const auto& [d, a] : s.terms) {
        if (fabsl(a - roundl(a)) > 1e-6L)
            fail(ErrorCode::invalid_argument, "specific-code spectrum has non-integer count");
    }
}

}  // namespace mlbc
