#include "mlbc/event_system.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlbc/errors.hpp"

namespace mlbc {

unsigned EventSystem::degree(std::size_t atom) const {
    unsigned deg = 0;
    const std::uint64_t bit = std::uint64_t{1} << atom;
    for (std::uint64_t e : events) deg += (e & bit) ? 1 : 0;
    return deg;
}

double EventSystem::event_probability(std::size_t i) const {
    double p = 0.0;
    for (std::size_t x = 0; x < atom_count(); ++x)
        if ((events[i] >> x) & 1) p += probabilities[x];
    return p;
}

double EventSystem::pair_probability(std::size_t i, std::size_t j) const {
    const std::uint64_t both = events[i] & events[j];
    double p = 0.0;
    for (std::size_t x = 0; x < atom_count(); ++x)
        if ((both >> x) & 1) p += probabilities[x];
    return p;
}

double EventSystem::exact_union() const {
    std::uint64_t any = 0;
    for (std::uint64_t e : events) any |= e;
    double p = 0.0;
    for (std::size_t x = 0; x < atom_count(); ++x)
        if ((any >> x) & 1) p += probabilities[x];
    return p;
}

void EventSystem::validate() const {
    if (probabilities.empty() || probabilities.size() > 64)
        fail(ErrorCode::invalid_argument, "event system needs 1..64 atoms");
    double total = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0)) fail(ErrorCode::invalid_argument, "atom probabilities must be >= 0");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-9)
        fail(ErrorCode::invalid_argument, "atom probabilities must sum to 1");
    const std::uint64_t legal =
        probabilities.size() == 64 ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << probabilities.size()) - 1;
    for (std::uint64_t e : events)
        if (e & ~legal) fail(ErrorCode::invalid_argument, "event references a missing atom");
}

EventSystem EventSystem::parse(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::parse_error, "event system: malformed JSON");
    if (!j.contains("probabilities") || !j.contains("events"))
        fail(ErrorCode::parse_error, "event system needs 'probabilities' and 'events'");
    EventSystem sys;
    for (const auto& p : j["probabilities"]) sys.probabilities.push_back(p.get<double>());
    for (const auto& ev : j["events"]) {
        std::uint64_t mask = 0;
        for (const auto& atom : ev) {
            const auto a = atom.get<std::size_t>();
            if (a >= sys.probabilities.size())
                fail(ErrorCode::parse_error, "event atom index out of range");
            mask |= std::uint64_t{1} << a;
        }
        sys.events.push_back(mask);
    }
    sys.validate();
    return sys;
}

EventSystem EventSystem::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open event system file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string EventSystem::to_json() const {
    nlohmann::json j;
    j["probabilities"] = probabilities;
    j["events"] = nlohmann::json::array();
    for (std::uint64_t e : events) {
        nlohmann::json atoms = nlohmann::json::array();
        for (std::size_t x = 0; x < atom_count(); ++x)
            if ((e >> x) & 1) atoms.push_back(x);
        j["events"].push_back(atoms);
    }
    return j.dump(2) + "\n";
}

double decaen_bound(const EventSystem& sys) {
    sys.validate();
    if (sys.events.empty()) fail(ErrorCode::invalid_argument, "decaen_bound: no events");
    double bound = 0.0;
    for (std::size_t i = 0; i < sys.event_count(); ++i) {
        const double pi = sys.event_probability(i);
        if (pi <= 0.0) continue;
        double denom = 0.0;
        for (std::size_t j = 0; j < sys.event_count(); ++j)
            denom += sys.pair_probability(i, j);
        bound += pi * pi / denom;
    }
    return bound;
}

double cohen_merhav_bound(const EventSystem& sys,
                          const std::vector<std::vector<double>>& weights,
                          bool* zero_weight_event) {
    sys.validate();
    if (weights.size() != sys.event_count())
        fail(ErrorCode::invalid_argument, "cohen_merhav_bound: one weight vector per event");
    if (zero_weight_event) *zero_weight_event = false;
    double bound = 0.0;
    for (std::size_t i = 0; i < sys.event_count(); ++i) {
        const auto& m = weights[i];
        if (m.size() != sys.atom_count())
            fail(ErrorCode::invalid_argument, "cohen_merhav_bound: weight vector length != atoms");
        double num = 0.0, den = 0.0, prob = 0.0;
        for (std::size_t x = 0; x < sys.atom_count(); ++x) {
            if (!((sys.events[i] >> x) & 1)) continue;
            if (!(m[x] >= 0.0))
                fail(ErrorCode::invalid_argument, "cohen_merhav_bound: weights must be >= 0");
            const double p = sys.probabilities[x];
            prob += p;
            num += p * m[x];
            den += p * m[x] * m[x] * sys.degree(x);
        }
        if (den <= 0.0) {
            if (prob > 0.0 && zero_weight_event) *zero_weight_event = true;
            continue;  // contributes nothing
        }
        bound += num * num / den;
    }
    return bound;
}

std::vector<std::vector<double>> equality_weights(const EventSystem& sys) {
    std::vector<double> shared(sys.atom_count(), 0.0);
    for (std::size_t x = 0; x < sys.atom_count(); ++x) {
        const unsigned deg = sys.degree(x);
        shared[x] = deg > 0 ? 1.0 / deg : 0.0;
    }
    return std::vector<std::vector<double>>(sys.event_count(), shared);
}

}  // namespace mlbc
