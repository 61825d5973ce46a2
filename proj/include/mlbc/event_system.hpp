#ifndef MLBC_EVENT_SYSTEM_HPP
#define MLBC_EVENT_SYSTEM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mlbc {

/// Finite probability space with named events as atom-membership masks;
/// at most 64 atoms.
struct EventSystem {
    std::vector<double> probabilities;   // per atom, sums to 1
    std::vector<std::uint64_t> events;   // membership mask per event

    std::size_t atom_count() const { return probabilities.size(); }
    std::size_t event_count() const { return events.size(); }
    unsigned degree(std::size_t atom) const;
    double event_probability(std::size_t i) const;
    double pair_probability(std::size_t i, std::size_t j) const;
    /// Exhaustive P(union of all events).
    double exact_union() const;

    void validate() const;
    static EventSystem parse(const std::string& json_text);
    static EventSystem load(const std::string& path);
    std::string to_json() const;
};

/// de Caen's lower bound on P(union): sum_i P(A_i)^2 / sum_j P(A_i and A_j);
/// empty events contribute zero.
double decaen_bound(const EventSystem& sys);

/// Cohen-Merhav lower bound with per-event atom weights m_i(x) >= 0:
///   sum_i ( sum_{x in A_i} p m_i )^2 / ( sum_{x in A_i} p m_i^2 deg(x) ).
/// An event whose weights vanish on all its atoms contributes zero; the
/// optional flag reports that.
double cohen_merhav_bound(const EventSystem& sys,
                          const std::vector<std::vector<double>>& weights,
                          bool* zero_weight_event = nullptr);

/// The equality choice m*(x) = 1/deg(x), which turns the bound into the
/// exact union probability.
std::vector<std::vector<double>> equality_weights(const EventSystem& sys);

}  // namespace mlbc

#endif
