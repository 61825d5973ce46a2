#include "mlbc.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include <json.hpp>

#include "mlbc/channel.hpp"
#include "mlbc/convolutional.hpp"
#include "mlbc/density.hpp"
#include "mlbc/ensemble.hpp"
#include "mlbc/errors.hpp"
#include "mlbc/event_system.hpp"
#include "mlbc/gallager.hpp"
#include "mlbc/geometric.hpp"
#include "mlbc/linear_code.hpp"
#include "mlbc/ml_lower.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/optimize.hpp"
#include "mlbc/oracles.hpp"
#include "mlbc/spectrum.hpp"

struct mlbc_code {
    mlbc::LinearCode impl;
};
struct mlbc_spectrum {
    mlbc::DistanceSpectrum impl;
    std::vector<std::pair<unsigned, long double>> flat;
    explicit mlbc_spectrum(mlbc::DistanceSpectrum s) : impl(std::move(s)) {
        flat.assign(impl.terms.begin(), impl.terms.end());
    }
};
struct mlbc_iowef {
    mlbc::Iowef impl;
    std::vector<std::pair<std::pair<unsigned, unsigned>, long double>> flat;
    explicit mlbc_iowef(mlbc::Iowef t) : impl(std::move(t)) {
        flat.assign(impl.terms.begin(), impl.terms.end());
    }
};
struct mlbc_channel {
    mlbc::ChannelModel impl;
};
struct mlbc_events {
    mlbc::EventSystem impl;
};
struct mlbc_component {
    mlbc::ConvolutionalComponent impl;
};
struct mlbc_ensemble {
    mlbc::EnsembleSpec impl;
};

namespace {

thread_local std::string g_last_error;

mlbc_status map_code(mlbc::ErrorCode c) {
    switch (c) {
        case mlbc::ErrorCode::invalid_argument:
            return MLBC_ERR_INVALID_ARGUMENT;
        case mlbc::ErrorCode::parse_error:
            return MLBC_ERR_PARSE;
        case mlbc::ErrorCode::io_error:
            return MLBC_ERR_IO;
        case mlbc::ErrorCode::size_guard:
            return MLBC_ERR_SIZE_GUARD;
        case mlbc::ErrorCode::numeric_failure:
            return MLBC_ERR_NUMERIC;
        case mlbc::ErrorCode::unsupported:
            return MLBC_ERR_UNSUPPORTED;
    }
    return MLBC_ERR_NUMERIC;
}

template <typename F>
mlbc_status wrap(F&& f) noexcept {
    try {
        f();
        return MLBC_OK;
    } catch (const mlbc::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MLBC_ERR_NUMERIC;
    } catch (...) {
        g_last_error = "unknown failure";
        return MLBC_ERR_NUMERIC;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

mlbc::Tilting make_tilting(int family, const double* params, size_t count) {
    switch (family) {
        case 0:
            return mlbc::Tilting::uniform();
        case 1:
            if (count < 1) mlbc::fail(mlbc::ErrorCode::invalid_argument,
                                      "exp-llr tilt needs one parameter");
            return mlbc::Tilting::exp_llr(params[0]);
        case 2:
            if (count < 2) mlbc::fail(mlbc::ErrorCode::invalid_argument,
                                      "gaussian tilt needs two parameters");
            return mlbc::Tilting::gaussian(params[0], params[1]);
        default:
            mlbc::fail(mlbc::ErrorCode::invalid_argument, "unknown tilt family");
    }
}

mlbc::TiltFamily family_from_int(int family) {
    switch (family) {
        case 0:
            return mlbc::TiltFamily::uniform;
        case 1:
            return mlbc::TiltFamily::exp_llr;
        case 2:
            return mlbc::TiltFamily::gaussian;
        default:
            mlbc::fail(mlbc::ErrorCode::invalid_argument, "unknown tilt family");
    }
}

std::string ds2_param_json(const mlbc::Ds2Optimum& o) {
    nlohmann::json j;
    j["lambda"] = o.lambda;
    j["rho"] = o.rho;
    j["tilt_family"] = o.tilt.family == mlbc::TiltFamily::uniform   ? "uniform"
                       : o.tilt.family == mlbc::TiltFamily::exp_llr ? "exp-llr"
                                                                    : "gaussian";
    j["tilt"] = o.tilt.params;
    return j.dump();
}

mlbc::Region make_region(int kind, double p1, double p2) {
    switch (kind) {
        case 0:
            return mlbc::Region::whole_space();
        case 1:
            return mlbc::Region::sphere(p1, p2);
        case 2:
            return mlbc::Region::cone(p1);
        default:
            mlbc::fail(mlbc::ErrorCode::invalid_argument, "unknown region kind");
    }
}

std::string geometric_param_json(const mlbc::GeometricBound& g) {
    nlohmann::json j;
    if (g.region.kind == mlbc::Region::Kind::sphere) {
        j["radius"] = g.region.radius;
        j["center_offset"] = g.region.center_offset;
    } else if (g.region.kind == mlbc::Region::Kind::cone) {
        j["half_angle"] = g.region.half_angle;
    }
    j["out_probability"] = g.out_probability;
    j["inner_clipped"] = g.inner_clipped;
    return j.dump();
}

}  // namespace

extern "C" {

const char* mlbc_version(void) { return "0.1.0"; }

const char* mlbc_last_error(void) { return g_last_error.c_str(); }

void mlbc_string_free(char* s) { std::free(s); }

/* ---- codes ---- */

mlbc_status mlbc_code_load(const char* path, mlbc_code** out) {
    return wrap([&] { *out = new mlbc_code{mlbc::LinearCode::load(path)}; });
}

mlbc_status mlbc_code_parse(const char* text, mlbc_code** out) {
    return wrap([&] { *out = new mlbc_code{mlbc::LinearCode::parse(text)}; });
}

mlbc_status mlbc_code_store(const mlbc_code* code, const char* path) {
    return wrap([&] { code->impl.store(path); });
}

void mlbc_code_free(mlbc_code* code) { delete code; }

size_t mlbc_code_n(const mlbc_code* code) { return code->impl.n(); }
size_t mlbc_code_k(const mlbc_code* code) { return code->impl.k(); }
double mlbc_code_rate(const mlbc_code* code) { return code->impl.rate(); }

/* ---- spectra ---- */

mlbc_status mlbc_code_spectrum(const mlbc_code* code, mlbc_spectrum** out) {
    return wrap([&] { *out = new mlbc_spectrum(mlbc::enumerate_spectrum(code->impl)); });
}

mlbc_status mlbc_code_iowef(const mlbc_code* code, mlbc_iowef** out) {
    return wrap([&] { *out = new mlbc_iowef(mlbc::enumerate_iowef(code->impl)); });
}

mlbc_status mlbc_spectrum_load(const char* path, mlbc_spectrum** out) {
    return wrap([&] { *out = new mlbc_spectrum(mlbc::DistanceSpectrum::load(path)); });
}

mlbc_status mlbc_spectrum_store(const mlbc_spectrum* s, const char* path) {
    return wrap([&] { s->impl.store(path); });
}

mlbc_status mlbc_spectrum_to_json(const mlbc_spectrum* s, char** out) {
    return wrap([&] { *out = dup_string(s->impl.to_json()); });
}

void mlbc_spectrum_free(mlbc_spectrum* s) { delete s; }

size_t mlbc_spectrum_n(const mlbc_spectrum* s) { return s->impl.n; }

size_t mlbc_spectrum_term_count(const mlbc_spectrum* s) { return s->flat.size(); }

mlbc_status mlbc_spectrum_term(const mlbc_spectrum* s, size_t index, unsigned* d, double* count,
                               double* log_count) {
    return wrap([&] {
        if (index >= s->flat.size())
            mlbc::fail(mlbc::ErrorCode::invalid_argument, "spectrum term index out of range");
        const auto& [dd, c] = s->flat[index];
        if (d) *d = dd;
        if (count) *count = static_cast<double>(c);
        if (log_count) *log_count = c > 0.0L ? static_cast<double>(logl(c)) : mlbc::kNegInf;
    });
}

/* ---- iowefs ---- */

mlbc_status mlbc_iowef_load(const char* path, mlbc_iowef** out) {
    return wrap([&] { *out = new mlbc_iowef(mlbc::Iowef::load(path)); });
}

mlbc_status mlbc_iowef_store(const mlbc_iowef* t, const char* path) {
    return wrap([&] { t->impl.store(path); });
}

mlbc_status mlbc_iowef_to_json(const mlbc_iowef* t, char** out) {
    return wrap([&] { *out = dup_string(t->impl.to_json()); });
}

void mlbc_iowef_free(mlbc_iowef* t) { delete t; }

size_t mlbc_iowef_term_count(const mlbc_iowef* t) { return t->flat.size(); }

mlbc_status mlbc_iowef_term(const mlbc_iowef* t, size_t index, unsigned* w, unsigned* j,
                            double* count, double* log_count) {
    return wrap([&] {
        if (index >= t->flat.size())
            mlbc::fail(mlbc::ErrorCode::invalid_argument, "iowef term index out of range");
        const auto& [wj, c] = t->flat[index];
        if (w) *w = wj.first;
        if (j) *j = wj.second;
        if (count) *count = static_cast<double>(c);
        if (log_count) *log_count = c > 0.0L ? static_cast<double>(logl(c)) : mlbc::kNegInf;
    });
}

mlbc_status mlbc_iowef_marginal_spectrum(const mlbc_iowef* t, mlbc_spectrum** out) {
    return wrap([&] { *out = new mlbc_spectrum(t->impl.marginal_spectrum()); });
}

/* ---- channels ---- */

mlbc_status mlbc_channel_biawgn(double ebno_db, double rate, mlbc_channel** out) {
    return wrap([&] { *out = new mlbc_channel{mlbc::ChannelModel::biawgn(ebno_db, rate)}; });
}

mlbc_status mlbc_channel_bsc(double crossover, mlbc_channel** out) {
    return wrap([&] { *out = new mlbc_channel{mlbc::ChannelModel::bsc(crossover)}; });
}

void mlbc_channel_free(mlbc_channel* ch) { delete ch; }

mlbc_status mlbc_bhattacharyya(const mlbc_channel* ch, double* out) {
    return wrap([&] { *out = ch->impl.bhattacharyya(); });
}

mlbc_status mlbc_pairwise_error(const mlbc_channel* ch, unsigned d, double* out) {
    return wrap([&] { *out = mlbc::pairwise_error(ch->impl, d); });
}

mlbc_status mlbc_joint_pairwise_error(const mlbc_channel* ch, unsigned w_i, unsigned w_j,
                                      unsigned w_ij, double* out) {
    return wrap([&] { *out = mlbc::joint_pairwise_error(ch->impl, w_i, w_j, w_ij); });
}

/* ---- scalar functions ---- */

double mlbc_q_function(double x) { return mlbc::q_function(x); }

mlbc_status mlbc_h2(double x, double* out) {
    return wrap([&] { *out = mlbc::h2(x); });
}

mlbc_status mlbc_h2_inverse(double y, double* out) {
    return wrap([&] { *out = mlbc::h2_inverse(y); });
}

mlbc_status mlbc_normalized_density(double rate, double delta, double* out) {
    return wrap([&] { *out = mlbc::normalized_density(rate, delta); });
}

mlbc_status mlbc_min_density(double rate, double t_min, double* out) {
    return wrap([&] { *out = mlbc::min_density(rate, t_min); });
}

mlbc_status mlbc_pb_lower_from_entropy(double h_norm, double rate, int rate_normalized,
                                       double* out) {
    return wrap([&] {
        *out = mlbc::pb_lower_from_entropy(h_norm, rate,
                                           rate_normalized ? mlbc::FanoNormalization::rate
                                                           : mlbc::FanoNormalization::one);
    });
}

/* ---- spectrum bounds ---- */

mlbc_status mlbc_union_bound(const mlbc_spectrum* s, const mlbc_channel* ch, double* log_value) {
    return wrap([&] { *log_value = mlbc::union_bound(s->impl, ch->impl).log_value; });
}

mlbc_status mlbc_bhattacharyya_bound(const mlbc_spectrum* s, const mlbc_channel* ch,
                                     double* log_value) {
    return wrap([&] { *log_value = mlbc::union_bhattacharyya_bound(s->impl, ch->impl).log_value; });
}

mlbc_status mlbc_union_tail_estimate(const mlbc_spectrum* s, const mlbc_channel* ch,
                                     double* log_tail) {
    return wrap([&] { *log_tail = mlbc::union_tail_estimate_log(s->impl, ch->impl); });
}

mlbc_status mlbc_ds2_bound(const mlbc_spectrum* s, const mlbc_channel* ch, double lambda,
                           double rho, int tilt_family, const double* tilt_params,
                           size_t tilt_param_count, double* log_value) {
    return wrap([&] {
        const mlbc::Tilting tilt = make_tilting(tilt_family, tilt_params, tilt_param_count);
        *log_value = mlbc::ds2_bound(s->impl, ch->impl, lambda, rho, tilt).log_value;
    });
}

mlbc_status mlbc_ds2_optimize(const mlbc_spectrum* s, const mlbc_channel* ch, int tilt_family,
                              uint64_t seed, double* log_value, char** param_json) {
    return wrap([&] {
        mlbc::Ds2Options opt;
        opt.family = family_from_int(tilt_family);
        opt.seed = seed;
        const mlbc::Ds2Optimum o = mlbc::optimize_ds2(s->impl, ch->impl, opt);
        *log_value = o.bound.log_value;
        if (param_json) *param_json = dup_string(ds2_param_json(o));
    });
}

mlbc_status mlbc_ds2_bit_bound(const mlbc_iowef* t, const mlbc_channel* ch, double lambda,
                               double rho, int tilt_family, const double* tilt_params,
                               size_t tilt_param_count, double* log_value) {
    return wrap([&] {
        const mlbc::Tilting tilt = make_tilting(tilt_family, tilt_params, tilt_param_count);
        *log_value = mlbc::ds2_bit_error_bound(t->impl, ch->impl, lambda, rho, tilt).log_value;
    });
}

mlbc_status mlbc_ds2_bit_optimize(const mlbc_iowef* t, const mlbc_channel* ch, int tilt_family,
                                  uint64_t seed, double* log_value, char** param_json) {
    return wrap([&] {
        mlbc::Ds2Options opt;
        opt.family = family_from_int(tilt_family);
        opt.seed = seed;
        const mlbc::DistanceSpectrum bits = t->impl.bit_weighted_spectrum();
        const mlbc::Ds2Optimum o = mlbc::optimize_ds2(bits, ch->impl, opt);
        *log_value = o.bound.log_value;
        if (param_json) *param_json = dup_string(ds2_param_json(o));
    });
}

mlbc_status mlbc_gallager65_bound(const mlbc_code* code, double crossover, double lambda,
                                  double rho, double* log_value) {
    return wrap([&] {
        *log_value = mlbc::gallager65_bound_bsc(code->impl, crossover, lambda, rho).log_value;
    });
}

mlbc_status mlbc_gallager65_optimize(const mlbc_code* code, double crossover, double* log_value,
                                     char** param_json) {
    return wrap([&] {
        const auto objective = [&](const std::vector<double>& x) {
            return mlbc::gallager65_bound_bsc(code->impl, crossover, x[0], x[1]).log_value;
        };
        const auto box = [](std::size_t i, const std::vector<double>&) {
            return i == 0 ? std::pair<double, double>{0.0, 4.0}
                          : std::pair<double, double>{1e-3, 1.0};
        };
        const mlbc::CoordinateMin m =
            mlbc::coordinate_descent(objective, box, {0.5, 1.0}, 8, 1e-7);
        *log_value = m.value;
        if (param_json) {
            nlohmann::json j;
            j["lambda"] = m.x[0];
            j["rho"] = m.x[1];
            *param_json = dup_string(j.dump());
        }
    });
}

/* ---- geometric bounds ---- */

mlbc_status mlbc_sphere_bound(const mlbc_spectrum* s, const mlbc_channel* ch,
                              int optimize_center, double* value, char** param_json) {
    return wrap([&] {
        const mlbc::GeometricBound g =
            mlbc::sphere_bound(s->impl, ch->impl, std::nullopt, optimize_center != 0);
        *value = g.value;
        if (param_json) *param_json = dup_string(geometric_param_json(g));
    });
}

mlbc_status mlbc_sphere_bound_fixed(const mlbc_spectrum* s, const mlbc_channel* ch,
                                    double radius, double center_offset, int clip_inner,
                                    double* value) {
    return wrap([&] {
        *value = mlbc::region_bound_semi_analytic(
                     s->impl, ch->impl, mlbc::Region::sphere(radius, center_offset),
                     clip_inner != 0)
                     .value;
    });
}

mlbc_status mlbc_tsb_bound(const mlbc_spectrum* s, const mlbc_channel* ch, double* value,
                           char** param_json) {
    return wrap([&] {
        const mlbc::GeometricBound g = mlbc::tsb_bound(s->impl, ch->impl);
        *value = g.value;
        if (param_json) *param_json = dup_string(geometric_param_json(g));
    });
}

mlbc_status mlbc_tsb_bound_fixed(const mlbc_spectrum* s, const mlbc_channel* ch,
                                 double half_angle, int clip_inner, double* value) {
    return wrap([&] {
        *value = mlbc::region_bound_semi_analytic(s->impl, ch->impl,
                                                  mlbc::Region::cone(half_angle), clip_inner != 0)
                     .value;
    });
}

mlbc_status mlbc_region_bound_mc(const mlbc_code* code, const mlbc_channel* ch, int region_kind,
                                 double p1, double p2, uint64_t samples, uint64_t seed,
                                 unsigned workers, double* estimate, double* std_error) {
    return wrap([&] {
        const mlbc::OracleResult r = mlbc::region_bound_mc(
            code->impl, ch->impl, make_region(region_kind, p1, p2), samples, seed, workers);
        *estimate = r.estimate;
        if (std_error) *std_error = r.std_error;
    });
}

/* ---- lower bounds ---- */

mlbc_status mlbc_events_load(const char* path, mlbc_events** out) {
    return wrap([&] { *out = new mlbc_events{mlbc::EventSystem::load(path)}; });
}

mlbc_status mlbc_events_parse(const char* text, mlbc_events** out) {
    return wrap([&] { *out = new mlbc_events{mlbc::EventSystem::parse(text)}; });
}

void mlbc_events_free(mlbc_events* sys) { delete sys; }

mlbc_status mlbc_events_exact_union(const mlbc_events* sys, double* out) {
    return wrap([&] { *out = sys->impl.exact_union(); });
}

mlbc_status mlbc_decaen_bound(const mlbc_events* sys, double* out) {
    return wrap([&] { *out = mlbc::decaen_bound(sys->impl); });
}

mlbc_status mlbc_cohen_merhav_bound(const mlbc_events* sys, int weight_choice, double* out) {
    return wrap([&] {
        if (weight_choice == 0) {
            const std::vector<std::vector<double>> ones(
                sys->impl.event_count(), std::vector<double>(sys->impl.atom_count(), 1.0));
            *out = mlbc::cohen_merhav_bound(sys->impl, ones);
        } else if (weight_choice == 1) {
            *out = mlbc::cohen_merhav_bound(sys->impl, mlbc::equality_weights(sys->impl));
        } else {
            mlbc::fail(mlbc::ErrorCode::invalid_argument, "unknown weight choice");
        }
    });
}

mlbc_status mlbc_ml_lower_bound(const mlbc_code* code, const mlbc_channel* ch, double tilt_a,
                                double* out) {
    return wrap([&] { *out = mlbc::ml_lower_bound(code->impl, ch->impl, tilt_a); });
}

mlbc_status mlbc_ml_lower_bound_optimized(const mlbc_code* code, const mlbc_channel* ch,
                                          double* value, double* tilt_a) {
    return wrap([&] {
        const mlbc::MlLowerOptimum o = mlbc::ml_lower_bound_optimized(code->impl, ch->impl);
        *value = o.value;
        if (tilt_a) *tilt_a = o.tilt_a;
    });
}

/* ---- oracles ---- */

mlbc_status mlbc_exact_ml_bsc(const mlbc_code* code, double crossover, double* out) {
    return wrap([&] { *out = mlbc::exact_ml_bsc(code->impl, crossover).estimate; });
}

mlbc_status mlbc_mc_ml_awgn(const mlbc_code* code, const mlbc_channel* ch, uint64_t samples,
                            uint64_t seed, int bit_metric, unsigned workers, double* estimate,
                            double* std_error) {
    return wrap([&] {
        const mlbc::OracleResult r = mlbc::mc_ml_awgn(
            code->impl, ch->impl, samples, seed,
            bit_metric ? mlbc::ErrorMetric::bit : mlbc::ErrorMetric::block, workers);
        *estimate = r.estimate;
        if (std_error) *std_error = r.std_error;
    });
}

/* ---- components and ensembles ---- */

mlbc_status mlbc_component_load(const char* path, mlbc_component** out) {
    return wrap([&] { *out = new mlbc_component{mlbc::ConvolutionalComponent::load(path)}; });
}

mlbc_status mlbc_component_parse(const char* json_text, mlbc_component** out) {
    return wrap(
        [&] { *out = new mlbc_component{mlbc::ConvolutionalComponent::parse(json_text)}; });
}

void mlbc_component_free(mlbc_component* c) { delete c; }

mlbc_status mlbc_conv_iowef(const mlbc_component* c, unsigned n_in, unsigned w_max,
                            unsigned j_max, mlbc_iowef** out, int* truncated,
                            int* empty_beyond_zero) {
    return wrap([&] {
        mlbc::ConvIowefResult r = mlbc::conv_iowef(c->impl, n_in, w_max, j_max);
        if (truncated) *truncated = r.w_truncated || r.j_truncated;
        if (empty_beyond_zero) *empty_beyond_zero = r.empty_beyond_zero;
        *out = new mlbc_iowef(std::move(r.iowef));
    });
}

mlbc_status mlbc_uniform_interleaver_combine(const mlbc_iowef* a1, const mlbc_iowef* a2,
                                             unsigned n_interleaver, mlbc_iowef** out) {
    return wrap([&] {
        *out = new mlbc_iowef(
            mlbc::uniform_interleaver_combine(a1->impl, a2->impl, n_interleaver));
    });
}

mlbc_status mlbc_permute_average_iowef(const mlbc_component* c1, const mlbc_component* c2,
                                       unsigned n_interleaver, mlbc_iowef** out) {
    return wrap([&] {
        *out = new mlbc_iowef(mlbc::permute_average_iowef(c1->impl, c2->impl, n_interleaver));
    });
}

mlbc_status mlbc_ensemble_load(const char* path, mlbc_ensemble** out) {
    return wrap([&] { *out = new mlbc_ensemble{mlbc::EnsembleSpec::load(path)}; });
}

mlbc_status mlbc_ensemble_parse(const char* json_text, mlbc_ensemble** out) {
    return wrap([&] { *out = new mlbc_ensemble{mlbc::EnsembleSpec::parse(json_text)}; });
}

void mlbc_ensemble_free(mlbc_ensemble* e) { delete e; }

double mlbc_ensemble_rate(const mlbc_ensemble* e) { return e->impl.rate(); }

unsigned mlbc_ensemble_block_length(const mlbc_ensemble* e) { return e->impl.block_length(); }

mlbc_status mlbc_ensemble_spectrum(const mlbc_ensemble* e, unsigned w_max, unsigned d_max,
                                   mlbc_spectrum** out_spectrum, mlbc_iowef** out_iowef,
                                   char** meta_json) {
    return wrap([&] {
        mlbc::EnsembleSpectrumResult r = mlbc::ensemble_spectrum(e->impl, w_max, d_max);
        if (meta_json) {
            nlohmann::json j;
            j["assumptions"] = r.assumptions;
            j["w_truncated"] = r.w_truncated;
            j["j_truncated"] = r.j_truncated;
            j["computed_mass_log2"] =
                r.computed_mass > 0.0L ? static_cast<double>(log2l(r.computed_mass))
                                       : mlbc::kNegInf;
            j["missing_mass_log2"] =
                r.missing_mass > 0.0L ? static_cast<double>(log2l(r.missing_mass))
                                      : mlbc::kNegInf;
            j["missing_mass_fraction"] =
                static_cast<double>(r.missing_mass / (r.computed_mass + r.missing_mass));
            j["w_max"] = w_max;
            j["d_max"] = d_max;
            *meta_json = dup_string(j.dump());
        }
        if (out_iowef) *out_iowef = new mlbc_iowef(std::move(r.iowef));
        if (out_spectrum) *out_spectrum = new mlbc_spectrum(std::move(r.spectrum));
    });
}

}  // extern "C"
