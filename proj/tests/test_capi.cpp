#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "mlbc.h"

namespace {

const char* kHamming74 = "7 4\n1000110\n0100101\n0010011\n0001111\n";

std::string take(char* s) {
    std::string out = s ? s : "";
    mlbc_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("code handles, properties, errors") {
    mlbc_code* code = nullptr;
    REQUIRE(mlbc_code_parse(kHamming74, &code) == MLBC_OK);
    CHECK(mlbc_code_n(code) == 7);
    CHECK(mlbc_code_k(code) == 4);
    CHECK(mlbc_code_rate(code) == doctest::Approx(4.0 / 7.0));
    mlbc_code_free(code);

    mlbc_code* bad = nullptr;
    CHECK(mlbc_code_parse("2 2\n11\n11\n", &bad) == MLBC_ERR_PARSE);
    CHECK(std::strlen(mlbc_last_error()) > 0);
    CHECK(mlbc_code_load("/no/such/file", &bad) == MLBC_ERR_IO);
}

TEST_CASE("spectrum round trip through the c surface") {
    mlbc_code* code = nullptr;
    REQUIRE(mlbc_code_parse(kHamming74, &code) == MLBC_OK);
    mlbc_spectrum* s = nullptr;
    REQUIRE(mlbc_code_spectrum(code, &s) == MLBC_OK);
    CHECK(mlbc_spectrum_n(s) == 7);
    CHECK(mlbc_spectrum_term_count(s) == 4);
    unsigned d = 0;
    double count = 0, log_count = 0;
    REQUIRE(mlbc_spectrum_term(s, 1, &d, &count, &log_count) == MLBC_OK);
    CHECK(d == 3);
    CHECK(count == 7.0);
    CHECK(log_count == doctest::Approx(std::log(7.0)));
    CHECK(mlbc_spectrum_term(s, 9, &d, &count, &log_count) == MLBC_ERR_INVALID_ARGUMENT);

    const auto path = std::filesystem::temp_directory_path() / "mlbc_capi_spec.json";
    REQUIRE(mlbc_spectrum_store(s, path.string().c_str()) == MLBC_OK);
    mlbc_spectrum* back = nullptr;
    REQUIRE(mlbc_spectrum_load(path.string().c_str(), &back) == MLBC_OK);
    CHECK(mlbc_spectrum_term_count(back) == 4);
    std::filesystem::remove(path);
    mlbc_spectrum_free(back);
    mlbc_spectrum_free(s);
    mlbc_code_free(code);
}

TEST_CASE("bounds through the c surface agree across routes") {
    mlbc_code* code = nullptr;
    REQUIRE(mlbc_code_parse(kHamming74, &code) == MLBC_OK);
    mlbc_spectrum* s = nullptr;
    REQUIRE(mlbc_code_spectrum(code, &s) == MLBC_OK);
    mlbc_channel* ch = nullptr;
    REQUIRE(mlbc_channel_biawgn(3.0, 4.0 / 7.0, &ch) == MLBC_OK);

    double log_union = 0.0, log_bhat = 0.0;
    CHECK(mlbc_union_bound(s, ch, &log_union) == MLBC_OK);
    CHECK(mlbc_bhattacharyya_bound(s, ch, &log_bhat) == MLBC_OK);
    CHECK(log_union < log_bhat);

    // DS2 at the specialization point equals the Bhattacharyya route.
    double log_ds2 = 0.0;
    CHECK(mlbc_ds2_bound(s, ch, 0.5, 1.0, 0, nullptr, 0, &log_ds2) == MLBC_OK);
    CHECK(log_ds2 == doctest::Approx(log_bhat).epsilon(1e-10));

    char* params = nullptr;
    double log_opt = 0.0;
    CHECK(mlbc_ds2_optimize(s, ch, 2, 5, &log_opt, &params) == MLBC_OK);
    CHECK(log_opt <= log_bhat + 1e-10);
    const nlohmann::json pj = nlohmann::json::parse(take(params));
    CHECK(pj.contains("lambda"));
    CHECK(pj["tilt_family"] == "gaussian");

    double tsb = 0.0;
    char* tsb_params = nullptr;
    CHECK(mlbc_tsb_bound(s, ch, &tsb, &tsb_params) == MLBC_OK);
    CHECK(tsb <= std::exp(std::fmin(0.0, log_union)) + 1e-12);
    CHECK(nlohmann::json::parse(take(tsb_params)).contains("half_angle"));

    // Channel/bound mismatch surfaces as a typed error.
    mlbc_channel* bsc = nullptr;
    REQUIRE(mlbc_channel_bsc(0.05, &bsc) == MLBC_OK);
    CHECK(mlbc_tsb_bound(s, bsc, &tsb, nullptr) == MLBC_ERR_UNSUPPORTED);
    double g65 = 0.0;
    CHECK(mlbc_gallager65_bound(code, 0.05, 0.5, 1.0, &g65) == MLBC_OK);

    mlbc_channel_free(bsc);
    mlbc_channel_free(ch);
    mlbc_spectrum_free(s);
    mlbc_code_free(code);
}

TEST_CASE("lower bounds and oracles through the c surface") {
    const char* events_json = R"({
        "probabilities": [0.25, 0.25, 0.25, 0.25],
        "events": [[0, 1], [1, 2], [3]]
    })";
    mlbc_events* sys = nullptr;
    REQUIRE(mlbc_events_parse(events_json, &sys) == MLBC_OK);
    double exact = 0.0, decaen = 0.0, cm_eq = 0.0, cm_unit = 0.0;
    CHECK(mlbc_events_exact_union(sys, &exact) == MLBC_OK);
    CHECK(mlbc_decaen_bound(sys, &decaen) == MLBC_OK);
    CHECK(mlbc_cohen_merhav_bound(sys, 1, &cm_eq) == MLBC_OK);
    CHECK(mlbc_cohen_merhav_bound(sys, 0, &cm_unit) == MLBC_OK);
    CHECK(exact == doctest::Approx(1.0));
    CHECK(cm_eq == doctest::Approx(exact).epsilon(1e-12));
    CHECK(cm_unit == doctest::Approx(decaen).epsilon(1e-12));
    CHECK(decaen <= exact + 1e-12);
    mlbc_events_free(sys);

    mlbc_code* code = nullptr;
    REQUIRE(mlbc_code_parse(kHamming74, &code) == MLBC_OK);
    mlbc_channel* ch = nullptr;
    REQUIRE(mlbc_channel_biawgn(3.0, 4.0 / 7.0, &ch) == MLBC_OK);
    double lower0 = 0.0, lower_opt = 0.0, tilt = -1.0;
    CHECK(mlbc_ml_lower_bound(code, ch, 0.0, &lower0) == MLBC_OK);
    CHECK(mlbc_ml_lower_bound_optimized(code, ch, &lower_opt, &tilt) == MLBC_OK);
    CHECK(lower_opt >= lower0 - 1e-12);
    CHECK(tilt >= 0.0);

    double est = 0.0, se = 0.0;
    CHECK(mlbc_mc_ml_awgn(code, ch, 50000, 3, 0, 2, &est, &se) == MLBC_OK);
    CHECK(lower_opt <= est + 3.0 * se);

    double exact_bsc = 0.0;
    CHECK(mlbc_exact_ml_bsc(code, 0.05, &exact_bsc) == MLBC_OK);
    CHECK(exact_bsc > 0.0);
    CHECK(mlbc_exact_ml_bsc(code, 0.6, &exact_bsc) == MLBC_ERR_INVALID_ARGUMENT);

    double mc_est = 0.0, mc_se = 0.0;
    CHECK(mlbc_region_bound_mc(code, ch, 0, 0, 0, 50000, 11, 1, &mc_est, &mc_se) == MLBC_OK);
    double log_u = 0.0;
    mlbc_spectrum* s = nullptr;
    REQUIRE(mlbc_code_spectrum(code, &s) == MLBC_OK);
    CHECK(mlbc_union_bound(s, ch, &log_u) == MLBC_OK);
    CHECK(std::fabs(mc_est - std::exp(log_u)) <= 3.0 * mc_se);
    mlbc_spectrum_free(s);
    mlbc_channel_free(ch);
    mlbc_code_free(code);
}

TEST_CASE("ensembles through the c surface") {
    const char* comp_json = R"({"notation":"octal","feedback":"37","feedforward":"21"})";
    mlbc_component* comp = nullptr;
    REQUIRE(mlbc_component_parse(comp_json, &comp) == MLBC_OK);
    mlbc_iowef* table = nullptr;
    int truncated = -1, empty = -1;
    REQUIRE(mlbc_conv_iowef(comp, 8, 8, 64, &table, &truncated, &empty) == MLBC_OK);
    CHECK(truncated == 0);
    CHECK(empty == 0);
    CHECK(mlbc_iowef_term_count(table) > 0);

    mlbc_iowef* combined = nullptr;
    REQUIRE(mlbc_uniform_interleaver_combine(table, table, 8, &combined) == MLBC_OK);
    mlbc_spectrum* marginal = nullptr;
    REQUIRE(mlbc_iowef_marginal_spectrum(combined, &marginal) == MLBC_OK);
    unsigned d = 0;
    double count = 0.0;
    REQUIRE(mlbc_spectrum_term(marginal, 0, &d, &count, nullptr) == MLBC_OK);
    CHECK(d == 0);
    CHECK(count == doctest::Approx(1.0));

    const char* ens_json = R"({
        "interleaver_length": 8,
        "component1": {"notation":"octal","feedback":"37","feedforward":"21"},
        "component2": {"notation":"octal","feedback":"37","feedforward":"21"}
    })";
    mlbc_ensemble* ens = nullptr;
    REQUIRE(mlbc_ensemble_parse(ens_json, &ens) == MLBC_OK);
    CHECK(mlbc_ensemble_block_length(ens) == 40);
    mlbc_spectrum* spec = nullptr;
    char* meta = nullptr;
    REQUIRE(mlbc_ensemble_spectrum(ens, 8, 64, &spec, nullptr, &meta) == MLBC_OK);
    const nlohmann::json mj = nlohmann::json::parse(take(meta));
    CHECK(mj.contains("assumptions"));
    CHECK(mj["missing_mass_fraction"].get<double>() <= 1e-9);

    // The combine of the component with itself matches the ensemble route.
    mlbc_spectrum* via_combine = nullptr;
    REQUIRE(mlbc_iowef_marginal_spectrum(combined, &via_combine) == MLBC_OK);

    mlbc_iowef* oracle = nullptr;
    REQUIRE(mlbc_permute_average_iowef(comp, comp, 4, &oracle) == MLBC_OK);
    CHECK(mlbc_iowef_term_count(oracle) > 0);

    mlbc_iowef_free(oracle);
    mlbc_spectrum_free(via_combine);
    mlbc_spectrum_free(spec);
    mlbc_ensemble_free(ens);
    mlbc_spectrum_free(marginal);
    mlbc_iowef_free(combined);
    mlbc_iowef_free(table);
    mlbc_component_free(comp);
}

TEST_CASE("density scalars through the c surface") {
    double v = 0.0;
    CHECK(mlbc_min_density(0.495, 4.33, &v) == MLBC_OK);
    CHECK(v == doctest::Approx(13.16).epsilon(1e-3));
    CHECK(mlbc_h2(0.5, &v) == MLBC_OK);
    CHECK(v == doctest::Approx(1.0));
    CHECK(mlbc_h2(1.5, &v) == MLBC_ERR_INVALID_ARGUMENT);
    CHECK(mlbc_h2_inverse(1.0, &v) == MLBC_OK);
    CHECK(v == doctest::Approx(0.5));
    CHECK(mlbc_pb_lower_from_entropy(0.3, 0.5, 1, &v) == MLBC_OK);
    CHECK(mlbc_pb_lower_from_entropy(0.6, 0.5, 1, &v) == MLBC_ERR_INVALID_ARGUMENT);
    CHECK(mlbc_q_function(0.0) == doctest::Approx(0.5));
}
