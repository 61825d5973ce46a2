// mlbc command-line front end: spectra, bound curves, oracles, density
// tables. Talks to the library exclusively through the C API in mlbc.h.

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlbc.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitSizeGuard = 4;

struct CliFailure {
    int exit_code;
    std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) { throw CliFailure{code, msg}; }

void check(mlbc_status st, const std::string& context) {
    if (st == MLBC_OK) return;
    const int code = st == MLBC_ERR_SIZE_GUARD ? kExitSizeGuard
                     : st == MLBC_ERR_NUMERIC  ? kExitNumeric
                                               : kExitConfig;
    die(code, context + ": " + mlbc_last_error());
}

std::string take_string(char* s) {
    std::string out = s ? s : "";
    mlbc_string_free(s);
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) die(kExitConfig, "cannot write output file: " + path);
    out << text;
}

// Unique-ownership wrappers for the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
    T* ptr = nullptr;
    Handle() = default;
    explicit Handle(T* p) : ptr(p) {}
    ~Handle() { reset(); }
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
    Handle& operator=(Handle&& o) noexcept {
        if (this != &o) {
            reset();
            ptr = o.ptr;
            o.ptr = nullptr;
        }
        return *this;
    }
    void reset() {
        if (ptr) Free(ptr);
        ptr = nullptr;
    }
    T** out() {
        reset();
        return &ptr;
    }
    explicit operator bool() const { return ptr != nullptr; }
};

using CodeHandle = Handle<mlbc_code, mlbc_code_free>;
using SpectrumHandle = Handle<mlbc_spectrum, mlbc_spectrum_free>;
using IowefHandle = Handle<mlbc_iowef, mlbc_iowef_free>;
using ChannelHandle = Handle<mlbc_channel, mlbc_channel_free>;
using EventsHandle = Handle<mlbc_events, mlbc_events_free>;
using ComponentHandle = Handle<mlbc_component, mlbc_component_free>;
using EnsembleHandle = Handle<mlbc_ensemble, mlbc_ensemble_free>;

std::vector<double> parse_grid(const std::string& range, const std::string& list) {
    std::vector<double> grid;
    if (!range.empty()) {
        double start = 0, stop = 0, step = 0;
        if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0)
            die(kExitConfig, "grid must be start:stop:step with step > 0, got: " + range);
        for (double v = start; v <= stop + 1e-9 * std::fabs(step); v += step) grid.push_back(v);
    }
    if (!list.empty()) {
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) grid.push_back(std::strtod(item.c_str(), nullptr));
        }
    }
    if (grid.empty()) die(kExitConfig, "empty evaluation grid");
    return grid;
}

unsigned thread_count(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("MLBC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

int tilt_family_id(const std::string& name, bool biawgn) {
    if (name == "uniform") return 0;
    if (name == "exp-llr") return 1;
    if (name == "gaussian") return 2;
    if (name == "auto") return biawgn ? 2 : 1;
    die(kExitConfig, "unknown tilt family: " + name);
}

struct Row {
    std::string grid_label;
    std::string bound;
    double value = 0.0;
    std::string param_json;  // empty means {}
};

std::string render_rows(const std::string& command, const std::vector<Row>& rows,
                        const nlohmann::json& metadata, const std::string& format) {
    if (format == "json") {
        nlohmann::json doc;
        doc["command"] = command;
        doc["metadata"] = metadata;
        doc["rows"] = nlohmann::json::array();
        for (const Row& r : rows) {
            nlohmann::json jr;
            jr["grid"] = r.grid_label;
            jr["bound"] = r.bound;
            jr["value"] = r.value;
            jr["params"] = r.param_json.empty()
                               ? nlohmann::json::object()
                               : nlohmann::json::parse(r.param_json, nullptr, false);
            doc["rows"].push_back(jr);
        }
        return doc.dump(2) + "\n";
    }
    std::string out;
    out += "# mlbc " + command + " v" + std::string(mlbc_version()) + "\n";
    out += "# metadata: " + metadata.dump() + "\n";
    out += "ebno_db,bound,value,param_json\n";
    for (const Row& r : rows) {
        out += r.grid_label + "," + r.bound + "," + fmt_double(r.value) + "," +
               csv_quote(r.param_json.empty() ? "{}" : r.param_json) + "\n";
    }
    return out;
}

// ---- spectrum ------------------------------------------------------------

int cmd_spectrum(const std::string& code_path, bool want_iowef, const std::string& out_path) {
    CodeHandle code;
    check(mlbc_code_load(code_path.c_str(), code.out()), "loading code");
    if (want_iowef) {
        IowefHandle t;
        check(mlbc_code_iowef(code.ptr, t.out()), "enumerating iowef");
        char* json = nullptr;
        check(mlbc_iowef_to_json(t.ptr, &json), "serializing iowef");
        write_output(out_path, take_string(json));
    } else {
        SpectrumHandle s;
        check(mlbc_code_spectrum(code.ptr, s.out()), "enumerating spectrum");
        char* json = nullptr;
        check(mlbc_spectrum_to_json(s.ptr, &json), "serializing spectrum");
        write_output(out_path, take_string(json));
    }
    return 0;
}

// ---- conv-iowef ------------------------------------------------------------

int cmd_conv_iowef(const std::string& comp_path, unsigned n_in, unsigned w_max, unsigned j_max,
                   const std::string& out_path) {
    ComponentHandle comp;
    check(mlbc_component_load(comp_path.c_str(), comp.out()), "loading component");
    IowefHandle t;
    int truncated = 0, empty = 0;
    check(mlbc_conv_iowef(comp.ptr, n_in, w_max, j_max, t.out(), &truncated, &empty),
          "computing conv iowef");
    char* json = nullptr;
    check(mlbc_iowef_to_json(t.ptr, &json), "serializing iowef");
    nlohmann::json doc = nlohmann::json::parse(take_string(json));
    doc["metadata"] = {{"truncated", truncated != 0}, {"empty_beyond_zero", empty != 0}};
    write_output(out_path, doc.dump(2) + "\n");
    if (empty) std::cerr << "warning: caps removed every nonzero-input path\n";
    return 0;
}

// ---- turbo-iowef -----------------------------------------------------------

int cmd_turbo_iowef(const std::string& ensemble_path, unsigned w_max, unsigned d_max,
                    const std::string& out_path, const std::string& spectrum_out) {
    EnsembleHandle ens;
    check(mlbc_ensemble_load(ensemble_path.c_str(), ens.out()), "loading ensemble");
    SpectrumHandle s;
    IowefHandle t;
    char* meta_raw = nullptr;
    check(mlbc_ensemble_spectrum(ens.ptr, w_max, d_max, s.out(), t.out(), &meta_raw),
          "computing ensemble spectrum");
    const nlohmann::json meta = nlohmann::json::parse(take_string(meta_raw));
    char* json = nullptr;
    check(mlbc_iowef_to_json(t.ptr, &json), "serializing iowef");
    nlohmann::json doc = nlohmann::json::parse(take_string(json));
    doc["metadata"] = meta;
    write_output(out_path, doc.dump(2) + "\n");
    if (!spectrum_out.empty()) {
        char* sjson = nullptr;
        check(mlbc_spectrum_to_json(s.ptr, &sjson), "serializing spectrum");
        nlohmann::json sdoc = nlohmann::json::parse(take_string(sjson));
        sdoc["metadata"] = meta;
        write_output(spectrum_out, sdoc.dump(2) + "\n");
    }
    return 0;
}

// ---- upper -----------------------------------------------------------------

struct UpperConfig {
    std::string code_path, spectrum_path, ensemble_path, iowef_path;
    std::string channel = "biawgn";
    std::string ebno_range, ebno_list, p_list;
    double ebno_db = std::nan("");  // single-point convenience flags
    double p = std::nan("");
    double rate = 0.0;  // 0 = derive from input
    std::vector<std::string> bounds;
    std::string tilt = "auto";
    std::uint64_t seed = 1;
    unsigned w_max = 256, d_max = 256;
    std::string format = "csv";
    std::string out_path;
    unsigned threads = 0;
};

int cmd_upper(const UpperConfig& cfg) {
    const int inputs = (!cfg.code_path.empty()) + (!cfg.spectrum_path.empty()) +
                       (!cfg.ensemble_path.empty());
    if (inputs != 1)
        die(kExitConfig, "need exactly one of --code, --spectrum, --ensemble");
    if (cfg.bounds.empty()) die(kExitConfig, "no bounds selected");

    CodeHandle code;
    SpectrumHandle spectrum;
    IowefHandle iowef;
    nlohmann::json metadata;
    double rate = cfg.rate;
    if (!cfg.code_path.empty()) {
        check(mlbc_code_load(cfg.code_path.c_str(), code.out()), "loading code");
        check(mlbc_code_spectrum(code.ptr, spectrum.out()), "enumerating spectrum");
        if (rate == 0.0) rate = mlbc_code_rate(code.ptr);
        metadata["code"] = cfg.code_path;
    } else if (!cfg.spectrum_path.empty()) {
        check(mlbc_spectrum_load(cfg.spectrum_path.c_str(), spectrum.out()), "loading spectrum");
        metadata["spectrum"] = cfg.spectrum_path;
        if (rate == 0.0) die(kExitConfig, "--rate is required with --spectrum input");
    } else {
        EnsembleHandle ens;
        check(mlbc_ensemble_load(cfg.ensemble_path.c_str(), ens.out()), "loading ensemble");
        char* meta_raw = nullptr;
        check(mlbc_ensemble_spectrum(ens.ptr, cfg.w_max, cfg.d_max, spectrum.out(), iowef.out(),
                                     &meta_raw),
              "computing ensemble spectrum");
        metadata["ensemble"] = cfg.ensemble_path;
        metadata["ensemble_meta"] = nlohmann::json::parse(take_string(meta_raw));
        if (rate == 0.0) rate = mlbc_ensemble_rate(ens.ptr);
    }
    if (!cfg.iowef_path.empty()) {
        check(mlbc_iowef_load(cfg.iowef_path.c_str(), iowef.out()), "loading iowef");
    } else if (!iowef && code) {
        bool wants_bit = false;
        for (const std::string& b : cfg.bounds) wants_bit = wants_bit || b == "ds2-bit";
        if (wants_bit) check(mlbc_code_iowef(code.ptr, iowef.out()), "enumerating iowef");
    }

    const bool biawgn = cfg.channel == "biawgn";
    if (!biawgn && cfg.channel != "bsc") die(kExitConfig, "unknown channel: " + cfg.channel);
    std::string point_list = biawgn ? cfg.ebno_list : cfg.p_list;
    const double single = biawgn ? cfg.ebno_db : cfg.p;
    if (!std::isnan(single)) {
        if (!point_list.empty()) point_list += ",";
        point_list += fmt_double(single);
    }
    const std::vector<double> grid =
        biawgn ? parse_grid(cfg.ebno_range, point_list) : parse_grid("", point_list);
    metadata["channel"] = cfg.channel;
    if (biawgn) metadata["rate"] = rate;
    metadata["seed"] = cfg.seed;

    for (const std::string& b : cfg.bounds) {
        const bool needs_code = b == "gallager65";
        const bool needs_iowef = b == "ds2-bit";
        const bool awgn_only = b == "sphere" || b == "sphere-shifted" || b == "tsb";
        const bool bsc_only = b == "gallager65";
        if (needs_code && !code)
            die(kExitConfig, "bound '" + b + "' needs an explicit --code input");
        if (needs_iowef && !iowef)
            die(kExitConfig, "bound '" + b + "' needs an IOWEF (code, ensemble, or --iowef)");
        if (awgn_only && !biawgn)
            die(kExitConfig, "bound '" + b + "' applies to the biawgn channel only");
        if (bsc_only && biawgn)
            die(kExitConfig, "bound '" + b + "' applies to the bsc channel only");
        if (b != "union" && b != "bhattacharyya" && b != "gallager65" && b != "ds2" &&
            b != "ds2-bit" && b != "sphere" && b != "sphere-shifted" && b != "tsb")
            die(kExitConfig, "unknown bound: " + b);
    }
    const int tilt = tilt_family_id(cfg.tilt, biawgn);

    std::vector<Row> rows(grid.size() * cfg.bounds.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> failure{0};
    std::string failure_msg;
    std::mutex failure_mutex;

    const auto eval_point = [&](std::size_t gi) {
        ChannelHandle ch;
        if (biawgn) {
            check(mlbc_channel_biawgn(grid[gi], rate, ch.out()), "building channel");
        } else {
            check(mlbc_channel_bsc(grid[gi], ch.out()), "building channel");
        }
        for (std::size_t bi = 0; bi < cfg.bounds.size(); ++bi) {
            const std::string& b = cfg.bounds[bi];
            Row& row = rows[gi * cfg.bounds.size() + bi];
            row.grid_label = fmt_double(grid[gi]);
            row.bound = b;
            double log_value = 0.0, value = 0.0;
            char* params = nullptr;
            if (b == "union") {
                check(mlbc_union_bound(spectrum.ptr, ch.ptr, &log_value), "union bound");
                value = std::exp(std::fmin(0.0, log_value));
            } else if (b == "bhattacharyya") {
                check(mlbc_bhattacharyya_bound(spectrum.ptr, ch.ptr, &log_value),
                      "bhattacharyya bound");
                value = std::exp(std::fmin(0.0, log_value));
            } else if (b == "gallager65") {
                check(mlbc_gallager65_optimize(code.ptr, grid[gi], &log_value, &params),
                      "gallager65 bound");
                value = std::exp(std::fmin(0.0, log_value));
            } else if (b == "ds2") {
                check(mlbc_ds2_optimize(spectrum.ptr, ch.ptr, tilt, cfg.seed, &log_value,
                                        &params),
                      "ds2 bound");
                value = std::exp(std::fmin(0.0, log_value));
            } else if (b == "ds2-bit") {
                check(mlbc_ds2_bit_optimize(iowef.ptr, ch.ptr, tilt, cfg.seed, &log_value,
                                            &params),
                      "ds2 bit bound");
                value = std::exp(std::fmin(0.0, log_value));
            } else if (b == "sphere" || b == "sphere-shifted") {
                check(mlbc_sphere_bound(spectrum.ptr, ch.ptr, b == "sphere-shifted" ? 1 : 0,
                                        &value, &params),
                      "sphere bound");
            } else if (b == "tsb") {
                check(mlbc_tsb_bound(spectrum.ptr, ch.ptr, &value, &params), "tsb bound");
            }
            row.value = std::fmin(1.0, std::fmax(0.0, value));
            row.param_json = params ? take_string(params) : "";
        }
    };

    const unsigned workers = thread_count(cfg.threads);
    const auto worker = [&] {
        for (std::size_t gi = next.fetch_add(1); gi < grid.size(); gi = next.fetch_add(1)) {
            try {
                eval_point(gi);
            } catch (const CliFailure& f) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failure = f.exit_code;
                failure_msg = f.message;
                return;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure != 0) die(failure.load(), failure_msg);

    // Truncation-tail estimate at the weakest grid point, as a fraction of
    // the smallest reported bound there.
    {
        const double worst = biawgn
                                 ? *std::min_element(grid.begin(), grid.end())
                                 : *std::max_element(grid.begin(), grid.end());
        ChannelHandle ch;
        if (biawgn) {
            check(mlbc_channel_biawgn(worst, rate, ch.out()), "tail channel");
        } else {
            check(mlbc_channel_bsc(worst, ch.out()), "tail channel");
        }
        double log_tail = 0.0;
        check(mlbc_union_tail_estimate(spectrum.ptr, ch.ptr, &log_tail), "tail estimate");
        double worst_min_bound = 1.0;
        for (const Row& r : rows)
            if (r.grid_label == fmt_double(worst)) worst_min_bound = std::fmin(worst_min_bound, r.value);
        if (std::isfinite(log_tail)) {
            metadata["union_tail_log_at_worst_point"] = log_tail;
            metadata["tail_fraction_of_min_bound"] = std::exp(log_tail) / worst_min_bound;
        } else {
            metadata["union_tail_log_at_worst_point"] = "unavailable";
            metadata["tail_fraction_of_min_bound"] = "unavailable";
        }
    }

    write_output(cfg.out_path, render_rows("upper", rows, metadata, cfg.format));
    return 0;
}

// ---- lower -----------------------------------------------------------------

struct LowerConfig {
    std::string events_path, code_path;
    std::vector<std::string> bounds;
    std::string weights = "equality";
    std::string ebno_range, ebno_list;
    double ebno_db = std::nan("");
    double rate = 0.0;
    std::string format = "csv";
    std::string out_path;
};

int cmd_lower(const LowerConfig& cfg) {
    if (cfg.bounds.empty()) die(kExitConfig, "no bounds selected");
    std::vector<Row> rows;
    nlohmann::json metadata;
    if (!cfg.events_path.empty()) {
        EventsHandle sys;
        check(mlbc_events_load(cfg.events_path.c_str(), sys.out()), "loading event system");
        metadata["events"] = cfg.events_path;
        for (const std::string& b : cfg.bounds) {
            Row row;
            row.grid_label = "";
            row.bound = b;
            if (b == "decaen") {
                check(mlbc_decaen_bound(sys.ptr, &row.value), "de caen bound");
            } else if (b == "cohen-merhav") {
                const int choice = cfg.weights == "unit" ? 0 : 1;
                check(mlbc_cohen_merhav_bound(sys.ptr, choice, &row.value), "cohen-merhav bound");
                row.param_json = std::string("{\"weights\":\"") + cfg.weights + "\"}";
            } else if (b == "exact-union") {
                check(mlbc_events_exact_union(sys.ptr, &row.value), "exact union");
            } else {
                die(kExitConfig, "unknown event-system bound: " + b);
            }
            rows.push_back(std::move(row));
        }
    } else if (!cfg.code_path.empty()) {
        CodeHandle code;
        check(mlbc_code_load(cfg.code_path.c_str(), code.out()), "loading code");
        const double rate = cfg.rate > 0.0 ? cfg.rate : mlbc_code_rate(code.ptr);
        metadata["code"] = cfg.code_path;
        metadata["rate"] = rate;
        std::string list = cfg.ebno_list;
        if (!std::isnan(cfg.ebno_db)) {
            if (!list.empty()) list += ",";
            list += fmt_double(cfg.ebno_db);
        }
        const std::vector<double> grid = parse_grid(cfg.ebno_range, list);
        for (double db : grid) {
            ChannelHandle ch;
            check(mlbc_channel_biawgn(db, rate, ch.out()), "building channel");
            for (const std::string& b : cfg.bounds) {
                Row row;
                row.grid_label = fmt_double(db);
                row.bound = b;
                if (b == "decaen") {
                    check(mlbc_ml_lower_bound(code.ptr, ch.ptr, 0.0, &row.value),
                          "de caen ml bound");
                    row.param_json = "{\"a\":0}";
                } else if (b == "cohen-merhav") {
                    double a = 0.0;
                    check(mlbc_ml_lower_bound_optimized(code.ptr, ch.ptr, &row.value, &a),
                          "cohen-merhav ml bound");
                    row.param_json = "{\"a\":" + fmt_double(a) + "}";
                } else {
                    die(kExitConfig, "unknown ml lower bound: " + b);
                }
                rows.push_back(std::move(row));
            }
        }
    } else {
        die(kExitConfig, "need --events or --code");
    }
    write_output(cfg.out_path, render_rows("lower", rows, metadata, cfg.format));
    return 0;
}

// ---- density ----------------------------------------------------------------

int cmd_density(double capacity, const std::string& eps_list, const std::string& t_list,
                std::optional<double> h_norm, const std::string& normalization,
                const std::string& out_path) {
    if (!(capacity > 0.0 && capacity <= 1.0)) die(kExitConfig, "capacity must be in (0, 1]");
    const std::vector<double> eps = parse_grid("", eps_list);
    const std::vector<double> ts = parse_grid("", t_list);
    std::string out = "epsilon,rate,t,delta_min,p_b\n";
    for (double e : eps) {
        const double rate = (1.0 - e) * capacity;
        for (double t : ts) {
            double delta = 0.0;
            check(mlbc_min_density(rate, t, &delta), "density conversion");
            std::string pb_text;
            if (h_norm) {
                double pb = 0.0;
                check(mlbc_pb_lower_from_entropy(*h_norm, rate,
                                                 normalization == "rate" ? 1 : 0, &pb),
                      "fano step");
                pb_text = fmt_double(pb);
            }
            out += fmt_double(e) + "," + fmt_double(rate) + "," + fmt_double(t) + "," +
                   fmt_double(delta) + "," + pb_text + "\n";
        }
    }
    write_output(out_path, out);
    return 0;
}

// ---- oracle -----------------------------------------------------------------

struct OracleConfig {
    std::string code_path;
    std::string channel = "biawgn";
    double p = 0.0;
    std::string ebno_range, ebno_list;
    double ebno_db = std::nan("");
    double rate = 0.0;
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> seed;
    std::string metric = "block";
    std::string region = "";
    double theta = 0.0, radius = 0.0, center = 0.0;
    unsigned threads = 0;
    std::string format = "csv";
    std::string out_path;
};

int cmd_oracle(const OracleConfig& cfg) {
    CodeHandle code;
    check(mlbc_code_load(cfg.code_path.c_str(), code.out()), "loading code");
    nlohmann::json metadata;
    metadata["code"] = cfg.code_path;
    std::vector<Row> rows;
    if (cfg.channel == "bsc") {
        if (!(cfg.p > 0.0)) die(kExitConfig, "--p is required for the bsc oracle");
        Row row;
        row.grid_label = fmt_double(cfg.p);
        row.bound = "exact-ml";
        check(mlbc_exact_ml_bsc(code.ptr, cfg.p, &row.value), "exact ml");
        row.param_json = "{\"std_error\":0}";
        rows.push_back(std::move(row));
    } else if (cfg.channel == "biawgn") {
        if (cfg.samples == 0) die(kExitConfig, "--samples is required for monte carlo oracles");
        if (!cfg.seed) die(kExitConfig, "--seed is required: monte carlo runs must be reproducible");
        const double rate = cfg.rate > 0.0 ? cfg.rate : mlbc_code_rate(code.ptr);
        metadata["rate"] = rate;
        metadata["samples"] = cfg.samples;
        metadata["seed"] = *cfg.seed;
        const unsigned workers = thread_count(cfg.threads);
        std::string list = cfg.ebno_list;
        if (!std::isnan(cfg.ebno_db)) {
            if (!list.empty()) list += ",";
            list += fmt_double(cfg.ebno_db);
        }
        for (double db : parse_grid(cfg.ebno_range, list)) {
            ChannelHandle ch;
            check(mlbc_channel_biawgn(db, rate, ch.out()), "building channel");
            Row row;
            row.grid_label = fmt_double(db);
            double se = 0.0;
            if (cfg.region.empty()) {
                row.bound = cfg.metric == "bit" ? "mc-ml-bit" : "mc-ml";
                check(mlbc_mc_ml_awgn(code.ptr, ch.ptr, cfg.samples, *cfg.seed,
                                      cfg.metric == "bit" ? 1 : 0, workers, &row.value, &se),
                      "mc ml");
            } else {
                int kind = 0;
                double p1 = 0.0, p2 = 0.0;
                if (cfg.region == "whole") {
                    kind = 0;
                } else if (cfg.region == "sphere") {
                    kind = 1;
                    p1 = cfg.radius;
                    p2 = cfg.center;
                } else if (cfg.region == "cone") {
                    kind = 2;
                    p1 = cfg.theta;
                } else {
                    die(kExitConfig, "unknown region: " + cfg.region);
                }
                row.bound = "region-mc-" + cfg.region;
                check(mlbc_region_bound_mc(code.ptr, ch.ptr, kind, p1, p2, cfg.samples,
                                           *cfg.seed, workers, &row.value, &se),
                      "region mc");
            }
            row.param_json = "{\"std_error\":" + fmt_double(se) +
                             ",\"samples\":" + std::to_string(cfg.samples) +
                             ",\"seed\":" + std::to_string(*cfg.seed) + "}";
            rows.push_back(std::move(row));
        }
    } else {
        die(kExitConfig, "unknown channel: " + cfg.channel);
    }
    write_output(cfg.out_path, render_rows("oracle", rows, metadata, cfg.format));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mlbc: analytical bounds on ML decoding error probability"};
    app.require_subcommand(1);

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "enumerate a code's distance spectrum or IOWEF");
    std::string sp_code, sp_out;
    bool sp_iowef = false;
    sp->add_option("--code", sp_code, "code file (n k header plus generator rows)")->required();
    sp->add_flag("--iowef", sp_iowef, "emit the IOWEF instead of the distance spectrum");
    sp->add_option("--out,-o", sp_out, "output path (default stdout)");

    // conv-iowef
    auto* cv = app.add_subcommand("conv-iowef", "IOWEF of a convolutional component by trellis DP");
    std::string cv_comp, cv_out;
    unsigned cv_n = 0, cv_wmax = 1u << 30, cv_jmax = 1u << 30;
    cv->add_option("--component", cv_comp, "component JSON file")->required();
    cv->add_option("--n", cv_n, "input block length")->required();
    cv->add_option("--w-max", cv_wmax, "input-weight cap");
    cv->add_option("--j-max", cv_jmax, "parity-weight cap");
    cv->add_option("--out,-o", cv_out, "output path");

    // turbo-iowef
    auto* tb = app.add_subcommand("turbo-iowef",
                                  "uniform-interleaver average IOWEF of a turbo ensemble");
    std::string tb_ens, tb_out, tb_spec_out;
    unsigned tb_wmax = 256, tb_dmax = 256;
    tb->add_option("--ensemble", tb_ens, "ensemble JSON file")->required();
    tb->add_option("--w-max", tb_wmax, "input-weight cap");
    tb->add_option("--d-max", tb_dmax, "total-weight cap");
    tb->add_option("--out,-o", tb_out, "IOWEF output path");
    tb->add_option("--spectrum-out", tb_spec_out, "also write the marginal spectrum here");

    // upper
    auto* up = app.add_subcommand("upper", "evaluate upper bounds over a channel grid");
    UpperConfig uc;
    up->add_option("--code", uc.code_path, "explicit code file");
    up->add_option("--spectrum", uc.spectrum_path, "distance spectrum JSON");
    up->add_option("--ensemble", uc.ensemble_path, "turbo ensemble JSON");
    up->add_option("--iowef", uc.iowef_path, "IOWEF JSON (for ds2-bit)");
    up->add_option("--bounds", uc.bounds,
                   "comma list: union,bhattacharyya,gallager65,ds2,ds2-bit,sphere,"
                   "sphere-shifted,tsb")
        ->required()
        ->delimiter(',');
    up->add_option("--channel", uc.channel, "biawgn or bsc");
    up->add_option("--ebno", uc.ebno_range, "Eb/N0 grid start:stop:step in dB");
    up->add_option("--ebno-list", uc.ebno_list, "comma list of Eb/N0 points in dB");
    up->add_option("--ebno-db", uc.ebno_db, "single Eb/N0 point in dB");
    up->add_option("--p-list", uc.p_list, "comma list of BSC crossover probabilities");
    up->add_option("--p", uc.p, "single BSC crossover probability");
    up->add_option("--rate", uc.rate, "code rate override (bits per channel use)");
    up->add_option("--tilt", uc.tilt, "tilting family: auto,uniform,exp-llr,gaussian");
    up->add_option("--seed", uc.seed, "optimizer seed");
    up->add_option("--w-max", uc.w_max, "ensemble input-weight cap");
    up->add_option("--d-max", uc.d_max, "ensemble total-weight cap");
    up->add_option("--format", uc.format, "csv or json");
    up->add_option("--out,-o", uc.out_path, "output path");
    up->add_option("--threads", uc.threads, "worker threads (default MLBC_THREADS or 1)");

    // lower
    auto* lo = app.add_subcommand("lower", "evaluate lower bounds");
    LowerConfig lc;
    lo->add_option("--events", lc.events_path, "finite event-system JSON");
    lo->add_option("--code", lc.code_path, "explicit code file (BIAWGN ML bounds)");
    lo->add_option("--bounds,--bound", lc.bounds, "comma list: decaen,cohen-merhav,exact-union")
        ->required()
        ->delimiter(',');
    lo->add_option("--weights", lc.weights, "event-system weights: equality or unit");
    lo->add_option("--ebno", lc.ebno_range, "Eb/N0 grid start:stop:step in dB");
    lo->add_option("--ebno-list", lc.ebno_list, "comma list of Eb/N0 points in dB");
    lo->add_option("--ebno-db", lc.ebno_db, "single Eb/N0 point in dB");
    lo->add_option("--rate", lc.rate, "code rate override");
    lo->add_option("--format", lc.format, "csv or json");
    lo->add_option("--out,-o", lc.out_path, "output path");

    // density
    auto* de = app.add_subcommand("density", "parity-check density / Fano tables");
    double de_capacity = 0.5;
    std::string de_eps, de_t, de_norm = "rate", de_out;
    std::optional<double> de_h;
    double de_h_raw = -1.0;
    de->add_option("--capacity", de_capacity, "channel capacity in bits per use")->required();
    de->add_option("--epsilon", de_eps, "comma list of capacity gaps")->required();
    de->add_option("--t", de_t, "comma list of normalized densities")->required();
    de->add_option("--h-norm", de_h_raw, "lower bound on H(X|Y)/n (enables the p_b column)");
    de->add_option("--fano-normalization", de_norm, "rate (default) or one");
    de->add_option("--out,-o", de_out, "output path");

    // oracle
    auto* orc = app.add_subcommand("oracle", "exact / monte-carlo ground truth");
    OracleConfig oc;
    orc->add_option("--code", oc.code_path, "explicit code file")->required();
    orc->add_option("--channel", oc.channel, "biawgn or bsc");
    orc->add_option("--p", oc.p, "BSC crossover probability");
    orc->add_option("--ebno", oc.ebno_range, "Eb/N0 grid start:stop:step in dB");
    orc->add_option("--ebno-list", oc.ebno_list, "comma list of Eb/N0 points in dB");
    orc->add_option("--ebno-db", oc.ebno_db, "single Eb/N0 point in dB");
    orc->add_option("--rate", oc.rate, "code rate override");
    orc->add_option("--samples", oc.samples, "monte-carlo sample count");
    std::uint64_t oc_seed_raw = 0;
    auto* seed_opt = orc->add_option("--seed", oc_seed_raw, "monte-carlo seed (required)");
    orc->add_option("--metric", oc.metric, "block (default) or bit");
    orc->add_option("--region", oc.region, "region decomposition: whole, sphere, cone");
    orc->add_option("--theta", oc.theta, "cone half-angle (radians)");
    orc->add_option("--radius", oc.radius, "sphere radius");
    orc->add_option("--center", oc.center, "sphere axial center offset");
    orc->add_option("--threads", oc.threads, "worker threads");
    orc->add_option("--format", oc.format, "csv or json");
    orc->add_option("--out,-o", oc.out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(sp_code, sp_iowef, sp_out);
        if (cv->parsed()) return cmd_conv_iowef(cv_comp, cv_n, cv_wmax, cv_jmax, cv_out);
        if (tb->parsed()) return cmd_turbo_iowef(tb_ens, tb_wmax, tb_dmax, tb_out, tb_spec_out);
        if (up->parsed()) return cmd_upper(uc);
        if (lo->parsed()) return cmd_lower(lc);
        if (de->parsed()) {
            if (de->count("--h-norm")) de_h = de_h_raw;
            return cmd_density(de_capacity, de_eps, de_t, de_h, de_norm, de_out);
        }
        if (orc->parsed()) {
            if (seed_opt->count()) oc.seed = oc_seed_raw;
            return cmd_oracle(oc);
        }
    } catch (const CliFailure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.exit_code;
    }
    return kExitConfig;
}
