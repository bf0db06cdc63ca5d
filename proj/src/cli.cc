// Copyright 2026 The definetti Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "definetti/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "definetti/classical_sphere.h"
#include "definetti/distributions.h"
#include "definetti/errors.h"
#include "definetti/interferometer.h"
#include "definetti/proof_chain.h"
#include "definetti/sector_state.h"

namespace definetti {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kNonInvarianceThreshold = 0.01;
constexpr std::uint64_t kNonInvarianceSalt = 0x5eed5eed5eed5eedULL;

struct GridPoint {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t p = 0;
};

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)> &body) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; t++) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
}

std::vector<std::uint64_t> axis(const Range &range, std::size_t log_grid) {
    if (log_grid == 0 || range.lo == 0) {
        return range.values();
    }
    return log_spaced(range.lo, range.hi, log_grid);
}

Json rational_json(const Rational &r) {
    return to_string(r);
}

Json skipped(Json record, const std::string &reason) {
    record["pass"] = nullptr;
    record["status"] = "skipped";
    record["reason"] = reason;
    return record;
}

void set_status(Json &record, bool pass) {
    record["pass"] = pass;
    record["status"] = pass ? "pass" : "fail";
}

// ---- bound-table ---------------------------------------------------------

Json bound_table_record(const GridPoint &g) {
    Json r;
    r["n"] = g.n;
    r["k"] = g.k;
    try {
        auto bound = theorem_bound(g.n, g.k);
        auto h = likelihood_ratio_bound(g.n, g.k);
        r["theorem_bound"] = bound.value;
        r["theorem_bound_exact"] = rational_json(bound.exact);
        r["h_bound"] = h.value;
        r["h_bound_exact"] = rational_json(h.exact);
    } catch (const std::domain_error &e) {
        return skipped(std::move(r), e.what());
    }
    if (g.k + 4 <= g.n) {
        auto classical = classical_bound(g.n, g.k);
        r["classical_bound"] = classical.value;
        r["classical_bound_exact"] = rational_json(classical.exact);
    } else {
        r["classical_bound"] = nullptr;
        r["classical_bound_exact"] = nullptr;
    }
    set_status(r, true);
    return r;
}

// ---- distance ------------------------------------------------------------

Json distance_record(const GridPoint &g, const RunConfig &config, const std::optional<Rational> &x) {
    Json r;
    r["n"] = g.n;
    r["k"] = g.k;
    r["p"] = g.p;
    try {
        auto check = check_theorem(g.n, g.k, g.p, config.tail_eps, Arithmetic::kAuto, x);
        r["x"] = check.x;
        r["distance_lo"] = check.distance.lo;
        r["distance_hi"] = check.distance.hi;
        r["bound"] = check.bound.value;
        r["pass"] = false;
        r["x_exact"] = check.exact_x ? Json(rational_json(*check.exact_x)) : Json(nullptr);
        r["distance_exact"] = check.distance.exact ? Json(rational_json(*check.distance.exact)) : Json(nullptr);
        r["bound_exact"] = rational_json(check.bound.exact);
        r["slack"] = check.slack;
        r["slack_exact"] = check.exact_slack ? Json(rational_json(*check.exact_slack)) : Json(nullptr);
        r["sup_h"] = g.p > 0 && !x ? Json(check.sup_h) : Json(nullptr);
        r["h_bound"] = check.h_bound.value;
        r["h_ok"] = check.h_ok;
        r["arithmetic"] = check.exact ? "exact" : "float";
        r["tail_eps"] = config.tail_eps;
        set_status(r, check.pass && check.h_ok);
    } catch (const std::domain_error &e) {
        return skipped(std::move(r), e.what());
    } catch (const ResourceError &e) {
        return skipped(std::move(r), e.what());
    }
    return r;
}

// ---- proof-chain ---------------------------------------------------------

Json chain_record(const GridPoint &g, const RunConfig &config, bool with_details) {
    Json r;
    r["n"] = g.n;
    r["k"] = g.k;
    r["p"] = g.p;
    try {
        auto report = verify_chain(g.n, g.k, g.p, config.chain_tolerance);
        r["relation_js_ok"] = report.relation_js_ok;
        r["convex_j_ok"] = report.convex_j_ok;
        r["shifted_ok"] = report.shifted_ok;
        r["final_ok"] = report.final_ok;
        r["max_log_h"] = report.max_log_h;
        r["bound_log_h"] = report.bound_log_h;
        r["h_max"] = std::exp(report.max_log_h);
        r["h_bound"] = likelihood_ratio_bound(g.n, g.k).value;
        r["min_relation_js_slack"] = report.min_relation_js_slack;
        r["min_convex_j_slack"] = report.min_convex_j_slack;
        r["min_shifted_slack"] = report.min_shifted_slack;
        r["min_final_slack"] = report.min_final_slack;
        r["tolerance_only_count"] = report.tolerance_only_count;
        r["tolerance"] = report.tolerance;
        set_status(r, report.all_ok());
        if (with_details) {
            Json rows = Json::array();
            for (const auto &rec : report.per_l_records) {
                Json row;
                row["l"] = rec.l;
                row["log_h"] = rec.log_h;
                row["bound_log_h"] = rec.bound_log_h;
                row["slack"] = rec.slack;
                row["relation_js_ok"] = rec.relation_js_ok;
                row["convex_j_ok"] = rec.convex_j_ok;
                row["shifted_ok"] = rec.shifted_ok;
                row["final_ok"] = rec.final_ok;
                rows.push_back(std::move(row));
            }
            r["per_l_records"] = std::move(rows);
        }
    } catch (const std::domain_error &e) {
        return skipped(std::move(r), e.what());
    }
    return r;
}

// ---- fock-verify ---------------------------------------------------------

Json fock_record(const GridPoint &g, const RunConfig &config) {
    Json r;
    r["n"] = g.n;
    r["p"] = g.p;
    try {
        auto n = static_cast<std::uint32_t>(g.n);
        auto p = static_cast<std::uint32_t>(g.p);
        SectorState sigma = sigma_state(n, p, config.limits);
        r["sector_size"] = sigma.dimension();
        r["seeds"] = config.seeds;

        double invariance = 0.0;
        double unitarity = 0.0;
        std::uint64_t moved = 0;
        bool test_motion = sigma.dimension() > 1;
        std::vector<Eigen::MatrixXcd> first_lifts;
        std::vector<Eigen::MatrixXcd> first_units;
        for (std::uint64_t i = 0; i < config.seeds; i++) {
            auto spec = haar_random_unitary(n, derive_seed(config.seed, i));
            Eigen::MatrixXcd lifted = lift_unitary(spec.unitary, sigma.basis, config.limits);
            unitarity = std::max(unitarity, unitarity_defect(lifted));
            invariance = std::max(invariance, trace_distance(definetti::apply(lifted, sigma), sigma));
            if (test_motion) {
                std::mt19937_64 rng(derive_seed(config.seed ^ kNonInvarianceSalt, i));
                auto pure = SectorState::from_pure(sigma.basis, random_pure_amplitudes(sigma.basis, rng));
                if (trace_distance(definetti::apply(lifted, pure), pure) > kNonInvarianceThreshold) {
                    moved++;
                }
            }
            if (first_units.size() < 2) {
                first_units.push_back(spec.unitary);
                first_lifts.push_back(std::move(lifted));
            }
        }
        double homomorphism = 0.0;
        if (first_units.size() == 2) {
            Eigen::MatrixXcd product = lift_unitary(first_units[0] * first_units[1], sigma.basis, config.limits);
            homomorphism = (product - first_lifts[0] * first_lifts[1]).cwiseAbs().maxCoeff();
        }

        bool reduction_exact = true;
        for (std::uint32_t k = 1; k < n; k++) {
            auto reduced = partial_trace(sigma, k);
            auto f = reduced_number_distribution(n, k, p, Arithmetic::kExact);
            if (reduced.blocks.size() != f.exact_weights.size()) {
                reduction_exact = false;
                continue;
            }
            for (const auto &block : reduced.blocks) {
                if (!block.exact_weight || *block.exact_weight != f.exact_weights[block.photons]) {
                    reduction_exact = false;
                }
            }
        }

        r["invariance_max_deviation"] = invariance;
        r["unitarity_max_defect"] = unitarity;
        r["homomorphism_defect"] = homomorphism;
        r["reduction_exact"] = reduction_exact;
        if (test_motion && config.seeds > 0) {
            r["noninvariant_count"] = moved;
            r["noninvariant_fraction"] = static_cast<double>(moved) / static_cast<double>(config.seeds);
        } else {
            r["noninvariant_count"] = nullptr;
            r["noninvariant_fraction"] = nullptr;
        }
        r["tolerance"] = config.fock_tolerance;
        set_status(r, invariance < config.fock_tolerance && unitarity < config.fock_tolerance &&
                          homomorphism < config.fock_tolerance && reduction_exact);
    } catch (const ResourceError &e) {
        return skipped(std::move(r), e.what());
    } catch (const std::domain_error &e) {
        return skipped(std::move(r), e.what());
    }
    return r;
}

// ---- sphere --------------------------------------------------------------

Json sphere_record(const GridPoint &g, const RunConfig &config) {
    Json r;
    r["n"] = g.n;
    r["k"] = g.k;
    try {
        auto model = SphereModel::standard(g.n);
        r["radius"] = model.radius;
        auto quad = l1_distance_to_gaussian(model, g.k);
        auto bound = classical_bound(g.n, g.k);
        r["l1_quadrature"] = quad.value;
        r["quadrature_error"] = quad.error_estimate;
        r["classical_bound"] = bound.value;
        r["classical_bound_exact"] = rational_json(bound.exact);
        r["slack"] = bound.value - quad.value;
        bool pass = quad.value <= bound.value;
        if (config.samples > 0) {
            auto mc = mc_l1_estimate(model, g.k, config.samples, derive_seed(config.seed, g.n * 1000 + g.k));
            double z = std::abs(mc.estimate - quad.value) / mc.standard_error;
            r["mc_samples"] = mc.count;
            r["mc_estimate"] = mc.estimate;
            r["mc_standard_error"] = mc.standard_error;
            r["mc_z"] = z;
            r["mc_ok"] = z <= 3.0;
            pass = pass && z <= 3.0;
        } else {
            r["mc_samples"] = 0;
            r["mc_estimate"] = nullptr;
            r["mc_standard_error"] = nullptr;
            r["mc_z"] = nullptr;
            r["mc_ok"] = nullptr;
        }
        set_status(r, pass);
    } catch (const std::domain_error &e) {
        return skipped(std::move(r), e.what());
    }
    return r;
}

// ---- rendering -----------------------------------------------------------

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_cell(const Json &value) {
    if (value.is_null()) {
        return "";
    }
    if (value.is_boolean()) {
        return value.get<bool>() ? "true" : "false";
    }
    if (value.is_number_unsigned()) {
        return std::to_string(value.get<std::uint64_t>());
    }
    if (value.is_number_integer()) {
        return std::to_string(value.get<std::int64_t>());
    }
    if (value.is_number_float()) {
        return format_double(value.get<double>());
    }
    if (value.is_string()) {
        return csv_escape(value.get<std::string>());
    }
    return csv_escape(value.dump());
}

std::string render_csv(Command command, const std::vector<Json> &records) {
    const auto &columns = csv_columns(command);
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); i++) {
        out << (i ? "," : "") << columns[i];
    }
    out << "\n";
    for (const auto &rec : records) {
        for (std::size_t i = 0; i < columns.size(); i++) {
            auto it = rec.find(columns[i]);
            out << (i ? "," : "") << (it == rec.end() ? std::string() : csv_cell(*it));
        }
        out << "\n";
    }
    return out.str();
}

Json config_json(const RunConfig &config) {
    Json c;
    auto range = [](const std::optional<Range> &r) -> Json {
        if (!r) {
            return nullptr;
        }
        return std::to_string(r->lo) + ".." + std::to_string(r->hi);
    };
    c["n"] = range(config.n);
    c["k"] = range(config.k);
    c["p"] = range(config.p);
    c["log_grid"] = config.log_grid;
    c["x"] = config.x ? Json(*config.x) : Json(nullptr);
    c["tail_eps"] = config.tail_eps;
    c["chain_tolerance"] = config.chain_tolerance;
    c["fock_tolerance"] = config.fock_tolerance;
    c["seed"] = config.seed;
    c["seeds"] = config.seeds;
    c["samples"] = config.samples;
    c["limit_permanent_dim"] = config.limits.max_permanent_dim;
    c["limit_sector_size"] = config.limits.max_sector_size;
    return c;
}

Range require(const std::optional<Range> &r, const char *flag) {
    if (!r) {
        throw UsageError(std::string("missing required flag ") + flag);
    }
    return *r;
}

std::vector<GridPoint> build_grid(const RunConfig &config) {
    std::vector<GridPoint> grid;
    switch (config.command) {
        case Command::kBoundTable:
        case Command::kSphere: {
            for (auto n : axis(require(config.n, "--n"), config.log_grid)) {
                for (auto k : require(config.k, "--k").values()) {
                    grid.push_back({n, k, 0});
                }
            }
            break;
        }
        case Command::kDistance: {
            for (auto n : axis(require(config.n, "--n"), config.log_grid)) {
                for (auto k : require(config.k, "--k").values()) {
                    for (auto p : axis(require(config.p, "--p"), config.log_grid)) {
                        grid.push_back({n, k, p});
                    }
                }
            }
            break;
        }
        case Command::kProofChain: {
            for (auto n : axis(require(config.n, "--n"), config.log_grid)) {
                auto ks = config.k ? config.k->values() : chain_k_values(n);
                for (auto k : ks) {
                    for (auto p : axis(require(config.p, "--p"), config.log_grid)) {
                        grid.push_back({n, k, p});
                    }
                }
            }
            break;
        }
        case Command::kFockVerify: {
            for (auto n : require(config.n, "--n").values()) {
                for (auto p : require(config.p, "--p").values()) {
                    grid.push_back({n, 0, p});
                }
            }
            break;
        }
    }
    return grid;
}

}  // namespace

const char *command_name(Command command) {
    switch (command) {
        case Command::kBoundTable:
            return "bound-table";
        case Command::kDistance:
            return "distance";
        case Command::kProofChain:
            return "proof-chain";
        case Command::kFockVerify:
            return "fock-verify";
        case Command::kSphere:
            return "sphere";
    }
    return "unknown";
}

const std::vector<std::string> &csv_columns(Command command) {
    static const std::vector<std::string> bound_table = {
        "n", "k", "theorem_bound", "theorem_bound_exact", "h_bound", "h_bound_exact",
        "classical_bound", "classical_bound_exact", "pass", "status", "reason"};
    static const std::vector<std::string> distance = {
        "n", "k", "p", "x", "distance_lo", "distance_hi", "bound", "pass",
        "x_exact", "distance_exact", "bound_exact", "slack", "slack_exact", "sup_h", "h_bound", "h_ok",
        "arithmetic", "tail_eps", "status", "reason"};
    static const std::vector<std::string> proof_chain = {
        "n", "k", "p", "relation_js_ok", "convex_j_ok", "shifted_ok", "final_ok", "max_log_h", "bound_log_h",
        "h_max", "h_bound", "min_relation_js_slack", "min_convex_j_slack", "min_shifted_slack",
        "min_final_slack", "tolerance_only_count", "tolerance", "pass", "status", "reason"};
    static const std::vector<std::string> fock_verify = {
        "n", "p", "sector_size", "seeds", "invariance_max_deviation", "unitarity_max_defect",
        "homomorphism_defect", "reduction_exact", "noninvariant_count", "noninvariant_fraction", "tolerance",
        "pass", "status", "reason"};
    static const std::vector<std::string> sphere = {
        "n", "k", "radius", "l1_quadrature", "quadrature_error", "classical_bound", "classical_bound_exact",
        "slack", "mc_samples", "mc_estimate", "mc_standard_error", "mc_z", "mc_ok", "pass", "status", "reason"};
    switch (command) {
        case Command::kBoundTable:
            return bound_table;
        case Command::kDistance:
            return distance;
        case Command::kProofChain:
            return proof_chain;
        case Command::kFockVerify:
            return fock_verify;
        case Command::kSphere:
            return sphere;
    }
    return bound_table;
}

void RunConfig::validate() const {
    if (!(tail_eps > 0.0 && tail_eps < 1.0)) {
        throw UsageError("--tail-eps must lie in (0, 1)");
    }
    if (!(chain_tolerance > 0.0) || !(fock_tolerance > 0.0)) {
        throw UsageError("tolerances must be positive");
    }
    if (limits.max_permanent_dim == 0 || limits.max_sector_size == 0) {
        throw UsageError("resource limits must be positive");
    }
    if (x) {
        if (command != Command::kDistance) {
            throw UsageError("--x only applies to the distance command");
        }
        Rational value;
        try {
            value = parse_rational(*x);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("--x: ") + e.what());
        }
        if (value < 0) {
            throw UsageError("--x must be nonnegative");
        }
    }
    if (command == Command::kSphere && samples != 0 && samples < 1000) {
        throw UsageError("--samples must be 0 or at least 1000");
    }
}

RunResult run(const RunConfig &config) {
    config.validate();
    auto grid = build_grid(config);
    std::optional<Rational> x;
    if (config.x) {
        x = parse_rational(*config.x);
    }
    bool details = config.format == OutputFormat::kJson;

    std::vector<Json> records(grid.size());
    parallel_for(grid.size(), config.threads, [&](std::size_t i) {
        const GridPoint &g = grid[i];
        switch (config.command) {
            case Command::kBoundTable:
                records[i] = bound_table_record(g);
                break;
            case Command::kDistance:
                records[i] = distance_record(g, config, x);
                break;
            case Command::kProofChain:
                records[i] = chain_record(g, config, details);
                break;
            case Command::kFockVerify:
                records[i] = fock_record(g, config);
                break;
            case Command::kSphere:
                records[i] = sphere_record(g, config);
                break;
        }
    });

    RunResult result;
    result.records = records.size();
    for (const auto &rec : records) {
        const auto &status = rec["status"];
        if (status == "pass") {
            result.passed++;
        } else if (status == "fail") {
            result.failed++;
        } else {
            result.skipped++;
        }
    }
    result.exit_code = result.failed == 0 ? kExitPass : kExitFail;

    if (config.format == OutputFormat::kCsv) {
        result.output = render_csv(config.command, records);
    } else {
        Json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = command_name(config.command);
        doc["config"] = config_json(config);
        doc["summary"] = {{"records", result.records},
                          {"passed", result.passed},
                          {"failed", result.failed},
                          {"skipped", result.skipped},
                          {"all_pass", result.failed == 0}};
        doc["records"] = records;
        result.output = doc.dump(2) + "\n";
    }
    return result;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Numerical checks of the de Finetti bound for orthogonally invariant bosonic states"};
    app.require_subcommand(1);
    RunConfig config;
    std::string n_text;
    std::string k_text;
    std::string p_text;
    std::string x_text;
    std::string format_text = "csv";
    std::string out_text;

    auto add_common = [&](CLI::App *sub, bool needs_k, bool needs_p) {
        sub->add_option("--n", n_text, "mode count range A..B")->required();
        if (needs_k) {
            sub->add_option("--k", k_text, "retained mode range A..B");
        }
        if (needs_p) {
            sub->add_option("--p", p_text, "photon number range A..B")->required();
        }
        sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_text, "output path (default stdout)");
        sub->add_option("--threads", config.threads, "worker threads (0 = hardware)");
    };

    auto *bound = app.add_subcommand("bound-table", "theorem and classical bounds over (n, k)");
    add_common(bound, true, false);

    auto *distance = app.add_subcommand("distance", "exact distance vs bound over (n, k, p)");
    add_common(distance, true, true);
    distance->add_option("--x", x_text, "mean photon number override (a/b or decimal)");
    distance->add_option("--tail-eps", config.tail_eps, "thermal tail truncation");
    distance->add_option("--log-grid", config.log_grid, "log-spaced points per n/p axis");

    auto *chain = app.add_subcommand("proof-chain", "verify each inequality of the proof");
    add_common(chain, true, true);
    chain->add_option("--tolerance", config.chain_tolerance, "relative slack tolerance");
    chain->add_option("--log-grid", config.log_grid, "log-spaced points per n/p axis");

    auto *fock = app.add_subcommand("fock-verify", "interferometer invariance and reduction checks");
    add_common(fock, false, true);
    fock->add_option("--seeds", config.seeds, "Haar samples per sector");
    fock->add_option("--seed", config.seed, "base seed");
    fock->add_option("--tolerance", config.fock_tolerance, "invariance tolerance");
    fock->add_option("--limit-permanent-dim", config.limits.max_permanent_dim, "largest permanent");
    fock->add_option("--limit-sector-size", config.limits.max_sector_size, "largest sector dimension");

    auto *sphere = app.add_subcommand("sphere", "sphere marginals vs Gaussian");
    add_common(sphere, true, false);
    sphere->add_option("--samples", config.samples, "Monte Carlo samples (0 = off)");
    sphere->add_option("--seed", config.seed, "base seed");
    sphere->add_option("--log-grid", config.log_grid, "log-spaced points along n");

    // Accept `--x` etc. on subcommands only; a shared --tail-eps lives on distance.
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (bound->parsed()) {
            config.command = Command::kBoundTable;
        } else if (distance->parsed()) {
            config.command = Command::kDistance;
        } else if (chain->parsed()) {
            config.command = Command::kProofChain;
        } else if (fock->parsed()) {
            config.command = Command::kFockVerify;
        } else {
            config.command = Command::kSphere;
        }
        auto parse_range = [](const std::string &text, const char *flag) -> std::optional<Range> {
            if (text.empty()) {
                return std::nullopt;
            }
            try {
                return Range::parse(text);
            } catch (const std::invalid_argument &e) {
                throw UsageError(std::string(flag) + ": " + e.what());
            }
        };
        config.n = parse_range(n_text, "--n");
        config.k = parse_range(k_text, "--k");
        config.p = parse_range(p_text, "--p");
        if (!x_text.empty()) {
            config.x = x_text;
        }
        config.format = format_text == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
        if (!out_text.empty()) {
            config.out_path = out_text;
        }
        if ((config.command == Command::kBoundTable || config.command == Command::kDistance ||
             config.command == Command::kSphere) &&
            !config.k) {
            throw UsageError("missing required flag --k");
        }

        RunResult result = run(config);
        if (config.out_path) {
            std::ofstream file(*config.out_path, std::ios::binary);
            if (!file || !(file << result.output) || !file.flush()) {
                err << "error: cannot write " << *config.out_path << "\n";
                return kExitIo;
            }
        } else {
            out << result.output;
        }
        err << command_name(config.command) << ": " << result.records << " records, " << result.passed
            << " passed, " << result.failed << " failed, " << result.skipped << " skipped\n";
        return result.exit_code;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace definetti
