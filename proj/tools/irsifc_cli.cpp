// irsifc - beamforming and rate-region toolkit for IRS-aided MISO interference channels
// Copyright (C) 2026 the irsifc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Command-line entry point.
//   generate    synthesize a channel file from a preset or config file
//   sweep       trace the rate region over a profile grid, emit CSV + manifest
//   single      run the alternating optimization for one profile
//   singleuser  coordinate-ascent corner point for one user
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure in all points,
// 3 I/O error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <thread>

#include "irsifc/presets.hpp"
#include "irsifc/sweep_io.hpp"

namespace {

using namespace irsifc;

RateProfile parse_zeta(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            vals.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw InvalidInput("cannot parse zeta entry '" + item + "'");
        }
    }
    RateProfile z;
    z.weights = Eigen::Map<RVec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
    z.validate();
    return z;
}

ScenarioPreset scenario_from_config_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("config file: " + std::string(e.what()));
    }
    ScenarioPreset sp;
    try {
        const auto& jc = j.at("config");
        sp.config.K = jc.at("K").get<int>();
        sp.config.M = jc.at("M").get<int>();
        sp.config.N = jc.at("N").get<int>();
        auto P = jc.at("P").get<std::vector<double>>();
        sp.config.P = Eigen::Map<RVec>(P.data(), static_cast<Eigen::Index>(P.size()));
        sp.config.sigma2 = jc.at("sigma2").get<double>();
        sp.config.seed = jc.value("seed", uint64_t{0});
        const auto& jg = j.at("geometry");
        sp.geom.tx = detail::positions_from_json(jg.at("tx"));
        sp.geom.rx = detail::positions_from_json(jg.at("rx"));
        sp.geom.irs = detail::positions_from_json(jg.at("irs"));
        const auto& jp = j.at("pathloss");
        sp.plm.C0 = jp.at("C0").get<double>();
        sp.plm.d0 = jp.at("d0").get<double>();
        sp.plm.beta_direct = jp.at("beta_direct").get<double>();
        sp.plm.beta_tx_irs = jp.at("beta_tx_irs").get<double>();
        sp.plm.beta_irs_rx = jp.at("beta_irs_rx").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError("config file: " + std::string(e.what()));
    }
    return sp;
}

struct AlgoFlags {
    BcdOptions opts;
    void attach(CLI::App* cmd) {
        cmd->add_option("--eps-outer", opts.eps_outer, "Outer-loop stopping gain [bits]");
        cmd->add_option("--eps-bisect", opts.eps_bisect, "Bisection width target [bits]");
        cmd->add_option("--feas-tol", opts.feas_tol, "Feasibility margin tolerance");
        cmd->add_option("--n-rand", opts.n_rand,
                        "Gaussian randomization samples per probe (3000 for full scale)");
        cmd->add_option("--max-outer", opts.max_outer, "Outer iteration cap");
        cmd->add_option("--seed", opts.seed, "Algorithm seed");
        std::map<std::string, ReflectInit> inits{
            {"all-ones", ReflectInit::kAllOnes},
            {"single-user-ascent", ReflectInit::kSingleUserAscent}};
        cmd->add_option("--init", opts.init, "Reflective initialization")
            ->transform(CLI::CheckedTransformer(inits, CLI::ignore_case));
    }
};

int cmd_generate(const std::string& out_path, const std::string& preset,
                 const std::string& config_path, std::optional<uint64_t> seed,
                 std::optional<double> snr_db) {
    ScenarioPreset sp;
    if (!config_path.empty()) {
        sp = scenario_from_config_file(config_path);
        if (seed) {
            sp.config.seed = *seed;
        }
    } else {
        sp = preset_by_name(preset, seed.value_or(0));
    }
    if (snr_db) sp.config.sigma2 = sp.config.P.maxCoeff() / std::pow(10.0, *snr_db / 10.0);
    auto cs = generate_preset(sp);
    save_channels(cs, out_path);
    std::cout << "wrote " << out_path << " (K=" << cs.config.K << " M=" << cs.config.M
              << " N=" << cs.config.N << " seed=" << cs.config.seed << ")\n";
    return 0;
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_csv, int jobs) {
    auto cs = load_channels(spec.channel_file);
    for (const auto& z : spec.zetas) {
        z.validate();
        if (z.weights.size() != cs.config.K)
            throw InvalidInput("zeta length must equal K=" + std::to_string(cs.config.K));
    }
    if (spec.zetas.empty() || spec.schemes.empty())
        throw InvalidInput("sweep needs at least one zeta and one scheme");

    auto points = pareto_sweep(cs, spec.zetas, spec.schemes, spec.options, jobs);
    write_text_file(out_csv, sweep_csv(points, cs.config.K));
    write_text_file(out_csv + ".manifest.json", sweep_manifest(spec).dump(1) + "\n");

    int failed = 0;
    for (const auto& pt : points) failed += pt.ok ? 0 : 1;
    std::cout << "wrote " << out_csv << " (" << points.size() << " points, " << failed
              << " with failures) and " << out_csv << ".manifest.json\n";
    return (failed == static_cast<int>(points.size())) ? 2 : 0;
}

int cmd_single(const std::string& channel_path, const std::string& zeta_text,
               const std::string& out_path, const BcdOptions& opts) {
    auto cs = load_channels(channel_path);
    RateProfile zeta = parse_zeta(zeta_text);
    if (zeta.weights.size() != cs.config.K)
        throw InvalidInput("zeta length must equal K=" + std::to_string(cs.config.K));

    auto rep = bcd_solve(cs, zeta, opts);
    auto j = bcd_report_to_json(rep, zeta, opts);

    // At a corner profile, compare against the dedicated single-user method.
    for (int k = 0; k < cs.config.K; ++k) {
        if (zeta.weights(k) == 1.0) {
            auto ca = coordinate_ascent(cs, k, std::vector<CVec>(cs.config.K, CVec::Ones(cs.config.N)));
            const double snr_bcd = std::pow(2.0, rep.R) - 1.0;
            j["singleuser_comparison"] = {
                {"user", k},
                {"snr_bcd", snr_bcd},
                {"snr_coordinate_ascent", ca.snr_trace.back()},
                {"relative_gap",
                 std::abs(snr_bcd - ca.snr_trace.back()) / std::max(snr_bcd, ca.snr_trace.back())}};
        }
    }
    const std::string text = j.dump(1) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return rep.failures > 0 ? 2 : 0;
}

int cmd_singleuser(const std::string& channel_path, int user, const std::string& out_path,
                   double eps, int max_sweeps, bool random_init, uint64_t init_seed) {
    auto cs = load_channels(channel_path);
    if (user < 0 || user >= cs.config.K) throw InvalidInput("user index out of range");
    std::vector<CVec> v0(cs.config.K, CVec::Ones(cs.config.N));
    if (random_init) {
        StreamRng rng(init_seed, "singleuser_init");
        for (auto& v : v0)
            for (int n = 0; n < cs.config.N; ++n)
                v(n) = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
    }
    auto rep = coordinate_ascent(cs, user, v0, eps, max_sweeps);
    const double rate = std::log2(1.0 + rep.snr_trace.back());
    const std::string text = ascent_report_to_json(rep, user, rate).dump(1) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rate-region computation for IRS-aided MISO interference channels"};
    app.set_version_flag("--version", std::string("irsifc ") + irsifc::kVersion);
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Synthesize a channel file");
    std::string gen_out, gen_preset = "desk", gen_config;
    std::optional<uint64_t> gen_seed;
    std::optional<double> gen_snr_db;
    gen->add_option("out", gen_out, "Output channel file")->required();
    gen->add_option("--preset", gen_preset, "Scenario preset: desk or paper");
    gen->add_option("--config", gen_config, "Scenario config file (JSON)");
    gen->add_option("--seed", gen_seed, "Channel seed");
    gen->add_option("--snr-db", gen_snr_db, "Transmit SNR max(P)/sigma2 in dB");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Rate-region sweep over profile grid");
    std::string sw_channel, sw_out = "results.csv", sw_manifest;
    std::vector<std::string> sw_zetas;
    std::string sw_schemes = "proposed,random-reflective,no-irs";
    int sw_grid = 0;
    int sw_jobs = static_cast<int>(std::thread::hardware_concurrency());
    AlgoFlags sw_flags;
    sw->add_option("channel", sw_channel, "Channel file");
    sw->add_option("--from-manifest", sw_manifest, "Re-run a recorded sweep");
    sw->add_option("--out", sw_out, "Output CSV path");
    sw->add_option("--zeta", sw_zetas, "Profile weights, e.g. 0.5,0.5 (repeatable)");
    sw->add_option("--grid", sw_grid, "Evenly spaced two-user profile grid size");
    sw->add_option("--schemes", sw_schemes, "Comma-separated scheme list");
    sw->add_option("--jobs", sw_jobs, "Worker threads");
    sw_flags.attach(sw);

    // single
    auto* sg = app.add_subcommand("single", "Single profile run with full report");
    std::string sg_channel, sg_zeta, sg_out;
    AlgoFlags sg_flags;
    sg->add_option("channel", sg_channel, "Channel file")->required();
    sg->add_option("--zeta", sg_zeta, "Profile weights, e.g. 1,0")->required();
    sg->add_option("--out", sg_out, "Report path (stdout when omitted)");
    sg_flags.attach(sg);

    // singleuser
    auto* su = app.add_subcommand("singleuser", "Coordinate-ascent corner point");
    std::string su_channel, su_out;
    int su_user = 0, su_max_sweeps = 500;
    double su_eps = 1e-8;
    bool su_random_init = false;
    uint64_t su_init_seed = 0;
    su->add_option("channel", su_channel, "Channel file")->required();
    su->add_option("--user", su_user, "User index");
    su->add_option("--out", su_out, "Report path (stdout when omitted)");
    su->add_option("--eps", su_eps, "SNR gain threshold per sweep");
    su->add_option("--max-sweeps", su_max_sweeps, "Sweep cap");
    su->add_flag("--random-init", su_random_init, "Random initial phases");
    su->add_option("--init-seed", su_init_seed, "Seed for --random-init");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_out, gen_preset, gen_config, gen_seed, gen_snr_db);
        if (sw->parsed()) {
            SweepSpec spec;
            if (!sw_manifest.empty()) {
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(irsifc::read_text_file(sw_manifest));
                } catch (const nlohmann::json::exception& e) {
                    throw irsifc::IoError("manifest: " + std::string(e.what()));
                }
                spec = irsifc::sweep_spec_from_manifest(j);
            } else {
                if (sw_channel.empty())
                    throw irsifc::InvalidInput("sweep needs a channel file or --from-manifest");
                spec.channel_file = sw_channel;
                for (const auto& zt : sw_zetas) spec.zetas.push_back(parse_zeta(zt));
                if (sw_grid > 0) {
                    for (auto& z : irsifc::zeta_grid_2user(sw_grid)) spec.zetas.push_back(z);
                }
                if (spec.zetas.empty())
                    throw irsifc::InvalidInput("sweep needs --zeta or --grid");
                std::stringstream ss(sw_schemes);
                std::string item;
                while (std::getline(ss, item, ','))
                    spec.schemes.push_back(irsifc::scheme_from_name(item));
                spec.options = sw_flags.opts;
            }
            return cmd_sweep(spec, sw_out, sw_jobs);
        }
        if (sg->parsed()) return cmd_single(sg_channel, sg_zeta, sg_out, sg_flags.opts);
        if (su->parsed())
            return cmd_singleuser(su_channel, su_user, su_out, su_eps, su_max_sweeps,
                                  su_random_init, su_init_seed);
    } catch (const irsifc::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const irsifc::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
