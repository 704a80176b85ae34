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
// Result serialization: sweep CSV (locale-independent, full round-trip
// precision), the JSON run manifest that makes a sweep reproducible, and
// JSON dumps of solver reports.

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irsifc/driver.hpp"

namespace irsifc {

/// Shortest decimal string that parses back to the identical double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct SweepSpec {
    std::string channel_file;
    std::vector<RateProfile> zetas;
    std::vector<Scheme> schemes;
    BcdOptions options;
};

inline std::string sweep_csv(const std::vector<ParetoPoint>& points, int K) {
    std::ostringstream out;
    out << "scheme";
    for (int k = 1; k <= K; ++k) out << ",zeta_" << k;
    out << ",R";
    for (int k = 1; k <= K; ++k) out << ",R_" << k;
    out << ",seed,status\n";
    for (const auto& pt : points) {
        out << scheme_name(pt.scheme);
        for (int k = 0; k < K; ++k) out << "," << format_double(pt.zeta(k));
        out << "," << format_double(pt.R);
        for (int k = 0; k < K; ++k) out << "," << format_double(pt.rates(k));
        out << "," << pt.seed << "," << (pt.ok ? "ok" : "failed") << "\n";
    }
    return out.str();
}

inline Scheme scheme_from_name(const std::string& name) {
    if (name == "proposed") return Scheme::kProposed;
    if (name == "random-reflective") return Scheme::kRandomReflective;
    if (name == "no-irs") return Scheme::kNoIrs;
    throw InvalidInput("unknown scheme '" + name +
                       "' (expected proposed, random-reflective or no-irs)");
}

inline nlohmann::json options_to_json(const BcdOptions& o) {
    return {{"eps_outer", o.eps_outer}, {"eps_bisect", o.eps_bisect},
            {"feas_tol", o.feas_tol},   {"n_rand", o.n_rand},
            {"max_outer", o.max_outer}, {"seed", o.seed},
            {"init", o.init == ReflectInit::kAllOnes ? "all-ones" : "single-user-ascent"}};
}

inline BcdOptions options_from_json(const nlohmann::json& j) {
    BcdOptions o;
    o.eps_outer = j.at("eps_outer").get<double>();
    o.eps_bisect = j.at("eps_bisect").get<double>();
    o.feas_tol = j.at("feas_tol").get<double>();
    o.n_rand = j.at("n_rand").get<int>();
    o.max_outer = j.at("max_outer").get<int>();
    o.seed = j.at("seed").get<uint64_t>();
    o.init = j.at("init").get<std::string>() == "single-user-ascent"
                 ? ReflectInit::kSingleUserAscent
                 : ReflectInit::kAllOnes;
    return o;
}

/// Everything needed to regenerate the CSV byte-for-byte (thread count is
/// excluded on purpose; results do not depend on it).
inline nlohmann::json sweep_manifest(const SweepSpec& spec) {
    nlohmann::json j;
    j["tool"] = "irsifc";
    j["version"] = kVersion;
    j["command"] = "sweep";
    j["channel_file"] = spec.channel_file;
    nlohmann::json zl = nlohmann::json::array();
    for (const auto& z : spec.zetas)
        zl.push_back(std::vector<double>(z.weights.begin(), z.weights.end()));
    j["zetas"] = std::move(zl);
    nlohmann::json sl = nlohmann::json::array();
    for (Scheme s : spec.schemes) sl.push_back(scheme_name(s));
    j["schemes"] = std::move(sl);
    j["options"] = options_to_json(spec.options);
    return j;
}

inline SweepSpec sweep_spec_from_manifest(const nlohmann::json& j) {
    SweepSpec spec;
    try {
        spec.channel_file = j.at("channel_file").get<std::string>();
        for (const auto& zj : j.at("zetas")) {
            auto vals = zj.get<std::vector<double>>();
            RateProfile z;
            z.weights = Eigen::Map<RVec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
            spec.zetas.push_back(std::move(z));
        }
        for (const auto& sj : j.at("schemes"))
            spec.schemes.push_back(scheme_from_name(sj.get<std::string>()));
        spec.options = options_from_json(j.at("options"));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("manifest: ") + e.what());
    }
    return spec;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json state_to_json(const BeamformingState& st) {
    nlohmann::json j;
    nlohmann::json tx = nlohmann::json::array(), reflect = nlohmann::json::array();
    for (const auto& w : st.tx) tx.push_back(detail::cvec_to_json(w));
    for (const auto& v : st.reflect) reflect.push_back(detail::cvec_to_json(v));
    j["tx"] = std::move(tx);
    j["reflect"] = std::move(reflect);
    return j;
}

inline nlohmann::json bcd_report_to_json(const BcdReport& rep, const RateProfile& zeta,
                                         const BcdOptions& opt) {
    nlohmann::json j;
    j["tool"] = "irsifc";
    j["version"] = kVersion;
    j["zeta"] = std::vector<double>(zeta.weights.begin(), zeta.weights.end());
    j["options"] = options_to_json(opt);
    j["R"] = rep.R;
    j["R_trace"] = rep.R_trace;
    j["rates"] = std::vector<double>(rep.rates.begin(), rep.rates.end());
    j["outer_iters"] = rep.outer_iters;
    j["converged"] = rep.converged;
    j["failures"] = rep.failures;
    j["profile_ok"] = rep.profile_ok;
    j["state"] = state_to_json(rep.state);
    return j;
}

inline nlohmann::json ascent_report_to_json(const CoordinateAscentReport& rep, int user,
                                            double rate) {
    nlohmann::json j;
    j["tool"] = "irsifc";
    j["version"] = kVersion;
    j["user"] = user;
    j["snr_trace"] = rep.snr_trace;
    j["snr"] = rep.snr_trace.back();
    j["rate"] = rate;
    j["sweeps"] = rep.sweeps;
    j["converged"] = rep.converged;
    nlohmann::json reflect = nlohmann::json::array();
    for (const auto& v : rep.reflect) reflect.push_back(detail::cvec_to_json(v));
    j["reflect"] = std::move(reflect);
    return j;
}

}  // namespace irsifc
