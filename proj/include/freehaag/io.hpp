#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "freehaag/cumulants.hpp"
#include "freehaag/haagerup.hpp"
#include "freehaag/models.hpp"
#include "freehaag/partition.hpp"
#include "freehaag/rational.hpp"
#include "freehaag/spectral.hpp"

namespace freehaag {

/// All machine-readable output goes through ordered JSON so that a fixed
/// input yields byte-identical bytes. Exact values are "p/q" strings;
/// float views live in fields suffixed "_float".
using Json = nlohmann::ordered_json;

inline Json partition_to_json(const Partition& p) {
    Json blocks = Json::array();
    for (const auto& b : p.blocks()) blocks.push_back(b);
    return blocks;
}

inline Partition partition_from_json(const Json& j, int ground_size) {
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j) blocks.push_back(b.get<std::vector<int>>());
    return Partition(ground_size, std::move(blocks));
}

inline Json tensor_to_json(const ParticleTensor& T) {
    Json j;
    j["n"] = T.n();
    j["index_set"] = T.index_names();
    Json coeffs = Json::array();
    for (const auto& [word, value] : T.support()) {
        Json entry;
        Json names = Json::array();
        for (int idx : word) names.push_back(T.index_names()[static_cast<size_t>(idx)]);
        entry["word"] = names;
        entry["re"] = format_rational(value.re);
        entry["im"] = format_rational(value.im);
        coeffs.push_back(entry);
    }
    j["coeffs"] = coeffs;
    return j;
}

inline ParticleTensor tensor_from_json(const Json& j) {
    try {
        const int n = j.at("n").get<int>();
        const auto names = j.at("index_set").get<std::vector<std::string>>();
        std::map<std::string, int> index_of;
        for (size_t i = 0; i < names.size(); ++i) index_of[names[i]] = static_cast<int>(i);
        std::map<std::vector<int>, Complex> coeffs;
        for (const auto& entry : j.at("coeffs")) {
            std::vector<int> word;
            for (const auto& name : entry.at("word")) {
                auto it = index_of.find(name.get<std::string>());
                if (it == index_of.end())
                    throw input_error("tensor: word uses an index not in index_set");
                word.push_back(it->second);
            }
            Complex value{parse_rational(entry.at("re").get<std::string>()),
                          entry.contains("im") ? parse_rational(entry.at("im").get<std::string>())
                                               : Rational(0)};
            coeffs[std::move(word)] = value;
        }
        return ParticleTensor(n, names, coeffs);
    } catch (const Json::exception& e) {
        throw input_error(std::string("tensor: malformed JSON: ") + e.what());
    }
}

inline ParticleTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open tensor file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw input_error(std::string("tensor file is not valid JSON: ") + e.what());
    }
    return tensor_from_json(j);
}

inline Json model_to_json(const RDiagonalModel& a) {
    Json j;
    j["name"] = a.name();
    Json alpha = Json::array(), beta = Json::array();
    for (int k = 1; k <= a.seq().k_max(); ++k) {
        alpha.push_back(format_rational(a.seq().alpha(k)));
        beta.push_back(format_rational(a.seq().beta(k)));
    }
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["two_norm_sq"] = format_rational(a.two_norm_sq());
    j["op_norm"][a.op_norm().is_exact ? "value" : "upper_bound"] =
        format_rational(a.op_norm().value);
    return j;
}

inline RDiagonalModel model_from_json(const Json& j) {
    try {
        std::vector<Rational> alpha, beta;
        for (const auto& v : j.at("alpha")) alpha.push_back(parse_rational(v.get<std::string>()));
        if (j.contains("beta"))
            for (const auto& v : j.at("beta")) beta.push_back(parse_rational(v.get<std::string>()));
        else
            beta = alpha;
        const Rational two = parse_rational(j.at("two_norm_sq").get<std::string>());
        const auto& op = j.at("op_norm");
        OpNorm norm = op.contains("value")
                          ? OpNorm::exact(parse_rational(op.at("value").get<std::string>()))
                          : OpNorm::upper_bound(parse_rational(op.at("upper_bound").get<std::string>()));
        return RDiagonalModel(j.at("name").get<std::string>(),
                              DeterminingSequence(std::move(alpha), std::move(beta)), two, norm);
    } catch (const Json::exception& e) {
        throw input_error(std::string("model: malformed JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw input_error(std::string("model: invalid data: ") + e.what());
    }
}

inline RDiagonalModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open model file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw input_error(std::string("model file is not valid JSON: ") + e.what());
    }
    return model_from_json(j);
}

inline Json report_to_json(const InequalityReport& r) {
    Json j;
    j["model"] = r.model;
    j["check"] = r.check;
    j["n"] = r.n;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e;
        e["m"] = row.m;
        e["lhs_pow"] = format_rational(row.lhs_pow);
        if (row.rhs_pow) e["rhs_pow"] = format_rational(*row.rhs_pow);
        e["lhs_float"] = row.lhs_float;
        e["rhs_float"] = row.rhs_float;
        e["slack_float"] = row.slack;
        e["pass"] = row.pass;
        rows.push_back(e);
    }
    j["rows"] = rows;
    j["verdict"] = r.pass ? "pass" : "fail";
    return j;
}

inline Json growth_report_to_json(const GrowthBoundReport& r) {
    Json j;
    j["model"] = r.model;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e;
        e["k"] = row.k;
        e["alpha_abs"] = format_rational(row.alpha_abs);
        e["beta_abs"] = format_rational(row.beta_abs);
        e["bound"] = format_rational(row.bound);
        e["pass"] = row.pass;
        rows.push_back(e);
    }
    j["rows"] = rows;
    j["verdict"] = r.pass ? "pass" : "fail";
    return j;
}

inline Json sharpness_report_to_json(const SharpnessReport& r) {
    Json j;
    j["k"] = r.k;
    j["two_norm_sq"] = format_rational(r.two_norm_sq);
    Json rows = Json::array();
    for (size_t i = 0; i < r.moment_pows.size(); ++i) {
        Json e;
        e["m"] = static_cast<int>(i + 1);
        e["moment_pow"] = format_rational(r.moment_pows[i]);
        e["norm_float"] = r.norms[i];
        rows.push_back(e);
    }
    j["rows"] = rows;
    j["limit_float"] = r.limit;
    j["ratio_float"] = r.ratio;
    j["nondecreasing"] = r.nondecreasing;
    j["bounded_by_limit"] = r.bounded;
    j["ratio_exceeds_sqrt_e"] = r.ratio_exceeds_sqrt_e;
    j["verdict"] = r.pass ? "pass" : "fail";
    return j;
}

inline Json ultra_report_to_json(const UltraReport& r) {
    Json j;
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e;
        e["t_float"] = row.t;
        e["kernel_float"] = row.kernel;
        e["bound_float"] = row.bound;
        e["ratio_float"] = row.ratio;
        e["pass"] = row.pass;
        rows.push_back(e);
    }
    j["rows"] = rows;
    j["sup_ratio_float"] = r.sup_ratio;
    j["sup_in_window"] = r.sup_in_window;
    j["decreasing"] = r.decreasing;
    j["verdict"] = r.pass ? "pass" : "fail";
    return j;
}

/// CSV density file: one "r,f" row per sample.
inline RadialDensity load_density_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open density file: " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double r, f;
        char comma;
        if (!(ls >> r >> comma >> f) || comma != ',')
            throw input_error("density file: expected 'r,f' rows");
        samples.emplace_back(r, f);
    }
    try {
        return RadialDensity::from_samples(std::move(samples));
    } catch (const std::invalid_argument& e) {
        throw input_error(std::string("density file: ") + e.what());
    }
}

} // namespace freehaag
