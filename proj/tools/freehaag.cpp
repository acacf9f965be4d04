// Command-line front end: every verification pipeline of the library with
// machine-readable JSON (or CSV) output. Exact values are printed as
// "p/q"; floats only appear in fields suffixed _float. A fixed
// configuration (including seed and thread count) produces byte-identical
// JSON.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "freehaag/bijection.hpp"
#include "freehaag/corpus.hpp"
#include "freehaag/counting.hpp"
#include "freehaag/cumulants.hpp"
#include "freehaag/haagerup.hpp"
#include "freehaag/io.hpp"
#include "freehaag/models.hpp"
#include "freehaag/spectral.hpp"

using namespace freehaag;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitSize = 2;
constexpr int kExitInput = 3;

// The CLI default is a little above the library's pattern ceiling so the
// documented (3,4) examples run without flags.
constexpr int kCliDefaultCeiling = 24;

int effective_ceiling(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("FREEHAAG_CEILING")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw input_error("FREEHAAG_CEILING is not an integer");
        }
    }
    return kCliDefaultCeiling;
}

RDiagonalModel resolve_model(const std::string& spec, int k_max) {
    if (spec == "circular") return circular(k_max);
    if (spec == "haar") return haar_unitary(k_max);
    if (spec.rfind("b:", 0) == 0) {
        const auto comma = spec.find(',');
        if (comma == std::string::npos)
            throw input_error("b-model spec must look like b:<gamma>,<lambda>");
        return b_model(parse_rational(spec.substr(2, comma - 2)), parse_rational(spec.substr(comma + 1)),
                       k_max);
    }
    return load_model(spec);
}

StarWord parse_star_word(const std::string& text) {
    // comma-separated letters, trailing '*' marks a star: "1,2*,1,2*"
    StarWord w;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) throw input_error("star word: empty letter");
        bool star = item.back() == '*';
        if (star) item.pop_back();
        try {
            w.push_back({std::stoi(item), star});
        } catch (const std::exception&) {
            throw input_error("star word: bad index '" + item + "'");
        }
    }
    if (w.empty()) throw input_error("star word: empty word");
    return w;
}

std::vector<double> parse_grid(const std::string& spec) {
    // lo:hi:count[:log|:lin]
    std::vector<std::string> parts;
    std::istringstream in(spec);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) throw input_error("grid spec: lo:hi:count[:log|lin]");
    try {
        const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
        const int count = std::stoi(parts[2]);
        const bool log_scale = parts.size() < 4 || parts[3] == "log";
        if (log_scale) return log_grid(lo, hi, count);
        if (!(hi > lo) || count < 2) throw input_error("grid spec: bad range");
        std::vector<double> out;
        for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
        return out;
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error("grid spec: not numeric");
    }
}

void emit(const Json& j, bool csv_mode, const std::vector<std::string>& csv_columns) {
    if (!csv_mode) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // CSV for row-shaped reports: header then one line per row entry.
    for (size_t i = 0; i < csv_columns.size(); ++i)
        std::cout << (i ? "," : "") << csv_columns[i];
    std::cout << "\n";
    for (const auto& row : j.at("rows")) {
        for (size_t i = 0; i < csv_columns.size(); ++i) {
            const auto& key = csv_columns[i];
            std::cout << (i ? "," : "");
            if (!row.contains(key)) continue;
            const auto& v = row.at(key);
            if (v.is_string())
                std::cout << v.get<std::string>();
            else
                std::cout << v.dump();
        }
        std::cout << "\n";
    }
}

struct CountOptions {
    int n = 1, m = 1;
    bool nc = false, star = false, alternating = false, no_intrablock = false, multichains = false;
    bool catalan_only = false, fuss = false;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"freehaag: exact combinatorics of non-crossing partitions, R-diagonal moments, "
                 "and strong Haagerup / ultracontractivity checks"};
    app.require_subcommand(1);
    app.fallthrough();

    int ceiling_flag = 0;
    int threads = 1;
    int k_max = kDefaultKMax;
    std::uint64_t seed = 1;
    bool csv = false;
    app.add_option("--ceiling", ceiling_flag,
                   "enumeration ceiling override (also env FREEHAAG_CEILING)");
    app.add_option("--k-max", k_max, "cumulant truncation order for builtin models");
    app.add_option("--threads", threads, "degree of parallelism (output-invariant)");
    app.add_option("--seed", seed, "seed for random tensor generation");
    app.add_flag("--csv", csv, "emit CSV tables instead of JSON where applicable");

    // ---- count ----
    auto* count = app.add_subcommand("count", "count a combinatorial family");
    count->fallthrough();
    CountOptions copt;
    count->add_option("--n", copt.n, "block length n");
    count->add_option("--m", copt.m, "group count m");
    count->add_flag("--nc", copt.nc, "|NC(n)| by enumeration");
    count->add_flag("--star-pairings", copt.star, "|NC2*(n,m)| by enumeration");
    count->add_flag("--alternating", copt.alternating, "|NC*(n,m)| by enumeration");
    count->add_flag("--no-intrablock", copt.no_intrablock, "|T(n,m)| by enumeration");
    count->add_flag("--multichains", copt.multichains, "multichain count by enumeration");
    count->add_flag("--catalan", copt.catalan_only, "catalan(n), formula only");
    count->add_flag("--fuss-catalan", copt.fuss, "fuss_catalan(n,m), formula only");

    // ---- enumerate ----
    auto* enumerate = app.add_subcommand("enumerate", "stream a family in canonical text form");
    enumerate->fallthrough();
    CountOptions eopt;
    enumerate->add_option("--n", eopt.n, "block length n");
    enumerate->add_option("--m", eopt.m, "group count m");
    enumerate->add_flag("--nc", eopt.nc, "NC(n)");
    enumerate->add_flag("--star-pairings", eopt.star, "NC2*(n,m)");
    enumerate->add_flag("--alternating", eopt.alternating, "NC*(n,m)");
    enumerate->add_flag("--no-intrablock", eopt.no_intrablock, "T(n,m)");
    enumerate->add_flag("--multichains", eopt.multichains, "multichains of NC(m)");

    // ---- bijection ----
    auto* bij = app.add_subcommand("bijection", "pairing <-> multichain correspondence");
    bij->fallthrough();
    int bn = 2, bm = 2;
    std::string direction = "roundtrip";
    bij->add_option("--n", bn, "block length n");
    bij->add_option("--m", bm, "ground size m");
    bij->add_option("--direction", direction, "forward | backward | roundtrip")
        ->check(CLI::IsMember({"forward", "backward", "roundtrip"}));

    // ---- moment ----
    auto* moment = app.add_subcommand("moment", "exact moments from cumulants");
    moment->fallthrough();
    std::string mm_model = "circular";
    int mn = 1, mm = 1, m_max_tensor = 0;
    std::string tensor_path, mixed_word;
    moment->add_option("--model", mm_model, "circular | haar | b:<g>,<l> | model.json");
    moment->add_option("--n", mn, "power n");
    moment->add_option("--m", mm, "half-moment order m");
    moment->add_option("--tensor", tensor_path, "particle tensor JSON file");
    moment->add_option("--m-max", m_max_tensor, "compute tensor moments m = 1..m_max");
    moment->add_option("--word", mixed_word, "mixed star word, e.g. 1,2*,1,2*");

    // ---- haagerup ----
    auto* haag = app.add_subcommand("haagerup", "main-lemma and strong Haagerup reports");
    haag->fallthrough();
    std::string h_model = "circular", h_tensor;
    int h_mmax = 3, h_random = 0, h_n = 1;
    haag->add_option("--model", h_model, "circular | haar | b:<g>,<l> | model.json");
    haag->add_option("--tensor", h_tensor, "particle tensor JSON file");
    haag->add_option("--random", h_random, "verify a corpus of this many random tensors");
    haag->add_option("--n", h_n, "word length for random tensors");
    haag->add_option("--m-max", h_mmax, "largest half-moment order");

    // ---- sharpness ----
    auto* sharp = app.add_subcommand("sharpness", "haar sharpness example T_k");
    sharp->fallthrough();
    int s_k = 2, s_mmax = 3;
    sharp->add_option("--k", s_k, "number of generators")->check(CLI::Range(2, 64));
    sharp->add_option("--m-max", s_mmax, "largest half-moment order");

    // ---- ultra ----
    auto* ultra = app.add_subcommand("ultra", "ultracontractivity kernel check");
    ultra->fallthrough();
    double u_ca = 1.0;
    std::string u_grid = "1e-8:10:1000:log";
    ultra->add_option("--Ca", u_ca, "Haagerup constant");
    ultra->add_option("--t-grid", u_grid, "grid spec lo:hi:count[:log|lin]");

    // ---- brown ----
    auto* brown = app.add_subcommand("brown", "Brown-measure radial ratio");
    brown->fallthrough();
    std::string b_density = "disc";
    double b_r0 = 0.5, b_R = 1.0;
    int b_n = 1, b_nmax = 0;
    brown->add_option("--density", b_density, "disc | annulus | <file.csv>");
    brown->add_option("--r0", b_r0, "inner radius (annulus)");
    brown->add_option("--R", b_R, "outer radius");
    brown->add_option("--n", b_n, "power n");
    brown->add_option("--n-max", b_nmax, "table of ratios n = 1..n_max");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "independent oracles");
    oracle->fallthrough();
    std::string o_word;
    int o_n = 0, o_m = 0;
    oracle->add_option("--free-word", o_word, "free-group word, e.g. 1,2*,2,1*");
    oracle->add_option("--chebyshev-n", o_n, "semicircle polynomial degree n");
    oracle->add_option("--chebyshev-m", o_m, "half power m");

    CLI11_PARSE(app, argc, argv);

    try {
        const int ceiling = effective_ceiling(ceiling_flag);
        bool all_pass = true;
        Json out;
        out["seed"] = seed;

        if (count->parsed()) {
            const auto& o = copt;
            long tally = 0;
            if (o.catalan_only) {
                out["value"] = catalan(o.n).str();
            } else if (o.fuss) {
                out["value"] = fuss_catalan(o.n, o.m).str();
            } else if (o.nc) {
                for_each_nc(o.n, [&](const Partition&) { ++tally; }, std::max(ceiling, kDefaultNcCeiling));
                out["value"] = std::to_string(tally);
            } else if (o.star) {
                for_each_star_pairing(o.n, o.m, [&](const StarPairing&) { ++tally; }, ceiling);
                out["value"] = std::to_string(tally);
                out["fuss_catalan"] = fuss_catalan(o.n, o.m).str();
                all_pass = BigInt(tally) == fuss_catalan(o.n, o.m);
            } else if (o.alternating) {
                for_each_alternating_partition(o.n, o.m, [&](const Partition&) { ++tally; }, ceiling);
                out["value"] = std::to_string(tally);
            } else if (o.no_intrablock) {
                for_each_no_intrablock_pairing(o.n, o.m, [&](const Pairing&) { ++tally; }, ceiling);
                out["value"] = std::to_string(tally);
                out["chebyshev_oracle"] = format_rational(chebyshev_moment_oracle(o.n, o.m));
                all_pass = Rational(tally) == chebyshev_moment_oracle(o.n, o.m);
            } else if (o.multichains) {
                for_each_multichain(o.n, o.m, [&](const Multichain&) { ++tally; },
                                    std::max(ceiling, kDefaultNcCeiling));
                out["value"] = std::to_string(tally);
                out["fuss_catalan"] = fuss_catalan(o.n, o.m).str();
                all_pass = BigInt(tally) == fuss_catalan(o.n, o.m);
            } else {
                throw input_error("count: pick a family flag");
            }
            std::cout << out.dump(2) << "\n";
        } else if (enumerate->parsed()) {
            const auto& o = eopt;
            if (o.nc) {
                for_each_nc(o.n, [&](const Partition& p) { std::cout << p.to_text() << "\n"; },
                            std::max(ceiling, kDefaultNcCeiling));
            } else if (o.star) {
                for_each_star_pairing(o.n, o.m,
                                      [&](const StarPairing& p) { std::cout << p.to_text() << "\n"; },
                                      ceiling);
            } else if (o.alternating) {
                for_each_alternating_partition(
                    o.n, o.m, [&](const Partition& p) { std::cout << p.to_text() << "\n"; }, ceiling);
            } else if (o.no_intrablock) {
                for_each_no_intrablock_pairing(
                    o.n, o.m,
                    [&](const Pairing& p) { std::cout << p.partition().to_text() << "\n"; }, ceiling);
            } else if (o.multichains) {
                for_each_multichain(o.n, o.m,
                                    [&](const Multichain& c) {
                                        for (int j = 1; j <= c.length(); ++j)
                                            std::cout << (j > 1 ? " <= " : "") << c.level(j).to_text();
                                        std::cout << "\n";
                                    },
                                    std::max(ceiling, kDefaultNcCeiling));
            } else {
                throw input_error("enumerate: pick a family flag");
            }
        } else if (bij->parsed()) {
            Json records = Json::array();
            if (direction == "forward" || direction == "roundtrip") {
                for_each_star_pairing(bn, bm,
                                      [&](const StarPairing& pi) {
                                          Json rec;
                                          rec["pairing"] = pi.pairing().partition().to_text();
                                          const Multichain chain = phi_map(pi);
                                          Json levels = Json::array();
                                          for (int j = 1; j <= chain.length(); ++j)
                                              levels.push_back(chain.level(j).to_text());
                                          rec["chain"] = levels;
                                          if (direction == "roundtrip") {
                                              const bool ok = q_map(chain, bn) == pi;
                                              rec["roundtrip"] = ok ? "identity" : "BROKEN";
                                              all_pass = all_pass && ok;
                                          }
                                          records.push_back(rec);
                                      },
                                      ceiling);
            } else {
                for_each_multichain(bn, bm,
                                    [&](const Multichain& chain) {
                                        Json rec;
                                        Json levels = Json::array();
                                        for (int j = 1; j <= chain.length(); ++j)
                                            levels.push_back(chain.level(j).to_text());
                                        rec["chain"] = levels;
                                        rec["pairing"] =
                                            q_map(chain, bn).pairing().partition().to_text();
                                        records.push_back(rec);
                                    },
                                    std::max(ceiling, kDefaultNcCeiling));
            }
            out["direction"] = direction;
            out["records"] = records;
            std::cout << out.dump(2) << "\n";
        } else if (moment->parsed()) {
            const auto model = resolve_model(mm_model, k_max);
            out["model"] = model.name();
            if (!model.seq().tracial()) out["experimental_nontracial"] = true;
            if (!mixed_word.empty()) {
                const StarWord w = parse_star_word(mixed_word);
                out["word"] = mixed_word;
                out["mixed_moment"] = format_rational(mixed_moment(model.seq(), w, ceiling));
            } else if (!tensor_path.empty()) {
                const ParticleTensor T = load_tensor(tensor_path);
                const int upto = m_max_tensor > 0 ? m_max_tensor : mm;
                Json rows = Json::array();
                for (int k = 1; k <= upto; ++k) {
                    Json row;
                    row["m"] = k;
                    const Rational p = particle_moment(model.seq(), T, k, ceiling, threads);
                    row["moment_pow"] = format_rational(p);
                    row["norm_float"] = std::pow(to_double(p), 1.0 / (2.0 * k));
                    rows.push_back(row);
                }
                out["rows"] = rows;
                out["two_norm_sq"] = format_rational(two_norm_sq(model.seq(), T));
            } else {
                const Rational value = moment_from_cumulants(model.seq(), mn, mm, ceiling);
                out["n"] = mn;
                out["m"] = mm;
                out["moment"] = format_rational(value);
                if (value == Rational(fuss_catalan(mn, mm)))
                    out["annotation"] = format_rational(value) + " = C^(" + std::to_string(mn) +
                                        ")_" + std::to_string(mm);
            }
            emit(out, csv && out.contains("rows"), {"m", "moment_pow", "norm_float"});
        } else if (haag->parsed()) {
            const auto model = resolve_model(h_model, k_max);
            std::vector<ParticleTensor> tensors;
            if (!h_tensor.empty())
                tensors.push_back(load_tensor(h_tensor));
            else if (h_random > 0)
                tensors = random_tensor_corpus(seed, h_n, 2, h_random);
            else
                throw input_error("haagerup: give --tensor or --random");
            Json reports = Json::array();
            for (const auto& T : tensors) {
                const auto lemma = verify_main_lemma(model, T, h_mmax, ceiling, threads);
                const auto strong = verify_strong_haagerup(model, T, h_mmax, ceiling, threads);
                all_pass = all_pass && lemma.pass && strong.pass;
                reports.push_back(report_to_json(lemma));
                reports.push_back(report_to_json(strong));
            }
            const auto hc = haagerup_constant(model);
            out["model"] = model.name();
            if (!model.seq().tracial()) out["experimental_nontracial"] = true;
            out["haagerup_constant_float"] = hc.value;
            out["regime"] = hc.regime;
            out["reports"] = reports;
            out["verdict"] = all_pass ? "pass" : "fail";
            if (csv) {
                std::cout << "model,check,n,m,lhs_pow,lhs_float,rhs_float,pass\n";
                for (const auto& rep : reports)
                    for (const auto& row : rep.at("rows"))
                        std::cout << rep.at("model").get<std::string>() << ','
                                  << rep.at("check").get<std::string>() << ','
                                  << rep.at("n").dump() << ',' << row.at("m").dump() << ','
                                  << row.at("lhs_pow").get<std::string>() << ','
                                  << row.at("lhs_float").dump() << ','
                                  << row.at("rhs_float").dump() << ','
                                  << row.at("pass").dump() << "\n";
            } else {
                std::cout << out.dump(2) << "\n";
            }
        } else if (sharp->parsed()) {
            const auto report = sharpness_haar(s_k, s_mmax, ceiling, threads);
            all_pass = report.pass;
            out.update(sharpness_report_to_json(report));
            emit(out, csv, {"m", "moment_pow", "norm_float"});
        } else if (ultra->parsed()) {
            const auto report = verify_ultracontractivity(u_ca, parse_grid(u_grid));
            all_pass = report.pass;
            out["Ca_float"] = u_ca;
            out.update(ultra_report_to_json(report));
            emit(out, csv, {"t_float", "kernel_float", "bound_float", "ratio_float", "pass"});
        } else if (brown->parsed()) {
            const RadialDensity density =
                b_density == "disc"      ? RadialDensity::uniform_disc(b_R)
                : b_density == "annulus" ? RadialDensity::annulus(b_r0, b_R)
                                         : load_density_csv(b_density);
            out["density"] = b_density;
            Json rows = Json::array();
            const int lo = b_nmax > 0 ? 1 : b_n;
            const int hi = b_nmax > 0 ? b_nmax : b_n;
            for (int k = lo; k <= hi; ++k) {
                Json row;
                row["n"] = k;
                row["ratio_float"] = brown_ratio(density, k);
                rows.push_back(row);
            }
            out["rows"] = rows;
            emit(out, csv, {"n", "ratio_float"});
        } else if (oracle->parsed()) {
            if (!o_word.empty()) {
                out["free_word"] = o_word;
                out["value"] = free_group_moment_oracle(parse_star_word(o_word));
            } else if (o_n > 0 && o_m > 0) {
                out["chebyshev_n"] = o_n;
                out["chebyshev_m"] = o_m;
                out["value"] = format_rational(chebyshev_moment_oracle(o_n, o_m));
            } else {
                throw input_error("oracle: give --free-word or --chebyshev-n/--chebyshev-m");
            }
            std::cout << out.dump(2) << "\n";
        }

        return all_pass ? kExitPass : kExitFail;
    } catch (const size_error& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return kExitSize;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
