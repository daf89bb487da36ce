// Command-line frontend: exact tables, verification suites, sphere sizes,
// sampling, constructions, classification, Monte Carlo density estimation and
// the closed-form bounds. JSON is the default machine format, CSV for tables,
// plain text for human summaries. Exit codes: 0 ok, 1 verification failure,
// 2 usage error.
//
// A banner with version, seed and the full flag set goes to stderr; data goes
// to stdout. THOMPSONF_SEED sets the default seed.

#include "thompson/density.hpp"
#include "thompson/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::json;
using namespace thompson;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t default_seed() {
    if (const char* env = std::getenv("THOMPSONF_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

void banner(const std::string& cmd, int argc, char** argv, std::uint64_t seed) {
    std::ostringstream os;
    os << "thompsonf " << kVersion << " cmd=" << cmd << " seed=" << seed << " argv=[";
    for (int i = 1; i < argc; ++i) os << (i > 1 ? " " : "") << argv[i];
    os << "]";
    std::cerr << os.str() << "\n";
}

StratumKind parse_kind(const std::string& s) {
    if (s == "sum") return StratumKind::Sum;
    if (s == "max") return StratumKind::Max;
    throw CLI::ValidationError("--stratum/--kind must be 'sum' or 'max'");
}

json estimate_to_json(const DensityEstimate& est) {
    return json{{"stratum", to_string(est.stratum.kind)},
                {"k", est.stratum.k},
                {"n", est.stratum.n},
                {"label", to_string(est.label)},
                {"estimate", est.estimate},
                {"ci", {est.ci_low, est.ci_high}},
                {"hits", est.hits},
                {"samples", est.samples},
                {"seed", est.seed},
                {"exact", est.exact}};
}

json plmap_to_json(const PLMap& m) {
    json out = json::array();
    for (const auto& p : m.breakpoints())
        out.push_back({{"x", {{"num", p.x.num.str()}, {"exp", p.x.exp}}},
                       {"y", {{"num", p.y.num.str()}, {"exp", p.y.exp}}}});
    return out;
}

std::vector<Element> parse_tuple_line(const std::string& line) {
    std::istringstream is(line);
    std::vector<Element> tuple;
    std::string tok;
    while (is >> tok) tuple.push_back(element_from_string(tok));
    if (tuple.empty()) throw std::invalid_argument("empty tuple line");
    return tuple;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computation and random subgroup experiments in Thompson's group F"};
    app.require_subcommand(1);
    std::uint64_t seed = default_seed();
    app.add_option("--seed", seed, "global RNG seed (default: THOMPSONF_SEED or 0)");
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    app.add_option("--threads", threads, "worker threads for Monte Carlo runs");

    // table
    auto* table = app.add_subcommand("table", "dump n, c_n, c_n^2, r_n, ratio, n^3 r_n / mu^n");
    int table_max = 10;
    std::string table_format = "csv";
    bool table_rn = false;
    table->add_flag("--rn", table_rn, "include the reduced-pair counts (always on)");
    table->add_option("--max-n", table_max, "last row");
    table->add_option("--format", table_format, "csv or json");

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    bool v_rn = false, v_oracles = false, v_bounds = false, v_algebra = false, v_samplers = false,
         v_all = false;
    int v_max_n = 200;
    verify->add_flag("--rn", v_rn, "four-method r_n agreement");
    verify->add_option("--max-n", v_max_n, "agreement range for --rn");
    verify->add_flag("--oracles", v_oracles, "brute-force enumeration oracles");
    verify->add_flag("--bounds", v_bounds, "sphere size bounds");
    verify->add_flag("--algebra", v_algebra, "relators, homomorphisms, membership routes");
    verify->add_flag("--samplers", v_samplers, "sampler goodness of fit");
    verify->add_flag("--all", v_all, "everything");

    // sphere
    auto* sphere = app.add_subcommand("sphere", "exact sphere size");
    std::string sp_kind = "sum";
    int sp_k = 1, sp_n = 1;
    bool sp_exact = false;
    sphere->add_option("--kind", sp_kind, "sum or max")->required();
    sphere->add_option("--k", sp_k)->required();
    sphere->add_option("--n", sp_n)->required();
    sphere->add_flag("--exact", sp_exact, "print the exact integer (default)");

    // sample
    auto* sample = app.add_subcommand("sample", "stream serialized tuples from a sphere");
    std::string sm_stratum = "sum";
    int sm_k = 1, sm_n = 1;
    std::uint64_t sm_count = 10;
    sample->add_option("--stratum", sm_stratum, "sum or max")->required();
    sample->add_option("--k", sm_k)->required();
    sample->add_option("--n", sm_n)->required();
    sample->add_option("--samples", sm_count);

    // construct
    auto* construct = app.add_subcommand("construct", "build a named generator tuple");
    std::string c_name;
    int c_k = 2, c_n = 10, c_i = 0;
    std::string c_address = "1";
    construct->add_option("name", c_name,
                          "zn|burillo|x|fxf|clone|wreath_z|zwrz|commutator_wrap|specs_sum|lemma_z|"
                          "spec2|fpersis|product_z|wreath|product")
        ->required();
    construct->add_option("--k", c_k);
    construct->add_option("--n", c_n);
    construct->add_option("--i", c_i, "generator index for 'x'");
    construct->add_option("--address", c_address, "bit string for 'clone'");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "classify tuples read from stdin");

    // plmap
    auto* plmap_cmd = app.add_subcommand("plmap", "piecewise-linear map of an element as JSON");
    std::string pm_element;
    plmap_cmd->add_option("element", pm_element, "serialized pair domain|range")->required();

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "newline-delimited enumerator dumps");
    int en_trees = -1, en_pairs = -1;
    enumerate->add_option("--trees", en_trees, "all trees with this many carets");
    enumerate->add_option("--pairs", en_pairs, "all reduced pairs with this many carets");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo density estimate");
    std::string e_stratum = "max", e_label = "Z2";
    int e_k = 2, e_n = 10;
    double e_samples = 1e5;
    std::vector<int> e_trend;
    estimate->add_option("--stratum", e_stratum)->required();
    estimate->add_option("--k", e_k)->required();
    estimate->add_option("--n", e_n);
    estimate->add_option("--label", e_label)->required();
    estimate->add_option("--samples", e_samples);
    estimate->add_option("--trend", e_trend, "estimate at several n and emit CSV rows");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "closed-form density lower bounds");
    std::string b_name;
    std::vector<long> b_params;
    bounds->add_option("name", b_name, "specs_sum|lemma_z|spec2|fpersis|product_z|wreath")->required();
    bounds->add_option("params", b_params, "integer parameters");

    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2; --help exits 0
    }

    try {
        if (table->parsed()) {
            banner("table", argc, argv, seed);
            BigSeq r = rn_table(table_max + 1);
            BigSeq cat = catalan(table_max);
            Real mu = growth_mu();
            if (table_format == "csv") {
                std::cout << "n,c_n,c_n_sq,r_n,ratio,scaled\n";
                for (int n = 1; n <= table_max; ++n) {
                    Real ratio = n > 1 ? Real(r.at(n)) / Real(r.at(n - 1)) : Real(0);
                    Real scaled = scaled_rn(r, n, mu);
                    std::cout << n << "," << cat.at(n) << "," << BigInt(cat.at(n) * cat.at(n)) << ","
                              << r.at(n) << "," << ratio.convert_to<double>() << ","
                              << scaled.convert_to<double>() << "\n";
                }
            } else {
                json rows = json::array();
                for (int n = 1; n <= table_max; ++n) {
                    Real ratio = n > 1 ? Real(r.at(n)) / Real(r.at(n - 1)) : Real(0);
                    rows.push_back({{"n", n},
                                    {"c_n", cat.at(n).str()},
                                    {"c_n_sq", BigInt(cat.at(n) * cat.at(n)).str()},
                                    {"r_n", r.at(n).str()},
                                    {"ratio", ratio.convert_to<double>()},
                                    {"scaled", scaled_rn(r, n, mu).convert_to<double>()}});
                }
                std::cout << rows.dump(2) << "\n";
            }
            return 0;
        }

        if (verify->parsed()) {
            banner("verify", argc, argv, seed);
            std::vector<VerifyResult> results;
            if (v_rn || v_all) results.push_back(verify_rn_methods(v_max_n));
            if (v_oracles || v_all) results.push_back(verify_oracles());
            if (v_bounds || v_all) results.push_back(verify_sphere_bounds(5, v_all ? 60 : 40));
            if (v_algebra || v_all) results.push_back(verify_algebra(v_all ? 6 : 5, 2000, seed));
            if (v_samplers || v_all) results.push_back(verify_samplers(20000, seed));
            if (results.empty()) {
                std::cerr << "verify: choose at least one suite (or --all)\n";
                return 2;
            }
            bool ok = true;
            for (const auto& res : results) {
                std::cout << (res.ok ? "PASS " : "FAIL ") << res.name << ": " << res.detail << "\n";
                ok = ok && res.ok;
            }
            return ok ? 0 : 1;
        }

        if (sphere->parsed()) {
            banner("sphere", argc, argv, seed);
            StratumKind kind = parse_kind(sp_kind);
            BigSeq r = rn_table(sp_n + sp_k);
            std::cout << sphere_size(kind, sp_k, sp_n, r) << "\n";
            return 0;
        }

        if (sample->parsed()) {
            banner("sample", argc, argv, seed);
            StratumSpec spec{sm_k, sm_n, parse_kind(sm_stratum)};
            BigSeq r = rn_table(sm_n + 1);
            TupleSampler sampler(spec, r);
            RngStream rng(seed, 1);
            for (std::uint64_t i = 0; i < sm_count; ++i) std::cout << to_string(sampler.draw(rng)) << "\n";
            return 0;
        }

        if (construct->parsed()) {
            banner("construct", argc, argv, seed);
            RngStream rng(seed, 2);
            BigSeq r = rn_table(std::max(c_n + 2, 8));
            auto payload = [&](int carets) {
                if (carets < 2)
                    throw std::invalid_argument("construction needs payload of >= 2 carets; raise --n");
                return random_reduced_pair(carets, rng);
            };
            GeneratorTuple t;
            if (c_name == "zn") {
                std::vector<TreePair> ps;
                for (int i = 0; i < c_k; ++i) ps.push_back(payload(2 + static_cast<int>(rng.below(3))));
                t = zn_generators(ps);
            } else if (c_name == "burillo") {
                t = burillo_zn(c_k);
            } else if (c_name == "x") {
                t.gens = {x_generator(c_i)};
                t.provenance = "x(" + std::to_string(c_i) + ")";
            } else if (c_name == "fxf") {
                t = standard_fxf();
            } else if (c_name == "clone") {
                t = clone_subgroup(c_address);
            } else if (c_name == "wreath_z") {
                t = wreath_with_z({Element::x1()});
            } else if (c_name == "zwrz") {
                t = zwrz_generators();
            } else if (c_name == "commutator_wrap") {
                t.gens = {commutator_wrap(payload(c_n))};
                t.provenance = "commutator_wrap(n=" + std::to_string(c_n) + ")";
            } else if (c_name == "specs_sum") {
                t = theorem_specs_tuple({Element::x0()}, c_k, c_n, payload(c_n - 2 - c_k));
            } else if (c_name == "lemma_z") {
                std::vector<TreePair> ps;
                for (int i = 0; i < c_k; ++i) ps.push_back(payload(c_n - c_k + 1));
                t = lemma_z_tuple(c_k, c_n, ps);
            } else if (c_name == "spec2") {
                t = prop_spec2_tuple(Element::x0(), Element::x1(), c_n, payload(c_n - 4), payload(c_n - 5));
            } else if (c_name == "fpersis") {
                std::vector<TreePair> abs;
                for (int i = 0; i < c_k - 2; ++i) abs.push_back(payload(c_n - 3));
                t = fpersis_tuple(c_k, c_n, payload(c_n - 4), payload(c_n - 5), abs);
            } else if (c_name == "product_z") {
                t = product_with_z_tuple({Element::x0(), Element::x1()}, payload(c_n - 1));
            } else if (c_name == "wreath") {
                t = wreath_tuple({Element::x1()}, payload(c_n - 3), c_n);
            } else if (c_name == "product") {
                t = product_tuple({Element::x0()}, {Element::x0()});
            } else {
                std::cerr << "unknown construction: " << c_name << "\n";
                return 2;
            }
            for (std::size_t i = 0; i < t.gens.size(); ++i)
                std::cout << (i ? " " : "") << to_string(t.gens[i]);
            std::cout << "\n";
            json rep{{"name", c_name}, {"provenance", t.provenance}, {"count", t.gens.size()}};
            json checks = json::array();
            for (const auto& [what, ok] : t.checks) checks.push_back({{"check", what}, {"ok", ok}});
            rep["checks"] = checks;
            json meta = json::object();
            for (const auto& [k, v] : t.metadata) meta[k] = v;
            rep["metadata"] = meta;
            json sizes = json::array();
            for (const auto& g : t.gens) sizes.push_back(g.carets());
            rep["carets"] = sizes;
            std::cout << rep.dump(2) << "\n";
            return 0;
        }

        if (classify_cmd->parsed()) {
            banner("classify", argc, argv, seed);
            std::string line;
            while (std::getline(std::cin, line)) {
                if (line.empty()) continue;
                std::cout << to_string(classify(parse_tuple_line(line))) << "\n";
            }
            return 0;
        }

        if (plmap_cmd->parsed()) {
            banner("plmap", argc, argv, seed);
            std::cout << plmap_to_json(to_plmap(element_from_string(pm_element))).dump(2) << "\n";
            return 0;
        }

        if (enumerate->parsed()) {
            banner("enumerate", argc, argv, seed);
            if (en_trees >= 0)
                for (const auto& t : enumerate_trees(en_trees)) std::cout << t.code() << "\n";
            if (en_pairs >= 1)
                for (const auto& p : enumerate_reduced_pairs(en_pairs)) std::cout << pair_to_string(p) << "\n";
            if (en_trees < 0 && en_pairs < 1) {
                std::cerr << "enumerate: pass --trees or --pairs\n";
                return 2;
            }
            return 0;
        }

        if (estimate->parsed()) {
            banner("estimate", argc, argv, seed);
            std::vector<int> ns = e_trend.empty() ? std::vector<int>{e_n} : e_trend;
            int max_n = *std::max_element(ns.begin(), ns.end());
            BigSeq r = rn_table(max_n + e_k);
            if (!e_trend.empty()) std::cout << "n,label,estimate,ci_low,ci_high,hits,samples,exact\n";
            for (int n : ns) {
                StratumSpec spec{e_k, n, parse_kind(e_stratum)};
                auto est = estimate_density(spec, class_label_from_string(e_label),
                                            static_cast<std::uint64_t>(e_samples), seed, r,
                                            std::max(1, threads), /*progress=*/true);
                if (e_trend.empty())
                    std::cout << estimate_to_json(est).dump(2) << "\n";
                else
                    std::cout << n << "," << e_label << "," << est.estimate << "," << est.ci_low << ","
                              << est.ci_high << "," << est.hits << "," << est.samples << ","
                              << est.exact << "\n";
            }
            return 0;
        }

        if (bounds->parsed()) {
            banner("bounds", argc, argv, seed);
            BoundValue b = theoretical_bound(b_name, b_params);
            json out{{"name", b_name},
                     {"value", b.value.convert_to<double>()},
                     {"lambda_pending", b.lambda_pending}};
            if (b.lambda_pending) out["note"] = "multiply by an unknown lambda_k in (0,1]";
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
