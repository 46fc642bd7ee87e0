#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "ubr/driver.hpp"
#include "ubr/linalg.hpp"
#include "ubr/series.hpp"
#include "ubr/thicken.hpp"
#include "ubr/verify.hpp"

using json = nlohmann::ordered_json;
using namespace ubr;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

json envelope(const std::string& cmd, const json& config) {
    json j;
    j["tool"] = "ubr";
    j["version"] = kVersion;
    j["command"] = cmd;
    j["config"] = config;
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<long long> read_primitives(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    for (char& c : text)
        if (c == ',' || c == ';') c = ' ';
    std::istringstream is(text);
    std::vector<long long> v;
    long long x;
    while (is >> x) v.push_back(x);
    if (!is.eof()) throw std::invalid_argument("primitives file must hold integers");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounds for the ranks of primitive Vassiliev invariants"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    int threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.set_version_flag("--version", kVersion);

    std::string alg = "A";
    int degree = 0;

    auto* census_cmd = app.add_subcommand("census", "count the universe and the irreducible permutations");
    census_cmd->add_option("--alg", alg)->check(CLI::IsMember({"A", "B"}))->required();
    census_cmd->add_option("--degree", degree)->required();

    int prime = 2, block = 64;
    std::string export_path;
    auto* upper_cmd = app.add_subcommand("upper", "upper bound O_A or O_B");
    upper_cmd->add_option("--alg", alg)->check(CLI::IsMember({"A", "B"}))->required();
    upper_cmd->add_option("--degree", degree)->required();
    upper_cmd->add_option("--prime", prime)->check(CLI::IsMember({2, 3}));
    upper_cmd->add_option("--block", block)->check(CLI::Range(1, 64));
    upper_cmd->add_option("--export", export_path, "write the matrix as a UBRM file");

    bool per_u = false, include_odd = false, caterpillars_only = false;
    std::string rank_mode = "exact";
    auto* lower_cmd = app.add_subcommand("lower", "lower bound O_C from the thickening map");
    lower_cmd->add_option("--degree", degree)->required();
    lower_cmd->add_flag("--per-u", per_u);
    lower_cmd->add_flag("--include-odd-u", include_odd);
    lower_cmd->add_flag("--caterpillars-only", caterpillars_only, "ladders only, without the closed caterpillars");
    lower_cmd->add_option("--rank-mode", rank_mode)->check(CLI::IsMember({"exact", "modular"}));

    int max_degree = 12;
    std::string prim_file;
    auto* tables_cmd = app.add_subcommand("tables", "rk A_m and rk A^r_m from primitive ranks");
    tables_cmd->add_option("--max-degree", max_degree)->check(CLI::Range(0, 200));
    tables_cmd->add_option("--primitives", prim_file, "integers p_0 p_1 ... p_M, whitespace or comma separated (p_0 is ignored)");

    std::string suite;
    int verify_degree = 6;
    auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"moves", "surfaces", "series", "sandwich"}))->required();
    verify_cmd->add_option("--max-degree", verify_degree)->check(CLI::Range(2, 9));

    std::string mat_action, mat_path;
    auto* matrix_cmd = app.add_subcommand("matrix", "inspect a UBRM file");
    matrix_cmd->add_option("action", mat_action)->check(CLI::IsMember({"info", "check"}))->required();
    matrix_cmd->add_option("path", mat_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (census_cmd->parsed()) {
            Algorithm a = parse_algorithm(alg);
            auto c = census(a, degree);
            if (as_json) {
                json j = envelope("census", {{"alg", alg}, {"degree", degree}});
                j["universe"] = c.universe;
                j["irreducible"] = c.irreducible;
                emit(j);
            } else {
                std::printf("alg %s degree %d: |S| = %llu, |I| = %llu\n", alg.c_str(), degree,
                            (unsigned long long)c.universe, (unsigned long long)c.irreducible);
            }
            return kOk;
        }
        if (upper_cmd->parsed()) {
            UbrConfig cfg;
            cfg.algorithm = parse_algorithm(alg);
            cfg.degree = degree;
            cfg.characteristic = prime;
            cfg.block_width = block;
            cfg.threads = threads;
            cfg.export_path = export_path;
            Progress prog;
            if (!as_json) prog = [](const std::string& s) { std::fprintf(stderr, "  %s\n", s.c_str()); };
            auto r = output_upper(cfg, prog);
            if (as_json) {
                json j = envelope("upper", {{"alg", alg}, {"degree", degree}, {"prime", prime}, {"block", block},
                                            {"export", export_path}});
                j["universe"] = r.universe;
                j["irreducible"] = r.irreducible;
                j["output"] = r.output;
                emit(j);
            } else {
                std::printf("O_%s(%d) over F_%d: output %llu, |S|=%llu, |I|=%llu (%.2fs)\n", alg.c_str(), degree, prime,
                            (unsigned long long)r.output, (unsigned long long)r.universe,
                            (unsigned long long)r.irreducible, r.seconds);
            }
            return kOk;
        }
        if (lower_cmd->parsed()) {
            LowerOptions opt;
            opt.include_odd = include_odd;
            opt.closures = !caterpillars_only;
            opt.mode = rank_mode == "exact" ? RankMode::Exact : RankMode::Modular;
            auto lb = lower_bound(degree, opt);
            if (as_json) {
                json j = envelope("lower", {{"degree", degree}, {"per_u", per_u}, {"include_odd_u", include_odd},
                                            {"caterpillars_only", caterpillars_only}, {"rank_mode", rank_mode}});
                j["total"] = lb.total;
                if (per_u) {
                    json pu = json::object();
                    for (auto [u, r] : lb.per_u) pu[std::to_string(u)] = r;
                    j["per_u"] = pu;
                }
                emit(j);
            } else {
                if (per_u)
                    for (auto [u, r] : lb.per_u)
                        std::printf("u=%d: rank %llu (%llu diagrams)\n", u, (unsigned long long)r,
                                    (unsigned long long)lb.diagrams[u]);
                std::printf("O_C(%d) = %llu\n", degree, (unsigned long long)lb.total);
            }
            return kOk;
        }
        if (tables_cmd->parsed()) {
            std::vector<long long> prim;
            if (prim_file.empty()) {
                prim.push_back(0);
                for (int m = 1; m <= 12; m++) prim.push_back((long long)known_primitive_rank(m));
                if (max_degree > 12) throw std::invalid_argument("built-in primitive ranks stop at degree 12; pass --primitives");
            } else {
                prim = read_primitives(prim_file);
            }
            if ((int)prim.size() <= max_degree) throw std::invalid_argument("not enough primitive ranks for --max-degree");
            auto t = algebra_ranks(prim, max_degree);
            if (as_json) {
                json j = envelope("tables", {{"max_degree", max_degree}, {"primitives", prim_file}});
                j["primitive"] = t.primitive;
                j["algebra"] = t.algebra;
                j["reduced"] = t.reduced;
                emit(j);
            } else {
                std::printf("%-8s", "m");
                for (int m = 0; m <= max_degree; m++) std::printf("%6d", m);
                std::printf("\n%-8s", "rk P");
                for (int m = 0; m <= max_degree; m++)
                    m ? std::printf("%6llu", (unsigned long long)t.primitive[m]) : std::printf("%6s", "");
                std::printf("\n%-8s", "rk A");
                for (auto x : t.algebra) std::printf("%6llu", (unsigned long long)x);
                std::printf("\n%-8s", "rk A^r");
                for (auto x : t.reduced) std::printf("%6llu", (unsigned long long)x);
                std::printf("\n");
            }
            return kOk;
        }
        if (verify_cmd->parsed()) {
            auto checks = verify_suite(suite, verify_degree);
            bool all = true;
            json arr = json::array();
            for (auto& c : checks) {
                all = all && c.ok;
                if (as_json) arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
                else std::printf("[%s] %s%s%s\n", c.ok ? "pass" : "FAIL", c.name.c_str(), c.detail.empty() ? "" : ": ",
                                 c.detail.c_str());
            }
            if (as_json) {
                json j = envelope("verify", {{"suite", suite}, {"max_degree", verify_degree}});
                j["checks"] = arr;
                j["ok"] = all;
                emit(j);
            }
            return all ? kOk : kVerifyFailed;
        }
        if (matrix_cmd->parsed()) {
            auto info = read_info(mat_path);
            bool ok = true;
            std::string err;
            uint64_t rank = 0;
            if (mat_action == "check") {
                try {
                    if (info.characteristic == 2) rank = rank_nullity(load_bits(mat_path)).rank;
                    else rank = rank_nullity(load_prime(mat_path)).rank;
                } catch (const UbrmError& e) {
                    ok = false;
                    err = e.what();
                }
            }
            if (as_json) {
                json j = envelope("matrix", {{"action", mat_action}, {"path", mat_path}});
                j["characteristic"] = info.characteristic;
                j["rows"] = info.rows;
                j["cols"] = info.cols;
                if (mat_action == "check") {
                    j["ok"] = ok;
                    if (ok) j["rank"] = rank, j["nullity"] = info.cols - rank;
                    else j["error"] = err;
                }
                emit(j);
            } else {
                std::printf("UBRM v%u, F_%u, %llu x %llu\n", info.version, info.characteristic,
                            (unsigned long long)info.rows, (unsigned long long)info.cols);
                if (mat_action == "check") {
                    if (ok) std::printf("checksums ok, rank %llu, nullity %llu\n", (unsigned long long)rank,
                                        (unsigned long long)(info.cols - rank));
                    else std::printf("corrupt: %s\n", err.c_str());
                }
            }
            return ok ? kOk : kVerifyFailed;
        }
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return kResource;
    } catch (const std::bad_alloc&) {
        std::fprintf(stderr, "resource error: out of memory\n");
        return kResource;
    } catch (const UbrmError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kVerifyFailed;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    }
    return kOk;
}
