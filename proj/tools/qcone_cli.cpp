// Command line front end. Talks to the engine only through the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcone/qcone.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int exit_engine = 1;
constexpr int exit_usage = 2;

// user input was wrong; exit 2 with the flag named
struct UsageError {
    std::string message;
};
// the engine refused; exit 1
struct EngineError {
    std::string message;
};

struct MatrixDeleter {
    void operator()(qc_matrix* m) const { qc_matrix_free(m); }
};
using MatrixPtr = std::unique_ptr<qc_matrix, MatrixDeleter>;

struct ReportDeleter {
    void operator()(qc_report* r) const { qc_report_free(r); }
};

std::string take(char* s) {
    std::string out = s ? s : "";
    qc_string_free(s);
    return out;
}

std::string engine_message(qc_status st) {
    std::string msg = qc_last_error();
    if (st == QC_ERR_STEP) {
        std::ostringstream os;
        os << qc_last_step_kind();
        if (qc_last_step_index() >= 0) os << " at step " << qc_last_step_index();
        os << ": " << msg;
        return os.str();
    }
    return msg;
}

void check(qc_status st) {
    if (st != QC_OK) throw EngineError{engine_message(st)};
}

struct LoadedMatrix {
    MatrixPtr m;
    bool json = false;  // file used the document syntax
};

LoadedMatrix load_matrix(const std::string& path, const char* flag = "--matrix") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError{std::string(flag) + ": cannot open '" + path + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    LoadedMatrix out;
    const auto first = text.find_first_not_of(" \t\r\n");
    out.json = first != std::string::npos && text[first] == '{';
    qc_matrix* raw = nullptr;
    if (qc_matrix_parse(text.c_str(), &raw) != QC_OK)
        throw UsageError{std::string(flag) + ": " + qc_last_error()};
    out.m.reset(raw);
    return out;
}

void require_valid(const qc_matrix* m, const char* flag = "--matrix") {
    if (qc_matrix_validate(m) != QC_OK) throw UsageError{std::string(flag) + ": not a quasicone: " + qc_last_error()};
}

std::string matrix_text(const qc_matrix* m, bool json) {
    char* s = nullptr;
    check(json ? qc_matrix_serialize(m, &s) : qc_matrix_to_text(m, &s));
    return take(s);
}

Json matrix_json(const qc_matrix* m) { return Json::parse(matrix_text(m, true)); }

struct Options {
    std::string format = "text";
    bool structured() const { return format == "structured"; }
};

// ---- subcommands ------------------------------------------------------------

struct EnumerateArgs {
    int rank = 2, bound = 4;
    bool raw = false, count_only = false;
};

int run_enumerate(const Options& o, const EnumerateArgs& a) {
    struct Ctx {
        const Options* o;
        bool count_only;
        bool first = true;
    } ctx{&o, a.count_only};
    if (o.structured()) std::cout << "{\"rank\": " << a.rank << ", \"bound\": " << a.bound
                                  << ", \"raw\": " << (a.raw ? "true" : "false") << ", \"matrices\": [";
    auto sink = [](const qc_matrix* m, void* user) -> int {
        auto* c = static_cast<Ctx*>(user);
        if (c->count_only) return 1;
        if (c->o->structured()) {
            std::cout << (c->first ? "\n" : ",\n") << matrix_json(m).dump();
        } else {
            if (!c->first) std::cout << '\n';
            std::cout << matrix_text(m, false);
        }
        c->first = false;
        return 1;
    };
    std::uint64_t count = 0;
    check(qc_enumerate(a.rank, a.bound, a.raw ? 1 : 0, sink, &ctx, &count));
    if (o.structured()) std::cout << (ctx.first ? "" : "\n") << "], \"count\": " << count << "}\n";
    else if (a.count_only) std::cout << count << '\n';
    return 0;
}

struct SearchArgs {
    int rank = 2, bound = 0;
    std::string tiers = "shortest,shortest-long,simple-basic,concat";
    unsigned max_rounds = 32;
    unsigned threads = 0;
    std::string out;
    bool full = false;
};

int run_search(const Options& o, const SearchArgs& a) {
    qc_search_config cfg;
    qc_search_config_init(&cfg);
    cfg.rank = a.rank;
    cfg.bound = a.bound;
    cfg.tiers = a.tiers.c_str();
    cfg.max_rounds = a.max_rounds;
    cfg.threads = a.threads;
    qc_report* raw = nullptr;
    const qc_status st = qc_search(&cfg, &raw);
    if (st == QC_ERR_PARSE || st == QC_ERR_ARGUMENT) throw UsageError{std::string("--tiers: ") + qc_last_error()};
    check(st);
    std::unique_ptr<qc_report, ReportDeleter> rep(raw);

    char* doc = nullptr;
    check(qc_report_serialize(rep.get(), a.full ? 1 : 0, &doc));
    const std::string text = take(doc);
    if (!a.out.empty()) {
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw UsageError{"--out: cannot write '" + a.out + "'"};
        f << text;
    }
    if (o.structured()) {
        std::cout << text;
        return 0;
    }
    const Json j = Json::parse(text);
    std::cout << "rank " << j["rank"] << ", bound " << j["bound"] << ": " << j["total_considered"]
              << " canonical quasicones (" << j["raw_total"] << " raw)\n";
    for (const auto& t : j["tiers"])
        std::cout << "  after " << t["tier"].get<std::string>() << ": " << t["unsolved_after"] << " unsolved\n";
    std::cout << "residual: " << j["residual"].size() << '\n';
    std::size_t i = 0;
    for (const auto& m : j["residual"]) {
        qc_matrix* mm = nullptr;
        check(qc_matrix_parse(m.dump().c_str(), &mm));
        MatrixPtr hold(mm);
        std::cout << "[" << i++ << "]\n" << matrix_text(mm, false);
    }
    return 0;
}

struct ApplyArgs {
    std::string matrix, strategy, start_weight = "-1d", closure = "fixpoint";
};

int run_apply(const Options& o, const ApplyArgs& a) {
    LoadedMatrix in = load_matrix(a.matrix);
    require_valid(in.m.get());
    std::int64_t start = 0;
    if (qc_parse_start_weight(a.start_weight.c_str(), &start) != QC_OK)
        throw UsageError{std::string("--start-weight: ") + qc_last_error()};
    char* canon = nullptr;
    if (qc_strategy_normalize(a.strategy.c_str(), &canon) != QC_OK)
        throw UsageError{std::string("--strategy: ") + qc_last_error()};
    take(canon);
    char* state = nullptr;
    qc_matrix* out = nullptr;
    const qc_status st = qc_apply(in.m.get(), a.strategy.c_str(), start,
                                  a.closure == "none"      ? QC_CLOSURE_NONE
                                  : a.closure == "literal" ? QC_CLOSURE_LITERAL
                                                           : QC_CLOSURE_FIXPOINT, &state, &out);
    if (st == QC_ERR_PARSE) throw UsageError{std::string("--strategy: ") + qc_last_error()};
    check(st);
    MatrixPtr hold(out);
    const std::string doc = take(state);
    if (o.structured()) {
        std::cout << doc;
        return 0;
    }
    const Json j = Json::parse(doc);
    std::cout << matrix_text(out, false);
    std::cout << "defect " << (j["defect"].is_null() ? std::string("undefined") : j["defect"].dump()) << ", gap "
              << j["gap"].dump() << ", offset " << j["offset"].dump() << '\n';
    std::cout << "applied " << j["strategy"].get<std::string>() << '\n';
    std::cout << (j["success"].get<bool>() ? "success" : "no reduction") << '\n';
    return 0;
}

int run_normalize(const Options& o, const std::string& path) {
    LoadedMatrix in = load_matrix(path);
    require_valid(in.m.get());
    qc_matrix* out = nullptr;
    const qc_status st = qc_matrix_normalize(in.m.get(), &out);
    if (st != QC_OK) throw EngineError{std::string("normalize: ") + qc_last_error()};
    MatrixPtr hold(out);
    std::cout << matrix_text(out, o.structured() || in.json);
    return 0;
}

int run_defect(const Options& o, const std::string& path) {
    LoadedMatrix in = load_matrix(path);
    if (o.structured()) {
        char* s = nullptr;
        check(qc_matrix_describe(in.m.get(), &s));
        std::cout << take(s);
        return 0;
    }
    std::int64_t d = 0;
    const qc_status st = qc_matrix_defect(in.m.get(), &d);
    if (st != QC_OK) throw EngineError{std::string("defect: ") + qc_last_error()};
    std::cout << d << '\n';
    return 0;
}

struct VerifyArgs {
    std::string which;
    std::vector<int> ranks{2, 3, 4};
    int max_scan_bound = 0;
    int bound = 0;
    unsigned threads = 0;
};

int run_verify_manual(const Options& o) {
    char* s = nullptr;
    int passed = 0, total = 0;
    check(qc_verify_manual(&s, &passed, &total));
    const std::string doc = take(s);
    if (o.structured()) {
        std::cout << doc;
    } else {
        for (const auto& r : Json::parse(doc)) {
            std::cout << "case " << r["id"] << ": " << (r["pass"].get<bool>() ? "pass" : "FAIL") << "  defect "
                      << r["input_defect"] << " -> " << r["raw"].value("defect", Json()).dump() << " (listed "
                      << r["listed_output_defect"] << ")";
            if (!r["raw"]["ran"].get<bool>()) std::cout << "  error: " << r["raw"]["error"].get<std::string>();
            else if (!r["raw"]["diff_positions"].empty()) std::cout << "  diffs " << r["raw"]["diff_positions"].dump();
            if (!r["listed_path_ok"].get<bool>())
                std::cout << "  listed strategy leaves the root system at factor " << r["listed_path_break"];
            std::cout << '\n';
        }
        std::cout << passed << "/" << total << " cases pass\n";
    }
    return passed == total ? 0 : exit_engine;
}

int run_verify_table(const Options& o, const VerifyArgs& a) {
    bool all = true;
    Json rows = Json::array();
    for (int n : a.ranks) {
        char* s = nullptr;
        int pass = 0;
        const int scan = a.max_scan_bound > 0 ? a.max_scan_bound : (n == 4 ? 6 : n + 3);
        const qc_status st = qc_verify_table(n, scan, a.bound, a.threads, &s, &pass);
        if (st == QC_ERR_PARSE) throw UsageError{std::string("--rank: ") + qc_last_error()};
        check(st);
        all = all && pass;
        Json row = Json::parse(take(s));
        if (!o.structured()) {
            std::cout << "rank " << n << ": reference total " << row["reference"]["total"] << ", unsolved "
                      << row["reference"]["unsolved"].dump() << '\n';
            std::cout << "  scan:";
            for (const auto& b : row["scan"]) std::cout << " B=" << b["bound"] << " " << b["canonical"] << "/" << b["raw"];
            std::cout << '\n';
            std::cout << "  bound used " << row["bound_used"]
                      << (row["calibrated_bound"].is_null() ? " (no bound matches the reference total)" : " (calibrated)")
                      << ": total " << row["total_considered"] << ", unsolved " << row["unsolved"].dump() << '\n';
            std::cout << "  totals " << (row["totals_match"].get<bool>() ? "match" : "differ") << ", tiers "
                      << (row["tiers_match"].get<bool>() ? "match" : "differ") << ", monotone "
                      << (row["monotone"].get<bool>() ? "yes" : "no") << ", residual " << row["residual_size"]
                      << (row["endpoint"].get<bool>() ? " (as listed)" : " (listed differs)") << " -> "
                      << (pass ? "pass" : "FAIL") << '\n';
        }
        rows.push_back(std::move(row));
    }
    if (o.structured()) std::cout << rows.dump(2) << '\n';
    return all ? 0 : exit_engine;
}

int run_serve(const std::string& host, int port) {
    std::cerr << "listening on " << host << ":" << port << '\n';
    check(qc_serve(host.c_str(), port));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasicone strategy engine"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "text or structured (JSON)")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "list normal quasicones up to the bound");
    enumerate->add_option("--rank", ea.rank)->required()->check(CLI::Range(1, 6));
    enumerate->add_option("--bound", ea.bound)->required()->check(CLI::Range(1, 20));
    enumerate->add_flag("--raw", ea.raw, "every normal matrix, not one per orbit");
    enumerate->add_flag("--count", ea.count_only, "print the count only");

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "run the strategy tiers over the enumeration");
    search->add_option("--rank", sa.rank)->required()->check(CLI::Range(1, 6));
    search->add_option("--bound", sa.bound, "enumeration bound (default rank + 2)")->check(CLI::Range(1, 20));
    search->add_option("--tiers", sa.tiers)->capture_default_str();
    search->add_option("--max-rounds", sa.max_rounds)->check(CLI::Range(1u, 100000u))->capture_default_str();
    search->add_option("--threads", sa.threads, "0 = all cores");
    search->add_option("--out", sa.out, "write the report document here");
    search->add_flag("--full", sa.full, "list every node in the report");

    ApplyArgs aa;
    auto* apply = app.add_subcommand("apply", "run a strategy on a matrix");
    apply->add_option("--matrix", aa.matrix)->required();
    apply->add_option("--strategy", aa.strategy, "e.g. \"+1, -1@0\"")->required();
    apply->add_option("--start-weight", aa.start_weight)->capture_default_str();
    apply->add_option("--closure", aa.closure)->check(CLI::IsMember({"fixpoint", "none", "literal"}))->capture_default_str();

    std::string norm_path;
    auto* normalize = app.add_subcommand("normalize", "canonical orbit representative");
    normalize->add_option("--matrix", norm_path)->required();

    std::string defect_path;
    auto* defect = app.add_subcommand("defect", "defect of a matrix");
    defect->add_option("--matrix", defect_path)->required();

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify-paper", "check the reference table or the manual cases");
    verify->add_option("--case", va.which)->required()->check(CLI::IsMember({"table", "manual"}));
    verify->add_option("--rank", va.ranks, "table ranks")->check(CLI::Range(2, 4));
    verify->add_option("--max-scan-bound", va.max_scan_bound, "largest bound tried for calibration");
    verify->add_option("--bound", va.bound, "fallback bound when calibration fails (default rank + 2)");
    verify->add_option("--threads", va.threads);

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "HTTP session service");
    serve->add_option("--port", port)->check(CLI::Range(0, 65535))->capture_default_str();
    serve->add_option("--host", host)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*enumerate) return run_enumerate(opt, ea);
        if (*search) return run_search(opt, sa);
        if (*apply) return run_apply(opt, aa);
        if (*normalize) return run_normalize(opt, norm_path);
        if (*defect) return run_defect(opt, defect_path);
        if (*verify) return va.which == "manual" ? run_verify_manual(opt) : run_verify_table(opt, va);
        if (*serve) return run_serve(host, port);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.message << '\n';
        return exit_usage;
    } catch (const EngineError& e) {
        std::cerr << "error: " << e.message << '\n';
        return exit_engine;
    }
    return exit_usage;
}
