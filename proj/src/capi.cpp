#include "qcone/qcone.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "qcone/search.hpp"
#include "qcone/serialize.hpp"
#include "qcone/service.hpp"

struct qc_matrix {
    qcone::QuasiconeMatrix m;
};

struct qc_report {
    qcone::SearchReport r;
};

struct qc_server {
    std::unique_ptr<qcone::HttpServer> server;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_step_kind;
thread_local std::int64_t last_step_index = -1;

void clear_error() {
    last_error.clear();
    last_step_kind.clear();
    last_step_index = -1;
}

qc_status fail(qc_status s, const std::string& msg) {
    last_error = msg;
    return s;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qc_status give(char** out, const std::string& s) {
    if (!out) return fail(QC_ERR_ARGUMENT, "output pointer is null");
    *out = dup_string(s);
    return *out ? QC_OK : fail(QC_ERR_INTERNAL, "out of memory");
}

// every entry point funnels C++ exceptions through here
template <class F>
qc_status guarded(F&& f) {
    clear_error();
    try {
        return f();
    } catch (const qcone::StepError& e) {
        last_step_kind = qcone::to_string(e.kind());
        last_step_index = e.step_index() == qcone::StepError::no_index ? -1 : std::int64_t(e.step_index());
        return fail(QC_ERR_STEP, e.what());
    } catch (const qcone::Json::exception& e) {
        return fail(QC_ERR_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(QC_ERR_PARSE, e.what());
    } catch (const std::domain_error& e) {
        return fail(QC_ERR_INVALID, e.what());
    } catch (const std::exception& e) {
        return fail(QC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QC_ERR_INTERNAL, "unknown error");
    }
}

#define QC_REQUIRE(ptr) \
    if (!(ptr)) return fail(QC_ERR_ARGUMENT, #ptr " is null")

}  // namespace

extern "C" {

const char* qc_version(void) { return "0.3.0"; }
const char* qc_last_error(void) { return last_error.c_str(); }
const char* qc_last_step_kind(void) { return last_step_kind.c_str(); }
int64_t qc_last_step_index(void) { return last_step_index; }
void qc_string_free(char* s) { std::free(s); }

qc_status qc_matrix_parse(const char* text, qc_matrix** out) {
    return guarded([&] {
        QC_REQUIRE(text);
        QC_REQUIRE(out);
        *out = new qc_matrix{qcone::parse_matrix(text)};
        return QC_OK;
    });
}

qc_status qc_matrix_read_file(const char* path, qc_matrix** out) {
    return guarded([&] {
        QC_REQUIRE(path);
        QC_REQUIRE(out);
        std::ifstream in(path, std::ios::binary);
        if (!in) return fail(QC_ERR_IO, std::string("cannot open ") + path);
        std::stringstream ss;
        ss << in.rdbuf();
        *out = new qc_matrix{qcone::parse_matrix(ss.str())};
        return QC_OK;
    });
}

void qc_matrix_free(qc_matrix* m) { delete m; }

qc_status qc_matrix_clone(const qc_matrix* m, qc_matrix** out) {
    return guarded([&] {
        QC_REQUIRE(m);
        QC_REQUIRE(out);
        *out = new qc_matrix{m->m};
        return QC_OK;
    });
}

int qc_matrix_rank(const qc_matrix* m) { return m ? m->m.rank() : -1; }

int qc_matrix_equal(const qc_matrix* a, const qc_matrix* b) { return a && b && a->m == b->m; }

qc_status qc_matrix_serialize(const qc_matrix* m, char** out) {
    return guarded([&] {
        QC_REQUIRE(m);
        return give(out, qcone::serialize_matrix(m->m));
    });
}

qc_status qc_matrix_to_text(const qc_matrix* m, char** out) {
    return guarded([&] {
        QC_REQUIRE(m);
        return give(out, m->m.to_text());
    });
}

qc_status qc_matrix_validate(const qc_matrix* m) {
    return guarded([&] {
        QC_REQUIRE(m);
        const auto v = qcone::validate(m->m);
        if (!v.empty()) return fail(QC_ERR_INVALID, v.front().message);
        return QC_OK;
    });
}

qc_status qc_matrix_defect(const qc_matrix* m, int64_t* out) {
    return guarded([&] {
        QC_REQUIRE(m);
        QC_REQUIRE(out);
        *out = qcone::defect(m->m);
        return QC_OK;
    });
}

qc_status qc_matrix_describe(const qc_matrix* m, char** out) {
    return guarded([&] {
        QC_REQUIRE(m);
        qcone::Json j;
        j["defect"] = qcone::defect_json(m->m);
        j["gap"] = qcone::gap_json(m->m);
        const auto v = qcone::validate(m->m);
        j["valid"] = v.empty();
        j["normal"] = qcone::is_normal(m->m);
        j["gvm_complete"] = qcone::is_gvm_complete(m->m);
        j["degenerate"] = qcone::is_degenerate(m->m);
        qcone::Json vs = qcone::Json::array();
        for (const auto& x : v) vs.push_back(x.message);
        j["violations"] = std::move(vs);
        return give(out, j.dump(2) + "\n");
    });
}

qc_status qc_matrix_normalize(const qc_matrix* m, qc_matrix** out) {
    return guarded([&] {
        QC_REQUIRE(m);
        QC_REQUIRE(out);
        *out = new qc_matrix{qcone::normalize(m->m)};
        return QC_OK;
    });
}

qc_status qc_enumerate(int rank, int bound, int raw, qc_matrix_sink sink, void* user, uint64_t* count) {
    return guarded([&] {
        if (rank < 1 || bound < 1) return fail(QC_ERR_ARGUMENT, "rank and bound must be >= 1");
        std::uint64_t seen = 0;
        qcone::enumerate_normal(qcone::EnumerationOptions{rank, bound, raw != 0}, [&](const qcone::QuasiconeMatrix& c) {
            ++seen;
            if (!sink) return true;
            const qc_matrix view{c};
            return sink(&view, user) != 0;
        });
        if (count) *count = seen;
        return QC_OK;
    });
}

qc_status qc_parse_start_weight(const char* text, int64_t* delta) {
    return guarded([&] {
        QC_REQUIRE(text);
        QC_REQUIRE(delta);
        *delta = qcone::parse_start_weight(text);
        return QC_OK;
    });
}

qc_status qc_strategy_normalize(const char* text, char** out) {
    return guarded([&] {
        QC_REQUIRE(text);
        return give(out, qcone::Strategy::parse(text).to_string());
    });
}

qc_status qc_apply(const qc_matrix* m, const char* strategy, int64_t start_delta, qc_closure closure,
                   char** out_state, qc_matrix** out_matrix) {
    return guarded([&] {
        QC_REQUIRE(m);
        QC_REQUIRE(strategy);
        const qcone::Strategy s = qcone::Strategy::parse(strategy);
        if (s.steps.size() && m->m.rank() < 1) return fail(QC_ERR_ARGUMENT, "empty matrix");
        for (const auto& st : s.steps)
            if (st.root.index.b() > m->m.rank())
                return fail(QC_ERR_PARSE, "strategy root " + std::to_string(st.root.signed_nu()) + " exceeds the rank");
        qcone::EngineConfig cfg;
        switch (closure) {
            case QC_CLOSURE_FIXPOINT: cfg.closure = qcone::ClosureMode::fixpoint; break;
            case QC_CLOSURE_NONE: cfg.closure = qcone::ClosureMode::none; break;
            case QC_CLOSURE_LITERAL: cfg.closure = qcone::ClosureMode::literal; break;
            default: return fail(QC_ERR_ARGUMENT, "unknown closure mode");
        }
        const auto state = qcone::apply_strategy(qcone::StrategyState::initial(m->m, start_delta), s, cfg);
        if (out_state) {
            qcone::Json j = qcone::to_json(state);
            j["success"] = qcone::succeeded(m->m, state);
            const qc_status st = give(out_state, j.dump(2) + "\n");
            if (st != QC_OK) return st;
        }
        if (out_matrix) *out_matrix = new qc_matrix{state.matrix};
        return QC_OK;
    });
}

void qc_search_config_init(qc_search_config* cfg) {
    if (!cfg) return;
    cfg->rank = 2;
    cfg->bound = 0;
    cfg->tiers = nullptr;
    cfg->max_rounds = 32;
    cfg->start_delta = -1;
    cfg->threads = 0;
}

qc_status qc_search(const qc_search_config* cfg, qc_report** out) {
    return guarded([&] {
        QC_REQUIRE(cfg);
        QC_REQUIRE(out);
        if (cfg->rank < 1) return fail(QC_ERR_ARGUMENT, "rank must be >= 1");
        qcone::SearchConfig sc;
        sc.rank = cfg->rank;
        sc.bound = cfg->bound > 0 ? cfg->bound : cfg->rank + 2;
        if (cfg->tiers) sc.tiers = qcone::parse_tiers(cfg->tiers);
        sc.max_rounds = cfg->max_rounds;
        sc.start_delta = cfg->start_delta;
        sc.threads = cfg->threads;
        if (sc.max_rounds < 1) return fail(QC_ERR_ARGUMENT, "max_rounds must be >= 1");
        *out = new qc_report{qcone::concatenate_strategies(sc)};
        return QC_OK;
    });
}

void qc_report_free(qc_report* r) { delete r; }

size_t qc_report_total(const qc_report* r) { return r ? r->r.total_considered : 0; }

size_t qc_report_tier_count(const qc_report* r) { return r ? r->r.tiers.size() : 0; }

qc_status qc_report_tier(const qc_report* r, size_t i, const char** name, size_t* unsolved_after) {
    return guarded([&] {
        QC_REQUIRE(r);
        if (i >= r->r.tiers.size()) return fail(QC_ERR_ARGUMENT, "tier index out of range");
        if (name) *name = qcone::to_string(r->r.tiers[i].tier);
        if (unsolved_after) *unsolved_after = r->r.tiers[i].unsolved_after;
        return QC_OK;
    });
}

size_t qc_report_residual_count(const qc_report* r) { return r ? r->r.residual.size() : 0; }

qc_status qc_report_residual(const qc_report* r, size_t i, qc_matrix** out) {
    return guarded([&] {
        QC_REQUIRE(r);
        QC_REQUIRE(out);
        if (i >= r->r.residual.size()) return fail(QC_ERR_ARGUMENT, "residual index out of range");
        *out = new qc_matrix{r->r.nodes[r->r.residual[i]].canonical};
        return QC_OK;
    });
}

qc_status qc_report_verify_witnesses(const qc_report* r, size_t* failures) {
    return guarded([&] {
        QC_REQUIRE(r);
        QC_REQUIRE(failures);
        *failures = 0;
        for (const auto& nd : r->r.nodes)
            if (nd.solved && !qcone::verify_witness(nd)) ++*failures;
        return QC_OK;
    });
}

qc_status qc_report_serialize(const qc_report* r, int full, char** out) {
    return guarded([&] {
        QC_REQUIRE(r);
        return give(out, qcone::to_json(r->r, full != 0).dump(2) + "\n");
    });
}

qc_status qc_verify_table(int rank, int max_scan_bound, int fallback_bound, unsigned threads, char** out, int* pass) {
    return guarded([&] {
        const auto chk = qcone::verify_table(rank, max_scan_bound,
                                             fallback_bound > 0 ? std::optional<int>(fallback_bound) : std::nullopt,
                                             threads);
        if (pass) *pass = chk.pass();
        return out ? give(out, qcone::to_json(chk).dump(2) + "\n") : QC_OK;
    });
}

qc_status qc_verify_manual(char** out, int* passed, int* total) {
    return guarded([&] {
        const auto results = qcone::replay_manual_cases();
        qcone::Json list = qcone::Json::array();
        int ok = 0;
        for (const auto& r : results) {
            ok += r.pass;
            list.push_back(qcone::to_json(r));
        }
        if (passed) *passed = ok;
        if (total) *total = int(results.size());
        return out ? give(out, list.dump(2) + "\n") : QC_OK;
    });
}

qc_status qc_server_start(const char* host, int port, qc_server** out, int* bound_port) {
    return guarded([&] {
        QC_REQUIRE(host);
        QC_REQUIRE(out);
        auto s = std::make_unique<qc_server>();
        s->server = std::make_unique<qcone::HttpServer>();
        const int p = s->server->start(host, port);
        if (bound_port) *bound_port = p;
        *out = s.release();
        return QC_OK;
    });
}

void qc_server_stop(qc_server* s) {
    if (!s) return;
    s->server->stop();
    delete s;
}

qc_status qc_serve(const char* host, int port) {
    return guarded([&] {
        QC_REQUIRE(host);
        qcone::HttpServer server;
        server.run(host, port);
        return QC_OK;
    });
}

}  // extern "C"
