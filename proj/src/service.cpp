#include "qcone/service.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "httplib.h"

namespace qcone {

struct SessionService::Session {
    std::mutex mu;
    std::string id;
    Json origin;
    QuasiconeMatrix input;
    EngineConfig engine;
    StrategyState state;
    std::vector<StrategyState> history;
};

struct SessionService::ResidualCache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::unique_ptr<SearchReport>> reports;
};

namespace {

HttpReply reply(int status, const Json& j) { return {status, j.dump(2) + "\n"}; }

HttpReply error_reply(int status, const std::string& kind, const std::string& message) {
    Json e;
    e["kind"] = kind;
    e["message"] = message;
    return reply(status, Json{{"error", e}});
}

Json parse_body(const std::string& body) {
    if (body.empty()) return Json::object();
    Json j = Json::parse(body);  // parse_error handled by the caller
    if (!j.is_object()) throw std::invalid_argument("request body must be an object");
    return j;
}

SignedRoot root_from_json(const Json& j) {
    if (j.is_number_integer()) return SignedRoot::from_signed(j.get<std::int64_t>());
    if (j.is_string()) return Strategy::parse(j.get<std::string>()).steps.at(0).root;
    throw std::invalid_argument("\"root\" must be a signed index such as 3 or \"-3\"");
}

int int_param(const std::string& text, const char* name) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size()) throw std::invalid_argument(std::string(name) + " must be an integer");
    return v;
}

}  // namespace

SessionService::SessionService(ServiceOptions opt) : opt_(opt), cache_(std::make_unique<ResidualCache>()) {}
SessionService::~SessionService() = default;

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

const SearchReport& SessionService::residual_report(int rank, int bound) {
    std::lock_guard lock(cache_->mu);
    auto& slot = cache_->reports[{rank, bound}];
    if (!slot) {
        SearchConfig cfg;
        cfg.rank = rank;
        cfg.bound = bound;
        cfg.threads = opt_.search_threads;
        slot = std::make_unique<SearchReport>(concatenate_strategies(cfg));
    }
    return *slot;
}

Json SessionService::session_json(const Session& s) const {
    Json j;
    j["id"] = s.id;
    j["origin"] = s.origin;
    const Json st = to_json(s.state);
    for (auto it = st.begin(); it != st.end(); ++it) j[it.key()] = it.value();
    const bool moved = !s.state.trace.empty();
    j["gvm_complete"] = is_gvm_complete(s.state.matrix);
    j["success"] = moved && succeeded(s.input, s.state);
    return j;
}

HttpReply SessionService::create_session(const std::string& body) {
    auto s = std::make_shared<Session>();
    try {
        const Json req = parse_body(body);
        std::int64_t start = -1;
        if (req.contains("start_delta")) start = req.at("start_delta").get<std::int64_t>();
        if (req.contains("closure")) {
            const auto mode = req.at("closure").get<std::string>();
            if (mode == "none") s->engine.closure = ClosureMode::none;
            else if (mode == "literal") s->engine.closure = ClosureMode::literal;
            else if (mode != "fixpoint")
                throw std::invalid_argument("closure must be \"fixpoint\", \"none\" or \"literal\"");
        }
        if (req.contains("matrix")) {
            const Json& m = req.at("matrix");
            s->input = m.is_string() ? parse_matrix(m.get<std::string>()) : matrix_from_json(m);
            s->origin = Json{{"kind", "matrix"}};
        } else if (req.contains("residual")) {
            const Json& r = req.at("residual");
            const int rank = r.at("rank").get<int>();
            const std::size_t index = r.at("index").get<std::size_t>();
            if (rank < 2 || rank > 4) return error_reply(400, "BadRequest", "residual rank must be 2, 3 or 4");
            const int bound = opt_.residual_bound ? opt_.residual_bound : rank + 2;
            const SearchReport& rep = residual_report(rank, bound);
            if (index >= rep.residual.size())
                return error_reply(404, "UnknownResidual",
                                   "residual index " + std::to_string(index) + " out of range (" +
                                       std::to_string(rep.residual.size()) + " entries)");
            s->input = rep.nodes[rep.residual[index]].canonical;
            s->origin = Json{{"kind", "residual"}, {"rank", rank}, {"index", index}};
        } else {
            return error_reply(400, "BadRequest", "body needs \"matrix\" or \"residual\"");
        }
        const auto violations = validate(s->input);
        if (!violations.empty()) return error_reply(422, "InvalidMatrix", violations.front().message);
        s->state = StrategyState::initial(s->input, start);
    } catch (const Json::exception& e) {
        return error_reply(400, "BadRequest", e.what());
    } catch (const std::invalid_argument& e) {
        return error_reply(400, "BadRequest", e.what());
    }
    {
        std::lock_guard lock(mu_);
        s->id = "s" + std::to_string(next_id_++);
        sessions_[s->id] = s;
    }
    return reply(201, Json{{"id", s->id}});
}

HttpReply SessionService::state(const std::string& id) {
    auto s = find(id);
    if (!s) return error_reply(404, "UnknownSession", "no session '" + id + "'");
    std::lock_guard lock(s->mu);
    return reply(200, session_json(*s));
}

HttpReply SessionService::moves(const std::string& id) {
    auto s = find(id);
    if (!s) return error_reply(404, "UnknownSession", "no session '" + id + "'");
    std::lock_guard lock(s->mu);
    Json list = Json::array();
    const int n = s->state.matrix.rank();
    std::vector<SignedRoot> roots;
    for (RootIndex r : admissible_indices(n)) {
        roots.push_back(SignedRoot{r, false});
        roots.push_back(SignedRoot{r, true});
    }
    std::sort(roots.begin(), roots.end(),
              [](SignedRoot x, SignedRoot y) { return x.signed_nu() < y.signed_nu(); });
    for (SignedRoot root : roots) {
        Json m;
        m["root"] = root.signed_nu();
        const ExtInt entry = s->state.matrix.at(root);
        m["auto_exponent"] = entry.is_finite() ? Json(entry.value() - 1) : Json(nullptr);
        try {
            const StrategyState next = apply_step(s->state, root, std::nullopt, s->engine);
            m["predicted_defect"] = defect_json(next.matrix);
            m["predicted_gap"] = gap_json(next.matrix);
            m["legality"] = "legal";
            m["success"] = succeeded(s->input, next);
        } catch (const StepError& e) {
            m["predicted_defect"] = nullptr;
            m["predicted_gap"] = nullptr;
            m["legality"] = to_string(e.kind());
            m["success"] = false;
        }
        list.push_back(std::move(m));
    }
    return reply(200, Json{{"moves", list}});
}

HttpReply SessionService::apply(const std::string& id, const std::string& body) {
    auto s = find(id);
    if (!s) return error_reply(404, "UnknownSession", "no session '" + id + "'");
    SignedRoot root;
    std::optional<std::int64_t> k;
    try {
        const Json req = parse_body(body);
        if (!req.contains("root")) return error_reply(400, "BadRequest", "body needs \"root\"");
        root = root_from_json(req.at("root"));
        if (req.contains("exponent") && !req.at("exponent").is_null()) k = req.at("exponent").get<std::int64_t>();
    } catch (const Json::exception& e) {
        return error_reply(400, "BadRequest", e.what());
    } catch (const std::invalid_argument& e) {
        return error_reply(400, "BadRequest", e.what());
    }
    std::lock_guard lock(s->mu);
    if (root.index.b() > s->state.matrix.rank())
        return error_reply(400, "BadRequest", "root index exceeds the rank");
    try {
        StrategyState next = apply_step(s->state, root, k, s->engine);
        s->history.push_back(std::move(s->state));
        s->state = std::move(next);
    } catch (const StepError& e) {
        return error_reply(422, to_string(e.kind()), e.what());
    }
    return reply(200, session_json(*s));
}

HttpReply SessionService::undo(const std::string& id) {
    auto s = find(id);
    if (!s) return error_reply(404, "UnknownSession", "no session '" + id + "'");
    std::lock_guard lock(s->mu);
    if (s->history.empty()) return error_reply(409, "EmptyHistory", "nothing to undo");
    s->state = std::move(s->history.back());
    s->history.pop_back();
    return reply(200, session_json(*s));
}

HttpReply SessionService::residual(const std::string& rank_text, const std::string& bound_text) {
    int rank = 0, bound = 0;
    try {
        rank = int_param(rank_text, "rank");
        bound = bound_text.empty() ? 0 : int_param(bound_text, "bound");
    } catch (const std::invalid_argument& e) {
        return error_reply(400, "BadRequest", e.what());
    }
    if (rank < 2 || rank > 4) return error_reply(400, "BadRequest", "rank must be 2, 3 or 4");
    if (!bound) bound = opt_.residual_bound ? opt_.residual_bound : rank + 2;
    if (bound < 1 || bound > 8) return error_reply(400, "BadRequest", "bound must be in 1..8");
    const SearchReport& rep = residual_report(rank, bound);
    Json j;
    j["rank"] = rank;
    j["bound"] = bound;
    j["total_considered"] = rep.total_considered;
    Json list = Json::array();
    for (std::size_t i : rep.residual) list.push_back(to_json(rep.nodes[i].canonical));
    j["residual"] = std::move(list);
    return reply(200, j);
}

HttpReply SessionService::replay(const std::string& body) {
    try {
        const Json req = parse_body(body);
        const Json& m = req.at("matrix");
        const QuasiconeMatrix c = m.is_string() ? parse_matrix(m.get<std::string>()) : matrix_from_json(m);
        const Strategy s = Strategy::parse(req.at("strategy").get<std::string>());
        const std::int64_t start = req.contains("start_delta") ? req.at("start_delta").get<std::int64_t>() : -1;
        const StrategyState out = apply_strategy(StrategyState::initial(c, start), s);
        Json j = to_json(out);
        j["success"] = succeeded(c, out);
        return reply(200, j);
    } catch (const StepError& e) {
        Json err{{"kind", to_string(e.kind())}, {"message", e.what()}};
        if (e.step_index() != StepError::no_index) err["step"] = e.step_index();
        return reply(422, Json{{"error", err}});
    } catch (const Json::exception& e) {
        return error_reply(400, "BadRequest", e.what());
    } catch (const std::invalid_argument& e) {
        return error_reply(400, "BadRequest", e.what());
    }
}

// ---- server -----------------------------------------------------------------

struct HttpServer::Impl {
    explicit Impl(ServiceOptions opt) : service(opt) {}
    SessionService service;
    httplib::Server server;
    std::thread worker;
};

namespace {

void send(httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
}

}  // namespace

HttpServer::HttpServer(ServiceOptions opt) : impl_(std::make_unique<Impl>(opt)) {
    auto& srv = impl_->server;
    auto& svc = impl_->service;
    srv.Post("/api/sessions", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.create_session(req.body));
    });
    srv.Get(R"(/api/sessions/([^/]+)/state)", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.state(req.matches[1]));
    });
    srv.Get(R"(/api/sessions/([^/]+)/moves)", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.moves(req.matches[1]));
    });
    srv.Post(R"(/api/sessions/([^/]+)/apply)", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.apply(req.matches[1], req.body));
    });
    srv.Post(R"(/api/sessions/([^/]+)/undo)", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.undo(req.matches[1]));
    });
    srv.Get("/api/residual", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.residual(req.get_param_value("rank"), req.get_param_value("bound")));
    });
    srv.Post("/api/replay", [&svc](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.replay(req.body));
    });
    srv.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string msg = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            msg = e.what();
        } catch (...) {
        }
        send(res, error_reply(500, "Internal", msg));
    });
}

HttpServer::~HttpServer() { stop(); }

SessionService& HttpServer::service() { return impl_->service; }

int HttpServer::start(const std::string& host, int port) {
    auto& srv = impl_->server;
    int bound = port;
    if (port == 0) bound = srv.bind_to_any_port(host);
    else if (!srv.bind_to_port(host, port)) bound = -1;
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    impl_->worker = std::thread([&srv] { srv.listen_after_bind(); });
    srv.wait_until_ready();
    return bound;
}

void HttpServer::run(const std::string& host, int port) {
    if (!impl_->server.listen(host, port)) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
}

void HttpServer::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace qcone
