#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qcone/search.hpp"
#include "qcone/serialize.hpp"
#include "qcone/strategy.hpp"

namespace qcone {

struct ServiceOptions {
    unsigned search_threads = 0;
    // bound for the stock search behind /api/residual; 0 means rank + 2
    int residual_bound = 0;
};

struct HttpReply {
    int status = 200;
    std::string body;  // JSON document
};

// In-memory session store behind the HTTP API. Each handler is a plain
// function of (request body, path parameters) so it can be driven without a
// socket; the server only routes.
class SessionService {
public:
    explicit SessionService(ServiceOptions opt = {});
    ~SessionService();

    HttpReply create_session(const std::string& body);
    HttpReply state(const std::string& id);
    HttpReply moves(const std::string& id);
    HttpReply apply(const std::string& id, const std::string& body);
    HttpReply undo(const std::string& id);
    HttpReply residual(const std::string& rank, const std::string& bound = "");
    // stateless: run a whole strategy from a matrix
    HttpReply replay(const std::string& body);

private:
    struct Session;
    struct ResidualCache;

    std::shared_ptr<Session> find(const std::string& id);
    const SearchReport& residual_report(int rank, int bound);
    Json session_json(const Session& s) const;

    ServiceOptions opt_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 1;
    std::unique_ptr<ResidualCache> cache_;
};

// Listening server. start() returns the bound port (pass 0 for any free port).
class HttpServer {
public:
    explicit HttpServer(ServiceOptions opt = {});
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    int start(const std::string& host, int port);
    void stop();
    // blocks until stop() is called from another thread
    void run(const std::string& host, int port);

    SessionService& service();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace qcone
