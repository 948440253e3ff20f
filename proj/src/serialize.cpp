#include "qcone/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace qcone {

Json to_json(ExtInt x) {
    if (x.is_finite()) return x.value();
    return x.to_string();
}

ExtInt ext_from_json(const Json& j) {
    if (j.is_number_integer()) return ExtInt(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "-inf") return ExtInt::parse(s);
    }
    throw std::invalid_argument("matrix entry must be an integer, \"inf\" or \"-inf\"");
}

Json to_json(const QuasiconeMatrix& c) {
    Json rows = Json::array();
    for (std::size_t p = 0; p < c.dim(); ++p) {
        Json row = Json::array();
        for (std::size_t q = 0; q < c.dim(); ++q)
            row.push_back(p == q ? Json(nullptr) : to_json(c.at(int(p), int(q))));
        rows.push_back(std::move(row));
    }
    Json j;
    j["rank"] = c.rank();
    j["heisenberg"] = to_json(c.heisenberg());
    j["entries"] = std::move(rows);
    return j;
}

QuasiconeMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("entries")) throw std::invalid_argument("matrix document needs \"entries\"");
    const Json& rows = j.at("entries");
    if (!rows.is_array() || rows.size() < 2) throw std::invalid_argument("\"entries\" must have at least two rows");
    const int n = int(rows.size()) - 1;
    if (j.contains("rank") && j.at("rank") != n) throw std::invalid_argument("\"rank\" disagrees with \"entries\"");
    const ExtInt w = j.contains("heisenberg") ? ext_from_json(j.at("heisenberg")) : ExtInt(1);
    QuasiconeMatrix c(n, ExtInt::pos_inf(), w);
    for (int p = 0; p <= n; ++p) {
        const Json& row = rows.at(std::size_t(p));
        if (!row.is_array() || int(row.size()) != n + 1)
            throw std::invalid_argument("row " + std::to_string(p) + " has wrong length");
        for (int q = 0; q <= n; ++q) {
            if (p == q) continue;
            c.set(p, q, ext_from_json(row.at(std::size_t(q))));
        }
    }
    return c;
}

std::string serialize_matrix(const QuasiconeMatrix& c) { return to_json(c).dump(2) + "\n"; }

QuasiconeMatrix parse_matrix(std::string_view text) {
    const auto first = std::find_if(text.begin(), text.end(), [](unsigned char ch) { return !std::isspace(ch); });
    if (first == text.end()) throw std::invalid_argument("empty matrix input");
    if (*first == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument(std::string("matrix document: ") + e.what());
        }
        return matrix_from_json(j);
    }
    return QuasiconeMatrix::from_text(std::string(text));
}

std::int64_t parse_start_weight(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (!s.empty() && (s.back() == 'd' || s.back() == 'D')) {
        s.pop_back();
        if (s.empty() || s == "+") return 1;
        if (s == "-") return -1;
    }
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw std::invalid_argument("start weight '" + std::string(text) + "' is not k*d");
    return v;
}

Json gap_json(const QuasiconeMatrix& c) {
    Json g = Json::array();
    for (ExtInt x : gap(c)) g.push_back(to_json(x));
    return g;
}

Json defect_json(const QuasiconeMatrix& c) {
    for (ExtInt x : gap(c))
        if (x.is_pos_inf()) return nullptr;
    return defect(c);
}

Json to_json(const AffineRoot& r) {
    Json j;
    j["classical"] = r.classical ? Json(r.classical->signed_nu()) : Json(nullptr);
    j["delta"] = r.delta;
    return j;
}

Json to_json(const StrategyState& s) {
    Json j;
    j["matrix"] = to_json(s.matrix);
    j["defect"] = defect_json(s.matrix);
    j["gap"] = gap_json(s.matrix);
    j["offset"] = to_json(s.offset);
    j["history_length"] = s.trace.size();
    j["strategy"] = explicit_strategy(s.trace).to_string();
    j["degenerate"] = is_degenerate(s.matrix);
    return j;
}

namespace {

Json tier_json(const TierResult& t) {
    Json j;
    j["tier"] = to_string(t.tier);
    j["unsolved_after"] = t.unsolved_after;
    j["solved_here"] = t.solved_here;
    j["rounds"] = t.rounds;
    return j;
}

Json node_json(const SearchNode& nd, std::size_t index) {
    Json j;
    j["index"] = index;
    j["defect"] = nd.defect;
    j["seed"] = nd.seed;
    j["solved"] = nd.solved;
    j["solved_by"] = nd.solved_by ? Json(to_string(*nd.solved_by)) : Json(nullptr);
    Json w = Json::array();
    for (const Strategy& s : nd.witness) w.push_back(s.to_string());
    j["witness"] = std::move(w);
    j["matrix"] = to_json(nd.canonical);
    return j;
}

Json optional_count(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const SearchReport& rep, bool full) {
    Json j;
    j["rank"] = rep.rank;
    j["bound"] = rep.bound;
    j["total_considered"] = rep.total_considered;
    j["raw_total"] = rep.raw_total;
    Json tiers = Json::array();
    for (const auto& t : rep.tiers) tiers.push_back(tier_json(t));
    j["tiers"] = std::move(tiers);
    Json residual = Json::array();
    for (std::size_t i : rep.residual) residual.push_back(to_json(rep.nodes[i].canonical));
    j["residual"] = std::move(residual);

    Json edges = Json::array();
    std::set<std::size_t> touched;
    for (const ForestEdge& e : rep.edges) {
        Json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["strategy"] = e.strategy;
        je["resolved"] = e.resolved.to_string();
        edges.push_back(std::move(je));
        touched.insert(e.from);
        touched.insert(e.to);
    }
    j["edges"] = std::move(edges);
    Json nodes = Json::array();
    if (full) {
        for (std::size_t i = 0; i < rep.nodes.size(); ++i) nodes.push_back(node_json(rep.nodes[i], i));
    } else {
        for (std::size_t i : touched) nodes.push_back(node_json(rep.nodes[i], i));
    }
    j["nodes"] = std::move(nodes);
    return j;
}

Json to_json(const TableCheck& chk) {
    Json j;
    j["rank"] = chk.rank;
    Json ref;
    ref["total"] = chk.reference.total;
    Json ru = Json::array();
    for (const auto& u : chk.reference.unsolved) ru.push_back(optional_count(u));
    ref["unsolved"] = std::move(ru);
    j["reference"] = std::move(ref);
    Json scan = Json::array();
    for (const BoundScan& s : chk.scan) scan.push_back(Json{{"bound", s.bound}, {"canonical", s.canonical}, {"raw", s.raw}});
    j["scan"] = std::move(scan);
    j["calibrated_bound"] = chk.calibrated_bound ? Json(*chk.calibrated_bound) : Json(nullptr);
    j["calibrated_on_raw"] = chk.calibrated_on_raw;
    j["bound_used"] = chk.bound_used;
    j["total_considered"] = chk.report.total_considered;
    Json got = Json::array();
    for (const auto& t : chk.report.tiers) got.push_back(t.unsolved_after);
    j["unsolved"] = std::move(got);
    j["residual_size"] = chk.report.residual.size();
    j["totals_match"] = chk.totals_match;
    j["tiers_match"] = chk.tiers_match;
    j["monotone"] = chk.monotone;
    j["endpoint"] = chk.endpoint;
    j["pass"] = chk.pass();
    return j;
}

namespace {

Json run_json(const ReplayRun& r) {
    Json j;
    j["ran"] = r.ran;
    if (!r.ran) {
        j["error"] = r.error;
        return j;
    }
    j["exact"] = r.exact;
    j["defect"] = r.defect;
    j["degenerate"] = r.degenerate;
    j["success"] = r.success;
    Json diffs = Json::array();
    for (const auto& d : r.diff_positions) diffs.push_back(Json::array({d[0], d[1]}));
    j["diff_positions"] = std::move(diffs);
    j["strategy"] = explicit_strategy(r.trace).to_string();
    j["output"] = to_json(r.output);
    return j;
}

}  // namespace

Json to_json(const ReplayResult& r) {
    Json j;
    j["id"] = r.id;
    j["pass"] = r.pass;
    j["input_defect"] = r.input_defect;
    j["listed_output_defect"] = r.listed_output_defect;
    j["listed_output_degenerate"] = r.listed_output_degenerate;
    j["listed_success"] = r.listed_success;
    j["listed_path_ok"] = r.listed_path_ok;
    j["listed_path_break"] = r.listed_path_ok ? Json(nullptr) : Json(r.listed_path_break);
    j["fixpoint_matches_closed_listing"] = r.fixpoint_matches_closed_listing;
    j["raw"] = run_json(r.raw);
    j["fixpoint"] = run_json(r.fixpoint);
    return j;
}

}  // namespace qcone
