#include "qcone/search.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace qcone {

const char* to_string(Tier t) {
    switch (t) {
        case Tier::shortest: return "shortest";
        case Tier::shortest_long: return "shortest-long";
        case Tier::simple_basic: return "simple-basic";
        case Tier::concat: return "concat";
    }
    return "unknown";
}

Tier tier_from_string(const std::string& s) {
    if (s == "shortest") return Tier::shortest;
    if (s == "shortest-long") return Tier::shortest_long;
    if (s == "simple-basic") return Tier::simple_basic;
    if (s == "concat") return Tier::concat;
    throw std::invalid_argument("unknown tier '" + s + "'");
}

std::vector<Tier> parse_tiers(const std::string& comma_list) {
    std::vector<Tier> out;
    std::stringstream ss(comma_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) out.push_back(tier_from_string(item));
    }
    if (out.empty()) throw std::invalid_argument("no tiers given");
    return out;
}

std::vector<QuasiconeMatrix> SearchReport::residual_matrices() const {
    std::vector<QuasiconeMatrix> out;
    for (std::size_t i : residual) out.push_back(nodes[i].canonical);
    return out;
}

namespace {

using Key = std::vector<ExtInt>;

// One strategy applied to one node from the start offset.
struct Attempt {
    bool ran = false;
    bool success = false;
    Strategy resolved;
    std::optional<QuasiconeMatrix> image;  // normal form of the output, when it has one
    std::int64_t image_defect = 0;
};

Attempt attempt(const QuasiconeMatrix& c, const Strategy& s, const SearchConfig& cfg) {
    Attempt a;
    try {
        const StrategyState out = apply_strategy(StrategyState::initial(c, cfg.start_delta), s, cfg.engine);
        a.ran = true;
        a.resolved = explicit_strategy(out.trace);
        a.success = succeeded(c, out);
        if (!a.success && !is_degenerate(out.matrix) && out.matrix.all_finite()) {
            a.image = normalize(out.matrix);
            a.image_defect = defect(*a.image);
        }
    } catch (const StepError&) {
        a.ran = false;
    } catch (const std::invalid_argument&) {
        a.image.reset();  // no monotone normal form: treat as a dead end
    }
    return a;
}

// Both tail rules of the shortest long strategy; success if either works.
Attempt attempt_shortest_long(const QuasiconeMatrix& c, const SearchConfig& cfg) {
    Attempt best;
    for (TailRule rule : {TailRule::auto_exponent, TailRule::balance}) {
        Strategy s;
        try {
            s = shortest_long(c, rule, cfg.start_delta, cfg.engine);
        } catch (const StepError&) {
            return best;
        }
        Attempt a = attempt(c, s, cfg);
        if (a.success) return a;
        if (!best.ran) best = a;
    }
    return best;
}

class Forest {
public:
    explicit Forest(const SearchConfig& cfg) : cfg_(cfg) {}

    std::size_t add(const QuasiconeMatrix& c, bool seed) {
        auto [it, inserted] = index_.try_emplace(c.off_diagonal(), nodes_.size());
        if (inserted) {
            SearchNode node;
            node.canonical = c;
            node.defect = defect(c);
            node.seed = seed;
            nodes_.push_back(std::move(node));
        }
        return it->second;
    }

    std::vector<SearchNode>& nodes() { return nodes_; }
    std::vector<ForestEdge>& edges() { return edges_; }

    void solve(std::size_t i, Tier tier, std::vector<Strategy> witness) {
        if (nodes_[i].solved) return;
        nodes_[i].solved = true;
        nodes_[i].solved_by = tier;
        nodes_[i].witness = std::move(witness);
        pending_.push_back(i);
    }

    void add_edge(std::size_t from, std::size_t to, std::size_t strategy, Strategy resolved) {
        parents_[to].push_back(edges_.size());
        edges_.push_back({from, to, strategy, std::move(resolved)});
        if (nodes_[to].solved) pending_.push_back(to);
    }

    // success flows from a solved node to every ancestor that reaches it
    void propagate(Tier tier) {
        while (!pending_.empty()) {
            const std::size_t child = pending_.front();
            pending_.pop_front();
            auto it = parents_.find(child);
            if (it == parents_.end()) continue;
            for (std::size_t e : it->second) {
                const ForestEdge& edge = edges_[e];
                if (nodes_[edge.from].solved) continue;
                std::vector<Strategy> w{edge.resolved};
                w.insert(w.end(), nodes_[child].witness.begin(), nodes_[child].witness.end());
                solve(edge.from, tier, std::move(w));
            }
        }
    }

private:
    const SearchConfig& cfg_;
    std::vector<SearchNode> nodes_;
    std::vector<ForestEdge> edges_;
    std::map<Key, std::size_t> index_;
    std::map<std::size_t, std::vector<std::size_t>> parents_;
    std::deque<std::size_t> pending_;
};

std::vector<Strategy> ordered_basic_set(const SearchConfig& cfg) {
    std::vector<Strategy> set = simple_basic_set(cfg.rank);
    if (cfg.strategy_order.empty()) return set;
    if (cfg.strategy_order.size() != set.size()) throw std::invalid_argument("strategy_order: wrong length");
    std::vector<Strategy> out;
    for (std::size_t i : cfg.strategy_order) out.push_back(set.at(i));
    return out;
}

std::vector<std::size_t> unsolved_seeds(const std::vector<SearchNode>& nodes) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].seed && !nodes[i].solved) out.push_back(i);
    return out;
}

// single application per node, no forest
void run_direct_tier(Forest& forest, Tier tier, const SearchConfig& cfg) {
    const std::vector<std::size_t> todo = unsolved_seeds(forest.nodes());
    std::vector<Attempt> found(todo.size());
    const std::vector<Strategy> basic = tier == Tier::simple_basic ? ordered_basic_set(cfg) : std::vector<Strategy>{};
    detail::parallel_for(todo.size(), cfg.threads, [&](std::size_t t) {
        const QuasiconeMatrix& c = forest.nodes()[todo[t]].canonical;
        switch (tier) {
            case Tier::shortest:
                // the shortest strategy needs a positive epsilon; other starts just skip the tier
                if (cfg.start_delta < 0) found[t] = attempt(c, shortest(c, -cfg.start_delta), cfg);
                break;
            case Tier::shortest_long: found[t] = attempt_shortest_long(c, cfg); break;
            default:
                for (const Strategy& s : basic) {
                    Attempt a = attempt(c, s, cfg);
                    if (a.success) {
                        found[t] = std::move(a);
                        break;
                    }
                }
        }
    });
    for (std::size_t t = 0; t < todo.size(); ++t)
        if (found[t].success) forest.solve(todo[t], tier, {found[t].resolved});
}

std::size_t run_concat_tier(Forest& forest, const SearchConfig& cfg) {
    const std::vector<Strategy> basic = ordered_basic_set(cfg);
    std::vector<std::size_t> frontier = unsolved_seeds(forest.nodes());
    std::size_t rounds = 0;
    while (!frontier.empty() && rounds < cfg.max_rounds) {
        ++rounds;
        std::vector<std::vector<Attempt>> found(frontier.size());
        detail::parallel_for(frontier.size(), cfg.threads, [&](std::size_t t) {
            const QuasiconeMatrix& c = forest.nodes()[frontier[t]].canonical;
            for (const Strategy& s : basic) found[t].push_back(attempt(c, s, cfg));
        });
        std::vector<std::size_t> next;
        for (std::size_t t = 0; t < frontier.size(); ++t) {
            const std::size_t from = frontier[t];
            for (std::size_t j = 0; j < found[t].size(); ++j) {
                Attempt& a = found[t][j];
                if (a.success) {
                    forest.solve(from, Tier::concat, {a.resolved});
                    break;
                }
                // only defect-neutral moves can lead to a reduction below the node
                if (!a.image || a.image_defect != forest.nodes()[from].defect) continue;
                const std::size_t before = forest.nodes().size();
                const std::size_t to = forest.add(*a.image, false);
                if (forest.nodes().size() > before) next.push_back(to);
                forest.add_edge(from, to, j, a.resolved);
            }
        }
        forest.propagate(Tier::concat);
        frontier.clear();
        for (std::size_t i : next)
            if (!forest.nodes()[i].solved) frontier.push_back(i);
    }
    return rounds;
}

}  // namespace

SearchReport concatenate_strategies(const SearchConfig& cfg) {
    if (cfg.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
    SearchReport rep;
    rep.rank = cfg.rank;
    rep.bound = cfg.bound;

    Forest forest(cfg);
    enumerate_normal(EnumerationOptions{cfg.rank, cfg.bound, false}, [&](const QuasiconeMatrix& c) {
        forest.add(c, true);
        return true;
    });
    enumerate_normal(EnumerationOptions{cfg.rank, cfg.bound, true}, [&](const QuasiconeMatrix&) {
        ++rep.raw_total;
        return true;
    });
    rep.total_considered = forest.nodes().size();

    for (Tier tier : cfg.tiers) {
        const std::size_t before = unsolved_seeds(forest.nodes()).size();
        TierResult tr{tier, 0, 0, 0};
        if (tier == Tier::concat) tr.rounds = run_concat_tier(forest, cfg);
        else run_direct_tier(forest, tier, cfg);
        tr.unsolved_after = unsolved_seeds(forest.nodes()).size();
        tr.solved_here = before - tr.unsolved_after;
        rep.tiers.push_back(tr);
    }
    rep.residual = unsolved_seeds(forest.nodes());
    rep.nodes = std::move(forest.nodes());
    rep.edges = std::move(forest.edges());
    return rep;
}

bool verify_witness(const SearchNode& node, const EngineConfig& engine, std::int64_t start_delta) {
    if (!node.solved || node.witness.empty()) return false;
    QuasiconeMatrix cur = node.canonical;
    for (std::size_t i = 0; i < node.witness.size(); ++i) {
        StrategyState out;
        try {
            out = apply_strategy(StrategyState::initial(cur, start_delta), node.witness[i], engine);
        } catch (const StepError&) {
            return false;
        }
        if (i + 1 == node.witness.size()) return succeeded(cur, out);
        if (succeeded(cur, out) || is_degenerate(out.matrix) || !out.matrix.all_finite()) return false;
        try {
            cur = normalize(out.matrix);
        } catch (const std::invalid_argument&) {
            return false;
        }
        if (defect(cur) != node.defect) return false;
    }
    return false;
}

// ---- reference table --------------------------------------------------------

std::optional<TableRow> reference_row(int n) {
    switch (n) {
        case 2: return TableRow{48, {32, 0, std::nullopt, std::nullopt}};
        case 3: return TableRow{669, {242, 38, 8, 0}};
        case 4: return TableRow{23431, {2747, 536, 65, 8}};
        default: return std::nullopt;
    }
}

TableCheck verify_table(int n, int max_scan_bound, std::optional<int> fallback_bound, unsigned threads) {
    auto ref = reference_row(n);
    if (!ref) throw std::invalid_argument("verify_table: reference counts exist for n = 2, 3, 4 only");
    TableCheck chk;
    chk.rank = n;
    chk.reference = *ref;
    for (int b = 1; b <= max_scan_bound; ++b) {
        BoundScan s{b, 0, 0};
        enumerate_normal(EnumerationOptions{n, b, false}, [&](const QuasiconeMatrix&) { ++s.canonical; return true; });
        enumerate_normal(EnumerationOptions{n, b, true}, [&](const QuasiconeMatrix&) { ++s.raw; return true; });
        chk.scan.push_back(s);
        if (!chk.calibrated_bound && (s.canonical == ref->total || s.raw == ref->total)) {
            chk.calibrated_bound = b;
            chk.calibrated_on_raw = s.canonical != ref->total;
        }
    }
    chk.bound_used = chk.calibrated_bound ? *chk.calibrated_bound : fallback_bound.value_or(n + 2);

    SearchConfig cfg;
    cfg.rank = n;
    cfg.bound = chk.bound_used;
    cfg.threads = threads;
    chk.report = concatenate_strategies(cfg);

    chk.totals_match = chk.report.total_considered == ref->total;
    chk.tiers_match = chk.totals_match;
    for (std::size_t i = 0; i < 4; ++i)
        if (ref->unsolved[i] && chk.report.tiers[i].unsolved_after != *ref->unsolved[i]) chk.tiers_match = false;
    chk.monotone = true;
    std::size_t prev = chk.report.total_considered;
    for (const auto& t : chk.report.tiers) {
        if (t.unsolved_after > prev) chk.monotone = false;
        prev = t.unsolved_after;
    }
    std::size_t expected = 0;
    for (const auto& u : ref->unsolved)
        if (u) expected = *u;
    chk.endpoint = chk.report.residual.size() == expected;
    return chk;
}

}  // namespace qcone
