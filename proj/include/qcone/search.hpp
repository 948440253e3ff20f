#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcone/quasicone.hpp"
#include "qcone/strategy.hpp"

namespace qcone {

enum class Tier { shortest, shortest_long, simple_basic, concat };

const char* to_string(Tier t);           // "shortest", "shortest-long", "simple-basic", "concat"
Tier tier_from_string(const std::string& s);
std::vector<Tier> parse_tiers(const std::string& comma_list);

struct SearchNode {
    QuasiconeMatrix canonical;
    std::int64_t defect = 0;
    bool seed = true;
    bool solved = false;
    std::optional<Tier> solved_by;
    // one strategy per link; link i runs from offset -delta on the normal
    // form of the previous link's output
    std::vector<Strategy> witness;
};

struct ForestEdge {
    std::size_t from = 0, to = 0;
    std::size_t strategy = 0;  // index into the tier's strategy list
    Strategy resolved;         // exponents as applied
};

struct TierResult {
    Tier tier;
    std::size_t unsolved_after = 0;
    std::size_t solved_here = 0;
    std::size_t rounds = 0;  // concat only
};

struct SearchConfig {
    int rank = 2;
    int bound = 4;
    std::vector<Tier> tiers{Tier::shortest, Tier::shortest_long, Tier::simple_basic, Tier::concat};
    std::size_t max_rounds = 32;
    std::int64_t start_delta = -1;
    EngineConfig engine{};
    unsigned threads = 0;  // 0 = hardware concurrency
    // optional: reorder the simple basic set (order-independence checks)
    std::vector<std::size_t> strategy_order;
};

struct SearchReport {
    int rank = 0;
    int bound = 0;
    std::size_t total_considered = 0;
    std::size_t raw_total = 0;
    std::vector<TierResult> tiers;
    std::vector<SearchNode> nodes;  // seeds first, then discovered nodes
    std::vector<ForestEdge> edges;
    std::vector<std::size_t> residual;  // unsolved seed indices

    std::vector<QuasiconeMatrix> residual_matrices() const;
};

SearchReport concatenate_strategies(const SearchConfig& cfg);

// Replays a witness chain from the node and checks that it really succeeds.
bool verify_witness(const SearchNode& node, const EngineConfig& engine = {}, std::int64_t start_delta = -1);

// ---- reference table --------------------------------------------------------

struct TableRow {
    std::size_t total = 0;
    std::array<std::optional<std::size_t>, 4> unsolved;  // shortest, shortest-long, simple-basic, concat
};

std::optional<TableRow> reference_row(int n);

struct BoundScan {
    int bound;
    std::size_t canonical;
    std::size_t raw;
};

struct TableCheck {
    int rank = 0;
    TableRow reference;
    std::vector<BoundScan> scan;          // enumeration sizes per bound
    std::optional<int> calibrated_bound;  // bound whose canonical or raw count hits the reference total
    bool calibrated_on_raw = false;
    int bound_used = 0;
    SearchReport report;
    bool totals_match = false;
    bool tiers_match = false;
    bool monotone = false;
    // residual size equals the last listed tier count (0, 0, 8 for n = 2, 3, 4)
    bool endpoint = false;

    // exact row, or the fallback endpoints when totals cannot be matched
    bool pass() const { return tiers_match || (!totals_match && monotone && endpoint); }
};

TableCheck verify_table(int n, int max_scan_bound, std::optional<int> fallback_bound = std::nullopt,
                        unsigned threads = 0);

// ---- manual cases -----------------------------------------------------------

struct ManualCase {
    int id = 0;
    std::string input;               // matrix text, '*' diagonal
    std::string listed_composition;  // rightmost factor first, as listed
    std::string corrected_composition;  // differs from the listed one only where it breaks the path rule
    std::string output;              // 'Z' marks a diagonal swallowed by the whole algebra
    std::int64_t start_delta = -1;   // start offset that reproduces the listed output
};

const std::vector<ManualCase>& manual_cases();

// "e3 o e-1" style composition (rightmost first) -> application order
Strategy composition_to_strategy(const std::string& composition);

struct ReplayRun {
    bool ran = false;
    std::string error;
    QuasiconeMatrix output;
    std::vector<ResolvedStep> trace;
    std::vector<std::array<std::int64_t, 2>> diff_positions;  // vs listed output
    bool exact = false;
    bool degenerate = false;
    std::int64_t defect = 0;
    bool success = false;
};

struct ReplayResult {
    int id = 0;
    std::int64_t input_defect = 0;
    bool listed_output_degenerate = false;
    std::int64_t listed_output_defect = 0;
    bool listed_success = false;
    bool listed_path_ok = true;        // listed strategy passes the path rule
    std::size_t listed_path_break = 0;
    ReplayRun raw;        // literal mode (no closure), per-case start offset
    ReplayRun fixpoint;   // full closure, same start
    bool fixpoint_matches_closed_listing = false;  // engine == closure of the listed output
    bool pass = false;
};

std::vector<ReplayResult> replay_manual_cases();

}  // namespace qcone
