#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcone/quasicone.hpp"
#include "qcone/root_system.hpp"

namespace qcone {

enum class StepErrorKind { step_annihilates, degenerate_state, invalid_path, auto_undefined };

const char* to_string(StepErrorKind kind);  // "StepAnnihilates", ...

class StepError : public std::runtime_error {
public:
    static constexpr std::size_t no_index = static_cast<std::size_t>(-1);

    StepError(StepErrorKind kind, const std::string& what, std::size_t step = no_index)
        : std::runtime_error(what), kind_(kind), step_(step) {}

    StepErrorKind kind() const { return kind_; }
    std::size_t step_index() const { return step_; }
    StepError at_step(std::size_t i) const { return StepError(kind_, what(), i); }

private:
    StepErrorKind kind_;
    std::size_t step_;
};

struct StrategyStep {
    SignedRoot root;
    std::optional<std::int64_t> exponent;  // empty = AUTO (entry - 1)

    friend bool operator==(const StrategyStep&, const StrategyStep&) = default;
};

// Steps in application order: "+1, -1" applies e_{alpha_1} first.
struct Strategy {
    std::vector<StrategyStep> steps;

    // "+1, +2, -3" or "+1, -1@0"; whitespace is ignored
    static Strategy parse(std::string_view text);
    std::string to_string() const;

    bool circular() const;  // classical parts sum to zero

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct ResolvedStep {
    SignedRoot root;
    std::int64_t exponent = 0;

    friend bool operator==(const ResolvedStep&, const ResolvedStep&) = default;
};

// fixpoint: full tropical closure; none: pair sums feed omega only;
// literal: preimage pass and hole only
enum class ClosureMode { fixpoint, none, literal };

struct EngineConfig {
    ClosureMode closure = ClosureMode::fixpoint;
    // keep going (and report) instead of throwing DegenerateState
    bool allow_degenerate = false;
};

// Current annihilator, the offset of the vector relative to the hole, and
// the steps applied so far.
struct StrategyState {
    QuasiconeMatrix matrix;
    AffineRoot offset;
    std::vector<ResolvedStep> trace;

    static StrategyState initial(const QuasiconeMatrix& c, std::int64_t start_delta = -1);

    friend bool operator==(const StrategyState&, const StrategyState&) = default;
};

// entry - 1 at the root's position
std::int64_t auto_exponent(const StrategyState& state, SignedRoot root);

StrategyState apply_step(const StrategyState& state, SignedRoot root, std::optional<std::int64_t> k,
                         const EngineConfig& cfg = {});
StrategyState apply_strategy(const StrategyState& state, const Strategy& s, const EngineConfig& cfg = {});

bool succeeded(const QuasiconeMatrix& input, const StrategyState& output);

// Strategy with every exponent spelled out, taken from a trace.
Strategy explicit_strategy(const std::vector<ResolvedStep>& trace);

// e_{alpha_1} at AUTO, then e_{-alpha_1} at min(eps, c_{1,0}) - 1
Strategy shortest(const QuasiconeMatrix& c, std::int64_t epsilon = 1);

enum class TailRule { auto_exponent, balance };

// Raise alpha_1..alpha_n with AUTO exponents, then lower -theta with either
// k = entry - 1 or the k that makes all exponents sum to zero. Resolved by
// simulating the raise from the start offset; throws StepError if the raise
// itself fails.
Strategy shortest_long(const QuasiconeMatrix& c, TailRule rule, std::int64_t start_delta = -1,
                       const EngineConfig& cfg = {});

// Raise 2^0..2^(m-1), lower through a monotone contiguous partition of theta_m,
// for m = 1..n. Size sum_m (2^m - 1).
std::vector<Strategy> simple_basic_set(int n);

struct StrategyCheck {
    enum class Violation { none, s1_annihilates, s2_degenerate, s3_path };
    Violation violation = Violation::none;
    std::size_t step = StepError::no_index;
    std::string message;
    bool ok() const { return violation == Violation::none; }
};

// S3 statically, S1/S2 by trial application from offset -delta.
StrategyCheck validate_strategy(const Strategy& s, const QuasiconeMatrix& c, std::int64_t start_delta = -1);

// S3 alone: every partial sum of classical parts is a root or zero
bool is_path(const Strategy& s, std::size_t* failing_step = nullptr);

}  // namespace qcone
