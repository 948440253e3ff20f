#include "qcone/strategy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace qcone {

const char* to_string(StepErrorKind kind) {
    switch (kind) {
        case StepErrorKind::step_annihilates: return "StepAnnihilates";
        case StepErrorKind::degenerate_state: return "DegenerateState";
        case StepErrorKind::invalid_path: return "InvalidPath";
        case StepErrorKind::auto_undefined: return "AutoUndefined";
    }
    return "Unknown";
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    std::string_view digits = s;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size())
        throw std::invalid_argument("strategy: bad number '" + std::string(s) + "' in '" + std::string(whole) + "'");
    return v;
}

}  // namespace

Strategy Strategy::parse(std::string_view text) {
    std::string compact;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
    if (compact.empty()) throw std::invalid_argument("strategy: empty");

    Strategy s;
    std::string_view rest = compact;
    while (true) {
        const auto comma = rest.find(',');
        std::string_view tok = rest.substr(0, comma);
        if (tok.empty()) throw std::invalid_argument("strategy: empty step in '" + std::string(text) + "'");
        const auto at = tok.find('@');
        const std::int64_t idx = parse_int(tok.substr(0, at), text);
        StrategyStep step{SignedRoot::from_signed(idx), std::nullopt};
        if (at != std::string_view::npos) step.exponent = parse_int(tok.substr(at + 1), text);
        s.steps.push_back(step);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return s;
}

std::string Strategy::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) os << ", ";
        const auto v = steps[i].root.signed_nu();
        os << (v > 0 ? "+" : "") << v;
        if (steps[i].exponent) os << '@' << *steps[i].exponent;
    }
    return os.str();
}

bool Strategy::circular() const {
    std::optional<AffineRoot> acc = AffineRoot{};
    for (const auto& st : steps) {
        acc = add_roots(*acc, AffineRoot{st.root, 0});
        if (!acc) return false;
    }
    return !acc->classical;
}

bool is_path(const Strategy& s, std::size_t* failing_step) {
    AffineRoot acc;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        auto next = add_roots(acc, AffineRoot{s.steps[i].root, 0});
        if (!next) {
            if (failing_step) *failing_step = i;
            return false;
        }
        acc = *next;
    }
    return true;
}

StrategyState StrategyState::initial(const QuasiconeMatrix& c, std::int64_t start_delta) {
    return StrategyState{c, AffineRoot{std::nullopt, start_delta}, {}};
}

std::int64_t auto_exponent(const StrategyState& state, SignedRoot root) {
    const ExtInt e = state.matrix.at(root);
    if (e.is_neg_inf())
        throw StepError(StepErrorKind::step_annihilates,
                        "root " + std::to_string(root.signed_nu()) + ": entry is -inf, every exponent annihilates");
    if (e.is_pos_inf())
        throw StepError(StepErrorKind::auto_undefined,
                        "root " + std::to_string(root.signed_nu()) + ": entry is +inf, give an explicit exponent");
    return e.value() - 1;
}

StrategyState apply_step(const StrategyState& state, SignedRoot root, std::optional<std::int64_t> k_opt,
                         const EngineConfig& cfg) {
    const QuasiconeMatrix& c = state.matrix;
    const int n = c.rank(), N = n + 1;
    if (root.index.b() > n) throw std::invalid_argument("apply_step: root index exceeds rank");
    const int a = root.row(), b = root.col();
    const std::int64_t k = k_opt ? *k_opt : auto_exponent(state, root);
    if (ExtInt(k) >= c.at(a, b))
        throw StepError(StepErrorKind::step_annihilates,
                        "root " + std::to_string(root.signed_nu()) + " at k=" + std::to_string(k) +
                            " is already in the annihilator (entry " + c.at(a, b).to_string() + ")");

    auto offset = add_roots(state.offset, AffineRoot{root, k});
    if (!offset)
        throw StepError(StepErrorKind::invalid_path,
                        "root " + std::to_string(root.signed_nu()) + ": offset leaves the root system");

    // (1) preimage pass: x stays in the annihilator when x and [e, x] are in it
    QuasiconeMatrix next = c;
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            if (p == q) continue;
            if (q == a && p != b) next.set(p, q, max(c.at(p, q), c.at(p, b) - k));
            else if (p == b && q != a) next.set(p, q, max(c.at(p, q), c.at(a, q) - k));
            else if (p == b && q == a) next.set(p, q, max(c.at(p, q), c.heisenberg() - k));
        }

    // (2) the hole: the vector cannot move onto the missing weight
    if (offset->classical) {
        const SignedRoot back = -*offset->classical;
        next.set(back.row(), back.col(), min(next.at(back), ExtInt(-offset->delta)));
    } else {
        next.set_heisenberg(min(next.heisenberg(), ExtInt(-offset->delta)));
    }

    // (3) closure
    if (cfg.closure == ClosureMode::fixpoint) {
        next = close(next);
    } else if (cfg.closure == ClosureMode::none) {
        ExtInt w = next.heisenberg();
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) w = min(w, next.at(p, q) + next.at(q, p));
        next.set_heisenberg(w);
    }

    // (4) still a quasicone?
    if (next.heisenberg() < ExtInt(1) && !cfg.allow_degenerate)
        throw StepError(StepErrorKind::degenerate_state,
                        "root " + std::to_string(root.signed_nu()) + " at k=" + std::to_string(k) +
                            ": result is not a quasicone (heisenberg exponent " +
                            next.heisenberg().to_string() + ")");

    StrategyState out{std::move(next), *offset, state.trace};
    out.trace.push_back({root, k});
    return out;
}

StrategyState apply_strategy(const StrategyState& state, const Strategy& s, const EngineConfig& cfg) {
    if (s.steps.empty()) throw std::invalid_argument("apply_strategy: empty strategy");
    StrategyState cur = state;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        try {
            cur = apply_step(cur, s.steps[i].root, s.steps[i].exponent, cfg);
        } catch (const StepError& e) {
            throw e.at_step(i);
        }
    }
    return cur;
}

bool succeeded(const QuasiconeMatrix& input, const StrategyState& output) {
    if (is_degenerate(output.matrix)) return false;
    return defect(output.matrix) < defect(input) || is_gvm_complete(output.matrix);
}

Strategy explicit_strategy(const std::vector<ResolvedStep>& trace) {
    Strategy s;
    for (const auto& r : trace) s.steps.push_back({r.root, r.exponent});
    return s;
}

Strategy shortest(const QuasiconeMatrix& c, std::int64_t epsilon) {
    if (epsilon < 1) throw std::invalid_argument("shortest: epsilon must be >= 1");
    const ExtInt c10 = c.at(1, 0);
    if (!c10.is_finite()) throw std::invalid_argument("shortest: c_{1,0} must be finite");
    const std::int64_t k = std::min(epsilon, c10.value()) - 1;
    Strategy s;
    s.steps.push_back({SignedRoot::from_signed(1), std::nullopt});
    s.steps.push_back({SignedRoot::from_signed(-1), k});
    return s;
}

Strategy shortest_long(const QuasiconeMatrix& c, TailRule rule, std::int64_t start_delta,
                       const EngineConfig& cfg) {
    const int n = c.rank();
    StrategyState st = StrategyState::initial(c, start_delta);
    Strategy s;
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i) {
        const SignedRoot r = SignedRoot::from_signed(std::int64_t(1) << i);
        try {
            st = apply_step(st, r, std::nullopt, cfg);
        } catch (const StepError& e) {
            throw e.at_step(static_cast<std::size_t>(i));
        }
        s.steps.push_back({r, st.trace.back().exponent});
        sum += st.trace.back().exponent;
    }
    const SignedRoot theta = SignedRoot::from_signed(-((std::int64_t(1) << n) - 1));
    const std::int64_t k = rule == TailRule::balance ? -sum : auto_exponent(st, theta);
    s.steps.push_back({theta, k});
    return s;
}

std::vector<Strategy> simple_basic_set(int n) {
    if (n < 1) throw std::invalid_argument("simple_basic_set: rank must be >= 1");
    std::vector<Strategy> out;
    for (int m = 1; m <= n; ++m) {
        Strategy raise;
        for (int i = 0; i < m; ++i) raise.steps.push_back({SignedRoot::from_signed(std::int64_t(1) << i), std::nullopt});
        // compositions of alpha_1+...+alpha_m into contiguous blocks, one bit
        // per possible cut; cuts = 0 is the single block -theta_m
        for (unsigned cuts = 0; cuts < (1u << (m - 1)); ++cuts) {
            std::vector<SignedRoot> blocks;  // increasing nu
            int start = 0;
            for (int pos = 1; pos <= m; ++pos)
                if (pos == m || (cuts >> (pos - 1) & 1u)) {
                    blocks.push_back(-SignedRoot{RootIndex::from_positions(start, pos), false});
                    start = pos;
                }
            for (int dir = 0; dir < (blocks.size() > 1 ? 2 : 1); ++dir) {
                Strategy s = raise;
                if (dir == 0)
                    for (const auto& r : blocks) s.steps.push_back({r, std::nullopt});
                else
                    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) s.steps.push_back({*it, std::nullopt});
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

StrategyCheck validate_strategy(const Strategy& s, const QuasiconeMatrix& c, std::int64_t start_delta) {
    StrategyCheck chk;
    std::size_t bad = 0;
    if (!is_path(s, &bad)) {
        chk.violation = StrategyCheck::Violation::s3_path;
        chk.step = bad;
        chk.message = "partial sum after step " + std::to_string(bad) + " is not a root";
        return chk;
    }
    try {
        apply_strategy(StrategyState::initial(c, start_delta), s);
    } catch (const StepError& e) {
        chk.step = e.step_index();
        chk.message = e.what();
        switch (e.kind()) {
            case StepErrorKind::degenerate_state: chk.violation = StrategyCheck::Violation::s2_degenerate; break;
            case StepErrorKind::invalid_path: chk.violation = StrategyCheck::Violation::s3_path; break;
            default: chk.violation = StrategyCheck::Violation::s1_annihilates; break;
        }
    }
    return chk;
}

}  // namespace qcone
