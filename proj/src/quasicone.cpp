#include "qcone/quasicone.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qcone {

QuasiconeMatrix::QuasiconeMatrix(int n, ExtInt fill, ExtInt heisenberg)
    : n_(n), m_(static_cast<std::size_t>(n + 1), fill), omega_(heisenberg) {
    if (n < 1) throw std::invalid_argument("QuasiconeMatrix: rank must be >= 1");
    for (std::size_t i = 0; i < dim(); ++i) m_.at(i, i) = ExtInt::pos_inf();
}

void QuasiconeMatrix::set(int p, int q, ExtInt v) {
    if (p == q) throw std::invalid_argument("QuasiconeMatrix: diagonal entries are not stored");
    if (p < 0 || q < 0 || p > n_ || q > n_) throw std::out_of_range("QuasiconeMatrix: index out of range");
    m_.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) = v;
}

bool QuasiconeMatrix::all_finite() const {
    for (int p = 0; p <= n_; ++p)
        for (int q = 0; q <= n_; ++q)
            if (p != q && !at(p, q).is_finite()) return false;
    return omega_.is_finite();
}

std::vector<ExtInt> QuasiconeMatrix::off_diagonal() const {
    std::vector<ExtInt> out;
    out.reserve(dim() * dim() - dim());
    for (int p = 0; p <= n_; ++p)
        for (int q = 0; q <= n_; ++q)
            if (p != q) out.push_back(at(p, q));
    return out;
}

std::string QuasiconeMatrix::to_text() const {
    std::ostringstream os;
    for (int p = 0; p <= n_; ++p) {
        for (int q = 0; q <= n_; ++q) {
            if (q) os << ' ';
            if (p == q) os << '*';
            else os << at(p, q);
        }
        os << '\n';
    }
    return os.str();
}

QuasiconeMatrix QuasiconeMatrix::from_text(const std::string& text, ExtInt heisenberg) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<std::string> row;
        std::string tok;
        while (ls >> tok) row.push_back(tok);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const int dim = static_cast<int>(rows.size());
    if (dim < 2) throw std::invalid_argument("matrix text: need at least two rows");
    QuasiconeMatrix c(dim - 1, ExtInt::pos_inf(), heisenberg);
    for (int p = 0; p < dim; ++p) {
        if (static_cast<int>(rows[p].size()) != dim)
            throw std::invalid_argument("matrix text: row " + std::to_string(p) + " has wrong length");
        for (int q = 0; q < dim; ++q)
            if (p != q) c.set(p, q, ExtInt::parse(rows[p][q]));
    }
    return c;
}

std::vector<Violation> validate(const QuasiconeMatrix& c) {
    std::vector<Violation> out;
    const int N = static_cast<int>(c.dim());
    auto describe = [](auto... parts) {
        std::ostringstream os;
        (os << ... << parts);
        return os.str();
    };
    if (c.heisenberg() != ExtInt(1))
        out.push_back({Violation::Kind::heisenberg, -1, -1, -1,
                       describe("heisenberg exponent is ", c.heisenberg(), ", expected 1")});
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q)
            if (p != q && !c.at(p, q).is_finite())
                out.push_back({Violation::Kind::infinite, p, q, -1,
                               describe("entry (", p, ",", q, ") is ", c.at(p, q))});
    for (int p = 0; p < N; ++p)
        for (int q = p + 1; q < N; ++q) {
            const ExtInt s = c.at(p, q) + c.at(q, p);
            if (s < ExtInt(1))
                out.push_back({Violation::Kind::pair, p, q, -1,
                               describe("pair (", p, ",", q, ") sums to ", s, " < 1")});
        }
    for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
            if (p == q) continue;
            for (int r = 0; r < N; ++r) {
                if (r == p || r == q) continue;
                const ExtInt via = c.at(p, r) + c.at(r, q);
                if (c.at(p, q) > via)
                    out.push_back({Violation::Kind::triangle, p, q, r,
                                   describe("c(", p, ",", q, ") = ", c.at(p, q), " > c(", p, ",", r,
                                            ") + c(", r, ",", q, ") = ", via)});
            }
        }
    return out;
}

GapVector gap(const QuasiconeMatrix& c) {
    GapVector g;
    for (const auto& idx : admissible_indices(c.rank()))
        g.push_back(c.at(idx.a(), idx.b()) + c.at(idx.b(), idx.a()));
    return g;
}

std::int64_t defect(const QuasiconeMatrix& c) {
    std::int64_t d = 0;
    for (const ExtInt& g : gap(c)) {
        if (g.is_pos_inf()) throw std::domain_error("defect: infinite gap component");
        if (g.is_finite() && g.value() > 2) d += g.value() - 2;
    }
    return d;
}

bool is_gvm_complete(const QuasiconeMatrix& c) {
    for (const ExtInt& g : gap(c))
        if (g != ExtInt(1) && g != ExtInt(2)) return false;
    return true;
}

bool is_monotone(const GapVector& g) {
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i - 1] < g[i]) return false;
    return true;
}

bool is_normal(const QuasiconeMatrix& c) {
    for (int p = 0; p < c.rank(); ++p)
        if (c.at(p, p + 1) != ExtInt(1)) return false;
    return is_monotone(gap(c));
}

bool is_degenerate(const QuasiconeMatrix& c) {
    if (c.heisenberg() < ExtInt(1)) return true;
    const int N = static_cast<int>(c.dim());
    for (int p = 0; p < N; ++p)
        for (int q = p + 1; q < N; ++q)
            if (c.at(p, q) + c.at(q, p) < ExtInt(1)) return true;
    return false;
}

QuasiconeMatrix gamma(int n, const std::vector<std::int64_t>& a) {
    const auto idx = admissible_indices(n);
    if (a.size() != idx.size()) throw std::invalid_argument("gamma: gap vector has wrong length");
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i - 1] < a[i]) throw std::invalid_argument("gamma: gap vector must be non-increasing");
    QuasiconeMatrix c(n);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const int l = idx[i].length();
        c.set(idx[i].a(), idx[i].b(), l);
        c.set(idx[i].b(), idx[i].a(), a[i] - l);
    }
    return c;
}

OrderRelation compare(const QuasiconeMatrix& c, const QuasiconeMatrix& d) {
    if (c.rank() != d.rank()) throw std::invalid_argument("compare: rank mismatch");
    OrderRelation rel;
    bool same_pos = true, neg_le = true, neg_lt = false;
    for (const auto& idx : admissible_indices(c.rank())) {
        const int a = idx.a(), b = idx.b();
        if (c.at(a, b) != d.at(a, b)) same_pos = false;
        if (c.at(b, a) > d.at(b, a)) neg_le = false;
        if (c.at(b, a) < d.at(b, a)) neg_lt = true;
    }
    rel.equal = c == d;
    rel.le_i = same_pos && neg_le && neg_lt;
    rel.le_ii = !same_pos && gap(c) == gap(d) && neg_le && neg_lt;
    return rel;
}

QuasiconeMatrix close(const QuasiconeMatrix& c) {
    ExtMatrix m = c.matrix();
    for (std::size_t i = 0; i < c.dim(); ++i) m.at(i, i) = c.heisenberg();
    const ExtMatrix cl = closure(m);
    QuasiconeMatrix out(c.rank(), ExtInt::pos_inf(), c.heisenberg());
    ExtInt omega = c.heisenberg();
    for (std::size_t p = 0; p < c.dim(); ++p)
        for (std::size_t q = 0; q < c.dim(); ++q) {
            if (p == q) omega = min(omega, cl.at(p, p));
            else out.set(static_cast<int>(p), static_cast<int>(q), cl.at(p, q));
        }
    out.set_heisenberg(omega);
    return out;
}

QuasiconeMatrix lattice_join(const QuasiconeMatrix& c, const QuasiconeMatrix& d) {
    if (c.rank() != d.rank()) throw std::invalid_argument("lattice_join: rank mismatch");
    QuasiconeMatrix u(c.rank(), ExtInt::pos_inf(), min(c.heisenberg(), d.heisenberg()));
    for (int p = 0; p <= c.rank(); ++p)
        for (int q = 0; q <= c.rank(); ++q)
            if (p != q) u.set(p, q, min(c.at(p, q), d.at(p, q)));
    return close(u);
}

QuasiconeMatrix lattice_meet(const QuasiconeMatrix& c, const QuasiconeMatrix& d) {
    if (c.rank() != d.rank()) throw std::invalid_argument("lattice_meet: rank mismatch");
    QuasiconeMatrix u(c.rank(), ExtInt::pos_inf(), max(c.heisenberg(), d.heisenberg()));
    for (int p = 0; p <= c.rank(); ++p)
        for (int q = 0; q <= c.rank(); ++q)
            if (p != q) u.set(p, q, max(c.at(p, q), d.at(p, q)));
    return u;
}

QuasiconeMatrix translate_action(const QuasiconeMatrix& c, const std::vector<std::int64_t>& u) {
    if (u.size() != c.dim()) throw std::invalid_argument("translate_action: vector length must be n+1");
    QuasiconeMatrix out(c.rank(), ExtInt::pos_inf(), c.heisenberg());
    for (int p = 0; p <= c.rank(); ++p)
        for (int q = 0; q <= c.rank(); ++q)
            if (p != q) out.set(p, q, c.at(p, q) + ExtInt(u[p] - u[q]));
    return out;
}

QuasiconeMatrix permute_action(const QuasiconeMatrix& c, const std::vector<int>& sigma) {
    if (sigma.size() != c.dim()) throw std::invalid_argument("permute_action: permutation length must be n+1");
    std::vector<int> inv(sigma.size(), -1);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const int s = sigma[i];
        if (s < 0 || s >= static_cast<int>(sigma.size()) || inv[s] != -1)
            throw std::invalid_argument("permute_action: not a permutation");
        inv[s] = static_cast<int>(i);
    }
    QuasiconeMatrix out(c.rank(), ExtInt::pos_inf(), c.heisenberg());
    for (int p = 0; p <= c.rank(); ++p)
        for (int q = 0; q <= c.rank(); ++q)
            if (p != q) out.set(p, q, c.at(inv[p], inv[q]));
    return out;
}

namespace {

// Plain integer copy used in the hot loops of normalize and enumerate.
struct Dense {
    int N;
    std::vector<std::int64_t> v;
    std::int64_t operator()(int p, int q) const { return v[p * N + q]; }
    std::int64_t& operator()(int p, int q) { return v[p * N + q]; }
};

struct GapPlan {
    std::vector<int> a, b;  // per nu in increasing order
};

const GapPlan& gap_plan(int n) {
    static thread_local std::vector<GapPlan> cache;
    if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
    GapPlan& plan = cache[n];
    if (plan.a.empty())
        for (const auto& idx : admissible_indices(n)) {
            plan.a.push_back(idx.a());
            plan.b.push_back(idx.b());
        }
    return plan;
}

}  // namespace

QuasiconeMatrix normalize(const QuasiconeMatrix& c) {
    if (!c.all_finite()) throw std::invalid_argument("normalize: matrix has infinite entries");
    const int n = c.rank(), N = n + 1;
    const GapPlan& plan = gap_plan(n);
    const std::size_t q = plan.a.size();

    Dense src{N, std::vector<std::int64_t>(N * N, 0)};
    for (int p = 0; p < N; ++p)
        for (int r = 0; r < N; ++r)
            if (p != r) src(p, r) = c.at(p, r).value();

    std::vector<int> perm(N);  // perm[p] = sigma^-1(p)
    std::iota(perm.begin(), perm.end(), 0);

    bool have = false;
    std::vector<std::int64_t> best_gap(q), best_entries(N * N);
    std::vector<std::int64_t> g(q), u(N);
    Dense cand{N, std::vector<std::int64_t>(N * N, 0)};
    do {
        u[0] = 0;
        for (int p = 0; p < n; ++p) u[p + 1] = u[p] + src(perm[p], perm[p + 1]) - 1;
        bool monotone = true;
        for (std::size_t i = 0; i < q; ++i) {
            const int a = perm[plan.a[i]], b = perm[plan.b[i]];
            g[i] = src(a, b) + src(b, a);
            if (i && g[i] > g[i - 1]) {
                monotone = false;
                break;
            }
        }
        if (!monotone) continue;
        for (int p = 0; p < N; ++p)
            for (int r = 0; r < N; ++r)
                cand(p, r) = p == r ? 0 : src(perm[p], perm[r]) + u[p] - u[r];
        const bool better =
            !have || std::tie(g, cand.v) < std::tie(best_gap, best_entries);
        if (better) {
            have = true;
            best_gap = g;
            best_entries = cand.v;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (!have) throw std::invalid_argument("normalize: no permutation yields a monotone gap vector");
    QuasiconeMatrix out(n, ExtInt::pos_inf(), c.heisenberg());
    for (int p = 0; p < N; ++p)
        for (int r = 0; r < N; ++r)
            if (p != r) out.set(p, r, best_entries[p * N + r]);
    return out;
}

namespace {

class Enumerator {
public:
    Enumerator(const EnumerationOptions& opt, const std::function<bool(const QuasiconeMatrix&)>& sink)
        : opt_(opt), sink_(sink), n_(opt.rank), N_(opt.rank + 1), plan_(gap_plan(opt.rank)),
          m_{N_, std::vector<std::int64_t>(N_ * N_, 0)}, assigned_(N_ * N_, false) {}

    void run() { step(0, opt_.bound); }

private:
    bool triangles_ok(int a, int b) const {
        // every triple {a,b,r} whose three pairs are assigned
        for (int r = 0; r < N_; ++r) {
            if (r == a || r == b) continue;
            if (!assigned_[a * N_ + r] || !assigned_[r * N_ + b]) continue;
            const int t[3] = {a, b, r};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    const int k = 3 - i - j;
                    if (m_(t[i], t[j]) > m_(t[i], t[k]) + m_(t[k], t[j])) return false;
                }
        }
        return true;
    }

    void emit() {
        QuasiconeMatrix c(n_);
        for (int p = 0; p < N_; ++p)
            for (int q = 0; q < N_; ++q)
                if (p != q) c.set(p, q, m_(p, q));
        if (!opt_.raw && !(normalize(c) == c)) return;
        if (!sink_(c)) stopped_ = true;
    }

    void step(std::size_t i, std::int64_t gmax) {
        if (stopped_) return;
        if (i == plan_.a.size()) {
            emit();
            return;
        }
        const int a = plan_.a[i], b = plan_.b[i], l = b - a;
        const std::int64_t B = opt_.bound;
        const std::int64_t lo = l == 1 ? 1 : 1 - l * (B - 1);
        const std::int64_t hi = l == 1 ? 1 : l;
        assigned_[a * N_ + b] = assigned_[b * N_ + a] = true;
        for (std::int64_t g = gmax; g >= 1 && !stopped_; --g)
            for (std::int64_t c = hi; c >= lo && !stopped_; --c) {
                m_(a, b) = c;
                m_(b, a) = g - c;
                if (triangles_ok(a, b)) step(i + 1, g);
            }
        assigned_[a * N_ + b] = assigned_[b * N_ + a] = false;
    }

    EnumerationOptions opt_;
    const std::function<bool(const QuasiconeMatrix&)>& sink_;
    int n_, N_;
    const GapPlan& plan_;
    Dense m_;
    std::vector<bool> assigned_;
    bool stopped_ = false;
};

}  // namespace

void enumerate_normal(const EnumerationOptions& opt,
                      const std::function<bool(const QuasiconeMatrix&)>& sink) {
    if (opt.rank < 1) throw std::invalid_argument("enumerate_normal: rank must be >= 1");
    if (opt.bound < 1) throw std::invalid_argument("enumerate_normal: bound must be >= 1");
    Enumerator(opt, sink).run();
}

std::vector<QuasiconeMatrix> enumerate_normal(int n, int bound, bool raw) {
    std::vector<QuasiconeMatrix> out;
    enumerate_normal(EnumerationOptions{n, bound, raw}, [&](const QuasiconeMatrix& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

}  // namespace qcone
