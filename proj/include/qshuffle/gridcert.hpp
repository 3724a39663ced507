#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "qshuffle/laurent.hpp"
#include "qshuffle/modp.hpp"

namespace qshuffle {

// Certified factored determinants of matrices whose entries are single
// Laurent monomials (every S-form and Varchenko form here is of that shape,
// directly or after the sigma reduction).
//
// The determinant is never expanded. Instead the engine
//   1. bounds deg_v(det) for every variable v by an exact maximum-assignment
//      over entry exponents (each determinant term picks one entry per
//      column, so the assignment optimum is a true bound),
//   2. guesses the candidate-factor exponents and the monomial unit from
//      cheap univariate slices modulo a prime,
//   3. proves det == unit * prod (1 - m_S)^e_S by evaluating both sides on a
//      full degree-bound grid modulo two 61-bit primes. Vanishing of the
//      difference on the grid plus the degree bounds gives identity mod
//      p1*p2; a coefficient bound (dim! for the determinant side) lifts that
//      to an identity over the integers.
//
// Wrong guesses cannot produce a wrong result: they fail step 3 and the
// engine retries with a fresh probe seed before giving up loudly.

struct MonoEntry {
    long coeff = 0;
    Monomial mono;
};

using MonoMatrix = std::vector<std::vector<MonoEntry>>;

struct GridCertOptions {
    std::uint64_t seed = 0x9d2c5680u;
    int max_attempts = 5;
    int threads = 0; // 0 = hardware concurrency
    // Permutations of the variable list (as index maps) under which the
    // caller has certified det to be invariant; used only to shrink the grid.
    std::vector<std::vector<int>> var_perms;
};

struct GridCertificate {
    std::vector<int> exponents; // per candidate, in input order
    Integer unit_coeff = 1;
    Monomial unit_mono;
    std::uint64_t points_checked = 0;
    std::vector<VarId> vars;
    std::vector<int> degree_bounds;
};

namespace detail {

// Exact maximum-weight perfect assignment (Hungarian, O(n^3)), used for the
// per-variable degree bound of the determinant.
inline long max_assignment(const std::vector<std::vector<long>>& w) {
    const int n = static_cast<int>(w.size());
    if (n == 0) return 0;
    const long INF = (1L << 60);
    // Minimize the negated weights.
    std::vector<long> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<long> minv(n + 1, INF);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            long delta = INF;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                long cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    long total = 0;
    for (int j = 1; j <= n; ++j) total += w[p[j] - 1][j - 1];
    return total;
}

struct PackedEntry {
    long coeff;
    std::vector<std::pair<int, int>> exps; // (var index, exponent)
};

struct PackedMatrix {
    int dim = 0;
    std::vector<VarId> vars;
    std::vector<std::vector<PackedEntry>> e;
    bool has_negative = false;
};

inline PackedMatrix pack_matrix(const MonoMatrix& m, const std::vector<Monomial>& cands) {
    PackedMatrix pm;
    pm.dim = static_cast<int>(m.size());
    std::set<VarId> vs;
    for (const auto& row : m) {
        if (static_cast<int>(row.size()) != pm.dim)
            throw DimensionMismatch("gridcert: matrix not square");
        for (const auto& en : row) {
            if (en.coeff == 0) throw MathError("gridcert: zero entry coefficient");
            for (const auto& [v, ex] : en.mono.factors()) vs.insert(v);
        }
    }
    for (const auto& c : cands)
        for (const auto& [v, ex] : c.factors()) vs.insert(v);
    pm.vars.assign(vs.begin(), vs.end());
    std::map<VarId, int> idx;
    for (std::size_t k = 0; k < pm.vars.size(); ++k) idx[pm.vars[k]] = static_cast<int>(k);
    pm.e.resize(pm.dim);
    for (int a = 0; a < pm.dim; ++a) {
        pm.e[a].resize(pm.dim);
        for (int b = 0; b < pm.dim; ++b) {
            pm.e[a][b].coeff = m[a][b].coeff;
            for (const auto& [v, ex] : m[a][b].mono.factors()) {
                pm.e[a][b].exps.emplace_back(idx.at(v), ex);
                if (ex < 0) pm.has_negative = true;
            }
        }
    }
    return pm;
}

// Evaluate all entries at a point (values per var index) and take det mod p.
inline modp::u64 det_at(const PackedMatrix& pm, const std::vector<modp::u64>& vals,
                        modp::u64 p) {
    const int n = pm.dim;
    std::vector<modp::u64> inv_vals(vals.size());
    if (pm.has_negative)
        for (std::size_t k = 0; k < vals.size(); ++k) inv_vals[k] = modp::invmod(vals[k], p);
    std::vector<std::vector<modp::u64>> m(n, std::vector<modp::u64>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const auto& en = pm.e[a][b];
            long c = en.coeff;
            modp::u64 acc = c >= 0 ? modp::u64(c) % p : p - (modp::u64(-c) % p);
            for (const auto& [v, ex] : en.exps) {
                modp::u64 base = ex >= 0 ? vals[v] : inv_vals[v];
                acc = modp::mulmod(acc, modp::powmod(base, std::abs(ex), p), p);
            }
            m[a][b] = acc;
        }
    return modp::det(std::move(m), p);
}

} // namespace qshuffle::detail

class GridCertifier {
public:
    GridCertifier(MonoMatrix matrix, std::vector<Monomial> candidates,
                  GridCertOptions opt = {})
        : opt_(opt), orig_candidates_(candidates) {
        if (matrix.size() > 30)
            throw SizeTooLarge("gridcert: dimension too large for the dim! bound");
        normalize(matrix);
        canonicalize_candidates();
        pm_ = detail::pack_matrix(matrix_, canon_candidates_);
        compute_degree_bounds();
        p1_ = modp::next_prime((1ULL << 61) - 1);     // 2^61 - 1, Mersenne
        p2_ = modp::next_prime((1ULL << 61) + 20000); // next prime above
    }

    GridCertificate run() {
        std::string last_error;
        for (int attempt = 0; attempt < opt_.max_attempts; ++attempt) {
            try {
                probe(opt_.seed + 0x9e3779b9ULL * attempt);
                verify_grid();
                return finish();
            } catch (const NonMonomialResidual&) {
                throw; // persistent structure problem is rethrown by probe()
            } catch (const MathError& e) {
                last_error = e.what();
            }
        }
        throw CertificationFailure("gridcert: exhausted attempts: " + last_error);
    }

private:
    void normalize(MonoMatrix& m) {
        dim_ = static_cast<int>(m.size());
        if (dim_ == 0) throw DimensionMismatch("gridcert: empty matrix");
        // Pull monomial content out of every column, then every row, so all
        // exponents are non-negative; det picks up the extracted content.
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < dim_; ++k) {
                Monomial content;
                bool first = true;
                for (int r = 0; r < dim_; ++r) {
                    const Monomial& mono = pass == 0 ? m[r][k].mono : m[k][r].mono;
                    if (first) {
                        content = mono;
                        first = false;
                        continue;
                    }
                    // componentwise min
                    std::vector<Monomial::Term> t;
                    for (const auto& [v, e] : content.factors()) {
                        int e2 = mono.exponent_of(v);
                        int lo = std::min(e, e2);
                        if (lo != 0) t.emplace_back(v, lo);
                    }
                    // vars present only in mono with negative exponent
                    for (const auto& [v, e] : mono.factors())
                        if (e < 0 && content.exponent_of(v) == 0) t.emplace_back(v, e);
                    std::sort(t.begin(), t.end());
                    content = Monomial::from_sorted(std::move(t));
                }
                if (content.trivial()) continue;
                Monomial inv = content.inverse();
                for (int r = 0; r < dim_; ++r) {
                    Monomial& mono = pass == 0 ? m[r][k].mono : m[k][r].mono;
                    mono = mono * inv;
                }
                norm_unit_ = norm_unit_ * content;
            }
        }
        for (const auto& row : m)
            for (const auto& en : row)
                for (const auto& [v, e] : en.mono.factors())
                    if (e < 0)
                        throw MathError("gridcert: negative exponent after normalization");
        matrix_ = std::move(m);
    }

    void canonicalize_candidates() {
        for (const auto& c : orig_candidates_) {
            if (c.trivial()) throw MathError("gridcert: trivial candidate factor");
            bool invert = c.factors().front().second < 0;
            canon_candidates_.push_back(invert ? c.inverse() : c);
            inverted_.push_back(invert);
        }
    }

    void compute_degree_bounds() {
        const int V = static_cast<int>(pm_.vars.size());
        degree_bound_.assign(V, 0);
        for (int v = 0; v < V; ++v) {
            std::vector<std::vector<long>> w(dim_, std::vector<long>(dim_, 0));
            for (int a = 0; a < dim_; ++a)
                for (int b = 0; b < dim_; ++b)
                    for (const auto& [vi, ex] : pm_.e[a][b].exps)
                        if (vi == v) w[a][b] = ex;
            degree_bound_[v] = detail::max_assignment(w);
        }
    }

    std::vector<int> candidate_exps(const Monomial& c) const {
        std::vector<int> out(pm_.vars.size(), 0);
        for (const auto& [v, e] : c.factors()) {
            auto it = std::lower_bound(pm_.vars.begin(), pm_.vars.end(), v);
            out[it - pm_.vars.begin()] = e;
        }
        return out;
    }

    modp::u64 eval_candidate(const std::vector<int>& exps,
                             const std::vector<modp::u64>& vals, modp::u64 p,
                             int skip_var = -1) const {
        modp::u64 acc = 1;
        for (std::size_t v = 0; v < exps.size(); ++v) {
            if (static_cast<int>(v) == skip_var || exps[v] == 0) continue;
            modp::u64 base = exps[v] > 0 ? vals[v] : modp::invmod(vals[v], p);
            acc = modp::mulmod(acc, modp::powmod(base, std::abs(exps[v]), p), p);
        }
        return acc;
    }

    // Guess exponents, the unit monomial and its coefficient from univariate
    // slices mod p1 at a seeded random base point.
    void probe(std::uint64_t seed) {
        const int V = static_cast<int>(pm_.vars.size());
        const int C = static_cast<int>(canon_candidates_.size());
        std::uint64_t state = seed;
        auto rnd = [&state]() {
            std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        std::vector<modp::u64> base(V);
        for (int v = 0; v < V; ++v) base[v] = 2 + rnd() % (p1_ - 4);

        std::vector<std::vector<int>> cexps;
        for (const auto& c : canon_candidates_) cexps.push_back(candidate_exps(c));

        exponents_.assign(C, -1);
        unit_exp_.assign(V, 0);

        for (int v = 0; v < V; ++v) {
            int D = degree_bound_[v];
            std::vector<modp::u64> xs(D + 1), ys(D + 1);
            std::vector<modp::u64> vals = base;
            for (int k = 0; k <= D; ++k) {
                xs[k] = k + 1;
                vals[v] = xs[k];
                ys[k] = detail::det_at(pm_, vals, p1_);
            }
            std::vector<modp::u64> poly = modp::interpolate(xs, ys, p1_);
            bool all_zero = true;
            for (auto c : poly) all_zero = all_zero && c == 0;
            if (all_zero) throw SingularMatrix("gridcert: determinant vanishes on a slice");

            long shift = 0; // t-exponent absorbed by negative-k factors
            for (int i = 0; i < C; ++i) {
                int k = cexps[i][v];
                if (k == 0) continue;
                modp::u64 Cval = eval_candidate(cexps[i], base, p1_, v);
                // factor slice: 1 - Cval * t^k; for k < 0 the polynomial
                // part is (1 - Cval^{-1} t^{|k|}) with a t^k unit.
                int deg = std::abs(k);
                modp::u64 coef = k > 0 ? Cval : modp::invmod(Cval, p1_);
                std::vector<modp::u64> f(deg + 1, 0);
                f[0] = 1;
                f[deg] = p1_ - coef;
                int e = 0;
                while (true) {
                    auto q = modp::divide_exact(poly, f, p1_);
                    if (!q) break;
                    poly = *q;
                    ++e;
                }
                if (exponents_[i] == -1) {
                    exponents_[i] = e;
                } else if (exponents_[i] != e) {
                    throw MathError("gridcert: inconsistent exponent probes");
                }
                if (k < 0) shift += static_cast<long>(e) * k;
            }
            // Residual must be a single monomial c * t^h.
            int nonzero = -1;
            for (std::size_t d = 0; d < poly.size(); ++d)
                if (poly[d] != 0) {
                    if (nonzero != -1)
                        throw NonMonomialResidual(
                            "gridcert: residual along a slice is not a monomial");
                    nonzero = static_cast<int>(d);
                }
            if (nonzero == -1) throw MathError("gridcert: zero residual");
            unit_exp_[v] = nonzero + shift;
        }
        for (int i = 0; i < C; ++i)
            if (exponents_[i] == -1) exponents_[i] = 0; // candidate in no variable slice

        // Unit coefficient via CRT at a fresh point.
        std::vector<modp::u64> y(V);
        for (int v = 0; v < V; ++v) y[v] = 2 + rnd() % (p1_ - 4);
        modp::u64 c1 = unit_coeff_at(y, p1_);
        modp::u64 c2 = unit_coeff_at(y, p2_);
        unit_coeff_ = crt_balanced(c1, p1_, c2, p2_);
        Integer bound = Integer(1) << 62;
        if (unit_coeff_ > bound || unit_coeff_ < -bound)
            throw MathError("gridcert: implausible unit coefficient");
        if (unit_coeff_ == 0) throw MathError("gridcert: zero unit coefficient");
    }

    modp::u64 unit_coeff_at(const std::vector<modp::u64>& y, modp::u64 p) const {
        const int V = static_cast<int>(pm_.vars.size());
        modp::u64 lhs = detail::det_at(pm_, y, p);
        modp::u64 rhs = 1;
        for (int v = 0; v < V; ++v) {
            int g = unit_exp_[v];
            modp::u64 base = g >= 0 ? y[v] : modp::invmod(y[v], p);
            rhs = modp::mulmod(rhs, modp::powmod(base, std::abs(g), p), p);
        }
        for (std::size_t i = 0; i < canon_candidates_.size(); ++i) {
            modp::u64 m =
                eval_candidate(candidate_exps(canon_candidates_[i]), y, p, -1);
            modp::u64 f = modp::submod(1 % p, m, p);
            if (f == 0) throw MathError("gridcert: unlucky unit point");
            rhs = modp::mulmod(rhs, modp::powmod(f, exponents_[i], p), p);
        }
        return modp::mulmod(lhs, modp::invmod(rhs, p), p);
    }

    void verify_grid() {
        const int V = static_cast<int>(pm_.vars.size());
        const int C = static_cast<int>(canon_candidates_.size());
        std::vector<std::vector<int>> cexps;
        for (const auto& c : canon_candidates_) cexps.push_back(candidate_exps(c));

        // Claim degree ranges and the grid shape.
        std::vector<long> maxd(V), mind(V);
        for (int v = 0; v < V; ++v) {
            long hi = unit_exp_[v], lo = unit_exp_[v];
            for (int i = 0; i < C; ++i) {
                int k = cexps[i][v];
                hi += static_cast<long>(exponents_[i]) * std::max(0, k);
                lo += static_cast<long>(exponents_[i]) * std::min(0, k);
            }
            maxd[v] = hi;
            mind[v] = lo;
        }
        grid_size_.assign(V, 0);
        std::vector<long> shift(V);
        for (int v = 0; v < V; ++v) {
            shift[v] = std::max(0L, -mind[v]);
            long L = std::max<long>(degree_bound_[v] + shift[v], maxd[v] + shift[v]) + 1;
            if (L > 4096) throw SizeTooLarge("gridcert: grid dimension too large");
            grid_size_[v] = static_cast<int>(L);
        }

        check_coefficient_bound();
        check_symmetry_of_claim(cexps);

        // Enumerate grid points (canonical representatives only, when a
        // symmetry group is available) and compare det against the claim mod
        // both primes. Points are generated on the fly from a mixed-radix
        // index so nothing is materialized.
        const std::uint64_t total = [&] {
            std::uint64_t t = 1;
            for (int v = 0; v < V; ++v) t *= grid_size_[v];
            return t;
        }();

        std::atomic<bool> ok{true};
        std::atomic<std::uint64_t> checked{0};
        int nthreads = opt_.threads > 0
                           ? opt_.threads
                           : std::max(1u, std::thread::hardware_concurrency());
        nthreads = std::min<int>(nthreads, 16);
        auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
            std::vector<int> tuple(V);
            std::vector<int> mapped(V);
            std::vector<modp::u64> pt(V);
            std::uint64_t local = 0;
            for (std::uint64_t idx = lo; idx < hi; ++idx) {
                if (!ok.load(std::memory_order_relaxed)) break;
                std::uint64_t rest = idx;
                for (int v = 0; v < V; ++v) {
                    tuple[v] = 1 + static_cast<int>(rest % grid_size_[v]);
                    rest /= grid_size_[v];
                }
                bool canonical = true;
                for (const auto& perm : opt_.var_perms) {
                    for (int v = 0; v < V; ++v) mapped[perm[v]] = tuple[v];
                    if (std::lexicographical_compare(mapped.begin(), mapped.end(),
                                                     tuple.begin(), tuple.end())) {
                        canonical = false;
                        break;
                    }
                }
                if (!canonical) continue;
                for (int v = 0; v < V; ++v) pt[v] = tuple[v];
                ++local;
                for (modp::u64 p : {p1_, p2_}) {
                    modp::u64 lhs = detail::det_at(pm_, pt, p);
                    modp::u64 rhs = claim_at(pt, cexps, p);
                    if (lhs != rhs) {
                        ok.store(false, std::memory_order_relaxed);
                        return;
                    }
                }
            }
            checked.fetch_add(local, std::memory_order_relaxed);
        };
        if (nthreads <= 1 || total < 64) {
            worker(0, total);
        } else {
            std::vector<std::thread> threads;
            std::uint64_t chunk = (total + nthreads - 1) / nthreads;
            for (int t = 0; t < nthreads; ++t) {
                std::uint64_t lo = t * chunk, hi = std::min<std::uint64_t>(total, lo + chunk);
                if (lo < hi) threads.emplace_back(worker, lo, hi);
            }
            for (auto& th : threads) th.join();
        }
        if (!ok.load()) throw MathError("gridcert: grid verification failed");
        points_checked_ = checked.load();
    }

    modp::u64 claim_at(const std::vector<modp::u64>& vals,
                       const std::vector<std::vector<int>>& cexps, modp::u64 p) const {
        const int V = static_cast<int>(pm_.vars.size());
        modp::u64 acc = unit_coeff_ >= 0
                            ? modp::from_integer(unit_coeff_, p)
                            : p - modp::from_integer(-unit_coeff_, p);
        for (int v = 0; v < V; ++v) {
            int g = unit_exp_[v];
            if (g == 0) continue;
            modp::u64 base = g > 0 ? vals[v] : modp::invmod(vals[v], p);
            acc = modp::mulmod(acc, modp::powmod(base, std::abs(g), p), p);
        }
        for (std::size_t i = 0; i < cexps.size(); ++i) {
            if (exponents_[i] == 0) continue;
            modp::u64 m = eval_candidate(cexps[i], vals, p, -1);
            modp::u64 f = modp::submod(1 % p, m, p);
            acc = modp::mulmod(acc, modp::powmod(f, exponents_[i], p), p);
        }
        return acc;
    }

    void check_coefficient_bound() const {
        Integer bdet = factorial(static_cast<unsigned>(dim_));
        long maxc = 1;
        for (const auto& row : pm_.e)
            for (const auto& en : row) maxc = std::max(maxc, std::abs(en.coeff));
        for (int i = 0; i < dim_; ++i) bdet *= maxc;
        Integer bclaim = unit_coeff_ >= 0 ? unit_coeff_ : -unit_coeff_;
        for (std::size_t i = 0; i < canon_candidates_.size(); ++i) {
            bclaim *= Integer(exponents_[i] + 1) << exponents_[i];
        }
        Integer modulus = Integer(static_cast<unsigned long>(p1_)) *
                          Integer(static_cast<unsigned long>(p2_));
        if (2 * (bdet + bclaim) >= modulus)
            throw SizeTooLarge("gridcert: coefficient bound exceeds CRT modulus");
    }

    // The grid may be restricted to orbit representatives only if the claim
    // itself is invariant under the provided variable permutations.
    void check_symmetry_of_claim(const std::vector<std::vector<int>>& cexps) const {
        for (const auto& perm : opt_.var_perms) {
            for (std::size_t v = 0; v < perm.size(); ++v)
                if (unit_exp_[v] != unit_exp_[perm[v]])
                    throw MathError("gridcert: unit not symmetric under var_perms");
            // candidate set with exponents must be permutation-closed
            for (std::size_t i = 0; i < cexps.size(); ++i) {
                std::vector<int> mapped(cexps[i].size());
                for (std::size_t v = 0; v < perm.size(); ++v)
                    mapped[perm[v]] = cexps[i][v];
                bool found = false;
                for (std::size_t j = 0; j < cexps.size(); ++j)
                    if (cexps[j] == mapped && exponents_[j] == exponents_[i]) {
                        found = true;
                        break;
                    }
                if (!found)
                    throw MathError("gridcert: candidates not closed under var_perms");
            }
        }
    }

    GridCertificate finish() const {
        GridCertificate cert;
        cert.exponents = exponents_;
        cert.vars = pm_.vars;
        cert.degree_bounds = degree_bound_;
        cert.points_checked = points_checked_;
        // Assemble the unit for the ORIGINAL candidates:
        // det(M) = norm_unit * c * prod v^g * prod (1 - m_canon)^e and for
        // inverted candidates (1-m_canon)^e = (-1)^e m_orig^{-e} (1-m_orig)^e.
        Integer coeff = unit_coeff_;
        Monomial mono = norm_unit_;
        for (std::size_t v = 0; v < pm_.vars.size(); ++v)
            mono = mono * Monomial(pm_.vars[v], unit_exp_[v]);
        for (std::size_t i = 0; i < orig_candidates_.size(); ++i) {
            if (!inverted_[i] || exponents_[i] == 0) continue;
            if (exponents_[i] % 2 == 1) coeff = -coeff;
            mono = mono * orig_candidates_[i].pow(-exponents_[i]);
        }
        cert.unit_coeff = coeff;
        cert.unit_mono = mono;
        return cert;
    }

    GridCertOptions opt_;
    std::vector<Monomial> orig_candidates_, canon_candidates_;
    std::vector<bool> inverted_;
    MonoMatrix matrix_;
    detail::PackedMatrix pm_;
    Monomial norm_unit_;
    int dim_ = 0;
    modp::u64 p1_ = 0, p2_ = 0;
    std::vector<int> degree_bound_;
    std::vector<int> exponents_;
    std::vector<int> unit_exp_;
    Integer unit_coeff_ = 1;
    std::vector<int> grid_size_;
    std::uint64_t points_checked_ = 0;
};

inline GridCertificate certify_factorization(const MonoMatrix& m,
                                             const std::vector<Monomial>& candidates,
                                             const GridCertOptions& opt = {}) {
    GridCertifier c(m, candidates, opt);
    return c.run();
}

} // namespace qshuffle
