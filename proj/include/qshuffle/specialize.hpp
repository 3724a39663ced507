#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qshuffle/constraints.hpp"
#include "qshuffle/factor.hpp"
#include "qshuffle/qparams.hpp"

namespace qshuffle {

// An exact rational point of parameter space, generic except for the forced
// subsets (sigma_S = 1 for S in `forced` and whatever they imply).
struct Specialization {
    int n = 0;
    std::map<VarId, Rational> assignment;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> forced;

    QParams<Rational> params() const {
        QParams<Rational> q(n);
        for (const auto& [v, val] : assignment) q.set(v.i, v.j, val);
        return q;
    }

    Rational sigma_value(const std::vector<int>& subset) const {
        Rational acc(1);
        for (int i : subset)
            for (int j : subset)
                if (i != j) acc *= assignment.at(VarId{i, j});
        return acc;
    }
};

// Deterministic pseudorandom rationals from a fixed seed; numerators and
// denominators drawn from [2, 97] keep downstream eliminations fast. After
// the forced subsets are imposed by variable elimination, genericity is
// certified exhaustively: sigma_S != 1 for every subset not forced and not
// implied. Failures advance the seed; a bounded number of retries.
inline Specialization generic_specialization(int n, const std::vector<std::vector<int>>& forced,
                                             std::uint64_t seed) {
    ConstraintSet Q(n, forced);
    auto elim = eliminate_constraints(QParams<LaurentPoly>::symbolic(n), Q);

    // Which subsets are implied to sigma = 1 by the elimination alone?
    auto subsets = index_subsets(n);
    std::vector<char> implied(subsets.size(), 0);
    for (std::size_t s = 0; s < subsets.size(); ++s)
        implied[s] = elim.sigma(subsets[s]).is_one();

    std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL;
    auto rnd = [&state]() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };

    for (int attempt = 0; attempt < 256; ++attempt) {
        std::map<VarId, Rational> free_values;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j) continue;
                VarId v{i, j};
                if (elim.q(i, j) == LaurentPoly::variable(v)) {
                    long num = 2 + static_cast<long>(rnd() % 96);
                    long den = 2 + static_cast<long>(rnd() % 96);
                    free_values[v] = make_rational(num, den);
                }
            }
        Specialization spec;
        spec.n = n;
        spec.seed = seed;
        spec.forced = Q.subsets;
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i)
            for (int j = 1; j <= n && ok; ++j) {
                if (i == j) continue;
                Rational val = poly_specialize(elim.q(i, j), free_values);
                if (val == 0) {
                    ok = false;
                    break;
                }
                spec.assignment[VarId{i, j}] = val;
            }
        for (std::size_t s = 0; s < subsets.size() && ok; ++s) {
            Rational sv = spec.sigma_value(subsets[s]);
            if (implied[s]) {
                if (sv != 1)
                    throw MathError("generic_specialization: implied sigma not 1");
            } else if (sv == 1) {
                ok = false;
            }
        }
        if (ok) return spec;
    }
    throw ExhaustedRetries("generic_specialization: no generic point found");
}

} // namespace qshuffle
