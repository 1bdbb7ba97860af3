#ifndef PROX_GENERATE_HPP
#define PROX_GENERATE_HPP

#include "prox/rational.hpp"
#include "prox/rng.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace prox {

enum class GenKind { Arithmetic, Geometric, RandomInteger, Symmetric, ExplicitFile };

inline GenKind parse_gen_kind(const std::string& s) {
    if (s == "arithmetic") return GenKind::Arithmetic;
    if (s == "geometric") return GenKind::Geometric;
    if (s == "random-integer") return GenKind::RandomInteger;
    if (s == "symmetric") return GenKind::Symmetric;
    if (s == "explicit-file") return GenKind::ExplicitFile;
    throw std::invalid_argument("unknown generator kind: " + s);
}

struct GenSpec {
    GenKind kind = GenKind::Arithmetic;
    Rational start = Rational(1), step = Rational(1);  // arithmetic, symmetric scale
    Rational base = Rational(1), ratio = Rational(2);  // geometric
    long long lo = -1000000, hi = 1000000;             // random-integer
    std::string file;                                  // explicit-file
};

/// One sorted ground set, fully determined by (spec, n, seed). The random
/// kind draws through the documented splitmix generator only.
inline std::vector<Rational> generate_sets(const GenSpec& spec, size_t n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("generate_sets: n must be >= 1");
    std::vector<Rational> out;
    switch (spec.kind) {
        case GenKind::Arithmetic: {
            if (spec.step == 0) throw std::invalid_argument("generate_sets: step must be nonzero");
            for (size_t i = 0; i < n; ++i) out.push_back(spec.start + Rational(i) * spec.step);
            break;
        }
        case GenKind::Geometric: {
            if (spec.base == 0 || spec.ratio == 0 || spec.ratio == 1 || spec.ratio == -1)
                throw std::invalid_argument("generate_sets: need base != 0, ratio not in {0,1,-1}");
            Rational v = spec.base;
            for (size_t i = 0; i < n; ++i) {
                out.push_back(v);
                v *= spec.ratio;
            }
            break;
        }
        case GenKind::RandomInteger: {
            if (spec.lo > spec.hi || static_cast<unsigned long long>(spec.hi - spec.lo) + 1 < n)
                throw std::invalid_argument("generate_sets: integer range smaller than n");
            SplitMix64 rng(seed);
            std::set<long long> seen;
            while (seen.size() < n) seen.insert(rng.range(spec.lo, spec.hi));
            for (long long v : seen) out.emplace_back(v);
            break;
        }
        case GenKind::Symmetric: {
            // Closed under negation: +-step, +-2*step, ...; odd n adds 0.
            if (spec.step == 0) throw std::invalid_argument("generate_sets: step must be nonzero");
            Rational step = abs(spec.step);
            for (size_t i = n / 2; i >= 1; --i) out.push_back(-Rational(i) * step);
            if (n % 2 == 1) out.push_back(Rational(0));
            for (size_t i = 1; i <= n / 2; ++i) out.push_back(Rational(i) * step);
            break;
        }
        case GenKind::ExplicitFile: {
            std::ifstream in(spec.file);
            if (!in) throw std::invalid_argument("generate_sets: cannot open " + spec.file);
            std::string tok;
            while (in >> tok) out.push_back(parse_rational(tok));
            if (out.size() != n)
                throw std::invalid_argument("generate_sets: file holds " +
                                            std::to_string(out.size()) + " values, expected " +
                                            std::to_string(n));
            break;
        }
    }
    std::sort(out.begin(), out.end());
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i - 1] == out[i])
            throw std::invalid_argument("generate_sets: duplicate element in set");
    return out;
}

}  // namespace prox

#endif
