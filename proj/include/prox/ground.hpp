#ifndef PROX_GROUND_HPP
#define PROX_GROUND_HPP

#include "prox/rational.hpp"
#include "prox/unipoly.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace prox {

/// Partition of {0..n-1} into t consecutive segments whose sizes differ by
/// at most one, larger segments first (so every size is <= ceil(n/t)).
struct Segmentation {
    std::vector<size_t> starts;  // size t+1, starts.front()=0, starts.back()=n

    size_t segment_count() const { return starts.size() - 1; }

    size_t segment_of(size_t index) const {
        auto it = std::upper_bound(starts.begin(), starts.end(), index);
        return static_cast<size_t>(it - starts.begin()) - 1;
    }

    size_t segment_size(size_t seg) const { return starts[seg + 1] - starts[seg]; }
};

inline Segmentation partition_consecutive(size_t n, size_t t) {
    if (t == 0 || t > n) throw std::invalid_argument("partition_consecutive: need 1 <= t <= n");
    Segmentation s;
    s.starts.reserve(t + 1);
    size_t q = n / t, r = n % t, pos = 0;
    for (size_t i = 0; i < t; ++i) {
        s.starts.push_back(pos);
        pos += q + (i < r ? 1 : 0);
    }
    s.starts.push_back(n);
    return s;
}

/// Deterministic integerization of t = n^{3/2} / (s * d^{1/2}): round half
/// up on the exact real quotient, then clamp to [1, n]. round(x) >= k
/// iff (2k-1)^2 * s^2 * d <= 4 n^3, which is decided in integers.
inline size_t choose_t(size_t n, size_t d_size, long long s) {
    if (n == 0 || d_size == 0 || s < 1) throw std::invalid_argument("choose_t: bad arguments");
    Integer num = Integer(4) * Integer(n) * Integer(n) * Integer(n);
    Integer den = Integer(s) * Integer(s) * Integer(d_size);
    Integer m = isqrt(floor_div(num, den));
    // Largest odd o with o^2 <= num/den; the rounded value is (o+1)/2.
    Integer o = (m % 2 == 1) ? m : m - 1;
    auto ok = [&](const Integer& odd) { return odd * odd * den <= num; };
    while (o > 0 && !ok(o)) o -= 2;
    Integer k = (o + 1) / 2;
    if (k < 1) return 1;
    if (k > static_cast<long long>(n)) return n;
    return static_cast<size_t>(k.convert_to<long long>());
}

/// Sorted ground sets with their consecutive-segment partitions.
class GroundData {
public:
    GroundData(std::vector<Rational> a, std::vector<Rational> b, std::vector<Rational> c,
               UniPoly phi, long long s, size_t t)
        : A_(std::move(a)), B_(std::move(b)), C_(std::move(c)), phi_(std::move(phi)), s_(s) {
        if (A_.size() != B_.size() || B_.size() != C_.size() || A_.empty())
            throw std::invalid_argument("GroundData: sets must be nonempty and equal-sized");
        auto check_sorted = [](const std::vector<Rational>& x) {
            for (size_t i = 1; i < x.size(); ++i)
                if (!(x[i - 1] < x[i]))
                    throw std::invalid_argument("GroundData: sets must be strictly increasing");
        };
        check_sorted(A_);
        check_sorted(B_);
        check_sorted(C_);
        if (s_ < 1) throw std::invalid_argument("GroundData: s must be positive");
        if (t < 1 || t > A_.size()) throw std::invalid_argument("GroundData: need 1 <= t <= n");
        t_ = t;
        seg_ = partition_consecutive(A_.size(), t_);
    }

    size_t n() const { return A_.size(); }
    size_t t() const { return t_; }
    long long s() const { return s_; }
    const UniPoly& phi() const { return phi_; }
    const std::vector<Rational>& A() const { return A_; }
    const std::vector<Rational>& B() const { return B_; }
    const std::vector<Rational>& C() const { return C_; }

    /// All three sets have size n, so they share one segmentation.
    const Segmentation& segmentation() const { return seg_; }

private:
    std::vector<Rational> A_, B_, C_;
    UniPoly phi_;
    long long s_;
    size_t t_;
    Segmentation seg_;
};

/// Index of `x` in the sorted set, or throws.
inline size_t index_of(const std::vector<Rational>& set, const Rational& x) {
    auto it = std::lower_bound(set.begin(), set.end(), x);
    if (it == set.end() || *it != x)
        throw std::invalid_argument("related: value is not a member of the set");
    return static_cast<size_t>(it - set.begin());
}

/// The proximity relation: distinct members of the same segment.
inline bool related(const std::vector<Rational>& set, const Segmentation& seg, const Rational& x,
                    const Rational& y) {
    size_t i = index_of(set, x), j = index_of(set, y);
    return i != j && seg.segment_of(i) == seg.segment_of(j);
}

}  // namespace prox

#endif
