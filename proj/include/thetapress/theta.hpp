#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace thetapress {

/// The interpolation parameter theta in [0, 1], held as an exact reduced fraction p/q.
///
/// Admissible lengths N <= n < N/theta + 1 are decided in integers as p(n-1) < qN,
/// so grid values like 0.1 or 1/3 never misclassify a boundary length.
class Theta {
public:
    Theta() = default;
    Theta(std::int64_t numerator, std::int64_t denominator);

    /// Best rational approximation with denominator <= 10^6 (exact for decimal grids).
    static Theta from_double(double value);
    /// Accepts "p/q" or a decimal literal.
    static Theta parse(const std::string& text);

    std::int64_t numerator() const { return p_; }
    std::int64_t denominator() const { return q_; }
    double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }
    bool is_zero() const { return p_ == 0; }

    friend bool operator==(const Theta&, const Theta&) = default;
    friend std::strong_ordering operator<=>(const Theta& a, const Theta& b)
    {
        return a.p_ * b.q_ <=> b.p_ * a.q_;
    }

private:
    std::int64_t p_ = 1;
    std::int64_t q_ = 1;
};

/// Scale N with the theta constraint on candidate lengths.
struct ThetaWindow {
    std::size_t N = 1;
    Theta theta;
    /// Upper length bound used only when theta = 0.
    std::size_t n_max_cap = 0;

    static ThetaWindow make(std::size_t N, Theta theta, std::size_t cap = 0);

    std::size_t min_length() const { return N; }
    std::size_t max_length() const;
    bool admits(std::size_t n) const { return n >= min_length() && n <= max_length(); }
};

}  // namespace thetapress
