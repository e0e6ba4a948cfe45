#include "thetapress/theta.hpp"

#include <cmath>
#include <numeric>

#include "thetapress/errors.hpp"

namespace thetapress {

Theta::Theta(std::int64_t numerator, std::int64_t denominator)
{
    if (denominator <= 0 || numerator < 0 || numerator > denominator) {
        throw ConfigError("theta must be a fraction in [0, 1], got " + std::to_string(numerator) + "/" +
                          std::to_string(denominator));
    }
    auto g = std::gcd(numerator, denominator);
    p_ = numerator / g;
    q_ = denominator / g;
}

Theta Theta::from_double(double value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ConfigError("theta must lie in [0, 1]");
    }
    constexpr std::int64_t max_den = 1'000'000;
    // Continued-fraction convergents.
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = value;
    for (int iter = 0; iter < 64; ++iter) {
        auto a = static_cast<std::int64_t>(std::floor(x));
        std::int64_t h2 = a * h1 + h0;
        std::int64_t k2 = a * k1 + k0;
        if (k2 > max_den) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        double frac = x - static_cast<double>(a);
        if (frac < 1e-12 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - value) < 1e-15) {
            break;
        }
        x = 1.0 / frac;
    }
    return Theta(h1, k1);
}

Theta Theta::parse(const std::string& text)
{
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            return Theta(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        }
        return from_double(std::stod(text));
    } catch (const std::logic_error&) {
        throw ConfigError("cannot parse theta value '" + text + "'");
    }
}

ThetaWindow ThetaWindow::make(std::size_t N, Theta theta, std::size_t cap)
{
    if (N == 0) {
        throw ConfigError("scale N must be >= 1");
    }
    ThetaWindow w{N, theta, cap};
    if (theta.is_zero()) {
        if (w.n_max_cap == 0) {
            w.n_max_cap = 4 * N;
        }
        if (w.n_max_cap < N) {
            throw ConfigError("theta = 0 length cap must be >= N");
        }
    }
    return w;
}

std::size_t ThetaWindow::max_length() const
{
    if (theta.is_zero()) {
        return n_max_cap;
    }
    // Largest n with p(n-1) < qN, i.e. n = ceil(qN / p).
    auto p = static_cast<std::uint64_t>(theta.numerator());
    auto q = static_cast<std::uint64_t>(theta.denominator());
    auto qn = q * static_cast<std::uint64_t>(N);
    return static_cast<std::size_t>((qn + p - 1) / p);
}

}  // namespace thetapress
