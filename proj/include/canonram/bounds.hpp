#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace canonram
{
    using BigInt = boost::multiprecision::cpp_int;

    // Inverse Ackermann hierarchy. alpha(1, t) = ceil(t / 2); for k >= 2 the
    // number of alpha(k - 1, .) iterations needed to bring t down to 1.
    auto alpha(int k, std::int64_t t) -> std::int64_t;

    // r-fold iterate of alpha(k, .) applied to t.
    auto alpha_iterate(int k, std::int64_t t, int r) -> std::int64_t;

    // ceil(n d / (2 Delta)) - 1 with d = d_num / d_den.
    auto hypercube_exponent(std::int64_t n, std::int64_t d_num, std::int64_t d_den, std::int64_t max_deg) -> std::int64_t;

    struct BoundReport
    {
        std::string name;
        BigInt value;
        std::map<std::string, std::int64_t> inputs;
        std::string factored;
    };

    // Named parameters: n, d_num, d_den, delta, chi, t, s.
    using BoundParams = std::map<std::string, std::int64_t>;

    auto threshold(const std::string & name, const BoundParams & params) -> BoundReport;

    auto big_pow(const BigInt & base, std::uint64_t exponent) -> BigInt;

    // Largest x with x^k <= value.
    auto integer_root(const BigInt & value, std::uint64_t k) -> BigInt;
}
