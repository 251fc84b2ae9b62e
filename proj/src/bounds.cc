#include <canonram/bounds.hpp>
#include <canonram/errors.hpp>

#include <mutex>
#include <numeric>
#include <unordered_map>

namespace canonram
{
    namespace
    {
        struct PairHash
        {
            auto operator()(const std::pair<int, std::int64_t> & p) const -> std::size_t
            {
                return std::hash<std::int64_t>()(p.second) * 31 + static_cast<std::size_t>(p.first);
            }
        };

        std::mutex memo_mutex;
        std::unordered_map<std::pair<int, std::int64_t>, std::int64_t, PairHash> memo;

        auto alpha_raw(int k, std::int64_t t) -> std::int64_t
        {
            if (k == 1)
                return (t + 1) / 2;
            if (t <= 1)
                return 0;
            std::int64_t r = 0;
            while (t > 1) {
                t = alpha(k - 1, t);
                ++r;
            }
            return r;
        }

        auto require(const BoundParams & params, const std::string & key) -> std::int64_t
        {
            auto it = params.find(key);
            if (it == params.end())
                throw InvalidInput("missing parameter '" + key + "'");
            return it->second;
        }

        auto power_text(const std::string & base, const BigInt & exponent) -> std::string
        {
            return base + "^" + exponent.str();
        }
    }

    auto alpha(int k, std::int64_t t) -> std::int64_t
    {
        if (k < 1 || t < 1)
            throw InvalidInput("alpha needs k >= 1 and t >= 1");
        if (k == 1)
            return (t + 1) / 2;
        {
            std::lock_guard lock(memo_mutex);
            auto it = memo.find({k, t});
            if (it != memo.end())
                return it->second;
        }
        auto value = alpha_raw(k, t);
        std::lock_guard lock(memo_mutex);
        memo.emplace(std::pair{k, t}, value);
        return value;
    }

    auto alpha_iterate(int k, std::int64_t t, int r) -> std::int64_t
    {
        for (int i = 0; i < r && t >= 1; ++i)
            t = alpha(k, t);
        return t;
    }

    auto hypercube_exponent(std::int64_t n, std::int64_t d_num, std::int64_t d_den, std::int64_t max_deg) -> std::int64_t
    {
        if (max_deg <= 0)
            throw InvalidInput("maximum degree must be positive");
        if (d_den <= 0)
            throw InvalidInput("average degree denominator must be positive");
        BigInt num = BigInt(n) * d_num;
        BigInt den = BigInt(2) * max_deg * d_den;
        BigInt q = num / den;
        if (q * den < num)
            ++q;
        return static_cast<std::int64_t>(q) - 1;
    }

    auto big_pow(const BigInt & base, std::uint64_t exponent) -> BigInt
    {
        BigInt result = 1, b = base;
        while (exponent) {
            if (exponent & 1)
                result *= b;
            exponent >>= 1;
            if (exponent)
                b *= b;
        }
        return result;
    }

    auto integer_root(const BigInt & value, std::uint64_t k) -> BigInt
    {
        if (k == 0)
            throw InvalidInput("zeroth root");
        if (value < 2 || k == 1)
            return value;
        BigInt lo = 1, hi = 1;
        while (big_pow(hi, k) <= value)
            hi *= 2;
        // Invariant: lo^k <= value < hi^k.
        while (hi - lo > 1) {
            BigInt mid = (lo + hi) / 2;
            if (big_pow(mid, k) <= value)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    auto threshold(const std::string & name, const BoundParams & params) -> BoundReport
    {
        BoundReport report;
        report.name = name;

        auto take = [&](const std::string & key) {
            auto v = require(params, key);
            report.inputs[key] = v;
            return v;
        };
        auto nonneg = [](std::int64_t v, const char * what) {
            if (v < 0)
                throw InvalidInput(std::string(what) + " must be non-negative");
            return static_cast<std::uint64_t>(v);
        };

        if (name == "bipartite_upper") {
            auto n = take("n");
            auto t = take("t");
            auto e2 = nonneg(24 * t + 1, "24t+1");
            auto en = nonneg(32 * t + 6, "32t+6");
            report.value = big_pow(2, e2) * big_pow(n, en);
            report.factored = power_text("2", e2) + " · " + power_text(std::to_string(n), en);
        }
        else if (name == "bipartite_lower") {
            auto n = take("n");
            auto d_num = take("d_num");
            std::int64_t d_den = 1;
            if (params.count("d_den"))
                d_den = take("d_den");
            if (d_den <= 0)
                throw InvalidInput("d_den must be positive");
            // Exponent (d - 4) / 2 = (d_num - 4 d_den) / (2 d_den), in lowest terms.
            std::int64_t p = d_num - 4 * d_den, q = 2 * d_den;
            if (p <= 0) {
                report.value = 1;
                report.factored = std::to_string(n) + "^0";
            }
            else {
                auto g = std::gcd(p, q);
                p /= g;
                q /= g;
                report.value = integer_root(big_pow(n, static_cast<std::uint64_t>(p)), static_cast<std::uint64_t>(q));
                report.factored = std::to_string(n) + "^(" + std::to_string(p) + (q == 1 ? "" : "/" + std::to_string(q)) + ")";
            }
        }
        else if (name == "nonbipartite_upper") {
            auto n = take("n");
            auto delta = take("delta");
            auto chi = take("chi");
            auto e = nonneg(delta * chi * n, "delta*chi*n");
            report.value = big_pow(BigInt(8) * big_pow(n, 6), e);
            report.factored = power_text("8", e) + " · " + power_text(std::to_string(n), BigInt(6) * e);
        }
        else if (name == "one_step_min_s") {
            auto n = take("n");
            auto delta = take("delta");
            auto e = nonneg(7 * delta, "7*delta");
            report.value = big_pow(2 * n, e);
            report.factored = power_text(std::to_string(2 * n), e);
        }
        else if (name == "one_step_output") {
            auto n = take("n");
            auto delta = take("delta");
            auto s = take("s");
            auto e = nonneg(delta, "delta");
            BigInt den = big_pow(BigInt(8) * big_pow(n, 6), e);
            report.value = BigInt(s) / den;
            report.factored = std::to_string(s) + " / (" + power_text("8", e) + " · " + power_text(std::to_string(n), BigInt(6) * e) + ")";
        }
        else
            throw UnknownName("no threshold named '" + name + "'");
        return report;
    }
}
