#pragma once

#include <cstdint>
#include <stdexcept>

namespace tbv {

inline bool is_prime(uint32_t p)
{
    if (p < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// (-1)^e for any integer e
inline int sgn(long long e) { return (e % 2 == 0) ? 1 : -1; }

// F_p with residues in [0,p)
struct Fp {
    uint32_t p = 2;

    Fp() = default;
    explicit Fp(uint32_t prime) : p(prime)
    {
        if (!is_prime(prime)) throw std::invalid_argument("characteristic is not prime");
    }

    uint32_t add(uint32_t a, uint32_t b) const
    {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a ? p - a : 0; }
    uint32_t mul(uint32_t a, uint32_t b) const { return (uint32_t)((uint64_t)a * b % p); }
    uint32_t from(long long v) const
    {
        long long r = v % (long long)p;
        return (uint32_t)(r < 0 ? r + p : r);
    }
    uint32_t pow(uint32_t a, uint64_t e) const
    {
        uint64_t r = 1, b = a % p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return (uint32_t)r;
    }
    uint32_t inv(uint32_t a) const
    {
        if (a % p == 0) throw std::domain_error("inverse of zero");
        return pow(a, p - 2);
    }
    // scalar times a sign
    uint32_t signed_(uint32_t a, int s) const { return s > 0 ? a : neg(a); }

    bool operator==(const Fp& o) const { return p == o.p; }
};

} // namespace tbv
