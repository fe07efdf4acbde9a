#pragma once

#include <cstdint>
#include <string>
#include <gmpxx.h>

#include "errors.hpp"

namespace apolar {

// Field policies. Algorithms are templated on one of these; CLI-level code
// dispatches at runtime (see field_dispatch in report.hpp).

struct QQ {
    using Elem = mpq_class;

    static constexpr bool prime_field = false;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long v) const { return Elem(v); }
    Elem from_fraction(long num, long den) const {
        Elem r(num, den);
        r.canonicalize();
        return r;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw PreconditionError("division by zero");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a * inv(b); }
    // r += c * x, the elimination hot path
    void addmul(Elem& r, const Elem& c, const Elem& x) const { r += c * x; }
    std::string to_string(const Elem& a) const { return a.get_str(); }
    uint64_t characteristic() const { return 0; }
    std::string describe() const { return "q"; }
};

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit input
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

struct GFp {
    using Elem = uint64_t;

    static constexpr bool prime_field = true;

    uint64_t p;
    bool small; // p < 2^32: products fit in uint64

    explicit GFp(uint64_t prime) : p(prime), small(prime < (uint64_t(1) << 32)) {
        if (prime == 2 || prime == 3)
            throw PreconditionError("characteristic 2 and 3 are not supported");
        if (!detail::is_prime_u64(prime))
            throw PreconditionError("modulus " + std::to_string(prime) + " is not prime");
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(long v) const {
        long long m = static_cast<long long>(v % static_cast<long long>(p));
        if (m < 0) m += static_cast<long long>(p);
        return static_cast<Elem>(m);
    }
    Elem from_fraction(long num, long den) const { return div(from_int(num), from_int(den)); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a + b;
        if (r >= p) r -= p;
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(const Elem& a, const Elem& b) const {
        return small ? (a * b) % p : detail::mulmod_u64(a, b, p);
    }
    Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
    Elem pow(Elem a, uint64_t e) const { return detail::powmod_u64(a, e, p); }
    Elem inv(const Elem& a) const {
        if (a == 0) throw PreconditionError("division by zero");
        return pow(a, p - 2);
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    void addmul(Elem& r, const Elem& c, const Elem& x) const { r = add(r, mul(c, x)); }
    std::string to_string(const Elem& a) const { return std::to_string(a); }
    uint64_t characteristic() const { return p; }
    std::string describe() const { return "fp:" + std::to_string(p); }
};

// exact square root, or failure
inline bool sqrt_in_field(const QQ&, const mpq_class& a, mpq_class& out) {
    if (a < 0) return false;
    mpz_class num = a.get_num(), den = a.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = mpq_class(rn, rd);
    out.canonicalize();
    return true;
}

inline bool sqrt_in_field(const GFp& F, uint64_t a, uint64_t& out) {
    if (a == 0) { out = 0; return true; }
    if (F.pow(a, (F.p - 1) / 2) != 1) return false;
    if (F.p % 4 == 3) { out = F.pow(a, (F.p + 1) / 4); return true; }
    // Tonelli-Shanks
    uint64_t q = F.p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    uint64_t z = 2;
    while (F.pow(z, (F.p - 1) / 2) != F.p - 1) ++z;
    uint64_t m = s, c = F.pow(z, q), t = F.pow(a, q), r = F.pow(a, (q + 1) / 2);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) { tt = F.mul(tt, tt); ++i; }
        uint64_t b = F.pow(c, uint64_t(1) << (m - i - 1));
        m = i;
        c = F.mul(b, b);
        t = F.mul(t, c);
        r = F.mul(r, b);
    }
    out = r;
    return true;
}

} // namespace apolar
