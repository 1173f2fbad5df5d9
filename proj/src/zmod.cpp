#include "qec/zmod.hpp"

#include <algorithm>
#include <stdexcept>

namespace qec {

namespace {
using u128 = unsigned __int128;

// Bases making Miller-Rabin deterministic for every n < 3.3 * 10^24.
constexpr u64 kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
}  // namespace

u64 mod_add(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    u64 s = a + b;  // a, b < m <= 2^63 in practice, but stay overflow-safe
    if (s < a || s >= m) s -= m;
    return s;
}

u64 mod_sub(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : a + (m - b);
}

u64 mod_neg(u64 a, u64 m) {
    a %= m;
    return a == 0 ? 0 : m - a;
}

u64 mod_mul(u64 a, u64 b, u64 m) {
    return static_cast<u64>(u128(a % m) * (b % m) % m);
}

u64 mod_pow(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mod_mul(r, a, m);
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 mod_inv(u64 a, u64 m) {
    // Extended Euclid; works for units mod any m >= 2.
    a %= m;
    i64 t = 0, new_t = 1;
    u64 r = m, new_r = a;
    while (new_r != 0) {
        u64 q = r / new_r;
        i64 tmp_t = t - static_cast<i64>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        u64 tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) throw std::invalid_argument("mod_inv: not a unit");
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : kMrBases) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kMrBases) {
        u64 x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mod_mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Modulus::Modulus(u64 m_) : m(m_), prime(false) {
    if (m_ < 2) throw std::invalid_argument("modulus must be >= 2");
    prime = is_prime_u64(m_);
}

namespace {
void require_odd_prime(const Modulus& p) {
    if (!p.odd_prime()) throw std::invalid_argument("requires odd prime");
}
}  // namespace

int legendre_symbol(u64 x, const Modulus& p) {
    require_odd_prime(p);
    x %= p.m;
    if (x == 0) return 0;
    return mod_pow(x, (p.m - 1) / 2, p.m) == 1 ? 1 : -1;
}

std::optional<std::pair<u64, u64>> sqrt_mod(u64 x, const Modulus& p) {
    require_odd_prime(p);
    const u64 m = p.m;
    x %= m;
    if (x == 0) return std::make_pair(u64{0}, u64{0});
    if (legendre_symbol(x, p) != 1) return std::nullopt;

    u64 r;
    if (m % 4 == 3) {
        r = mod_pow(x, (m + 1) / 4, m);
    } else {
        // Tonelli-Shanks. m - 1 = q * 2^s with q odd.
        u64 q = m - 1;
        u64 s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (legendre_symbol(z, p) != -1) ++z;

        u64 big_m = s;
        u64 c = mod_pow(z, q, m);
        u64 t = mod_pow(x, q, m);
        r = mod_pow(x, (q + 1) / 2, m);
        while (t != 1) {
            u64 tt = t;
            u64 i = 0;
            while (tt != 1) {
                tt = mod_mul(tt, tt, m);
                ++i;
            }
            u64 b = mod_pow(c, u64{1} << (big_m - i - 1), m);
            big_m = i;
            c = mod_mul(b, b, m);
            t = mod_mul(t, c, m);
            r = mod_mul(r, b, m);
        }
    }
    u64 other = m - r;
    return std::make_pair(std::min(r, other), std::max(r, other));
}

QuadraticRoots solve_univariate_quadratic(u64 a, u64 b, u64 c, const Modulus& p) {
    require_odd_prime(p);
    const u64 m = p.m;
    a %= m;
    b %= m;
    c %= m;

    QuadraticRoots out;
    if (a == 0) {
        if (b == 0) {
            out.all = (c == 0);
            return out;
        }
        out.roots.push_back(mod_mul(mod_neg(c, m), mod_inv(b, m), m));
        return out;
    }

    // Complete the square: x = (-b +- sqrt(b^2 - 4ac)) / 2a.
    u64 disc = mod_sub(mod_mul(b, b, m), mod_mul(4 % m, mod_mul(a, c, m), m), m);
    auto sq = sqrt_mod(disc, p);
    if (!sq) return out;
    u64 inv2a = mod_inv(mod_mul(2, a, m), m);
    u64 r1 = mod_mul(mod_sub(sq->first, b, m), inv2a, m);
    u64 r2 = mod_mul(mod_sub(sq->second, b, m), inv2a, m);
    out.roots.push_back(r1);
    if (r2 != r1) out.roots.push_back(r2);
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

}  // namespace qec
