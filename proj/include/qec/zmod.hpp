#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qec {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Deterministic primality for 64-bit inputs (Miller-Rabin over the first
/// twelve prime bases; that base set is exact well beyond 2^64).
bool is_prime_u64(u64 n);

/// Ring modulus with primality decided once at construction.
struct Modulus {
    u64 m = 2;
    bool prime = false;

    explicit Modulus(u64 m_);

    bool odd_prime() const { return prime && (m & 1); }
};

u64 mod_add(u64 a, u64 b, u64 m);
u64 mod_sub(u64 a, u64 b, u64 m);
u64 mod_neg(u64 a, u64 m);
u64 mod_mul(u64 a, u64 b, u64 m);
u64 mod_pow(u64 a, u64 e, u64 m);

/// Inverse of a unit mod m; throws std::invalid_argument when gcd(a, m) != 1.
u64 mod_inv(u64 a, u64 m);

/// Legendre symbol in {-1, 0, 1}. Requires an odd prime modulus.
int legendre_symbol(u64 x, const Modulus& p);

/// Both square roots of x mod an odd prime, smaller root first ((0,0) when
/// x = 0); nullopt when x is a non-residue. Tonelli-Shanks.
std::optional<std::pair<u64, u64>> sqrt_mod(u64 x, const Modulus& p);

/// Solution set of a*x^2 + b*x + c = 0 over Z_p. The identically-zero
/// equation is reported through `all` instead of listing every residue.
struct QuadraticRoots {
    bool all = false;
    std::vector<u64> roots;  // sorted ascending, distinct

    u64 count(u64 p) const { return all ? p : roots.size(); }
    bool empty() const { return !all && roots.empty(); }
};

QuadraticRoots solve_univariate_quadratic(u64 a, u64 b, u64 c, const Modulus& p);

}  // namespace qec
