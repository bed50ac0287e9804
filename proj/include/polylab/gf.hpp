#pragma once

#include <cstdint>
#include <vector>

#include "polylab/errors.hpp"

namespace polylab {

/// Is n = p^k for a prime p and k >= 1? Outputs p and k when so.
bool is_prime_power(int n, int* p_out = nullptr, int* k_out = nullptr);

/// GF(q) for a prime power q <= 4096. Elements are integers in [0, q)
/// encoding coefficient vectors over GF(p) in base p (little-endian), so the
/// prime subfield is exactly {0, ..., p-1}. The modulus is the
/// lexicographically smallest monic irreducible polynomial of degree k over
/// GF(p); together with generator-based exp/log tables this makes all
/// arithmetic reproducible across runs and platforms.
class Gf {
public:
    static const Gf& get(int q);
    static constexpr int kMaxOrder = 4096;

    int q() const { return q_; }
    int p() const { return p_; }
    int degree() const { return k_; }

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;
    int div(int a, int b) const;
    int pow(int a, long long e) const;
    /// Frobenius x -> x^p.
    int frobenius(int a) const;

    int generator() const { return exp_[1]; }
    /// Modulus coefficients c_0..c_k (monic, c_k = 1).
    const std::vector<int>& modulus() const { return modulus_; }

private:
    explicit Gf(int q);
    void check(int a) const;

    int q_, p_, k_;
    std::vector<int> modulus_;
    std::vector<int> exp_;  // exp_[i] = g^i, length q-1
    std::vector<int> log_;  // log_[x] for x != 0
};

/// The field homomorphism GF(q) -> GF(q^e) determined by sending the class of
/// x to the smallest root of GF(q)'s modulus in the big field. Identity when
/// the fields coincide.
class GfEmbedding {
public:
    GfEmbedding(const Gf& sub, const Gf& super);
    const Gf& sub() const { return *sub_; }
    const Gf& super() const { return *super_; }
    int operator()(int a) const;

private:
    const Gf* sub_;
    const Gf* super_;
    std::vector<int> image_;  // image of every subfield element
};

}  // namespace polylab
