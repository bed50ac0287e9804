#include "polylab/gf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace polylab {

bool is_prime_power(int n, int* p_out, int* k_out) {
    if (n < 2) return false;
    int m = n;
    int p = 0;
    for (int d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = m;  // n is prime
    int k = 0;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) return false;
    if (p_out) *p_out = p;
    if (k_out) *k_out = k;
    return true;
}

namespace {

// Dense polynomial arithmetic over GF(p), coefficients little-endian.
using Poly = std::vector<int>;

Poly poly_mod(Poly a, const Poly& m, int p) {
    int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) > dm) {
        int lead = a.back();
        int shift = static_cast<int>(a.size()) - 1 - dm;
        if (lead != 0) {
            // m is monic
            for (int i = 0; i <= dm; ++i) {
                a[i + shift] = ((a[i + shift] - lead * m[i]) % p + p) % p;
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(c), m, p);
}

int poly_to_value(const Poly& a, int p) {
    int v = 0;
    for (std::size_t i = a.size(); i-- > 0;) v = v * p + a[i];
    return v;
}

Poly value_to_poly(int v, int p) {
    Poly a;
    while (v) {
        a.push_back(v % p);
        v /= p;
    }
    return a;
}

bool divides(const Poly& d, Poly a, int p) {
    // monic divisor
    int dd = static_cast<int>(d.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dd && !a.empty()) {
        int lead = a.back();
        int shift = static_cast<int>(a.size()) - 1 - dd;
        if (lead != 0)
            for (int i = 0; i <= dd; ++i) a[i + shift] = ((a[i + shift] - lead * d[i]) % p + p) % p;
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a.empty();
}

bool is_irreducible(const Poly& f, int p) {
    int k = static_cast<int>(f.size()) - 1;
    // trial division by all monic polynomials of degree 1..k/2
    for (int d = 1; 2 * d <= k; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long v = 0; v < count; ++v) {
            Poly g = value_to_poly(static_cast<int>(v), p);
            g.resize(d + 1, 0);
            g[d] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

Poly smallest_irreducible(int p, int k) {
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
        Poly f = value_to_poly(static_cast<int>(v), p);
        f.resize(k + 1, 0);
        f[k] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw InternalError("no irreducible polynomial found");
}

}  // namespace

Gf::Gf(int q) : q_(q) {
    if (!is_prime_power(q, &p_, &k_) || q > kMaxOrder)
        throw DomainError("field order " + std::to_string(q) + " is not a prime power <= " +
                          std::to_string(kMaxOrder));
    if (k_ == 1) {
        modulus_ = {0, 1};  // placeholder: prime field needs no modulus
    } else {
        modulus_ = smallest_irreducible(p_, k_);
    }

    // Find a multiplicative generator and fill exp/log tables.
    auto mul_raw = [&](int a, int b) {
        if (k_ == 1) return (a * b) % p_;
        Poly pa = value_to_poly(a, p_), pb = value_to_poly(b, p_);
        return poly_to_value(poly_mulmod(pa, pb, modulus_, p_), p_);
    };
    log_.assign(q_, -1);
    for (int g = 1; g < q_; ++g) {
        std::vector<int> powers;
        powers.reserve(q_ - 1);
        int x = 1;
        bool ok = true;
        for (int i = 0; i < q_ - 1; ++i) {
            powers.push_back(x);
            x = mul_raw(x, g);
            if (x == 1 && i + 1 < q_ - 1) {
                ok = false;
                break;
            }
        }
        if (ok && x == 1) {
            exp_ = std::move(powers);
            break;
        }
    }
    if (exp_.empty()) throw InternalError("no multiplicative generator found");
    for (int i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
}

const Gf& Gf::get(int q) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<Gf>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<Gf>(new Gf(q))).first;
    return *it->second;
}

void Gf::check(int a) const {
    if (a < 0 || a >= q_) throw DomainError("field element out of range");
}

int Gf::add(int a, int b) const {
    check(a);
    check(b);
    if (k_ == 1) return (a + b) % p_;
    int out = 0, base = 1;
    while (a || b) {
        int d = (a % p_ + b % p_) % p_;
        out += d * base;
        base *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

int Gf::neg(int a) const {
    check(a);
    if (k_ == 1) return (p_ - a) % p_;
    int out = 0, base = 1;
    while (a) {
        out += ((p_ - a % p_) % p_) * base;
        base *= p_;
        a /= p_;
    }
    return out;
}

int Gf::sub(int a, int b) const { return add(a, neg(b)); }

int Gf::mul(int a, int b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int Gf::inv(int a) const {
    check(a);
    if (a == 0) throw DomainError("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int Gf::div(int a, int b) const { return mul(a, inv(b)); }

int Gf::pow(int a, long long e) const {
    check(a);
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw DomainError("negative power of zero");
        return 0;
    }
    long long m = q_ - 1;
    long long le = ((e % m) + m) % m;
    return exp_[static_cast<int>(log_[a] * le % m)];
}

int Gf::frobenius(int a) const { return pow(a, p_); }

GfEmbedding::GfEmbedding(const Gf& sub, const Gf& super) : sub_(&sub), super_(&super) {
    if (sub.p() != super.p() || super.degree() % sub.degree() != 0)
        throw DomainError("no field embedding GF(" + std::to_string(sub.q()) + ") -> GF(" +
                          std::to_string(super.q()) + ")");
    if (sub.q() == super.q()) {
        image_.resize(sub.q());
        for (int a = 0; a < sub.q(); ++a) image_[a] = a;
        return;
    }
    // Root of the subfield modulus in the big field; smallest root keeps the
    // embedding canonical.
    const std::vector<int>& m = sub.modulus();
    int root = -1;
    for (int x = 0; x < super.q() && root < 0; ++x) {
        int acc = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            acc = super.mul(acc, x);
            acc = super.add(acc, m[i] % sub.p());
        }
        if (acc == 0) root = x;
    }
    if (root < 0) throw InternalError("subfield modulus has no root in the big field");
    image_.resize(sub.q());
    int p = sub.p();
    for (int a = 0; a < sub.q(); ++a) {
        int acc = 0, v = a;
        int power = 1;  // root^i in the big field
        while (v) {
            int digit = v % p;
            // digit lives in the shared prime subfield {0..p-1}
            acc = super.add(acc, super.mul(digit, power));
            power = super.mul(power, root);
            v /= p;
        }
        image_[a] = acc;
    }
}

int GfEmbedding::operator()(int a) const {
    if (a < 0 || a >= sub_->q()) throw DomainError("field element out of range");
    return image_[a];
}

}  // namespace polylab
