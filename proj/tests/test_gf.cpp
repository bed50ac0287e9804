#include <doctest.h>

#include "polylab/gf.hpp"

using namespace polylab;

TEST_CASE("prime power detection") {
    int p = 0, k = 0;
    CHECK(is_prime_power(2, &p, &k));
    CHECK(p == 2);
    CHECK(k == 1);
    CHECK(is_prime_power(32, &p, &k));
    CHECK(p == 2);
    CHECK(k == 5);
    CHECK(is_prime_power(27, &p, &k));
    CHECK(p == 3);
    CHECK(k == 3);
    CHECK(!is_prime_power(1));
    CHECK(!is_prime_power(6));
    CHECK(!is_prime_power(12));
    CHECK(is_prime_power(512));
}

TEST_CASE("field axioms hold exhaustively for small orders") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
        const Gf& f = Gf::get(q);
        CHECK(f.q() == q);
        for (int a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.mul(a, 0) == 0);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (int c = 0; c < q; ++c) {
                    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("multiplicative group is cyclic of order q-1") {
    for (int q : {4, 8, 9, 16, 27, 32}) {
        const Gf& f = Gf::get(q);
        int g = f.generator();
        int x = 1;
        int order = 0;
        do {
            x = f.mul(x, g);
            ++order;
        } while (x != 1);
        CHECK(order == q - 1);
    }
}

TEST_CASE("Frobenius is a field automorphism") {
    for (int q : {4, 8, 9, 27}) {
        const Gf& f = Gf::get(q);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
                CHECK(f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b)));
            }
    }
}

TEST_CASE("subfield embeddings are injective field homomorphisms") {
    for (auto [small, big] : {std::make_pair(2, 4), std::make_pair(2, 16), std::make_pair(4, 16),
                              std::make_pair(3, 9), std::make_pair(3, 27)}) {
        GfEmbedding phi(Gf::get(small), Gf::get(big));
        const Gf& fs = Gf::get(small);
        const Gf& fb = Gf::get(big);
        CHECK(phi(0) == 0);
        CHECK(phi(1) == 1);
        std::vector<char> seen(big, 0);
        for (int a = 0; a < small; ++a) {
            CHECK(!seen[phi(a)]);
            seen[phi(a)] = 1;
            for (int b = 0; b < small; ++b) {
                CHECK(phi(fs.add(a, b)) == fb.add(phi(a), phi(b)));
                CHECK(phi(fs.mul(a, b)) == fb.mul(phi(a), phi(b)));
            }
        }
    }
    CHECK_THROWS_AS(GfEmbedding(Gf::get(4), Gf::get(8)), DomainError);
}

TEST_CASE("errors") {
    const Gf& f = Gf::get(5);
    CHECK_THROWS_AS(f.inv(0), DomainError);
    CHECK_THROWS_AS(f.add(5, 0), DomainError);
    CHECK_THROWS_AS(Gf::get(6), DomainError);
    CHECK_THROWS_AS(Gf::get(8192), DomainError);
}
