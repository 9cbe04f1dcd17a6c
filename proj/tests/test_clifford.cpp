#include "heis/clifford.hpp"

#include <doctest.h>

#include <vector>

using namespace heis;

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    size_t n = a.size();
    Matrix r(n, std::vector<int>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Matrix sum_of_words(const std::vector<SignedWord>& ws, int n) {
    size_t dim = 1u << n;
    Matrix r(dim, std::vector<int>(dim, 0));
    for (const auto& sw : ws) {
        Matrix m = clifford_matrix(sw.word, n);
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) r[i][j] += sw.sign * m[i][j];
    }
    return r;
}

std::vector<CliffordWord> all_words(int n) {
    std::vector<CliffordWord> out;
    for (uint32_t a = 0; a < (1u << n); ++a)
        for (uint32_t b = 0; b < (1u << n); ++b) out.push_back({a, b});
    return out;
}

}  // namespace

TEST_CASE("basic anticommutation rewrites") {
    // psibar_1 psi^1 = 1 - psi^1 psibar_1
    auto r = clifford_mul(CliffordWord::single_psi_bar(1), CliffordWord::single_psi(1));
    REQUIRE(r.size() == 2);
    CHECK(r[0].word == CliffordWord{});
    CHECK(r[0].sign == 1);
    CHECK(r[1].word == CliffordWord{1, 1});
    CHECK(r[1].sign == -1);

    // psi^1 psi^1 = 0
    CHECK(clifford_mul(CliffordWord::single_psi(1), CliffordWord::single_psi(1)).empty());

    // (psi^1 psibar_1)^2 = psi^1 psibar_1  (idempotent on the 2-dim fiber)
    CliffordWord pq{1, 1};
    auto sq = clifford_mul(pq, pq);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].word == pq);
    CHECK(sq[0].sign == 1);
}

TEST_CASE("word multiplication matches fiber matrix multiplication exhaustively") {
    for (int n = 1; n <= 3; ++n) {
        auto words = all_words(n);
        for (const auto& u : words) {
            Matrix mu = clifford_matrix(u, n);
            for (const auto& w : words) {
                Matrix mw = clifford_matrix(w, n);
                Matrix direct = mat_mul(mu, mw);
                Matrix viaword = sum_of_words(clifford_mul(u, w), n);
                CHECK(direct == viaword);
            }
        }
    }
}

TEST_CASE("traces") {
    for (int n = 1; n <= 3; ++n) {
        CHECK(clifford_tr(CliffordWord::identity(), n) == Integer(1) << n);
        CHECK(clifford_str(CliffordWord::identity(), n) == 0);
        // normalization: (-1)^n str(top) = 1
        Integer s = clifford_str(CliffordWord::top(n), n);
        CHECK(((n % 2 == 0) ? s : -s) == 1);
    }
    // tr vanishes unless psi and psibar sets are equal
    CHECK(clifford_tr(CliffordWord::single_psi(1), 2) == 0);
    CHECK(clifford_tr({1, 2}, 2) == 0);
    // tr(psi^1 psibar_1) over n=2: states containing 1 and mapped to themselves
    CHECK(clifford_tr({1, 1}, 2) == -2);

    // trace property tr(uv) = tr(vu) exhaustively for n = 2
    auto words = all_words(2);
    for (const auto& u : words)
        for (const auto& w : words) {
            Integer a = 0, b = 0;
            for (const auto& sw : clifford_mul(u, w)) a += Integer(sw.sign) * clifford_tr(sw.word, 2);
            for (const auto& sw : clifford_mul(w, u)) b += Integer(sw.sign) * clifford_tr(sw.word, 2);
            CHECK(a == b);
        }
}

TEST_CASE("rename with signs and sorting") {
    // swap 1 <-> 2 on psi^1 psi^2: image psi^2 psi^1 = -psi^1 psi^2
    std::vector<int> perm = {0, 2, 1};   // 1-based
    std::vector<int> signs = {0, 1, 1};
    CliffordWord w{3, 0};
    SignedWord r = clifford_rename(w, perm, signs);
    CHECK(r.word == w);
    CHECK(r.sign == -1);

    // sign flip on one index
    std::vector<int> id = {0, 1, 2};
    std::vector<int> flip = {0, -1, 1};
    SignedWord r2 = clifford_rename(CliffordWord::single_psi(1), id, flip);
    CHECK(r2.word == CliffordWord::single_psi(1));
    CHECK(r2.sign == -1);
}
