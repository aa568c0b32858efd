#include <doctest.h>

#include "oracles/oracles.hpp"
#include "repalign/errors.hpp"
#include "repalign/linalg.hpp"
#include "repalign/random.hpp"
#include "repalign/subspace.hpp"

using namespace repalign;

namespace {

const Domain Q = Domain::rational();
const Domain F = Domain::floating(1e-9);

Domain gf(std::uint64_t p) { return Domain::prime_field(p); }

} // namespace

TEST_CASE("domain parsing round-trips") {
    CHECK(Domain::parse("gf:7") == gf(7));
    CHECK(Domain::parse("rational") == Q);
    CHECK(Domain::parse("float:1e-6").tolerance() == doctest::Approx(1e-6));
    CHECK(Domain::parse("float") == Domain::floating());
    for (const auto& d : {gf(5), Q, Domain::floating(1e-9)}) CHECK(Domain::parse(d.to_string()) == d);
    CHECK_THROWS_AS(Domain::parse("gf:6"), PreconditionError);
    CHECK_THROWS_AS(Domain::parse("gf:x"), FormatError);
    CHECK_THROWS_AS(Domain::parse("complex"), FormatError);
    CHECK_THROWS_AS(Domain::floating(0.0), PreconditionError);
    CHECK_THROWS_AS(Domain::floating(1.5), PreconditionError);
}

TEST_CASE("rational text is always num/den") {
    CHECK(rational_to_string(Rational(3, 2)) == "3/2");
    CHECK(rational_to_string(Rational(4)) == "4/1");
    CHECK(rational_to_string(Rational(-6, 4)) == "-3/2");
    CHECK(rational_from_string("6/4") == Rational(3, 2));
    CHECK(rational_from_string("-5") == Rational(-5));
    CHECK_THROWS_AS(rational_from_string("1/0"), FormatError);
    CHECK_THROWS_AS(rational_from_string("abc"), FormatError);
}

TEST_CASE("rationals map into GF(p) only with invertible denominators") {
    CHECK(std::get<std::uint64_t>(gf(7).from_rational(Rational(1, 2))) == 4);
    CHECK(std::get<std::uint64_t>(gf(7).from_integer(-1)) == 6);
    CHECK_THROWS_AS(gf(7).from_rational(Rational(1, 7)), DomainMismatchError);
}

TEST_CASE("rank of a small rational matrix") {
    // Second row is twice the first.
    const auto m = Matrix::from_rows(Q, {{1, 2}, {2, 4}, {0, 1}});
    CHECK(rank(m) == 2);
    CHECK(rank(m) == oracle::rank(m));
    CHECK(rank(Matrix(Q, 3, 4)) == 0);
    CHECK(rank(Matrix::identity(gf(3), 5)) == 5);
}

TEST_CASE("inverse over GF(7)") {
    const auto d = Matrix::from_rows(gf(7), {{2, 0}, {0, 3}});
    CHECK(inverse(d) == Matrix::from_rows(gf(7), {{4, 0}, {0, 5}}));
    CHECK(d * inverse(d) == Matrix::identity(gf(7), 2));
    CHECK_THROWS_AS(inverse(Matrix::from_rows(gf(7), {{1, 2}, {2, 4}})), SingularMatrixError);
    CHECK_THROWS_AS(inverse(Matrix(gf(7), 2, 3)), DimensionError);
}

TEST_CASE("reduced row echelon form over GF(3)") {
    const auto m = Matrix::from_rows(gf(3), {{1, 1}, {1, 2}, {2, 3}});
    const auto e = reduced_row_echelon(m);
    CHECK(e.pivot_columns == std::vector<std::size_t>{0, 1});
    CHECK(row_space_basis(m) == Matrix::from_rows(gf(3), {{1, 0}, {0, 1}}));
    CHECK(e.reduced.block(2, 0, 1, 2).is_zero());
    CHECK(row_space_basis(Matrix(gf(3), 2, 3)).rows() == 0);
    CHECK(row_space_basis(Matrix(gf(3), 2, 3)).cols() == 3);
}

TEST_CASE("kronecker product layout") {
    const auto a = Matrix::from_rows(Q, {{1, 2}});
    const auto swap = Matrix::from_rows(Q, {{0, 1}, {1, 0}});
    CHECK(kron(a, swap) == Matrix::from_rows(Q, {{0, 1, 0, 2}, {1, 0, 2, 0}}));
    CHECK(kron(Matrix::identity(Q, 2), Matrix::identity(Q, 3)) == Matrix::identity(Q, 6));
    CHECK_THROWS_AS(kron(a, Matrix::identity(gf(5), 2)), DomainMismatchError);
}

TEST_CASE("linear solve") {
    // [[1,1],[1,-1]] x = [9,-1] -> x = [4,5]
    const auto a = Matrix::from_rows(Q, {{1, 1}, {1, -1}});
    CHECK(solve(a, Matrix::column_vector(Q, {9, -1})) == Matrix::column_vector(Q, {4, 5}));
    CHECK_THROWS_AS(solve(a, Matrix::column_vector(Q, {1, 2, 3})), DimensionError);
    CHECK_THROWS_AS(solve(Matrix::from_rows(Q, {{1, 1}, {1, 1}}), Matrix::column_vector(Q, {1, 1})),
                    SingularMatrixError);
}

TEST_CASE("float rank uses the relative threshold") {
    auto m = Matrix::from_rows(F, {{1, 0}, {0, 1}});
    m.set(1, 1, 1e-12);
    CHECK(rank(m) == 1);
    m.set(1, 1, 1e-6);
    CHECK(rank(m) == 2);
    // Scaling the whole matrix does not change the decision.
    CHECK(rank(m.scaled(1e8)) == 2);
    CHECK(rank(Matrix::from_rows(F, {{1, 2}, {2, 4}, {0, 1}})) == 2);
}

TEST_CASE("domain mismatches are rejected") {
    CHECK_THROWS_AS(Matrix::identity(Q, 2) * Matrix::identity(gf(5), 2), DomainMismatchError);
    CHECK_THROWS_AS(Matrix::identity(F, 2).convert_to(Q), DomainMismatchError);
    CHECK_THROWS_AS(Matrix::from_rows(Q, {{1, 2}}) * Matrix::from_rows(Q, {{1, 2}}), DimensionError);
}

TEST_CASE("conversion keeps values") {
    const auto m = Matrix::from_rows(Q, {{1, -2}, {3, 4}});
    CHECK(m.convert_to(gf(5)) == Matrix::from_rows(gf(5), {{1, 3}, {3, 4}}));
    CHECK(m.convert_to(F).approx(0, 1) == doctest::Approx(-2.0));
}

TEST_CASE("rank agrees with the minor oracle on random small matrices") {
    Sampler s(11);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + s.uniform(0, 3);
        const std::size_t c = 1 + s.uniform(0, 3);
        for (const auto& d : {gf(2), gf(3), gf(5), Q}) {
            auto m = s.matrix(d, r, c);
            if (t % 3 == 0 && r > 1) {
                // plant a dependent row
                for (std::size_t j = 0; j < c; ++j) m.set(r - 1, j, m.at(0, j));
            }
            CHECK(rank(m) == oracle::rank(m));
        }
    }
}

TEST_CASE("inverse exists exactly when the cofactor determinant is nonzero") {
    Sampler s(12);
    for (int t = 0; t < 80; ++t) {
        const std::size_t n = 1 + s.uniform(0, 3);
        const auto d = gf(3);
        const auto m = s.matrix(d, n, n);
        const bool invertible = !oracle::vanishes(oracle::determinant(oracle::to_grid(m)), 3);
        if (invertible) {
            CHECK(m * inverse(m) == Matrix::identity(d, n));
        } else {
            CHECK_THROWS_AS(inverse(m), SingularMatrixError);
        }
    }
}

TEST_CASE("gaussian binomial counts subspaces") {
    CHECK(gaussian_binomial(5, 2, 1) == 6);
    CHECK(gaussian_binomial(2, 4, 2) == 35);
    CHECK(gaussian_binomial(3, 3, 0) == 1);
    CHECK(column_space_representatives(gf(5), 2, 1).size() == 6);
    CHECK(column_space_representatives(gf(2), 4, 2).size() == 35);
}

TEST_CASE("subspace representatives are distinct canonical forms") {
    const auto reps = column_space_representatives(gf(3), 3, 2);
    REQUIRE(reps.size() == 13);
    for (std::size_t a = 0; a < reps.size(); ++a) {
        CHECK(canonical_column_space(reps[a]) == reps[a]);
        CHECK(rank(reps[a]) == 2);
        for (std::size_t b = a + 1; b < reps.size(); ++b) {
            CHECK(rank(Matrix::hstack(std::vector<Matrix>{reps[a], reps[b]})) == 3);
        }
    }
}

TEST_CASE("tuple search tie-breaks lexicographically and ignores job count") {
    // score = (t0 + t1) mod 3, infeasible when t0 == t1
    const TupleScore score = [](std::span<const std::uint32_t> t) -> std::optional<std::size_t> {
        if (t[0] == t[1]) return std::nullopt;
        return (t[0] + t[1]) % 3;
    };
    const auto one = exhaustive_tuple_search(4, 2, score, 1, true);
    const auto many = exhaustive_tuple_search(4, 2, score, 3, true);
    CHECK(one.best == Tuple{0, 3});
    CHECK(one.best_score == 0);
    CHECK(one.evaluated == 16);
    CHECK(one.feasible == 12);
    CHECK(many.best == one.best);
    CHECK(many.optimal == one.optimal);
    CHECK(one.optimal == std::vector<Tuple>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
}
