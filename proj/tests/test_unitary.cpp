#include <doctest.h>

#include <cmath>

#include "core/unitary.hpp"

using namespace qforge;

TEST_CASE("dft entries") {
  CHECK(dft(1)(0, 0) == Complex(1.0, 0.0));

  Matrix u2 = dft(2);
  double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(u2(0, 0) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(u2(1, 1) - Complex(-r, 0)) < 1e-12);

  Matrix u4 = dft(4);
  CHECK(std::abs(u4(1, 1) - Complex(0, 0.5)) < 1e-12);
  CHECK(std::abs(u4(2, 2) - Complex(0.5, 0)) < 1e-12);

  CHECK_THROWS_AS(dft(0), std::invalid_argument);
}

TEST_CASE("dft is unitary and symmetric") {
  for (int m : {1, 2, 3, 5, 8, 25}) {
    Matrix u = dft(m);
    CHECK(is_unitary(u));
    CHECK((u - u.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("beam splitter") {
  CHECK((beam_splitter(1.0) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  Matrix swap = beam_splitter(0.0);
  CHECK(std::abs(swap(0, 1) - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(swap(0, 0)) < 1e-12);

  Matrix half = beam_splitter(0.5);
  double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(half(0, 0) - Complex(r, 0)) < 1e-12);
  CHECK(std::abs(half(1, 0) - Complex(0, r)) < 1e-12);
  CHECK(is_unitary(half));

  CHECK_THROWS_AS(beam_splitter(1.5), std::invalid_argument);
}

TEST_CASE("direct sum and embed") {
  Matrix i5 = direct_sum({Matrix::Identity(2, 2), Matrix::Identity(3, 3)});
  CHECK((i5 - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);

  Matrix bs = beam_splitter(0.3);
  Matrix embedded = embed(bs, {1, 3}, 4);
  CHECK(is_unitary(embedded));
  CHECK(embedded(0, 0) == Complex(1.0, 0.0));
  CHECK(embedded(1, 3) == bs(0, 1));
  CHECK(embedded(3, 1) == bs(1, 0));
  CHECK_THROWS_AS(embed(bs, {1, 1}, 4), std::invalid_argument);
}

TEST_CASE("interleave permutation") {
  Matrix p = interleave_permutation(2, 2);
  // swaps the middle two of four modes
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1;
  expected(2, 1) = expected(1, 2) = 1;
  CHECK((p - expected).cwiseAbs().maxCoeff() == 0.0);

  for (auto [a, b] : {std::pair{2, 3}, {3, 2}, {4, 5}}) {
    Matrix q = interleave_permutation(a, b);
    CHECK((q * q.transpose() - Matrix::Identity(a * b, a * b)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Hadamard variants") {
  CHECK((hadamard_variant(2, HadamardVariant::A) - dft(4)).cwiseAbs().maxCoeff() < 1e-12);

  // complex Hadamard: all entry moduli 1/sqrt(2d)
  for (auto variant : {HadamardVariant::A, HadamardVariant::B, HadamardVariant::C}) {
    for (int d : {2, 3}) {
      Matrix h = hadamard_variant(d, variant);
      CHECK(is_unitary(h));
      double target = 1.0 / std::sqrt(2.0 * d);
      CHECK((h.cwiseAbs() - Eigen::MatrixXd::Constant(2 * d, 2 * d, target))
                .cwiseAbs()
                .maxCoeff() < 1e-10);
    }
  }

  // explicit composition for d=2, variant B
  Matrix manual =
      direct_sum({dft(2), dft(2)}) * interleave_permutation(2, 2) * direct_sum({dft(2), dft(2)});
  CHECK((hadamard_variant(2, HadamardVariant::B) - manual).cwiseAbs().maxCoeff() < 1e-12);
}
