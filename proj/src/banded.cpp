#include "discflow/banded.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "discflow/errors.hpp"

namespace discflow {

namespace {

constexpr double kMinRcond = 1e-15;

[[noreturn]] void ill_conditioned(const char* what, double rcond) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s (reciprocal condition estimate %.3e)", what, rcond);
  throw Error(ErrorKind::IllConditioned, buf, rcond);
}

lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }
const lapack_complex_double* lp(const cplx* p) { return reinterpret_cast<const lapack_complex_double*>(p); }

}  // namespace

BandedComplex::BandedComplex(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ldab_) * n) {}

cplx& BandedComplex::at(int i, int j) {
  if (j - i > ku_ || i - j > kl_ || i < 0 || j < 0 || i >= n_ || j >= n_)
    throw Error(ErrorKind::Precondition, "band matrix entry outside the band");
  return ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) + static_cast<std::size_t>(j) * ldab_];
}

void BandedComplex::clear_row(int i) {
  for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) at(i, j) = 0.0;
}

void BandedComplex::factor() {
  double anorm = 0.0;
  for (int j = 0; j < n_; ++j) {
    double col = 0.0;
    for (int i = std::max(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i) col += std::abs(at(i, j));
    anorm = std::max(anorm, col);
  }
  ipiv_.assign(n_, 0);
  int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, lp(ab_.data()), ldab_, ipiv_.data());
  if (info > 0) ill_conditioned("band matrix is singular", 0.0);
  LAPACKE_zgbcon(LAPACK_COL_MAJOR, '1', n_, kl_, ku_, lp(ab_.data()), ldab_, ipiv_.data(), anorm, &rcond_);
  if (!(rcond_ > kMinRcond)) ill_conditioned("band matrix is numerically singular", rcond_);
  factored_ = true;
}

std::vector<cplx> BandedComplex::solve(std::vector<cplx> rhs) const {
  if (!factored_) throw Error(ErrorKind::Precondition, "band matrix used before factorization");
  LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, lp(ab_.data()), ldab_, ipiv_.data(),
                 lp(rhs.data()), n_);
  return rhs;
}

DenseComplexLU::DenseComplexLU(int n, const std::vector<cplx>& a) : n_(n), lu_(a.size()) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lu_[static_cast<std::size_t>(j) * n + i] = a[static_cast<std::size_t>(i) * n + j];
  double anorm = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += std::abs(lu_[static_cast<std::size_t>(j) * n + i]);
    anorm = std::max(anorm, col);
  }
  ipiv_.assign(n, 0);
  int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lp(lu_.data()), n, ipiv_.data());
  if (info > 0) ill_conditioned("dense matrix is singular", 0.0);
  LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, lp(lu_.data()), n, anorm, &rcond_);
  if (!(rcond_ > kMinRcond)) ill_conditioned("dense matrix is numerically singular", rcond_);
}

std::vector<cplx> DenseComplexLU::solve(std::vector<cplx> rhs) const {
  LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n_, 1, lp(lu_.data()), n_, ipiv_.data(), lp(rhs.data()), n_);
  return rhs;
}

}  // namespace discflow
