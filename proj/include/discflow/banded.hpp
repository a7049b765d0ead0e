#pragma once

#include <complex>
#include <vector>

namespace discflow {

using cplx = std::complex<double>;

// Complex band matrix in LAPACK band storage, LU-factored once and reused.
class BandedComplex {
 public:
  BandedComplex(int n, int kl, int ku);

  int size() const { return n_; }
  cplx& at(int i, int j);
  void add(int i, int j, cplx v) { at(i, j) += v; }
  void clear_row(int i);

  void factor();
  double rcond() const { return rcond_; }
  std::vector<cplx> solve(std::vector<cplx> rhs) const;

 private:
  int n_, kl_, ku_, ldab_;
  std::vector<cplx> ab_;
  std::vector<int> ipiv_;
  bool factored_ = false;
  double rcond_ = 0.0;
};

// Dense complex LU (column-major storage internally).
class DenseComplexLU {
 public:
  DenseComplexLU() = default;
  // Row-major input.
  DenseComplexLU(int n, const std::vector<cplx>& a_row_major);

  int size() const { return n_; }
  double rcond() const { return rcond_; }
  std::vector<cplx> solve(std::vector<cplx> rhs) const;

 private:
  int n_ = 0;
  std::vector<cplx> lu_;
  std::vector<int> ipiv_;
  double rcond_ = 0.0;
};

}  // namespace discflow
