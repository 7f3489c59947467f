// Dense complex tensor-leg toolkit on small multi-site spaces.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qd3 {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DuplicateSlot : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadSlot : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotCommuting : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IllConditionedBasis : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpaceLayout {
  std::vector<int> dims;  // leftmost = slot 0 (slowest index)

  int total() const {
    int t = 1;
    for (int d : dims) t *= d;
    return t;
  }
  int n_slots() const { return static_cast<int>(dims.size()); }
};

struct LabeledOperator {
  Mat m;
  SpaceLayout layout;
};

// relative Frobenius residual ||a-b|| / max(||a||,||b||,1e-300)
double rel_residual(const Mat& a, const Mat& b);

Mat kron(const Mat& a, const Mat& b);

// op acts on the product of target.dims at `slots` (in the given order, which
// may be non-adjacent or reversed); identity elsewhere.
Mat embed(const Mat& op, const std::vector<int>& slots, const SpaceLayout& target);

Mat partial_transpose(const Mat& m, int slot, const SpaceLayout& layout);
Mat partial_trace(const Mat& m, int slot, const SpaceLayout& layout);

// Permutation operator mapping d1 (x) d2 -> d2 (x) d1: P (a(x)b) = b(x)a.
Mat perm_op(int d1, int d2);

// Swap operator on two equal legs of a layout.
Mat permutation_op(const SpaceLayout& layout, int i, int j);

int numerical_rank(const Mat& m, double tol = 1e-8);

// || (I - U U^t_bilinear-projection) B || measured with orthonormal column
// spaces; returns the sin of the largest principal angle between col(A) and col(B).
double subspace_angle(const Mat& a, const Mat& b);

struct Projector {
  std::vector<Vec> basis;
  Mat matrix;  // sum_i |v_i><v_i| with the bilinear (transpose) pairing
  int rank = 0;

  Mat isometry() const;  // basis vectors as columns
};

Projector projector_from_basis(const std::vector<Vec>& basis);

struct EigenFamily {
  Mat basis;      // columns = common eigenvectors
  Mat basis_inv;
  std::vector<std::vector<cplx>> eigenvalues;  // [member][state]
  double basis_condition = 0.0;
};

// Common eigenbasis of a commuting family. Degeneracies are resolved by
// diagonalizing a random complex linear combination of all members (up to 5
// seed retries). Throws NotCommuting / IllConditionedBasis.
EigenFamily simultaneous_eigenbasis(const std::vector<Mat>& family, double tol,
                                    std::uint64_t seed = 12345);

}  // namespace qd3
