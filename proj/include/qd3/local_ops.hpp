// Local matrices of the model: vectorial R, boundary K / K-bar, twists,
// fused R and K families, spinorial R, projectors, S / S-bar transforms.
#pragma once

#include <stdexcept>

#include "qd3/la.hpp"
#include "qd3/params.hpp"

namespace qd3 {

struct BranchCut : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Singular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- scalar weights --------------------------------------------------------
namespace weights {

// vectorial weights (entries of the 36x36 R); order matches tables::R_VECTOR
// [a, b, e, g, gb, d, d1, d2, db, db1, db2, g1, g2, g3, gb1, gb2, gb3]
std::array<cplx, 17> vectorial(cplx u, cplx eta);

// fused weights [a1, b1, e1, e2, e3, e4] for R^(+/-)
std::array<cplx, 6> fused(cplx u, cplx eta);

// [r1, r2, r3, r4, r5, rb3, rb4, rb5] for R^(+-)
std::array<cplx, 8> pm(cplx u, cplx eta);

// [a2, b2, e5, e6] for the spinorial R
std::array<cplx, 4> spinorial(cplx u, cplx eta);

cplx a(cplx u, cplx eta);   // 2 sinh(u/2-2eta) sinh(u/2-4eta)
cplx b(cplx u, cplx eta);   // 2 sinh(u/2)      sinh(u/2-4eta)
cplx e(cplx u, cplx eta);   // 2 sinh(u/2)      sinh(u/2-2eta)
cplx a1(cplx u, cplx eta);  // sinh((u-6eta)/2)
cplx b1(cplx u, cplx eta);  // sinh((u-2eta)/2)

// boundary scalars; i in 0..4
cplx h(int i, cplx u, cplx eta, const BoundaryParams& p);
// h~_i(u) = -h_i(u) with the primed parameters
cplx h_tilde(int i, cplx u, cplx eta, const BoundaryParams& primed);
// k1, k2 entries of K^(-)
cplx k1(cplx u, cplx eta, const BoundaryParams& p);
cplx k2(cplx u, cplx eta, const BoundaryParams& p);

cplx rho1(cplx u, cplx eta);     // a(u) a(-u)
cplx rho_s(cplx u, cplx eta);    // a1(u) a1(-u)
cplx rho_ss(cplx u, cplx eta);   // -sinh((u-4eta)/2) sinh((u-12eta)/2)
cplx rho0t(cplx u, cplx eta);    // sinh((u+4eta)/2) sinh((u-8eta)/2)
cplx f_bar(cplx u, cplx eta);    // -sinh(2eta) sinh(u-8eta)

}  // namespace weights

// ---- local matrices --------------------------------------------------------

Mat r_vector(cplx u, cplx eta);                                  // [6,6]
Mat k_matrix(cplx u, cplx eta, const BoundaryParams& p);         // [6]
Mat k_bar(cplx u, cplx eta, const BoundaryParams& primed);       // [6], via mapping

Mat twist_M(cplx eta);     // diag(e^{8eta},e^{4eta},1,1,e^{-4eta},e^{-8eta})
Mat twist_V(cplx eta);     // 6x6 antidiagonal, V^2 = I, V^t V = M
Mat twist_Mbar(cplx eta);  // diag(e^{6eta},e^{2eta},e^{-2eta},e^{-6eta})
Mat twist_Vbar(cplx eta);  // 4x4 antidiagonal, Vb^2 = -I, Vb^t Vb = Mbar
Mat twist_W();             // diag(1,-1,1,-1,1,-1)
Mat twist_St();            // diag(1,-1,1,-1)

Mat r_plus(cplx u, cplx eta);   // [4,6]
Mat r_minus(cplx u, cplx eta);  // [4,6]
Mat r_pm(cplx u, cplx eta);     // [4,4]
Mat r_mp(cplx u, cplx eta);     // full transpose of r_pm
Mat r_spinorial(cplx u, cplx eta);  // [4,4]

Mat k_plus_fused(cplx u, cplx eta, const BoundaryParams& p);   // [4]
Mat k_minus_fused(cplx u, cplx eta, const BoundaryParams& p);  // [4]
Mat k_bar_fused(int sign, cplx u, cplx eta, const BoundaryParams& primed);  // via mapping

enum class ProjName { P1, P16, Pplus, Pminus, P6 };
enum class ProjSide { s12, s21 };

// Named projector with its explicit basis. P1/P16 live on [6,6]; Pplus/Pminus
// on [4,6] for side 12 and on the eta -> -eta swapped-ket convention
// (re-expressed on [4,6]) for side 21; P6 on [4,4].
Projector projector(ProjName name, ProjSide side, cplx eta);

Mat s_transform(cplx eta);      // 16x16
Mat s_bar_transform(cplx eta);  // -S R^(-+)(0) / sinh(4 eta)

// Dump a matrix as JSON array-of-arrays of [re,im] pairs.
nlohmann::json matrix_to_json(const Mat& m);

}  // namespace qd3
