// Identity catalog: every local, fusion, and transfer-level identity as a
// named check producing a residual record.
#pragma once

#include <string>

#include "qd3/chain.hpp"

namespace qd3 {

struct ResidualRecord {
  std::string check_id;
  std::string params_digest;
  std::vector<cplx> sample_points;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string diagnostics;
};

ResidualRecord make_record(std::string check_id, const ModelParams& p,
                           std::vector<cplx> sample_points, double residual,
                           double threshold, std::string diagnostics = "");

std::string params_digest(const ModelParams& p);

// Section 3/5/6/7 pointwise identities: regularity, unitarity, crossing
// unitarity, crossing relations, YBE families, reflection equations, twists.
std::vector<ResidualRecord> check_local(const ValidatedParams& vp, int n_samples);

// Degeneration points: ranks and projector-image subspace angles.
std::vector<ResidualRecord> check_degenerations(const ValidatedParams& vp);

// R-matrix fusion identities.
std::vector<ResidualRecord> check_fusion_r(const ValidatedParams& vp, int n_samples);

// K-matrix fusion identities.
std::vector<ResidualRecord> check_fusion_k(const ValidatedParams& vp, int n_samples);

// Transfer-level identities: commutativity, crossing, the t+/t- link, quantum
// determinant, and the three fused transfer identities. Requires N <= 3.
std::vector<ResidualRecord> check_transfer(const ValidatedParams& vp);

nlohmann::json records_to_json(const std::vector<ResidualRecord>& records);

bool all_passed(const std::vector<ResidualRecord>& records);

}  // namespace qd3
