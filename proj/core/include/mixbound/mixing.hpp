#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mixbound/core.hpp"

namespace mixbound {

enum class EtaProvenance { Bound, Exact };

/// Strictly upper-triangular array of eta-mixing values or bounds,
/// 1-based positions, each entry tagged with its provenance.
class EtaMatrix {
 public:
  explicit EtaMatrix(std::size_t n);

  std::size_t n() const { return n_; }
  void set(std::size_t i, std::size_t j, double value, EtaProvenance prov);
  double value(std::size_t i, std::size_t j) const;
  EtaProvenance provenance(std::size_t i, std::size_t j) const;

 private:
  std::size_t slot(std::size_t i, std::size_t j) const;
  std::size_t n_;
  std::vector<double> values_;
  std::vector<EtaProvenance> prov_;
};

/// Upper-triangular mixing matrices with unit diagonal:
/// Delta_ij = eta_ij, Gamma_ij = sqrt(eta_ij).
struct MixingMatrices {
  Matrix delta;
  Matrix gamma;
};

MixingMatrices build_matrices(const EtaMatrix& eta);

/// l-infinity operator norm of Delta: max over rows of 1 + sum_{j>i} Delta_ij.
double delta_inf_norm(const MixingMatrices& m);

struct Gamma2Result {
  double value = 0.0;             // sqrt(lambda_max(Gamma^T Gamma))
  double gershgorin_upper = 0.0;  // sqrt(max row sum of Gamma^T Gamma)
  bool converged = false;
  int iterations = 0;
};

/// Power iteration on Gamma^T Gamma from the all-ones start vector until
/// successive Rayleigh quotients differ by less than tol. Non-convergence
/// within max_iter returns the last iterate with converged = false.
Gamma2Result gamma_2_norm(const MixingMatrices& m, double tol = 1e-10,
                          int max_iter = 10000);

// Concentration envelopes, raw formula values (display layers cap at 1).
// Each carries its own Lipschitz hypothesis; see README.

/// 2 exp(-2 n t^2), product measures, Lip(f) <= 1/n under Hamming.
double envelope_mcdiarmid(double t, std::size_t n);

/// 2 exp(-2n (t (1-theta) - sqrt(log 2 / 2n))^2), contracting chains,
/// median-centered. Below the applicability threshold
/// t (1-theta) >= sqrt(log 2 / 2n) the vacuous value 2 is returned.
double envelope_marton(double t, std::size_t n, double theta);

/// 2 exp(-t^2 / (2 ||Gamma||_2^2)), convex 1-Lipschitz (l2) f on [0,1]^n.
double envelope_samson(double t, double gamma2);

/// 2 exp(-t^2 / (2 ||Delta||_inf^2)), Lip(f) <= n^{-1/2} under Hamming.
double envelope_kontram(double t, double delta_inf);

/// One rendered envelope: raw values plus display capping.
struct EnvelopeColumn {
  std::string name;
  std::vector<double> raw;
};

struct EnvelopeTable {
  std::vector<double> ts;
  std::vector<EnvelopeColumn> columns;
};

}  // namespace mixbound
