#include "mixbound/mixing.hpp"

#include <cmath>
#include <string>

namespace mixbound {

EtaMatrix::EtaMatrix(std::size_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("EtaMatrix needs n >= 1");
  const std::size_t count = n * (n - 1) / 2;
  values_.assign(count, 0.0);
  prov_.assign(count, EtaProvenance::Bound);
}

std::size_t EtaMatrix::slot(std::size_t i, std::size_t j) const {
  if (!(1 <= i && i < j && j <= n_))
    throw std::invalid_argument("EtaMatrix: need 1 <= i < j <= n");
  // Row-major over the strict upper triangle.
  const std::size_t before = (i - 1) * n_ - (i - 1) * i / 2;
  return before + (j - i - 1);
}

void EtaMatrix::set(std::size_t i, std::size_t j, double value, EtaProvenance prov) {
  if (!(value >= 0.0 && value <= 1.0))
    throw NumericError("eta entry (" + std::to_string(i) + "," + std::to_string(j) +
                       ") = " + std::to_string(value) + " outside [0,1]");
  const std::size_t s = slot(i, j);
  values_[s] = value;
  prov_[s] = prov;
}

double EtaMatrix::value(std::size_t i, std::size_t j) const { return values_[slot(i, j)]; }

EtaProvenance EtaMatrix::provenance(std::size_t i, std::size_t j) const {
  return prov_[slot(i, j)];
}

MixingMatrices build_matrices(const EtaMatrix& eta) {
  const std::size_t n = eta.n();
  MixingMatrices m{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 1; i <= n; ++i) {
    m.delta(i - 1, i - 1) = 1.0;
    m.gamma(i - 1, i - 1) = 1.0;
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double v = eta.value(i, j);
      if (!(v >= 0.0 && v <= 1.0))
        throw NumericError("eta entry outside [0,1]");
      m.delta(i - 1, j - 1) = v;
      m.gamma(i - 1, j - 1) = std::sqrt(v);
    }
  }
  return m;
}

double delta_inf_norm(const MixingMatrices& m) {
  // The diagonal is 1 by definition, so each row sum reads 1 + sum_{j>i}.
  const std::size_t n = m.delta.rows;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) row += m.delta(i, j);
    worst = std::max(worst, row);
  }
  return worst;
}

Gamma2Result gamma_2_norm(const MixingMatrices& m, double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  const std::size_t n = m.gamma.rows;

  // M = Gamma^T Gamma, symmetric positive definite, entrywise nonnegative.
  Matrix gtg(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += m.gamma(k, i) * m.gamma(k, j);
      gtg(i, j) = s;
    }

  double max_row = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += gtg(i, j);
    max_row = std::max(max_row, row);
  }

  Gamma2Result out;
  out.gershgorin_upper = std::sqrt(max_row);

  std::vector<double> v(n, 1.0), w(n);
  double rayleigh_prev = -1.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += gtg(i, j) * v[j];
      w[i] = s;
    }
    double vv = 0.0, vw = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      vv += v[i] * v[i];
      vw += v[i] * w[i];
    }
    const double rayleigh = vw / vv;
    out.iterations = iter;
    out.value = std::sqrt(rayleigh);
    if (rayleigh_prev >= 0.0 && std::abs(rayleigh - rayleigh_prev) < tol) {
      out.converged = true;
      return out;
    }
    rayleigh_prev = rayleigh;
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  out.converged = false;
  return out;
}

double envelope_mcdiarmid(double t, std::size_t n) {
  if (t < 0.0 || n < 1) throw std::invalid_argument("need t >= 0 and n >= 1");
  return 2.0 * std::exp(-2.0 * static_cast<double>(n) * t * t);
}

double envelope_marton(double t, std::size_t n, double theta) {
  if (t < 0.0 || n < 1) throw std::invalid_argument("need t >= 0 and n >= 1");
  if (!(theta >= 0.0 && theta < 1.0))
    throw NumericError("Marton envelope requires 0 <= theta < 1");
  const double shift = std::sqrt(std::log(2.0) / (2.0 * static_cast<double>(n)));
  const double arg = t * (1.0 - theta) - shift;
  if (arg < 0.0) return 2.0;  // below the applicability threshold
  return 2.0 * std::exp(-2.0 * static_cast<double>(n) * arg * arg);
}

double envelope_samson(double t, double gamma2) {
  if (t < 0.0 || gamma2 < 1.0)
    throw std::invalid_argument("need t >= 0 and gamma2 >= 1");
  return 2.0 * std::exp(-t * t / (2.0 * gamma2 * gamma2));
}

double envelope_kontram(double t, double delta_inf) {
  if (t < 0.0 || delta_inf < 1.0)
    throw std::invalid_argument("need t >= 0 and delta_inf >= 1");
  return 2.0 * std::exp(-t * t / (2.0 * delta_inf * delta_inf));
}

}  // namespace mixbound
