#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "tncost/rational.hpp"

namespace tncost {

/// Schmidt coefficients of a bipartition, descending, with squares summing
/// to one. An unnormalized spectrum is rejected rather than silently
/// renormalized.
class SchmidtSpectrum {
 public:
  static constexpr double kNormTolerance = 1e-12;

  explicit SchmidtSpectrum(std::vector<double> lambdas)
      : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw InputError("empty Schmidt spectrum");
    double norm = 0.0;
    for (std::size_t i = 0; i < lambdas_.size(); ++i) {
      if (lambdas_[i] < 0.0)
        throw InputError("Schmidt coefficients must be nonnegative");
      if (i > 0 && lambdas_[i] > lambdas_[i - 1] + 1e-15)
        throw InputError("Schmidt coefficients must be descending");
      norm += lambdas_[i] * lambdas_[i];
    }
    if (std::abs(norm - 1.0) > kNormTolerance)
      throw InputError("Schmidt spectrum is not normalized: sum lambda^2 = " +
                       std::to_string(norm));
  }

  /// Convenience: construct from squared coefficients (probabilities).
  static SchmidtSpectrum from_squares(std::vector<double> squares) {
    std::sort(squares.begin(), squares.end(), std::greater<double>());
    std::vector<double> lambdas(squares.size());
    for (std::size_t i = 0; i < squares.size(); ++i) {
      if (squares[i] < 0.0) throw InputError("negative squared coefficient");
      lambdas[i] = std::sqrt(squares[i]);
    }
    return SchmidtSpectrum(std::move(lambdas));
  }

  static SchmidtSpectrum uniform(std::size_t m) {
    return from_squares(std::vector<double>(m, 1.0 / static_cast<double>(m)));
  }

  const std::vector<double>& lambdas() const { return lambdas_; }
  std::size_t rank() const { return lambdas_.size(); }

 private:
  std::vector<double> lambdas_;
};

/// Renyi entanglement entropy S_alpha = ln(sum_u lambda_u^(2 alpha))/(1-alpha).
/// alpha = 1 is the von Neumann limit -sum lambda^2 ln lambda^2, with the
/// convention 0 ln 0 = 0.
inline double renyi_entropy(const SchmidtSpectrum& spectrum, double alpha) {
  if (!(alpha > 0.0)) throw InputError("Renyi order alpha must be positive");
  if (alpha == 1.0) {
    double s = 0.0;
    for (const double l : spectrum.lambdas()) {
      const double p = l * l;
      if (p > 0.0) s -= p * std::log(p);
    }
    return s;
  }
  double z = 0.0;
  for (const double l : spectrum.lambdas()) {
    const double p = l * l;
    if (p > 0.0) z += std::pow(p, alpha);
  }
  return std::log(z) / (1.0 - alpha);
}

/// Smallest rank M whose optimal truncation (keep the M largest
/// coefficients) reaches discarded weight <= delta.
inline std::size_t min_rank_for_accuracy(const SchmidtSpectrum& spectrum,
                                         double delta) {
  if (!(delta >= 0.0 && delta < 1.0))
    throw InputError("accuracy delta must lie in [0,1)");
  const auto& l = spectrum.lambdas();
  std::vector<double> tail(l.size() + 1, 0.0);
  for (std::size_t i = l.size(); i-- > 0;)
    tail[i] = tail[i + 1] + l[i] * l[i];
  for (std::size_t m = 0; m <= l.size(); ++m)
    if (tail[m] <= delta) return m;
  return l.size();
}

/// Lower bound on the bond dimension needed for approximation accuracy
/// delta: e^(S_at) * (1-delta)^(at/(at-1)), valid for Renyi order at > 1.
inline double bond_lower_bound(const SchmidtSpectrum& spectrum,
                               double alpha_tilde, double delta) {
  if (!(alpha_tilde > 1.0))
    throw InputError("lower bound requires alpha > 1");
  if (!(delta >= 0.0 && delta < 1.0))
    throw InputError("accuracy delta must lie in [0,1)");
  const double s = renyi_entropy(spectrum, alpha_tilde);
  return std::exp(s) *
         std::pow(1.0 - delta, alpha_tilde / (alpha_tilde - 1.0));
}

/// Upper bound on the bond dimension sufficient for accuracy delta over a
/// network with n_sites sites:
/// e^(S_a) * ((N-1)/delta)^(a/(1-a)) + 1, valid for 0 < a < 1.
inline double bond_upper_bound(const SchmidtSpectrum& spectrum, double alpha,
                               double delta, std::size_t n_sites) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InputError("upper bound requires 0 < alpha < 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw InputError("accuracy delta must lie in (0,1)");
  if (n_sites < 2) throw InputError("need at least two sites");
  const double s = renyi_entropy(spectrum, alpha);
  const double n1 = static_cast<double>(n_sites - 1);
  return std::exp(s) * std::pow(n1 / delta, alpha / (1.0 - alpha)) + 1.0;
}

/// Parses a plain-text spectrum: one nonnegative lambda per line, '#'
/// starts a comment, blank lines ignored. Values are sorted descending.
inline SchmidtSpectrum parse_spectrum(std::istream& in) {
  std::vector<double> lambdas;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v;
    if (ls >> v) {
      lambdas.push_back(v);
      std::string rest;
      if (ls >> rest)
        throw InputError("expected one value per line, got extra '" + rest +
                         "'");
    }
  }
  if (lambdas.empty()) throw InputError("spectrum file contains no values");
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  return SchmidtSpectrum(std::move(lambdas));
}

}  // namespace tncost
