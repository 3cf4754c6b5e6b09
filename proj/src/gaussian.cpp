#include "halfspace/gaussian.hpp"

#include "halfspace/parallel.hpp"

#include <unsupported/Eigen/FFT>

#include <complex>
#include <numbers>

namespace halfspace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroModeTolerance = 1e-12;

int sign_of(double value, double tolerance) {
  if (value > tolerance) return 1;
  if (value < -tolerance) return -1;
  return 0;
}

// First row of the circulant F diag(values) F^dagger, symmetrised.
Eigen::VectorXd circulant_row(const Eigen::ArrayXd& values) {
  const Eigen::Index n = values.size();
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(values.data(), values.data() + n);
  std::vector<std::complex<double>> out;
  fft.inv(out, in);
  Eigen::VectorXd row(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const Eigen::Index mirror = (n - m) % n;
    row(m) = 0.5 * (out[m].real() + out[mirror].real());
  }
  return row;
}

// Bisection for a strict sign change of f on [lo, hi].
template <typename F>
double bisect(F&& f, double lo, double hi, int sign_lo) {
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double value = f(mid);
    if (value == 0.0) return mid;
    if ((value > 0.0 ? 1 : -1) == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double wrap(double phi) {
  phi = std::fmod(phi, kTwoPi);
  return phi < 0.0 ? phi + kTwoPi : phi;
}

// argmin and min of |f| on [lo, hi] by golden section.
template <typename F>
std::pair<double, double> golden_abs_minimum(F&& f, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = std::abs(f(x1));
  double f2 = std::abs(f(x2));
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = std::abs(f(x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = std::abs(f(x2));
    }
  }
  return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace

CovariancePair circulant_covariance(const Eigen::ArrayXd& spectrum) {
  const Eigen::Index n = spectrum.size();
  if (n < 1) throw std::invalid_argument("circulant_covariance: empty spectrum");
  for (Eigen::Index k = 0; k < n; ++k) {
    if (spectrum(k) <= 0.0) {
      if (std::abs(spectrum(k)) <= kZeroModeTolerance) {
        throw ContractViolation(
            "gaussian_core", "positive coupling spectrum",
            "critical zero mode at k = " + std::to_string(k) +
                "; pass a mass regularizer > 0");
      }
      throw ContractViolation("gaussian_core", "positive coupling spectrum",
                              "negative eigenvalue " +
                                  std::to_string(spectrum(k)) + " at k = " +
                                  std::to_string(k));
    }
  }
  CovariancePair state;
  state.x = circulant_matrix<double>(0.5 * circulant_row(spectrum.rsqrt()));
  state.p = circulant_matrix<double>(0.5 * circulant_row(spectrum.sqrt()));
  return state;
}

CovariancePair boson_ground_covariance(const ChainModel& chain, int sites,
                                       double mass_regularizer) {
  if (sites < 1) throw std::invalid_argument("chain needs at least one site");
  if (mass_regularizer < 0.0) {
    throw std::invalid_argument("mass regularizer must be >= 0");
  }
  Eigen::ArrayXd spectrum = chain.sample(sites);
  spectrum += mass_regularizer * mass_regularizer;
  return circulant_covariance(spectrum);
}

CovariancePair restrict(const CovariancePair& state, Eigen::Index first,
                        Eigen::Index count) {
  if (first < 0 || count < 1 || first + count > state.sites()) {
    throw std::invalid_argument("restrict: region outside the chain");
  }
  return {state.x.block(first, first, count, count),
          state.p.block(first, first, count, count)};
}

double boson_mode_entropy(double mu) {
  if (mu < 0.5 - kSpectrumHardLimit) {
    throw ContractViolation("gaussian_core", "symplectic eigenvalue >= 1/2",
                            "mu = " + std::to_string(mu));
  }
  mu = std::max(mu, 0.5);
  const double plus = mu + 0.5;
  const double minus = mu - 0.5;
  const double lower = minus > 0.0 ? minus * std::log2(minus) : 0.0;
  return plus * std::log2(plus) - lower;
}

double boson_entropy(const SpectrumResult& spectrum) {
  CompensatedSum sum;
  for (double mu : spectrum.values) sum.add(boson_mode_entropy(mu));
  return sum.value();
}

double log_negativity(const CovariancePair& state, Eigen::Index split) {
  const Eigen::Index n = state.sites();
  if (split < 1 || split >= n) {
    throw std::invalid_argument("log_negativity: split must lie in [1, N)");
  }
  Eigen::MatrixXd transposed = state.p;
  transposed.topRightCorner(split, n - split) *= -1.0;
  transposed.bottomLeftCorner(n - split, split) *= -1.0;
  SpectrumResult spectrum;
  try {
    spectrum = symplectic_spectrum(state.x, transposed);
  } catch (const ContractViolation& e) {
    throw ContractViolation("gaussian_core", "regular partial transpose",
                            e.what());
  }
  CompensatedSum sum;
  for (double mu : spectrum.values) {
    sum.add(std::max(0.0, -std::log2(2.0 * mu)));
  }
  return sum.value();
}

SignStructure symbol_sign_structure(const ChainModel& chain, int samples) {
  if (samples < 8) throw std::invalid_argument("need at least 8 samples");
  const double scale = std::max(chain.scale(), 1e-300);
  const double tolerance = 1e-13 * scale;
  const double step = kTwoPi / samples;
  const Eigen::ArrayXd values = chain.sample(samples);

  std::vector<int> signs(samples);
  int zero_samples = 0;
  for (int k = 0; k < samples; ++k) {
    signs[k] = sign_of(values(k), tolerance);
    zero_samples += signs[k] == 0;
  }
  if (zero_samples == samples || zero_samples > 2 * std::max(chain.range(), 0)) {
    throw ContractViolation("gaussian_core", "non-degenerate symbol",
                            "dispersion vanishes on an interval");
  }

  SignStructure out;
  int start = 0;
  while (signs[start] == 0) ++start;
  int previous = start;
  std::vector<int> pending;
  for (int t = 1; t <= samples; ++t) {
    const int k = (start + t) % samples;
    if (signs[k] == 0) {
      pending.push_back(k);
      continue;
    }
    if (signs[k] != signs[previous]) {
      const double lo = step * (start + t - 1 - static_cast<int>(pending.size()));
      const double hi = step * (start + t);
      out.zeros.push_back(wrap(bisect(chain, lo, hi, signs[previous])));
    } else {
      for (int z : pending) out.tangential.push_back(step * z);
    }
    pending.clear();
    previous = k;
  }

  // Touching zeros that fall between samples: local minima of |lambda|
  // between same-sign neighbours.
  for (int k = 0; k < samples; ++k) {
    const int left = (k + samples - 1) % samples;
    const int right = (k + 1) % samples;
    const double here = std::abs(values(k));
    if (signs[k] == 0 || signs[left] != signs[k] || signs[right] != signs[k]) {
      continue;
    }
    if (here > 1e-4 * scale || here > std::abs(values(left)) ||
        here > std::abs(values(right))) {
      continue;
    }
    const auto [where, depth] =
        golden_abs_minimum(chain, step * (k - 1), step * (k + 1));
    if (depth <= 1e-10 * scale) out.tangential.push_back(wrap(where));
  }

  std::sort(out.zeros.begin(), out.zeros.end());
  std::sort(out.tangential.begin(), out.tangential.end());
  if (out.zeros.empty()) {
    out.constant_sign = signs[start];
    return out;
  }
  const std::size_t n = out.zeros.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = out.zeros[i];
    const double b = i + 1 < n ? out.zeros[i + 1] : out.zeros[0] + kTwoPi;
    double probe = chain(a + 0.5 * (b - a));
    if (std::abs(probe) <= tolerance) probe = chain(a + (b - a) / 3.0);
    out.arc_signs.push_back(probe > 0.0 ? 1 : -1);
  }
  return out;
}

Eigen::VectorXd symbol_coefficients(const SignStructure& structure, int count) {
  if (count < 1) throw std::invalid_argument("need at least one coefficient");
  Eigen::VectorXd t = Eigen::VectorXd::Zero(count);
  if (structure.zeros.empty()) {
    t(0) = structure.constant_sign;
    return t;
  }
  const std::size_t n = structure.zeros.size();
  for (int l = 0; l < count; ++l) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = structure.zeros[i];
      const double b =
          i + 1 < n ? structure.zeros[i + 1] : structure.zeros[0] + kTwoPi;
      const double s = structure.arc_signs[i];
      if (l == 0) {
        sum.add(s * (b - a) / kTwoPi);
      } else {
        sum.add(s * std::cos(0.5 * l * (a + b)) * std::sin(0.5 * l * (b - a)) /
                (std::numbers::pi * l));
      }
    }
    t(l) = sum.value();
  }
  return t;
}

ToeplitzCorrelation symbol_coefficients(const ChainModel& chain,
                                        SymbolMode mode, int count, int sites) {
  if (count < 1) throw std::invalid_argument("need at least one coefficient");
  ToeplitzCorrelation out;
  out.mode = mode;
  if (mode == SymbolMode::integral) {
    out.coefficients = symbol_coefficients(symbol_sign_structure(chain), count);
    return out;
  }

  if (sites < 1 || count > sites) {
    throw std::invalid_argument(
        "finite-N symbol needs sites >= 1 and count <= sites");
  }
  out.sites = sites;
  const Eigen::ArrayXd values = chain.sample(sites);
  const double tolerance = 1e-13 * std::max(chain.scale(), 1e-300);
  Eigen::ArrayXd symbol(sites);
  for (int k = 0; k < sites; ++k) {
    symbol(k) = values(k) < -tolerance ? -1.0 : 1.0;
  }
  out.coefficients.resize(count);
  for (int l = 0; l < count; ++l) {
    CompensatedSum sum;
    for (int k = 0; k < sites; ++k) {
      long long phase = (static_cast<long long>(k) * l) % sites;
      phase = std::min<long long>(phase, sites - phase);
      sum.add(symbol(k) * std::cos(kTwoPi * phase / sites));
    }
    out.coefficients(l) = sum.value() / sites;
  }
  return out;
}

SpectrumResult correlation_spectrum(const ToeplitzCorrelation& correlation,
                                    Eigen::Index size) {
  if (size < 1 || size > correlation.size()) {
    throw std::invalid_argument("correlation_spectrum: invalid block size");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      correlation.matrix(size), Eigen::EigenvaluesOnly);
  SpectrumResult result;
  result.kind = SpectrumKind::orthogonal;
  result.region = size;
  result.values = solver.eigenvalues().reverse();
  for (double& nu : result.values) {
    if (std::abs(nu) > 1.0 + kSpectrumHardLimit) {
      throw ContractViolation("gaussian_core", "correlation spectrum in [-1, 1]",
                              "eigenvalue " + std::to_string(nu));
    }
    nu = std::clamp(nu, -1.0, 1.0);
  }
  return result;
}

double binary_entropy(double x) {
  const double y = 1.0 - x;
  const double a = x > 0.0 ? -x * std::log2(x) : 0.0;
  const double b = y > 0.0 ? -y * std::log2(y) : 0.0;
  return a + b;
}

double fermion_entropy(const SpectrumResult& spectrum) {
  CompensatedSum sum;
  for (double nu : spectrum.values) {
    if (std::abs(nu) > 1.0 + kSpectrumHardLimit) {
      throw ContractViolation("gaussian_core", "correlation spectrum in [-1, 1]",
                              "eigenvalue " + std::to_string(nu));
    }
    nu = std::clamp(nu, -1.0, 1.0);
    // Both occupation numbers directly, so neither is formed as 1 - (tiny).
    const double up = 0.5 * (1.0 + nu);
    const double down = 0.5 * (1.0 - nu);
    sum.add((up > 0.0 ? -up * std::log2(up) : 0.0) +
            (down > 0.0 ? -down * std::log2(down) : 0.0));
  }
  return sum.value();
}

double fermion_entropy(const ToeplitzCorrelation& correlation,
                       Eigen::Index size) {
  return fermion_entropy(correlation_spectrum(correlation, size));
}

}  // namespace halfspace
