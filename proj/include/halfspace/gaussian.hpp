#pragma once

#include "halfspace/decouple.hpp"
#include "halfspace/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace halfspace {

// Spectra within this distance of a physical bound are clamped onto it;
// beyond kSpectrumHardLimit they are reported as contract violations.
inline constexpr double kSpectrumClampWindow = 1e-10;
inline constexpr double kSpectrumHardLimit = 1e-8;

/// Ground-state second moments of a bosonic chain. Vacuum convention:
/// x = p = identity / 2 for uncoupled unit oscillators, so a pure state has
/// all symplectic eigenvalues equal to 1/2.
struct CovariancePair {
  Eigen::MatrixXd x;
  Eigen::MatrixXd p;

  Eigen::Index sites() const noexcept { return x.rows(); }
};

enum class SpectrumKind { symplectic, orthogonal };

struct SpectrumResult {
  Eigen::VectorXd values;  // sorted descending
  SpectrumKind kind = SpectrumKind::symplectic;
  Eigen::Index region = 0;
};

/// Symmetric circulant matrix with first row `row` (row(m) == row(N-m)).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> circulant_matrix(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& row) {
  const Eigen::Index n = row.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = row((j - i + n) % n);
  }
  return out;
}

/// Symmetric Toeplitz matrix T_jk = t_{|j-k|}, of the given size.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> toeplitz_matrix(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& coefficients,
    Eigen::Index size) {
  if (size > coefficients.size()) {
    throw std::invalid_argument("toeplitz_matrix: not enough coefficients");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index i = 0; i < size; ++i) {
      out(i, j) = coefficients(i > j ? i - j : j - i);
    }
  }
  return out;
}

/// x = F diag(lambda^{-1/2}) F^dagger / 2, p = F diag(lambda^{1/2}) F^dagger / 2
/// for the cyclic coupling with eigenvalues `spectrum` at momenta 2 pi k / N.
/// The spectrum must be even (spectrum(k) == spectrum(N-k)) and positive.
CovariancePair circulant_covariance(const Eigen::ArrayXd& spectrum);

/// Ground state of the chain on `sites` sites with coupling spectrum
/// lambda + mass_regularizer^2.
CovariancePair boson_ground_covariance(const ChainModel& chain, int sites,
                                       double mass_regularizer);

/// Second moments of the sites [first, first + count).
CovariancePair restrict(const CovariancePair& state, Eigen::Index first,
                        Eigen::Index count);

/// mu_j = sqrt(eig(x p)), computed from the symmetric similarity transform
/// L^T x L with p = L L^T, so the spectrum is real and non-negative.
template <typename DerivedX, typename DerivedP>
SpectrumResult symplectic_spectrum(const Eigen::MatrixBase<DerivedX>& x,
                                   const Eigen::MatrixBase<DerivedP>& p) {
  using Matrix = Eigen::MatrixXd;
  if (x.rows() != x.cols() || p.rows() != p.cols() || x.rows() != p.rows()) {
    throw std::invalid_argument("symplectic_spectrum: x and p must be square "
                                "and of equal size");
  }
  const Eigen::LLT<Matrix> factor(p.template cast<double>());
  if (factor.info() != Eigen::Success) {
    throw ContractViolation("gaussian_core", "momentum block positive definite",
                            "Cholesky factorisation of p failed");
  }
  const Matrix& lower = factor.matrixL().toDenseMatrix();
  const Matrix product = lower.transpose() * x.template cast<double>() * lower;
  const Eigen::SelfAdjointEigenSolver<Matrix> solver(product,
                                                     Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  if (eigenvalues.size() > 0 && eigenvalues.minCoeff() <= 0.0) {
    throw ContractViolation("gaussian_core", "position block positive definite",
                            "x p has a non-positive eigenvalue");
  }
  SpectrumResult result;
  result.kind = SpectrumKind::symplectic;
  result.region = x.rows();
  result.values = eigenvalues.reverse().cwiseSqrt();
  return result;
}

/// S = sum_j g(mu_j) in bits, g(mu) = (mu+1/2)log2(mu+1/2) - (mu-1/2)log2(mu-1/2).
double boson_entropy(const SpectrumResult& spectrum);
double boson_mode_entropy(double mu);

/// E_N = sum_j max(0, -log2(2 mu~_j)) for the partial transpose that flips
/// the momenta of sites [split, N).
double log_negativity(const CovariancePair& state, Eigen::Index split);

/// Zero crossings and sign pattern of a chain dispersion on [0, 2 pi).
struct SignStructure {
  std::vector<double> zeros;        // sorted sign-change locations
  std::vector<int> arc_signs;       // sign on (zeros[i], zeros[i+1]), cyclic
  std::vector<double> tangential;   // touching zeros without sign change
  int constant_sign = 0;            // sign when there are no crossings
};

/// Scans `samples` equally spaced points, brackets every strict sign
/// change and bisects it to 1e-13. Throws when the dispersion vanishes on
/// more points than a non-zero trigonometric polynomial can.
SignStructure symbol_sign_structure(const ChainModel& chain, int samples = 4096);

enum class SymbolMode {
  integral,  // t_l = int_0^{2pi} sgn(lambda) cos(l phi) dphi / 2pi
  finite,    // t_l = (1/N) sum_k sgn(lambda_k) cos(2 pi k l / N)
};

/// Fourier coefficients t_0..t_{count-1} of the symbol sgn(lambda). In
/// finite mode the zero modes are counted as empty (sgn(0) = +1), which
/// selects one pure ground state out of a degenerate set.
struct ToeplitzCorrelation {
  Eigen::VectorXd coefficients;
  SymbolMode mode = SymbolMode::integral;
  int sites = 0;  // N for finite mode, 0 for the infinite chain

  Eigen::Index size() const noexcept { return coefficients.size(); }
  Eigen::MatrixXd matrix(Eigen::Index size) const {
    return toeplitz_matrix<double>(coefficients, size);
  }
  Eigen::MatrixXd matrix() const { return matrix(size()); }
};

ToeplitzCorrelation symbol_coefficients(const ChainModel& chain,
                                        SymbolMode mode, int count,
                                        int sites = 0);

/// Integral-mode coefficients from an explicit sign structure.
Eigen::VectorXd symbol_coefficients(const SignStructure& structure, int count);

/// Eigenvalues nu of the leading size x size block, clamped to [-1, 1].
SpectrumResult correlation_spectrum(const ToeplitzCorrelation& correlation,
                                    Eigen::Index size);

/// E_S = sum_j H((1 + nu_j) / 2) in bits.
double fermion_entropy(const SpectrumResult& spectrum);
double fermion_entropy(const ToeplitzCorrelation& correlation,
                       Eigen::Index size);

/// H(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
double binary_entropy(double x);

}  // namespace halfspace
