#pragma once

#include <complex>

#include <Eigen/Dense>

namespace stirap {

using Complex = std::complex<double>;

/// Dimension of the simulation space: twelve single-excitation states plus two decay sinks.
inline constexpr int kDim = 14;

using Vector = Eigen::Matrix<Complex, kDim, 1>;
using Matrix = Eigen::Matrix<Complex, kDim, kDim>;
using RealMatrix = Eigen::Matrix<double, kDim, kDim>;

/// Probability amplitudes over the labeled basis.
class StateVector {
public:
    StateVector() : amplitudes_(Vector::Zero()) {}
    explicit StateVector(const Vector& amplitudes) : amplitudes_(amplitudes) {}

    /// Unit vector on basis index `index`.
    static StateVector basis(int index);

    const Vector& amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](int i) const { return amplitudes_(i); }

    double norm() const { return amplitudes_.norm(); }
    bool is_normalized(double tol = 1e-10) const { return std::abs(norm() - 1.0) <= tol; }
    StateVector normalized() const;

private:
    Vector amplitudes_;
};

/// Hermitian, trace-one density operator.
class DensityMatrix {
public:
    DensityMatrix() : elements_(Matrix::Zero()) {}
    explicit DensityMatrix(const Matrix& elements) : elements_(elements) {}

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed();

    const Matrix& elements() const noexcept { return elements_; }

    double trace() const { return elements_.trace().real(); }
    double hermiticity_defect() const { return (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;

    /// Throws ConfigError unless Hermitian to 1e-10, trace within 1e-8 of 1 and
    /// eigenvalues >= -1e-8.
    void validate() const;

private:
    Matrix elements_;
};

}  // namespace stirap
