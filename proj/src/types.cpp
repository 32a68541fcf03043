#include "stirap/types.hpp"

#include <cmath>
#include <sstream>

#include "stirap/errors.hpp"

namespace stirap {

StateVector StateVector::basis(int index) {
    if (index < 0 || index >= kDim) throw std::out_of_range("basis index out of range");
    Vector v = Vector::Zero();
    v(index) = 1.0;
    return StateVector(v);
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero or non-finite state vector");
    return StateVector(amplitudes_ / n);
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed() {
    return DensityMatrix(Matrix::Identity() / static_cast<double>(kDim));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(elements_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    std::ostringstream msg;
    if (const double d = hermiticity_defect(); d > 1e-10) {
        msg << "density matrix not Hermitian (defect " << d << ")";
        throw ConfigError(msg.str());
    }
    if (const double tr = trace(); std::abs(tr - 1.0) > 1e-8) {
        msg << "density matrix trace " << tr << " differs from 1";
        throw ConfigError(msg.str());
    }
    if (const double lam = min_eigenvalue(); lam < -1e-8) {
        msg << "density matrix has negative eigenvalue " << lam;
        throw ConfigError(msg.str());
    }
}

}  // namespace stirap
