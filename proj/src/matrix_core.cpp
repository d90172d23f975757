#include "ybmaps/matrix_core.hpp"

#include <cmath>
#include <string>

#include "ybmaps/errors.hpp"

namespace ybmaps {

BinomialPencil::BinomialPencil(CMatrix point, CMatrix leading)
    : point_(std::move(point)), leading_(std::move(leading)) {
  if (point_.rows() != point_.cols() || leading_.rows() != leading_.cols() ||
      point_.rows() != leading_.rows()) {
    throw Error(ErrorKind::DomainError, "pencil matrices must be square and of equal size");
  }
}

CMatrix pencil_eval(const BinomialPencil& pencil, Complex zeta) { return pencil(zeta); }

Complex CharPolyCoeffs::evaluate(Complex zeta) const {
  Complex acc{0.0, 0.0};
  Complex power{1.0, 0.0};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    acc += (i % 2 == 0 ? 1.0 : -1.0) * coeffs[i] * power;
    power *= zeta;
  }
  return acc;
}

Complex det(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DomainError, "det of a non-square matrix");
  }
  switch (m.rows()) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      return m.partialPivLu().determinant();
  }
}

CharPolyCoeffs char_poly_by_column_subsets(const CMatrix& point, const CMatrix& leading) {
  const Eigen::Index n = point.rows();
  CharPolyCoeffs out;
  out.coeffs.assign(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
  const unsigned subsets = 1u << static_cast<unsigned>(n);
  CMatrix mixed(n, n);
  for (unsigned mask = 0; mask < subsets; ++mask) {
    int taken = 0;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (mask & (1u << static_cast<unsigned>(c))) {
        mixed.col(c) = leading.col(c);
        ++taken;
      } else {
        mixed.col(c) = point.col(c);
      }
    }
    out.coeffs[static_cast<std::size_t>(taken)] += det(mixed);
  }
  return out;
}

CharPolyCoeffs char_poly_leverrier(const CMatrix& point, const CMatrix& leading) {
  const Eigen::Index n = point.rows();
  const Complex det_a = det(leading);
  const CMatrix b = inverse(leading) * point;
  // Monic p(z) = det(zI - B) = z^n + c_{n-1} z^{n-1} + ... + c_0.
  std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
  c[static_cast<std::size_t>(n)] = 1.0;
  CMatrix mk = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = b * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
    c[static_cast<std::size_t>(n - k)] = -(b * mk).trace() / static_cast<double>(k);
  }
  // det(X - zA) = det A * det(B - zI) = det A * (-1)^n p(z).
  CharPolyCoeffs out;
  out.coeffs.resize(static_cast<std::size_t>(n) + 1);
  for (Eigen::Index k = 0; k <= n; ++k) {
    const double sign = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    out.coeffs[static_cast<std::size_t>(k)] = det_a * sign * c[static_cast<std::size_t>(k)];
  }
  return out;
}

CharPolyCoeffs char_poly_coeffs(const CMatrix& point, const CMatrix& leading) {
  return char_poly_coeffs(BinomialPencil(point, leading));
}

CharPolyCoeffs char_poly_coeffs(const BinomialPencil& pencil) {
  const CMatrix& x = pencil.point();
  const CMatrix& a = pencil.leading();
  const Eigen::Index n = pencil.size();
  if (n == 2) {
    // f1 = a4 x1 - a3 x2 - a2 x3 + a1 x4 for row-major (x1..x4), (a1..a4).
    return CharPolyCoeffs{{det(x),
                           a(1, 1) * x(0, 0) - a(1, 0) * x(0, 1) - a(0, 1) * x(1, 0) +
                               a(0, 0) * x(1, 1),
                           det(a)}};
  }
  if (n <= 3) {
    return char_poly_by_column_subsets(x, a);
  }
  const double scale = std::pow(norm_inf(a), static_cast<double>(n));
  if (std::abs(det(a)) > kSingularThreshold * scale) {
    return char_poly_leverrier(x, a);
  }
  return char_poly_by_column_subsets(x, a);
}

CharPolyCoeffs matrix_char_poly(const CMatrix& m) {
  return char_poly_coeffs(BinomialPencil(m, CMatrix::Identity(m.rows(), m.cols())));
}

CommutingFamily::CommutingFamily(FamilyKind kind, Eigen::Index dimension)
    : kind_(kind), dim_(dimension) {
  if (dim_ < 1) {
    throw Error(ErrorKind::DomainError, "family dimension must be positive");
  }
  if (kind_ == FamilyKind::RotationIII && dim_ != 2) {
    throw Error(ErrorKind::DomainError, "rotation family is defined for n = 2 only");
  }
}

Eigen::Index CommutingFamily::parameter_count() const noexcept {
  return kind_ == FamilyKind::RotationIII ? 2 : dim_;
}

CMatrix CommutingFamily::operator()(std::span<const Complex> alpha) const {
  if (static_cast<Eigen::Index>(alpha.size()) < parameter_count()) {
    throw Error(ErrorKind::DomainError, "family needs " + std::to_string(parameter_count()) +
                                            " parameters, got " + std::to_string(alpha.size()));
  }
  CMatrix k = CMatrix::Zero(dim_, dim_);
  switch (kind_) {
    case FamilyKind::DiagonalI:
      for (Eigen::Index i = 0; i < dim_; ++i) {
        if (alpha[static_cast<std::size_t>(i)] == Complex{0.0, 0.0}) {
          throw Error(ErrorKind::SingularParameter, "diagonal family needs nonzero entries");
        }
        k(i, i) = alpha[static_cast<std::size_t>(i)];
      }
      break;
    case FamilyKind::JordanII:
      if (alpha[0] == Complex{0.0, 0.0}) {
        throw Error(ErrorKind::SingularParameter, "Jordan family needs alpha_1 != 0");
      }
      for (Eigen::Index i = 0; i < dim_; ++i) {
        for (Eigen::Index j = i; j < dim_; ++j) {
          k(i, j) = alpha[static_cast<std::size_t>(j - i)];
        }
      }
      break;
    case FamilyKind::RotationIII:
      if (alpha[0] * alpha[0] + alpha[1] * alpha[1] == Complex{0.0, 0.0}) {
        throw Error(ErrorKind::SingularParameter, "rotation family needs alpha_1^2 + alpha_2^2 != 0");
      }
      k << alpha[0], -alpha[1], alpha[1], alpha[0];
      break;
  }
  return k;
}

CMatrix family_eval(const CommutingFamily& family, std::span<const Complex> alpha) {
  return family(alpha);
}

double norm_inf(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool all_finite(const CMatrix& m) { return m.allFinite(); }

CMatrix inverse(const CMatrix& m, double threshold) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DomainError, "inverse of a non-square matrix");
  }
  const double scale = std::pow(norm_inf(m), static_cast<double>(m.rows()));
  const Complex d = det(m);
  if (!(std::abs(d) >= threshold * scale) || scale == 0.0) {
    throw Error(ErrorKind::SingularMatrix, "|det| below threshold");
  }
  if (m.rows() == 2) {
    CMatrix inv(2, 2);
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return inv / d;
  }
  return m.partialPivLu().inverse();
}

CVector flatten(const CMatrix& m) {
  CVector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

CMatrix unflatten(const CVector& v, Eigen::Index n) {
  if (v.size() != n * n) {
    throw Error(ErrorKind::DomainError, "vector length does not match an n x n matrix");
  }
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(i * n + j);
  }
  return m;
}

}  // namespace ybmaps
