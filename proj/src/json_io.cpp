#include "ybmaps/json_io.hpp"

#include <string>

#include "ybmaps/errors.hpp"

namespace ybmaps {

namespace {

std::vector<double> numbers(const Json& j, const char* field) {
  if (!j.is_array()) {
    throw Error(ErrorKind::ConfigError, std::string("field '") + field + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) {
      throw Error(ErrorKind::ConfigError, std::string("field '") + field + "' must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
    throw Error(ErrorKind::ConfigError, "matrix JSON needs rows, cols and re");
  }
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorKind::ConfigError, "matrix dimensions must be positive");
  }
  const auto re = numbers(j.at("re"), "re");
  const auto im = j.contains("im") ? numbers(j.at("im"), "im")
                                   : std::vector<double>(re.size(), 0.0);
  if (re.size() != static_cast<std::size_t>(rows * cols) || im.size() != re.size()) {
    throw Error(ErrorKind::ConfigError, "matrix entry count does not match rows*cols");
  }
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto idx = static_cast<std::size_t>(i * cols + k);
      m(i, k) = Complex{re[idx], im[idx]};
    }
  }
  return m;
}

Json vector_to_json(const CVector& v) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return Json{{"re", re}, {"im", im}};
}

CVector vector_from_json(const Json& j) {
  std::vector<double> re;
  std::vector<double> im;
  if (j.is_array()) {
    re = numbers(j, "vector");
    im.assign(re.size(), 0.0);
  } else if (j.is_object() && j.contains("re")) {
    re = numbers(j.at("re"), "re");
    im = j.contains("im") ? numbers(j.at("im"), "im") : std::vector<double>(re.size(), 0.0);
    if (im.size() != re.size()) {
      throw Error(ErrorKind::ConfigError, "re/im length mismatch");
    }
  } else {
    throw Error(ErrorKind::ConfigError, "complex vector must be an array or {re, im}");
  }
  CVector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = {re[i], im[i]};
  return v;
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace ybmaps
