#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gtensor {

using cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Vector3d = Eigen::Vector3d;
using Matrix3d = Eigen::Matrix3d;

// Hartree atomic units throughout
constexpr double hartree_ev = 27.211386245988;
constexpr double bohr_angstrom = 0.529177210903;
constexpr double mu_b = 0.5;
// 1 T in atomic units of magnetic field
constexpr double tesla_au = 1.0 / 2.35051756758e5;

constexpr cplx I{0.0, 1.0};

inline const std::array<Matrix2c, 3>& pauli() {
  static const std::array<Matrix2c, 3> s = [] {
    std::array<Matrix2c, 3> p;
    p[0] << 0, 1, 1, 0;
    p[1] << 0, -I, I, 0;
    p[2] << 1, 0, 0, -1;
    return p;
  }();
  return s;
}

inline int levi_civita(int i, int j, int k) {
  return (i - j) * (j - k) * (k - i) / 2;
}

class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// malformed input file
class parse_error : public error {
public:
  using error::error;
};

// well-formed input that violates the model contract; key() names the culprit
class validation_error : public error {
public:
  validation_error(const std::string& key, const std::string& what)
    : error(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }
private:
  std::string key_;
};

// base class for violations of a physics precondition (CLI exit code 3)
class physics_error : public error {
public:
  using error::error;
};

class pairing_ambiguity : public physics_error {
public:
  using physics_error::physics_error;
};

class near_degenerate_intermediate : public physics_error {
public:
  using physics_error::physics_error;
};

class zero_field : public physics_error {
public:
  using physics_error::physics_error;
};

class no_bracket : public physics_error {
public:
  using physics_error::physics_error;
};

class direction_not_applicable : public physics_error {
public:
  using physics_error::physics_error;
};

class io_error : public error {
public:
  using error::error;
};

} // namespace gtensor
