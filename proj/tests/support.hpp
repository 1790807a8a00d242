#pragma once

#include <random>
#include <string>

#include "gtensor/crystal_model.hpp"

namespace testing_support {

inline gtensor::MaterialModel material(const std::string& name) {
  return gtensor::load_material(std::string(GTENSOR_DATA_DIR) + "/" + name + ".json");
}

inline gtensor::Vector3d random_k(std::mt19937_64& rng, double scale = 0.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng)};
}

inline gtensor::Matrix2c random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector4d q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  gtensor::Matrix2c u;
  u << gtensor::cplx(q[0], q[3]), gtensor::cplx(q[2], q[1]), gtensor::cplx(-q[2], q[1]), gtensor::cplx(q[0], -q[3]);
  return u;
}

} // namespace testing_support
