#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Geometry>

// Deterministic RNG substreams. Every Monte-Carlo entity (sensor, pair,
// noise path, ...) derives its own generator from the master seed and an
// index path, so runs are reproducible independent of thread scheduling.
namespace nvnmr {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hash-combine a master seed with an index path into a 64-bit stream seed.
inline std::uint64_t substream_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = master ^ 0xa0761d6478bd642fULL;
  for (std::uint64_t p : path) {
    s ^= splitmix64(p) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    s = splitmix64(s);
  }
  return s;
}

inline std::mt19937_64 substream(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  return std::mt19937_64(substream_seed(master, path));
}

// Uniform (Haar) random rotation from a uniform unit quaternion.
inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Quaterniond q(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  q.normalize();
  return q.toRotationMatrix();
}

// Uniform direction on the unit sphere.
inline Eigen::Vector3d random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
  while (v.norm() < 1e-12) v = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
  return v.normalized();
}

} // namespace nvnmr
