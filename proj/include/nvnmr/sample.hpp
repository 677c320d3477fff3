#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "constants.hpp"
#include "rng.hpp"
#include "shift_tensor.hpp"

// Nuclear sample model: pair geometry inside the detection hemisphere,
// shift tensors, dipolar couplings, sensor coupling weights, and
// statistically polarized initial Bloch angles.
namespace nvnmr {

struct SpinSpecies {
  double gamma_hz_per_t = kGammaProton;
  std::string label = "1H";
};

// Dipolar prefactor, calibrated so that the secular coefficient at
// theta = 0 equals mu0 h gamma^2 / (2 pi r^3) -- about 14.96 kHz for
// protons (gamma = 42 MHz/T) at r = 0.25 nm.
inline double dipolar_prefactor_hz(double gamma_hz_per_t, double r_m) {
  return kMu0 * kPlanck * gamma_hz_per_t * gamma_hz_per_t /
         (kTwoPi * r_m * r_m * r_m);
}

// Two coupled nuclei of the same species.
struct PairCluster {
  Eigen::Vector3d positions[2];   // meters, NV at the origin
  ShiftTensor tensors[2];
  SpinSpecies species;
  double dipolar_b_hz = 0.0;      // orientation-independent prefactor
  Eigen::Vector3d unit_internuclear = Eigen::Vector3d::UnitZ();

  static PairCluster make(const Eigen::Vector3d& pos0, const Eigen::Vector3d& pos1,
                          const ShiftTensor& t0, const ShiftTensor& t1,
                          const SpinSpecies& species) {
    PairCluster c;
    c.positions[0] = pos0;
    c.positions[1] = pos1;
    c.tensors[0] = t0;
    c.tensors[1] = t1;
    c.species = species;
    Eigen::Vector3d d = pos1 - pos0;
    c.unit_internuclear = d.normalized();
    c.dipolar_b_hz = dipolar_prefactor_hz(species.gamma_hz_per_t, d.norm());
    return c;
  }
};

// Secular homonuclear coefficient d(theta) = b (3 cos^2 theta - 1)/2,
// multiplying [3 I_S^1 I_S^2 - I.I]; theta between the internuclear axis
// and the field direction.
inline double dipolar_secular(const PairCluster& pair, const Eigen::Vector3d& b_hat) {
  if (std::abs(b_hat.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("dipolar_secular: b_hat is not a unit vector");
  double c = pair.unit_internuclear.dot(b_hat);
  return pair.dipolar_b_hz * 0.5 * (3.0 * c * c - 1.0);
}

// Per-nucleus coupling weight (tesla per unit <I>):
//   C = -(mu0 h / 4 pi) gamma sqrt(2/3) (3 l_z^2 - 1) / r^3.
inline double coupling_weight(double gamma_hz_per_t, const Eigen::Vector3d& pos) {
  double r = pos.norm();
  double lz = pos.z() / r;
  return -(kMu0 * kPlanck / (4.0 * kPi)) * gamma_hz_per_t *
         std::sqrt(2.0 / 3.0) * (3.0 * lz * lz - 1.0) / (r * r * r);
}

// Detection region: hemispherical dome of radius = nv_depth sitting on the
// plane z = nv_depth above the NV at the origin. Minimum NV-nucleus
// distance is nv_depth, so the coupling integrals stay finite.
struct DetectionGeometry {
  double nv_depth_m = 5e-9;
  int pair_count = 0;
  std::vector<double> coupling_weights; // one per nucleus, tesla
  double f2 = 0.0;                      // int [(3 l_z^2 - 1)/r^3]^2 dV, 1/m^3
  double volume_m3 = 0.0;

  bool contains(const Eigen::Vector3d& p) const {
    Eigen::Vector3d c(0.0, 0.0, nv_depth_m);
    return p.z() >= nv_depth_m - 1e-18 && (p - c).norm() <= nv_depth_m + 1e-18;
  }
};

// Gauss-Legendre nodes/weights on [a, b].
inline void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                           std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = -p0 / dp;
      t += dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double p1d = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = 0.5 * (b - a) * (-t) + 0.5 * (a + b);
    x[n - 1 - i] = 0.5 * (b - a) * t + 0.5 * (a + b);
    w[i] = w[n - 1 - i] = (b - a) / ((1.0 - t * t) * p1d * p1d);
  }
}

// int over the dome of [(3 l_z^2 - 1)/r^3]^2 dV by tensor-product
// Gauss-Legendre quadrature (azimuthally symmetric integrand).
inline double detection_f2_quadrature(double depth_m, int n = 64) {
  std::vector<double> xr, wr, xb, wb;
  gauss_legendre(n, 0.0, depth_m, xr, wr);
  gauss_legendre(n, 0.0, kPi / 2.0, xb, wb);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double rho = xr[i];
    for (int j = 0; j < n; ++j) {
      double beta = xb[j];
      double z = depth_m + rho * std::cos(beta);
      double x = rho * std::sin(beta);
      double r2 = z * z + x * x;
      double r = std::sqrt(r2);
      double lz = z / r;
      double f = (3.0 * lz * lz - 1.0) / (r2 * r);
      acc += wr[i] * wb[j] * f * f * rho * rho * std::sin(beta);
    }
  }
  return acc * kTwoPi;
}

inline double hemisphere_volume(double depth_m) {
  return (2.0 / 3.0) * kPi * depth_m * depth_m * depth_m;
}

struct GeometrySpec {
  double nv_depth_m = 5e-9;
  int pair_count = 16;
  double internuclear_distance_m = 0.25e-9;
  double exclusion_radius_m = 0.4e-9; // min distance between nuclei of different pairs
  SpinSpecies species;
  std::vector<Eigen::Vector3d> group_principal_values_hz; // 1 or 2 groups
  int max_attempts = 100000;
};

struct PlacedSample {
  DetectionGeometry geometry;
  std::vector<PairCluster> pairs;
};

inline Eigen::Vector3d uniform_point_in_dome(double depth, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  // rejection from the bounding box of the upper half ball
  for (;;) {
    Eigen::Vector3d p(u(rng) * depth, u(rng) * depth, std::abs(u(rng)) * depth);
    if (p.norm() <= depth) return p + Eigen::Vector3d(0.0, 0.0, depth);
  }
}

// Random pair positions with uniform density, Haar-random internuclear
// axes and PAS orientations; fills coupling weights and F2.
inline PlacedSample place_pairs(const GeometrySpec& spec, std::mt19937_64& rng) {
  if (spec.pair_count < 1) throw std::invalid_argument("place_pairs: pair_count >= 1");
  if (spec.nv_depth_m <= 0.0) throw std::invalid_argument("place_pairs: nv_depth > 0");
  if (spec.group_principal_values_hz.empty() || spec.group_principal_values_hz.size() > 2)
    throw std::invalid_argument("place_pairs: need 1 or 2 tensor groups");

  PlacedSample out;
  out.geometry.nv_depth_m = spec.nv_depth_m;
  out.geometry.pair_count = spec.pair_count;
  out.geometry.volume_m3 = hemisphere_volume(spec.nv_depth_m);
  out.geometry.f2 = detection_f2_quadrature(spec.nv_depth_m);

  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  int attempts = 0;
  while (static_cast<int>(out.pairs.size()) < spec.pair_count) {
    if (++attempts > spec.max_attempts)
      throw std::runtime_error("place_pairs: rejection sampling failed; "
                               "exclusion radius too large for the volume");
    Eigen::Vector3d p0 = uniform_point_in_dome(spec.nv_depth_m, rng);
    Eigen::Vector3d axis = random_unit_vector(rng);
    Eigen::Vector3d p1 = p0 + spec.internuclear_distance_m * axis;
    if (!out.geometry.contains(p1)) continue;
    bool clash = false;
    for (const auto& other : out.pairs) {
      for (const auto& q : {p0, p1}) {
        if ((q - other.positions[0]).norm() < spec.exclusion_radius_m ||
            (q - other.positions[1]).norm() < spec.exclusion_radius_m) {
          clash = true;
          break;
        }
      }
      if (clash) break;
    }
    if (clash) continue;

    auto tensor_for = [&](int member) {
      const auto& groups = spec.group_principal_values_hz;
      const Eigen::Vector3d& pv = groups[member < static_cast<int>(groups.size()) ? member : 0];
      Eigen::Matrix3d r = random_rotation(rng);
      return ShiftTensor{pv, r};
    };
    ShiftTensor t0 = tensor_for(0);
    ShiftTensor t1 = tensor_for(1);
    out.pairs.push_back(PairCluster::make(p0, p1, t0, t1, spec.species));
  }

  out.geometry.coupling_weights.reserve(2 * spec.pair_count);
  for (const auto& pair : out.pairs)
    for (int m = 0; m < 2; ++m)
      out.geometry.coupling_weights.push_back(
          coupling_weight(spec.species.gamma_hz_per_t, pair.positions[m]));
  return out;
}

// --- statistically polarized initial states --------------------------------

// Distribution of the polar angle for x = beta gamma B0:
//   P(theta) = x / (2 sinh x) * exp(-x cos theta),
// sampled against the sin(theta) measure. Inverse-CDF form below.
inline double bloch_cos_theta_from_u(double u, double x) {
  double c;
  if (x < 1e-12) {
    c = 1.0 - 2.0 * u;
  } else {
    c = -std::log(std::exp(-x) + 2.0 * u * std::sinh(x)) / x;
  }
  return std::min(1.0, std::max(-1.0, c));
}

// Cumulative probability of theta' <= theta.
inline double bloch_cdf(double theta, double x) {
  double c = std::cos(theta);
  if (x < 1e-12) return 0.5 * (1.0 - c);
  return (std::exp(-x * c) - std::exp(-x)) / (2.0 * std::sinh(x));
}

// <cos theta> = 1/x - coth x (-> 0 as x -> 0).
inline double bloch_mean_cos_theta(double x) {
  if (x < 1e-6) return -x / 3.0;
  return 1.0 / x - 1.0 / std::tanh(x);
}

struct BlochSample {
  std::vector<double> theta;
  std::vector<double> phi;
  double x = 0.0; // beta gamma B0, dimensionless
};

inline BlochSample sample_bloch(int n, double x, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sample_bloch: n >= 1");
  if (x < 0.0) throw std::invalid_argument("sample_bloch: x >= 0");
  BlochSample s;
  s.x = x;
  s.theta.resize(n);
  s.phi.resize(n);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_real_distribution<double> az(0.0, kTwoPi);
  for (int k = 0; k < n; ++k) {
    s.theta[k] = std::acos(bloch_cos_theta_from_u(uni(rng), x));
    s.phi[k] = az(rng);
  }
  return s;
}

// x = h gamma B0 / (kB T), the Boltzmann exponent of a spin-1/2 Zeeman
// splitting; ~1.3e-5 for protons at 2 T and room temperature.
inline double boltzmann_x(double gamma_hz_per_t, double b0_tesla, double temperature_k) {
  return kPlanck * gamma_hz_per_t * b0_tesla / (kBoltzmann * temperature_k);
}

} // namespace nvnmr
