#pragma once

#include <map>
#include <mutex>

#include "dirac_packets/packet.hpp"

namespace testing_support {

// Profiles are the expensive part of most tests; build each n once per binary.
inline const dirac_packets::RadialProfiles& profiles(double n) {
  static std::map<double, dirac_packets::RadialProfiles> cache;
  static std::mutex m;
  std::lock_guard lock(m);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, dirac_packets::radial_profiles({n}, dirac_packets::QuadratureConfig{})).first;
  return it->second;
}

inline dirac_packets::Vec3 axis(int k, double h) {
  return {k == 0 ? h : 0.0, k == 1 ? h : 0.0, k == 2 ? h : 0.0};
}

inline double spinor_distance(const dirac_packets::Spinor4& a, const dirac_packets::Spinor4& b) {
  return std::sqrt(dirac_packets::norm_squared(a - b));
}

inline double spinor_size(const dirac_packets::Spinor4& a) {
  return std::sqrt(dirac_packets::norm_squared(a));
}

}  // namespace testing_support
