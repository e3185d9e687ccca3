#pragma once

// Small polyhedral cones shared by several tests.

#include <vector>

#include "conelab/rational.hpp"

namespace testfx {

inline conelab::RVector rv(std::initializer_list<long> xs) {
  conelab::RVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline std::vector<conelab::RVector> square_rays() {
  return {rv({1, 1, 1}), rv({-1, 1, 1}), rv({-1, -1, 1}), rv({1, -1, 1})};
}

inline std::vector<conelab::RVector> pentagon_rays() {
  return {rv({2, 0, 1}), rv({1, 2, 1}), rv({-1, 2, 1}), rv({-2, 0, 1}), rv({0, -2, 1})};
}

inline std::vector<conelab::RVector> hexagon_rays() {
  return {rv({1, 0, 1}), rv({1, 1, 1}), rv({0, 1, 1}), rv({-1, 0, 1}), rv({-1, -1, 1}), rv({0, -1, 1})};
}

inline std::vector<conelab::RVector> bipyramid_rays() {
  return {rv({1, 0, 0, 1}), rv({0, 1, 0, 1}), rv({-1, -1, 0, 1}), rv({0, 0, 1, 1}), rv({0, 0, -1, 1})};
}

inline std::vector<conelab::RVector> orthant_rays(std::size_t n) {
  std::vector<conelab::RVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    conelab::RVector e(n);
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

}  // namespace testfx
