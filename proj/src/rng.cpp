// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "rng.hpp"

#include <cmath>
#include <numbers>

namespace dpmsr {

namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t combine(uint64_t h, uint64_t component) {
  return mix(h ^ (component + kGolden + (h << 6) + (h >> 2)));
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream)
    : state_(combine(combine(mix(seed + kGolden), stream), 0x5A17A17A5A17A17Aull)) {}

RngStream RngStream::derive(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t h = mix(seed + kGolden);
  for (uint64_t c : path) h = combine(h, c);
  return RngStream(Raw{}, combine(h, 0x5A17A17A5A17A17Aull));
}

uint64_t RngStream::nextU64() {
  uint64_t z = (state_ += kGolden);
  return mix(z);
}

double RngStream::nextUniform() {
  // (m + 0.5) / 2^53 with m in [0, 2^53): never exactly 0 or 1.
  return (static_cast<double>(nextU64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::nextGaussian() {
  double u1 = nextUniform();
  double u2 = nextUniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace dpmsr
