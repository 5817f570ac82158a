// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <initializer_list>

namespace dpmsr {

/// Deterministic 64-bit PRNG stream (splitmix64 core).
///
/// The same (seed, stream path) yields the same sample sequence on every
/// platform; the generator uses only integer arithmetic plus an exact
/// uint64 -> double conversion. Streams are single-owner: never share one
/// across concurrent workers. Independent streams are obtained by deriving
/// with distinct paths, e.g. derive(master, {run, agent}).
class RngStream {
 public:
  explicit RngStream(uint64_t seed, uint64_t stream = 0);

  /// Hash-chains the path components onto the seed to select a stream.
  static RngStream derive(uint64_t seed, std::initializer_list<uint64_t> path);

  uint64_t nextU64();

  /// Uniform on the open interval (0,1), 53-bit resolution.
  double nextUniform();

  /// Standard normal via Box-Muller; consumes exactly two uniforms.
  double nextGaussian();

 private:
  struct Raw {};
  RngStream(Raw, uint64_t state) : state_(state) {}
  uint64_t state_;
};

}  // namespace dpmsr
