// Copyright 2026 rwpost authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RWPOST_RNG_HPP_
#define RWPOST_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>

namespace rwpost {

// SplitMix64 finalizer. Used both for seed expansion and for deriving
// substream keys; every bit of the input affects every bit of the output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-free keyed stream of pseudo-random numbers built on xoshiro256++.
//
// Streams form a tree: substream(key) derives an independent child stream
// from (root, key) alone, so any draw is a pure function of the master seed
// and the key path that leads to it. That is what makes replications and
// Monte Carlo draws bit-reproducible regardless of scheduling. All floating
// point output goes through the 53-bit uniform below and inverse-CDF
// transforms only, so sequences are identical across platforms.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : root_(seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64(sm);
  }

  // Child stream keyed by `key`; independent of draws already made here.
  RngStream substream(std::uint64_t key) const {
    std::uint64_t sm = root_ ^ (key + 0x9e3779b97f4a7c15ULL);
    std::uint64_t mixed = splitmix64(sm);
    mixed ^= splitmix64(sm);
    return RngStream(mixed);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0,1): 53-bit mantissa, never 0 or 1.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential(rate) by inverse CDF.
  double next_exponential(double rate) {
    return -std::log(next_uniform()) / rate;
  }

  // Gamma(shape 4, rate) as a sum of four exponentials, folded into a
  // single log of the product of uniforms (the product cannot underflow:
  // each factor is >= 2^-54).
  double next_gamma4(double rate) {
    const double u =
        next_uniform() * next_uniform() * next_uniform() * next_uniform();
    return -std::log(u) / rate;
  }

  // N(mean, sd^2) by inverse CDF; declared here, defined with the normal
  // quantile in special.cpp.
  double next_normal(double mean, double sd);

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t root_ = 0;
};

}  // namespace rwpost

#endif  // RWPOST_RNG_HPP_
