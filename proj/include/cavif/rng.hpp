// Copyright 2026 The cavif Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace cavif {

// Stream labels so that each random quantity of a path has its own sequence.
enum class StreamTag : std::uint64_t {
  Noise = 0,
  InitialState = 1,
  PositionNoise = 2,
  VelocityNoise = 3,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the stream (master, index, tag); independent of evaluation order.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index, StreamTag tag) {
  return splitmix64(splitmix64(splitmix64(master) ^ index) ^ static_cast<std::uint64_t>(tag));
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t index, StreamTag tag) {
  return std::mt19937_64(stream_seed(master, index, tag));
}

}  // namespace cavif
