// Copyright 2026 The landmark-frames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LMF_COMMON_HPP_
#define LMF_COMMON_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace lmf {

using Index = Eigen::Index;

/// Log-domain zero. Absorbing under addition; never produced by overflow.
template <typename Scalar = double>
inline constexpr Scalar kNegInf = -std::numeric_limits<Scalar>::infinity();

template <typename Scalar>
inline bool is_neg_inf(Scalar x) {
  return x == kNegInf<Scalar>;
}

// ---------------------------------------------------------------------------
// Seeded randomness.
//
// Every random draw in the toolkit goes through Rng so results are identical
// across standard libraries: the engine is std::mt19937_64 (fully specified by
// the standard), seeded through one splitmix64 step. Bounded integers use
// rejection sampling on the raw 64-bit output, uniform reals take the top 53
// bits, and normals use the Box-Muller transform. None of the
// implementation-defined std:: distributions are used.
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream seed from a parent seed and a salt.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform real in [0, 1).
  double uniform();
  double normal();

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// First k elements of a uniformly random permutation of `pool`
  /// (partial Fisher-Yates); sampling without replacement.
  template <typename T>
  std::vector<T> sample(std::vector<T> pool, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// Text helpers.

/// Shortest representation that parses back to the identical double.
std::string format_double(double x);
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string_view> split_ws(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> lines(std::string_view text);

// Files.

std::string read_file(const std::filesystem::path& path);
/// Writes via a sibling temp file and rename, so readers never see a
/// partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// Warnings go to stderr unless a handler is installed.
using WarningHandler = std::function<void(std::string_view)>;
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

/// Runs body(i) for i in [0, n) on up to `jobs` threads. Exceptions from any
/// task are rethrown (the first one by index) after all workers finish.
void parallel_for(Index n, int jobs, const std::function<void(Index)>& body);

}  // namespace lmf

#endif  // LMF_COMMON_HPP_
