// Copyright 2026 The Datarace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DATARACE_SRC_NUMERIC_H_
#define DATARACE_SRC_NUMERIC_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace datarace::internal {

// 1 / (1 + e^{-t}).
inline double Logistic(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// log(cosh(z)) without overflow.
inline long double LogCosh(long double z) {
  const long double az = std::abs(z);
  return az + std::log1p(std::exp(-2.0L * az)) - std::numbers::ln2_v<long double>;
}

// log(sinh(w)) for w > 0.
inline long double LogSinh(long double w) {
  return w + std::log(-std::expm1(-2.0L * w)) -
         std::numbers::ln2_v<long double>;
}

// Logistic(a) - Logistic(b) where h = a - b is supplied separately so callers
// can form it without cancellation. Uses
//   s(a) - s(b) = sinh(h/2) / (2 cosh(a/2) cosh(b/2)).
// Evaluated in extended precision: the log-domain terms reach ~60 in
// magnitude, which would cost ~1e-14 relative accuracy in double.
inline double LogisticDifference(long double a, long double b, long double h) {
  if (h == 0.0L) return 0.0;
  const long double log_mag = LogSinh(std::abs(h) / 2.0L) -
                              std::numbers::ln2_v<long double> -
                              LogCosh(a / 2.0L) - LogCosh(b / 2.0L);
  return static_cast<double>(std::copysign(std::exp(log_mag), h));
}

// SplitMix64 finalizer, used to derive independent sub-seeds.
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 with a fixed bits-to-double mapping, so streams are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  // Uniform on [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1].
  double UniformPositive() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }
  bool Bernoulli(double prob) { return Uniform() < prob; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace datarace::internal

#endif  // DATARACE_SRC_NUMERIC_H_
