#pragma once

// Seeded synthetic inputs and input transforms.
//
// Random streams come from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Doubles are drawn as (x >> 11) * 2^-53 and normals by
// Box-Muller, both implemented here, so a seed yields bit-identical matrices
// on every conforming platform.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sws/core.hpp"

namespace sws {

enum class GenKind { uniform_random, coherent_blobs, checkerboard };

struct GenSpec {
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::uint64_t seed = 0;
  GenKind kind = GenKind::uniform_random;
  double lo = -1.0;
  double hi = 1.0;
  // coherent_blobs only
  std::size_t num_blobs = 1;
  double blob_scale = 0.1;   // blob sigma as a fraction of min(rows, cols)
  double noise_level = 0.3;  // amplitude of uniform noise added to the field

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

inline std::string_view to_string(GenKind k) noexcept {
  switch (k) {
    case GenKind::uniform_random: return "uniform";
    case GenKind::coherent_blobs: return "blobs";
    case GenKind::checkerboard: return "checkerboard";
  }
  return "?";
}

inline GenKind parse_gen_kind(std::string_view s) {
  if (s == "uniform" || s == "uniform_random") return GenKind::uniform_random;
  if (s == "blobs" || s == "coherent_blobs") return GenKind::coherent_blobs;
  if (s == "checkerboard") return GenKind::checkerboard;
  throw std::invalid_argument("unknown generator kind '" + std::string(s) + "'");
}

/// Canonical text form, e.g. "gen:kind=blobs,rows=256,cols=256,seed=3,...".
inline std::string describe(const GenSpec& s) {
  std::ostringstream os;
  os << "gen:kind=" << to_string(s.kind) << ",rows=" << s.rows << ",cols=" << s.cols << ",seed=" << s.seed
     << ",lo=" << detail::format_double(s.lo) << ",hi=" << detail::format_double(s.hi);
  if (s.kind == GenKind::coherent_blobs) {
    os << ",blobs=" << s.num_blobs << ",blob_scale=" << detail::format_double(s.blob_scale)
       << ",noise=" << detail::format_double(s.noise_level);
  }
  return os.str();
}

inline GenSpec parse_gen_description(std::string_view text) {
  if (!text.starts_with("gen:")) throw std::invalid_argument("generator description must start with 'gen:'");
  GenSpec s;
  std::string body(text.substr(4));
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad generator field '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (key == "kind") s.kind = parse_gen_kind(val);
    else if (key == "rows") s.rows = std::stoull(val);
    else if (key == "cols") s.cols = std::stoull(val);
    else if (key == "seed") s.seed = std::stoull(val);
    else if (key == "lo") s.lo = std::stod(val);
    else if (key == "hi") s.hi = std::stod(val);
    else if (key == "blobs") s.num_blobs = std::stoull(val);
    else if (key == "blob_scale") s.blob_scale = std::stod(val);
    else if (key == "noise") s.noise_level = std::stod(val);
    else throw std::invalid_argument("unknown generator field '" + key + "'");
  }
  return s;
}

/// Uniform doubles in [0, 1) and standard normals from a fixed engine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Deterministic matrix for `spec`.
///
/// coherent_blobs builds a field of -0.25 background plus Gaussian bumps
/// (amplitude and sigma jittered +-25%) plus uniform noise in
/// [-noise_level, noise_level], then maps [-1, 1] affinely onto [lo, hi].
/// checkerboard puts hi where row+col is even and lo elsewhere.
inline Matrix generate(const GenSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) throw std::invalid_argument("generate: dimensions must be >= 1");
  if (!(spec.lo < spec.hi)) throw std::invalid_argument("generate: value range requires lo < hi");
  const std::size_t R = spec.rows;
  const std::size_t C = spec.cols;
  std::vector<double> data(R * C);
  Rng rng(spec.seed);

  switch (spec.kind) {
    case GenKind::uniform_random:
      for (double& v : data) v = rng.uniform(spec.lo, spec.hi);
      break;

    case GenKind::checkerboard:
      for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) data[r * C + c] = (r + c) % 2 == 0 ? spec.hi : spec.lo;
      break;

    case GenKind::coherent_blobs: {
      if (spec.blob_scale <= 0.0) throw std::invalid_argument("generate: blob_scale must be > 0");
      if (spec.noise_level < 0.0) throw std::invalid_argument("generate: noise_level must be >= 0");
      std::vector<double> field(R * C, -0.1);
      const double base_sigma = spec.blob_scale * static_cast<double>(std::min(R, C));
      std::vector<double> gy(R), gx(C);
      for (std::size_t b = 0; b < spec.num_blobs; ++b) {
        const double cy = rng.uniform(0.0, static_cast<double>(R));
        const double cx = rng.uniform(0.0, static_cast<double>(C));
        const double sigma = std::max(0.5, base_sigma * rng.uniform(0.75, 1.25));
        const double amp = rng.uniform(0.75, 1.25);
        const double inv = 1.0 / (2.0 * sigma * sigma);
        // Separable: exp(-(dy^2 + dx^2) k) = exp(-dy^2 k) * exp(-dx^2 k).
        for (std::size_t r = 0; r < R; ++r) gy[r] = amp * std::exp(-(r - cy) * (r - cy) * inv);
        for (std::size_t c = 0; c < C; ++c) gx[c] = std::exp(-(c - cx) * (c - cx) * inv);
        for (std::size_t r = 0; r < R; ++r)
          for (std::size_t c = 0; c < C; ++c) field[r * C + c] += gy[r] * gx[c];
      }
      const double mid = 0.5 * (spec.lo + spec.hi);
      const double half = 0.5 * (spec.hi - spec.lo);
      for (std::size_t i = 0; i < R * C; ++i) {
        const double noisy = field[i] + spec.noise_level * rng.uniform(-1.0, 1.0);
        data[i] = mid + half * noisy;
      }
      break;
    }
  }
  return Matrix(R, C, std::move(data));
}

/// Replaces every entry by a k x k block of copies.
inline Matrix duplicate_scale(const Matrix& m, std::size_t k) {
  if (k == 0) throw std::invalid_argument("duplicate_scale: k must be >= 1");
  const std::size_t R = m.rows() * k;
  const std::size_t C = m.cols() * k;
  std::vector<double> out(R * C);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c) out[r * C + c] = m(r / k, c / k);
  return Matrix(R, C, std::move(out));
}

/// Neumaier-compensated mean.
inline double mean(const Matrix& m) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : m.data()) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return (sum + comp) / static_cast<double>(m.size());
}

inline Matrix normalize_zero_mean(const Matrix& m) {
  const double mu = mean(m);
  std::vector<double> out(m.data().begin(), m.data().end());
  for (double& v : out) v -= mu;
  return Matrix(m.rows(), m.cols(), std::move(out));
}

}  // namespace sws
