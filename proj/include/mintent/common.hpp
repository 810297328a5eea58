#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace mintent {

inline constexpr const char* kToolName = "mintent";
inline constexpr const char* kToolVersion = "0.1.0";

// ---- error taxonomy ------------------------------------------------------
// Every library error carries the process exit code the CLI maps it to:
//   2 = I/O or configuration, 3 = data coverage, 4 = protocol, 5 = numerical.
struct Error : std::runtime_error {
  int exit_code;
  Error(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error("io: " + m, 2) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("config: " + m, 2) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& m) : Error("schema: " + m, 2) {}
};
struct LabelError : Error {
  explicit LabelError(const std::string& m) : Error("label: " + m, 2) {}
};
struct StreamValidationError : Error {
  explicit StreamValidationError(const std::string& m) : Error("validation: " + m, 2) {}
};
struct InsufficientDataError : Error {
  explicit InsufficientDataError(const std::string& m) : Error("insufficient data: " + m, 3) {}
};
struct CoverageError : Error {
  explicit CoverageError(const std::string& m) : Error("coverage: " + m, 3) {}
};
struct LeakageError : Error {
  explicit LeakageError(const std::string& m) : Error("protocol: " + m, 4) {}
};
struct NumericError : Error {
  explicit NumericError(const std::string& m) : Error("numeric: " + m, 5) {}
};

// ---- small 3D vector -------------------------------------------------------

struct Vec3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw NumericError("cannot normalize zero vector");
    return {x / n, y / n, z / n};
  }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Angle between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw NumericError("angle of zero vector");
  double c = a.dot(b) / (na * nb);
  c = std::max(-1.0, std::min(1.0, c));
  return std::acos(c);
}

// ---- deterministic randomness ---------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97f4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9E3779B97f4A7C15ull + (a << 6) + (a >> 2));
  return splitmix64(s);
}

// mt19937_64 is fully specified by the standard, and the transforms below
// avoid std::*_distribution, whose output is implementation-defined. Results
// are therefore reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; second variate discarded to keep the call sequence simple.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double std_dev) { return mean + std_dev * normal(); }

  std::uint64_t next_u64() { return engine_(); }

  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  // index drawn proportionally to non-negative weights
  std::size_t weighted_index(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) throw ConfigError("weighted_index: weights sum to zero");
    double r = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      r -= weights[i];
      if (r < 0.0) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

// ---- numeric & string helpers ----------------------------------------------

inline double logsumexp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;  // all -inf (or a nan propagates)
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

// shortest exact decimal form; parses back to the identical double
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> split(const std::string& s, char delim);
std::string trim(const std::string& s);
double parse_double_strict(const std::string& s);
long parse_long_strict(const std::string& s);

}  // namespace mintent
