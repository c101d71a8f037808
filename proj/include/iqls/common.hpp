#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace iqls {

// Variable values are 64-bit integers; coefficients are doubles.
using Value = std::int64_t;

// Sentinels for unbounded variable domains.
inline constexpr Value kMinusInf = std::numeric_limits<Value>::min();
inline constexpr Value kPlusInf = std::numeric_limits<Value>::max();

// Feasibility tolerance, scaled by the right-hand side magnitude.
inline double feas_eps(double rhs) {
  return 1e-6 * std::max(1.0, std::abs(rhs));
}

// A quadratic root counts as integral when within this distance of an integer.
inline constexpr double kRootIntTol = 1e-6;

// Objective deltas smaller than this are treated as zero when taking signs.
inline constexpr double kObjZeroTol = 1e-12;

// Best-objective placeholder before any feasible assignment is found.
inline constexpr double kInfObj = std::numeric_limits<double>::infinity();

struct ParseError : std::runtime_error {
  int line;
  explicit ParseError(const std::string& msg)
      : std::runtime_error("parse error: " + msg), line(0) {}
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error("parse error at line " + std::to_string(line_no) +
                           ": " + msg),
        line(line_no) {}
};

struct UnsupportedInstance : std::runtime_error {
  explicit UnsupportedInstance(const std::string& msg)
      : std::runtime_error("unsupported instance: " + msg) {}
};

struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg)
      : std::runtime_error("model error: " + msg) {}
};

struct UnboundedDomain : std::runtime_error {
  explicit UnboundedDomain(const std::string& msg)
      : std::runtime_error("unbounded domain: " + msg) {}
};

// Always-on invariant check (not compiled out in release builds).
inline void check(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

using Rng = std::mt19937_64;

inline std::size_t rand_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline Value rand_value(Rng& rng, Value lo, Value hi) {
  return std::uniform_int_distribution<Value>(lo, hi)(rng);
}

// Set of small integer ids with O(1) insert/erase/contains and random pick.
class IndexSet {
 public:
  void reset(std::size_t universe) {
    pos_.assign(universe, kAbsent);
    items_.clear();
  }
  bool contains(int id) const { return pos_[id] != kAbsent; }
  void insert(int id) {
    if (pos_[id] != kAbsent) return;
    pos_[id] = items_.size();
    items_.push_back(id);
  }
  void erase(int id) {
    std::size_t p = pos_[id];
    if (p == kAbsent) return;
    int last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[id] = kAbsent;
  }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<int>& items() const { return items_; }
  int pick(Rng& rng) const { return items_[rand_index(rng, items_.size())]; }

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos_;
  std::vector<int> items_;
};

}  // namespace iqls
