#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace xcsp3kit {

constexpr int64_t kMinusInfinity = std::numeric_limits<int64_t>::min();
constexpr int64_t kPlusInfinity = std::numeric_limits<int64_t>::max();

struct IntInterval {
  int64_t lo = 0;
  int64_t hi = 0;

  bool lo_infinite() const { return lo == kMinusInfinity; }
  bool hi_infinite() const { return hi == kPlusInfinity; }
  bool finite() const { return !lo_infinite() && !hi_infinite(); }
  bool contains(int64_t v) const { return lo <= v && v <= hi; }
  bool operator==(const IntInterval&) const = default;
};

std::string to_string(const IntInterval& r);

// Ordered disjoint ranges. Adjacent ranges are kept apart as written
// (1..3 4 stays two ranges) so printing gives back the source form.
class Domain {
 public:
  Domain() = default;
  explicit Domain(std::vector<IntInterval> ranges);  // must already be ordered and disjoint
  static Domain from_values(std::vector<int64_t> values);
  static Domain interval(int64_t lo, int64_t hi);

  const std::vector<IntInterval>& ranges() const { return ranges_; }
  bool empty() const { return ranges_.empty(); }
  bool finite() const;
  bool contains(int64_t v) const;
  // nullopt when infinite or beyond 2^64-1
  std::optional<uint64_t> size() const;
  int64_t min() const { return ranges_.front().lo; }
  int64_t max() const { return ranges_.back().hi; }
  // finite domains only
  std::vector<int64_t> values() const;

  std::string to_string() const;
  bool operator==(const Domain&) const = default;

 private:
  std::vector<IntInterval> ranges_;
};

}  // namespace xcsp3kit
