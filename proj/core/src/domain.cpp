#include "xcsp3kit/domain.hpp"

#include <algorithm>

#include "xcsp3kit/diagnostic.hpp"

namespace xcsp3kit {

std::string to_string(const IntInterval& r) {
  std::string lo = r.lo_infinite() ? "-infinity" : std::to_string(r.lo);
  std::string hi = r.hi_infinite() ? "+infinity" : std::to_string(r.hi);
  return lo + ".." + hi;
}

Domain::Domain(std::vector<IntInterval> ranges) : ranges_(std::move(ranges)) {
  for (size_t i = 0; i < ranges_.size(); ++i) {
    if (ranges_[i].lo > ranges_[i].hi)
      fail(ErrorKind::Grammar, "domain-order", "empty interval " + xcsp3kit::to_string(ranges_[i]));
    if (i > 0 && ranges_[i - 1].hi >= ranges_[i].lo)
      fail(ErrorKind::Grammar, "domain-order",
           "domain values must be strictly increasing: " + xcsp3kit::to_string(ranges_[i - 1]) +
               " then " + xcsp3kit::to_string(ranges_[i]));
  }
}

Domain Domain::from_values(std::vector<int64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<IntInterval> r;
  for (int64_t v : values) r.push_back({v, v});
  return Domain(std::move(r));
}

Domain Domain::interval(int64_t lo, int64_t hi) { return Domain({{lo, hi}}); }

bool Domain::finite() const {
  return ranges_.empty() || (!ranges_.front().lo_infinite() && !ranges_.back().hi_infinite());
}

bool Domain::contains(int64_t v) const {
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), v,
                             [](int64_t x, const IntInterval& r) { return x < r.lo; });
  if (it == ranges_.begin()) return false;
  return std::prev(it)->contains(v);
}

std::optional<uint64_t> Domain::size() const {
  if (!finite()) return std::nullopt;
  uint64_t total = 0;
  for (const auto& r : ranges_) {
    uint64_t w = static_cast<uint64_t>(r.hi) - static_cast<uint64_t>(r.lo);
    if (w == UINT64_MAX) return std::nullopt;
    if (__builtin_add_overflow(total, w + 1, &total)) return std::nullopt;
  }
  return total;
}

std::vector<int64_t> Domain::values() const {
  std::vector<int64_t> out;
  for (const auto& r : ranges_)
    for (int64_t v = r.lo;; ++v) {
      out.push_back(v);
      if (v == r.hi) break;
    }
  return out;
}

std::string Domain::to_string() const {
  std::string s;
  for (const auto& r : ranges_) {
    if (!s.empty()) s += ' ';
    s += r.lo == r.hi && r.finite() ? std::to_string(r.lo) : xcsp3kit::to_string(r);
  }
  return s;
}

}  // namespace xcsp3kit
