#pragma once

#include <cstdint>
#include <vector>

#include "xcsp3kit/model.hpp"

namespace xcsp3kit {

class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(size_t n) : values_(n, 0), bound_(n, 0) {}

  size_t size() const { return values_.size(); }
  void set(VarId x, int64_t v) {
    values_[static_cast<size_t>(x)] = v;
    bound_[static_cast<size_t>(x)] = 1;
  }
  void unset(VarId x) { bound_[static_cast<size_t>(x)] = 0; }
  bool has(VarId x) const { return x >= 0 && static_cast<size_t>(x) < bound_.size() && bound_[static_cast<size_t>(x)]; }
  int64_t operator[](VarId x) const;  // throws when unbound
  int64_t value(const IntRef& r) const { return r.is_var() ? (*this)[r.var] : r.value; }

 private:
  std::vector<int64_t> values_;
  std::vector<char> bound_;
};

// Evaluation errors (division by zero, overflow, negative exponent) are
// thrown as Error with kind Evaluation.
int64_t eval_expression(const Expr& e, const Assignment& a);
bool eval_condition(int64_t lhs, const Cond& c, const Assignment& a);

bool check_intension(const IntensionC& p, const Assignment& a);
bool check_extension(const ExtensionC& p, const Assignment& a);
bool check_regular(const RegularC& p, const Assignment& a);
bool check_mdd(const MddC& p, const Assignment& a);
bool check_all_different(const AllDifferentC& p, const Assignment& a);
bool check_all_different(const AllDifferentListsC& p, const Assignment& a);
bool check_all_different(const AllDifferentMatrixC& p, const Assignment& a);
bool check_all_equal(const AllEqualC& p, const Assignment& a);
bool check_ordered(const OrderedC& p, const Assignment& a);
bool check_lex(const LexListsC& p, const Assignment& a);
bool check_lex(const LexMatrixC& p, const Assignment& a);
bool check_sum(const SumC& p, const Assignment& a);
bool check_count(const CountC& p, const Assignment& a);
bool check_n_values(const NValuesC& p, const Assignment& a);
bool check_cardinality(const CardinalityC& p, const Assignment& a);
bool check_extremum(const ExtremumC& p, const Assignment& a);  // minimum and maximum
bool check_element(const ElementC& p, const Assignment& a);
bool check_channel(const ChannelC& p, const Assignment& a);
bool check_no_overlap(const NoOverlapC& p, const Assignment& a);
bool check_cumulative(const CumulativeC& p, const Assignment& a);
bool check_circuit(const CircuitC& p, const Assignment& a);
bool check_instantiation(const InstantiationC& p, const Assignment& a);
bool check_slide(const SlideC& p, const Assignment& a);

bool check_constraint(const Constraint& c, const Assignment& a);

// helpers shared with the checker
bool lex_compare(const std::vector<int64_t>& x, const std::vector<int64_t>& y, RelOp op);
int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

}  // namespace xcsp3kit
