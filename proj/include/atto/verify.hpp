#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "atto/random.hpp"

namespace atto {

/// Worst observed value of one identity across cases. Upper-bound checks keep
/// the maximum residual; lower-bound checks keep the minimum.
struct CheckResult {
  std::string name;
  double bound = 0.0;
  bool lower_bound = false;
  std::size_t cases = 0;
  double worst = 0.0;

  void record(double value);
  bool passed() const;
};

class CheckSet {
public:
  CheckResult& at(const std::string& name, double bound, bool lower_bound = false);
  const std::vector<CheckResult>& results() const noexcept { return results_; }
  bool all_passed() const;
  /// Null when no check of that name ran.
  const CheckResult* find(const std::string& name) const;

private:
  std::vector<CheckResult> results_;
};

void verify_inner_functions(InstanceGenerator& gen, std::size_t cases, CheckSet& out);
void verify_grid(InstanceGenerator& gen, std::size_t cases, CheckSet& out);
void verify_model_space(InstanceGenerator& gen, std::size_t cases, CheckSet& out);
void verify_atto(InstanceGenerator& gen, std::size_t cases, CheckSet& out);
void verify_characterize(InstanceGenerator& gen, std::size_t cases, CheckSet& out);
void verify_recover(InstanceGenerator& gen, std::size_t cases, CheckSet& out);

/// Every family in order, from one generator seeded with `seed`.
CheckSet run_verify_suite(std::uint64_t seed, std::size_t cases);

}  // namespace atto
