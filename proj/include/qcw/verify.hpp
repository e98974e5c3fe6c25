#pragma once

// Property suites behind `qcw verify`. Every check is "measured <= bound";
// slack = bound - measured. Deterministic for a given seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qcw/beltrami.hpp"

namespace qcw {

struct PropertyCheck {
  std::string name;
  double measured = 0;
  double bound = 0;
  bool pass() const { return measured <= bound; }
  double slack() const { return bound - measured; }
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyCheck> checks;
  bool passed() const;
};

const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

std::string format_suite(const SuiteResult& r);

/// mu = sum_{j+l<=3} a_jl z^j conj(z)^l with Gaussian a_jl, sampled on the
/// grid and rescaled so that the largest sample modulus is exactly k.
BeltramiGrid random_smooth_mu(std::mt19937_64& rng, double k, Index m);

}  // namespace qcw
