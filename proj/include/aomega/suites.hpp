#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aomega/report.hpp"

namespace aomega {

struct SessionConfig {
  std::int64_t p = 2;
  int depth = 1;
  int dim = 2;
  int bound = 1;
  int precision = 3;
  std::uint64_t seed = 42;
};

struct SessionLimits {
  std::int64_t max_p = 13;
  int max_depth = 3;
  int max_dim = 4;
  int max_bound = 8;
  int max_precision = 4;
  /// Gradings per box; one 4-byte class id is stored per grading.
  std::size_t max_gradings = std::size_t{1} << 26;
  /// Weights zeta^k - 1 (one per box side value) times the degree of
  /// Z[zeta_{p^level}]; elements are stored densely.
  std::size_t max_cyclotomic_work = std::size_t{1} << 24;
};

/// Throws std::invalid_argument naming the first offending field.
void validate(const SessionConfig& config, const SessionLimits& limits = {});
/// Also checks the size of the grading box (2 B p^n + 1)^d.
void validate_box(const SessionConfig& config, const SessionLimits& limits = {});

/// Stages over Z[zeta_{p^level}]: tilde Omega uses level n, the Hodge-Tate
/// comparison level n + 1.
void validate_cyclotomic(const SessionConfig& config, int level, const SessionLimits& limits = {});

const std::vector<std::string>& suite_names();

struct SuiteOutcome {
  std::string suite;
  SessionConfig config;
  std::size_t instances = 0;
  Report report;
};

/// Throws std::invalid_argument for an unknown suite or an invalid config.
SuiteOutcome run_suite(const std::string& name, const SessionConfig& config);

/// L eta_p on Z --p--> Z and Z --p^2--> Z.
Report check_warning_pair(std::int64_t p = 2);

struct WittSuiteOptions {
  int samples = 100;
  std::uint64_t seed = 1;
};
/// Digit round trips, phi([a]) = [a^p] and multiplicativity at every precision
/// up to `precision`.
Report run_witt_suite(std::int64_t p, int precision, const WittSuiteOptions& options = {});
/// Frobenius fixed points over F_4, F_8, F_9 against enumeration of all vectors.
Report run_fixed_point_suite(int trials, std::uint64_t seed);

/// Summand elements are q^{a_j} - 1, and their images under theta are the
/// weights of the O_C model.
Report check_torus_decomposition(const SessionConfig& config);

}  // namespace aomega
