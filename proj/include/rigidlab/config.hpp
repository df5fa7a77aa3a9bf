#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "rigidlab/fields.hpp"

namespace rigidlab {

/// Parsed experiment configuration with every default resolved, so the echo
/// can show exactly what ran.  Sections: [base], [roof], [roof2], [weight],
/// [weight2], [tilt], [params]; field sections hold term lines in the text
/// serialization, [base] and [params] hold key = value pairs.
struct ExperimentConfig {
  std::array<std::int64_t, 4> matrix{2, 1, 1, 1};
  ScalarField roof = ScalarField::constant(1.0);
  std::optional<ScalarField> roof2;
  FiberWeight weight = FiberWeight::constant(1.0);
  std::optional<FiberWeight> weight2;
  std::optional<ScalarField> tilt;

  int k_max = 6;
  int n_lo = 4;
  int n_hi = 28;
  int n = 2;  ///< pigeonhole tuple length
  std::array<std::int64_t, 2> m{1, 0};
  double t = 1.0;
  double delta = 1.0;
  std::optional<double> t_max;   ///< bowen sweep end (default: t)
  std::optional<double> t_step;  ///< bowen sweep step (default: delta)
  double h0 = 1e-3;
  std::optional<double> tol;  ///< command-specific default when absent
  std::string b_kind = "zero";
  double b_rate = 0.0;
  double b_offset = 0.0;
  std::string method = "both";
};

/// Parses and validates a config file; all value errors carry the offending
/// line number in the ConfigError message.
ExperimentConfig load_config(const std::string& path);

/// Same parser over an in-memory string (file name only labels messages).
ExperimentConfig parse_config(const std::string& text, const std::string& name);

}  // namespace rigidlab
