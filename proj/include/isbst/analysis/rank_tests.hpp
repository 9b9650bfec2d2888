#pragma once

#include <span>
#include <string_view>

namespace isbst::analysis {

/// Largest sample size for which the exact null distribution is used.
inline constexpr std::size_t kExactLimit = 12;

struct MannWhitneyResult {
  double u = 0.0;        ///< U of the first sample: #{a > b} + 0.5 #{a == b}
  double p_value = 1.0;  ///< two-sided
  bool exact = false;
};

/// Exact p when both samples have at most kExactLimit values and there are no
/// ties; otherwise the normal approximation. Throws ValidationError on an
/// empty sample.
MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p from the full null distribution of U over all
/// C(n+m, n) rank arrangements. Requires tie-free samples.
MannWhitneyResult mann_whitney_u_exact(std::span<const double> a, std::span<const double> b);

/// Normal approximation with tie and continuity corrections.
MannWhitneyResult mann_whitney_u_normal(std::span<const double> a, std::span<const double> b);

enum class EffectMagnitude { Negligible, Small, Medium, Large };

std::string_view to_string(EffectMagnitude m);

/// Thresholds on |A - 0.5|: 0.06, 0.14, 0.21.
EffectMagnitude effect_magnitude(double a_measure);

struct VarghaDelaney {
  double a = 0.5;
  EffectMagnitude magnitude = EffectMagnitude::Negligible;
};

/// A = (#{a_i > b_j} + 0.5 #{a_i == b_j}) / (|a| |b|).
VarghaDelaney vargha_delaney_a(std::span<const double> a, std::span<const double> b);

}  // namespace isbst::analysis
