#include "isbst/analysis/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "isbst/core/errors.hpp"

namespace isbst::analysis {

const ObjectiveComparison& ComparisonReport::row(Objective o) const {
  for (const auto& r : rows) {
    if (r.objective == o) return r;
  }
  throw ContractViolation("report has no row for " + std::string(objective_name(o)));
}

double median(std::vector<double> values) {
  if (values.empty()) throw ValidationError("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

ComparisonReport compare_populations(const BehaviorSample& a, const BehaviorSample& b, std::string scope) {
  if (a.rows.empty() || b.rows.empty()) throw ValidationError("compare_populations: samples must be non-empty");
  ComparisonReport report{a.label, b.label, std::move(scope), a.rows.size(), b.rows.size(), {}};
  for (Objective o : kObjectives) {
    const auto xa = a.column(o);
    const auto xb = b.column(o);
    report.rows.push_back(ObjectiveComparison{o, mann_whitney_u(xa, xb), vargha_delaney_a(xa, xb), median(xa), median(xb)});
  }
  return report;
}

std::string to_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "objective,n_a,n_b,median_a,median_b,u,p_value,exact,a_measure,magnitude\n";
  for (const auto& r : report.rows) {
    out << objective_name(r.objective) << ',' << report.n_a << ',' << report.n_b << ',' << r.median_a << ',' << r.median_b << ','
        << r.test.u << ',' << r.test.p_value << ',' << (r.test.exact ? "true" : "false") << ',' << r.effect.a << ','
        << to_string(r.effect.magnitude) << '\n';
  }
  return out.str();
}

Json to_json(const ComparisonReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"objective", objective_name(r.objective)},
                        {"u", r.test.u},
                        {"p_value", r.test.p_value},
                        {"exact", r.test.exact},
                        {"a_measure", r.effect.a},
                        {"magnitude", to_string(r.effect.magnitude)},
                        {"median_a", r.median_a},
                        {"median_b", r.median_b}});
  }
  return Json{{"sample_a", report.label_a}, {"sample_b", report.label_b}, {"scope", report.scope},
              {"n_a", report.n_a}, {"n_b", report.n_b}, {"objectives", rows}};
}

}  // namespace isbst::analysis
