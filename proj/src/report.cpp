#include <cmath>
#include <cstdio>
#include <sstream>

#include "bmetric/verify.hpp"

namespace bmetric {

bool Comparison::pass() const {
  if (std::isnan(measured)) return false;
  if (relation == Relation::AtLeast) return measured - budget() >= bound - slack;
  return measured + budget() <= bound + slack;
}

bool CheckReport::pass() const {
  if (comparisons.empty()) return false;
  for (std::size_t i = 1; i < comparisons.size(); ++i)
    if (!comparisons[i].pass()) return false;
  return control ? !comparisons.front().pass() : comparisons.front().pass();
}

void CheckReport::param(const std::string& k, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  parameters.emplace_back(k, buf);
}

double CheckReport::value_of(const std::string& k) const {
  for (const auto& [name, v] : values)
    if (name == k) return v;
  return std::nan("");
}

std::string format_report(const CheckReport& r) {
  std::ostringstream out;
  char buf[256];
  out << (r.pass() ? "PASS " : "FAIL ") << r.id;
  if (r.control) out << " [control]";
  for (const auto& [k, v] : r.parameters) out << ' ' << k << '=' << v;
  std::snprintf(buf, sizeof buf, " (%.2fs)\n", r.seconds);
  out << buf;
  for (const auto& c : r.comparisons) {
    std::snprintf(buf, sizeof buf, "    %-4s %s: %.10g %s %.10g", c.pass() ? "ok" : "no",
                  c.name.c_str(), c.measured, c.relation == Relation::AtLeast ? ">=" : "<=",
                  c.bound);
    out << buf;
    if (c.slack != 0.0) {
      std::snprintf(buf, sizeof buf, " slack %.3g", c.slack);
      out << buf;
    }
    if (c.budget() != 0.0) {
      std::snprintf(buf, sizeof buf, " budget %.3g+%.3g", c.sampling_budget, c.oracle_budget);
      out << buf;
    }
    out << '\n';
  }
  for (const auto& n : r.notes) out << "    note: " << n << '\n';
  return out.str();
}

}  // namespace bmetric
