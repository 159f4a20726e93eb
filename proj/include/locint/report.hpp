#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace locint {

/// Outcome of one verification. Maps are ordered so serialization is
/// deterministic.
struct CheckReport {
  std::string check;
  bool pass = true;
  std::map<std::string, long long> dimensions;
  std::map<std::string, double> residuals;
  /// Reported quantities that are not residuals (norms, seminorms).
  std::map<std::string, double> values;
  std::map<std::string, std::string> details;
  std::vector<std::string> notes;

  void fail_if(bool condition, const std::string& why) {
    if (condition) {
      pass = false;
      notes.push_back("FAIL: " + why);
    }
  }
  /// Records the residual and fails when it exceeds the bound.
  void bound(const std::string& name, double value, double limit) {
    auto it = residuals.find(name);
    residuals[name] = it == residuals.end() ? value : std::max(it->second, value);
    fail_if(!(value <= limit), name + " = " + format_double(value) + " exceeds " + format_double(limit));
  }
  static std::string format_double(double v);
};

}  // namespace locint
