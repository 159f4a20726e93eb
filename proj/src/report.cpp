#include "locint/report.hpp"

#include <cstdio>

namespace locint {

std::string CheckReport::format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace locint
