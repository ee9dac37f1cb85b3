#include "nframe/tolerances.hpp"

#include <cstdlib>
#include <string>

namespace nframe::tol {

double scale() {
  static const double value = [] {
    const char* raw = std::getenv("NFRAME_TOLERANCE_SCALE");
    if (raw == nullptr) return 1.0;
    try {
      double parsed = std::stod(raw);
      if (parsed > 0.0) return parsed;
    } catch (...) {
    }
    return 1.0;
  }();
  return value;
}

}  // namespace nframe::tol
