#include "uavfso/quadrature.hpp"

#include <cstdio>
#include <string>

#include "uavfso/error.hpp"

namespace uavfso::quad {

void require_converged(const Result& r, std::string_view what) {
  if (r.converged) return;
  char buf[160];
  std::snprintf(buf, sizeof(buf), ": quadrature did not converge (value=%.6g, abs_error=%.3g, evaluations=%d)",
                r.value, r.abs_error, r.evaluations);
  throw ConvergenceError(std::string(what) + buf);
}

}  // namespace uavfso::quad
