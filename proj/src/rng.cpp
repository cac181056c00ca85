#include "qfopt/rng.hpp"

#include "qfopt/stats.hpp"

namespace qfopt {

double CounterRng::normal() { return normal_quantile(uniform01()); }

}  // namespace qfopt
