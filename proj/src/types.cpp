#include "spinstar/types.hpp"

namespace spinstar {

Tolerances& default_tolerances() {
  static Tolerances tolerances;
  return tolerances;
}

Limits& limits() {
  static Limits instance;
  return instance;
}

}  // namespace spinstar
