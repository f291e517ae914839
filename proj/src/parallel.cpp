#include "tordec/parallel.hpp"

namespace tordec::par {

Mode& mode() {
#ifdef TORDEC_HAVE_OPENMP
  static Mode m = Mode::OpenMP;
#else
  static Mode m = Mode::Serial;
#endif
  return m;
}

}  // namespace tordec::par
