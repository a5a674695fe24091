#include <pybind11/pybind11.h>

#include "skeinlab/intlaurent.hpp"

namespace py = pybind11;

PYBIND11_MODULE(skeinlab, m) {
  m.doc() = "exact skein and recurrence computations for two-bridge knots";
  m.def("quantum_integer", [](int n) {
    return skeinlab::quantum_integer(n).to_string();
  });
}
