#include <pybind11/pybind11.h>

#include "voak/models.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_voak, m) {
  m.doc() = "exact truncated vertex operator algebra toolkit";
  m.def("version", [] { return "0.1.0"; });
}
