#include <pybind11/pybind11.h>
PYBIND11_MODULE(_starworlds, m) { m.doc() = "starworlds core"; }
