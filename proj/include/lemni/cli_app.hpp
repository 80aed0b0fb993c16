#pragma once

#include <ostream>
#include <string>

#include "lemni/subordination.hpp"

namespace lemni::cli {

// Exit codes, stable across commands:
//   0 success / holds, 1 semantic failure (non-membership or violation),
//   2 bad input, 3 evaluation error, 4 I/O error.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

// "identity", "moebius:a=0.5", "koebe_like:beta=2", "exp_scaled:alpha=(0,1)",
// "poly:0,1,0.5", "qc_composed:c=0.5,rho=1", inline JSON ("{...}") or a JSON
// file ("@path").  Throws InvalidParams.
AnalyticMap parse_function_spec(const std::string &spec);

// "sl", "sstar_qc", "janowski", "cor24", "cor27" with their parameters.
ClassSpec parse_class_spec(const std::string &name, double c, double A, double B);

// "(re,im)" or a plain real number.
Cx parse_complex(const std::string &text);

} // namespace lemni::cli
