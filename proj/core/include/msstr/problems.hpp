#pragma once

// Native implementations (objective + analytic gradient + standard start
// point) of a subset of the classical large-scale unconstrained test
// problems, with a finite-difference gradient checker.

#include "msstr/smallmat.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace msstr {

struct Problem {
  std::string name;
  int dim = 0;
  std::function<double(const Vec&)> eval_f;
  std::function<Vec(const Vec&)> eval_g;
  Vec x0;
  std::optional<double> known_fmin;
};

// Names of all implemented problems, sorted.
std::vector<std::string> catalog();

// Builds a problem instance.  `dim` is rounded up to the nearest valid
// structural multiple (e.g. divisibility by 3 or 4) when needed; throws
// std::out_of_range for unknown names.
Problem make_problem(const std::string& name, int dim = 1000);

// Maximum relative error between the analytic gradient and central finite
// differences with step h*(1+|x_i|).  Coordinates are sampled (50, seeded)
// when dim > 200.  The seed comes from MSS_TR_SEED when set.
double check_gradient(const Problem& p, const Vec& x, double h = 1e-6);

}  // namespace msstr
