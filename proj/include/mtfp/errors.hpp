#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtfp {

/// Malformed input: bad matrices, unknown labels, schema violations.
/// Distinct from axiom/certificate failures, which are reported, not thrown.
/// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mathematical failure raised while iterating (CLI exit code 1).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A recorded step violated the certified decay D_n <= lambda * D_{n-1}.
/// Carries the witness step so the offending certificate can be inspected.
class CertificateBreach : public SolverError {
 public:
  CertificateBreach(std::size_t step_, double prev_, double cur_, double lambda_)
      : SolverError("certificate breach at step " + std::to_string(step_) +
                    ": step distance " + std::to_string(cur_) + " exceeds lambda * " +
                    std::to_string(prev_) + " with lambda = " + std::to_string(lambda_)),
        step(step_),
        prev_dist(prev_),
        cur_dist(cur_),
        lambda(lambda_) {}

  std::size_t step;
  double prev_dist;
  double cur_dist;
  double lambda;
};

/// The caller-supplied section of g failed g(g_inv(z)) = z on a produced value.
class SectionError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace mtfp
