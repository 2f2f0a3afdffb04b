#pragma once

#include <span>

#include "pqb/moments.hpp"

namespace pqb {

enum class Scheme { FixedPQ, OneMinusReciprocal, Custom };

/// n -> (p_n, q_n). Generated pairs always satisfy 0 < q_n < p_n <= 1;
/// the generator itself rejects anything else.
struct ParamSequence {
  Scheme scheme = Scheme::FixedPQ;
  std::function<PQParamsF(int)> generator;

  PQParamsF at(int n) const { return generator(n); }
};

ParamSequence make_fixed(double p, double q);

/// p_n = 1 - 1/(n+1), q_n = 1 - 1/n for n >= 2; [n] grows without bound.
ParamSequence make_one_minus_reciprocal();

ParamSequence make_custom(std::function<PQParamsF(int)> generator);

struct ExperimentRecord {
  int n = 0;
  double p = 0, q = 0;
  double bracket_n = 0;  // [n]_{p_n,q_n}
  double sup_error = 0;  // grid sup |B^[r]f - f|
  double omega = 0;      // omega(f^(r); [n]^{-1/2})
  double bound = 0;      // [n]^{-r/2} * omega
  double ratio = 0;      // sup_error / bound, 0 when bound vanishes
};

struct RateFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid modulus of continuity: max |f(x)-f(y)| over grid pairs with
/// |x-y| <= delta, x = i/grid_size. A lower estimate of the true sup.
double modulus(const std::function<double(double)>& f, double delta, int grid_size);

/// One record per n: sup error of the order-r operator against the
/// omega-based bound. Records are ordered by n regardless of scheduling.
std::vector<ExperimentRecord> run_bound_experiment(const FunctionBundle& bundle, int r,
                                                   const ParamSequence& seq,
                                                   std::span<const int> n_list, int grid_size);

/// Least-squares slope of log sup_error against log [n]; records with
/// sup_error < 1e-14 are dropped. Throws DegenerateFit with fewer than
/// 4 usable records.
RateFit fit_rate(std::span<const ExperimentRecord> records);

struct VoronovskajaRow {
  int n = 0;
  double p = 0, q = 0;
  double bracket_n = 0;
  double deviation = 0;  // sup_x |[n](B f - f)(x) - x(1-x) f''(x)/2|
};

/// Deviation of the scaled error from its second-order asymptotic target.
std::vector<VoronovskajaRow> voronovskaja_table(const FunctionBundle& bundle,
                                                const ParamSequence& seq,
                                                std::span<const int> n_list, int grid_size);

struct RemainderCheck {
  double lhs_sup = 0;    // sup |B^[r]f - f - signed (r+1)- and (r+2)-moment terms|
  double rhs_bound = 0;  // grid max of the omega/K-hat envelope
  double ratio = 0;
};

/// Checks the order-r Taylor remainder of the operator against the
/// K-hat envelope built from estimate_constants. Needs r_max >= r+2.
RemainderCheck taylor_remainder_check(const FunctionBundle& bundle, int r, const PQParamsF& pq,
                                      int n, int grid_size);

enum class ConvergenceVerdict { Converged, NotConverged };

/// Converged when the final sup error is numerically zero or at most half
/// the initial one; everything else is reported as non-convergence.
ConvergenceVerdict assess_convergence(std::span<const ExperimentRecord> records);

}  // namespace pqb
