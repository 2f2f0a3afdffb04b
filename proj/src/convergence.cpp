#include "pqb/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "pqb/parallel.hpp"

namespace pqb {

ParamSequence make_fixed(double p, double q) {
  PQParamsF check(p, q);  // validate once up front
  (void)check;
  return {Scheme::FixedPQ, [p, q](int) { return PQParamsF(p, q); }};
}

ParamSequence make_one_minus_reciprocal() {
  return {Scheme::OneMinusReciprocal, [](int n) {
            if (n < 2) throw std::invalid_argument("one-minus-reciprocal sequence needs n >= 2");
            return PQParamsF(1.0 - 1.0 / (n + 1), 1.0 - 1.0 / n);
          }};
}

ParamSequence make_custom(std::function<PQParamsF(int)> generator) {
  if (!generator) throw std::invalid_argument("make_custom: empty generator");
  return {Scheme::Custom, [g = std::move(generator)](int n) {
            const PQParamsF pq = g(n);  // PQParams construction revalidates
            return pq;
          }};
}

double modulus(const std::function<double(double)>& f, double delta, int grid_size) {
  if (!(delta > 0.0)) throw std::invalid_argument("modulus: delta must be positive");
  if (grid_size < 64) throw std::invalid_argument("modulus: grid_size must be >= 64");
  std::vector<double> vals(static_cast<std::size_t>(grid_size) + 1);
  for (int i = 0; i <= grid_size; ++i)
    vals[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / grid_size);
  const int window = static_cast<int>(std::min<double>(delta * grid_size, grid_size));
  double best = 0.0;
  for (int i = 0; i <= grid_size; ++i)
    for (int j = i + 1; j <= std::min(i + window, grid_size); ++j)
      best = std::max(best, std::abs(vals[static_cast<std::size_t>(i)] - vals[static_cast<std::size_t>(j)]));
  return best;
}

std::vector<ExperimentRecord> run_bound_experiment(const FunctionBundle& bundle, int r,
                                                   const ParamSequence& seq,
                                                   std::span<const int> n_list, int grid_size) {
  if (r < 0 || r > bundle.r_max())
    throw std::invalid_argument("run_bound_experiment: order exceeds derivatives of " + bundle.name);
  if (!std::is_sorted(n_list.begin(), n_list.end()))
    throw std::invalid_argument("run_bound_experiment: n_list must be non-decreasing");
  std::vector<ExperimentRecord> records(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t idx) {
    const int n = n_list[idx];
    const PQParamsF pq = seq.at(n);
    ExperimentRecord rec;
    rec.n = n;
    rec.p = pq.p;
    rec.q = pq.q;
    rec.bracket_n = pq_int(n, pq);
    double sup = 0.0;
    for (int i = 0; i <= grid_size; ++i) {
      const double x = static_cast<double>(i) / grid_size;
      sup = std::max(sup, std::abs(apply_higher(bundle, r, n, pq, x) - bundle.f(x)));
    }
    rec.sup_error = sup;
    rec.omega = modulus(bundle.deriv(r), 1.0 / std::sqrt(rec.bracket_n), grid_size);
    rec.bound = std::pow(rec.bracket_n, -0.5 * r) * rec.omega;
    rec.ratio = rec.bound > 0.0 ? rec.sup_error / rec.bound : 0.0;
    records[idx] = rec;
  });
  return records;
}

RateFit fit_rate(std::span<const ExperimentRecord> records) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& rec : records)
    if (rec.sup_error >= 1e-14) pts.emplace_back(std::log(rec.bracket_n), std::log(rec.sup_error));
  if (pts.size() < 4)
    throw DegenerateFit("fit_rate: need at least 4 records with positive sup_error, have " +
                        std::to_string(pts.size()));
  const double n = static_cast<double>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  RateFit fit;
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  double ss_res = 0;
  for (const auto& [x, y] : pts) {
    const double e = y - (fit.slope * x + fit.intercept);
    ss_res += e * e;
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

std::vector<VoronovskajaRow> voronovskaja_table(const FunctionBundle& bundle,
                                                const ParamSequence& seq,
                                                std::span<const int> n_list, int grid_size) {
  if (bundle.r_max() < 2)
    throw std::invalid_argument("voronovskaja_table: " + bundle.name + " lacks a second derivative");
  std::vector<VoronovskajaRow> rows(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t idx) {
    const int n = n_list[idx];
    const PQParamsF pq = seq.at(n);
    VoronovskajaRow row;
    row.n = n;
    row.p = pq.p;
    row.q = pq.q;
    row.bracket_n = pq_int(n, pq);
    double dev = 0.0;
    for (int i = 0; i <= grid_size; ++i) {
      const double x = static_cast<double>(i) / grid_size;
      const double scaled = row.bracket_n * (apply_higher(bundle, 0, n, pq, x) - bundle.f(x));
      const double target = x * (1.0 - x) * bundle.deriv(2)(x) / 2.0;
      dev = std::max(dev, std::abs(scaled - target));
    }
    row.deviation = dev;
    rows[idx] = row;
  });
  return rows;
}

RemainderCheck taylor_remainder_check(const FunctionBundle& bundle, int r, const PQParamsF& pq,
                                      int n, int grid_size) {
  if (bundle.r_max() < r + 2)
    throw std::invalid_argument("taylor_remainder_check: " + bundle.name +
                                " lacks derivatives of order " + std::to_string(r + 2));
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  double fact_r1 = 1.0, fact_r2 = 1.0;
  for (int i = 2; i <= r + 1; ++i) fact_r1 *= i;
  fact_r2 = fact_r1 * (r + 2);
  const double bn = pq_int(n, pq);
  RemainderCheck out;
  const int one_n[] = {n};
  const PQParamsF one_pq[] = {pq};
  const double k_lo = estimate_constants(r + 2, one_n, one_pq, AbsoluteMomentKind::PQPower, grid_size).k_hat;
  const double k_hi = estimate_constants(r + 4, one_n, one_pq, AbsoluteMomentKind::PQPower, grid_size).k_hat;
  double omega_sum = 0.0;
  {
    double fact_i = 1.0;
    for (int i = 0; i <= r; ++i) {
      if (i > 0) fact_i *= i;
      double fact_tail = 1.0;
      for (int j = 2; j <= r + 2 - i; ++j) fact_tail *= j;
      omega_sum += modulus(bundle.deriv(r + 2 - i), 1.0 / std::sqrt(bn), grid_size) / (fact_i * fact_tail);
    }
  }
  const double envelope_scale = (k_lo + k_hi) / std::pow(bn, 0.5 * r + 1.0) * omega_sum;
  for (int i = 0; i <= grid_size; ++i) {
    const double x = static_cast<double>(i) / grid_size;
    const double lhs = apply_higher(bundle, r, n, pq, x) - bundle.f(x) -
                       sign * bundle.deriv(r + 1)(x) * central_moment_ordinary(n, r + 1, pq, x) / fact_r1 -
                       sign * bundle.deriv(r + 2)(x) * central_moment_ordinary(n, r + 2, pq, x) / fact_r2;
    out.lhs_sup = std::max(out.lhs_sup, std::abs(lhs));
    out.rhs_bound = std::max(out.rhs_bound, envelope_scale * x * (1.0 - x));
  }
  out.ratio = out.rhs_bound > 0.0 ? out.lhs_sup / out.rhs_bound : 0.0;
  return out;
}

ConvergenceVerdict assess_convergence(std::span<const ExperimentRecord> records) {
  if (records.size() < 2)
    throw std::invalid_argument("assess_convergence: need at least two records");
  const double first = records.front().sup_error;
  const double last = records.back().sup_error;
  if (last <= 1e-12 || last <= 0.5 * first) return ConvergenceVerdict::Converged;
  return ConvergenceVerdict::NotConverged;
}

}  // namespace pqb
