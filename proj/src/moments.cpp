#include "pqb/moments.hpp"

#include <cmath>
#include <sstream>

#include "pqb/parallel.hpp"

namespace pqb {

namespace {

// B(prod_{s=0}^{m-1}(p^s t - q^s y); y) for a prepared operator.
RatPoly twisted_moment(const SymbolicOperator& op, int m) {
  // expand the product as sum_j c_j(y) t^j
  std::vector<RatPoly> cj{RatPoly(Rational(1))};
  Rational ppow(1), qpow(1);
  const auto& pq = op.params();
  for (int s = 0; s < m; ++s) {
    std::vector<RatPoly> next(cj.size() + 1);
    for (std::size_t j = 0; j < cj.size(); ++j) {
      next[j + 1] += cj[j] * ppow;
      next[j] += cj[j] * RatPoly::monomial(1, -qpow);
    }
    cj = std::move(next);
    ppow *= pq.p;
    qpow *= pq.q;
  }
  RatPoly acc;
  for (std::size_t j = 0; j < cj.size(); ++j)
    if (!cj[j].is_zero()) acc += cj[j] * op.monomial_image(static_cast<int>(j));
  return acc;
}

}  // namespace

MomentPoly central_moment_pq(int n, int m, const PQParamsR& pq) {
  if (m < 0 || n < 1) throw std::invalid_argument("central_moment_pq: need m >= 0 and n >= 1");
  SymbolicOperator op(n, pq, m);
  return {n, m, MomentKind::PQPower, twisted_moment(op, m)};
}

MomentPoly central_moment_ordinary(int n, int m, const PQParamsR& pq) {
  if (m < 0 || n < 1) throw std::invalid_argument("central_moment_ordinary: need m >= 0 and n >= 1");
  SymbolicOperator op(n, pq, m);
  // (t - y)^m = sum_j C(m,j) t^j (-y)^{m-j}
  RatPoly acc;
  Rational binom(1);
  for (int j = m; j >= 0; --j) {
    const int yd = m - j;
    const Rational sign = (yd % 2 == 0) ? Rational(1) : Rational(-1);
    acc += RatPoly::monomial(static_cast<std::size_t>(yd), sign * binom) * op.monomial_image(j);
    binom = binom * Rational(j) / Rational(m - j + 1);
  }
  return {n, m, MomentKind::Ordinary, acc};
}

double central_moment_ordinary(int n, int m, const PQParamsF& pq, double x) {
  if (m < 0) throw std::invalid_argument("central_moment_ordinary: m must be nonnegative");
  const auto bw = basis_weights(n, pq, x);
  const auto ns = nodes(n, pq);
  double acc = 0.0;
  for (std::size_t k = 0; k < bw.w.size(); ++k)
    acc += bw.w[k] * std::pow(ns.nodes[k] - x, m);
  return acc;
}

RatPoly moment_recurrence_residual(int n, int m, const PQParamsR& pq) {
  if (m < 1 || n < 1) throw std::invalid_argument("moment_recurrence_residual: need m >= 1 and n >= 1");
  SymbolicOperator op(n, pq, m + 1);
  const RatPoly m_hi = twisted_moment(op, m + 1);
  const RatPoly m_mid = twisted_moment(op, m);
  const RatPoly m_lo = twisted_moment(op, m - 1);
  const Rational bn = pq_int(n, pq);
  const Rational bm = pq_int(m, pq);
  const RatPoly x1x = RatPoly::from_coefficients({Rational(0), Rational(1), Rational(-1)});
  // D_{p,q} of x -> M_m(x/p), then the rescaled lower moment at qx/p
  const RatPoly d_shifted = pq_derivative(m_mid.scale_argument(Rational(1) / pq.p), pq);
  const RatPoly lo_shifted = m_lo.scale_argument(pq.q / pq.p);
  RatPoly rhs = x1x * d_shifted * (rational_pow(pq.p, m + n) / bn);
  rhs += x1x * lo_shifted * (rational_pow(pq.p, m + n - 1) * bm / bn);
  rhs += RatPoly::monomial(1) * m_mid *
         (bm * (rational_pow(pq.p, n) - rational_pow(pq.q, n)) / bn);
  return m_hi - rhs;
}

MomentDecomposition decompose_moment(int n, int m, const PQParamsR& pq) {
  if (m < 2) throw std::invalid_argument("decompose_moment: m must be >= 2");
  const MomentPoly moment = central_moment_pq(n, m, pq);
  const RatPoly x1x = RatPoly::from_coefficients({Rational(0), Rational(1), Rational(-1)});
  auto [quotient, remainder] = moment.poly.divide(x1x);
  MomentDecomposition out;
  out.n = n;
  out.m = m;
  out.exponent = (m + 1) / 2;
  out.residual = remainder;
  if (!remainder.is_zero() || quotient.degree() > m - 2) {
    std::ostringstream msg;
    msg << "decompose_moment: moment structure violated at n=" << n << " m=" << m
        << " p=" << to_fraction_string(pq.p) << " q=" << to_fraction_string(pq.q)
        << (remainder.is_zero() ? " (quotient degree too high)" : " (nonzero remainder)");
    throw StructureViolation(msg.str());
  }
  const Rational scale = rational_pow(pq_int(n, pq), out.exponent);
  out.b.resize(static_cast<std::size_t>(quotient.degree()) + 1);
  for (int k = 0; k <= quotient.degree(); ++k)
    out.b[static_cast<std::size_t>(k)] = quotient.coefficient(static_cast<std::size_t>(k)) * scale;
  return out;
}

ConstantEstimate estimate_constants(int m, std::span<const int> n_list,
                                    std::span<const PQParamsF> param_list,
                                    AbsoluteMomentKind kind, int grid) {
  if (m < 1) throw std::invalid_argument("estimate_constants: m must be >= 1");
  if (n_list.empty() || param_list.empty())
    throw std::invalid_argument("estimate_constants: grids must be nonempty");
  if (grid < 4) throw std::invalid_argument("estimate_constants: grid too small");
  ConstantEstimate out;
  out.m = m;
  out.c_exponent = (m + 1) / 2;
  out.k_exponent = m / 2.0;
  struct Cell {
    double c = 0, k = 0;
  };
  std::vector<Cell> cells(n_list.size() * param_list.size());
  parallel_for(cells.size(), [&](std::size_t idx) {
    const int n = n_list[idx / param_list.size()];
    const PQParamsF& pq = param_list[idx % param_list.size()];
    const auto ns = nodes(n, pq);
    const double bn = pq_int(n, pq);
    const double scale_c = std::pow(bn, out.c_exponent);
    const double scale_k = std::pow(bn, out.k_exponent);
    Cell cell;
    for (int i = 1; i < grid; ++i) {
      const double x = static_cast<double>(i) / grid;
      const auto bw = basis_weights(n, pq, x);
      double signed_sum = 0.0, abs_sum = 0.0;
      for (std::size_t k = 0; k < bw.w.size(); ++k) {
        if (bw.w[k] == 0.0) continue;
        double prod = 1.0, abs_prod = 1.0;
        if (kind == AbsoluteMomentKind::PQPower) {
          double ppow = 1.0, qpow = 1.0;
          for (int s = 0; s < m; ++s) {
            const double f = ppow * ns.nodes[k] - qpow * x;
            prod *= f;
            abs_prod *= std::abs(f);
            ppow *= pq.p;
            qpow *= pq.q;
          }
        } else {
          const double d = ns.nodes[k] - x;
          double ppow = 1.0, qpow = 1.0;
          for (int s = 0; s < m; ++s) {
            prod *= ppow * ns.nodes[k] - qpow * x;
            ppow *= pq.p;
            qpow *= pq.q;
          }
          abs_prod = std::pow(std::abs(d), m);
        }
        signed_sum += bw.w[k] * prod;
        abs_sum += bw.w[k] * abs_prod;
      }
      const double denom = x * (1.0 - x);
      cell.c = std::max(cell.c, std::abs(signed_sum) * scale_c / denom);
      cell.k = std::max(cell.k, abs_sum * scale_k / denom);
    }
    cells[idx] = cell;
  });
  for (const auto& cell : cells) {
    out.c_hat = std::max(out.c_hat, cell.c);
    out.k_hat = std::max(out.k_hat, cell.k);
  }
  return out;
}

}  // namespace pqb
