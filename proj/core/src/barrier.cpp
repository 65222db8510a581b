// SPDX-License-Identifier: Apache-2.0
//
// Log-barrier interior-point method with damped Newton centering.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "noma/solvers.hpp"

namespace noma::solvers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Value of the log-sum-exp part ln(c + sum exp(z_m)) and the softmax
/// weights of each exp term.
double lse_core(const LogSumExpConstraint& c, std::span<const double> x, std::vector<double>* weights) {
  double zmax = c.constant > 0.0 ? std::log(c.constant) : -kInf;
  for (const auto& e : c.exp_terms) zmax = std::max(zmax, x[e.var] + e.log_weight);
  if (zmax == -kInf) throw std::invalid_argument("log-sum-exp constraint has no terms");
  double s = c.constant > 0.0 ? c.constant * std::exp(-zmax) : 0.0;
  for (const auto& e : c.exp_terms) s += std::exp(x[e.var] + e.log_weight - zmax);
  const double value = zmax + std::log(s);
  if (weights) {
    weights->resize(c.exp_terms.size());
    for (std::size_t m = 0; m < c.exp_terms.size(); ++m)
      (*weights)[m] = std::exp(x[c.exp_terms[m].var] + c.exp_terms[m].log_weight - value);
  }
  return value;
}

double affine_value(const std::vector<AffineTerm>& terms, std::span<const double> x) {
  double v = 0.0;
  for (const auto& t : terms) v += t.coeff * x[t.var];
  return v;
}

void validate_problem(const ConvexSubproblem& sp, std::size_t start_size) {
  if (sp.objective.size() != sp.num_vars) throw std::invalid_argument("ConvexSubproblem: objective size mismatch");
  if (start_size != sp.num_vars) throw std::invalid_argument("ConvexSubproblem: start point size mismatch");
  auto check_vars = [&](const auto& terms) {
    for (const auto& t : terms)
      if (t.var >= sp.num_vars) throw std::invalid_argument("ConvexSubproblem: variable index out of range");
  };
  for (const auto& c : sp.linear) check_vars(c.terms);
  for (const auto& c : sp.log_sum_exp) {
    check_vars(c.affine);
    check_vars(c.exp_terms);
    if (c.constant < 0.0) throw std::invalid_argument("ConvexSubproblem: negative log-sum-exp constant");
    if (c.constant == 0.0 && c.exp_terms.empty()) throw std::invalid_argument("ConvexSubproblem: empty log-sum-exp row");
  }
}

struct Barrier {
  const ConvexSubproblem& sp;

  /// Returns +inf outside the strict interior.
  double phi(const Eigen::VectorXd& x, double t) const {
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    double v = 0.0;
    for (std::size_t j = 0; j < sp.num_vars; ++j) v -= t * sp.objective[j] * x[static_cast<Eigen::Index>(j)];
    for (const auto& c : sp.linear) {
      const double f = constraint_value(c, xs);
      if (!(f < 0.0)) return kInf;
      v -= std::log(-f);
    }
    for (const auto& c : sp.log_sum_exp) {
      const double f = constraint_value(c, xs);
      if (!(f < 0.0)) return kInf;
      v -= std::log(-f);
    }
    return v;
  }

  void derivatives(const Eigen::VectorXd& x, double t, Eigen::VectorXd& g, Eigen::MatrixXd& H) const {
    const auto n = static_cast<Eigen::Index>(sp.num_vars);
    std::span<const double> xs(x.data(), sp.num_vars);
    g.setZero(n);
    H.setZero(n, n);
    for (std::size_t j = 0; j < sp.num_vars; ++j) g[static_cast<Eigen::Index>(j)] = -t * sp.objective[j];

    for (const auto& c : sp.linear) {
      const double inv = 1.0 / -constraint_value(c, xs);
      Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
      for (const auto& term : c.terms) a[static_cast<Eigen::Index>(term.var)] += term.coeff;
      g += inv * a;
      H.noalias() += (inv * inv) * a * a.transpose();
    }
    std::vector<double> w;
    for (const auto& c : sp.log_sum_exp) {
      const double f = lse_core(c, xs, &w) + affine_value(c.affine, xs) + c.offset;
      const double inv = 1.0 / -f;
      Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
      for (std::size_t m = 0; m < c.exp_terms.size(); ++m) q[static_cast<Eigen::Index>(c.exp_terms[m].var)] += w[m];
      Eigen::VectorXd grad = q;
      for (const auto& term : c.affine) grad[static_cast<Eigen::Index>(term.var)] += term.coeff;
      g += inv * grad;
      H.noalias() += (inv * inv) * grad * grad.transpose();
      // Hessian of the log-sum-exp part: diag(q) - q q^T.
      H.diagonal() += inv * q;
      H.noalias() -= inv * q * q.transpose();
    }
  }
};

enum class CenterOutcome { Converged, Stalled, IterationLimit, Stopped };

CenterOutcome center(const Barrier& bar, Eigen::VectorXd& x, double t, const BarrierSettings& s,
                     std::size_t& newton_count, const std::function<bool(const Eigen::VectorXd&)>& stop) {
  const auto n = x.size();
  Eigen::VectorXd g(n);
  Eigen::MatrixXd H(n, n);
  double phi_x = bar.phi(x, t);
  for (std::size_t it = 0; it < s.max_newton; ++it) {
    bar.derivatives(x, t, g, H);
    const double reg = 1e-14 * std::max(1.0, H.diagonal().cwiseAbs().maxCoeff());
    H.diagonal().array() += reg;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    Eigen::VectorXd dx = ldlt.solve(-g);
    if (ldlt.info() != Eigen::Success || !dx.allFinite()) return CenterOutcome::Stalled;
    const double lambda2 = -g.dot(dx);
    ++newton_count;
    if (!(lambda2 >= 0.0)) return CenterOutcome::Stalled;
    if (lambda2 / 2.0 <= s.newton_tol) return CenterOutcome::Converged;

    double step = 1.0;
    const double slope = g.dot(dx);
    bool moved = false;
    for (int k = 0; k < 80; ++k) {
      Eigen::VectorXd trial = x + step * dx;
      const double phi_t = bar.phi(trial, t);
      if (phi_t <= phi_x + 0.01 * step * slope) {
        // Decrease below rounding of phi: the center is as good as doubles allow.
        const bool flat = phi_x - phi_t <= 1e-14 * std::max(1.0, std::abs(phi_x));
        x = std::move(trial);
        phi_x = phi_t;
        moved = true;
        if (flat) return CenterOutcome::Converged;
        break;
      }
      step *= 0.5;
    }
    if (!moved) return CenterOutcome::Stalled;
    if (stop && stop(x)) return CenterOutcome::Stopped;
  }
  return CenterOutcome::IterationLimit;
}

struct Run {
  Eigen::VectorXd x;
  std::size_t outer = 0;
  std::size_t newton = 0;
  bool newton_failed = false;
  bool stopped = false;
  std::string message;
};

Run barrier_loop(const ConvexSubproblem& sp, Eigen::VectorXd x, const BarrierSettings& s,
                 const std::function<bool(const Eigen::VectorXd&)>& stop) {
  const Barrier bar{sp};
  Run run;
  const double m = static_cast<double>(std::max<std::size_t>(sp.num_constraints(), 1));
  double t = s.t0;
  for (;;) {
    ++run.outer;
    const auto outcome = center(bar, x, t, s, run.newton, stop);
    if (outcome == CenterOutcome::Stopped) {
      run.stopped = true;
      break;
    }
    if (outcome == CenterOutcome::IterationLimit) {
      run.newton_failed = true;
      run.message = "Newton centering hit max_newton at t=" + std::to_string(t);
      break;
    }
    if (m / t <= s.outer_eps) break;
    t *= s.mu;
  }
  run.x = std::move(x);
  return run;
}

}  // namespace

const char* to_string(BarrierStatus s) noexcept {
  switch (s) {
    case BarrierStatus::Optimal: return "Optimal";
    case BarrierStatus::Infeasible: return "Infeasible";
    case BarrierStatus::NewtonFailed: return "NewtonFailed";
  }
  return "Unknown";
}

double constraint_value(const LinearConstraint& c, std::span<const double> x) {
  return affine_value(c.terms, x) - c.rhs;
}

double constraint_value(const LogSumExpConstraint& c, std::span<const double> x) {
  return lse_core(c, x, nullptr) + affine_value(c.affine, x) + c.offset;
}

std::vector<double> constraint_gradient(const LinearConstraint& c, std::span<const double> x) {
  std::vector<double> g(x.size(), 0.0);
  for (const auto& t : c.terms) g[t.var] += t.coeff;
  return g;
}

std::vector<double> constraint_gradient(const LogSumExpConstraint& c, std::span<const double> x) {
  std::vector<double> w;
  lse_core(c, x, &w);
  std::vector<double> g(x.size(), 0.0);
  for (std::size_t m = 0; m < c.exp_terms.size(); ++m) g[c.exp_terms[m].var] += w[m];
  for (const auto& t : c.affine) g[t.var] += t.coeff;
  return g;
}

double max_violation(const ConvexSubproblem& sp, std::span<const double> x) {
  double worst = -kInf;
  for (const auto& c : sp.linear) worst = std::max(worst, constraint_value(c, x));
  for (const auto& c : sp.log_sum_exp) worst = std::max(worst, constraint_value(c, x));
  return worst;
}

double check_gradients(const ConvexSubproblem& sp, std::span<const double> point) {
  constexpr double h = 1e-6;
  std::vector<double> xp(point.begin(), point.end());
  double worst = 0.0;
  auto probe = [&](const auto& c) {
    const auto g = constraint_gradient(c, point);
    for (std::size_t j = 0; j < xp.size(); ++j) {
      const double orig = xp[j];
      xp[j] = orig + h;
      const double fp = constraint_value(c, xp);
      xp[j] = orig - h;
      const double fm = constraint_value(c, xp);
      xp[j] = orig;
      worst = std::max(worst, std::abs(g[j] - (fp - fm) / (2.0 * h)));
    }
  };
  for (const auto& c : sp.linear) probe(c);
  for (const auto& c : sp.log_sum_exp) probe(c);
  return worst;
}

double log_rate_term(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("log_rate_term: r must be > 0");
  if (r > 1.0) return r * std::numbers::ln2 + std::log1p(-std::exp2(-r));
  return std::log(std::expm1(r * std::numbers::ln2));
}

double log_rate_slope(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("log_rate_slope: r must be > 0");
  return std::numbers::ln2 / -std::expm1(-r * std::numbers::ln2);
}

BarrierResult solve_subproblem(const ConvexSubproblem& sp, const BarrierSettings& settings,
                               std::span<const double> start) {
  validate_problem(sp, start.size());
  if (!(settings.mu > 1.0) || !(settings.t0 > 0.0) || !(settings.newton_tol > 0.0) || !(settings.outer_eps > 0.0))
    throw std::invalid_argument("BarrierSettings: need mu > 1 and positive t0/tolerances");

  const auto n = static_cast<Eigen::Index>(sp.num_vars);
  Eigen::VectorXd x(n);
  for (Eigen::Index j = 0; j < n; ++j) x[j] = start[static_cast<std::size_t>(j)];

  BarrierResult res;
  std::size_t newton_total = 0;
  const double v0 = max_violation(sp, start);
  if (!(v0 < 0.0)) {
    // Phase I: minimize s subject to f_i(x) <= s, s >= -1.
    ConvexSubproblem p1;
    p1.num_vars = sp.num_vars + 1;
    const std::size_t sv = sp.num_vars;
    p1.objective.assign(p1.num_vars, 0.0);
    p1.objective[sv] = -1.0;
    for (auto c : sp.linear) {
      c.terms.push_back({sv, -1.0});
      p1.linear.push_back(std::move(c));
    }
    for (auto c : sp.log_sum_exp) {
      c.affine.push_back({sv, -1.0});
      p1.log_sum_exp.push_back(std::move(c));
    }
    p1.linear.push_back({{{sv, -1.0}}, 1.0});
    Eigen::VectorXd x1(n + 1);
    x1.head(n) = x;
    x1[n] = std::isfinite(v0) ? v0 + 1.0 : kInf;
    if (!std::isfinite(x1[n])) {
      res.status = BarrierStatus::Infeasible;
      res.message = "start point has non-finite constraint values";
      return res;
    }
    BarrierSettings s1 = settings;
    s1.outer_eps = std::min(settings.outer_eps, 1e-8);
    const Run r1 = barrier_loop(p1, x1, s1, [sv](const Eigen::VectorXd& z) { return z[static_cast<Eigen::Index>(sv)] < -1e-6; });
    newton_total += r1.newton;
    x = r1.x.head(n);
    std::span<const double> xs(x.data(), sp.num_vars);
    if (!(max_violation(sp, xs) < 0.0)) {
      res.status = BarrierStatus::Infeasible;
      res.x.assign(x.data(), x.data() + n);
      res.newton_iterations = newton_total;
      res.message = r1.newton_failed ? "phase I did not converge" : "no strictly feasible point";
      return res;
    }
  }

  const Run r2 = barrier_loop(sp, x, settings, nullptr);
  res.x.assign(r2.x.data(), r2.x.data() + n);
  res.outer_iterations = r2.outer;
  res.newton_iterations = newton_total + r2.newton;
  res.value = 0.0;
  for (std::size_t j = 0; j < sp.num_vars; ++j) res.value += sp.objective[j] * res.x[j];
  res.status = r2.newton_failed ? BarrierStatus::NewtonFailed : BarrierStatus::Optimal;
  res.message = r2.message;
  return res;
}

}  // namespace noma::solvers
