#include "bp2/lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bp2/errors.hpp"
#include "bp2/policy.hpp"

namespace bp2 {

namespace {

constexpr double kCertificateTolerance = 1e-9;
constexpr double kPsiStep = 1e-3;

void require_interior(double effort, const char* op) {
  if (!(effort > 0.0 && effort < 1.0)) {
    std::ostringstream msg;
    msg << op << ": effort " << effort << " is degenerate";
    throw DegeneratePrior(msg.str());
  }
}

// L(mu) written as a mu^2 + b mu + c.
struct Quadratic {
  double a;
  double b;
  double c;

  Quadratic(const MultiplierSet& m, double effort, double marginal_cost) {
    const double scale = 1.0 / (effort * (1.0 - effort));
    a = 2.0 + m.psi * scale;
    b = -1.0 - m.psi * scale * effort - m.phi;
    c = -m.psi * marginal_cost;
  }
  double operator()(double mu) const { return (a * mu + b) * mu + c; }
};

double max_excess(const Quadratic& q, double rho, std::size_t grid) {
  double worst = -std::numeric_limits<double>::infinity();
  const double denom = static_cast<double>(std::max<std::size_t>(grid, 2) - 1);
  for (std::size_t i = 0; i < std::max<std::size_t>(grid, 2); ++i) {
    worst = std::max(worst, q(static_cast<double>(i) / denom) - rho);
  }
  if (q.a < 0.0) {
    const double vertex = -q.b / (2.0 * q.a);
    if (vertex > 0.0 && vertex < 1.0) worst = std::max(worst, q(vertex) - rho);
  }
  return worst;
}

}  // namespace

double lagrangian(Belief mu, const MultiplierSet& m, double effort,
                  const CostFunction& cost) {
  return sender_value(mu) + m.psi * ic_integrand(mu, effort, cost) -
         m.phi * mu.mu();
}

double lagrangian_curvature(double psi, double effort) {
  require_interior(effort, "lagrangian_curvature");
  return 4.0 + 2.0 * psi / (effort * (1.0 - effort));
}

double hyperplane_violation(const MultiplierSet& m, double effort,
                            const CostFunction& cost, std::size_t grid) {
  require_interior(effort, "hyperplane_violation");
  return max_excess(Quadratic(m, effort, cost.gradient(effort)), m.rho, grid);
}

std::optional<MultiplierSet> find_multipliers(const PosteriorDistribution& tau,
                                              double effort,
                                              const CostFunction& cost,
                                              std::size_t grid) {
  require_interior(effort, "find_multipliers");
  const double gap = std::abs(expected_belief(tau) - effort);
  const double ic = expected_ic_residual(tau, effort, cost);
  if (gap > kCertificateTolerance || std::abs(ic) > kCertificateTolerance) {
    std::ostringstream msg;
    msg << "find_multipliers: distribution violates constraints at effort "
        << effort << " (plausibility gap " << gap << ", IC residual " << ic
        << ")";
    throw ConstraintViolation(msg.str());
  }

  const double scale = 1.0 / (effort * (1.0 - effort));
  const double marginal_cost = cost.gradient(effort);
  const double lo = tau.atoms().front().belief;
  const double hi = tau.atoms().back().belief;
  const double psi_min = -2.0 * effort * (1.0 - effort);

  auto attempt = [&](double psi) -> std::optional<MultiplierSet> {
    const double a = 2.0 + psi * scale;
    // Equal values at lo and hi force b = -a (lo + hi); a single atom needs
    // a stationary point there, b = -2 a lo, which is the same expression.
    const double b = -a * (lo + hi);
    MultiplierSet m;
    m.psi = psi;
    m.phi = -1.0 - psi * scale * effort - b;
    const Quadratic q(m, effort, marginal_cost);
    m.rho = q(lo);
    for (const Atom& atom : tau.atoms()) {
      if (std::abs(q(atom.belief) - m.rho) > kCertificateTolerance) {
        return std::nullopt;
      }
    }
    if (max_excess(q, m.rho, grid) > kCertificateTolerance) return std::nullopt;
    return m;
  };

  for (int k = 0;; ++k) {
    const double psi = 0.0 - kPsiStep * static_cast<double>(k);
    if (psi <= psi_min) break;
    if (auto m = attempt(psi)) return m;
  }
  return attempt(psi_min);
}

GCheck g_check(double effort, const CostFunction& cost) {
  return g_check(effort, cost, ic_integrand);
}

GCheck g_check(double effort, const CostFunction& cost,
               const IcIntegrand& integrand) {
  require_interior(effort, "g_check");
  const double bound = lambda_bar(cost);
  if (effort > bound + 1e-12) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "g_check: effort " << effort
        << " exceeds the implementable bound lambda_bar = " << bound;
    throw InfeasibleEffort(msg.str());
  }
  GCheck out{1.0 - cost.gradient(effort), 0.0};
  const PosteriorDistribution full = fully_informative(effort);
  for (const Atom& a : full.atoms()) {
    out.numeric += a.weight * integrand(Belief(a.belief), effort, cost);
  }
  return out;
}

}  // namespace bp2
