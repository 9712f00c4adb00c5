#include <cmath>

#include <gtest/gtest.h>

#include "ksv/curve.hpp"
#include "ksv/errors.hpp"
#include "oracles.hpp"

using namespace ksv;

namespace {

FourierCurveSpec limacon() {
  // r = 1 + 2 cos t: inner loop, positive net area.
  FourierCurveSpec s;
  s.x1_cos = {1.0, 1.0, 1.0};
  s.x1_sin = {0.0, 0.0, 0.0};
  s.x2_cos = {0.0, 0.0, 0.0};
  s.x2_sin = {0.0, 1.0, 1.0};
  return s;
}

FourierCurveSpec cardioid() {
  // r = 1 + cos t: cusp at t = pi.
  FourierCurveSpec s;
  s.x1_cos = {0.5, 1.0, 0.5};
  s.x1_sin = {0.0, 0.0, 0.0};
  s.x2_cos = {0.0, 0.0, 0.0};
  s.x2_sin = {0.0, 1.0, 0.5};
  return s;
}

FourierCurveSpec wavy() {
  FourierCurveSpec s = FourierCurveSpec::ellipse(2.0, 1.0);
  s.x1_cos.resize(4, 0.0);
  s.x1_sin.resize(4, 0.0);
  s.x2_cos.resize(4, 0.0);
  s.x2_sin.resize(4, 0.0);
  s.x1_cos[3] = 0.1;
  s.x2_sin[2] = 0.08;
  s.x1_sin[2] = 0.05;
  return s;
}

}  // namespace

TEST(BuildSection, UnitCircle) {
  const SectionCurve c = build_section(FourierCurveSpec::circle(1.0), 256);
  EXPECT_NEAR(c.perimeter(), 2 * oracle::pi, 1e-13);
  EXPECT_NEAR(c.area(), oracle::pi, 1e-13);
  for (double k : c.curvature()) EXPECT_NEAR(k, 1.0, 1e-12);
}

TEST(BuildSection, EllipseAreaAndPerimeter) {
  const SectionCurve c = build_section(FourierCurveSpec::ellipse(2.0, 1.0), 512);
  const oracle::Ellipse e{2.0, 1.0};
  EXPECT_NEAR(c.area(), 2 * oracle::pi, 1e-12);
  EXPECT_NEAR(c.perimeter(), e.perimeter(), 1e-12);
  EXPECT_NEAR(c.perimeter(), 9.688448, 1e-6);
}

TEST(BuildSection, Errors) {
  FourierCurveSpec cw = FourierCurveSpec::circle(1.0);
  cw.x2_sin[1] = -1.0;
  EXPECT_THROW(build_section(cw, 256), OrientationError);
  EXPECT_THROW(build_section(FourierCurveSpec::circle(1.0), 32), GridTooCoarse);
  EXPECT_THROW(build_section(FourierCurveSpec::circle(1.0), 129), GridTooCoarse);
  EXPECT_THROW(build_section(limacon(), 256), SelfIntersection);
  EXPECT_THROW(build_section(cardioid(), 256), DegenerateCurve);
}

TEST(BuildSection, Invariants) {
  for (const auto& spec : {FourierCurveSpec::ellipse(2.0, 1.0), wavy(), FourierCurveSpec::circle(0.7)}) {
    const SectionCurve c = build_section(spec, 512);
    const double ds = c.perimeter() / 512;
    for (std::size_t j = 0; j < c.size(); ++j) {
      EXPECT_NEAR(c.tangent(j).norm(), 1.0, 1e-12);
      EXPECT_NEAR(c.normal(j).norm(), 1.0, 1e-12);
      EXPECT_NEAR(c.tangent(j).dot(c.normal(j)), 0.0, 1e-12);
      EXPECT_DOUBLE_EQ(c.grid().node(j), ds * j);
    }
    EXPECT_NEAR(c.closed_integral(c.curvature()), 2 * oracle::pi, 1e-10);
    EXPECT_NEAR(c.closed_integral(c.x1()), 0.0, 1e-10);
    EXPECT_NEAR(c.closed_integral(c.x2()), 0.0, 1e-10);
    EXPECT_GT(c.area(), 0.0);
  }
}

TEST(BuildSection, ArcLengthSpacingAgainstOracle) {
  // Node j of the ellipse lies at arc length j L / N measured by the ODE oracle.
  const SectionCurve c = build_section(FourierCurveSpec::ellipse(2.0, 1.0), 128);
  const oracle::Ellipse e{2.0, 1.0};
  const auto s = oracle::uniform_arc(e.perimeter(), 128);
  namespace ode = boost::numeric::odeint;
  for (std::size_t j = 0; j < 128; j += 9) {
    double len = 0.0;
    ode::integrate_adaptive(ode::make_controlled(1e-14, 1e-14, ode::runge_kutta_dopri5<double>()),
                            [&](const double&, double& d, double t) { d = e.speed(t); }, len, 0.0,
                            c.parameter()[j], 1e-3);
    EXPECT_NEAR(len, s[j], 1e-11);
  }
}

TEST(BuildSection, SpectralConvergence) {
  const SectionCurve a = build_section(wavy(), 256), b = build_section(wavy(), 512);
  EXPECT_NEAR(a.area(), b.area(), 1e-12);
  EXPECT_NEAR(a.perimeter(), b.perimeter(), 1e-12);
  EXPECT_LT((a.inertia() - b.inertia()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SectionProperties, UnitCircle) {
  const SectionProperties p = section_properties(build_section(FourierCurveSpec::circle(1.0), 256));
  EXPECT_NEAR(p.inertia(0, 0), oracle::pi, 1e-12);
  EXPECT_NEAR(p.inertia(1, 1), oracle::pi, 1e-12);
  EXPECT_NEAR(p.inertia(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(p.total_turning, 2 * oracle::pi, 1e-12);
}

TEST(SectionProperties, CentroidRecentring) {
  const SectionCurve c = build_section(FourierCurveSpec::circle(1.0).translated({1.0, 2.0}), 256);
  const SectionProperties p = section_properties(c);
  EXPECT_NEAR(p.centroid[0], 1.0, 1e-12);
  EXPECT_NEAR(p.centroid[1], 2.0, 1e-12);
  EXPECT_NEAR(c.closed_integral(c.x1()), 0.0, 1e-12);
  EXPECT_NEAR(c.closed_integral(c.x2()), 0.0, 1e-12);
}

TEST(SectionProperties, EllipseInertia) {
  // Line inertia of the ellipse about its axes by ODE quadrature in t.
  const SectionCurve c = build_section(FourierCurveSpec::ellipse(2.0, 1.0), 512);
  const oracle::Ellipse e{2.0, 1.0};
  namespace ode = boost::numeric::odeint;
  std::array<double, 2> I{0.0, 0.0};
  ode::integrate_adaptive(ode::make_controlled(1e-14, 1e-14, ode::runge_kutta_dopri5<std::array<double, 2>>()),
                          [&](const std::array<double, 2>&, std::array<double, 2>& d, double t) {
                            const auto x = e.x(t);
                            d[0] = x[0] * x[0] * e.speed(t);
                            d[1] = x[1] * x[1] * e.speed(t);
                          },
                          I, 0.0, 2 * oracle::pi, 1e-3);
  EXPECT_NEAR(c.inertia()(0, 0), I[0], 1e-10);
  EXPECT_NEAR(c.inertia()(1, 1), I[1], 1e-10);
}

TEST(SectionProperties, TranslationInvariance) {
  const SectionCurve a = build_section(wavy(), 256);
  const SectionCurve b = build_section(wavy().translated({-4.0, 0.5}), 256);
  EXPECT_NEAR(a.perimeter(), b.perimeter(), 1e-12);
  EXPECT_NEAR(a.area(), b.area(), 1e-12);
  EXPECT_LT((a.inertia() - b.inertia()).cwiseAbs().maxCoeff(), 1e-11);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a.curvature()[j], b.curvature()[j], 1e-11);
}

TEST(CumulativeIntegral, Examples) {
  const SectionCurve c = build_section(FourierCurveSpec::circle(1.0), 128);
  const Samples one(c.size(), 1.0);
  const Secular F = cumulative_integral(c, one);
  for (std::size_t j = 0; j < c.size(); ++j) EXPECT_NEAR(F.at_node(j), c.grid().node(j), 1e-13);
  EXPECT_NEAR(F.end_value(), c.perimeter(), 1e-13);

  Samples cs(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) cs[j] = std::cos(c.grid().node(j));
  const Secular S = cumulative_integral(c, cs);
  for (std::size_t j = 0; j < c.size(); ++j) EXPECT_NEAR(S.at_node(j), std::sin(c.grid().node(j)), 1e-12);
  EXPECT_NEAR(S.value(1.234), std::sin(1.234), 1e-12);

  // F(L) = 0 for the derivative of a smooth periodic g.
  Samples g(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) g[j] = std::exp(std::sin(2 * c.grid().node(j)));
  const Secular G = cumulative_integral(c, c.grid().derivative(g));
  EXPECT_NEAR(G.end_value(), 0.0, 1e-12);
  for (std::size_t j = 0; j < c.size(); ++j) EXPECT_NEAR(G.at_node(j), g[j] - g[0], 1e-10);
}

TEST(CumulativeIntegral, NestedMatchesClosedForm) {
  // int_0^s int_0^t cos = 1 - cos s; int of that = s - sin s.
  const SectionCurve c = build_section(FourierCurveSpec::circle(1.0), 128);
  Samples cs(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) cs[j] = std::cos(c.grid().node(j));
  const Secular once = cumulative_integral(c, cs);
  const Secular twice = cumulative_integral(c, once);
  for (double s : {0.3, 2.0, 5.5, 2 * oracle::pi}) EXPECT_NEAR(twice.value(s), 1 - std::cos(s), 1e-12);
  const Secular thrice = cumulative_integral(c, twice);
  for (double s : {0.3, 2.0, 5.5, 2 * oracle::pi}) EXPECT_NEAR(thrice.value(s), s - std::sin(s), 1e-12);
}

TEST(CumulativeIntegral, GridMismatch) {
  const SectionCurve c = build_section(FourierCurveSpec::circle(1.0), 128);
  EXPECT_THROW(cumulative_integral(c, Samples(64, 1.0)), GridMismatch);
  EXPECT_THROW(closed_integral(c, Samples(64, 1.0)), GridMismatch);
}

TEST(ClosedIntegral, Examples) {
  const SectionCurve c = build_section(FourierCurveSpec::circle(1.0), 128);
  EXPECT_NEAR(closed_integral(c, Samples(c.size(), 1.0)), 2 * oracle::pi, 1e-13);
  Samples sn(c.size()), rn(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    sn[j] = std::sin(c.grid().node(j));
    rn[j] = c.position(j).dot(c.normal(j));
  }
  EXPECT_NEAR(closed_integral(c, sn), 0.0, 1e-14);
  EXPECT_NEAR(closed_integral(c, rn), 2 * oracle::pi, 1e-12);
}

TEST(ParseBuiltin, Shorthands) {
  const FourierCurveSpec c = parse_builtin_section("circle(2.5)");
  EXPECT_DOUBLE_EQ(c.position(0.0)[0], 2.5);
  const FourierCurveSpec e = parse_builtin_section(" ellipse( 2 , 1 ) ");
  EXPECT_DOUBLE_EQ(e.position(oracle::pi / 2)[1], 1.0);
  EXPECT_THROW(parse_builtin_section("square(1)"), ParseError);
}
