#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "martnorm/moment_bounds.hpp"
#include "martnorm/osekowski.hpp"

using namespace martnorm;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("moment profile families: pinned evaluations") {
  const MomentProfile unit = MomentProfile::bounded(1.0);
  CHECK(unit(1.0) == 1.0);
  CHECK(unit(40.0) == 1.0);
  CHECK(unit.p_sup() == kInf);

  const MomentProfile pl = MomentProfile::power_log(1.5, 2.0);
  CHECK(pl(std::exp(1.0)) == doctest::Approx(1.5 * std::exp(2.0)).epsilon(1e-14));
  CHECK(pl(1.0) == 0.0);  // ln 1 = 0

  const MomentProfile heavy = MomentProfile::heavy_tail(6.0, 0.0);
  CHECK(heavy(5.0) == doctest::Approx(1.0).epsilon(1e-14));  // (6-5)^(-1/6) = 1
  CHECK(heavy(6.0) == kInf);
  CHECK(heavy(8.0) == kInf);
  CHECK(heavy.p_sup() == 6.0);
  // log correction pushes the envelope up
  const MomentProfile heavy_log = MomentProfile::heavy_tail(6.0, 2.0, sv_log());
  CHECK(heavy_log(5.9) > heavy(5.9));

  CHECK_THROWS_AS(MomentProfile::bounded(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(MomentProfile::power_log(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(MomentProfile::heavy_tail(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(unit(0.5), std::invalid_argument);
}

TEST_CASE("moment profile: tabulated interpolation") {
  const MomentProfile tab = MomentProfile::tabulated({2.0, 4.0, 8.0}, {1.0, 2.0, 4.0});
  CHECK(tab(3.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(tab(4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tab(1.0) == 1.0);           // clamped to the front value below the grid
  CHECK(tab(8.0) == kInf);          // finiteness endpoint is exclusive
  CHECK(tab(7.999) == doctest::Approx(3.9995).epsilon(1e-10));
  CHECK(tab.p_sup() == 8.0);

  CHECK_THROWS_AS(MomentProfile::tabulated({2.0, 2.0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MomentProfile::tabulated({2.0, 4.0}, {2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(MomentProfile::tabulated({2.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(MomentProfile::tabulated({0.5, 2.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("moment profile: scaling and wrapping") {
  const MomentProfile two = MomentProfile::bounded(2.0);
  const MomentProfile six = two.scaled(3.0);
  CHECK(six(5.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(six.p_sup() == kInf);

  const MomentProfile heavy = MomentProfile::heavy_tail(6.0, 0.0).scaled(2.0);
  CHECK(heavy.p_sup() == 6.0);  // scaling keeps the finiteness endpoint
  CHECK(heavy(5.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(two.scaled(-1.0), std::invalid_argument);

  const MomentProfile fn =
      MomentProfile::from_function([](double p) { return std::sqrt(p); }, 9.0, "root");
  CHECK(fn(4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(fn(9.0) == kInf);
  CHECK(fn.describe() == "root");
}

TEST_CASE("nu: linearized moment bound against pinned values") {
  const MomentProfile unit = MomentProfile::bounded(1.0);
  // at p = 4 the envelope constant is attained: k_os * 4/ln4 = 45.548...
  CHECK(nu_osekowski(4.0, unit) == doctest::Approx(45.5481981440406109).epsilon(1e-12));
  CHECK(nu_osekowski(std::exp(2.0), unit) ==
        doctest::Approx(58.3210903470188229).epsilon(1e-12));
  CHECK(nu_osekowski(5.0, MomentProfile::bounded(0.0)) == 0.0);
  CHECK(nu_osekowski(7.0, MomentProfile::heavy_tail(6.0, 0.0)) == kInf);
  // scaling is linear in the envelope
  CHECK(nu_osekowski(6.0, unit.scaled(2.5)) ==
        doctest::Approx(2.5 * nu_osekowski(6.0, unit)).epsilon(1e-14));

  CHECK_THROWS_AS(nu_osekowski(3.9, unit), std::domain_error);
}

TEST_CASE("growth factor and rho") {
  CHECK(growth_factor(6.0, 2.0) == doctest::Approx(14.5).epsilon(1e-15));
  for (double p : {4.5, 10.0, 100.0}) {
    CHECK(growth_factor(p, 0.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(growth_factor(p, 0.0) <= growth_factor(p, 1.0));
  }
  // tends to 10 from above as p grows
  CHECK(growth_factor(1e6, 3.0) == doctest::Approx(10.0).epsilon(1e-4));

  CHECK_THROWS_AS(growth_factor(4.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(growth_factor(5.0, 5.0), std::domain_error);
  CHECK_THROWS_AS(growth_factor(5.0, -1.0), std::invalid_argument);

  const MomentProfile unit = MomentProfile::bounded(1.0);
  CHECK(rho(6.0, 2.0, unit) ==
        doctest::Approx(nu_osekowski(6.0, unit) * 14.5).epsilon(1e-14));
}

TEST_CASE("finiteness interval") {
  const MomentProfile unit = MomentProfile::bounded(1.0);
  FinitenessInterval j0 = finiteness_interval(unit, 0.0);
  CHECK(j0.p_minus == 4.0);
  CHECK(j0.p_plus == kInf);
  CHECK_FALSE(j0.violated);

  j0 = finiteness_interval(unit, 5.5);
  CHECK(j0.p_minus == 5.5);
  CHECK_FALSE(j0.violated);

  j0 = finiteness_interval(MomentProfile::heavy_tail(6.0, 0.0), 0.0);
  CHECK(j0.p_minus == 4.0);
  CHECK(j0.p_plus == 6.0);
  CHECK_FALSE(j0.violated);

  // endpoint below the entry threshold: nothing usable
  j0 = finiteness_interval(MomentProfile::heavy_tail(3.0, 0.0), 0.0);
  CHECK(j0.violated);
  j0 = finiteness_interval(MomentProfile::heavy_tail(6.0, 0.0), 7.0);
  CHECK(j0.violated);
}

TEST_CASE("bound profile: grid, beta branches, pinned value") {
  const MomentProfile unit = MomentProfile::bounded(1.0);
  const BoundProfile prof = make_bound_profile(unit, 0.0, 4.0);
  REQUIRE(prof.p_grid.size() == 200);
  CHECK(prof.p_grid.front() > 4.0);
  CHECK(prof.p_grid.back() <= 1e3);
  CHECK_FALSE(prof.violated);
  CHECK(prof.horizon == 4.0);

  // rho = 10 * nu at kappa = 0 and is increasing in p past the left edge,
  // so the infimum sits at the grid start
  CHECK(prof.rho_min == doctest::Approx(10.0 * 45.5481981440406109).epsilon(1e-5));
  for (std::size_t i = 0; i < prof.p_grid.size(); ++i) {
    CHECK(prof.rho_values[i] ==
          doctest::Approx(prof.rho_at(prof.p_grid[i])).epsilon(1e-14));
    CHECK(prof.nu_values[i] <= prof.rho_values[i]);
    CHECK(prof.beta_values[i] == prof.rho_values[i]);
  }

  // below the entry threshold beta freezes at the infimum
  CHECK(prof.beta(1.0) == prof.rho_min);
  CHECK(prof.beta(4.0) == prof.rho_min);
  CHECK(prof.beta(2.5) == prof.rho_min);
  // inside the window it is rho itself
  CHECK(prof.beta(6.0) == doctest::Approx(prof.rho_at(6.0)).epsilon(1e-14));
  CHECK_THROWS_AS(prof.beta(0.5), std::invalid_argument);

  // sqrt(n) * beta(4): the workhorse moment bound at the entry order
  CHECK(martingale_moment_bound(4.0, 4.0, prof) ==
        doctest::Approx(910.9639628808122).epsilon(1e-5));
  // exact sqrt scaling in the horizon
  CHECK(martingale_moment_bound(6.0, 100.0, prof) /
            martingale_moment_bound(6.0, 25.0, prof) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(martingale_moment_bound(6.0, 0.5, prof), std::invalid_argument);
}

TEST_CASE("bound profile: finite endpoint and violation") {
  const BoundProfile heavy = make_bound_profile(MomentProfile::heavy_tail(6.0, 0.0), 0.0, 1.0);
  CHECK_FALSE(heavy.violated);
  CHECK(heavy.p_plus == 6.0);
  CHECK(heavy.p_grid.back() < 6.0);
  CHECK(heavy.beta(5.0) == doctest::Approx(heavy.rho_at(5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(heavy.beta(6.0), std::domain_error);
  CHECK_THROWS_AS(heavy.beta(7.0), std::domain_error);
  // rho blows up into the endpoint
  CHECK(heavy.rho_at(5.999999) > heavy.rho_at(5.0));

  const BoundProfile bad = make_bound_profile(MomentProfile::heavy_tail(3.0, 0.0), 0.0, 1.0);
  CHECK(bad.violated);
  CHECK_THROWS_WITH_AS(
      bad.beta(5.0),
      "moment finiteness condition violated: no p > max(kappa,4) with finite rho",
      std::runtime_error);

  CHECK_THROWS_AS(make_bound_profile(MomentProfile::bounded(1.0), 0.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("bound profile: kappa shifts the window and inflates rho") {
  const MomentProfile unit = MomentProfile::bounded(1.0);
  const BoundProfile k0 = make_bound_profile(unit, 0.0, 1.0);
  const BoundProfile k2 = make_bound_profile(unit, 2.0, 1.0);
  CHECK(k2.p_minus == 4.0);  // max(kappa, 4)
  const BoundProfile k5 = make_bound_profile(unit, 5.0, 1.0);
  CHECK(k5.p_minus == 5.0);
  // same p, larger kappa, strictly larger rho
  CHECK(k2.rho_at(6.0) > k0.rho_at(6.0));
  CHECK(k5.rho_at(6.0) > k2.rho_at(6.0));
  // the recorded label survives the chain
  CHECK(k0.profile_label == unit.describe());
}
