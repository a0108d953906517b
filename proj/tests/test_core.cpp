#include <catch2/catch_amalgamated.hpp>

#include <hckp/core.hpp>

#include <cmath>
#include <complex>

using namespace hckp;

TEST_CASE("cell construction fills the derived length and validates input", "[core]") {
  CellParams c = make_cell(1.0, 1.0, 0.25, 0.5, 0.1);
  CHECK(c.l3 == Catch::Approx(0.25).epsilon(1e-15));
  CHECK(c.coupling() == Catch::Approx(0.5).epsilon(1e-15));
  CHECK(c.a2() == Catch::Approx(0.01).epsilon(1e-15));
  CHECK(c.stiff_a() == Catch::Approx(1.0));

  CellParams asym = make_cell(2.0, 3.0, 0.3, 0.4, 0.05);
  CHECK(asym.l3 == Catch::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(asym.stiff_a(), DomainError);

  CHECK_THROWS_AS(make_cell(0.0, 1.0, 0.25, 0.5, 0.1), DomainError);
  CHECK_THROWS_AS(make_cell(1.0, -2.0, 0.25, 0.5, 0.1), DomainError);
  CHECK_THROWS_AS(make_cell(1.0, 1.0, 0.6, 0.5, 0.1), DomainError);   // l1 + l2 >= 1
  CHECK_THROWS_AS(make_cell(1.0, 1.0, 0.5, 0.5, 0.1), DomainError);   // l3 = 0
  CHECK_THROWS_AS(make_cell(1.0, 1.0, 0.25, 0.5, 1.0), DomainError);  // eps not in (0,1)
  CHECK_THROWS_AS(make_cell(1.0, 1.0, 0.25, 0.5, -0.1), DomainError);
}

TEST_CASE("square root branch keeps arg k in the upper half closure", "[core]") {
  CHECK(std::abs(spectral_point(complex(-1.0, 0.0)).k - complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(spectral_point(complex(4.0, 0.0)).k - complex(2.0, 0.0)) < 1e-15);
  const complex k2i = spectral_point(complex(0.0, 2.0)).k;
  CHECK(std::abs(k2i - complex(1.0, 1.0)) < 1e-14);

  // Branch property over a ring of z values: k^2 = z and Im k >= 0.
  for (int j = 0; j < 48; ++j) {
    const double th = 2.0 * pi * j / 48.0;
    const complex z = 3.7 * std::exp(iu * th);
    const SpectralPoint sp = spectral_point(z);
    CHECK(std::abs(sp.k * sp.k - z) < 1e-13);
    CHECK(sp.k.imag() >= -1e-15);
    if (std::abs(sp.k.imag()) < 1e-15) CHECK(sp.k.real() >= 0.0);
  }
}

TEST_CASE("quasimomentum reduction wraps into [0, 2pi)", "[core]") {
  Quasimomentum q = quasimomentum(5.0, 0.1);
  CHECK(q.t == Catch::Approx(5.0));
  CHECK(q.tau == Catch::Approx(0.5).margin(1e-15));

  Quasimomentum wrap = quasimomentum(70.0, 0.1);  // eps * t = 7 > 2 pi
  CHECK(wrap.tau == Catch::Approx(7.0 - 2.0 * pi).margin(1e-12));

  Quasimomentum neg = quasimomentum(-5.0, 0.1);
  CHECK(neg.tau == Catch::Approx(2.0 * pi - 0.5).margin(1e-12));

  Quasimomentum rt = quasimomentum_from_tau(0.5, 0.1);
  CHECK(rt.t == Catch::Approx(5.0));
  CHECK(rt.tau == Catch::Approx(0.5));

  CHECK(mod_2pi(2.0 * pi) < 1e-15);
  CHECK_THROWS_AS(quasimomentum(1.0, 0.0), DomainError);
}

TEST_CASE("edge grids demand an even interval count of at least four", "[core]") {
  CHECK_THROWS_AS(make_edge(EdgeId::e1, 1.0, 3), DomainError);
  CHECK_THROWS_AS(make_edge(EdgeId::e1, 1.0, 2), DomainError);
  CHECK_THROWS_AS(make_edge(EdgeId::e1, 0.0, 8), DomainError);
  EdgeFunction f = make_edge(EdgeId::e2, 0.5, 8);
  CHECK(f.samples.size() == 9);
  CHECK(f.h() == Catch::Approx(0.0625));
  CHECK(f.x(8) == Catch::Approx(0.5));
}

TEST_CASE("discrete inner product reproduces L2 integrals", "[core]") {
  const double L = 0.5;
  const int n = 256;

  // Constant: ||c||^2 = |c|^2 L exactly (Simpson is exact on constants).
  EdgeFunction cst = sample_edge(EdgeId::e2, L, n, [](double) { return complex(2.0, -1.0); });
  CHECK(std::real(inner(cst, cst)) == Catch::Approx(5.0 * L).epsilon(1e-14));

  // Half-wave: integral of sin^2(pi x / L) = L / 2.
  EdgeFunction sn = sample_edge(EdgeId::e2, L, n,
                                [&](double x) { return std::sin(pi * x / L); });
  CHECK(std::real(inner(sn, sn)) == Catch::Approx(L / 2.0).epsilon(1e-10));

  // Conjugate symmetry of the pairing.
  EdgeFunction g = sample_edge(EdgeId::e2, L, n, [&](double x) {
    return std::exp(iu * (3.0 * x)) * (1.0 + x * x);
  });
  const complex lhs = inner(sn, g);
  const complex rhs = std::conj(inner(g, sn));
  CHECK(std::abs(lhs - rhs) < 1e-13 * std::abs(lhs));

  EdgeFunction other = make_edge(EdgeId::e2, L, 128);
  CHECK_THROWS_AS(inner(sn, other), GridMismatch);
}

TEST_CASE("quadrature error decays at fourth order under grid doubling", "[core]") {
  // Non-polynomial integrand with a known antiderivative on [0, 1]:
  // integral of e^{1.3 x} cos(2x).
  auto f = [](double x) { return std::exp(1.3 * x) * std::cos(2.0 * x); };
  const double exact =
      (std::exp(1.3) * (1.3 * std::cos(2.0) + 2.0 * std::sin(2.0)) - 1.3) / (1.3 * 1.3 + 4.0);
  auto err = [&](int n) {
    EdgeFunction u = sample_edge(EdgeId::e1, 1.0, n, [&](double x) { return complex(f(x)); });
    EdgeFunction one = sample_edge(EdgeId::e1, 1.0, n, [](double) { return complex(1.0); });
    return std::abs(std::real(inner(u, one)) - exact);
  };
  const double e8 = err(8), e16 = err(16), e32 = err(32);
  CHECK(e16 > 0.0);
  CHECK(e8 / e16 > 10.0);
  CHECK(e16 / e32 > 10.0);
}

TEST_CASE("cumulative integral is fourth order and matches antiderivatives", "[core]") {
  const double L = 0.8;
  auto g = [](double x) { return std::exp(complex(0.4, 1.1) * x); };
  auto G = [&](double x) { return (g(x) - 1.0) / complex(0.4, 1.1); };

  auto max_err = [&](int n) {
    const double h = L / n;
    std::vector<complex> gs(n + 1);
    for (int i = 0; i <= n; ++i) gs[i] = g(i * h);
    std::vector<complex> c = cumulative_integral(gs, h);
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) worst = std::max(worst, std::abs(c[i] - G(i * h)));
    return worst;
  };
  const double e16 = max_err(16), e32 = max_err(32), e64 = max_err(64);
  CHECK(e32 > 0.0);
  CHECK(e16 / e32 > 10.0);
  CHECK(e32 / e64 > 10.0);

  // Reversed variant integrates from the right endpoint.
  const int n = 64;
  const double h = L / n;
  std::vector<complex> gs(n + 1);
  for (int i = 0; i <= n; ++i) gs[i] = g(i * h);
  std::vector<complex> r = cumulative_integral_reverse(gs, h);
  for (int i = 0; i <= n; i += 16)
    CHECK(std::abs(r[i] - (G(L) - G(i * h))) < 1e-9);
  CHECK(std::abs(r[n]) == 0.0);

  CHECK_THROWS_AS(cumulative_integral(std::vector<complex>(3), 0.1), DomainError);
}

TEST_CASE("state norms add over the three edges", "[core]") {
  CellParams c = make_cell(1.0, 1.0, 0.25, 0.5, 0.1);
  StateVector u = make_state(c, 32);
  CHECK(u.c1.length == Catch::Approx(0.025));
  CHECK(u.c2.length == Catch::Approx(0.5));  // rescaled soft edge
  CHECK(u.c3.length == Catch::Approx(0.025));

  for (auto& v : u.c1.samples) v = 1.0;
  for (auto& v : u.c2.samples) v = complex(0.0, 1.0);
  for (auto& v : u.c3.samples) v = 2.0;
  const double want = 0.025 + 0.5 + 4.0 * 0.025;
  CHECK(norm(u) == Catch::Approx(std::sqrt(want)).epsilon(1e-13));

  StateVector phys = make_state(c, 32, false);
  CHECK(phys.c2.length == Catch::Approx(0.05));
  CHECK_FALSE(phys.rescaled);
}

TEST_CASE("sine-regularity guard flags Dirichlet poles", "[core]") {
  CHECK_THROWS_AS(check_sine_regular(complex(pi, 0.0), "probe"), PoleError);
  CHECK_THROWS_AS(check_sine_regular(complex(0.0, 0.0), "probe"), PoleError);
  CHECK_NOTHROW(check_sine_regular(complex(1.0, 0.0), "probe"));
  CHECK_NOTHROW(check_sine_regular(complex(pi, 0.5), "probe"));
}
