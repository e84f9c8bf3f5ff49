#include <doctest.h>

#include <random>

#include "elastiq/quantization.hpp"

using namespace elastiq;

namespace {

const LameParameters kLam{1.3, 0.1};

// Frozen from an independent numerical evaluation of the closed forms at
// lambda = 1.3, mu = 0.1, q2 = 1, q3 = 0.
constexpr double kEminus = 0.011791673069062;
constexpr double kEplus = 0.353356698601049;

}  // namespace

TEST_CASE("T and S entries match the printed closed forms") {
  const auto h = assemble_mode_hamiltonian(kLam, 1.0, 2);
  // T_{1,1} = 3/(16 (lambda + 2 mu)) = 0.125
  CHECK(h.T(0, 0) == doctest::Approx(0.125).epsilon(1e-14));
  // S_{1,10} = -3/(16 (lambda + 2 mu)) = -0.125
  CHECK(h.S(0, 3) == doctest::Approx(-0.125).epsilon(1e-14));
  // T_{2,3} = mu (3 lambda + 2 mu) q2 q3 / (4 (lambda + 2 mu))
  CHECK(h.T(1, 2) == doctest::Approx(0.1 * 4.1 * 2.0 / 6.0).epsilon(1e-14));
  // A = [[T,S],[S,T]] is symmetric
  const Mat12 A = h.A();
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("degenerate material is rejected") {
  CHECK_THROWS_AS(LameParameters(1.0, -0.1), DegenerateMaterial);
  CHECK_THROWS_AS(LameParameters(-1.0, 0.1), DegenerateMaterial);
}

TEST_CASE("closed-form energies at the reference point") {
  const SpectrumRow r = closed_form_energies(kLam, 1.0, 0);
  CHECK(r.E_zero == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(r.E_minus == doctest::Approx(kEminus).epsilon(1e-12));
  CHECK(r.E_plus == doctest::Approx(kEplus).epsilon(1e-12));
  CHECK(r.E_zero / r.E_minus > 20.0);
  CHECK(r.E_plus / r.E_minus > 20.0);
  CHECK(r.E_zero / r.E_minus == doctest::Approx(21.2014).epsilon(1e-4));
}

TEST_CASE("threshold material has a vanishing minus branch") {
  const double mu = 0.7;
  const LameParameters lam((6.0 + 4.0 * std::sqrt(3.0)) * mu, mu);
  const SpectrumRow r = closed_form_energies(lam, 1.0, 0);
  CHECK(std::abs(r.E_minus) < 1e-10);
  CHECK(r.E_zero > 0.0);
  CHECK(r.E_plus > 0.0);
}

TEST_CASE("diagonalization close to the stability threshold") {
  // a small but resolvable minus branch still diagonalizes cleanly
  const double mu = 0.5;
  const LameParameters lam((6.0 + 4.0 * std::sqrt(3.0) + 0.05) * mu, mu);
  const auto cf = closed_form_energies(lam, 1.0, 1);
  CHECK(cf.E_minus > 0.0);
  CHECK(cf.E_minus < 0.1 * cf.E_zero);
  const auto r = bogoliubov_diagonalize(assemble_mode_hamiltonian(lam, 1.0, 1));
  Vec6 want;
  want << cf.E_minus, cf.E_minus, cf.E_zero, cf.E_zero, cf.E_plus, cf.E_plus;
  std::sort(want.data(), want.data() + 6);
  CHECK((r.energies - want).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(r.symplectic_residual < 1e-10);
}

TEST_CASE("below threshold the regime is unstable") {
  CHECK_THROWS_AS(closed_form_energies(LameParameters(2.0, 1.0), 1.0, 0),
                  UnstableRegime);
  const auto h = assemble_mode_hamiltonian(LameParameters(2.0, 1.0), 1.0, 0);
  CHECK_THROWS_AS(bogoliubov_diagonalize(h), UnstableRegime);
}

TEST_CASE("zero wavevector collapses to zero energies with identity transform") {
  const SpectrumRow r = closed_form_energies(kLam, 0.0, 0);
  CHECK(r.E_zero == 0.0);
  CHECK(r.E_minus == 0.0);
  CHECK(r.E_plus == 0.0);
  const auto b = bogoliubov_diagonalize(assemble_mode_hamiltonian(kLam, 0.0, 0));
  CHECK(b.energies.cwiseAbs().maxCoeff() == 0.0);
  CHECK((b.transform - Mat12::Identity()).norm() == 0.0);
}

TEST_CASE("Bogoliubov energies reproduce the closed-form multiset") {
  const auto h = assemble_mode_hamiltonian(kLam, 3.0, 4);
  const auto r = bogoliubov_diagonalize(h);
  // |q| = 5 scales the reference values by five; E_zero pair is 1.25
  Vec6 want;
  want << 5 * kEminus, 5 * kEminus, 1.25, 1.25, 5 * kEplus, 5 * kEplus;
  CHECK((r.energies - want).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(r.symplectic_residual < 1e-10);
}

TEST_CASE("canonical structure verification") {
  const auto h = assemble_mode_hamiltonian(kLam, 1.0, 1);
  const auto r = bogoliubov_diagonalize(h);

  SUBCASE("stable result passes all three checks") {
    const auto rep = verify_canonical_structure(r, h);
    CHECK(rep.symplectic_residual < 1e-10);
    CHECK(rep.offdiagonal_leakage < 1e-10);
    CHECK(rep.hamiltonian_reconstruction_residual < 1e-10);
  }

  SUBCASE("a perturbed transform violates the symplectic certificate") {
    BogoliubovResult bad = r;
    bad.transform(2, 5) += 1e-3;
    CHECK_THROWS_AS(verify_canonical_structure(bad, h), StructureViolation);
  }

  SUBCASE("the identity transform leaves the Hamiltonian undiagonalized") {
    BogoliubovResult bad = r;
    bad.transform = Mat12::Identity();
    CHECK_THROWS_AS(verify_canonical_structure(bad, h), StructureViolation);
  }
}

TEST_CASE("printed Fourier Hamiltonian matches the T/S assembly") {
  // Independent transcription check: pull the printed quadratic form back
  // through the ladder map and compare with [[S,T],[T,S]]-ordered blocks.
  for (auto [l, m, q2, q3] : {std::tuple{1.3, 0.1, 1.0, 0}, {14.0, 0.7, 0.5, 2}}) {
    const LameParameters lam(l, m);
    const CMat12 C = mode_hamiltonian_field_coefficients(lam, q2, q3);
    const CMat12 W = field_from_ladder_map();
    CMat12 lhs = W.transpose() * C * W;
    lhs = 0.5 * (lhs + CMat12(lhs.transpose()));
    Mat12 sigma_a = Mat12::Zero();
    const auto h = assemble_mode_hamiltonian(lam, q2, q3);
    sigma_a.topLeftCorner<6, 6>() = h.S;
    sigma_a.topRightCorner<6, 6>() = h.T;
    sigma_a.bottomLeftCorner<6, 6>() = h.T;
    sigma_a.bottomRightCorner<6, 6>() = h.S;
    CHECK((lhs - sigma_a.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("spectrum equivalence over random stable materials") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int s = 0; s < 40; ++s) {
    const double mu = 0.05 + 1.5 * uni(rng);
    const LameParameters lam(mu * (6 + 4 * std::sqrt(3.0) + 0.2 + 15 * uni(rng)), mu);
    const double q2 = -3.0 + 6.0 * uni(rng);
    const int q3 = static_cast<int>(std::floor(7 * uni(rng))) - 3;
    if (std::abs(q2) < 0.05 && q3 == 0) continue;
    const auto cf = closed_form_energies(lam, q2, q3);
    const auto r = bogoliubov_diagonalize(assemble_mode_hamiltonian(lam, q2, q3));
    Vec6 want;
    want << cf.E_minus, cf.E_minus, cf.E_zero, cf.E_zero, cf.E_plus, cf.E_plus;
    std::sort(want.data(), want.data() + 6);
    CHECK((r.energies - want).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("dispersion sweep ordering, doubling and CSV shape") {
  const auto rows = dispersion_sweep(kLam, {1.0, 2.0}, {0, 1});
  REQUIRE(rows.size() == 4);
  // rows in grid order: (1,0), (1,1), (2,0), (2,1)
  CHECK(rows[0].q2 == 1.0);
  CHECK(rows[0].q3 == 0);
  CHECK(rows[2].q2 == 2.0);
  // doubling q2 at q3 = 0 doubles every branch
  CHECK(rows[2].E_zero == doctest::Approx(2 * rows[0].E_zero).epsilon(1e-12));
  CHECK(rows[2].E_minus == doctest::Approx(2 * rows[0].E_minus).epsilon(1e-12));
  CHECK(rows[2].E_plus == doctest::Approx(2 * rows[0].E_plus).epsilon(1e-12));
  // raising q3 raises each branch at fixed q2
  CHECK(rows[1].E_zero > rows[0].E_zero);
  CHECK(rows[1].E_minus > rows[0].E_minus);
  for (const auto& r : rows) {
    CHECK(r.stable);
    CHECK(r.E_minus < r.E_zero);
    CHECK(r.E_zero < r.E_plus);
  }

  const std::string csv = dispersion_csv(rows);
  CHECK(csv.rfind("q2,q3,E_minus,E_zero,E_plus,stable\n", 0) == 0);
  CHECK(csv.find("1,0,0.01179167,0.25,0.3533567,true") != std::string::npos);

  // unstable material: rows flagged, sweep continues
  const auto bad = dispersion_sweep(LameParameters(2.0, 1.0), {1.0}, {0});
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].stable);
  CHECK(dispersion_csv(bad).find("false") != std::string::npos);
}

TEST_CASE("energies are homogeneous of degree one in the wavevector") {
  const auto a = closed_form_energies(kLam, 0.7, 0);
  const auto b = closed_form_energies(kLam, 2.1, 0);
  CHECK(b.E_minus == doctest::Approx(3 * a.E_minus).epsilon(1e-12));
  CHECK(b.E_zero == doctest::Approx(3 * a.E_zero).epsilon(1e-12));
  CHECK(b.E_plus == doctest::Approx(3 * a.E_plus).epsilon(1e-12));
}
