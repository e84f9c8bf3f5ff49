#include "elastiq/verify.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "elastiq/elastodynamics.hpp"
#include "elastiq/fields.hpp"
#include "elastiq/geometry.hpp"
#include "elastiq/grassmann.hpp"
#include "elastiq/kinematics.hpp"
#include "elastiq/quantization.hpp"
#include "elastiq/reduction.hpp"
#include "elastiq/spinor.hpp"

namespace elastiq {

bool SuiteReport::all_pass() const {
  for (const auto& p : properties)
    if (!p.pass) return false;
  return true;
}

namespace {

using Rng = std::mt19937_64;

double uni(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Mat3 random_gradient(Rng& rng, double scale) {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = uni(rng, -scale, scale);
  return g;
}

LameParameters random_stable_material(Rng& rng) {
  const double mu = uni(rng, 0.05, 2.0);
  const double lambda = mu * (6.0 + 4.0 * std::sqrt(3.0) + uni(rng, 0.1, 20.0));
  return LameParameters(lambda, mu);
}

DisplacementField random_real_field(Rng& rng, double amplitude, int n_modes = 3) {
  std::vector<FourierMode> half;
  for (int i = 0; i < n_modes; ++i) {
    Vec3 q(uni(rng, -1.5, 1.5), uni(rng, -1.5, 1.5),
           static_cast<double>(std::uniform_int_distribution<int>(-1, 1)(rng)));
    CVec3 a;
    for (int c = 0; c < 3; ++c)
      a[c] = Complex(uni(rng, -amplitude, amplitude), uni(rng, -amplitude, amplitude));
    half.emplace_back(q, a);
  }
  return DisplacementField::make_real(half);
}

PropertyResult make_result(std::string name, int samples, double worst, double tol,
                           double detail = 0.0) {
  PropertyResult r;
  r.name = std::move(name);
  r.samples = samples;
  r.worst = worst;
  r.detail = detail;
  r.pass = worst <= tol;
  return r;
}

}  // namespace

SuiteReport verify_kinematics(const VerifyOptions& opt) {
  Rng rng(opt.seed);
  SuiteReport rep{"kinematics", {}};

  double worst_sym = 0.0, worst_jac = 0.0, worst_inv = 0.0, worst_inf = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const Mat3 G = random_gradient(rng, 0.05);
    const Mat3 eL = strain_lagrangian(G).eps;
    const Mat3 eE = strain_eulerian(G).eps;
    worst_sym = std::max(worst_sym, (eL - eL.transpose()).cwiseAbs().maxCoeff());
    worst_sym = std::max(worst_sym, (eE - eE.transpose()).cwiseAbs().maxCoeff());

    const Mat3 g = metric_from_displacement(G).g;
    worst_jac = std::max(
        worst_jac, (g - (minkowski3() + 2.0 * eL)).cwiseAbs().maxCoeff());

    // matched Eulerian gradient of the same deformation: du/dx = I - J^-1
    const Mat3 J = Mat3::Identity() + G;
    const Mat3 grad_x = Mat3::Identity() - J.inverse();
    const Mat3 ginv = inverse_metric_from_displacement(grad_x).g;
    worst_inv = std::max(worst_inv,
                         (g * ginv - Mat3::Identity()).cwiseAbs().maxCoeff());

    // Lagrangian and Eulerian strain differ at second order in the gradient
    const double t1 = 1e-3, t2 = 5e-4;
    const double d1 =
        (strain_lagrangian(t1 * G).eps - strain_eulerian(t1 * G).eps).norm() /
        (t1 * t1);
    const double d2 =
        (strain_lagrangian(t2 * G).eps - strain_eulerian(t2 * G).eps).norm() /
        (t2 * t2);
    if (d1 > 1e-12)
      worst_inf = std::max(worst_inf, std::abs(d1 - d2) / std::max(1e-12, d1));
  }
  rep.properties.push_back(make_result("strain symmetry exact", opt.samples, worst_sym, 0.0));
  rep.properties.push_back(
      make_result("metric equals eta + 2 eps", opt.samples, worst_jac, 1e-12));
  rep.properties.push_back(
      make_result("metric times inverse metric is identity", opt.samples, worst_inv, 1e-10));
  rep.properties.push_back(make_result(
      "Lagrangian-Eulerian difference is O(t^2)", opt.samples, worst_inf, 0.05));
  return rep;
}

SuiteReport verify_geometry(const VerifyOptions& opt) {
  Rng rng(opt.seed);
  SuiteReport rep{"geometry", {}};
  const int fields = std::max(3, opt.samples / 10);

  double worst_anti = 0.0, worst_bianchi = 0.0, worst_order = 0.0;
  for (int s = 0; s < fields; ++s) {
    const DisplacementField u = random_real_field(rng, 0.01);
    const Point3 p(uni(rng, -0.5, 0.5), uni(rng, -0.5, 0.5), uni(rng, -0.5, 0.5));

    MetricField mf = metric_field_of(u, opt.h);
    const CurvatureReport c1 = riemann(mf, p.x);
    const double scale = std::max(1.0, c1.max_abs_riemann);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int m = 0; m < 3; ++m)
          for (int n = 0; n < 3; ++n) {
            worst_anti = std::max(
                worst_anti,
                std::abs(c1.riemann(a, b, m, n) + c1.riemann(b, a, m, n)) / scale);
            worst_anti = std::max(
                worst_anti,
                std::abs(c1.riemann(a, b, m, n) + c1.riemann(a, b, n, m)) / scale);
            worst_bianchi = std::max(
                worst_bianchi,
                std::abs(c1.riemann(a, b, m, n) + c1.riemann(a, m, n, b) +
                         c1.riemann(a, n, b, m)) /
                    scale);
          }

    // order measured at moderate steps; far smaller ones sit on the
    // cancellation floor of the second differences
    mf.h = 1e-2;
    const double r1 = riemann(mf, p.x).max_abs_riemann;
    mf.h = 5e-3;
    const double r2 = riemann(mf, p.x).max_abs_riemann;
    if (r1 > 1e-12) {
      const double order = std::log2(r1 / std::max(1e-300, r2));
      worst_order = std::max(worst_order, std::max(0.0, 1.8 - order));
    }
  }
  rep.properties.push_back(make_result("Riemann antisymmetry pairs", fields,
                                       worst_anti, 10.0 * opt.h * opt.h));
  rep.properties.push_back(make_result("first Bianchi symmetry", fields,
                                       worst_bianchi, 10.0 * opt.h * opt.h));
  rep.properties.push_back(make_result(
      "flatness convergence order >= 1.8 (shortfall)", fields, worst_order, 0.0, 1.8));

  // Einstein tensor vanishes identically in two dimensions, curved or not.
  double worst_g2 = 0.0;
  for (int s = 0; s < 3; ++s) {
    const double k = uni(rng, 0.2, 0.8);
    MetricField m2{2,
                   [k](const VecX& q) -> MatX {
                     Mat2 g;
                     g << -std::exp(2.0 * k * q[1] * q[1]), 0.3 * k * q[0] * q[1],
                         0.3 * k * q[0] * q[1], 1.0 + 0.5 * std::sin(k * q[0]);
                     return g;
                   },
                   opt.h};
    VecX p2(2);
    p2 << uni(rng, -0.3, 0.3), uni(rng, -0.3, 0.3);
    worst_g2 = std::max(worst_g2, riemann(m2, p2).einstein.cwiseAbs().maxCoeff());
  }
  rep.properties.push_back(
      make_result("2D Einstein tensor identically zero", 3, worst_g2, 1e-8));
  return rep;
}

SuiteReport verify_elastodynamics(const VerifyOptions& opt) {
  Rng rng(opt.seed);
  SuiteReport rep{"elastodynamics", {}};
  const LameParameters lam = opt.material;

  double worst_id = 0.0, worst_sol = 0.0, worst_leg = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    std::vector<FourierMode> modes;
    for (int i = 0; i < 3; ++i) {
      Vec3 q(uni(rng, -2, 2), uni(rng, -2, 2),
             static_cast<double>(std::uniform_int_distribution<int>(-2, 2)(rng)));
      CVec3 a;
      for (int c = 0; c < 3; ++c) a[c] = Complex(uni(rng, -1, 1), uni(rng, -1, 1));
      modes.emplace_back(q, a);
    }
    const DisplacementField u{modes};
    const Point3 p(uni(rng, -1, 1), uni(rng, -1, 1), uni(rng, -1, 1));
    const auto [lhs, rhs] = dilatation_wave_identity(u, lam, p);
    worst_id = std::max(worst_id,
                        std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

    // transverse null mode solves the field equations; its dilatation wave
    // equation is satisfied with both sides zero
    const double qq = uni(rng, 0.3, 2.0);
    const DisplacementField sol{{FourierMode(
        Vec3(qq, qq, 0.0), CVec3(Complex(0, 0), Complex(0, 0), Complex(1, 0)))}};
    worst_sol = std::max(worst_sol, field_equation_residual(sol, lam, p).norm());
    const auto [l2, r2] = dilatation_wave_identity(sol, lam, p);
    worst_sol = std::max(worst_sol, std::max(std::abs(l2), std::abs(r2)));

    // Legendre: H(printed) equals P u^rho_1 minus the dynamical Lagrangian,
    // which is the negative of the printed strain energy.
    const Mat3 grad = random_gradient(rng, 0.7);
    const Vec3 P = canonical_momenta(grad, lam);
    const double H = hamiltonian_density({grad, P}, lam);
    const Mat3 e_inf = 0.5 * (grad + grad.transpose());
    const double L = lagrangian_density({e_inf, Perspective::Lagrangian}, lam);
    const double legendre =
        -P[0] * grad(0, 0) + P[1] * grad(1, 0) + P[2] * grad(2, 0) + L;
    worst_leg = std::max(worst_leg,
                         std::abs(H - legendre) / std::max(1.0, std::abs(H)));
  }
  rep.properties.push_back(make_result(
      "divergence of field equations equals dilatation wave operator",
      opt.samples, worst_id, 1e-12));
  rep.properties.push_back(make_result("transverse null modes solve the system",
                                       opt.samples, worst_sol, 1e-12));
  rep.properties.push_back(
      make_result("Hamiltonian Legendre consistency", opt.samples, worst_leg, 1e-12));
  return rep;
}

SuiteReport verify_quantization(const VerifyOptions& opt) {
  Rng rng(opt.seed);
  SuiteReport rep{"quantization", {}};

  double worst_spec = 0.0, worst_sympl = 0.0, worst_leak = 0.0, worst_hom = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const LameParameters lam = random_stable_material(rng);
    double q2 = uni(rng, -4.0, 4.0);
    if (std::abs(q2) < 0.05) q2 = 0.5;
    const int q3 = std::uniform_int_distribution<int>(-3, 3)(rng);

    const SpectrumRow cf = closed_form_energies(lam, q2, q3);
    const auto h = assemble_mode_hamiltonian(lam, q2, q3);
    const BogoliubovResult r = bogoliubov_diagonalize(h);
    Vec6 want;
    want << cf.E_minus, cf.E_minus, cf.E_zero, cf.E_zero, cf.E_plus, cf.E_plus;
    std::sort(want.data(), want.data() + 6);
    worst_spec = std::max(worst_spec, (r.energies - want).cwiseAbs().maxCoeff());
    worst_sympl = std::max(worst_sympl, r.symplectic_residual);
    const auto check = verify_canonical_structure(r, h);
    worst_leak = std::max(worst_leak, check.offdiagonal_leakage);
    worst_leak = std::max(worst_leak, check.hamiltonian_reconstruction_residual);

    const double t = uni(rng, 0.3, 3.0);
    const SpectrumRow scaled = closed_form_energies(lam, t * q2, 0);
    const SpectrumRow base = closed_form_energies(lam, q2, 0);
    worst_hom = std::max(worst_hom,
                         std::abs(scaled.E_plus - t * base.E_plus) /
                             std::max(1e-12, scaled.E_plus));
  }
  rep.properties.push_back(make_result("Bogoliubov energies match closed forms",
                                       opt.samples, worst_spec, 1e-9));
  rep.properties.push_back(
      make_result("symplectic certificate", opt.samples, worst_sympl, 1e-10));
  rep.properties.push_back(make_result("diagonal normal form and reconstruction",
                                       opt.samples, worst_leak, 1e-10));
  rep.properties.push_back(
      make_result("energies homogeneous of degree one", opt.samples, worst_hom, 1e-12));

  double worst_dual = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const double mu = uni(rng, 0.01, 5.0);
    const LameParameters lam(uni(rng, 0.01, 5.0), mu);
    const double L = lam.lambda + 2.0 * lam.mu;
    const double main_r =
        4.0 * lam.mu * (lam.lambda + lam.mu) /
        std::sqrt(lam.mu * (lam.lambda + lam.mu) * L * L);
    const double app_r = 2.0 * std::sqrt(2.0) *
                         std::sqrt(lam.mu * L * L * (2.0 * lam.lambda + 2.0 * lam.mu)) /
                         (L * L);
    worst_dual = std::max(worst_dual, std::abs(main_r - app_r));
  }
  rep.properties.push_back(
      make_result("dual radical forms agree", opt.samples, worst_dual, 1e-12));

  // hierarchy at lambda = 13 mu, mu = 0.1
  const LameParameters lam13(1.3, 0.1);
  const SpectrumRow row = closed_form_energies(lam13, 1.0, 0);
  const double ratio = row.E_zero / row.E_minus;
  rep.properties.push_back(make_result("hierarchy ratio exceeds 20 at lambda=13mu", 1,
                                       std::max(0.0, 20.0 - ratio), 0.0, ratio));
  return rep;
}

SuiteReport verify_spinor(const VerifyOptions& opt) {
  Rng rng(opt.seed);
  SuiteReport rep{"spinor", {}};
  const GammaTriple g = GammaTriple::standard();

  rep.properties.push_back(make_result("flat anticommutator table exact", 1,
                                       gamma_anticommutator_residual(g), 0.0));

  double worst_iso = 0.0, worst_semi = 0.0, worst_shell = 0.0, worst_fact = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    CartanSpinor cs{Complex(uni(rng, -2, 2), uni(rng, -2, 2)),
                    Complex(uni(rng, -2, 2), uni(rng, -2, 2))};
    const CVec3 x = cartan_embed(cs);
    worst_iso = std::max(worst_iso,
                         std::abs(-x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) /
                             std::max(1.0, x.squaredNorm()));

    ExponentialSum f({{Complex(uni(rng, -2, 2), uni(rng, -2, 2)),
                       Complex(uni(rng, -2, 2), uni(rng, -2, 2))}});
    const auto twice = semiderivative(semiderivative(f));
    const auto once = derivative(f);
    for (size_t i = 0; i < twice.terms().size(); ++i)
      worst_semi = std::max(worst_semi,
                            std::abs(twice.terms()[i].coefficient -
                                     once.terms()[i].coefficient));

    const double q2 = uni(rng, -3, 3);
    const int q3 = std::uniform_int_distribution<int>(-3, 3)(rng);
    if (std::abs(q2) + std::abs(q3) < 0.1) continue;
    const double q1 = std::sqrt(q2 * q2 + static_cast<double>(q3) * q3);
    worst_shell =
        std::max(worst_shell, dirac_residual_3d(g, Vec3(q1, q2, q3)).norm());
    worst_fact = std::max(
        worst_fact, dirac_factorization_check(
                        g, Vec3(uni(rng, -3, 3), uni(rng, -3, 3), uni(rng, -3, 3)))
                        .cwiseAbs()
                        .maxCoeff());
  }
  rep.properties.push_back(
      make_result("Cartan embedding is isotropic", opt.samples, worst_iso, 1e-12));
  rep.properties.push_back(make_result("semiderivative squares to the derivative",
                                       opt.samples, worst_semi, 1e-12));
  rep.properties.push_back(
      make_result("on-shell Dirac residual", opt.samples, worst_shell, 1e-12));
  rep.properties.push_back(make_result("Dirac operator squares to wave operator",
                                       opt.samples, worst_fact, 1e-12));

  // off-shell residual grows monotonically with the mass-shell violation
  double worst_mono = 0.0;
  for (int s = 0; s < 5; ++s) {
    const double q2 = uni(rng, 0.2, 1.5);
    const int q3 = 1;
    const double q1_on = std::sqrt(q2 * q2 + 1.0);
    double prev = -1.0;
    for (double eps : {0.1, 0.3, 0.6, 1.0}) {
      const double r = dirac_residual_3d(g, Vec3(q1_on + eps, q2, q3)).norm();
      if (prev >= 0.0 && r <= prev) worst_mono = std::max(worst_mono, prev - r);
      prev = r;
    }
  }
  rep.properties.push_back(
      make_result("off-shell residual monotone in violation", 5, worst_mono, 0.0));

  // Grassmann statistics, exact
  double ex = 0.0;
  {
    const int n = 2;
    const auto t1 = GrassmannElement::theta(0, n);
    const auto t2 = GrassmannElement::theta(1, n);
    if (!(t1 * t1).is_zero()) ex = 1.0;
    if (!(t1 * t2 + t2 * t1).is_zero()) ex = 1.0;
    const auto f1 = fermionize(0, 2, 3);
    const auto f2 = fermionize(1, 2, 3);
    if (!anticommutator(f1.c, f2.c).is_zero()) ex = 1.0;
    if (!anticommutator(f1.c, f1.c).is_zero()) ex = 1.0;
    if (!anticommutator(f1.c_dagger, f2.c_dagger).is_zero()) ex = 1.0;
  }
  rep.properties.push_back(make_result("Grassmann statistics exact", 1, ex, 0.0));
  return rep;
}

SuiteReport verify_reduction(const VerifyOptions& opt) {
  Rng rng(opt.seed);
  SuiteReport rep{"reduction", {}};
  const GammaTriple flat = GammaTriple::standard();

  double worst_dual = 0.0, worst_sim = 0.0, worst_perp = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const Mat3 G = random_gradient(rng, 0.05);
    const CurvedGammaSet cg = curved_gammas(flat, G);
    const Mat3 ginv = inverse_metric_from_displacement(G).g;
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) {
        const CMat2 anti = cg[mu] * cg[nu] + cg[nu] * cg[mu];
        worst_dual = std::max(worst_dual,
                              (anti - 2.0 * ginv(mu, nu) * CMat2::Identity())
                                  .cwiseAbs()
                                  .maxCoeff());
      }

    CMat2 S;
    S << Complex(uni(rng, 0.5, 1.5), uni(rng, -0.3, 0.3)),
        Complex(uni(rng, -0.4, 0.4), uni(rng, -0.3, 0.3)),
        Complex(uni(rng, -0.4, 0.4), uni(rng, -0.3, 0.3)),
        Complex(uni(rng, 0.5, 1.5), uni(rng, -0.3, 0.3));
    const CurvedGammaSet tg = conjugate_gammas(cg, S);
    for (int mu = 0; mu < 3; ++mu)
      for (int nu = 0; nu < 3; ++nu) {
        const CMat2 anti = tg[mu] * tg[nu] + tg[nu] * tg[mu];
        worst_sim = std::max(worst_sim,
                             (anti - 2.0 * ginv(mu, nu) * CMat2::Identity())
                                 .cwiseAbs()
                                 .maxCoeff());
      }

    const CMat2 perp = gamma_perp(cg);
    worst_perp = std::max(worst_perp,
                          (perp * perp - CMat2::Identity()).cwiseAbs().maxCoeff());
    worst_perp = std::max(worst_perp,
                          (cg[0] * perp + perp * cg[0]).cwiseAbs().maxCoeff());
    worst_perp = std::max(worst_perp,
                          (cg[1] * perp + perp * cg[1]).cwiseAbs().maxCoeff());
  }
  rep.properties.push_back(make_result("anticommutator-metric duality",
                                       opt.samples, worst_dual, 1e-12));
  rep.properties.push_back(
      make_result("similarity invariance of the gamma metric", opt.samples,
                  worst_sim, 1e-12));
  rep.properties.push_back(
      make_result("gamma_perp laws", opt.samples, worst_perp, 1e-12));

  double worst_rt = 0.0, worst_rt2 = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    KKDecomposition kk;
    kk.g2 << -uni(rng, 0.8, 1.2), uni(rng, -0.1, 0.1), 0.0, uni(rng, 0.8, 1.2);
    kk.g2(1, 0) = kk.g2(0, 1);
    kk.A = Vec2(uni(rng, -0.5, 0.5), uni(rng, -0.5, 0.5));
    kk.Phi = uni(rng, 0.5, 2.0);
    kk.slot = CompactSlot::Timelike;
    const KKDecomposition back = kk_decompose({kk_compose(kk)});
    worst_rt = std::max({worst_rt, (back.g2 - kk.g2).cwiseAbs().maxCoeff(),
                         (back.A - kk.A).cwiseAbs().maxCoeff(),
                         std::abs(back.Phi - kk.Phi)});
    const Mat3 g3 = kk_compose(kk);
    worst_rt2 = std::max(worst_rt2,
                         (kk_compose(kk_decompose({g3})) - g3).cwiseAbs().maxCoeff());
  }
  rep.properties.push_back(
      make_result("KK compose/decompose round trip", opt.samples,
                  std::max(worst_rt, worst_rt2), 1e-14));

  // Auxiliary identity and 3D flatness converge at second order in h.
  double worst_order = 0.0, worst_ricci_order = 0.0;
  {
    const DisplacementField u = random_real_field(rng, 0.01, 2);
    CMat2 K;
    K << Complex(0.0, 0.3), Complex(0.2, 0.0), Complex(-0.1, 0.1), Complex(0.0, -0.2);
    SpinorFrameField S = [K](const Point3& p) -> CMat2 {
      const double f = 0.1 * std::sin(p[0] + 0.3 * p[1] - 0.2 * p[2]);
      return (f * K).exp();
    };
    const Point3 p(0.13, -0.21, 0.08);
    auto max_res = [&](double h) {
      const auto res = auxiliary_identity_residual(S, u, p, h);
      double m = 0.0;
      for (const auto& row : res)
        for (const auto& r : row) m = std::max(m, r.cwiseAbs().maxCoeff());
      return m;
    };
    const double r1 = max_res(1e-2), r2 = max_res(5e-3);
    const double order = std::log2(r1 / std::max(1e-300, r2));
    worst_order = std::max(0.0, 1.8 - order);

    // spacelike split of a zero-mode elastic metric, recomposed and probed in 3D
    const DisplacementField u0 = DisplacementField::make_real(
        {FourierMode(Vec3(uni(rng, 0.4, 1.2), uni(rng, 0.4, 1.2), 0),
                     CVec3(Complex(0, 0.01), Complex(0.01, 0), Complex(0.008, 0)))});
    KKFields kf;
    kf.slot = CompactSlot::Spacelike;
    auto decomp_at = [u0](const Vec2& q) {
      const Mat3 grad = u0.real_gradient(Point3(q[0], q[1], 0.0));
      return kk_decompose_spacelike({metric_from_displacement(grad).g});
    };
    kf.g2 = [decomp_at](const Vec2& q) { return decomp_at(q).g2; };
    kf.A = [decomp_at](const Vec2& q) { return decomp_at(q).A; };
    kf.phi = [decomp_at](const Vec2& q) { return decomp_at(q).Phi; };
    const Vec2 p2(0.1, -0.2);
    const double n1 = reduced_field_diagnostics(kf, p2, 1e-2).ricci3_norm;
    const double n2 = reduced_field_diagnostics(kf, p2, 5e-3).ricci3_norm;
    const double order2 = std::log2(n1 / std::max(1e-300, n2));
    worst_ricci_order = std::max(0.0, 1.8 - order2);
  }
  rep.properties.push_back(make_result(
      "auxiliary-identity residual order >= 1.8 (shortfall)", 1, worst_order, 0.0));
  rep.properties.push_back(make_result(
      "reduced 3D Ricci convergence order >= 1.8 (shortfall)", 1,
      worst_ricci_order, 0.0));

  // Primed-frame mode support to second order
  double worst_support = 0.0;
  {
    const CVec3 a0(Complex(0.01, 0.002), Complex(-0.003, 0.001), Complex(0.004, -0.002));
    const auto only0 = transform_mode_basis({{0, a0}});
    for (const auto& [m, v] : only0)
      if (m != 0) worst_support = std::max(worst_support, v.norm());
    worst_support = std::max(worst_support, (only0.at(0) - a0).norm());

    const CVec3 a1(Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.01, 0.0));
    const auto spread = transform_mode_basis({{0, a0}, {1, a1}, {-1, CVec3(a1.conjugate())}});
    for (const auto& [m, v] : spread)
      if (std::abs(m) > 1)
        worst_support = std::max(worst_support, v.norm() / (1e-4));
  }
  rep.properties.push_back(make_result(
      "primed-frame mode support closed to second order", 2, worst_support, 2.0));
  return rep;
}

std::vector<SuiteReport> verify_all(const VerifyOptions& opt) {
  return {verify_kinematics(opt),   verify_geometry(opt),
          verify_elastodynamics(opt), verify_quantization(opt),
          verify_spinor(opt),       verify_reduction(opt)};
}

}  // namespace elastiq
