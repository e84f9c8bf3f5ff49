#include "elastiq/reduction.hpp"

#include <cmath>

#include "elastiq/geometry.hpp"

namespace elastiq {

Mat3 coordinate_pullback(const Mat3& grad_x) {
  if (!grad_x.allFinite()) throw DomainError("coordinate_pullback: nonfinite gradient");
  Mat3 m = Mat3::Identity();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) -= grad_x(j, i);
  return m;
}

CurvedGammaSet curved_gammas(const GammaTriple& g, const Mat3& grad_x) {
  if (!grad_x.allFinite()) throw DomainError("curved_gammas: nonfinite gradient");
  CurvedGammaSet cg;
  for (int mu = 0; mu < 3; ++mu) {
    CMat2 gm = g[mu];
    for (int a = 0; a < 3; ++a) gm -= grad_x(mu, a) * g[a];
    cg.gammas[mu] = gm;
  }
  cg.metric_inv = inverse_metric_from_displacement(grad_x).g;
  double worst = 0.0;
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      const CMat2 anti = cg.gammas[mu] * cg.gammas[nu] + cg.gammas[nu] * cg.gammas[mu];
      worst = std::max(worst, (anti - 2.0 * cg.metric_inv(mu, nu) * CMat2::Identity())
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  if (worst > 1e-10 * std::max(1.0, cg.metric_inv.cwiseAbs().maxCoeff()))
    throw MetricMismatch("curved_gammas: anticommutator table departs from 2 I g^{mu nu}");
  return cg;
}

CurvedGammaSet conjugate_gammas(const CurvedGammaSet& cg, const CMat2& S) {
  Eigen::FullPivLU<CMat2> lu(S);
  if (!lu.isInvertible()) throw SingularFrame("conjugate_gammas: S not invertible");
  const CMat2 Sinv = lu.inverse();
  CurvedGammaSet out;
  for (int mu = 0; mu < 3; ++mu) out.gammas[mu] = Sinv * cg.gammas[mu] * S;
  out.metric_inv = cg.metric_inv;
  return out;
}

namespace {

CMat2 frame_inverse(const SpinorFrameField& S_field, const Point3& p) {
  const CMat2 S = S_field(p);
  Eigen::FullPivLU<CMat2> lu(S);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12)
    throw SingularFrame("spin frame not invertible on stencil");
  return lu.inverse();
}

Point3 shift3(const Point3& p, int axis, double d) {
  Vec3 v = p.x;
  v[axis] += d;
  return Point3(v);
}

// Inverse pullback at p: d'_nu = sum_i (M^-1)_{nu i} d_i.
Mat3 primed_map(const DisplacementField& u, const Point3& p) {
  const Mat3 M = coordinate_pullback(u.real_gradient(p));
  Eigen::FullPivLU<Mat3> lu(M);
  if (!lu.isInvertible())
    throw SingularJacobian("primed derivatives: pullback matrix singular");
  return lu.inverse();
}

}  // namespace

SpinFrame spin_connection(const SpinorFrameField& S_field,
                          const DisplacementField& u, const Point3& p, double h) {
  const Mat3 Minv = primed_map(u, p);
  const CMat2 S = S_field(p);
  CMat2 dSinv[3];
  for (int i = 0; i < 3; ++i)
    dSinv[i] = (frame_inverse(S_field, shift3(p, i, h)) -
                frame_inverse(S_field, shift3(p, i, -h))) /
               (2.0 * h);
  SpinFrame out;
  out.S = S;
  for (int nu = 0; nu < 3; ++nu) {
    CMat2 dprime = CMat2::Zero();
    for (int i = 0; i < 3; ++i) dprime += Minv(nu, i) * dSinv[i];
    out.Gamma[nu] = dprime * S;
  }
  return out;
}

std::vector<std::vector<CMat2>> auxiliary_identity_residual(
    const SpinorFrameField& S_field, const DisplacementField& u, const Point3& p,
    double h) {
  const Mat3 Minv = primed_map(u, p);
  const GammaTriple flat = GammaTriple::standard();

  auto tilde_at = [&](const Point3& q) -> std::array<CMat2, 3> {
    const CurvedGammaSet cg = curved_gammas(flat, u.real_gradient(q));
    const CMat2 S = S_field(q);
    Eigen::FullPivLU<CMat2> lu(S);
    if (!lu.isInvertible()) throw SingularFrame("auxiliary identity: S singular");
    const CMat2 Sinv = lu.inverse();
    return {Sinv * cg.gammas[0] * S, Sinv * cg.gammas[1] * S,
            Sinv * cg.gammas[2] * S};
  };
  auto metric_at = [&](const Point3& q) -> Mat3 {
    const Mat3 ginv = inverse_metric_from_displacement(u.real_gradient(q)).g;
    Eigen::FullPivLU<Mat3> lu(ginv);
    if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12)
      throw SingularMetric("auxiliary identity: metric singular");
    return lu.inverse();
  };

  // Primed first derivatives of the tilde gammas and of the metric.
  std::array<CMat2, 3> dtilde_fixed[3];
  Mat3 dg_fixed[3];
  for (int i = 0; i < 3; ++i) {
    const auto tp = tilde_at(shift3(p, i, h));
    const auto tm = tilde_at(shift3(p, i, -h));
    for (int mu = 0; mu < 3; ++mu)
      dtilde_fixed[i][mu] = (tp[mu] - tm[mu]) / (2.0 * h);
    dg_fixed[i] = (metric_at(shift3(p, i, h)) - metric_at(shift3(p, i, -h))) /
                  (2.0 * h);
  }
  std::array<CMat2, 3> dtilde[3];
  Mat3 dg[3];
  for (int nu = 0; nu < 3; ++nu) {
    for (int mu = 0; mu < 3; ++mu) {
      dtilde[nu][mu] = CMat2::Zero();
      for (int i = 0; i < 3; ++i) dtilde[nu][mu] += Minv(nu, i) * dtilde_fixed[i][mu];
    }
    dg[nu] = Mat3::Zero();
    for (int i = 0; i < 3; ++i) dg[nu] += Minv(nu, i) * dg_fixed[i];
  }

  // Christoffels of the primed-frame metric, primed derivatives throughout.
  const Mat3 ginv = inverse_metric_from_displacement(u.real_gradient(p)).g;
  double gamma_chr[3][3][3];
  for (int rho = 0; rho < 3; ++rho)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double v = 0.0;
        for (int l = 0; l < 3; ++l)
          v += ginv(l, rho) * (dg[b](l, a) + dg[a](l, b) - dg[l](a, b));
        gamma_chr[rho][a][b] = 0.5 * v;
      }

  const SpinFrame frame = spin_connection(S_field, u, p, h);
  const auto tilde = tilde_at(p);

  std::vector<std::vector<CMat2>> res(3, std::vector<CMat2>(3, CMat2::Zero()));
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      CMat2 r = dtilde[nu][mu];
      for (int b = 0; b < 3; ++b) r += tilde[b] * gamma_chr[mu][b][nu];
      r += -frame.Gamma[nu] * tilde[mu] + tilde[mu] * frame.Gamma[nu];
      res[mu][nu] = r;
    }
  return res;
}

CMat2 gamma_perp(const CurvedGammaSet& cg) {
  const CMat2 v = cg.gammas[0] * cg.gammas[1] -
                  cg.metric_inv(0, 1) * CMat2::Identity();
  const Complex s = 0.5 * (v * v).trace();
  if (std::abs(s) < 1e-12)
    throw DegenerateFrame("gamma_perp: frame degenerate, v_perp^2 ~ 0");
  return v / std::sqrt(s);
}

// ---- Kaluza-Klein blocks ----

Mat3 kk_compose(const KKDecomposition& kk) {
  const double sign = kk.slot == CompactSlot::Timelike ? -1.0 : 1.0;
  const double P2 = kk.Phi * kk.Phi;
  Mat3 g;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) g(a, b) = kk.g2(a, b) + sign * P2 * kk.A[a] * kk.A[b];
  for (int a = 0; a < 2; ++a) {
    g(a, 2) = sign * P2 * kk.A[a];
    g(2, a) = g(a, 2);
  }
  g(2, 2) = sign * P2;
  return g;
}

namespace {

KKDecomposition decompose_impl(const MetricTensor3& g3, CompactSlot slot) {
  const Mat3& g = g3.g;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw DomainError("kk_decompose: metric not symmetric");
  const double sign = slot == CompactSlot::Timelike ? -1.0 : 1.0;
  const double slot_val = sign * g(2, 2);
  if (slot_val <= 0.0)
    throw SignatureError(slot == CompactSlot::Timelike
                             ? "kk_decompose: ansatz needs g_33 < 0"
                             : "kk_decompose_spacelike: needs g_33 > 0");
  KKDecomposition kk;
  kk.slot = slot;
  kk.Phi = std::sqrt(slot_val);
  const double P2 = kk.Phi * kk.Phi;
  for (int a = 0; a < 2; ++a) kk.A[a] = g(a, 2) / (sign * P2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      kk.g2(a, b) = g(a, b) - sign * P2 * kk.A[a] * kk.A[b];

  // Recomposition must reproduce the source exactly.
  if ((kk_compose(kk) - g).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw StructureViolation("kk_decompose: recomposition mismatch");

  // Verify the block structure of the inverse by direct 3x3 inversion:
  // g~^{ab} = (g2^-1)^{ab}, g~^{a3} = -A^a, g~^{33} = sign Phi^-2 + A.A.
  Eigen::FullPivLU<Mat3> lu(g);
  if (!lu.isInvertible()) throw SingularMetric("kk_decompose: metric singular");
  const Mat3 ginv = lu.inverse();
  Eigen::FullPivLU<Mat2> lu2(kk.g2);
  if (!lu2.isInvertible()) throw SingularMetric("kk_decompose: base block singular");
  const Mat2 g2inv = lu2.inverse();
  const Vec2 A_up = g2inv * kk.A;
  const double AA = kk.A.dot(A_up);
  double worst = (ginv.topLeftCorner<2, 2>() - g2inv).cwiseAbs().maxCoeff();
  for (int a = 0; a < 2; ++a)
    worst = std::max(worst, std::abs(ginv(a, 2) + A_up[a]));
  worst = std::max(worst, std::abs(ginv(2, 2) - (sign / P2 + AA)));
  const double scale = std::max(1.0, ginv.cwiseAbs().maxCoeff());
  if (worst > 1e-10 * scale)
    throw StructureViolation("kk_decompose: inverse block relations violated");
  return kk;
}

}  // namespace

KKDecomposition kk_decompose(const MetricTensor3& g3) {
  return decompose_impl(g3, CompactSlot::Timelike);
}

KKDecomposition kk_decompose_spacelike(const MetricTensor3& g3) {
  return decompose_impl(g3, CompactSlot::Spacelike);
}

SingleModeFields single_mode_fields(const Mat3& u0_grad) {
  if (!u0_grad.allFinite()) throw DomainError("single_mode_fields: nonfinite gradient");
  if (u0_grad.col(2).cwiseAbs().maxCoeff() > 1e-12)
    throw ModeLeakage("single_mode_fields: gradient carries compact-direction content");
  const Mat3 eta = minkowski3();
  SingleModeFields out;
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      double v = eta(mu, nu);
      for (int a = 0; a < 2; ++a) {
        v += -eta(nu, a) * u0_grad(mu, a) - eta(mu, a) * u0_grad(nu, a);
        for (int b = 0; b < 2; ++b)
          v += eta(a, b) * u0_grad(mu, a) * u0_grad(nu, b);
      }
      out.g2_inverse(mu, nu) = v;
    }
    double av = 0.0;
    for (int a = 0; a < 2; ++a) {
      av += -eta(mu, a) * u0_grad(2, a);
      for (int b = 0; b < 2; ++b)
        av += eta(a, b) * u0_grad(mu, a) * u0_grad(2, b);
    }
    out.A_upper[mu] = av;
  }
  return out;
}

// ---- reduced field diagnostics ----

namespace {

Vec2 shift2(const Vec2& p, int axis, double d) {
  Vec2 q = p;
  q[axis] += d;
  return q;
}

Mat2 sym2(const Mat2& m) { return 0.5 * (m + m.transpose()); }

Mat2 invert2(const Mat2& g) {
  Eigen::FullPivLU<Mat2> lu(g);
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12)
    throw SingularMetric("reduced diagnostics: base metric singular");
  return lu.inverse();
}

}  // namespace

ReducedFieldReport reduced_field_diagnostics(const KKFields& kk, const Vec2& p,
                                             double h) {
  if (kk.phi(p) <= 0.0)
    throw SignatureError("reduced_field_diagnostics: Phi must be positive");

  const Mat2 g = sym2(kk.g2(p));
  const Mat2 ginv = invert2(g);

  // dA, F
  Mat2 dA;  // dA(a,b) = d_a A_b
  for (int a = 0; a < 2; ++a) {
    const Vec2 Ap = kk.A(shift2(p, a, h)), Am = kk.A(shift2(p, a, -h));
    for (int b = 0; b < 2; ++b) dA(a, b) = (Ap[b] - Am[b]) / (2.0 * h);
  }
  Mat2 F;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) F(a, b) = dA(a, b) - dA(b, a);

  // 2D Christoffels of the base metric
  const MetricField base{2, [&kk](const VecX& q) -> MatX {
                           return sym2(kk.g2(Vec2(q[0], q[1])));
                         },
                         h};
  const auto chr = christoffel(base, p);

  // F^l_a as a field for the covariant divergence
  auto F_up_at = [&](const Vec2& q) -> Mat2 {
    Mat2 dAq;
    for (int a = 0; a < 2; ++a) {
      const Vec2 Ap = kk.A(shift2(q, a, h)), Am = kk.A(shift2(q, a, -h));
      for (int b = 0; b < 2; ++b) dAq(a, b) = (Ap[b] - Am[b]) / (2.0 * h);
    }
    Mat2 Fq;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) Fq(a, b) = dAq(a, b) - dAq(b, a);
    const Mat2 gq = invert2(sym2(kk.g2(q)));
    return gq * Fq;  // row l, column a: F^l_a = g^{l r} F_{r a}
  };
  const Mat2 Fup = F_up_at(p);

  Vec2 covdiv = Vec2::Zero();  // F^l_{a;l}
  for (int a = 0; a < 2; ++a) {
    double v = 0.0;
    for (int l = 0; l < 2; ++l)
      v += (F_up_at(shift2(p, l, h))(l, a) - F_up_at(shift2(p, l, -h))(l, a)) /
           (2.0 * h);
    for (int l = 0; l < 2; ++l)
      for (int r = 0; r < 2; ++r)
        v += chr[l](l, r) * Fup(r, a) - chr[r](l, a) * Fup(l, r);
    covdiv[a] = v;
  }

  const double phi = kk.phi(p);
  Vec2 dphi;
  for (int a = 0; a < 2; ++a)
    dphi[a] = (kk.phi(shift2(p, a, h)) - kk.phi(shift2(p, a, -h))) / (2.0 * h);
  const Vec2 phi_up = ginv * dphi;

  ReducedFieldReport rep;
  rep.F = F;
  for (int a = 0; a < 2; ++a) {
    double v = covdiv[a];
    for (int l = 0; l < 2; ++l) v += 3.0 / phi * phi_up[l] * F(l, a);
    rep.maxwell_residual[a] = v;
  }

  // T_em^{ab} = -1/2 Phi^2 (F^a_l F^{bl} - 1/4 g^{ab} F^{mn} F_{mn})
  const Mat2 F_upup = Fup * ginv.transpose();  // F^{a b}
  double FF = 0.0;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) FF += F_upup(m, n) * F(m, n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double v = 0.0;
      for (int l = 0; l < 2; ++l) v += Fup(a, l) * F_upup(b, l);
      rep.T_em(a, b) = -0.5 * phi * phi * (v - 0.25 * ginv(a, b) * FF);
    }

  // Phi_{;rs} = d_r d_s Phi - Gamma^l_{rs} d_l Phi
  Mat2 hess;
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) {
      double d2;
      if (r == s) {
        d2 = (kk.phi(shift2(p, r, h)) - 2.0 * phi + kk.phi(shift2(p, r, -h))) /
             (h * h);
      } else {
        d2 = (kk.phi(shift2(shift2(p, r, h), s, h)) -
              kk.phi(shift2(shift2(p, r, h), s, -h)) -
              kk.phi(shift2(shift2(p, r, -h), s, h)) +
              kk.phi(shift2(shift2(p, r, -h), s, -h))) /
             (4.0 * h * h);
      }
      double v = d2;
      for (int l = 0; l < 2; ++l) v -= chr[l](r, s) * dphi[l];
      hess(r, s) = v;
    }
  const double box_phi = (ginv * hess).trace();
  const Mat2 hess_up = ginv * hess * ginv.transpose();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      rep.T_s(a, b) = (hess_up(a, b) - ginv(a, b) * box_phi) / phi;

  // Einstein tensor of the 2D base (identically zero in two dimensions).
  const CurvatureReport curv = riemann(base, p);
  const Mat2 G_up = ginv * Mat2(curv.einstein) * ginv.transpose();
  rep.einstein_residual = G_up - 8.0 * M_PI * (rep.T_em + rep.T_s);

  // 3D Ricci of the recomposed metric; the fields carry no x3 dependence.
  const MetricField recomposed{3,
                               [&kk](const VecX& q) -> MatX {
                                 const Vec2 q2(q[0], q[1]);
                                 KKDecomposition d{sym2(kk.g2(q2)), kk.A(q2),
                                                   kk.phi(q2), kk.slot};
                                 return kk_compose(d);
                               },
                               h};
  VecX p3(3);
  p3 << p[0], p[1], 0.0;
  rep.ricci3_norm = riemann(recomposed, p3).ricci.norm();
  return rep;
}

CMat2 gamma3_decomposition_check(const CurvedGammaSet& cg,
                                 const KKDecomposition& kk) {
  const CMat2 perp = gamma_perp(cg);
  CMat2 D = perp / kk.Phi;
  for (int a = 0; a < 2; ++a) D += cg.gammas[a] * kk.A[a];
  return cg.gammas[2] - D;
}

double gamma3_squared_residual(const CurvedGammaSet& cg, const KKDecomposition& kk) {
  const CMat2 perp = gamma_perp(cg);
  CMat2 D = perp / kk.Phi;
  for (int a = 0; a < 2; ++a) D += cg.gammas[a] * kk.A[a];
  const double g33 = cg.metric_inv(2, 2);
  return ((D * D) - g33 * CMat2::Identity()).cwiseAbs().maxCoeff();
}

// ---- mode-coupled Dirac system ----

ReducedDiracModes ReducedDiracModes::empty(int Q) {
  if (Q < 0) throw DomainError("ReducedDiracModes: Q >= 0");
  ReducedDiracModes m;
  m.Q = Q;
  const int n = 2 * Q + 1;
  auto zmat = [](const Vec2&) { return CMat2::Zero().eval(); };
  auto zc = [](const Vec2&) { return Complex(0.0); };
  auto zpsi = [](const Vec2&) { return CVec2::Zero().eval(); };
  m.gamma2.assign(n, {zmat, zmat});
  m.A.assign(n, {zc, zc});
  m.Gamma.assign(n, {zmat, zmat, zmat});
  m.phi_inv.assign(n, zc);
  m.psi.assign(n, zpsi);
  return m;
}

CVec2 assemble_reduced_dirac(const ReducedDiracModes& modes, int m,
                             const Vec2& p, double h) {
  const int Q = modes.Q;
  if (std::abs(m) > 4 * Q)
    throw TruncationError("assemble_reduced_dirac: |m| exceeds representable couplings");
  auto idx = [Q](int k) { return k + Q; };
  const Complex I(0.0, 1.0);

  auto dpsi = [&](int q, int mu) -> CVec2 {
    return (modes.psi[idx(q)](shift2(p, mu, h)) -
            modes.psi[idx(q)](shift2(p, mu, -h))) /
           (2.0 * h);
  };

  CVec2 res = CVec2::Zero();
  for (int k = -Q; k <= Q; ++k)
    for (int kp = -Q; kp <= Q; ++kp)
      for (int kpp = -Q; kpp <= Q; ++kpp) {
        const int q = m - k - kp - kpp;
        if (std::abs(q) > Q) continue;
        const CVec2 psi_q = modes.psi[idx(q)](p);
        for (int mu = 0; mu < 2; ++mu) {
          const CMat2 g = modes.gamma2[idx(kp)][mu](p);
          CVec2 bracket = CVec2::Zero();
          if (k == 0 && kpp == 0) bracket += dpsi(q, mu);
          const Complex Amu = modes.A[idx(k)][mu](p);
          CVec2 a_term = CVec2::Zero();
          if (kpp == 0) a_term += I * static_cast<double>(q) * psi_q;
          a_term -= modes.Gamma[idx(kpp)][2](p) * psi_q;
          bracket += Amu * a_term;
          if (kpp == 0) bracket -= modes.Gamma[idx(k)][mu](p) * psi_q;
          res += g * bracket;
        }
        if (kpp == 0) {
          CVec2 t = CVec2::Zero();
          if (k == 0) t += I * static_cast<double>(q) * psi_q;
          t -= modes.Gamma[idx(k)][2](p) * psi_q;
          res += modes.phi_inv[idx(kp)](p) * t;
        }
      }
  return res;
}

std::map<int, CVec3> transform_mode_basis(
    const std::vector<std::pair<int, CVec3>>& modes) {
  std::map<int, CVec3> in;
  for (const auto& [q, a] : modes) {
    auto it = in.find(q);
    if (it == in.end())
      in[q] = a;
    else
      it->second += a;
  }
  int qmax = 0;
  for (const auto& [q, a] : in) qmax = std::max(qmax, std::abs(q));
  auto at = [&in](int q) -> CVec3 {
    const auto it = in.find(q);
    return it == in.end() ? CVec3(CVec3::Zero()) : it->second;
  };

  const Complex I(0.0, 1.0);
  std::map<int, CVec3> out;
  for (int mp = -2 * qmax; mp <= 2 * qmax; ++mp) {
    CVec3 v = CVec3::Zero();
    for (int k = -qmax; k <= qmax; ++k) {
      Complex factor = I * static_cast<double>(mp - k) * at(k)[2];
      if (k == 0) factor += 1.0;
      v += at(mp - k) * factor;
    }
    out[mp] = v;
  }
  return out;
}

}  // namespace elastiq
