#include "elastiq/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

namespace elastiq {

Mat12 ModeHamiltonian::A() const {
  Mat12 a;
  a.topLeftCorner<6, 6>() = T;
  a.topRightCorner<6, 6>() = S;
  a.bottomLeftCorner<6, 6>() = S;
  a.bottomRightCorner<6, 6>() = T;
  return a;
}

Mat12 ladder_commutator_matrix() {
  Mat12 om = Mat12::Zero();
  om.topRightCorner<6, 6>() = Mat6::Identity();
  om.bottomLeftCorner<6, 6>() = -Mat6::Identity();
  return om;
}

Mat12 bosonic_metric() {
  Mat12 k = Mat12::Identity();
  k.bottomRightCorner<6, 6>() = -Mat6::Identity();
  return k;
}

ModeHamiltonian assemble_mode_hamiltonian(const LameParameters& lam, double q2,
                                          int q3) {
  const double l = lam.lambda, m = lam.mu;
  const double L = l + 2.0 * m;
  if (!(m > 0.0) || !(L > 0.0))
    throw DegenerateMaterial("assemble_mode_hamiltonian: need mu > 0 and lambda + 2 mu > 0");
  const double p2 = q2 * q2, p3 = static_cast<double>(q3) * q3;
  const double cross = m * (3.0 * l + 2.0 * m) * q2 * q3 / (4.0 * L);
  const double diag2 =
      (8.0 * (2.0 * p2 + p3) * m * m * m + 2.0 * m + l * (4.0 * (4.0 * p2 + p3) * m * m + 1.0)) /
      (16.0 * m * L);
  const double diag3 =
      (8.0 * (p2 + 2.0 * p3) * m * m * m + 2.0 * m + l * (4.0 * (p2 + 4.0 * p3) * m * m + 1.0)) /
      (16.0 * m * L);
  const double off2 =
      (2.0 * m * (4.0 * m * m * (2.0 * p2 + p3) - 1.0) + l * (4.0 * m * m * (4.0 * p2 + p3) - 1.0)) /
      (16.0 * m * L);
  const double off3 =
      (2.0 * m * (4.0 * m * m * (p2 + 2.0 * p3) - 1.0) + l * (4.0 * m * m * (p2 + 4.0 * p3) - 1.0)) /
      (16.0 * m * L);
  const double cq2 = (2.0 * l + 2.0 * m) * q2 / (8.0 * L);
  const double cq3 = (2.0 * l + 2.0 * m) * q3 / (8.0 * L);

  Mat6 T = Mat6::Zero(), S = Mat6::Zero();
  T(0, 0) = 3.0 / (16.0 * L);
  T(0, 4) = m * q2 / (4.0 * L);
  T(0, 5) = m * q3 / (4.0 * L);
  T(1, 1) = diag2;
  T(1, 2) = cross;
  T(1, 3) = -m * q2 / (4.0 * L);
  T(2, 1) = cross;
  T(2, 2) = diag3;
  T(2, 3) = -m * q3 / (4.0 * L);
  T(3, 1) = -m * q2 / (4.0 * L);
  T(3, 2) = -m * q3 / (4.0 * L);
  T(3, 3) = 3.0 / (16.0 * L);
  T(4, 0) = m * q2 / (4.0 * L);
  T(4, 4) = diag2;
  T(4, 5) = cross;
  T(5, 0) = m * q3 / (4.0 * L);
  T(5, 4) = cross;
  T(5, 5) = diag3;

  // S uses the global column index minus six: S_{i,7+j} -> S(i-1, j).
  S(0, 1) = -cq2;
  S(0, 2) = -cq3;
  S(0, 3) = -3.0 / (16.0 * L);
  S(1, 0) = -cq2;
  S(1, 4) = off2;
  S(1, 5) = cross;
  S(2, 0) = -cq3;
  S(2, 4) = cross;
  S(2, 5) = off3;
  S(3, 0) = -3.0 / (16.0 * L);
  S(3, 4) = cq2;
  S(3, 5) = cq3;
  S(4, 1) = off2;
  S(4, 2) = cross;
  S(4, 3) = cq2;
  S(5, 1) = cross;
  S(5, 2) = off3;
  S(5, 3) = cq3;

  return ModeHamiltonian{q2, q3, lam, T, S};
}

namespace {

// Branch-splitting radical 4 mu (l+mu) / sqrt(mu (l+mu) (l+2mu)^2).
double radical_main(const LameParameters& lam) {
  const double l = lam.lambda, m = lam.mu;
  const double L = l + 2.0 * m;
  return 4.0 * m * (l + m) / std::sqrt(m * (l + m) * L * L);
}

// Algebraically identical alternate form of the same radical:
// 2 sqrt2 sqrt(mu (l+2mu)^2 (2l+2mu)) / (l+2mu)^2.
double radical_alternate(const LameParameters& lam) {
  const double l = lam.lambda, m = lam.mu;
  const double L = l + 2.0 * m;
  return 2.0 * std::sqrt(2.0) * std::sqrt(m * L * L * (2.0 * l + 2.0 * m)) / (L * L);
}

}  // namespace

SpectrumRow closed_form_energies(const LameParameters& lam, double q2, int q3) {
  const double r = radical_main(lam);
  const double ra = radical_alternate(lam);
  if (std::abs(r - ra) > 1e-12 * std::max(1.0, std::abs(r)))
    throw StructureViolation("closed_form_energies: the two radical forms disagree");
  double radicand = 1.0 - r;
  // at the exact stability threshold the radicand is zero; rounding in the
  // O(1) terms forming it must not masquerade as a tiny (in)stability
  if (std::abs(radicand) < 64.0 * std::numeric_limits<double>::epsilon())
    radicand = 0.0;
  if (radicand < 0.0) {
    std::ostringstream ss;
    ss << "closed_form_energies: unstable regime, radicand 1 - " << r << " = "
       << radicand;
    throw UnstableRegime(ss.str());
  }
  const double qn = std::sqrt(q2 * q2 + static_cast<double>(q3) * q3);
  SpectrumRow row;
  row.q2 = q2;
  row.q3 = q3;
  row.E_zero = 0.25 * qn;
  row.E_minus = 0.25 * std::sqrt(radicand) * qn;
  row.E_plus = 0.25 * std::sqrt(1.0 + r) * qn;
  row.stable = true;
  return row;
}

BogoliubovResult bogoliubov_diagonalize(const ModeHamiltonian& h) {
  const Mat12 om = ladder_commutator_matrix();
  if (h.q2 == 0.0 && h.q3 == 0) {
    BogoliubovResult r;
    r.energies.setZero();
    r.coefficients.setZero();
    r.transform = Mat12::Identity();
    r.symplectic_residual = 0.0;
    return r;
  }

  const Mat12 A = h.A();
  if (!A.allFinite()) throw DomainError("bogoliubov_diagonalize: nonfinite A");
  const Mat12 D = bosonic_metric() * A;

  Eigen::EigenSolver<Mat12> es(D);
  const auto evals = es.eigenvalues();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  if (evals.imag().cwiseAbs().maxCoeff() > 1e-9 * scale) {
    std::ostringstream ss;
    ss << "bogoliubov_diagonalize: nonreal dynamical spectrum:";
    for (int i = 0; i < 12; ++i)
      if (std::abs(evals[i].imag()) > 1e-9 * scale)
        ss << " (" << evals[i].real() << "," << evals[i].imag() << ")";
    throw UnstableRegime(ss.str());
  }

  std::vector<double> vals(12);
  for (int i = 0; i < 12; ++i) vals[i] = evals[i].real();
  std::sort(vals.begin(), vals.end());

  // Cluster numerically coincident eigenvalues (the spectrum is doubled).
  std::vector<std::pair<double, int>> clusters;  // (mean value, multiplicity)
  for (double w : vals) {
    if (!clusters.empty() &&
        std::abs(w - clusters.back().first) < 1e-7 * scale) {
      auto& c = clusters.back();
      c.first = (c.first * c.second + w) / (c.second + 1);
      ++c.second;
    } else {
      clusters.emplace_back(w, 1);
    }
  }

  const Mat12 K = bosonic_metric();
  const Mat12 Dt = D.transpose();
  // Annihilation rows: b_i = c_i^T Q with D^T c = w c and c^T K c = +1.
  std::vector<std::pair<double, Eigen::Matrix<double, 12, 1>>> rows;
  for (const auto& [w, mult] : clusters) {
    Mat12 shifted = Dt - w * Mat12::Identity();
    Eigen::JacobiSVD<Mat12> svd(shifted, Eigen::ComputeFullV);
    // Null-space basis: right singular vectors of the smallest singular values.
    std::vector<Eigen::Matrix<double, 12, 1>> basis;
    for (int j = 12 - mult; j < 12; ++j) basis.push_back(svd.matrixV().col(j));
    MatX gram(mult, mult);
    for (int i = 0; i < mult; ++i)
      for (int j = 0; j < mult; ++j)
        gram(i, j) = basis[i].dot(K * basis[j]);
    Eigen::SelfAdjointEigenSolver<MatX> ges(gram);
    for (int j = 0; j < mult; ++j) {
      if (ges.eigenvalues()[j] <= 1e-10) continue;  // creation-side direction
      Eigen::Matrix<double, 12, 1> v = Eigen::Matrix<double, 12, 1>::Zero();
      for (int i = 0; i < mult; ++i) v += ges.eigenvectors()(i, j) * basis[i];
      v /= std::sqrt(v.dot(K * v));
      int kmax = 0;
      v.cwiseAbs().maxCoeff(&kmax);
      if (v[kmax] < 0.0) v = -v;
      rows.emplace_back(w, v);
    }
  }
  if (rows.size() != 6)
    throw StructureViolation("bogoliubov_diagonalize: canonical basis incomplete");

  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::abs(a.first) < std::abs(b.first);
  });

  // Row i is the annihilation functional, row 6+i its swapped conjugate.
  Mat12 G;
  for (int i = 0; i < 6; ++i) {
    G.row(i) = rows[i].second.transpose();
    Eigen::Matrix<double, 12, 1> swapped;
    swapped.head<6>() = rows[i].second.tail<6>();
    swapped.tail<6>() = rows[i].second.head<6>();
    G.row(6 + i) = swapped.transpose();
  }

  BogoliubovResult r;
  for (int i = 0; i < 6; ++i) {
    r.energies[i] = std::abs(rows[i].first);
    r.coefficients[i] = rows[i].first;
  }
  r.transform = G.inverse();

  // Newton polish toward the symplectic manifold: with E = V Om V^T - Om and
  // Om^-1 = -Om, the update V <- (I + E Om / 2) V cancels E to first order.
  for (int it = 0; it < 2; ++it) {
    const Mat12 E = r.transform * om * r.transform.transpose() - om;
    if (E.cwiseAbs().maxCoeff() < 1e-14) break;
    r.transform = (Mat12::Identity() + 0.5 * E * om) * r.transform;
  }
  r.symplectic_residual =
      (r.transform * om * r.transform.transpose() - om).cwiseAbs().maxCoeff();
  return r;
}

CMat12 field_from_ladder_map() {
  CMat12 W = CMat12::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  const Complex is(0.0, s);
  for (int n = 0; n < 3; ++n) {
    W(n, 6 + n) = is;        // P_{n,q}: +i/sqrt2 a+_{n,q}
    W(n, 3 + n) = -is;       //          -i/sqrt2 a_{n,-q}
    W(3 + n, n) = s;         // u_{n,q}: a_{n,q}/sqrt2
    W(3 + n, 9 + n) = s;     //          a+_{n,-q}/sqrt2
    W(6 + n, 9 + n) = is;    // P_{n,-q}
    W(6 + n, n) = -is;
    W(9 + n, 3 + n) = s;     // u_{n,-q}
    W(9 + n, 6 + n) = s;
  }
  return W;
}

CMat12 mode_hamiltonian_field_coefficients(const LameParameters& lam, double q2p,
                                           int q3p) {
  const double l = lam.lambda, m = lam.mu;
  const double L = l + 2.0 * m;
  const double q2 = q2p, q3 = static_cast<double>(q3p);
  CMat12 C = CMat12::Zero();
  // X index map: P_{n,q} -> n-1, u_{n,q} -> 2+n, P_{n,-q} -> 5+n, u_{n,-q} -> 8+n
  enum { P1q = 0, P2q, P3q, u1q, u2q, u3q, P1m, P2m, P3m, u1m, u2m, u3m };
  auto add = [&C](int i, int j, Complex c) {
    C(i, j) += 0.5 * c;
    C(j, i) += 0.5 * c;
  };
  const Complex I(0.0, 1.0);
  add(u2m, u2q, -q2 * q2 * l * l / L);
  add(u2q, u3m, -q2 * q3 * l * l / L);
  add(u2m, u3q, -q2 * q3 * l * l / L);
  add(u3m, u3q, -q3 * q3 * l * l / L);
  add(P1q, u2m, I * q2 * l / (2.0 * L));
  add(P1m, u2q, -I * q2 * l / (2.0 * L));
  add(u2m, u2q, q2 * q2 * l);
  add(P1q, u3m, I * q3 * l / (2.0 * L));
  add(u2q, u3m, q2 * q3 * l);
  add(P1m, u3q, -I * q3 * l / (2.0 * L));
  add(u2m, u3q, q2 * q3 * l);
  add(u3m, u3q, q3 * q3 * l);
  add(P1m, P1q, 3.0 / (4.0 * L));
  add(P2m, P2q, 1.0 / (4.0 * m));
  add(P3m, P3q, 1.0 / (4.0 * m));
  add(P2q, u1m, 0.5 * I * q2);
  add(P3q, u1m, 0.5 * I * q3);
  add(P2m, u1q, -0.5 * I * q2);
  add(P3m, u1q, -0.5 * I * q3);
  add(u2m, u2q, 2.0 * m * q2 * q2);
  add(u2m, u2q, m * q3 * q3);
  add(u2q, u3m, m * q2 * q3);
  add(u2m, u3q, m * q2 * q3);
  add(u3m, u3q, m * q2 * q2);
  add(u3m, u3q, 2.0 * m * q3 * q3);
  return C;
}

CanonicalStructureReport verify_canonical_structure(const BogoliubovResult& r,
                                                    const ModeHamiltonian& h) {
  const Mat12 om = ladder_commutator_matrix();
  const Mat12 A = h.A();
  const Mat12& V = r.transform;

  CanonicalStructureReport rep{};
  rep.symplectic_residual =
      (V * om * V.transpose() - om).cwiseAbs().maxCoeff();

  const Mat12 B = V.transpose() * A * V;
  Vec6 coeff = B.diagonal().head<6>();
  double offdiag = 0.0;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(B(i, j)));
  double diag_scale = std::max(1e-12, B.diagonal().cwiseAbs().maxCoeff());
  // The two diagonal halves and the stated energies must agree too.
  double diag_mismatch =
      (B.diagonal().tail<6>() - coeff).cwiseAbs().maxCoeff();
  diag_mismatch = std::max(
      diag_mismatch, (coeff.cwiseAbs() - r.energies).cwiseAbs().maxCoeff());
  rep.offdiagonal_leakage = std::max(offdiag, diag_mismatch) / diag_scale;

  // Reconstruction: push the printed Fourier-mode Hamiltonian through
  // X = (W V) B and demand the diagonal normal form.
  const CMat12 C = mode_hamiltonian_field_coefficients(h.lam, h.q2, h.q3);
  const CMat12 M = field_from_ladder_map() * V.cast<Complex>();
  CMat12 R = M.transpose() * C * M;
  R = 0.5 * (R + CMat12(R.transpose()));
  CMat12 target = CMat12::Zero();
  for (int i = 0; i < 6; ++i) {
    target(i, 6 + i) = coeff[i];
    target(6 + i, i) = coeff[i];
  }
  rep.hamiltonian_reconstruction_residual =
      (R - target).cwiseAbs().maxCoeff() / diag_scale;

  const double tol = 1e-10;
  if (rep.symplectic_residual > tol || rep.offdiagonal_leakage > tol ||
      rep.hamiltonian_reconstruction_residual > tol) {
    std::ostringstream ss;
    ss << "verify_canonical_structure: symplectic " << rep.symplectic_residual
       << ", leakage " << rep.offdiagonal_leakage << ", reconstruction "
       << rep.hamiltonian_reconstruction_residual;
    throw StructureViolation(ss.str());
  }
  return rep;
}

namespace {

int sweep_threads() {
  const char* env = std::getenv("ELASTIQ_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

}  // namespace

std::vector<SpectrumRow> dispersion_sweep(const LameParameters& lam,
                                          const std::vector<double>& q2_grid,
                                          const std::vector<int>& q3_list) {
  std::vector<std::pair<double, int>> points;
  for (double q2 : q2_grid)
    for (int q3 : q3_list) points.emplace_back(q2, q3);

  std::vector<SpectrumRow> rows(points.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      try {
        rows[i] = closed_form_energies(lam, points[i].first, points[i].second);
      } catch (const UnstableRegime&) {
        SpectrumRow r;
        r.q2 = points[i].first;
        r.q3 = points[i].second;
        const double qn =
            std::sqrt(r.q2 * r.q2 + static_cast<double>(r.q3) * r.q3);
        r.E_zero = 0.25 * qn;
        r.E_plus = 0.25 * std::sqrt(1.0 + radical_main(lam)) * qn;
        r.E_minus = std::numeric_limits<double>::quiet_NaN();
        r.stable = false;
        rows[i] = r;
      }
    }
  };

  const int nthreads =
      std::min<size_t>(sweep_threads(), std::max<size_t>(1, points.size()));
  if (nthreads <= 1) {
    work(0, points.size());
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (points.size() + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const size_t b = t * chunk, e = std::min(points.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

namespace {

std::string fmt7(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

}  // namespace

std::string dispersion_csv(const std::vector<SpectrumRow>& rows) {
  std::string out = "q2,q3,E_minus,E_zero,E_plus,stable\n";
  for (const auto& r : rows) {
    out += fmt7(r.q2);
    out += ',';
    out += std::to_string(r.q3);
    out += ',';
    out += fmt7(r.E_minus);
    out += ',';
    out += fmt7(r.E_zero);
    out += ',';
    out += fmt7(r.E_plus);
    out += ',';
    out += r.stable ? "true" : "false";
    out += '\n';
  }
  return out;
}

}  // namespace elastiq
