#include "elastiq/grassmann.hpp"

#include <bit>
#include <cmath>

namespace elastiq {

namespace {

// Sign from concatenating two sorted monomials and resorting: parity of the
// number of generator crossings.
int merge_sign(uint64_t a, uint64_t b) {
  int crossings = 0;
  while (b) {
    const int bit = std::countr_zero(b);
    b &= b - 1;
    // generators of a above `bit` must hop over it
    crossings += std::popcount(a >> (bit + 1));
  }
  return (crossings % 2 == 0) ? 1 : -1;
}

}  // namespace

GrassmannElement::GrassmannElement(int n_generators) : n_(n_generators) {
  if (n_ < 0 || n_ > 31) throw DomainError("GrassmannElement: 0 <= n <= 31");
}

GrassmannElement GrassmannElement::scalar(Complex c, int n_generators) {
  GrassmannElement g(n_generators);
  g.coeff_[0] = c;
  return g;
}

GrassmannElement GrassmannElement::theta(int k, int n_generators) {
  if (k < 0 || k >= n_generators) throw DomainError("theta: index out of range");
  GrassmannElement g(n_generators);
  g.coeff_[uint64_t(1) << k] = 1.0;
  return g;
}

GrassmannElement GrassmannElement::theta_conj(int k, int n_generators) {
  if (k < 0 || k >= n_generators)
    throw DomainError("theta_conj: index out of range");
  GrassmannElement g(n_generators);
  g.coeff_[uint64_t(1) << (n_generators + k)] = 1.0;
  return g;
}

void GrassmannElement::set(uint64_t mask, Complex c) { coeff_[mask] = c; }

GrassmannElement GrassmannElement::operator+(const GrassmannElement& o) const {
  if (n_ != o.n_) throw UniverseMismatch("grassmann add: generator counts differ");
  GrassmannElement out = *this;
  for (const auto& [m, c] : o.coeff_) out.coeff_[m] += c;
  return out;
}

GrassmannElement GrassmannElement::operator-(const GrassmannElement& o) const {
  return *this + (-o);
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement out(n_);
  for (const auto& [m, c] : coeff_) out.coeff_[m] = -c;
  return out;
}

GrassmannElement GrassmannElement::operator*(Complex c) const {
  GrassmannElement out(n_);
  for (const auto& [m, v] : coeff_) out.coeff_[m] = v * c;
  return out;
}

GrassmannElement GrassmannElement::operator*(const GrassmannElement& o) const {
  if (n_ != o.n_) throw UniverseMismatch("grassmann multiply: generator counts differ");
  GrassmannElement out(n_);
  for (const auto& [ma, ca] : coeff_) {
    for (const auto& [mb, cb] : o.coeff_) {
      if (ma & mb) continue;  // repeated generator squares to zero
      const int s = merge_sign(ma, mb);
      out.coeff_[ma | mb] += static_cast<double>(s) * ca * cb;
    }
  }
  return out;
}

GrassmannElement grassmann_multiply(const GrassmannElement& a,
                                    const GrassmannElement& b) {
  return a * b;
}

GrassmannElement GrassmannElement::adjoint() const {
  GrassmannElement out(n_);
  for (const auto& [m, c] : coeff_) {
    const int g = std::popcount(m);
    // (t_{i1}...t_{ig})+ = t+_{ig}...t+_{i1}: reversal sign, then swap halves.
    const int rev = (g * (g - 1) / 2) % 2 == 0 ? 1 : -1;
    const uint64_t low = m & ((uint64_t(1) << n_) - 1);
    const uint64_t high = m >> n_;
    const uint64_t swapped = (low << n_) | high;
    // Re-sorting the swapped symbol list back to canonical order costs the
    // number of (plain, conjugate) pairs that traded places.
    const int cross = std::popcount(low) * std::popcount(high);
    const int s = (cross % 2 == 0 ? 1 : -1) * rev;
    out.coeff_[swapped] += static_cast<double>(s) * std::conj(c);
  }
  return out;
}

bool GrassmannElement::is_zero() const {
  for (const auto& [m, c] : coeff_)
    if (c != 0.0) return false;
  return true;
}

GrassmannMatrix::GrassmannMatrix(int rows, int cols, int n_generators)
    : rows_(rows), cols_(cols), n_(n_generators),
      v_(static_cast<size_t>(rows) * cols, GrassmannElement(n_generators)) {}

GrassmannMatrix GrassmannMatrix::operator*(const GrassmannMatrix& o) const {
  if (cols_ != o.rows_ || n_ != o.n_)
    throw UniverseMismatch("grassmann matrix multiply: shape or universe mismatch");
  GrassmannMatrix out(rows_, o.cols_, n_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      GrassmannElement acc(n_);
      for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
      out.at(i, j) = acc;
    }
  return out;
}

GrassmannMatrix GrassmannMatrix::operator+(const GrassmannMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || n_ != o.n_)
    throw UniverseMismatch("grassmann matrix add: shape or universe mismatch");
  GrassmannMatrix out(rows_, cols_, n_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j) + o.at(i, j);
  return out;
}

GrassmannMatrix GrassmannMatrix::adjoint() const {
  GrassmannMatrix out(cols_, rows_, n_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).adjoint();
  return out;
}

bool GrassmannMatrix::is_zero() const {
  for (const auto& e : v_)
    if (!e.is_zero()) return false;
  return true;
}

GrassmannMatrix GrassmannMatrix::from_boson(const MatX& b,
                                            const GrassmannElement& g) {
  GrassmannMatrix out(static_cast<int>(b.rows()), static_cast<int>(b.cols()),
                      g.generators());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      if (b(i, j) != 0.0) out.at(i, j) = g * Complex(b(i, j));
  return out;
}

GrassmannMatrix anticommutator(const GrassmannMatrix& a, const GrassmannMatrix& b) {
  return a * b + b * a;
}

MatX boson_annihilation(int levels) {
  MatX b = MatX::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

FermionizedMode fermionize(int k, int n_modes, int truncation) {
  if (truncation < 2)
    throw TruncationTooSmall("fermionize: need at least 2 levels per mode");
  if (k < 0 || k >= n_modes) throw DomainError("fermionize: mode index out of range");

  // b_k = I (x) ... (x) b (x) ... (x) I on the n_modes-fold Fock space.
  const MatX b1 = boson_annihilation(truncation);
  MatX bk = MatX::Ones(1, 1);
  for (int m = 0; m < n_modes; ++m) {
    const MatX& factor = (m == k) ? b1 : MatX(MatX::Identity(truncation, truncation));
    MatX next = MatX::Zero(bk.rows() * factor.rows(), bk.cols() * factor.cols());
    for (int i = 0; i < bk.rows(); ++i)
      for (int j = 0; j < bk.cols(); ++j)
        if (bk(i, j) != 0.0)
          next.block(i * factor.rows(), j * factor.cols(), factor.rows(),
                     factor.cols()) = bk(i, j) * factor;
    bk = next;
  }

  FermionizedMode out{
      GrassmannMatrix::from_boson(bk, GrassmannElement::theta(k, n_modes)),
      GrassmannMatrix::from_boson(bk.transpose(),
                                  GrassmannElement::theta_conj(k, n_modes))};
  return out;
}

}  // namespace elastiq
