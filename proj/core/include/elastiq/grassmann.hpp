#ifndef ELASTIQ_GRASSMANN_HPP
#define ELASTIQ_GRASSMANN_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "elastiq/types.hpp"

namespace elastiq {

/// Element of the exterior algebra over 2n anticommuting generators:
/// theta_1..theta_n and their conjugates theta*_1..theta*_n. Monomials are
/// bitmasks in that canonical order (low n bits plain, high n conjugate).
/// Anticommutation is exact: identical products cancel bit for bit.
class GrassmannElement {
 public:
  explicit GrassmannElement(int n_generators = 0);

  static GrassmannElement scalar(Complex c, int n_generators);
  static GrassmannElement theta(int k, int n_generators);
  static GrassmannElement theta_conj(int k, int n_generators);

  int generators() const { return n_; }
  const std::map<uint64_t, Complex>& coefficients() const { return coeff_; }

  GrassmannElement operator+(const GrassmannElement& o) const;
  GrassmannElement operator-(const GrassmannElement& o) const;
  GrassmannElement operator*(const GrassmannElement& o) const;
  GrassmannElement operator*(Complex c) const;
  GrassmannElement operator-() const;

  /// Hermitian conjugate: reverses monomials and swaps theta <-> theta*.
  GrassmannElement adjoint() const;

  bool is_zero() const;  // exact: every stored coefficient equals 0

  void set(uint64_t mask, Complex c);

 private:
  int n_;
  std::map<uint64_t, Complex> coeff_;
};

GrassmannElement grassmann_multiply(const GrassmannElement& a,
                                    const GrassmannElement& b);

/// Dense matrix over the Grassmann ring; entry order in products is kept.
class GrassmannMatrix {
 public:
  GrassmannMatrix(int rows, int cols, int n_generators);

  GrassmannElement& at(int i, int j) { return v_[i * cols_ + j]; }
  const GrassmannElement& at(int i, int j) const { return v_[i * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  GrassmannMatrix operator*(const GrassmannMatrix& o) const;
  GrassmannMatrix operator+(const GrassmannMatrix& o) const;
  GrassmannMatrix adjoint() const;
  bool is_zero() const;

  static GrassmannMatrix from_boson(const MatX& b, const GrassmannElement& g);

 private:
  int rows_, cols_, n_;
  std::vector<GrassmannElement> v_;
};

GrassmannMatrix anticommutator(const GrassmannMatrix& a, const GrassmannMatrix& b);

/// Truncated boson ladder operator: b |n> = sqrt(n) |n-1> on `levels` states.
MatX boson_annihilation(int levels);

struct FermionizedMode {
  GrassmannMatrix c;
  GrassmannMatrix c_dagger;
};

/// c_k = theta_k (x) b_k on the `n_modes`-fold truncated Fock space.
FermionizedMode fermionize(int k, int n_modes, int truncation);

}  // namespace elastiq

#endif
