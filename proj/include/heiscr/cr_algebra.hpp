#pragma once

#include <string>
#include <vector>

#include "heiscr/fields.hpp"
#include "heiscr/heisenberg.hpp"

namespace heiscr::cr_algebra {

/// One element of the CR automorphism algebra basis.
struct CRBasisElement {
  enum class Tag { Xi, R, S, X, Y, Dil };
  Tag tag;
  int i = 0, j = 0; // block indices for R/S (i) and X/Y (i<=j resp. i<j)
  std::string name;
  PolyVectorField field;
};

/// Basis of the infinitesimal CR transformations of the standard right
/// structure: xi, R_i, S_i, X_ij (i<=j), Y_ij (i<j), D. Size n^2 + 2n + 2.
std::vector<CRBasisElement> basis(int n);

/// Vector field of an infinitesimal contact transformation with Hamiltonian
/// F: eta(X) = F exactly.
PolyVectorField hamiltonian_field(const Polynomial& F, int n);

/// Exact structure constants c^k_{ab} over the CR basis.
struct StructureConstants {
  int n = 1;
  int dim = 0;
  std::vector<Rational> c; // dim^3, index (a*dim+b)*dim+k

  const Rational& at(int a, int b, int k) const {
    return c[static_cast<size_t>((a * dim + b) * dim + k)];
  }
  Rational& at(int a, int b, int k) { return c[static_cast<size_t>((a * dim + b) * dim + k)]; }

  /// Max |antisymmetry defect|; exact zero by construction.
  bool antisymmetric() const;
  /// Jacobi identity over the constants, checked in exact arithmetic.
  bool jacobi() const;
};

/// Expand every pairwise bracket of basis elements in the basis. Throws if a
/// bracket fails to close (which would falsify the algebra claim).
StructureConstants bracket_table(int n);

/// Checks that span{xi, R_i, S_i} is an ideal and that the quotient algebra
/// matches u(n) (+) R through the matrix model X_ij -> i(E_ij + E_ji),
/// Y_ij -> E_ij - E_ji, with D spanning the central R factor.
struct IdealCheck {
  bool heis_is_ideal = false;
  bool quotient_matches_un = false;
  bool d_central_in_quotient = false;
  std::string witness; // first failing bracket, empty when ok

  bool ok() const { return heis_is_ideal && quotient_matches_un && d_central_in_quotient; }
};

IdealCheck verify_ideal(int n);
IdealCheck verify_ideal(const StructureConstants& table, const std::vector<CRBasisElement>& B);

/// Residuals of the infinitesimal-CR conditions for X against structure S at
/// p: first component measures L_X eta ^ eta (distribution preserved),
/// second measures proj_D [X, Phi W] - Phi proj_D [X, W] over horizontal
/// frame fields W (J preserved).
std::pair<double, double> cr_residual(const PolyVectorField& X,
                                      const heisenberg::SasakiStructure& S, const Point& p);

/// Horizontal frame fields of a standard-model structure.
std::vector<PolyVectorField> horizontal_frames(const heisenberg::SasakiStructure& S);

} // namespace heiscr::cr_algebra
