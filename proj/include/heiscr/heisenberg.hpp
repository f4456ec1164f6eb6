#pragma once

#include <functional>
#include <string>
#include <vector>

#include "heiscr/fields.hpp"
#include "heiscr/tensor.hpp"

namespace heiscr::heisenberg {

using GroupElement = Point;

/// Group law (x,y,z)*(x',y',z') = (x+x', y+y', z+z'+x.y').
GroupElement mul(const GroupElement& p, const GroupElement& q);
GroupElement inv(const GroupElement& p);
GroupElement identity(int n);

/// Anisotropic dilation (x,y,z) -> (lx, ly, l^2 z); group automorphism.
Point dilation(double lambda, const Point& p);

/// Coordinate swap (x,y,z) -> (y,x,z) interchanging the two invariant models.
Point involution(const Point& p);

/// Differential of right translation p -> p*h (constant in p).
MatD right_translation_jacobian(const GroupElement& h);
/// Differential of left translation p -> h*p.
MatD left_translation_jacobian(const GroupElement& h);

/// Polarized model group law (w,s)*(zeta,c) = (w+zeta, s+c+2 Im(conj(zeta).w)).
GroupElement mul_polarized(const GroupElement& p, const GroupElement& q);
MatD right_translation_jacobian_polarized(const GroupElement& h);

enum class Model { Right, Left, Intermediate, Deformed };

std::string model_name(Model m);

/// A contact metric quadruple (xi, eta, Phi, g) on R^{2n+1}.
///
/// g is the unweighted-recipe metric d(eta) o (Phi (x) 1) + eta (x) eta; it
/// carries the length geometry (transverse metric, CC distances) and makes
/// the structural residuals vanish identically. g_sasaki = (g + eta(x)eta)/2
/// is its D-homothetic companion with transverse weight 1/2, the unique
/// rescaling along the contact fibration for which the classical Sasakian
/// curvature identities hold (R(X,xi)xi = X, Phi-sectional -3, scalar -2n
/// for the standard models). Curvature statements are made about g_sasaki.
struct SasakiStructure {
  int n = 1;
  Model model = Model::Right;
  std::vector<double> weights; // deformation weights, empty unless Deformed
  PolyVectorField xi;
  OneFormField eta;
  EndoField phi;
  MetricField g;
  MetricField g_sasaki;
};

/// The three closed-form models. Right/left are the invariant structures;
/// the intermediate model is assembled from its contact form and the standard
/// complex structure via the canonical recipe.
SasakiStructure standard_structure(Model model, int n);

/// Horizontal frame fields of the right model: V_i = d/dx_i + y_i d/dz,
/// U_i = d/dy_i.
PolyVectorField frame_V_right(int n, int i);
PolyVectorField frame_U_right(int n, int i);
PolyVectorField frame_V_left(int n, int i);
PolyVectorField frame_U_left(int n, int i);
PolyVectorField reeb_field(int n);

OneFormField eta_right(int n);
OneFormField eta_left(int n);

/// Metric from the recipe g = d(eta) o (Phi (x) 1) + eta (x) eta, computed
/// symbolically from polynomial eta and Phi.
std::vector<std::vector<Polynomial>> metric_recipe_polys(
    const std::vector<Polynomial>& eta, const std::vector<std::vector<Polynomial>>& phi);

/// Residuals of the five structural identities at a point.
struct StructureResiduals {
  double eta_xi = 0;       // |eta(xi) - 1|
  double phi_xi = 0;       // |Phi xi|
  double phi_square = 0;   // |Phi^2 + Id - xi (x) eta|
  double g_xi_eta = 0;     // |g(xi, .) - eta|
  double metric_recipe = 0; // |g - d(eta)o(Phi(x)1) - eta(x)eta|

  double max() const;
};

StructureResiduals structure_residuals(const SasakiStructure& S, const Point& p);

/// Pointwise pullbacks under a map with constant Jacobian J at p:
/// form   (phi^* w)_p = J^T w(phi(p))
/// metric (phi^* g)_p = J^T g(phi(p)) J
/// endo   (phi^* Phi)_p = J^{-1} Phi(phi(p)) J
VecD pullback_form(const OneFormField& w, const Point& image, const MatD& jac);
MatD pullback_metric(const MetricField& g, const Point& image, const MatD& jac);
MatD pullback_endo(const EndoField& phi, const Point& image, const MatD& jac);

} // namespace heiscr::heisenberg
