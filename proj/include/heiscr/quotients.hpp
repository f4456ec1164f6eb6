#pragma once

#include <cstdint>
#include <vector>

#include "heiscr/heisenberg.hpp"
#include "heiscr/sasaki_cone.hpp"

namespace heiscr::quotients {

/// Lattice subgroup of the group: either the uniform lattice (all coordinates
/// in kZ) or the divisibility-chain lattice with x in Z^n, y_i in l_i Z,
/// z in Z (closed under the group law since x.y' stays integral).
struct LatticeSpec {
  int n = 1;
  bool uniform = true;
  long long k = 1;
  std::vector<long long> l;

  static LatticeSpec uniform_k(int n, long long k);
  static LatticeSpec chain(const std::vector<long long>& l);

  // coordinate scales of the lattice: x_i in sx Z, y_i in sy(i) Z, z in sz Z
  double sx() const { return uniform ? static_cast<double>(k) : 1.0; }
  double sy(int i) const {
    return uniform ? static_cast<double>(k) : static_cast<double>(l[static_cast<size_t>(i)]);
  }
  double sz() const { return uniform ? static_cast<double>(k) : 1.0; }
};

/// Generators: (sx e_i, 0, 0), (0, sy(i) e_i, 0), (0, 0, sz); 2n+1 elements.
std::vector<heisenberg::GroupElement> generators(const LatticeSpec& spec);

/// Whether a point has all coordinates on the lattice (exact test for the
/// dyadic/integer inputs used in practice).
bool in_lattice(const Point& p, const LatticeSpec& spec, double tol = 1e-9);

/// Representative in the canonical half-open box [0,sx)^n x prod [0,sy(i)) x
/// [0,sz), together with the deck element: mul(representative, deck) = p.
struct DeckReduction {
  Point representative;
  heisenberg::GroupElement deck;
};

DeckReduction reduce_point(const Point& p, const LatticeSpec& spec);

/// Max pullback residual of (eta, Phi, g) of S under right translation by
/// each generator, over the sample points. Zero iff the structure descends.
double structure_invariance_residual(const heisenberg::SasakiStructure& S,
                                     const LatticeSpec& spec, int samples, uint64_t seed);

/// Same for the cone structure S_a; < 1e-10 iff a = 0.
double invariance_residual(const sasaki_cone::ConeParams& a, const LatticeSpec& spec, int samples,
                           uint64_t seed);

/// H_1 of the quotient nilmanifold: abelianization of the lattice via the
/// Smith normal form of the commutator relation matrix.
struct HomologyResult {
  int free_rank = 0;
  std::vector<long long> torsion; // nontrivial cyclic factors
};

HomologyResult homology(const LatticeSpec& spec);

/// Basis of the projected lattice in R^{2n} (z forgotten), with covolume.
struct ProjectedLattice {
  int n = 1;
  std::vector<std::vector<long long>> basis; // 2n x 2n
  double covolume = 0.0;
};

ProjectedLattice projected_lattice(const LatticeSpec& spec);

} // namespace heiscr::quotients
