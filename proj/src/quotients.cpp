#include "heiscr/quotients.hpp"

#include <cmath>
#include <stdexcept>

#include "heiscr/sampling.hpp"
#include "heiscr/snf.hpp"

namespace heiscr::quotients {

using heisenberg::GroupElement;

LatticeSpec LatticeSpec::uniform_k(int n, long long k) {
  if (n < 1 || n > 4 || k < 1) throw std::invalid_argument("LatticeSpec: need n in 1..4, k >= 1");
  LatticeSpec s;
  s.n = n;
  s.uniform = true;
  s.k = k;
  return s;
}

LatticeSpec LatticeSpec::chain(const std::vector<long long>& l) {
  LatticeSpec s;
  s.n = static_cast<int>(l.size());
  if (s.n < 1 || s.n > 4) throw std::invalid_argument("LatticeSpec: need 1 <= n <= 4");
  for (size_t i = 0; i < l.size(); ++i) {
    if (l[i] < 1) throw std::invalid_argument("LatticeSpec: entries must be positive");
    if (i + 1 < l.size() && l[i + 1] % l[i] != 0)
      throw std::invalid_argument("LatticeSpec: divisibility chain violated");
  }
  s.uniform = false;
  s.k = 0;
  s.l = l;
  return s;
}

std::vector<GroupElement> generators(const LatticeSpec& spec) {
  int n = spec.n;
  std::vector<GroupElement> out;
  for (int i = 0; i < n; ++i) {
    GroupElement a(n);
    a.x(i) = spec.sx();
    out.push_back(a);
  }
  for (int i = 0; i < n; ++i) {
    GroupElement b(n);
    b.y(i) = spec.sy(i);
    out.push_back(b);
  }
  GroupElement c(n);
  c.z() = spec.sz();
  out.push_back(c);
  return out;
}

bool in_lattice(const Point& p, const LatticeSpec& spec, double tol) {
  int n = p.n;
  auto on = [&](double v, double s) { return std::fabs(v / s - std::round(v / s)) < tol; };
  for (int i = 0; i < n; ++i)
    if (!on(p.x(i), spec.sx()) || !on(p.y(i), spec.sy(i))) return false;
  return on(p.z(), spec.sz());
}

DeckReduction reduce_point(const Point& p, const LatticeSpec& spec) {
  int n = p.n;
  GroupElement deck(n);
  Point rep(n);
  // y first, then x, then z: the z-correction of the group law depends on
  // the chosen x and y deck parts.
  for (int i = 0; i < n; ++i) {
    double sy = spec.sy(i);
    deck.y(i) = sy * std::floor(p.y(i) / sy);
    rep.y(i) = p.y(i) - deck.y(i);
  }
  for (int i = 0; i < n; ++i) {
    double sx = spec.sx();
    deck.x(i) = sx * std::floor(p.x(i) / sx);
    rep.x(i) = p.x(i) - deck.x(i);
  }
  double zshift = p.z();
  for (int i = 0; i < n; ++i) zshift -= rep.x(i) * deck.y(i);
  double sz = spec.sz();
  deck.z() = sz * std::floor(zshift / sz);
  rep.z() = zshift - deck.z();
  return DeckReduction{rep, deck};
}

double structure_invariance_residual(const heisenberg::SasakiStructure& S,
                                     const LatticeSpec& spec, int samples, uint64_t seed) {
  auto gens = generators(spec);
  auto pts = sample_ball(S.n, samples, seed);
  double worst = 0;
  for (const auto& g : gens) {
    MatD J = heisenberg::right_translation_jacobian(g);
    for (const auto& p : pts) {
      Point image = heisenberg::mul(p, g);
      VecD pe = heisenberg::pullback_form(S.eta, image, J);
      VecD e = S.eta.value(p);
      for (int i = 0; i < p.dim(); ++i) worst = std::fmax(worst, std::fabs(pe[i] - e[i]));
      MatD pg = heisenberg::pullback_metric(S.g, image, J);
      MatD gm = S.g.eval_jets(p).values();
      worst = std::fmax(worst, (pg - gm).max_abs());
      MatD pp = heisenberg::pullback_endo(S.phi, image, J);
      MatD ph = S.phi.value(p);
      worst = std::fmax(worst, (pp - ph).max_abs());
    }
  }
  return worst;
}

double invariance_residual(const sasaki_cone::ConeParams& a, const LatticeSpec& spec, int samples,
                           uint64_t seed) {
  auto S = sasaki_cone::deform(a, spec.n);
  return structure_invariance_residual(S, spec, samples, seed);
}

HomologyResult homology(const LatticeSpec& spec) {
  int n = spec.n;
  auto gens = generators(spec);
  int m = static_cast<int>(gens.size()); // 2n+1
  double sz = spec.sz();

  std::vector<std::vector<long long>> rel;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      GroupElement comm = heisenberg::mul(heisenberg::mul(gens[static_cast<size_t>(i)], gens[static_cast<size_t>(j)]),
                                          heisenberg::mul(heisenberg::inv(gens[static_cast<size_t>(i)]),
                                                          heisenberg::inv(gens[static_cast<size_t>(j)])));
      for (int b = 0; b < n; ++b)
        if (comm.x(b) != 0.0 || comm.y(b) != 0.0)
          throw std::logic_error("homology: commutator left the center");
      double q = comm.z() / sz;
      long long qi = static_cast<long long>(std::llround(q));
      if (std::fabs(q - static_cast<double>(qi)) > 1e-9)
        throw std::logic_error("homology: commutator is not a lattice power of the center");
      if (qi == 0) continue;
      std::vector<long long> row(static_cast<size_t>(m), 0);
      row[static_cast<size_t>(m - 1)] = qi; // center generator is listed last
      rel.push_back(row);
    }

  HomologyResult res;
  if (rel.empty()) {
    res.free_rank = m;
    return res;
  }
  SmithResult snf = smith_normal_form(rel);
  res.free_rank = m - snf.rank;
  for (long long dgl : snf.diagonal)
    if (dgl > 1) res.torsion.push_back(dgl);
  return res;
}

ProjectedLattice projected_lattice(const LatticeSpec& spec) {
  int n = spec.n;
  ProjectedLattice out;
  out.n = n;
  out.basis.assign(static_cast<size_t>(2 * n), std::vector<long long>(static_cast<size_t>(2 * n), 0));
  double cov = 1.0;
  for (int i = 0; i < n; ++i) {
    long long sx = static_cast<long long>(spec.sx());
    out.basis[static_cast<size_t>(i)][static_cast<size_t>(i)] = sx;
    cov *= static_cast<double>(sx);
  }
  for (int i = 0; i < n; ++i) {
    long long sy = static_cast<long long>(spec.sy(i));
    out.basis[static_cast<size_t>(n + i)][static_cast<size_t>(n + i)] = sy;
    cov *= static_cast<double>(sy);
  }
  out.covolume = cov;
  return out;
}

} // namespace heiscr::quotients
