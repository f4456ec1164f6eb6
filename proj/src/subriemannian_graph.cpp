#include "heiscr/subriemannian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "heiscr/heisenberg.hpp"
#include "heiscr/tensor.hpp"

namespace heiscr::subriemannian {

HorizontalPath lift(const std::vector<VecD>& controls, const Point& p0) {
  int n = p0.n;
  HorizontalPath path;
  path.p0 = p0;
  path.controls = controls;
  path.samples.push_back(p0);
  if (controls.empty()) return path;
  double dt = 1.0 / static_cast<double>(controls.size());
  Point cur = p0;
  for (const auto& u : controls) {
    if (u.n != 2 * n) throw std::invalid_argument("lift: control dimension mismatch");
    Point next = cur;
    double dz = 0;
    for (int i = 0; i < n; ++i) {
      double ux = u[i], uy = u[n + i];
      if (!std::isfinite(ux) || !std::isfinite(uy))
        throw std::invalid_argument("lift: non-finite control");
      next.x(i) = cur.x(i) + ux * dt;
      next.y(i) = cur.y(i) + uy * dt;
      // z' = y . x' integrated exactly over the interval
      dz += ux * dt * cur.y(i) + ux * uy * dt * dt / 2.0;
    }
    next.z() = cur.z() + dz;
    path.samples.push_back(next);
    cur = next;
  }
  return path;
}

Point endpoint(const HorizontalPath& path) { return path.samples.back(); }

double horizontality_residual(const HorizontalPath& path) {
  if (path.samples.size() < 2) return 0.0;
  int n = path.p0.n;
  double worst = 0;
  for (size_t k = 0; k + 1 < path.samples.size(); ++k) {
    const Point& a = path.samples[k];
    const Point& b = path.samples[k + 1];
    double dz = b.z() - a.z();
    double want = 0;
    for (int i = 0; i < n; ++i) want += 0.5 * (a.y(i) + b.y(i)) * (b.x(i) - a.x(i));
    worst = std::max(worst, std::fabs(dz - want));
  }
  return worst;
}

double cc_length(const HorizontalPath& path, double residual_tol) {
  double res = horizontality_residual(path);
  if (res > residual_tol)
    throw std::invalid_argument("cc_length: path is not horizontal (residual " +
                                std::to_string(res) + ")");
  if (path.controls.empty()) return 0.0;
  double dt = 1.0 / static_cast<double>(path.controls.size());
  double len = 0;
  for (const auto& u : path.controls) len += u.norm() * dt;
  return len;
}

int horizontal_rank(const Point& p) {
  int n = p.n;
  std::vector<VecD> cols;
  for (int i = 0; i < n; ++i) {
    cols.push_back(heisenberg::frame_V_right(n, i).eval(p));
    cols.push_back(heisenberg::frame_U_right(n, i).eval(p));
  }
  return numeric_rank(cols);
}

int bracket_rank(const Point& p) {
  int n = p.n;
  std::vector<VecD> cols;
  std::vector<PolyVectorField> frame;
  for (int i = 0; i < n; ++i) {
    frame.push_back(heisenberg::frame_V_right(n, i));
    frame.push_back(heisenberg::frame_U_right(n, i));
  }
  for (auto& f : frame) cols.push_back(f.eval(p));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cols.push_back(bracket(frame[static_cast<size_t>(2 * i)], frame[static_cast<size_t>(2 * j + 1)]).eval(p));
  return numeric_rank(cols);
}

std::vector<std::vector<Polynomial>> penalized_metric_polys(int n, double L) {
  auto S = heisenberg::standard_structure(heisenberg::Model::Right, n);
  int d = 2 * n + 1;
  auto eta = *heisenberg::eta_right(n).poly;
  auto base = heisenberg::metric_recipe_polys(eta, *S.phi.poly); // = g^R exactly
  Rational lm1 = Rational::from_double(L) - Rational(1);
  std::vector<std::vector<Polynomial>> out(
      static_cast<size_t>(d), std::vector<Polynomial>(static_cast<size_t>(d), Polynomial(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          base[static_cast<size_t>(i)][static_cast<size_t>(j)] +
          lm1 * (eta[static_cast<size_t>(i)] * eta[static_cast<size_t>(j)]);
  return out;
}

// ---------------------------------------------------------------------------
// Lattice-graph oracle.

namespace {

struct Lattice {
  int n;
  int R;      // horizontal steps per axis (even)
  int half;   // R/2
  double h;   // horizontal spacing
  double hz;  // z spacing = h^2/2
  int nz_half;
  int64_t nz;
  int64_t horiz_count; // (R+1)^{2n}
  int64_t total;
  std::vector<int64_t> stride; // index stride of each horizontal axis

  explicit Lattice(int blocks, const GraphOptions& opt) : n(blocks), R(opt.resolution) {
    if (R < 8 || R % 2 != 0)
      throw std::invalid_argument("dist_graph: resolution must be even and >= 8");
    half = R / 2;
    h = 2.0 * opt.box / R;
    hz = h * h / 2.0;
    nz_half = static_cast<int>(std::llround(opt.box_z / hz));
    nz = 2 * static_cast<int64_t>(nz_half) + 1;
    horiz_count = 1;
    for (int i = 0; i < 2 * n; ++i) horiz_count *= (R + 1);
    total = horiz_count * nz;
    if (total > (int64_t(1) << 31))
      throw std::invalid_argument("dist_graph: lattice too large; reduce resolution or box");
    stride.assign(static_cast<size_t>(2 * n), 0);
    int64_t s = nz;
    for (int i = 2 * n - 1; i >= 0; --i) {
      stride[static_cast<size_t>(i)] = s;
      s *= (R + 1);
    }
  }

  // integer coordinates: per-axis in [-half, half], z in [-nz_half, nz_half]
  int64_t index(const std::vector<int>& xy, int64_t zi) const {
    int64_t idx = 0;
    for (int i = 0; i < 2 * n; ++i) idx = idx * (R + 1) + (xy[static_cast<size_t>(i)] + half);
    return idx * nz + (zi + nz_half);
  }

  void decode(int64_t idx, std::vector<int>& xy, int64_t& zi) const {
    zi = idx % nz - nz_half;
    int64_t rest = idx / nz;
    for (int i = 2 * n - 1; i >= 0; --i) {
      xy[static_cast<size_t>(i)] = static_cast<int>(rest % (R + 1)) - half;
      rest /= (R + 1);
    }
  }

  bool snap(const Point& p, std::vector<int>& xy, int64_t& zi) const {
    for (int i = 0; i < 2 * n; ++i) {
      double v = p.c[i] / h;
      double r = std::round(v);
      if (std::fabs(v - r) > 1e-7 || std::fabs(r) > half) return false;
      xy[static_cast<size_t>(i)] = static_cast<int>(r);
    }
    double vz = p.z() / hz;
    double rz = std::round(vz);
    if (std::fabs(vz - rz) > 1e-6 || std::fabs(rz) > nz_half) return false;
    zi = static_cast<int64_t>(rz);
    return true;
  }
};

struct ChordMove {
  int block;
  int p, q;     // lattice offsets in (x_b, y_b)
  double cost;  // transverse length
};

std::vector<ChordMove> chord_moves(int n, int stencil, double h) {
  std::vector<ChordMove> moves;
  for (int b = 0; b < n; ++b)
    for (int p = -stencil; p <= stencil; ++p)
      for (int q = -stencil; q <= stencil; ++q) {
        if (p == 0 && q == 0) continue;
        if (std::gcd(std::abs(p), std::abs(q)) > 1) continue;
        moves.push_back(ChordMove{b, p, q, h * std::sqrt(double(p * p + q * q))});
      }
  return moves;
}

/// Largest angular gap between consecutive stencil directions, which bounds
/// the multiplicative overestimate of chord-polygon approximations.
double stencil_rel_error(int stencil) {
  std::vector<double> angles;
  for (int p = -stencil; p <= stencil; ++p)
    for (int q = -stencil; q <= stencil; ++q) {
      if (p == 0 && q == 0) continue;
      if (std::gcd(std::abs(p), std::abs(q)) > 1) continue;
      angles.push_back(std::atan2(double(q), double(p)));
    }
  std::sort(angles.begin(), angles.end());
  double gap = 2 * M_PI + angles.front() - angles.back();
  for (size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return 1.0 / std::cos(gap / 2.0) - 1.0;
}

} // namespace

DistanceEstimate dist_graph(const Point& p, const Point& q, const GraphOptions& opt, Mode mode,
                            double L) {
  if (p.n != q.n) throw std::invalid_argument("dist_graph: dimension mismatch");
  int n = p.n;
  Lattice lat(n, opt);

  std::vector<int> pxy(static_cast<size_t>(2 * n)), qxy(static_cast<size_t>(2 * n));
  int64_t pz = 0, qz = 0;
  if (!lat.snap(p, pxy, pz))
    throw std::invalid_argument("dist_graph: start point not on the lattice or outside the box");
  if (!lat.snap(q, qxy, qz))
    throw std::invalid_argument("dist_graph: target point not on the lattice or outside the box");
  // Endpoints hugging the boundary are refused rather than silently served
  // with a truncated search region.
  for (auto* idx : {&pxy, &qxy})
    for (int i = 0; i < 2 * n; ++i)
      if (std::abs((*idx)[static_cast<size_t>(i)]) > lat.half - opt.stencil)
        throw std::invalid_argument(
            "dist_graph: endpoint within one chord of the box boundary; enlarge the box");

  auto moves = chord_moves(n, opt.stencil, lat.h);
  // Composite vertical moves realized by unit triangle / square loops; they
  // guarantee connectivity across z parities.
  const double tri_cost = (2.0 + std::sqrt(2.0)) * lat.h;
  const double sq_cost = 4.0 * lat.h;
  const double vert_cost = std::sqrt(L) * lat.hz; // Riemannian mode only

  int64_t src = lat.index(pxy, pz);
  int64_t dst = lat.index(qxy, qz);

  const float inf = std::numeric_limits<float>::infinity();
  std::vector<float> dist(static_cast<size_t>(lat.total), inf);
  using QE = std::pair<double, int64_t>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  dist[static_cast<size_t>(src)] = 0.0f;
  pq.push({0.0, src});

  std::vector<int> xy(static_cast<size_t>(2 * n));
  int64_t zi = 0;
  double result = -1;

  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (static_cast<float>(du) > dist[static_cast<size_t>(u)]) continue;
    if (u == dst) {
      result = du;
      break;
    }
    lat.decode(u, xy, zi);

    auto relax = [&](int64_t v, double w) {
      float nd = static_cast<float>(du + w);
      if (nd < dist[static_cast<size_t>(v)]) {
        dist[static_cast<size_t>(v)] = nd;
        pq.push({static_cast<double>(nd), v});
      }
    };

    for (const auto& mv : moves) {
      int xi = xy[static_cast<size_t>(mv.block)] + mv.p;
      int yi = xy[static_cast<size_t>(n + mv.block)] + mv.q;
      if (std::abs(xi) > lat.half || std::abs(yi) > lat.half) continue;
      // z-step of the exact chord lift: h_z (2 p j + p q) with j the source
      // y-index of the block
      int64_t dz = 2LL * mv.p * xy[static_cast<size_t>(n + mv.block)] + mv.p * mv.q;
      int64_t zn = zi + dz;
      if (std::llabs(zn) > lat.nz_half) continue;
      int64_t v = u + mv.p * lat.stride[static_cast<size_t>(mv.block)] +
                  mv.q * lat.stride[static_cast<size_t>(n + mv.block)] + dz;
      relax(v, mv.cost);
    }
    // vertical composites (both modes) and straight vertical edges (Riemannian)
    if (zi + 1 <= lat.nz_half) {
      relax(u + 1, mode == Mode::Riemannian ? std::min(tri_cost, vert_cost) : tri_cost);
    }
    if (zi - 1 >= -lat.nz_half) {
      relax(u - 1, mode == Mode::Riemannian ? std::min(tri_cost, vert_cost) : tri_cost);
    }
    if (zi + 2 <= lat.nz_half) relax(u + 2, mode == Mode::Riemannian ? std::min(sq_cost, 2 * vert_cost) : sq_cost);
    if (zi - 2 >= -lat.nz_half) relax(u - 2, mode == Mode::Riemannian ? std::min(sq_cost, 2 * vert_cost) : sq_cost);
  }

  if (result < 0)
    throw std::runtime_error("dist_graph: target unreachable (lattice disconnected?)");

  DistanceEstimate est;
  est.value = result;
  est.method = "graph";
  est.upper = result;
  est.rel_error = stencil_rel_error(opt.stencil);
  est.lower = std::max(0.0, result / (1.0 + est.rel_error) - 2.0 * lat.h);
  return est;
}

} // namespace heiscr::subriemannian
