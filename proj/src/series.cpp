#include "discflow/series.hpp"

#include <cmath>

#include "discflow/errors.hpp"
#include "discflow/field_ops.hpp"

namespace discflow {

Series::Series(std::shared_ptr<const Grid1D> grid, int n_modes, int lo, int hi)
    : grid_(std::move(grid)), K_(n_modes), lo_(lo), hi_(hi), c_(std::max(0, hi - lo + 1)) {}

bool Series::has(int p) const { return p >= lo_ && p <= hi_ && !c_[p - lo_].empty(); }

FourierField Series::coefficient(int p) const {
  if (has(p)) return c_[p - lo_];
  return FourierField(grid_, K_);
}

void Series::add(int p, const FourierField& f) {
  if (f.empty() || p > hi_) return;
  if (p < lo_) throw Error(ErrorKind::Precondition, "series power below its lower bound");
  FourierField& slot = c_[p - lo_];
  if (slot.empty())
    slot = f;
  else
    slot += f;
}

Series& Series::operator+=(const Series& o) {
  for (int p = o.lo_; p <= o.hi_; ++p)
    if (o.has(p)) add(p, o.c_[p - o.lo_]);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  Series neg = o;
  neg *= -1.0;
  return *this += neg;
}

Series& Series::operator*=(double c) {
  for (auto& f : c_)
    if (!f.empty()) f *= c;
  return *this;
}

Series Series::d_theta(int order) const {
  Series out(grid_, K_, lo_, hi_);
  for (int p = lo_; p <= hi_; ++p)
    if (has(p)) out.add(p, differentiate(c_[p - lo_], Derivative::Theta, order));
  return out;
}

Series Series::d_zeta(int order) const {
  Series out(grid_, K_, lo_, hi_);
  for (int p = lo_; p <= hi_; ++p)
    if (has(p)) out.add(p, differentiate(c_[p - lo_], Derivative::Native, order));
  return out;
}

Series Series::shift(int j) const {
  Series out(grid_, K_, lo_, hi_);
  for (int p = lo_; p <= hi_; ++p)
    if (has(p) && p + j <= hi_) out.add(p + j, c_[p - lo_]);
  return out;
}

Series Series::times_zeta(int j) const {
  Series out(grid_, K_, lo_, hi_);
  const auto& z = grid_->nodes();
  std::vector<double> w(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) w[i] = std::pow(z[i], j);
  for (int p = lo_; p <= hi_; ++p) {
    if (!has(p)) continue;
    FourierField f = c_[p - lo_];
    f.scale_radial(w);
    out.add(p, f);
  }
  return out;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }
Series operator*(double c, Series a) { return a *= c; }

Series product(const Series& a, const Series& b, const ThetaGrid& tg) {
  const int lo = std::min(a.lo(), b.lo());
  const int hi = std::min(a.hi(), b.hi());
  Series out(a.grid(), a.n_modes(), lo, hi);
  for (int p = a.lo(); p <= a.hi(); ++p) {
    if (!a.has(p)) continue;
    const FourierField fa = a.coefficient(p);
    for (int q = b.lo(); q <= b.hi(); ++q) {
      if (p + q > hi || !b.has(q)) continue;
      if (p + q < lo) throw Error(ErrorKind::Precondition, "series product below the lower bound");
      out.add(p + q, multiply(fa, b.coefficient(q), tg));
    }
  }
  return out;
}

Series layer_r_dr(const Series& s) {
  const Series dz = s.d_zeta();
  return dz.shift(-1) + dz.times_zeta(1);
}

Series layer_inverse_r(const Series& s) {
  Series out = s;
  Series term = s;
  for (int j = 1; j <= s.hi() - s.lo(); ++j) {
    term = (-1.0) * term.times_zeta(1).shift(1);
    out += term;
  }
  return out;
}

FourierField wall_trace(const PowerField& f, std::shared_ptr<const Grid1D> zeta_grid) {
  FourierField out(zeta_grid, f.n_modes());
  for (int k = 0; k <= f.n_modes(); ++k) {
    const double a = f.cos_at(k, 1.0), b = f.sin_at(k, 1.0);
    for (auto& x : out.a(k)) x = a;
    if (k > 0)
      for (auto& x : out.b(k)) x = b;
  }
  return out;
}

Series taylor_at_wall(const PowerField& f, int base, std::shared_ptr<const Grid1D> zeta_grid, int lo,
                      int hi) {
  Series out(zeta_grid, f.n_modes(), lo, hi);
  PowerField d = f;
  double fact = 1.0;
  for (int j = 0; base + j <= hi; ++j) {
    if (j > 0) {
      d = d.d_r();
      fact *= j;
    }
    if (d.is_zero()) break;
    Series one(zeta_grid, f.n_modes(), lo, hi);
    one.add(base + j, (1.0 / fact) * wall_trace(d, zeta_grid));
    out += one.times_zeta(j);
  }
  return out;
}

namespace {

struct Parts {
  Series u, v, u_t, v_t, ru, rv;
};

Series outer_series(const std::vector<const PowerField*>& f, bool r_dr, std::shared_ptr<const Grid1D> g,
                    int K, int lo, int hi) {
  Series out(g, K, lo, hi);
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (!f[m] || static_cast<int>(m) > hi) continue;
    const PowerField src = r_dr ? f[m]->d_r().times_r_power(1) : *f[m];
    out += taylor_at_wall(src, static_cast<int>(m), g, lo, hi);
  }
  return out;
}

Series layer_series(const std::vector<FourierField>& f, std::shared_ptr<const Grid1D> g, int K, int lo,
                    int hi) {
  Series out(g, K, lo, hi);
  for (std::size_t m = 0; m < f.size(); ++m)
    if (!f[m].empty() && static_cast<int>(m) <= hi) out.add(static_cast<int>(m), f[m]);
  return out;
}

int infer_modes(const ExpansionInputs& in) {
  for (const auto* p : in.ue)
    if (p) return p->n_modes();
  for (const auto& f : in.up)
    if (!f.empty()) return f.n_modes();
  throw Error(ErrorKind::Dependency, "expansion has no fields");
}

Parts outer_parts(const ExpansionInputs& in, std::shared_ptr<const Grid1D> g, int K, int lo, int hi) {
  Parts e{outer_series(in.ue, false, g, K, lo, hi), outer_series(in.ve, false, g, K, lo, hi),
          Series(g, K, lo, hi), Series(g, K, lo, hi),
          outer_series(in.ue, true, g, K, lo, hi), outer_series(in.ve, true, g, K, lo, hi)};
  e.u_t = e.u.d_theta();
  e.v_t = e.v.d_theta();
  return e;
}

Parts layer_parts(const ExpansionInputs& in, std::shared_ptr<const Grid1D> g, int K, int lo, int hi) {
  Parts p{layer_series(in.up, g, K, lo, hi), layer_series(in.vp, g, K, lo, hi), Series(g, K, lo, hi),
          Series(g, K, lo, hi), Series(g, K, lo, hi), Series(g, K, lo, hi)};
  p.u_t = p.u.d_theta();
  p.v_t = p.v.d_theta();
  p.ru = layer_r_dr(p.u);
  p.rv = layer_r_dr(p.v);
  return p;
}

Series bilinear_theta(const Parts& a, const Parts& b, const ThetaGrid& tg) {
  return product(a.u, b.u_t, tg) + product(a.v, b.ru, tg) + product(a.u, b.v, tg);
}

Series bilinear_radial(const Parts& a, const Parts& b, const ThetaGrid& tg) {
  return product(a.u, b.v_t, tg) + product(a.v, b.rv, tg) - product(a.u, b.u, tg);
}

// eps^2 times the r-multiplied viscous term acting on layer fields.
Series viscous(const Series& main, const Series& other, double sign) {
  Series out = main.d_zeta(2) + main.d_zeta(2).times_zeta(1).shift(1) + main.d_zeta().shift(1);
  Series lower = main.d_theta(2) + (2.0 * sign) * other.d_theta() - main;
  out += layer_inverse_r(lower).shift(2);
  return out;
}

}  // namespace

FourierField collect_theta(int k, const ExpansionInputs& in, std::shared_ptr<const Grid1D> g,
                           const ThetaGrid& tg) {
  const int K = infer_modes(in);
  // One extra power so that eps^{-1} d_zeta sees the eps^{k+1} terms.
  const int lo = -1, hi = k + 1;
  const Parts e = outer_parts(in, g, K, lo, hi);
  const Parts p = layer_parts(in, g, K, lo, hi);
  Series d = bilinear_theta(e, p, tg) + bilinear_theta(p, e, tg) + bilinear_theta(p, p, tg);
  d += layer_series(in.pp, g, K, lo, hi).d_theta();
  d -= viscous(p.u, p.v, 1.0);
  return d.coefficient(k);
}

FourierField collect_radial(int k, const ExpansionInputs& in, std::shared_ptr<const Grid1D> g,
                            const ThetaGrid& tg) {
  const int K = infer_modes(in);
  // One extra power so that eps^{-1} d_zeta sees the eps^{k+1} terms.
  const int lo = -1, hi = k + 1;
  const Parts e = outer_parts(in, g, K, lo, hi);
  const Parts p = layer_parts(in, g, K, lo, hi);
  Series d = bilinear_radial(e, p, tg) + bilinear_radial(p, e, tg) + bilinear_radial(p, p, tg);
  d += layer_r_dr(layer_series(in.pp, g, K, lo, hi));
  d -= viscous(p.v, p.u, -1.0);
  return d.coefficient(k);
}

}  // namespace discflow
