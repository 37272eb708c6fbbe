#include "llg/spacetime/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>

#include "llg/core/operators.hpp"
#include "llg/core/transform.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::spacetime {
namespace {

constexpr const char* kX01Caveat =
    "windowed periodized discrete norm; no quotient by free Schroedinger solutions";

int signed_index(int m, int M) { return m <= (M - 1) / 2 ? m : m - M; }

/// Unitary space-time transform in place, sign -1 forward, +1 inverse.
void transform(const Grid& g, int M, double dt, std::vector<cplx>& data, int sign) {
  const std::size_t n = g.point_count();
  for (int i = 0; i < M; ++i) detail::fft_inplace(g, data.data() + i * n, sign);
  detail::fft_columns_inplace(M, n, data.data(), sign);
  const double T = M * dt;
  const double scale = sign < 0 ? std::sqrt(g.volume()) / n * std::sqrt(T) / M
                                : 1.0 / std::sqrt(g.volume()) / std::sqrt(T);
  simd::kernels().scale(data.data(), scale, data.size());
}

/// Zero everything outside the space 2/3 band and the time band 3|m| < M.
void band_limit(const Grid& g, int M, std::vector<cplx>& coeffs) {
  const auto mask = g.dealias_mask();
  const std::size_t n = g.point_count();
  for (int m = 0; m < M; ++m) {
    cplx* row = coeffs.data() + m * n;
    if (3 * std::abs(signed_index(m, M)) >= M) {
      std::fill(row, row + n, cplx{});
      continue;
    }
    simd::kernels().mul_real(row, mask.data(), n);
  }
}

std::vector<cplx> apply_modulation_symbol(const SpaceTimeField& F, const std::function<double(double)>& symbol) {
  std::vector<cplx> c = F.coeffs();
  const auto mod = modulation_table(F);
  for (std::size_t p = 0; p < c.size(); ++p) c[p] *= symbol(mod[p]);
  return c;
}

double sum_abs2(const std::vector<cplx>& c) { return simd::kernels().sum_abs2(c.data(), c.size()); }

/// L f = (i d_t + Lap) f from coefficients: multiplier -(tau + |xi|^2).
std::vector<cplx> schroedinger_operator(const SpaceTimeField& F) {
  return apply_modulation_symbol(F, [](double m) { return -m; });
}

std::vector<cplx> to_samples(const SpaceTimeField& F, std::vector<cplx> coeffs) {
  transform(F.grid(), F.time_samples(), F.dt(), coeffs, +1);
  return coeffs;
}

/// Spatial derivative along `axis` of every time slice, from coefficients.
std::vector<cplx> space_derivative(const SpaceTimeField& F, const std::vector<cplx>& coeffs, int axis) {
  const Grid& g = F.grid();
  const std::size_t n = g.point_count();
  std::vector<cplx> out(coeffs.size());
  for (int m = 0; m < F.time_samples(); ++m) {
    SpectralField S(g, aligned_vector<cplx>(coeffs.begin() + m * n, coeffs.begin() + (m + 1) * n));
    S = spectral_derivative(std::move(S), axis);
    std::copy(S.coeffs().begin(), S.coeffs().end(), out.begin() + m * n);
  }
  return to_samples(F, std::move(out));
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

double time_window(double t, double T) {
  const double ramp = kWindowRamp * T;
  if (t <= 0.0 || t >= T) return 0.0;
  if (t < ramp) return lp::smoothstep(t / ramp);
  if (t > T - ramp) return lp::smoothstep((T - t) / ramp);
  return 1.0;
}

double time_window_derivative(double t, double T) {
  const double ramp = kWindowRamp * T;
  auto dstep = [](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
    const double da = a / (x * x), db = -b / ((1.0 - x) * (1.0 - x));
    return (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
  };
  if (t <= 0.0 || t >= T) return 0.0;
  if (t < ramp) return dstep(t / ramp) / ramp;
  if (t > T - ramp) return -dstep((T - t) / ramp) / ramp;
  return 0.0;
}

SpaceTimeField SpaceTimeField::from_trajectory(const Trajectory& traj, bool windowed) {
  if (traj.size() < 3) throw DomainError("space-time analysis needs at least three samples");
  const double dt = traj.sample_interval();
  const int M = static_cast<int>(traj.size()) - 1;
  SpaceTimeField F(traj.grid(), M, dt);
  F.windowed_ = windowed;
  const std::size_t n = F.grid_.point_count();
  F.samples_.resize(M * n);
  const double T = F.period();
  for (int i = 0; i < M; ++i) {
    traj.snapshots[i].check_same(traj.snapshots.front());
    const double w = windowed ? time_window(i * dt, T) : 1.0;
    for (std::size_t p = 0; p < n; ++p) F.samples_[i * n + p] = w * traj.snapshots[i][p];
  }
  const double wend = windowed ? time_window(T, T) : 1.0;
  for (std::size_t p = 0; p < n; ++p)
    F.jump_ = std::max(F.jump_, std::abs(wend * traj.snapshots[M][p] - F.samples_[p]));
  return F;
}

SpaceTimeField SpaceTimeField::sample(const Grid& grid, int M, double dt,
                                      const std::function<cplx(double, double, double, double)>& f) {
  if (M < 3 || !(dt > 0.0)) throw DomainError("need M >= 3 samples and dt > 0");
  SpaceTimeField F(grid, M, dt);
  const std::size_t n = grid.point_count();
  F.samples_.resize(M * n);
  for (int i = 0; i < M; ++i) {
    std::size_t p = 0;
    for (int i0 = 0; i0 < grid.size(0); ++i0)
      for (int i1 = 0; i1 < grid.size(1); ++i1)
        for (int i2 = 0; i2 < grid.size(2); ++i2, ++p)
          F.samples_[i * n + p] =
              f(grid.coordinate(0, i0), grid.coordinate(1, i1), grid.coordinate(2, i2), i * dt);
  }
  return F;
}

double SpaceTimeField::tau(int m) const noexcept {
  return 2 * std::numbers::pi * signed_index(m, M_) / period();
}

void SpaceTimeField::compute_coeffs() const {
  coeffs_ = samples_;
  transform(grid_, M_, dt_, coeffs_, -1);
  have_coeffs_ = true;
}

const std::vector<cplx>& SpaceTimeField::coeffs() const {
  if (!have_coeffs_) compute_coeffs();
  return coeffs_;
}

SpaceTimeField SpaceTimeField::with_coeffs(std::vector<cplx> coeffs) const {
  if (coeffs.size() != samples_.size()) throw SizeMismatchError("space-time coefficient count mismatch");
  SpaceTimeField F(grid_, M_, dt_);
  F.windowed_ = windowed_;
  F.samples_ = coeffs;
  transform(grid_, M_, dt_, F.samples_, +1);
  F.coeffs_ = std::move(coeffs);
  F.have_coeffs_ = true;
  return F;
}

SpaceTimeField SpaceTimeField::with_samples(std::vector<cplx> samples) const {
  if (samples.size() != samples_.size()) throw SizeMismatchError("space-time sample count mismatch");
  SpaceTimeField F(grid_, M_, dt_);
  F.windowed_ = windowed_;
  F.samples_ = std::move(samples);
  return F;
}

double SpaceTimeField::l2_norm() const {
  return std::sqrt(simd::kernels().sum_abs2(samples_.data(), samples_.size()) * grid_.cell_volume() * dt_);
}

std::vector<double> modulation_table(const SpaceTimeField& F) {
  const auto xi2 = F.grid().xi_squared();
  const std::size_t n = xi2.size();
  std::vector<double> out(n * F.time_samples());
  for (int m = 0; m < F.time_samples(); ++m) {
    const double t = F.tau(m);
    for (std::size_t p = 0; p < n; ++p) out[m * n + p] = t + xi2[p];
  }
  return out;
}

lp::ShellRange modulation_range(const SpaceTimeField& F) {
  const auto mod = modulation_table(F);
  double hi = 0.0;
  for (double v : mod) hi = std::max(hi, std::abs(v));
  const double lo = 2 * std::numbers::pi / F.period();
  const int j_min = static_cast<int>(std::floor(std::log2(1.25 * lo)));
  const int j_max = std::max(j_min, static_cast<int>(std::ceil(std::log2(std::max(hi, lo) / 1.25))));
  return {j_min, j_max};
}

SpaceTimeField modulation_project(const SpaceTimeField& F, int j) {
  return F.with_coeffs(apply_modulation_symbol(F, [j](double m) { return lp::chi(j, std::abs(m)); }));
}

SpaceTimeField modulation_project_below(const SpaceTimeField& F, int j) {
  return F.with_coeffs(apply_modulation_symbol(F, [j](double m) { return lp::chi_below(j, std::abs(m)); }));
}

double modulation_mass_fraction(const SpaceTimeField& F, int j) {
  const double total = sum_abs2(F.coeffs());
  if (total == 0.0) return 0.0;
  return sum_abs2(apply_modulation_symbol(F, [j](double m) { return lp::chi(j, std::abs(m)); })) / total;
}

double modulation_mass_below(const SpaceTimeField& F, int j) {
  const double total = sum_abs2(F.coeffs());
  if (total == 0.0) return 1.0;
  return sum_abs2(apply_modulation_symbol(F, [j](double m) { return lp::chi_below(j, std::abs(m)); })) / total;
}

X01Report x01_norm(const SpaceTimeField& F) {
  X01Report r;
  r.caveat = kX01Caveat;
  r.spectral = std::sqrt(sum_abs2(schroedinger_operator(F)));

  // Physical route: i d_t f by a per-point DFT in time, Lap f slice by slice.
  const Grid& g = F.grid();
  const int M = F.time_samples();
  const std::size_t n = g.point_count();
  std::vector<cplx> dt(F.samples().begin(), F.samples().end());
  detail::fft_columns_inplace(M, n, dt.data(), -1);
  for (int m = 0; m < M; ++m) {
    // i * (i tau) / M  (the 1/M completes the unnormalized round trip)
    const double factor = -F.tau(m) / M;
    simd::kernels().scale(dt.data() + m * n, factor, n);
  }
  detail::fft_columns_inplace(M, n, dt.data(), +1);
  double sum = 0.0;
  for (int i = 0; i < M; ++i) {
    ComplexField slice(g, aligned_vector<cplx>(F.samples().begin() + i * n, F.samples().begin() + (i + 1) * n));
    const ComplexField lap = laplacian(slice);
    for (std::size_t p = 0; p < n; ++p) sum += std::norm(dt[i * n + p] + lap[p]);
  }
  r.physical = std::sqrt(sum * g.cell_volume() * F.dt());
  const double scale = std::max(r.spectral, r.physical);
  r.relative_gap = scale > 0.0 ? std::abs(r.spectral - r.physical) / scale : 0.0;
  return r;
}

double null_identity_residual(const SpaceTimeField& u_in, const SpaceTimeField& v_in) {
  if (u_in.grid() != v_in.grid() || u_in.time_samples() != v_in.time_samples() ||
      std::abs(u_in.dt() - v_in.dt()) > 1e-15 * u_in.dt())
    throw SizeMismatchError("null identity needs fields on the same space-time lattice");
  const Grid& g = u_in.grid();
  const int M = u_in.time_samples();
  const std::size_t total = g.point_count() * M;

  std::vector<cplx> cu = u_in.coeffs(), cv = v_in.coeffs();
  band_limit(g, M, cu);
  band_limit(g, M, cv);
  const SpaceTimeField u = u_in.with_coeffs(cu), v = v_in.with_coeffs(cv);

  const std::vector<cplx> Lu = to_samples(u, schroedinger_operator(u));
  const std::vector<cplx> Lv = to_samples(v, schroedinger_operator(v));
  std::vector<cplx> uv(total);
  for (std::size_t p = 0; p < total; ++p) uv[p] = u.samples()[p] * v.samples()[p];
  const SpaceTimeField prod = u.with_samples(uv);
  const std::vector<cplx> Luv = to_samples(prod, schroedinger_operator(prod));

  std::vector<cplx> residual(total);
  for (std::size_t p = 0; p < total; ++p)
    residual[p] = -(Lu[p] * v.samples()[p] + u.samples()[p] * Lv[p] - Luv[p]);
  for (int j = 0; j < g.dim(); ++j) {
    const auto du = space_derivative(u, u.coeffs(), j);
    const auto dv = space_derivative(v, v.coeffs(), j);
    for (std::size_t p = 0; p < total; ++p) residual[p] -= 2.0 * du[p] * dv[p];
  }
  transform(g, M, u.dt(), residual, -1);
  band_limit(g, M, residual);
  transform(g, M, u.dt(), residual, +1);
  double worst = 0.0;
  for (const cplx& r : residual) worst = std::max(worst, std::abs(r));
  return worst;
}

double resonance(const Wavevector& a, const Wavevector& b) {
  double na = 0, nb = 0, ns = 0;
  for (int j = 0; j < 3; ++j) {
    na += a[j] * a[j];
    nb += b[j] * b[j];
    ns += (a[j] + b[j]) * (a[j] + b[j]);
  }
  return na + nb - ns;
}

StrichartzReport strichartz_norm(const Trajectory& traj) {
  if (traj.size() < 2) throw DomainError("Strichartz norm needs at least two samples");
  const double dt = traj.sample_interval();
  const int n = traj.grid().dim();
  StrichartzReport r;
  bool sup_space = false;
  if (n == 3) {
    r.space_exponent = 6.0;
  } else {
    r.flagged = true;
    sup_space = true;
    r.space_exponent = std::numeric_limits<double>::infinity();
    r.note = n == 2 ? "n = 2: exponent 2n/(n-2) is infinite; L^inf in space used"
                    : "n = 1: exponent 2n/(n-2) is negative; L^inf in space used";
  }
  const double dV = traj.grid().cell_volume();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const ComplexField& u = traj.snapshots[i];
    double inner;
    if (sup_space) {
      inner = sup_norm(u);
    } else {
      double s6 = 0.0;
      for (const cplx& v : u.values()) {
        const double a2 = std::norm(v);
        s6 += a2 * a2 * a2;
      }
      inner = std::cbrt(std::sqrt(s6 * dV));
    }
    sum += inner * inner * dt;
  }
  r.value = std::sqrt(sum);
  return r;
}

std::string trajectory_key(const Trajectory& traj) {
  std::string text;
  char buf[128];
  for (double t : traj.times) {
    std::snprintf(buf, sizeof buf, "%.17g,", t);
    text += buf;
  }
  std::snprintf(buf, sizeof buf, "|%.17g|%.17g|%.17g|", traj.meta.params.a, traj.meta.params.epsilon, traj.meta.dt);
  text += buf;
  text += traj.meta.integrator + "|" + traj.meta.datum + "|" + (traj.empty() ? "" : traj.grid().describe());
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

}  // namespace llg::spacetime
