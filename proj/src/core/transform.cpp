#include "llg/core/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "llg/simd/kernels.hpp"

namespace llg {
namespace detail {
namespace {

// FFTW's planner is not re-entrant; execution of an existing plan on new
// arrays is. Plans are created once per shape under the mutex and live for
// the rest of the process. FFTW_ESTIMATE keeps plan choice (and therefore
// results) independent of timing.
using PlanKey = std::tuple<int, int, int, int, std::size_t, int>;  // rank-ish, n0, n1, n2, batch, sign

struct PlanCache {
  std::mutex mutex;
  std::map<PlanKey, fftw_plan> plans;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_plan make_plan(const PlanKey& key) {
  const auto [kind, n0, n1, n2, batch, sign] = key;
  if (kind == 0) {
    const int dims[3] = {n0, n1, n2};
    int rank = 0;
    int n[3];
    for (int d : dims)
      if (d > 1) n[rank++] = d;
    const std::size_t total = static_cast<std::size_t>(n0) * n1 * n2;
    auto* buf = fftw_alloc_complex(total);
    fftw_plan p = fftw_plan_dft(rank, n, buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    return p;
  }
  const int n[1] = {n0};
  auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n0) * batch);
  fftw_plan p = fftw_plan_many_dft(1, n, static_cast<int>(batch), buf, nullptr,
                                   static_cast<int>(batch), 1, buf, nullptr,
                                   static_cast<int>(batch), 1, sign, FFTW_ESTIMATE);
  fftw_free(buf);
  return p;
}

fftw_plan plan_for(const PlanKey& key) {
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  auto it = c.plans.find(key);
  if (it != c.plans.end()) return it->second;
  fftw_plan p = make_plan(key);
  if (!p) throw Error("FFTW failed to create a plan");
  c.plans.emplace(key, p);
  return p;
}

}  // namespace

void fft_inplace(const Grid& grid, cplx* data, int sign) {
  const PlanKey key{0, grid.size(0), grid.size(1), grid.size(2), 1, sign};
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_for(key), p, p);
}

void fft_columns_inplace(int length, std::size_t batch, cplx* data, int sign) {
  const PlanKey key{1, length, 1, 1, batch, sign};
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan_for(key), p, p);
}

}  // namespace detail

SpectralField transform_forward(const ComplexField& f) {
  const Grid& g = f.grid();
  aligned_vector<cplx> c(f.values().begin(), f.values().end());
  detail::fft_inplace(g, c.data(), FFTW_FORWARD);
  simd::kernels().scale(c.data(), std::sqrt(g.volume()) / static_cast<double>(g.point_count()),
                        c.size());
  return SpectralField(g, std::move(c));
}

SpectralField transform_forward(const RealField& f) { return transform_forward(to_complex(f)); }

ComplexField transform_inverse(const SpectralField& F) {
  const Grid& g = F.grid();
  aligned_vector<cplx> v(F.coeffs().begin(), F.coeffs().end());
  detail::fft_inplace(g, v.data(), FFTW_BACKWARD);
  simd::kernels().scale(v.data(), 1.0 / std::sqrt(g.volume()), v.size());
  return ComplexField(g, std::move(v));
}

RealField transform_inverse_real(const SpectralField& F) { return real_part(transform_inverse(F)); }

}  // namespace llg
