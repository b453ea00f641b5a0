#include "prh/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "prh/reductions.hpp"

namespace prh {

namespace {

// One cached pair of c2c plans per grid size. FFTW_ESTIMATE keeps the
// chosen algorithm (and hence rounding) independent of timing, so results
// are bit-reproducible across runs.
struct FftContext {
  int n;
  std::vector<std::complex<double>> buf;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::mutex use;

  explicit FftContext(int n_) : n(n_), buf(static_cast<std::size_t>(n_) * n_ * n_) {
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftContext() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
};

FftContext& context_for(int n) {
  static std::mutex registry_mutex;
  static std::map<int, std::unique_ptr<FftContext>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[n];
  if (!slot) slot = std::make_unique<FftContext>(n);
  return *slot;
}

}  // namespace

namespace detail {

void dft_forward(const Field& u, std::vector<std::complex<double>>& out) {
  auto& ctx = context_for(u.grid.n);
  std::lock_guard lock(ctx.use);
  for (std::size_t i = 0; i < u.values.size(); ++i) ctx.buf[i] = u.values[i];
  fftw_execute(ctx.fwd);
  out.assign(ctx.buf.begin(), ctx.buf.end());
}

void dft_inverse(const Grid& g, std::vector<std::complex<double>>& work,
                 Field& out) {
  auto& ctx = context_for(g.n);
  std::lock_guard lock(ctx.use);
  std::copy(work.begin(), work.end(), ctx.buf.begin());
  fftw_execute(ctx.bwd);
  out.grid = g;
  out.values.resize(g.size());
  const double inv = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = ctx.buf[i].real() * inv;
  }
}

}  // namespace detail

SpectralField forward_transform(const Field& u) {
  SpectralField s;
  s.grid = u.grid;
  detail::dft_forward(u, s.coeffs);
  // Quadrature normalization h^3 and the phase from the -L box origin:
  // exp(-i xi(m) x_j) = (-1)^{jx+jy+jz} exp(-2 pi i m.j / n) with j the
  // signed frequency index, so each coefficient picks up (-1)^(sum j).
  const int n = u.grid.n;
  const double h = u.grid.spacing();
  const double h3 = h * h * h;
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    const int ja = u.grid.freq_index(a);
    for (int b = 0; b < n; ++b) {
      const int jb = u.grid.freq_index(b);
      for (int c = 0; c < n; ++c, ++idx) {
        const int jc = u.grid.freq_index(c);
        const double sign = ((ja + jb + jc) & 1) ? -h3 : h3;
        s.coeffs[idx] *= sign;
      }
    }
  }
  return s;
}

Field inverse_transform(const SpectralField& s) {
  const int n = s.grid.n;
  const double h = s.grid.spacing();
  const double inv_h3 = 1.0 / (h * h * h);
  std::vector<std::complex<double>> work(s.coeffs.size());
  std::size_t idx = 0;
  for (int a = 0; a < n; ++a) {
    const int ja = s.grid.freq_index(a);
    for (int b = 0; b < n; ++b) {
      const int jb = s.grid.freq_index(b);
      for (int c = 0; c < n; ++c, ++idx) {
        const int jc = s.grid.freq_index(c);
        const double sign = ((ja + jb + jc) & 1) ? -inv_h3 : inv_h3;
        work[idx] = s.coeffs[idx] * sign;
      }
    }
  }
  Field out;
  detail::dft_inverse(s.grid, work, out);
  return out;
}

double spectral_mass(const SpectralField& s) {
  const double box = 2.0 * s.grid.L;
  const double w = 1.0 / (box * box * box);
  return w * pairwise_sum(std::size_t{0}, s.coeffs.size(), [&](std::size_t i) {
           return std::norm(s.coeffs[i]);
         });
}

}  // namespace prh
