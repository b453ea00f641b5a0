#include "prh/coulomb.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace prh {

namespace {

// 4-point Gauss-Legendre on [0, 1].
constexpr double kGlNode[4] = {0.06943184420297371, 0.33000947820757187,
                               0.66999052179242813, 0.93056815579702629};
constexpr double kGlWeight[4] = {0.17392742256872693, 0.32607257743127307,
                                 0.32607257743127307, 0.17392742256872693};

double gl_box(double x0, double y0, double z0, double s) {
  // integral of 1/|y| over [x0,x0+s] x [y0,y0+s] x [z0,z0+s]
  double acc = 0;
  for (int i = 0; i < 4; ++i) {
    const double x = x0 + s * kGlNode[i];
    for (int j = 0; j < 4; ++j) {
      const double y = y0 + s * kGlNode[j];
      const double xy2 = x * x + y * y;
      for (int k = 0; k < 4; ++k) {
        const double z = z0 + s * kGlNode[k];
        acc += kGlWeight[i] * kGlWeight[j] * kGlWeight[k] /
               std::sqrt(xy2 + z * z);
      }
    }
  }
  return acc * s * s * s;
}

double adaptive_box(double x0, double y0, double z0, double s, double coarse,
                    int depth) {
  double fine = 0;
  const double hs = 0.5 * s;
  double children[8];
  int c = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k, ++c) {
        children[c] = gl_box(x0 + i * hs, y0 + j * hs, z0 + k * hs, hs);
        fine += children[c];
      }
    }
  }
  if (depth > 48 || std::abs(fine - coarse) <= 1e-13 + 1e-12 * std::abs(fine)) {
    return fine;
  }
  double acc = 0;
  c = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k, ++c) {
        acc += adaptive_box(x0 + i * hs, y0 + j * hs, z0 + k * hs, hs,
                            children[c], depth + 1);
      }
    }
  }
  return acc;
}

// Free-space convolution machinery on the zero-padded doubled grid. The
// kernel transform depends only on n after pulling out one factor of the
// spacing (1/|d h| = (1/h)(1/|d|)), so one context per n serves every box
// size.
struct ConvContext {
  int n;
  int np;  // 2n
  std::vector<double> real_buf;
  std::vector<std::complex<double>> cplx_buf;
  std::vector<std::complex<double>> kernel_hat;  // unit-spacing kernel
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  bool warned = false;
  std::mutex use;

  explicit ConvContext(int n_) : n(n_), np(2 * n_) {
    const std::size_t real_size = static_cast<std::size_t>(np) * np * np;
    const std::size_t cplx_size =
        static_cast<std::size_t>(np) * np * (np / 2 + 1);
    real_buf.resize(real_size);
    cplx_buf.resize(cplx_size);
    auto* rp = real_buf.data();
    auto* cp = reinterpret_cast<fftw_complex*>(cplx_buf.data());
    r2c = fftw_plan_dft_r2c_3d(np, np, np, rp, cp, FFTW_ESTIMATE);
    c2r = fftw_plan_dft_c2r_3d(np, np, np, cp, rp, FFTW_ESTIMATE);

    const double k0 = coulomb_cell_constant();
    std::size_t idx = 0;
    for (int i = 0; i < np; ++i) {
      const double di = i <= n ? i : i - np;
      for (int j = 0; j < np; ++j) {
        const double dj = j <= n ? j : j - np;
        const double dij2 = di * di + dj * dj;
        for (int k = 0; k < np; ++k, ++idx) {
          const double dk = k <= n ? k : k - np;
          const double d2 = dij2 + dk * dk;
          real_buf[idx] = d2 == 0 ? k0 : 1.0 / std::sqrt(d2);
        }
      }
    }
    fftw_execute(r2c);
    kernel_hat = cplx_buf;
  }
  ~ConvContext() {
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r);
  }
};

ConvContext& conv_context_for(int n) {
  static std::mutex registry_mutex;
  static std::map<int, std::unique_ptr<ConvContext>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[n];
  if (!slot) slot = std::make_unique<ConvContext>(n);
  return *slot;
}

}  // namespace

double coulomb_cell_constant() {
  static const double value = [] {
    // 8 * integral over the positive octant of the unit cell
    const double octant = adaptive_box(0, 0, 0, 0.5, gl_box(0, 0, 0, 0.5), 0);
    return 8.0 * octant;
  }();
  return value;
}

Field coulomb_convolve(const Field& f) {
  const int n = f.grid.n;
  const double h = f.grid.spacing();
  auto& ctx = conv_context_for(n);
  std::lock_guard lock(ctx.use);

  if (!ctx.warned) {
    const double ratio = boundary_contamination(f);
    if (ratio > 1e-8) {
      std::fprintf(stderr,
                   "[prh] warning: coulomb_convolve input has boundary "
                   "amplitude %.2e of max (threshold 1e-8); box may be too "
                   "small (n=%d, L=%g)\n",
                   ratio, n, f.grid.L);
      ctx.warned = true;
    }
  }

  const int np = ctx.np;
  std::fill(ctx.real_buf.begin(), ctx.real_buf.end(), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double* src = &f.values[f.grid.index(i, j, 0)];
      double* dst =
          &ctx.real_buf[(static_cast<std::size_t>(i) * np + j) * np];
      std::copy(src, src + n, dst);
    }
  }
  fftw_execute(ctx.r2c);
  // quadrature weight h^3, kernel scale 1/h, inverse-transform scale 1/np^3
  const double scale =
      h * h / (static_cast<double>(np) * np * np);
  for (std::size_t i = 0; i < ctx.cplx_buf.size(); ++i) {
    ctx.cplx_buf[i] *= ctx.kernel_hat[i] * scale;
  }
  fftw_execute(ctx.c2r);

  Field g(f.grid);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double* src =
          &ctx.real_buf[(static_cast<std::size_t>(i) * np + j) * np];
      double* dst = &g.values[g.grid.index(i, j, 0)];
      std::copy(src, src + n, dst);
    }
  }
  return g;
}

}  // namespace prh
