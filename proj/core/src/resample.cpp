#include "prh/resample.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "prh/fft.hpp"

namespace prh {

namespace {

// Evaluation matrix E[m * nt + t] = exp(i xi(m) (x_t + L)); the Nyquist
// bin uses the cosine so real data interpolates to real values.
std::vector<std::complex<double>> eval_matrix(const Grid& g,
                                              const std::vector<double>& xs) {
  const int n = g.n;
  const std::size_t nt = xs.size();
  std::vector<std::complex<double>> E(static_cast<std::size_t>(n) * nt);
  for (int m = 0; m < n; ++m) {
    const double xi = g.freq(m);
    const bool nyquist = g.freq_index(m) == -n / 2;
    for (std::size_t t = 0; t < nt; ++t) {
      const double phase = xi * (xs[t] + g.L);
      E[m * nt + t] = nyquist
                          ? std::complex<double>(std::cos(phase), 0.0)
                          : std::complex<double>(std::cos(phase),
                                                 std::sin(phase));
    }
  }
  return E;
}

}  // namespace

std::vector<double> spectral_resample(const Field& u,
                                      const std::vector<double>& xs,
                                      const std::vector<double>& ys,
                                      const std::vector<double>& zs) {
  const Grid& g = u.grid;
  const int n = g.n;
  const std::size_t nx = xs.size(), ny = ys.size(), nz = zs.size();

  std::vector<std::complex<double>> coeff;
  detail::dft_forward(u, coeff);

  const auto Ex = eval_matrix(g, xs);
  const auto Ey = eval_matrix(g, ys);
  const auto Ez = eval_matrix(g, zs);

  // contract z: A[ma][mb][tz]
  std::vector<std::complex<double>> A(static_cast<std::size_t>(n) * n * nz);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::complex<double>* row =
          &coeff[(static_cast<std::size_t>(a) * n + b) * n];
      std::complex<double>* out = &A[(static_cast<std::size_t>(a) * n + b) * nz];
      for (std::size_t t = 0; t < nz; ++t) out[t] = 0;
      for (int m = 0; m < n; ++m) {
        const std::complex<double> c = row[m];
        const std::complex<double>* e = &Ez[m * nz];
        for (std::size_t t = 0; t < nz; ++t) out[t] += c * e[t];
      }
    }
  }
  // contract y: B[ma][ty][tz]
  std::vector<std::complex<double>> B(static_cast<std::size_t>(n) * ny * nz);
  for (int a = 0; a < n; ++a) {
    for (std::size_t ty = 0; ty < ny; ++ty) {
      std::complex<double>* out =
          &B[(static_cast<std::size_t>(a) * ny + ty) * nz];
      for (std::size_t t = 0; t < nz; ++t) out[t] = 0;
      for (int m = 0; m < n; ++m) {
        const std::complex<double> e = Ey[m * ny + ty];
        const std::complex<double>* in =
            &A[(static_cast<std::size_t>(a) * n + m) * nz];
        for (std::size_t t = 0; t < nz; ++t) out[t] += e * in[t];
      }
    }
  }
  // contract x and take the real part
  std::vector<double> out(nx * ny * nz, 0.0);
  const double inv_n3 = 1.0 / static_cast<double>(g.size());
  for (std::size_t tx = 0; tx < nx; ++tx) {
    for (std::size_t ty = 0; ty < ny; ++ty) {
      double* dst = &out[(tx * ny + ty) * nz];
      for (int m = 0; m < n; ++m) {
        const std::complex<double> e = Ex[m * nx + tx];
        const std::complex<double>* in =
            &B[(static_cast<std::size_t>(m) * ny + ty) * nz];
        for (std::size_t t = 0; t < nz; ++t) {
          dst[t] += (e * in[t]).real();
        }
      }
      for (std::size_t t = 0; t < nz; ++t) dst[t] *= inv_n3;
    }
  }
  return out;
}

std::vector<double> spectral_ray(const Field& u, const Vec3& x0,
                                 const Vec3& dir,
                                 const std::vector<double>& ts) {
  int axis = -1;
  for (int d = 0; d < 3; ++d) {
    if (dir[d] != 0) {
      if (axis != -1) {
        throw std::invalid_argument("spectral_ray: dir must be axis-aligned");
      }
      axis = d;
    }
  }
  if (axis == -1) throw std::invalid_argument("spectral_ray: zero direction");

  std::vector<double> moving(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    moving[i] = x0[axis] + dir[axis] * ts[i];
  }
  std::vector<double> ax[3] = {{x0[0]}, {x0[1]}, {x0[2]}};
  ax[axis] = std::move(moving);
  return spectral_resample(u, ax[0], ax[1], ax[2]);
}

}  // namespace prh
