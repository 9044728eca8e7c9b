#include "elascat/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace elascat {

namespace {

std::atomic<int> g_default_threads{0};

double log4sin2(double t, double tau) {
  const double s = std::sin(0.5 * (t - tau));
  return std::log(4.0 * s * s);
}

}  // namespace

void set_default_threads(int threads) { g_default_threads.store(threads); }

int default_threads() {
  const int t = g_default_threads.load();
  if (t > 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_rows(int rows, int threads, const std::function<void(int)>& body) {
  int workers = threads > 0 ? threads : default_threads();
  workers = std::min(workers, rows);
  if (workers <= 1) {
    for (int k = 0; k < rows; ++k) body(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int k = next.fetch_add(1);
        if (k >= rows) return;
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

LogWeights log_weights(int n) {
  if (n < 2) throw ConfigError("log_weights: need n >= 2");
  const int N = 2 * n;
  LogWeights w{n, std::vector<double>(static_cast<std::size_t>(N) * N)};
  // depends only on (k - j) mod 2n
  std::vector<double> row(N);
  for (int d = 0; d < N; ++d) {
    const double u = d * kPi / n;
    double acc = 0.0;
    for (int m = 1; m < n; ++m) acc += std::cos(m * u) / m;
    row[d] = -(2.0 * kPi / n) * acc - (kPi / (n * static_cast<double>(n))) * std::cos(n * u);
  }
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) w.r[k * N + j] = row[(k - j + N) % N];
  return w;
}

HilbertWeights hilbert_weights(int n) {
  if (n < 2) throw ConfigError("hilbert_weights: need n >= 2");
  const int N = 2 * n;
  HilbertWeights w{n, std::vector<double>(static_cast<std::size_t>(N) * N)};
  std::vector<double> row(N);
  for (int d = 0; d < N; ++d) {
    const double u = d * kPi / n;  // t_k - t_j
    double acc = 0.0;
    for (int m = 1; m < n; ++m) acc += std::sin(m * u);
    row[d] = -(2.0 * kPi / n) * acc;  // the degree-n term vanishes on the grid
  }
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) w.h[k * N + j] = row[(k - j + N) % N];
  return w;
}

std::vector<double> trig_diff_matrix(int n) {
  const int N = 2 * n;
  std::vector<double> d(static_cast<std::size_t>(N) * N, 0.0);
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < N; ++j) {
      if (j == k) continue;
      const double u = (k - j) * kPi / n;
      const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
      d[k * N + j] = 0.5 * sign / std::tan(0.5 * u);
    }
  return d;
}

namespace {

void write_block(CMatrix& m, int k, int j, const Mat2c& b) {
  m(2 * k, 2 * j) = b.a11;
  m(2 * k, 2 * j + 1) = b.a12;
  m(2 * k + 1, 2 * j) = b.a21;
  m(2 * k + 1, 2 * j + 1) = b.a22;
}

// Near-diagonal scan guarding against a misdeclared singularity class: after
// subtracting the declared singular parts the remainder must flatten toward
// the diagonal.  Equal-sized steps per decade signal a leftover log part, a
// blow-up signals a leftover Cauchy part.
void check_singularity_class(const SplitKernel& kernel, const CollocationGrid& grid) {
  const double t0 = grid.nodes[1];
  auto remainder = [&](double u) {
    Mat2c m = kernel.full(t0, t0 + u);
    if (kernel.k1)
      m = m - std::log(4.0 * std::pow(std::sin(0.5 * u), 2)) * kernel.k1(t0, t0 + u);
    if (kernel.cauchy) m = m - (1.0 / std::tan(0.5 * u)) * kernel.cauchy(t0, t0 + u);
    return m;
  };
  const Mat2c g2 = remainder(1e-2), g3 = remainder(1e-3), g4 = remainder(1e-4);
  const double scale = max_abs(g2) + 1e-12;
  if (max_abs(g4) > 200.0 * scale)
    throw NumericalError("split_and_assemble: kernel remainder blows up near the "
                         "diagonal; declared singularity class looks wrong");
  const double step1 = max_abs(g2 - g3), step2 = max_abs(g3 - g4);
  if (step1 > 1e-8 * scale && step2 > 0.5 * step1)
    throw NumericalError("split_and_assemble: kernel remainder keeps logarithmic "
                         "steps near the diagonal; declared singularity class looks "
                         "wrong");
}

}  // namespace

DiscreteOperator split_and_assemble(const SplitKernel& kernel, const CollocationGrid& grid,
                                    std::string label, int threads) {
  const int n = grid.n;
  const int N = 2 * n;
  DiscreteOperator op{n, CMatrix(2 * N, 2 * N), std::move(label)};
  const double trap = kPi / n;
  check_singularity_class(kernel, grid);

  if (kernel.sing == Singularity::Smooth) {
    parallel_rows(N, threads, [&](int k) {
      for (int j = 0; j < N; ++j)
        write_block(op.mat, k, j, trap * kernel.full(grid.nodes[k], grid.nodes[j]));
    });
    return op;
  }
  const LogWeights lw = log_weights(n);
  const bool cauchy = kernel.sing == Singularity::LogCauchy;
  const HilbertWeights hw = hilbert_weights(n);

  parallel_rows(N, threads, [&](int k) {
    const double tk = grid.nodes[k];
    for (int j = 0; j < N; ++j) {
      const double tj = grid.nodes[j];
      Mat2c block;
      if (j == k) {
        block = lw(k, k) * kernel.k1(tk, tk) + trap * kernel.b_diag(tk);
      } else {
        const Mat2c k1 = kernel.k1(tk, tj);
        Mat2c rem = kernel.full(tk, tj) - log4sin2(tk, tj) * k1;
        block = lw(k, j) * k1;
        if (cauchy) {
          const Mat2c c = kernel.cauchy(tk, tj);
          rem = rem - (1.0 / std::tan(0.5 * (tj - tk))) * c;
          block = block + hw(k, j) * c;
        }
        block = block + trap * rem;
      }
      write_block(op.mat, k, j, block);
    }
  });
  return op;
}

DiscreteOperator assemble_smooth(const std::function<Mat2c(double, double)>& kernel,
                                 const CollocationGrid& grid, std::string label,
                                 int threads) {
  SplitKernel k;
  k.sing = Singularity::Smooth;
  k.full = kernel;
  return split_and_assemble(k, grid, std::move(label), threads);
}

DiscreteOperator assemble_static_hyper(const ElasticMedium& medium,
                                       const BoundaryCurve& curve,
                                       const CollocationGrid& grid, std::string label,
                                       int threads) {
  const int n = grid.n;
  const int N = 2 * n;
  const double trap = kPi / n;
  const double cj = static_hyper_constant(medium);

  const HilbertWeights hw = hilbert_weights(n);
  const std::vector<double> diff = trig_diff_matrix(n);
  // cot-part weights: H * D (scalar (2n)^2 product)
  std::vector<double> hd(static_cast<std::size_t>(N) * N, 0.0);
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) {
      const double h = hw(k, l);
      if (h == 0.0) continue;
      for (int j = 0; j < N; ++j) hd[k * N + j] += h * diff[l * N + j];
    }

  // Smooth Maue remainder: Khat = (2 pi |z'(t)| / c_j) N0(t,tau) |z'(tau)|
  //                               - (1/2) csc^2((tau-t)/2) I
  auto khat = [&](double t, double tau) {
    const double s = std::sin(0.5 * (tau - t));
    const Mat2c full = static_hyper_full(medium, curve, t, tau);
    const double sp = frame(curve, t).speed;
    return (2.0 * kPi * sp / cj) * full - Cx(0.5 / (s * s)) * identity2();
  };

  DiscreteOperator op{n, CMatrix(2 * N, 2 * N), std::move(label)};
  parallel_rows(N, threads, [&](int k) {
    const double tk = grid.nodes[k];
    const double sp = frame(curve, tk).speed;
    const double scale = cj / (2.0 * kPi * sp);
    for (int j = 0; j < N; ++j) {
      Mat2c smooth;
      if (j == k) {
        // even-direction Richardson extrapolation of the remainder diagonal
        const double d1 = 1e-3, d2 = 5e-4;
        auto sym = [&](double d) {
          return 0.5 * (khat(tk, tk + d) + khat(tk, tk - d));
        };
        const Mat2c k_d1 = sym(d1), k_d2 = sym(d2);
        smooth = (1.0 / 3.0) * (4.0 * k_d2 - k_d1);
      } else {
        smooth = khat(tk, grid.nodes[j]);
      }
      const Mat2c block = Cx(scale) * (hd[k * N + j] * identity2() + trap * smooth);
      write_block(op.mat, k, j, block);
    }
  });
  return op;
}

std::vector<Cx> apply(const DiscreteOperator& op, const std::vector<Cx>& density) {
  if (density.size() != op.mat.cols())
    throw NumericalError("apply: density size does not match the operator grid");
  return matvec(op.mat, density);
}

void insert_block(CMatrix& dst, const CMatrix& src, std::size_t row0, std::size_t col0) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j) dst(row0 + i, col0 + j) = src(i, j);
}

void add_scaled_identity(CMatrix& dst, Cx scale, std::size_t row0, std::size_t col0,
                         std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) dst(row0 + i, col0 + i) += scale;
}

}  // namespace elascat
