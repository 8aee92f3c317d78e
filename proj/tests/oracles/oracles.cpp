#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracles {

long double j0_series(long double x) {
  long double q = x * x / 4.0L, term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 300; ++k) {
    term *= -q / (static_cast<long double>(k) * k);
    sum += term;
    if (fabsl(term) < 1e-25L * fabsl(sum) + 1e-4900L) break;
  }
  return sum;
}

double j0_zero_bisection(int k) {
  if (k < 1 || k > 5) throw std::invalid_argument("j0_zero_bisection: k in 1..5");
  // scan for the k-th sign change
  long double pi = 3.14159265358979323846264338327950288L;
  long double x = 0.5L, step = 0.01L;
  long double prev = j0_series(x);
  int found = 0;
  while (x < 6.0L * pi) {
    x += step;
    long double cur = j0_series(x);
    if (prev * cur < 0) {
      ++found;
      if (found == k) {
        long double lo = x - step, hi = x;
        for (int it = 0; it < 200; ++it) {
          long double mid = 0.5L * (lo + hi);
          if (j0_series(lo) * j0_series(mid) <= 0)
            hi = mid;
          else
            lo = mid;
        }
        return static_cast<double>(0.5L * (lo + hi));
      }
    }
    prev = cur;
  }
  throw std::runtime_error("j0_zero_bisection: zero not found");
}

std::complex<double> hyp2f1_series(std::complex<double> a, std::complex<double> b,
                                   std::complex<double> c, double x, int terms) {
  std::complex<long double> al(a.real(), a.imag()), be(b.real(), b.imag()),
      ga(c.real(), c.imag());
  std::complex<long double> term = 1.0L, sum = 1.0L;
  for (int n = 0; n < terms; ++n) {
    term *= (al + static_cast<long double>(n)) * (be + static_cast<long double>(n)) /
            ((ga + static_cast<long double>(n)) * static_cast<long double>(n + 1)) *
            static_cast<long double>(x);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

double power_poly_integral(double gamma, const std::vector<double>& coeff) {
  double s = 0.0;
  for (std::size_t i = 0; i < coeff.size(); ++i) s += coeff[i] / (gamma + i + 1.0);
  return s;
}

double tanx_eq_x_root(int k) {
  // roots sit just below (k + 1/2) pi
  double pi = 3.141592653589793238462643383279502884;
  double lo = k * pi + 1e-9, hi = (k + 0.5) * pi - 1e-9;
  auto f = [](double x) { return std::tan(x) - x; };
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Jacobi eigenvalue iteration for small dense symmetric matrices (row-major).
std::vector<double> jacobi_eigenvalues(std::vector<double> A, int n) {
  auto at = [&](int i, int j) -> double& { return A[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Cholesky factor (lower) of a dense SPD matrix.
std::vector<double> cholesky(std::vector<double> M, int n) {
  auto at = [&](int i, int j) -> double& { return M[i * n + j]; };
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) at(j, j) -= at(j, k) * at(j, k);
    at(j, j) = std::sqrt(at(j, j));
    for (int i = j + 1; i < n; ++i) {
      for (int k = 0; k < j; ++k) at(i, j) -= at(i, k) * at(j, k);
      at(i, j) /= at(j, j);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) at(i, j) = 0.0;
  return M;
}

}  // namespace

std::vector<double> fem_krein_free_eigenvalues(int n_cells, int count) {
  int n = n_cells + 1;  // P1 nodes on [0,1]
  double h = 1.0 / n_cells;
  std::vector<double> K(n * n, 0.0), M(n * n, 0.0);
  auto k_at = [&](int i, int j) -> double& { return K[i * n + j]; };
  auto m_at = [&](int i, int j) -> double& { return M[i * n + j]; };
  for (int e = 0; e < n_cells; ++e) {
    int i = e, j = e + 1;
    k_at(i, i) += 1.0 / h;
    k_at(j, j) += 1.0 / h;
    k_at(i, j) -= 1.0 / h;
    k_at(j, i) -= 1.0 / h;
    m_at(i, i) += h / 3.0;
    m_at(j, j) += h / 3.0;
    m_at(i, j) += h / 6.0;
    m_at(j, i) += h / 6.0;
  }
  // Krein boundary term: -(u_N - u_0)(v_N - v_0)
  k_at(0, 0) -= 1.0;
  k_at(n - 1, n - 1) -= 1.0;
  k_at(0, n - 1) += 1.0;
  k_at(n - 1, 0) += 1.0;

  // generalized symmetric problem K y = lambda M y via M = L L^T
  auto L = cholesky(M, n);
  // B = L^{-1} K L^{-T}
  std::vector<double> B = K;
  auto b_at = [&](int i, int j) -> double& { return B[i * n + j]; };
  // forward solve L X = K (column-wise on rows)
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      double s = b_at(i, col);
      for (int k = 0; k < i; ++k) s -= L[i * n + k] * b_at(k, col);
      b_at(i, col) = s / L[i * n + i];
    }
  }
  // now solve (L X^T = B^T): apply the same from the right
  for (int row = 0; row < n; ++row) {
    for (int j = 0; j < n; ++j) {
      double s = b_at(row, j);
      for (int k = 0; k < j; ++k) s -= L[j * n + k] * b_at(row, k);
      b_at(row, j) = s / L[j * n + j];
    }
  }
  auto ev = jacobi_eigenvalues(B, n);
  if (static_cast<int>(ev.size()) > count) ev.resize(count);
  return ev;
}

}  // namespace oracles
