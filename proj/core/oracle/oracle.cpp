#include "qpgc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qpgc::oracle {

BruteForceResult brute_force_min(const Matrix& d, std::size_t k, std::uint64_t cap, bool count_ties) {
  const std::size_t n = d.size();
  if (k == 0) throw std::invalid_argument("brute_force_min: K must be >= 1");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / k) throw std::invalid_argument("brute_force_min: K^n exceeds the enumeration cap");
    total *= k;
  }

  BruteForceResult best;
  best.best_objective = std::numeric_limits<double>::infinity();
  std::vector<int> labels(n, 0);
  std::vector<double> values;
  if (count_ties) values.reserve(static_cast<std::size_t>(total));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(c % k);
      c /= k;
    }
    double v = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (labels[i] == labels[j]) v += d[i][j];
      }
    }
    ++best.num_evaluated;
    if (count_ties) values.push_back(v);
    if (v < best.best_objective) {
      best.best_objective = v;
      best.best_labels = labels;
    }
  }
  if (count_ties) {
    const double slack = 1e-12 * std::max(1.0, std::abs(best.best_objective));
    best.num_ties = static_cast<std::uint64_t>(
        std::count_if(values.begin(), values.end(), [&](double v) { return v - best.best_objective <= slack; }));
  }
  return best;
}

double naive_objective(const Matrix& d, const Matrix& x) {
  double total = 0.0;
  const std::size_t n = x.size();
  const std::size_t k = n ? x[0].size() : 0;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) total += d[i][j] * x[i][c] * x[j][c];
      }
    }
  }
  return total / 2.0;
}

double naive_penalty_value(const Matrix& d, const Matrix& x, double theta) {
  double pen = 0.0;
  for (const auto& row : x) {
    const double h = std::accumulate(row.begin(), row.end(), 0.0) - 1.0;
    pen += h * h;
  }
  return naive_objective(d, x) + theta / 2.0 * pen;
}

double naive_regularized_value(const Matrix& d, const Matrix& x, double theta, double lambda) {
  double sq = 0.0;
  for (const auto& row : x) {
    for (double v : row) sq += v * v;
  }
  return naive_penalty_value(d, x, theta) + lambda * sq;
}

Matrix naive_gradient(const Matrix& d, const Matrix& x, double theta, double lambda) {
  const std::size_t n = x.size();
  const std::size_t k = n ? x[0].size() : 0;
  Matrix g(n, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double h = std::accumulate(x[i].begin(), x[i].end(), 0.0) - 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += d[i][j] * x[j][c];
      }
      g[i][c] = s + theta * h + 2.0 * lambda * x[i][c];
    }
  }
  return g;
}

Matrix naive_hessian(const Matrix& d, std::size_t k, double theta, double lambda) {
  const std::size_t n = d.size();
  Matrix h(n * k, std::vector<double>(n * k, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t b = 0; b < k; ++b) {
          double v = 0.0;
          if (i != j && a == b) v += d[i][j];
          if (i == j) v += theta;
          if (i == j && a == b) v += 2.0 * lambda;
          h[i * k + a][j * k + b] = v;
        }
      }
    }
  }
  return h;
}

Matrix naive_distances(const Matrix& adjacency, NaiveMetric metric, bool closed) {
  const std::size_t n = adjacency.size();
  Matrix a = adjacency;
  if (closed && metric != NaiveMetric::kBurt) {
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
  }
  Matrix out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double v = 0.0;
      switch (metric) {
        case NaiveMetric::kBurt: {
          double s = 0.0;
          for (std::size_t t = 0; t < n; ++t) {
            if (t != i && t != j) s += (a[i][t] - a[j][t]) * (a[i][t] - a[j][t]);
          }
          v = std::sqrt(s);
          break;
        }
        case NaiveMetric::kJaccard: {
          double lo = 0.0, hi = 0.0;
          for (std::size_t t = 0; t < n; ++t) {
            lo += std::min(a[i][t], a[j][t]);
            hi += std::max(a[i][t], a[j][t]);
          }
          v = hi == 0.0 ? 1.0 : 1.0 - lo / hi;
          break;
        }
        case NaiveMetric::kOtsukaOchiai: {
          double lo = 0.0, di = 0.0, dj = 0.0;
          for (std::size_t t = 0; t < n; ++t) {
            lo += std::min(a[i][t], a[j][t]);
            di += a[i][t];
            dj += a[j][t];
          }
          v = di * dj == 0.0 ? 1.0 : 1.0 - lo / std::sqrt(di * dj);
          break;
        }
      }
      out[i][j] = v;
    }
  }
  return out;
}

NaiveDensities naive_densities(const Matrix& adjacency, const std::vector<int>& labels, std::size_t k) {
  const std::size_t n = adjacency.size();
  NaiveDensities r;
  double edges = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges += adjacency[i][j] != 0.0;
  }
  r.kappa = edges / (n * (n - 1) / 2.0);

  r.intra.assign(k, std::nullopt);
  r.inter.assign(k, std::vector<double>(k, std::nan("")));
  double intra_sum = 0.0, inter_sum = 0.0;
  std::size_t used = 0, pairs = 0;
  for (std::size_t a = 0; a < k; ++a) {
    double size_a = 0.0, inside = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (labels[i] != static_cast<int>(a)) continue;
      size_a += 1.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (labels[j] == static_cast<int>(a) && adjacency[i][j] != 0.0) inside += 1.0;
      }
    }
    if (size_a == 0.0) continue;
    r.intra[a] = size_a < 2.0 ? 0.0 : inside / (size_a * (size_a - 1.0) / 2.0);
    intra_sum += *r.intra[a];
    ++used;
    for (std::size_t b = 0; b < k; ++b) {
      if (b == a) continue;
      double size_b = 0.0, across = 0.0;
      for (std::size_t j = 0; j < n; ++j) size_b += labels[j] == static_cast<int>(b);
      if (size_b == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (labels[i] == static_cast<int>(a) && labels[j] == static_cast<int>(b) && adjacency[i][j] != 0.0) {
            across += 1.0;
          }
        }
      }
      r.inter[a][b] = across / (size_a * size_b);
      if (b > a) {
        inter_sum += r.inter[a][b];
        ++pairs;
      }
    }
  }
  r.mean_intra = used ? intra_sum / static_cast<double>(used) : 0.0;
  if (pairs) r.mean_inter = inter_sum / static_cast<double>(pairs);
  return r;
}

std::size_t naive_misclassified(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) throw std::invalid_argument("naive_misclassified: length mismatch");
  const int kp = predicted.empty() ? 0 : *std::max_element(predicted.begin(), predicted.end()) + 1;
  const int kt = truth.empty() ? 0 : *std::max_element(truth.begin(), truth.end()) + 1;
  const int m = std::max(kp, kt);
  if (m > 8) throw std::invalid_argument("naive_misclassified: at most 8 labels");
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t agree = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      agree += perm[static_cast<std::size_t>(predicted[i])] == truth[i];
    }
    best = std::max(best, agree);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return predicted.size() - best;
}

double multistart_min(const Matrix& d, std::size_t k, double theta, double lambda, double upper,
                      std::size_t starts, std::uint64_t seed, std::size_t iterations) {
  const std::size_t n = d.size();
  double lip = 0.0;
  for (const auto& row : d) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    lip = std::max(lip, s);
  }
  lip += theta * static_cast<double>(k) + 2.0 * lambda;
  const double step = lip > 0.0 ? 1.0 / lip : 1.0;

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, upper);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < starts; ++s) {
    Matrix x(n, std::vector<double>(k));
    for (auto& row : x) {
      for (double& v : row) v = unif(gen);
    }
    for (std::size_t it = 0; it < iterations; ++it) {
      const Matrix g = naive_gradient(d, x, theta, lambda);
      double moved = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < k; ++c) {
          const double nv = std::clamp(x[i][c] - step * g[i][c], 0.0, upper);
          moved = std::max(moved, std::abs(nv - x[i][c]));
          x[i][c] = nv;
        }
      }
      if (moved < 1e-15) break;
    }
    best = std::min(best, naive_regularized_value(d, x, theta, lambda));
  }
  return best;
}

}  // namespace qpgc::oracle
