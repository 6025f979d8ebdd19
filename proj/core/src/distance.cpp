#include "qpgc/distance.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "qpgc/errors.hpp"
#include "qpgc/parallel.hpp"

namespace qpgc {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kBurt: return "burt";
    case Metric::kJaccard: return "jaccard";
    case Metric::kOtsukaOchiai: return "otsuka";
    case Metric::kCustom: return "custom";
  }
  return "custom";
}

std::optional<Metric> parse_metric(std::string_view name) {
  if (name == "burt") return Metric::kBurt;
  if (name == "jaccard") return Metric::kJaccard;
  if (name == "otsuka" || name == "otsuka_ochiai" || name == "otsuka-ochiai") return Metric::kOtsukaOchiai;
  if (name == "custom") return Metric::kCustom;
  return std::nullopt;
}

DistanceMatrix::DistanceMatrix(std::size_t n, Metric metric, Precision precision, Neighborhood neighborhood)
    : n_(n), metric_(metric), precision_(precision), neighborhood_(neighborhood) {
  if (precision == Precision::kDouble) {
    values_ = std::vector<double>(packed_size(), 0.0);
  } else {
    values_ = std::vector<float>(packed_size(), 0.0f);
  }
}

DistanceMatrix DistanceMatrix::from_dense(std::size_t n, std::span<const double> full, Metric metric) {
  if (full.size() != n * n) throw ContractViolation("distance: dense input must have n*n entries");
  DistanceMatrix d(n, metric);
  for (std::size_t i = 0; i < n; ++i) {
    if (full[i * n + i] != 0.0) throw ContractViolation("distance: diagonal must be zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      if (full[i * n + j] != full[j * n + i]) throw ContractViolation("distance: matrix must be symmetric");
      d.set(i, j, full[i * n + j]);
    }
  }
  d.validate();
  return d;
}

double DistanceMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw ContractViolation("distance: index out of range");
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return packed(packed_index(n_, i, j));
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_ || i == j) throw ContractViolation("distance: set() needs i != j in range");
  if (i > j) std::swap(i, j);
  const std::size_t k = packed_index(n_, i, j);
  std::visit([&](auto& v) { v[k] = static_cast<typename std::decay_t<decltype(v)>::value_type>(value); },
             values_);
}

double DistanceMatrix::packed(std::size_t k) const {
  return std::visit([k](const auto& v) { return static_cast<double>(v[k]); }, values_);
}

double DistanceMatrix::max_entry() const {
  return std::visit(
      [](const auto& v) {
        double m = 0.0;
        for (auto x : v) m = std::max(m, static_cast<double>(x));
        return m;
      },
      values_);
}

std::vector<double> DistanceMatrix::to_dense() const {
  std::vector<double> full(n_ * n_, 0.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j, ++k) {
      const double v = packed(k);
      full[i * n_ + j] = v;
      full[j * n_ + i] = v;
    }
  }
  return full;
}

void DistanceMatrix::validate() const {
  std::visit(
      [](const auto& v) {
        for (auto x : v) {
          if (!std::isfinite(x) || x < 0) {
            throw ContractViolation("distance: entries must be finite and non-negative");
          }
        }
      },
      values_);
}

namespace {

// Neighbor lists in the form the pair kernels consume. In closed mode each
// list also contains the vertex itself with weight 1, in sorted position.
struct NeighborTable {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> ids;
  std::vector<double> weights;
  std::vector<double> weight_sum;

  std::size_t begin(std::size_t i) const { return offsets[i]; }
  std::size_t end(std::size_t i) const { return offsets[i + 1]; }
  std::size_t count(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
};

NeighborTable build_table(const Graph& g, Neighborhood mode) {
  const std::size_t n = g.num_vertices();
  NeighborTable t;
  t.offsets.reserve(n + 1);
  t.offsets.push_back(0);
  t.weight_sum.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    bool self_pending = mode == Neighborhood::kClosed;
    auto push = [&](Vertex v, double w) {
      t.ids.push_back(v);
      t.weights.push_back(w);
      t.weight_sum[i] += w;
    };
    for (const Neighbor& nb : g.neighbors(static_cast<Vertex>(i))) {
      if (self_pending && nb.vertex > i) {
        push(static_cast<Vertex>(i), 1.0);
        self_pending = false;
      }
      push(nb.vertex, nb.weight);
    }
    if (self_pending) push(static_cast<Vertex>(i), 1.0);
    t.offsets.push_back(t.ids.size());
  }
  return t;
}

// Sums over the merged support of rows i and j: sum(min), sum(max) and the
// count of shared ids.
struct Overlap {
  double min_sum = 0.0;
  double max_sum = 0.0;
  std::size_t shared = 0;
  std::size_t united = 0;
};

Overlap overlap(const NeighborTable& t, std::size_t i, std::size_t j) {
  Overlap o;
  std::size_t a = t.begin(i), ae = t.end(i), b = t.begin(j), be = t.end(j);
  while (a < ae && b < be) {
    if (t.ids[a] == t.ids[b]) {
      o.min_sum += std::min(t.weights[a], t.weights[b]);
      o.max_sum += std::max(t.weights[a], t.weights[b]);
      ++o.shared;
      ++a;
      ++b;
    } else if (t.ids[a] < t.ids[b]) {
      o.max_sum += t.weights[a++];
    } else {
      o.max_sum += t.weights[b++];
    }
    ++o.united;
  }
  for (; a < ae; ++a, ++o.united) o.max_sum += t.weights[a];
  for (; b < be; ++b, ++o.united) o.max_sum += t.weights[b];
  return o;
}

template <typename PairFn>
DistanceMatrix fill_pairs(std::size_t n, Metric metric, const DistanceOptions& options, PairFn&& fn) {
  DistanceMatrix d(n, metric, options.precision, options.neighborhood);
  // Rows are disjoint slices of the packed triangle, so concurrent set() on
  // different rows never touches the same element.
  parallel_for_rows(n, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, fn(i, j));
    }
  });
  return d;
}

void require_order(const Graph& g) {
  if (g.num_vertices() < 2) throw ContractViolation("distance: graph needs at least two vertices");
}

}  // namespace

DistanceMatrix burt(const Graph& g, const DistanceOptions& options) {
  require_order(g);
  const NeighborTable t = build_table(g, Neighborhood::kOpen);
  DistanceOptions opts = options;
  opts.neighborhood = Neighborhood::kOpen;
  return fill_pairs(g.num_vertices(), Metric::kBurt, opts, [&](std::size_t i, std::size_t j) {
    double sum = 0.0;
    std::size_t a = t.begin(i), ae = t.end(i), b = t.begin(j), be = t.end(j);
    auto add = [&](Vertex s, double diff) {
      if (s != i && s != j) sum += diff * diff;
    };
    while (a < ae && b < be) {
      if (t.ids[a] == t.ids[b]) {
        add(t.ids[a], t.weights[a] - t.weights[b]);
        ++a;
        ++b;
      } else if (t.ids[a] < t.ids[b]) {
        add(t.ids[a], t.weights[a]);
        ++a;
      } else {
        add(t.ids[b], t.weights[b]);
        ++b;
      }
    }
    for (; a < ae; ++a) add(t.ids[a], t.weights[a]);
    for (; b < be; ++b) add(t.ids[b], t.weights[b]);
    return std::sqrt(sum);
  });
}

DistanceMatrix jaccard(const Graph& g, const DistanceOptions& options) {
  require_order(g);
  const NeighborTable t = build_table(g, options.neighborhood);
  const bool weighted = g.weighted();
  return fill_pairs(g.num_vertices(), Metric::kJaccard, options, [&](std::size_t i, std::size_t j) {
    const Overlap o = overlap(t, i, j);
    if (weighted) {
      if (o.max_sum <= 0.0) return 1.0;
      return std::clamp(1.0 - o.min_sum / o.max_sum, 0.0, 1.0);
    }
    if (o.united == 0) return 1.0;
    return 1.0 - static_cast<double>(o.shared) / static_cast<double>(o.united);
  });
}

DistanceMatrix otsuka_ochiai(const Graph& g, const DistanceOptions& options) {
  require_order(g);
  const NeighborTable t = build_table(g, options.neighborhood);
  const bool weighted = g.weighted();
  return fill_pairs(g.num_vertices(), Metric::kOtsukaOchiai, options, [&](std::size_t i, std::size_t j) {
    const Overlap o = overlap(t, i, j);
    if (weighted) {
      const double denom = std::sqrt(t.weight_sum[i] * t.weight_sum[j]);
      if (denom <= 0.0) return 1.0;
      return std::clamp(1.0 - o.min_sum / denom, 0.0, 1.0);
    }
    const double denom = std::sqrt(static_cast<double>(t.count(i)) * static_cast<double>(t.count(j)));
    if (denom == 0.0) return 1.0;
    return std::clamp(1.0 - static_cast<double>(o.shared) / denom, 0.0, 1.0);
  });
}

DistanceMatrix compute_distance(const Graph& g, Metric metric, const DistanceOptions& options) {
  switch (metric) {
    case Metric::kBurt: return burt(g, options);
    case Metric::kJaccard: return jaccard(g, options);
    case Metric::kOtsukaOchiai: return otsuka_ochiai(g, options);
    case Metric::kCustom: break;
  }
  throw ContractViolation("compute_distance: 'custom' is not a graph metric");
}

namespace {

constexpr std::array<char, 8> kMagic{'Q', 'P', 'G', 'C', 'D', 'I', 'S', 'T'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
    throw InputError("distance dump: truncated file");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

std::uint32_t metric_tag(Metric m) { return static_cast<std::uint32_t>(m); }

}  // namespace

void write_distance_binary(std::ostream& out, const DistanceMatrix& d) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, 1);
  put_le<std::uint32_t>(out, metric_tag(d.metric()));
  put_le<std::uint32_t>(out, d.precision() == Precision::kDouble ? 64 : 32);
  put_le<std::uint32_t>(out, d.neighborhood() == Neighborhood::kClosed ? 1 : 0);
  put_le<std::uint64_t>(out, d.size());
  for (std::size_t k = 0; k < d.packed_size(); ++k) {
    if (d.precision() == Precision::kDouble) {
      put_le<double>(out, d.packed(k));
    } else {
      put_le<float>(out, static_cast<float>(d.packed(k)));
    }
  }
  if (!out) throw InputError("distance dump: write failed");
}

DistanceMatrix read_distance_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InputError("distance dump: bad magic");
  }
  if (get_le<std::uint32_t>(in) != 1) throw InputError("distance dump: unsupported version");
  const auto tag = get_le<std::uint32_t>(in);
  if (tag > metric_tag(Metric::kCustom)) throw InputError("distance dump: unknown metric tag");
  const auto bits = get_le<std::uint32_t>(in);
  if (bits != 32 && bits != 64) throw InputError("distance dump: precision must be 32 or 64");
  const auto hood = get_le<std::uint32_t>(in);
  if (hood > 1) throw InputError("distance dump: unknown neighborhood flag");
  const auto n = get_le<std::uint64_t>(in);
  if (n > (1ULL << 20)) throw InputError("distance dump: implausible order");

  DistanceMatrix d(static_cast<std::size_t>(n), static_cast<Metric>(tag),
                   bits == 64 ? Precision::kDouble : Precision::kSingle,
                   hood == 1 ? Neighborhood::kClosed : Neighborhood::kOpen);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j, ++k) {
      const double v = bits == 64 ? get_le<double>(in) : static_cast<double>(get_le<float>(in));
      d.set(i, j, v);
    }
  }
  try {
    d.validate();
  } catch (const ContractViolation& e) {
    throw InputError(std::string("distance dump: ") + e.what());
  }
  return d;
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j) out << ',';
      out << d(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace qpgc
