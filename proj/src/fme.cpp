#include "icc/fme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "icc/gaussian_model.hpp"

namespace icc {

namespace {

constexpr double kBox = 1e6;  // clip box; feasible rates live far inside it

long long checked_ll(__int128 v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw std::overflow_error("fme: integer coefficient overflow");
  return static_cast<long long>(v);
}

// Divides a row by the gcd of its coefficients; returns the divisor (1 for
// an all-zero row).
long long normalize_row(long long* c, int nv) {
  long long g = 0;
  for (int j = 0; j < nv; ++j) g = std::gcd(g, std::abs(c[j]));
  if (g <= 1) return 1;
  for (int j = 0; j < nv; ++j) c[j] /= g;
  return g;
}

bool all_zero(const long long* c, int nv) {
  for (int j = 0; j < nv; ++j)
    if (c[j] != 0) return false;
  return true;
}

std::uint64_t row_hash(const long long* c, int nv) {
  std::uint64_t h = 1469598103934665603ull;
  for (int j = 0; j < nv; ++j) {
    std::uint64_t v = static_cast<std::uint64_t>(c[j]);
    for (int k = 0; k < 8; ++k) {
      h ^= (v >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Rows with canonical (gcd-reduced) integer coefficients, deduplicated by
// coefficient pattern.  On a duplicate the payloads are merged: numerically
// that is min(rhs); symbolically it allocates a min node.
template <class Payload, class Merge>
struct RowStore {
  int nv;
  Merge merge;
  std::vector<long long> coeffs;
  std::vector<Payload> payload;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;

  RowStore(int nvars, Merge m) : nv(nvars), merge(std::move(m)) {}

  [[nodiscard]] std::size_t size() const { return payload.size(); }
  [[nodiscard]] const long long* row(int i) const {
    return coeffs.data() + static_cast<std::size_t>(i) * nv;
  }

  void push(const long long* c, Payload p) {
    const std::uint64_t h = row_hash(c, nv);
    auto& bucket = buckets[h];
    for (int idx : bucket) {
      if (std::memcmp(row(idx), c, sizeof(long long) * static_cast<std::size_t>(nv)) == 0) {
        payload[static_cast<std::size_t>(idx)] = merge(payload[static_cast<std::size_t>(idx)], p);
        return;
      }
    }
    bucket.push_back(static_cast<int>(payload.size()));
    coeffs.insert(coeffs.end(), c, c + nv);
    payload.push_back(p);
  }
};

// Scales one rational row to integers; returns the scale factor applied.
long long scale_to_integers(const std::vector<Coeff>& in, long long* out) {
  long long lcm = 1;
  for (const auto& q : in) lcm = std::lcm(lcm, q.denominator());
  for (std::size_t j = 0; j < in.size(); ++j)
    out[j] = checked_ll(static_cast<__int128>(in[j].numerator()) * (lcm / in[j].denominator()));
  return lcm;
}

// Integer-coefficient view of a LinearSystem with per-row double rhs.
struct IntSystem {
  int nv = 0;
  std::vector<long long> coeffs;
  std::vector<double> rhs;
  bool contradictory = false;

  [[nodiscard]] std::size_t size() const { return rhs.size(); }
  [[nodiscard]] const long long* row(int i) const {
    return coeffs.data() + static_cast<std::size_t>(i) * nv;
  }
};

// Canonicalizes every row (integer scale, gcd reduce, dedup keeping the
// tighter rhs) and resolves rows whose coefficients are all zero.
IntSystem canonicalize(const LinearSystem& sys) {
  IntSystem out;
  out.nv = static_cast<int>(sys.vars.size());
  out.contradictory = sys.contradictory;
  auto keep_min = [](double a, double b) { return std::min(a, b); };
  RowStore<double, decltype(keep_min)> store(out.nv, keep_min);
  std::vector<long long> scratch(sys.vars.size());
  for (const auto& r : sys.rows) {
    const long long scale = scale_to_integers(r.coeffs, scratch.data());
    double rhs = r.rhs * static_cast<double>(scale);
    if (all_zero(scratch.data(), out.nv)) {
      if (rhs < -tol::kGeom) out.contradictory = true;
      continue;
    }
    rhs /= static_cast<double>(normalize_row(scratch.data(), out.nv));
    store.push(scratch.data(), rhs);
  }
  out.coeffs = std::move(store.coeffs);
  out.rhs = std::move(store.payload);
  return out;
}

LinearSystem to_system(const IntSystem& in, std::vector<RateVar> vars) {
  LinearSystem out(std::move(vars));
  out.contradictory = in.contradictory;
  out.rows.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    LinearInequality row;
    row.coeffs.reserve(static_cast<std::size_t>(in.nv));
    for (int j = 0; j < in.nv; ++j) row.coeffs.emplace_back(in.row(static_cast<int>(i))[j]);
    row.rhs = in.rhs[i];
    out.rows.push_back(std::move(row));
  }
  return out;
}

// One Fourier-Motzkin step on integer rows: rows with zero coefficient on
// `idx` pass through (column removed); every (positive, negative) pair is
// combined with the smallest positive integer multipliers cancelling the
// column.  All-zero results become feasibility facts.
IntSystem eliminate_column(const IntSystem& in, int idx) {
  IntSystem out;
  out.nv = in.nv - 1;
  out.contradictory = in.contradictory;
  auto keep_min = [](double a, double b) { return std::min(a, b); };
  RowStore<double, decltype(keep_min)> store(out.nv, keep_min);

  std::vector<int> pos, neg;
  std::vector<long long> scratch(static_cast<std::size_t>(std::max(out.nv, 1)));
  auto strip = [&](const long long* c) {
    int k = 0;
    for (int j = 0; j < in.nv; ++j)
      if (j != idx) scratch[static_cast<std::size_t>(k++)] = c[j];
  };

  for (std::size_t i = 0; i < in.size(); ++i) {
    const long long a = in.row(static_cast<int>(i))[idx];
    if (a > 0) {
      pos.push_back(static_cast<int>(i));
    } else if (a < 0) {
      neg.push_back(static_cast<int>(i));
    } else {
      strip(in.row(static_cast<int>(i)));
      store.push(scratch.data(), in.rhs[i]);
    }
  }

  for (int u : pos) {
    const long long a = in.row(u)[idx];
    for (int l : neg) {
      const long long b = in.row(l)[idx];
      const long long g = std::gcd(a, -b);
      const long long mu = -b / g;
      const long long ml = a / g;
      int k = 0;
      for (int j = 0; j < in.nv; ++j) {
        if (j == idx) continue;
        scratch[static_cast<std::size_t>(k++)] =
            checked_ll(static_cast<__int128>(mu) * in.row(u)[j] +
                       static_cast<__int128>(ml) * in.row(l)[j]);
      }
      double rhs = static_cast<double>(mu) * in.rhs[static_cast<std::size_t>(u)] +
                   static_cast<double>(ml) * in.rhs[static_cast<std::size_t>(l)];
      if (out.nv == 0 || all_zero(scratch.data(), out.nv)) {
        if (rhs < -tol::kGeom) out.contradictory = true;
        continue;
      }
      rhs /= static_cast<double>(normalize_row(scratch.data(), out.nv));
      store.push(scratch.data(), rhs);
    }
  }
  out.coeffs = std::move(store.coeffs);
  out.rhs = std::move(store.payload);
  return out;
}

// Elimination order heuristic: fewest (upper x lower) combinations first,
// ties by variable name.
int pick_column(const IntSystem& sys, const std::vector<RateVar>& vars,
                const std::vector<bool>& keep) {
  int best = -1;
  long long best_score = 0;
  for (int j = 0; j < sys.nv; ++j) {
    if (keep[static_cast<std::size_t>(j)]) continue;
    long long pos = 0, neg = 0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const long long c = sys.row(static_cast<int>(i))[j];
      pos += c > 0;
      neg += c < 0;
    }
    const long long score = pos * neg;
    if (best < 0 || score < best_score ||
        (score == best_score && vars[static_cast<std::size_t>(j)] < vars[static_cast<std::size_t>(best)]))
      best = j, best_score = score;
  }
  return best;
}

std::optional<Polygon2D> clip_halfplanes(const double* a, const double* b, const double* c,
                                         std::size_t n) {
  std::vector<Point2> poly = {{-kBox, -kBox}, {kBox, -kBox}, {kBox, kBox}, {-kBox, kBox}};
  std::vector<Point2> next;
  for (std::size_t r = 0; r < n; ++r) {
    if (a[r] == 0.0 && b[r] == 0.0) {
      if (c[r] < -tol::kGeom) return std::nullopt;
      continue;
    }
    const double eps = tol::kGeom * (std::abs(a[r]) + std::abs(b[r])) + 1e-12 * (1.0 + std::abs(c[r]));
    next.clear();
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Point2& cur = poly[i];
      const Point2& nxt = poly[(i + 1) % m];
      const double fc = a[r] * cur.x + b[r] * cur.y - c[r];
      const double fn = a[r] * nxt.x + b[r] * nxt.y - c[r];
      const bool in_c = fc <= eps;
      const bool in_n = fn <= eps;
      if (in_c) next.push_back(cur);
      if (in_c != in_n) {
        const double t = std::clamp(fc / (fc - fn), 0.0, 1.0);
        next.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
      }
    }
    poly.swap(next);
    if (poly.empty()) return std::nullopt;
  }
  for (const auto& p : poly)
    if (std::abs(p.x) > 0.5 * kBox || std::abs(p.y) > 0.5 * kBox)
      throw std::domain_error("polygon_from_system: feasible set is unbounded");
  for (auto& p : poly) {
    if (std::abs(p.x) <= tol::kGeom) p.x = 0.0;
    if (std::abs(p.y) <= tol::kGeom) p.y = 0.0;
  }
  return convex_hull(std::move(poly));
}

}  // namespace

LinearSystem eliminate_variable(const LinearSystem& system, const RateVar& v) {
  const int idx = system.var_index(v);
  if (idx < 0) return system;
  std::vector<RateVar> vars_out;
  for (const auto& name : system.vars)
    if (name != v) vars_out.push_back(name);
  if (system.contradictory) {
    LinearSystem out(std::move(vars_out));
    out.contradictory = true;
    return out;
  }
  return to_system(eliminate_column(canonicalize(system), idx), std::move(vars_out));
}

LinearSystem remove_redundant(const LinearSystem& system) {
  return to_system(canonicalize(system), system.vars);
}

LinearSystem project(const LinearSystem& system, const std::vector<RateVar>& keep) {
  ProjectionPlan plan(system, keep);
  std::vector<double> rhs;
  rhs.reserve(system.rows.size());
  for (const auto& r : system.rows) rhs.push_back(r.rhs);
  return plan.reduced(rhs);
}

ProjectionPlan::ProjectionPlan(const LinearSystem& structure, std::vector<RateVar> keep)
    : keep_(std::move(keep)) {
  for (const auto& k : keep_)
    if (structure.var_index(k) < 0)
      throw std::invalid_argument("ProjectionPlan: keep variable '" + k + "' not in system");
  always_empty_ = structure.contradictory;
  input_rows_ = structure.rows.size();

  // Symbolic mirror of canonicalize()/eliminate_column(): integer rows carry
  // a node id instead of a numeric rhs.
  struct SymRows {
    int nv;
    std::vector<long long> coeffs;
    std::vector<std::int32_t> node;
    [[nodiscard]] const long long* row(int i) const {
      return coeffs.data() + static_cast<std::size_t>(i) * nv;
    }
  };
  auto merge_min = [this](std::int32_t a, std::int32_t b) {
    nodes_.push_back({2, a, b, 0.0, 0.0});
    return static_cast<std::int32_t>(nodes_.size() - 1);
  };

  SymRows cur;
  cur.nv = static_cast<int>(structure.vars.size());
  std::vector<RateVar> vars = structure.vars;
  {
    RowStore<std::int32_t, decltype(merge_min)> store(cur.nv, merge_min);
    std::vector<long long> scratch(static_cast<std::size_t>(std::max(cur.nv, 1)));
    for (std::size_t i = 0; i < structure.rows.size(); ++i) {
      const long long scale = scale_to_integers(structure.rows[i].coeffs, scratch.data());
      if (all_zero(scratch.data(), cur.nv)) {
        nodes_.push_back({0, static_cast<std::int32_t>(i), 0, static_cast<double>(scale), 0.0});
        feasibility_.push_back(static_cast<std::int32_t>(nodes_.size() - 1));
        continue;
      }
      const long long g = normalize_row(scratch.data(), cur.nv);
      nodes_.push_back({0, static_cast<std::int32_t>(i), 0,
                        static_cast<double>(scale) / static_cast<double>(g), 0.0});
      store.push(scratch.data(), static_cast<std::int32_t>(nodes_.size() - 1));
    }
    cur.coeffs = std::move(store.coeffs);
    cur.node = std::move(store.payload);
  }

  std::vector<bool> keep_mask(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j)
    keep_mask[j] = std::find(keep_.begin(), keep_.end(), vars[j]) != keep_.end();

  while (vars.size() > keep_.size()) {
    // Reuse the numeric column picker through a thin adapter.
    IntSystem view;
    view.nv = cur.nv;
    view.coeffs = cur.coeffs;
    view.rhs.assign(cur.node.size(), 0.0);
    const int idx = pick_column(view, vars, keep_mask);

    SymRows out;
    out.nv = cur.nv - 1;
    RowStore<std::int32_t, decltype(merge_min)> store(out.nv, merge_min);
    std::vector<long long> scratch(static_cast<std::size_t>(std::max(out.nv, 1)));
    std::vector<int> pos, neg;
    for (std::size_t i = 0; i < cur.node.size(); ++i) {
      const long long a = cur.row(static_cast<int>(i))[idx];
      if (a > 0) {
        pos.push_back(static_cast<int>(i));
      } else if (a < 0) {
        neg.push_back(static_cast<int>(i));
      } else {
        int k = 0;
        for (int j = 0; j < cur.nv; ++j)
          if (j != idx) scratch[static_cast<std::size_t>(k++)] = cur.row(static_cast<int>(i))[j];
        store.push(scratch.data(), cur.node[i]);
      }
    }
    for (int u : pos) {
      const long long a = cur.row(u)[idx];
      for (int l : neg) {
        const long long b = cur.row(l)[idx];
        const long long g = std::gcd(a, -b);
        const long long mu = -b / g;
        const long long ml = a / g;
        int k = 0;
        for (int j = 0; j < cur.nv; ++j) {
          if (j == idx) continue;
          scratch[static_cast<std::size_t>(k++)] =
              checked_ll(static_cast<__int128>(mu) * cur.row(u)[j] +
                         static_cast<__int128>(ml) * cur.row(l)[j]);
        }
        if (out.nv == 0 || all_zero(scratch.data(), out.nv)) {
          nodes_.push_back({1, cur.node[static_cast<std::size_t>(u)],
                            cur.node[static_cast<std::size_t>(l)], static_cast<double>(mu),
                            static_cast<double>(ml)});
          feasibility_.push_back(static_cast<std::int32_t>(nodes_.size() - 1));
          continue;
        }
        const long long g2 = normalize_row(scratch.data(), out.nv);
        nodes_.push_back({1, cur.node[static_cast<std::size_t>(u)],
                          cur.node[static_cast<std::size_t>(l)],
                          static_cast<double>(mu) / static_cast<double>(g2),
                          static_cast<double>(ml) / static_cast<double>(g2)});
        store.push(scratch.data(), static_cast<std::int32_t>(nodes_.size() - 1));
      }
    }
    cur.nv = out.nv;
    cur.coeffs = std::move(store.coeffs);
    cur.node = std::move(store.payload);
    vars.erase(vars.begin() + idx);
    keep_mask.erase(keep_mask.begin() + idx);
  }

  // Final columns permuted into keep_ order.
  std::vector<int> perm(keep_.size());
  for (std::size_t j = 0; j < keep_.size(); ++j) {
    const auto it = std::find(vars.begin(), vars.end(), keep_[j]);
    perm[j] = static_cast<int>(it - vars.begin());
  }
  row_nodes_ = cur.node;
  row_coeffs_.resize(cur.node.size() * keep_.size());
  for (std::size_t i = 0; i < cur.node.size(); ++i)
    for (std::size_t j = 0; j < keep_.size(); ++j)
      row_coeffs_[i * keep_.size() + j] =
          static_cast<double>(cur.row(static_cast<int>(i))[perm[j]]);
}

void ProjectionPlan::evaluate(const std::vector<double>& rhs, std::vector<double>& values) const {
  if (rhs.size() != input_rows_)
    throw std::invalid_argument("ProjectionPlan: right-hand side count mismatch");
  values.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case 0: values[i] = rhs[static_cast<std::size_t>(n.a)] * n.fa; break;
      case 1:
        values[i] = n.fa * values[static_cast<std::size_t>(n.a)] +
                    n.fb * values[static_cast<std::size_t>(n.b)];
        break;
      default:
        values[i] = std::min(values[static_cast<std::size_t>(n.a)],
                             values[static_cast<std::size_t>(n.b)]);
    }
  }
}

LinearSystem ProjectionPlan::reduced(const std::vector<double>& rhs) const {
  std::vector<double> values;
  evaluate(rhs, values);
  LinearSystem out(keep_);
  out.contradictory = always_empty_;
  for (std::int32_t f : feasibility_)
    if (values[static_cast<std::size_t>(f)] < -tol::kGeom) out.contradictory = true;
  const std::size_t nk = keep_.size();
  out.rows.reserve(row_nodes_.size());
  for (std::size_t i = 0; i < row_nodes_.size(); ++i) {
    LinearInequality row;
    row.coeffs.reserve(nk);
    for (std::size_t j = 0; j < nk; ++j)
      row.coeffs.emplace_back(static_cast<long long>(row_coeffs_[i * nk + j]));
    row.rhs = values[static_cast<std::size_t>(row_nodes_[i])];
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::optional<Polygon2D> ProjectionPlan::polygon(const std::vector<double>& rhs) const {
  if (keep_.size() != 2)
    throw std::logic_error("ProjectionPlan::polygon needs a two-variable keep list");
  if (always_empty_) return std::nullopt;
  thread_local std::vector<double> values;
  thread_local std::vector<double> a, b, c;
  evaluate(rhs, values);
  for (std::int32_t f : feasibility_)
    if (values[static_cast<std::size_t>(f)] < -tol::kGeom) return std::nullopt;
  const std::size_t n = row_nodes_.size();
  a.resize(n);
  b.resize(n);
  c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = row_coeffs_[2 * i];
    b[i] = row_coeffs_[2 * i + 1];
    c[i] = values[static_cast<std::size_t>(row_nodes_[i])];
  }
  return clip_halfplanes(a.data(), b.data(), c.data(), n);
}

std::optional<Polygon2D> polygon_from_system(const LinearSystem& system) {
  if (system.vars.size() != 2)
    throw std::invalid_argument("polygon_from_system: system must have exactly two variables");
  if (system.contradictory) return std::nullopt;
  std::vector<double> a, b, c;
  a.reserve(system.rows.size());
  b.reserve(system.rows.size());
  c.reserve(system.rows.size());
  for (const auto& r : system.rows) {
    a.push_back(boost::rational_cast<double>(r.coeffs[0]));
    b.push_back(boost::rational_cast<double>(r.coeffs[1]));
    c.push_back(r.rhs);
  }
  return clip_halfplanes(a.data(), b.data(), c.data(), a.size());
}

}  // namespace icc
