#include "flatrank/partitions.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace flatrank {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

Partition Partition::with_ones(std::vector<int> head, int ones) {
  if (ones < 0) throw std::invalid_argument("negative exponent in 1^k");
  head.insert(head.end(), static_cast<std::size_t>(ones), 1);
  return Partition(std::move(head));
}

int Partition::size() const {
  int s = 0;
  for (int x : parts_) s += x;
  return s;
}

Partition Partition::conjugate() const {
  std::vector<int> out;
  if (parts_.empty()) return Partition();
  out.reserve(static_cast<std::size_t>(parts_.front()));
  for (int j = 0; j < parts_.front(); ++j) {
    int count = 0;
    for (int x : parts_)
      if (x > j) ++count;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

std::vector<Partition> partitions_of(int p) {
  std::vector<Partition> out;
  if (p < 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  rec(p, p);
  return out;
}

BigInt schur_dim(const Partition& pi, int N) {
  if (N < 0) throw std::invalid_argument("schur_dim: negative dimension");
  if (pi.length() > static_cast<std::size_t>(N)) return 0;
  const Partition conj = pi.conjugate();
  BigInt num = 1;
  BigInt den = 1;
  for (std::size_t i = 0; i < pi.length(); ++i) {
    for (int j = 0; j < pi[i]; ++j) {
      num *= N + j - static_cast<int>(i);
      const int hook = (pi[i] - j - 1) + (conj[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
      den *= hook;
    }
  }
  return num / den;
}

namespace {

void sort_desc(std::vector<Partition>& v) { std::sort(v.begin(), v.end(), std::greater<>()); }

}  // namespace

std::vector<Partition> pieri_row(const Partition& pi, int d, int N) {
  if (d < 0) throw std::invalid_argument("pieri_row: negative box count");
  std::vector<Partition> out;
  const std::size_t rows = pi.length() + 1;
  std::vector<int> mu(rows, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i == rows) {
      if (remaining == 0) {
        Partition p(mu);
        if (p.length() <= static_cast<std::size_t>(N)) out.push_back(std::move(p));
      }
      return;
    }
    const int lo = pi[i];
    const int hi = i == 0 ? pi[0] + remaining : std::min(pi[i - 1], pi[i] + remaining);
    for (int v = hi; v >= lo; --v) {
      mu[i] = v;
      rec(i + 1, remaining - (v - lo));
    }
  };
  rec(0, d);
  sort_desc(out);
  return out;
}

std::vector<Partition> pieri_column(const Partition& pi, int k, int N) {
  if (k < 0) throw std::invalid_argument("pieri_column: negative box count");
  std::vector<Partition> out;
  const std::size_t rows = pi.length() + static_cast<std::size_t>(k);
  std::vector<int> mu(rows, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (remaining == 0) {
      for (std::size_t r = i; r < rows; ++r) mu[r] = pi[r];
      bool ok = true;
      for (std::size_t r = std::max<std::size_t>(i, 1); r < rows && ok; ++r) ok = mu[r] <= mu[r - 1];
      if (ok) {
        Partition p(mu);
        if (p.length() <= static_cast<std::size_t>(N)) out.push_back(std::move(p));
      }
      return;
    }
    if (i == rows) return;
    for (int add = 1; add >= 0; --add) {
      mu[i] = pi[i] + add;
      if (i > 0 && mu[i] > mu[i - 1]) continue;
      rec(i + 1, remaining - add);
    }
  };
  rec(0, k);
  sort_desc(out);
  return out;
}

void ModuleList::add(const Partition& a, const Partition& b, int mult) {
  if (mult <= 0) throw std::invalid_argument("module multiplicity must be positive");
  for (auto& e : entries_) {
    if (e.a == a && e.b == b) {
      e.multiplicity += mult;
      return;
    }
  }
  entries_.push_back({a, b, mult});
}

int ModuleList::multiplicity(const Partition& a, const Partition& b) const {
  for (const auto& e : entries_)
    if (e.a == a && e.b == b) return e.multiplicity;
  return 0;
}

BigInt ModuleList::total_dimension(int N) const {
  BigInt total = 0;
  for (const auto& e : entries_) total += e.multiplicity * schur_dim(e.a, N) * schur_dim(e.b, N);
  return total;
}

ModuleList ModuleList::sorted() const {
  ModuleList out = *this;
  std::sort(out.entries_.begin(), out.entries_.end(), [](const ModuleTerm& x, const ModuleTerm& y) {
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  });
  return out;
}

nlohmann::json ModuleList::to_json(int N) const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries_) {
    arr.push_back({{"a", e.a.parts()},
                   {"b", e.b.parts()},
                   {"mult", e.multiplicity},
                   {"dim_a", to_json_number(schur_dim(e.a, N))},
                   {"dim_b", to_json_number(schur_dim(e.b, N))}});
  }
  arr.push_back({{"total_dim", to_json_number(total_dimension(N))}});
  return arr;
}

ModuleList cauchy_wedge(int p, int Na, int Nb) {
  if (p < 0) throw std::invalid_argument("cauchy_wedge: negative degree");
  ModuleList out;
  for (const auto& lambda : partitions_of(p)) {
    const Partition conj = lambda.conjugate();
    if (lambda.length() <= static_cast<std::size_t>(Na) && conj.length() <= static_cast<std::size_t>(Nb))
      out.add(lambda, conj, 1);
  }
  return out;
}

ModuleList decompose_exterior_tensor(int n, int k, int p) {
  if (n <= 0 || k < 0 || p < 0) throw std::invalid_argument("decompose_exterior_tensor: bad arguments");
  ModuleList out;
  const ModuleList wedge = cauchy_wedge(p, n, n);
  for (const auto& term : wedge.entries()) {
    const auto left = pieri_column(term.a, k, n);
    const auto right = pieri_column(term.b, k, n);
    for (const auto& mu : left)
      for (const auto& nu : right) out.add(mu, nu, term.multiplicity);
  }
  return out.sorted();
}

ModuleList decompose_wedge_product(int n, int d, int p) {
  if (d <= 0 || d >= n) throw std::invalid_argument("decompose_wedge_product: need 0 < d < n");
  return decompose_exterior_tensor(n, n - d, p);
}

namespace {

void check_image_args(int n, int d, int p) {
  if (d <= 0 || d >= n) throw std::invalid_argument("candidate_image: need 0 < d < n");
  if (p != 1 && p != 2) throw std::invalid_argument("candidate_image: only p = 1 and p = 2 are supported");
}

ModuleList intersect_min(const ModuleList& x, const ModuleList& y) {
  ModuleList out;
  for (const auto& e : x.entries()) {
    const int m = std::min(e.multiplicity, y.multiplicity(e.a, e.b));
    if (m > 0) out.add(e.a, e.b, m);
  }
  return out.sorted();
}

ModuleList image_with_bound(int rows_bound, int n, int d, int p) {
  const int k = n - d;
  return intersect_min(decompose_exterior_tensor(rows_bound, k, p), decompose_exterior_tensor(rows_bound, k - 1, p + 1));
}

}  // namespace

ModuleList candidate_image(int n, int d, int p) {
  check_image_args(n, d, p);
  return image_with_bound(n, n, d, p);
}

ModuleList length_dropped_image(int n, int d, int p) {
  check_image_args(n, d, p);
  const int unbounded = std::max(n, (n - d) + p + 1);
  const ModuleList image = image_with_bound(unbounded, n, d, p);
  ModuleList out;
  for (const auto& e : image.entries()) {
    if (e.a.length() > static_cast<std::size_t>(n) || e.b.length() > static_cast<std::size_t>(n))
      out.add(e.a, e.b, e.multiplicity);
  }
  return out;
}

BigInt theoretical_image_dim(int n, int d, int p) { return candidate_image(n, d, p).total_dimension(n); }

}  // namespace flatrank
