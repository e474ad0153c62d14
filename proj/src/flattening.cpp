#include "flatrank/flattening.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace flatrank {

int wedge_insert(const Wedge& w, int x, Wedge& out) {
  auto it = std::lower_bound(w.begin(), w.end(), x);
  if (it != w.end() && *it == x) return 0;
  const auto before = it - w.begin();
  out.assign(w.begin(), it);
  out.push_back(x);
  out.insert(out.end(), it, w.end());
  return before % 2 == 0 ? 1 : -1;
}

int normalize_wedge(Wedge& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t j = i; j > 0 && w[j - 1] >= w[j]; --j) {
      if (w[j - 1] == w[j]) return 0;
      std::swap(w[j - 1], w[j]);
      sign = -sign;
    }
  }
  return sign;
}

namespace {

std::string var_label(int index, int n) {
  const VarIndex v = VarIndex::from_linear(index, n);
  return "x[" + std::to_string(v.row) + "," + std::to_string(v.col) + "]";
}

std::string list_label(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

std::string monomial_label(const Exponents& e, int n, bool dual) {
  std::string out;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += (dual ? "d" : "") + var_label(static_cast<int>(k), n);
    if (e[k] > 1) out += "^" + std::to_string(e[k]);
  }
  return out.empty() ? "1" : out;
}

// All exponent vectors of the given degree, x_1^k first.
std::vector<Exponents> monomials(int num_vars, int degree) {
  std::vector<Exponents> out;
  Exponents cur(static_cast<std::size_t>(num_vars), 0);
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == num_vars - 1) {
      cur[static_cast<std::size_t>(var)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int x = remaining; x >= 0; --x) {
      cur[static_cast<std::size_t>(var)] = x;
      rec(var + 1, remaining - x);
    }
  };
  if (num_vars > 0) rec(0, degree);
  return out;
}

std::vector<std::vector<int>> all_subsets(int m, int k) {
  SubsetIndexer idx(m, k);
  std::vector<std::vector<int>> out;
  out.reserve(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) out.push_back(idx.unrank(r));
  return out;
}

std::vector<int> one_based(std::vector<int> s) {
  for (int& x : s) ++x;
  return s;
}

std::vector<int> erase_at(const std::vector<int>& s, std::size_t pos) {
  std::vector<int> out;
  out.reserve(s.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != pos) out.push_back(s[i]);
  return out;
}

// (A-weight, B-weight) concatenated; entries count occurrences of each index.
using Weight = std::vector<int>;

void add_wedge_weight(Weight& w, const Wedge& wedge, int n, int sign) {
  for (int x : wedge) {
    w[static_cast<std::size_t>(x / n)] += sign;
    w[static_cast<std::size_t>(n + x % n)] += sign;
  }
}

void add_exponent_weight(Weight& w, const Exponents& e, int n, int sign) {
  for (std::size_t k = 0; k < e.size(); ++k) {
    w[k / static_cast<std::size_t>(n)] += sign * e[k];
    w[static_cast<std::size_t>(n) + k % static_cast<std::size_t>(n)] += sign * e[k];
  }
}

Weight key_weight(const KoszulKey& key, int n) {
  Weight w(static_cast<std::size_t>(2 * n), 0);
  for (int i : key.minor.I) ++w[static_cast<std::size_t>(i - 1)];
  for (int j : key.minor.J) ++w[static_cast<std::size_t>(n + j - 1)];
  add_wedge_weight(w, key.wedge, n, 1);
  return w;
}

void check_minor_args(int n, int d, int p) {
  if (n < 1) throw std::invalid_argument("minor Koszul map: n must be positive");
  if (d < 1 || d > n - 1) throw std::invalid_argument("minor Koszul map: need 1 <= d <= n-1");
  if (p != 1 && p != 2) throw std::invalid_argument("minor Koszul map: only p = 1 and p = 2 are supported");
}

void check_domain_key(const KoszulKey& key, int n, int d, int p) {
  const auto k = static_cast<std::size_t>(n - d);
  auto check_set = [n](const std::vector<int>& s) {
    for (std::size_t a = 0; a < s.size(); ++a)
      if (s[a] < 1 || s[a] > n || (a > 0 && s[a] <= s[a - 1])) return false;
    return true;
  };
  if (key.minor.I.size() != k || key.minor.J.size() != k || !check_set(key.minor.I) || !check_set(key.minor.J))
    throw std::invalid_argument("minor Koszul map: bad minor index " + key.minor.label());
  if (key.wedge.size() != static_cast<std::size_t>(p)) throw std::invalid_argument("minor Koszul map: wedge has wrong size");
  for (std::size_t a = 0; a < key.wedge.size(); ++a)
    if (key.wedge[a] < 0 || key.wedge[a] >= n * n || (a > 0 && key.wedge[a] <= key.wedge[a - 1]))
      throw std::invalid_argument("minor Koszul map: wedge must be strictly increasing variable indices");
}

// Calls emit(pos_i, pos_j, wedge', sign) for each term in the image of one basis element.
template <typename Emit>
void minor_image(int n, const std::vector<int>& I, const std::vector<int>& J, const Wedge& wedge, Emit&& emit) {
  Wedge out;
  for (std::size_t a = 0; a < I.size(); ++a) {
    for (std::size_t b = 0; b < J.size(); ++b) {
      const int x = (I[a] - 1) * n + (J[b] - 1);
      const int s = wedge_insert(wedge, x, out);
      if (s == 0) continue;
      const int sign = (a + b) % 2 == 0 ? s : -s;
      emit(a, b, out, sign);
    }
  }
}

}  // namespace

std::string wedge_label(const Wedge& w, int n) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "^" : "") + var_label(w[i], n);
  return out;
}

SubsetIndexer::SubsetIndexer(int m, int k) : m_(m), k_(k) {
  if (m < 0 || k < 0 || k > m) throw std::invalid_argument("SubsetIndexer: need 0 <= k <= m");
  table_.assign(static_cast<std::size_t>(m + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(k + 1), 0));
  for (int a = 0; a <= m; ++a) {
    table_[static_cast<std::size_t>(a)][0] = 1;
    for (int b = 1; b <= std::min(a, k); ++b)
      table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          table_[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] +
          (b <= a - 1 ? table_[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)] : 0);
  }
  size_ = static_cast<std::size_t>(choose(m, k));
}

std::uint64_t SubsetIndexer::choose(int a, int b) const {
  if (a < 0 || b < 0 || b > a) return 0;
  return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

std::size_t SubsetIndexer::rank(const std::vector<int>& s) const {
  if (s.size() != static_cast<std::size_t>(k_)) throw std::invalid_argument("SubsetIndexer::rank: wrong subset size");
  std::uint64_t r = 0;
  int start = 0;
  for (int i = 0; i < k_; ++i) {
    const int v = s[static_cast<std::size_t>(i)];
    if (v < start || v >= m_) throw std::invalid_argument("SubsetIndexer::rank: not a strictly increasing subset");
    for (int u = start; u < v; ++u) r += choose(m_ - 1 - u, k_ - 1 - i);
    start = v + 1;
  }
  return static_cast<std::size_t>(r);
}

std::vector<int> SubsetIndexer::unrank(std::size_t r) const {
  if (r >= size_) throw std::out_of_range("SubsetIndexer::unrank: index out of range");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k_));
  std::uint64_t rem = r;
  int v = 0;
  for (int i = 0; i < k_; ++i) {
    while (rem >= choose(m_ - 1 - v, k_ - 1 - i)) {
      rem -= choose(m_ - 1 - v, k_ - 1 - i);
      ++v;
    }
    out.push_back(v++);
  }
  return out;
}

std::string MinorIndex::label() const { return "D[" + list_label(I) + "|" + list_label(J) + "]"; }

std::string to_string(FlatteningKind kind) {
  switch (kind) {
    case FlatteningKind::full: return "full";
    case FlatteningKind::minor: return "minor";
    case FlatteningKind::pieri: return "pieri";
  }
  return "unknown";
}

std::uint64_t Basis::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  feed(std::to_string(rows.size()));
  for (const auto& r : rows) feed(r);
  feed(std::to_string(cols.size()));
  for (const auto& c : cols) feed(c);
  return h;
}

std::string KoszulKey::label(int n) const { return wedge_label(wedge, n) + " * " + minor.label(); }

Basis full_koszul_basis(int n, int e, int d, int p) {
  const int N = n * n;
  if (d < 1 || d > e - 1) throw std::invalid_argument("full Koszul map: need 1 <= d <= degree-1");
  if (p < 0 || p > N - 1) throw std::invalid_argument("full Koszul map: need 0 <= p <= n^2-1");
  Basis basis;
  const auto wedges_in = all_subsets(N, p);
  const auto wedges_out = all_subsets(N, p + 1);
  const auto duals = monomials(N, d);
  const auto mons = monomials(N, e - d - 1);
  for (const auto& w : wedges_out)
    for (const auto& m : mons) basis.rows.push_back(wedge_label(w, n) + " * " + monomial_label(m, n, false));
  for (const auto& w : wedges_in)
    for (const auto& a : duals) basis.cols.push_back(wedge_label(w, n) + " * " + monomial_label(a, n, true));
  return basis;
}

FlatteningMatrix full_koszul_matrix(const Polynomial& P, int d, int p, std::string polynomial_id) {
  const int n = P.n();
  const int N = n * n;
  const int e = P.degree();
  FlatteningMatrix F;
  F.kind = FlatteningKind::full;
  F.polynomial_id = std::move(polynomial_id);
  F.n = n;
  F.d = d;
  F.p = p;
  F.basis = full_koszul_basis(n, e, d, p);

  const auto wedges_in = all_subsets(N, p);
  const SubsetIndexer out_index(N, p + 1);
  const auto duals = monomials(N, d);
  const auto mons = monomials(N, e - d - 1);
  std::map<Exponents, std::size_t> mon_index;
  for (std::size_t i = 0; i < mons.size(); ++i) mon_index.emplace(mons[i], i);

  // Weight grading holds whenever P is a weight vector.
  std::optional<Weight> weight_P;
  for (const auto& [ex, c] : P.terms()) {
    Weight w(static_cast<std::size_t>(2 * n), 0);
    add_exponent_weight(w, ex, n, 1);
    if (!weight_P) {
      weight_P = w;
    } else if (*weight_P != w) {
      weight_P.reset();
      break;
    }
  }

  // derivs[b][x] = d/dx (alpha_b -| P)
  std::vector<std::vector<Polynomial>> derivs(duals.size());
  for (std::size_t b = 0; b < duals.size(); ++b) {
    Polynomial alpha(n, d);
    alpha.add_term(duals[b], 1);
    const Polynomial Q = contract(alpha, P);
    derivs[b].reserve(static_cast<std::size_t>(N));
    for (int x = 0; x < N; ++x) derivs[b].push_back(Q.derivative(x));
  }

  F.matrix.rows = F.basis.rows.size();
  F.matrix.cols = F.basis.cols.size();
  Wedge out;
  for (std::size_t a = 0; a < wedges_in.size(); ++a) {
    const auto& omega = wedges_in[a];
    for (std::size_t b = 0; b < duals.size(); ++b) {
      const auto col = static_cast<std::uint32_t>(a * duals.size() + b);
      for (int x = 0; x < N; ++x) {
        const Polynomial& D = derivs[b][static_cast<std::size_t>(x)];
        if (D.is_zero()) continue;
        const int s = wedge_insert(omega, x, out);
        if (s == 0) continue;
        const std::size_t wrank = out_index.rank(out);
        for (const auto& [m, c] : D.terms()) {
          const auto row = static_cast<std::uint32_t>(wrank * mons.size() + mon_index.at(m));
          if (weight_P) {
            Weight wr(static_cast<std::size_t>(2 * n), 0), wc(static_cast<std::size_t>(2 * n), 0);
            add_wedge_weight(wr, out, n, 1);
            add_exponent_weight(wr, m, n, 1);
            add_wedge_weight(wc, omega, n, 1);
            add_exponent_weight(wc, duals[b], n, -1);
            for (std::size_t t = 0; t < wc.size(); ++t) wc[t] += (*weight_P)[t];
            if (wr != wc) throw std::logic_error("full Koszul map: entry breaks the weight grading");
          }
          F.matrix.entries.push_back({row, col, s > 0 ? c : Rational(-c)});
        }
      }
    }
  }
  return F;
}

Basis minor_koszul_basis(int n, int d, int p) {
  check_minor_args(n, d, p);
  const int k = n - d;
  const int N = n * n;
  Basis basis;
  const auto sub_in = all_subsets(n, k);
  const auto sub_out = all_subsets(n, k - 1);
  const auto wedges_in = all_subsets(N, p);
  const auto wedges_out = all_subsets(N, p + 1);
  basis.cols.reserve(sub_in.size() * sub_in.size() * wedges_in.size());
  for (const auto& I : sub_in)
    for (const auto& J : sub_in) {
      const std::string minor = MinorIndex{one_based(I), one_based(J)}.label();
      for (const auto& w : wedges_in) basis.cols.push_back(wedge_label(w, n) + " * " + minor);
    }
  basis.rows.reserve(sub_out.size() * sub_out.size() * wedges_out.size());
  for (const auto& I : sub_out)
    for (const auto& J : sub_out) {
      const std::string minor = MinorIndex{one_based(I), one_based(J)}.label();
      for (const auto& w : wedges_out) basis.rows.push_back(wedge_label(w, n) + " * " + minor);
    }
  return basis;
}

FlatteningMatrix minor_koszul_matrix(int n, int d, int p) {
  check_minor_args(n, d, p);
  const int k = n - d;
  const int N = n * n;
  FlatteningMatrix F;
  F.kind = FlatteningKind::minor;
  F.polynomial_id = "det";
  F.n = n;
  F.d = d;
  F.p = p;
  F.basis = minor_koszul_basis(n, d, p);

  const auto sub_in = all_subsets(n, k);
  const SubsetIndexer sub_out(n, k - 1);
  const auto wedges_in = all_subsets(N, p);
  const SubsetIndexer wedge_out(N, p + 1);
  const std::size_t minors_out = sub_out.size();

  F.matrix.rows = F.basis.rows.size();
  F.matrix.cols = F.basis.cols.size();
  F.matrix.entries.reserve(F.matrix.cols * static_cast<std::size_t>(k * k));
  std::size_t col = 0;
  for (const auto& I0 : sub_in) {
    const auto I = one_based(I0);
    for (const auto& J0 : sub_in) {
      const auto J = one_based(J0);
      for (const auto& w : wedges_in) {
        const KoszulKey from{{I, J}, w};
        const Weight wc = key_weight(from, n);
        minor_image(n, I, J, w, [&](std::size_t a, std::size_t b, const Wedge& out, int sign) {
          const auto Ir = erase_at(I0, a);
          const auto Jr = erase_at(J0, b);
          const KoszulKey to{{one_based(Ir), one_based(Jr)}, out};
          if (key_weight(to, n) != wc) throw std::logic_error("minor Koszul map: entry breaks the weight grading");
          const std::size_t row = (sub_out.rank(Ir) * minors_out + sub_out.rank(Jr)) * wedge_out.size() + wedge_out.rank(out);
          F.matrix.entries.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), Rational(sign)});
        });
        ++col;
      }
    }
  }
  return F;
}

KoszulVector apply_minor_koszul(int n, int d, int p, const KoszulVector& v) {
  check_minor_args(n, d, p);
  KoszulVector image;
  for (const auto& [key, c] : v) {
    check_domain_key(key, n, d, p);
    if (c == 0) continue;
    minor_image(n, key.minor.I, key.minor.J, key.wedge, [&](std::size_t a, std::size_t b, const Wedge& out, int sign) {
      KoszulKey to{{erase_at(key.minor.I, a), erase_at(key.minor.J, b)}, out};
      image[std::move(to)] += sign > 0 ? c : Rational(-c);
    });
  }
  std::erase_if(image, [](const auto& kv) { return kv.second == 0; });
  return image;
}

// ---- projected highest weight vectors ----

const std::vector<HwvLemma>& all_hwv_lemmas() {
  static const std::vector<HwvLemma> all = {HwvLemma::p1_21, HwvLemma::p1_1s, HwvLemma::p2_a, HwvLemma::p2_b,
                                            HwvLemma::p2_c,  HwvLemma::p2_d,  HwvLemma::p2_e, HwvLemma::p2_f};
  return all;
}

std::string to_string(HwvLemma lemma) {
  switch (lemma) {
    case HwvLemma::p1_21: return "p1_21";
    case HwvLemma::p1_1s: return "p1_1s";
    case HwvLemma::p2_a: return "p2_a";
    case HwvLemma::p2_b: return "p2_b";
    case HwvLemma::p2_c: return "p2_c";
    case HwvLemma::p2_d: return "p2_d";
    case HwvLemma::p2_e: return "p2_e";
    case HwvLemma::p2_f: return "p2_f";
  }
  return "unknown";
}

HwvLemma parse_hwv_lemma(std::string_view id) {
  for (HwvLemma l : all_hwv_lemmas())
    if (to_string(l) == id) return l;
  throw std::invalid_argument("unknown lemma id '" + std::string(id) + "'");
}

int hwv_degree(HwvLemma lemma) { return lemma == HwvLemma::p1_21 || lemma == HwvLemma::p1_1s ? 1 : 2; }

namespace {

std::vector<int> range1(int a, int b) {
  std::vector<int> out;
  for (int x = a; x <= b; ++x) out.push_back(x);
  return out;
}

std::vector<int> without(std::vector<int> s, std::initializer_list<int> drop) {
  std::erase_if(s, [&](int x) { return std::find(drop.begin(), drop.end(), x) != drop.end(); });
  return s;
}

int sgn(int e) { return e % 2 == 0 ? 1 : -1; }

struct HwvBuilder {
  int n;
  KoszulVector v;

  int var(int i, int j) const { return (i - 1) * n + (j - 1); }

  void add(int coeff, Wedge w, std::vector<int> I, std::vector<int> J) {
    const int s = normalize_wedge(w);
    if (s == 0) return;
    v[KoszulKey{{std::move(I), std::move(J)}, std::move(w)}] += coeff * s;
  }
};

void require_fit(bool ok, HwvLemma lemma, int n, int d) {
  if (!ok)
    throw std::invalid_argument("lemma " + to_string(lemma) + " does not fit n = " + std::to_string(n) +
                                ", d = " + std::to_string(d));
}

}  // namespace

KoszulVector hwv_vector(HwvLemma lemma, int n, int d) {
  if (n < 2 || d < 1 || d > n - 1)
    throw std::invalid_argument("hwv_vector: need n >= 2 and 1 <= d <= n-1");
  const int k = n - d;
  HwvBuilder h{n, {}};
  const auto K = range1(1, k);
  switch (lemma) {
    case HwvLemma::p1_21:
      h.add(1, {h.var(1, 1)}, K, K);
      break;
    case HwvLemma::p1_1s:
      require_fit(k + 1 <= n, lemma, n, d);
      for (int j = 1; j <= k + 1; ++j) h.add(sgn(j), {h.var(1, j)}, K, without(range1(1, k + 1), {j}));
      break;
    case HwvLemma::p2_a:
      require_fit(k + 2 <= n, lemma, n, d);
      for (int i = 1; i <= k + 2; ++i)
        for (int j = i + 1; j <= k + 2; ++j)
          h.add(sgn(i + j), {h.var(1, i), h.var(1, j)}, K, without(range1(1, k + 2), {i, j}));
      break;
    case HwvLemma::p2_b:
      require_fit(k + 1 <= n, lemma, n, d);
      for (int i = 2; i <= k + 1; ++i) h.add(sgn(i), {h.var(1, 1), h.var(1, i)}, K, without(range1(1, k + 1), {i}));
      break;
    case HwvLemma::p2_c:
      require_fit(k >= 2, lemma, n, d);
      h.add(1, {h.var(1, 1), h.var(1, 2)}, K, K);
      break;
    case HwvLemma::p2_d:
      require_fit(k + 1 <= n, lemma, n, d);
      for (int i = 1; i <= k + 1; ++i)
        for (int j = 2; j <= k + 1; ++j) {
          const auto I = without(range1(1, k + 1), {i});
          const auto J = without(range1(1, k + 1), {j});
          h.add(sgn(i + j), {h.var(1, 1), h.var(i, j)}, I, J);
          h.add(sgn(i + j), {h.var(i, 1), h.var(1, j)}, I, J);
        }
      break;
    case HwvLemma::p2_e:
      require_fit(k >= 2 && k + 1 <= n, lemma, n, d);
      for (int i = 1; i <= k + 1; ++i) {
        const auto J = without(range1(1, k + 1), {i});
        h.add(sgn(i), {h.var(1, 1), h.var(2, i)}, K, J);
        h.add(sgn(i), {h.var(1, i), h.var(2, 1)}, K, J);
      }
      break;
    case HwvLemma::p2_f:
      return transpose(hwv_vector(HwvLemma::p2_e, n, d), n);
  }
  std::erase_if(h.v, [](const auto& kv) { return kv.second == 0; });
  return h.v;
}

std::optional<KoszulKey> hwv_expected_witness(HwvLemma lemma, int n, int d) {
  const int k = n - d;
  auto var = [n](int i, int j) { return (i - 1) * n + (j - 1); };
  KoszulKey key;
  switch (lemma) {
    case HwvLemma::p1_21:
      key = {{without(range1(1, k), {1}), without(range1(1, k), {2})}, {var(1, 1), var(1, 2)}};
      break;
    case HwvLemma::p1_1s:
      key = {{without(range1(1, k), {1}), without(range1(1, k + 1), {1, 2})}, {var(1, 1), var(1, 2)}};
      break;
    case HwvLemma::p2_a:
      key = {{without(range1(1, k), {1}), without(range1(1, k + 2), {1, 2, 3})}, {var(1, 1), var(1, 2), var(1, 3)}};
      break;
    case HwvLemma::p2_b:
      key = {{without(range1(1, k), {1}), without(range1(1, k + 1), {2, 3})}, {var(1, 1), var(1, 3), var(1, 2)}};
      break;
    case HwvLemma::p2_c:
      key = {{without(range1(1, k), {1}), without(range1(1, k), {3})}, {var(1, 1), var(1, 2), var(1, 3)}};
      break;
    case HwvLemma::p2_d:
      key = {{without(range1(1, k + 1), {1, 2}), without(range1(1, k + 1), {2, 1})}, {var(1, 1), var(1, 2), var(2, 1)}};
      break;
    case HwvLemma::p2_e:
      key = {{without(range1(1, k), {1}), without(range1(1, k + 1), {1, 2})}, {var(1, 1), var(2, 1), var(1, 2)}};
      break;
    case HwvLemma::p2_f:
      key = {{without(range1(1, k + 1), {1, 2}), without(range1(1, k), {1})}, {var(1, 1), var(1, 2), var(2, 1)}};
      break;
  }
  const auto& I = key.minor.I;
  const auto& J = key.minor.J;
  const bool in_range = std::all_of(I.begin(), I.end(), [n](int x) { return x <= n; }) &&
                        std::all_of(J.begin(), J.end(), [n](int x) { return x <= n; }) &&
                        std::all_of(key.wedge.begin(), key.wedge.end(), [n](int x) { return x < n * n; });
  if (!in_range || I.size() != static_cast<std::size_t>(k - 1) || J.size() != I.size()) return std::nullopt;
  if (normalize_wedge(key.wedge) == 0) return std::nullopt;
  return key;
}

HwvResult verify_hwv_nonzero(HwvLemma lemma, int n, int d) {
  const KoszulVector v = hwv_vector(lemma, n, d);
  const KoszulVector image = apply_minor_koszul(n, d, hwv_degree(lemma), v);
  HwvResult r;
  r.image_terms = image.size();
  r.nonzero = !image.empty();
  if (!r.nonzero) return r;
  if (auto key = hwv_expected_witness(lemma, n, d)) {
    if (auto it = image.find(*key); it != image.end()) {
      r.witness = it->first;
      r.coefficient = it->second;
      r.expected_witness = true;
      return r;
    }
  }
  r.witness = image.begin()->first;
  r.coefficient = image.begin()->second;
  return r;
}

KoszulVector transpose(const KoszulVector& v, int n) {
  KoszulVector out;
  for (const auto& [key, c] : v) {
    Wedge w;
    w.reserve(key.wedge.size());
    for (int x : key.wedge) w.push_back((x % n) * n + x / n);
    const int s = normalize_wedge(w);
    if (s == 0) continue;
    out[KoszulKey{{key.minor.J, key.minor.I}, std::move(w)}] += s > 0 ? c : Rational(-c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace flatrank
