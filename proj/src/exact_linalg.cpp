#include "flatrank/exact_linalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace flatrank {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << x;
  return os.str();
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;  // root is the smallest node index
  }

 private:
  std::vector<std::size_t> parent_;
};

// One connected block: local rows/cols keep the global relative order.
template <typename Value>
struct Block {
  std::size_t num_rows = 0;
  std::size_t num_cols = 0;
  struct Item {
    std::uint32_t row;
    std::uint32_t col;
    Value value;
  };
  std::vector<Item> items;
};

template <typename Value>
std::vector<Block<Value>> split_components(std::size_t rows, std::size_t cols,
                                           std::vector<typename Block<Value>::Item> items) {
  UnionFind uf(rows + cols);
  for (const auto& it : items) uf.unite(it.row, rows + it.col);

  std::vector<std::int64_t> comp_of_root(rows + cols, -1);
  std::vector<std::uint32_t> local_index(rows + cols, 0);
  std::vector<Block<Value>> blocks;
  std::vector<char> touched(rows + cols, 0);
  for (const auto& it : items) {
    touched[it.row] = 1;
    touched[rows + it.col] = 1;
  }
  // Nodes in increasing global index: rows first, then columns.
  for (std::size_t node = 0; node < rows + cols; ++node) {
    if (!touched[node]) continue;
    const std::size_t root = uf.find(node);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<std::int64_t>(blocks.size());
      blocks.emplace_back();
    }
    auto& b = blocks[static_cast<std::size_t>(comp_of_root[root])];
    if (node < rows)
      local_index[node] = static_cast<std::uint32_t>(b.num_rows++);
    else
      local_index[node] = static_cast<std::uint32_t>(b.num_cols++);
  }
  for (auto& it : items) {
    auto& b = blocks[static_cast<std::size_t>(comp_of_root[uf.find(it.row)])];
    b.items.push_back({local_index[it.row], local_index[rows + it.col], std::move(it.value)});
  }
  return blocks;
}

struct ModEntry {
  std::uint32_t col;
  std::uint32_t val;
};

class MemoryBudget {
 public:
  explicit MemoryBudget(std::size_t cap) : cap_(cap) {}
  void charge(std::int64_t entries) {
    const std::int64_t bytes = entries * static_cast<std::int64_t>(kBytesPerEntry);
    const std::int64_t now = used_.fetch_add(bytes) + bytes;
    if (now > 0 && static_cast<std::size_t>(now) > cap_)
      throw std::runtime_error("sparse elimination: projected fill exceeds the memory cap of " + std::to_string(cap_) +
                               " bytes");
  }

 private:
  // Row storage plus the column incidence lists.
  static constexpr std::size_t kBytesPerEntry = sizeof(ModEntry) + sizeof(std::uint32_t);
  std::size_t cap_;
  std::atomic<std::int64_t> used_{0};
};

// Sparse Gaussian elimination over F_p with Markowitz pivot selection.
std::size_t eliminate_mod_p(const Block<std::uint32_t>& block, const PrimeField& F, MemoryBudget& budget) {
  const std::size_t R = block.num_rows;
  const std::size_t C = block.num_cols;
  std::vector<std::vector<ModEntry>> rows(R);
  for (const auto& it : block.items) rows[it.row].push_back({it.col, it.value});
  std::vector<std::vector<std::uint32_t>> col_rows(C);
  std::vector<std::int64_t> col_count(C, 0);
  for (std::size_t r = 0; r < R; ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end(), [](const ModEntry& a, const ModEntry& b) { return a.col < b.col; });
    for (const auto& e : row) {
      col_rows[e.col].push_back(static_cast<std::uint32_t>(r));
      ++col_count[e.col];
    }
  }
  std::int64_t charged = static_cast<std::int64_t>(block.items.size());
  budget.charge(charged);

  std::vector<char> row_done(R, 0);
  std::vector<char> col_done(C, 0);
  std::set<std::pair<std::int64_t, std::uint32_t>> queue;  // (count, col)
  for (std::size_t c = 0; c < C; ++c)
    if (col_count[c] > 0) queue.insert({col_count[c], static_cast<std::uint32_t>(c)});

  auto bump = [&](std::uint32_t c, std::int64_t delta) {
    if (!col_done[c]) queue.erase({col_count[c], c});
    col_count[c] += delta;
    if (!col_done[c] && col_count[c] > 0) queue.insert({col_count[c], c});
  };
  auto holds = [&](std::uint32_t r, std::uint32_t c) {
    if (row_done[r]) return false;
    const auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const ModEntry& e, std::uint32_t col) { return e.col < col; });
    return it != row.end() && it->col == c;
  };
  auto compact = [&](std::uint32_t c) {
    auto& lst = col_rows[c];
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    lst.erase(std::remove_if(lst.begin(), lst.end(), [&](std::uint32_t r) { return !holds(r, c); }), lst.end());
  };

  constexpr int kCandidates = 4;
  std::size_t rank = 0;
  std::vector<ModEntry> merged;
  while (!queue.empty()) {
    // Markowitz: among the sparsest columns pick the minimum (r-1)(c-1).
    std::int64_t best_cost = -1;
    std::uint32_t best_col = 0;
    std::uint32_t best_row = 0;
    int seen = 0;
    for (auto it = queue.begin(); it != queue.end() && seen < kCandidates; ++it, ++seen) {
      const std::uint32_t c = it->second;
      compact(c);
      std::uint32_t row_pick = 0;
      std::size_t row_len = SIZE_MAX;
      for (std::uint32_t r : col_rows[c]) {
        if (rows[r].size() < row_len) {
          row_len = rows[r].size();
          row_pick = r;
        }
      }
      const std::int64_t cost = static_cast<std::int64_t>(row_len - 1) * (it->first - 1);
      if (best_cost < 0 || cost < best_cost || (cost == best_cost && (c < best_col || (c == best_col && row_pick < best_row)))) {
        best_cost = cost;
        best_col = c;
        best_row = row_pick;
      }
    }

    const std::uint32_t pc = best_col;
    const std::uint32_t pr = best_row;
    const auto& prow = rows[pr];
    auto pit = std::lower_bound(prow.begin(), prow.end(), pc, [](const ModEntry& e, std::uint32_t col) { return e.col < col; });
    const std::uint64_t pinv = F.inv(pit->val);

    const std::vector<std::uint32_t> targets = col_rows[pc];
    for (std::uint32_t r : targets) {
      if (r == pr) continue;
      auto& row = rows[r];
      auto rit = std::lower_bound(row.begin(), row.end(), pc, [](const ModEntry& e, std::uint32_t col) { return e.col < col; });
      const std::uint64_t factor = F.mul(rit->val, pinv);
      merged.clear();
      merged.reserve(row.size() + prow.size());
      std::size_t a = 0, b = 0;
      while (a < row.size() || b < prow.size()) {
        if (b == prow.size() || (a < row.size() && row[a].col < prow[b].col)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || prow[b].col < row[a].col) {
          const auto v = static_cast<std::uint32_t>(F.sub(0, F.mul(factor, prow[b].val)));
          merged.push_back({prow[b].col, v});
          bump(prow[b].col, +1);
          col_rows[prow[b].col].push_back(r);
          ++b;
        } else {
          const auto v = static_cast<std::uint32_t>(F.sub(row[a].val, F.mul(factor, prow[b].val)));
          if (v != 0)
            merged.push_back({row[a].col, v});
          else
            bump(row[a].col, -1);
          ++a;
          ++b;
        }
      }
      const auto delta = static_cast<std::int64_t>(merged.size()) - static_cast<std::int64_t>(row.size());
      if (delta > 0) {
        budget.charge(delta);
        charged += delta;
      }
      row.swap(merged);
    }

    row_done[pr] = 1;
    for (const auto& e : prow) bump(e.col, -1);
    queue.erase({col_count[pc], pc});
    col_done[pc] = 1;
    col_rows[pc].clear();
    ++rank;
  }
  budget.charge(-charged);
  return rank;
}

// Fraction-free elimination on a dense integer matrix; returns the rank.
std::size_t bareiss_rank(std::vector<std::vector<BigInt>>& a) {
  const std::size_t R = a.size();
  if (R == 0) return 0;
  const std::size_t C = a[0].size();
  BigInt prev = 1;
  std::size_t r = 0;
  BigInt t;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t piv = r;
    while (piv < R && a[piv][c] == 0) ++piv;
    if (piv == R) continue;
    std::swap(a[piv], a[r]);
    const BigInt& p = a[r][c];
    for (std::size_t i = r + 1; i < R; ++i) {
      const BigInt lead = a[i][c];
      for (std::size_t j = c + 1; j < C; ++j) {
        // a[i][j] = (p * a[i][j] - lead * a[r][j]) / prev, exact
        mpz_mul(t.get_mpz_t(), p.get_mpz_t(), a[i][j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), a[r][j].get_mpz_t());
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::size_t dense_rational_rank(const Block<Rational>& block) {
  std::vector<std::vector<Rational>> q(block.num_rows, std::vector<Rational>(block.num_cols));
  for (const auto& it : block.items) q[it.row][it.col] = it.value;
  std::vector<std::vector<BigInt>> z(block.num_rows, std::vector<BigInt>(block.num_cols));
  for (std::size_t i = 0; i < block.num_rows; ++i) {
    BigInt l = 1;
    for (const auto& x : q[i])
      if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (std::size_t j = 0; j < block.num_cols; ++j) {
      if (q[i][j] == 0) continue;
      z[i][j] = q[i][j].get_num() * (l / q[i][j].get_den());
    }
  }
  return bareiss_rank(z);
}

template <typename Value, typename Fn>
std::vector<std::size_t> run_blocks(const std::vector<Block<Value>>& blocks, unsigned threads, Fn&& fn) {
  std::vector<std::size_t> ranks(blocks.size(), 0);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < blocks.size(); ++i) ranks[i] = fn(blocks[i]);
    return ranks;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < blocks.size(); i = next++) ranks[i] = fn(blocks[i]);
      } catch (...) {
        errors[w] = std::current_exception();
        next = blocks.size();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return ranks;
}

}  // namespace

std::uint64_t SparseMatrix::content_hash() const {
  constexpr unsigned long kMod = 2305843009213693951UL;  // 2^61 - 1
  std::uint64_t acc = splitmix(rows) ^ splitmix(cols * 31 + 7);
  std::uint64_t sum = 0;
  for (const auto& e : entries) {
    const std::uint64_t num = mpz_fdiv_ui(e.value.get_num_mpz_t(), kMod);
    const std::uint64_t den = mpz_fdiv_ui(e.value.get_den_mpz_t(), kMod);
    sum += splitmix(splitmix(splitmix((std::uint64_t{e.row} << 32) | e.col) ^ num) ^ den);
  }
  return splitmix(acc ^ sum);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s && composite; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
  if (modulus <= 2 || modulus >= (std::uint64_t{1} << 32))
    throw std::invalid_argument("PrimeField: modulus must be an odd prime below 2^32");
  if (!is_prime(modulus)) throw std::invalid_argument("PrimeField: " + std::to_string(modulus) + " is not prime");
}

std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("PrimeField: zero has no inverse");
  return powmod(a, p_ - 2, p_);
}

std::uint64_t PrimeField::reduce(const Rational& q) const {
  const std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
  if (den == 0) throw std::domain_error("denominator " + q.get_den().get_str() + " vanishes mod " + std::to_string(p_));
  const std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
  return mul(num, inv(den));
}

nlohmann::json RankCertificate::to_json(bool with_timing) const {
  nlohmann::json j = {{"rank", rank},
                      {"method", method == RankMethod::modular ? "modular" : "rational"},
                      {"primes", primes_used},
                      {"matrix_hash", hex64(matrix_hash)},
                      {"lower_bound_only", lower_bound_only},
                      {"components", components}};
  if (with_timing) j["elapsed_ms"] = elapsed.count();
  return j;
}

RankCertificate rank_mod_p(const SparseMatrix& M, const PrimeField& field, const RankOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Block<std::uint32_t>::Item> items;
  items.reserve(M.entries.size());
  for (const auto& e : M.entries) {
    if (e.row >= M.rows || e.col >= M.cols) throw std::out_of_range("matrix entry outside the declared shape");
    std::uint64_t v;
    try {
      v = field.reduce(e.value);
    } catch (const std::domain_error&) {
      throw std::domain_error("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") = " + to_string(e.value) +
                              " has a denominator divisible by " + std::to_string(field.modulus()));
    }
    if (v != 0) items.push_back({e.row, e.col, static_cast<std::uint32_t>(v)});
  }
  auto blocks = split_components<std::uint32_t>(M.rows, M.cols, std::move(items));
  MemoryBudget budget(opts.memory_cap_bytes);
  auto ranks = run_blocks(blocks, opts.threads, [&](const Block<std::uint32_t>& b) { return eliminate_mod_p(b, field, budget); });

  RankCertificate cert;
  cert.rank = std::accumulate(ranks.begin(), ranks.end(), std::size_t{0});
  cert.method = RankMethod::modular;
  cert.primes_used = {field.modulus()};
  cert.matrix_hash = M.content_hash();
  cert.components = blocks.size();
  cert.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return cert;
}

std::vector<std::uint64_t> random_primes(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 29, (std::uint64_t{1} << 30) - 1);
  std::vector<std::uint64_t> out;
  while (static_cast<int>(out.size()) < count) {
    std::uint64_t c = dist(rng) | 1;
    while (!is_prime(c)) c += 2;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

RankCertificate rank_rational(const SparseMatrix& M, const RationalRankOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const bool dense_ok = M.rows * M.cols <= opts.dense_guard;
  if (!dense_ok) {
    if (!opts.multi_prime)
      throw std::length_error("rank_rational: " + std::to_string(M.rows) + "x" + std::to_string(M.cols) +
                              " exceeds the dense guard; enable multi-prime mode");
    if (opts.num_primes < 2) throw std::invalid_argument("rank_rational: multi-prime mode needs at least two primes");
    RankCertificate cert;
    cert.method = RankMethod::modular;
    cert.lower_bound_only = true;
    for (std::uint64_t p : random_primes(opts.num_primes, opts.seed)) {
      auto c = rank_mod_p(M, PrimeField(p), opts.base);
      cert.rank = std::max(cert.rank, c.rank);
      cert.components = c.components;
      cert.primes_used.push_back(p);
    }
    cert.matrix_hash = M.content_hash();
    cert.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    return cert;
  }

  std::vector<Block<Rational>::Item> items;
  items.reserve(M.entries.size());
  for (const auto& e : M.entries) {
    if (e.row >= M.rows || e.col >= M.cols) throw std::out_of_range("matrix entry outside the declared shape");
    if (e.value != 0) items.push_back({e.row, e.col, e.value});
  }
  auto blocks = split_components<Rational>(M.rows, M.cols, std::move(items));
  auto ranks = run_blocks(blocks, opts.base.threads, [](const Block<Rational>& b) { return dense_rational_rank(b); });

  RankCertificate cert;
  cert.rank = std::accumulate(ranks.begin(), ranks.end(), std::size_t{0});
  cert.method = RankMethod::rational;
  cert.matrix_hash = M.content_hash();
  cert.components = blocks.size();
  cert.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return cert;
}

}  // namespace flatrank
