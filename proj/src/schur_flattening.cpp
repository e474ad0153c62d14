#include "flatrank/schur_flattening.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>

namespace flatrank {

Tableau::Tableau(std::vector<std::vector<int>> columns) : cols_(std::move(columns)) {
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    if (cols_[c].empty()) throw std::invalid_argument("Tableau: empty column");
    if (c > 0 && cols_[c].size() > cols_[c - 1].size()) throw std::invalid_argument("Tableau: columns must weakly shorten");
  }
}

Tableau Tableau::from_rows(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<int>> cols;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r > 0 && rows[r].size() > rows[r - 1].size()) throw std::invalid_argument("Tableau: rows must weakly shorten");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (cols.size() <= c) cols.emplace_back();
      cols[c].push_back(rows[r][c]);
    }
  }
  return Tableau(std::move(cols));
}

Partition Tableau::shape() const {
  std::vector<int> lengths;
  for (const auto& c : cols_) lengths.push_back(static_cast<int>(c.size()));
  return Partition(lengths).conjugate();
}

bool Tableau::is_semistandard() const {
  for (std::size_t c = 0; c < cols_.size(); ++c) {
    for (std::size_t r = 0; r < cols_[c].size(); ++r) {
      if (r > 0 && cols_[c][r] <= cols_[c][r - 1]) return false;
      if (c > 0 && cols_[c][r] < cols_[c - 1][r]) return false;
    }
  }
  return true;
}

std::vector<int> Tableau::content() const {
  std::vector<int> out;
  for (const auto& c : cols_) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string Tableau::label() const {
  std::string out;
  const std::size_t rows = cols_.empty() ? 0 : cols_[0].size();
  for (std::size_t r = 0; r < rows; ++r) {
    if (r > 0) out += '|';
    for (std::size_t c = 0; c < cols_.size() && r < cols_[c].size(); ++c) out += (c ? "," : "") + std::to_string(cols_[c][r]);
  }
  return out;
}

namespace {

// Sorts every column ascending; returns the sign of the sort, 0 on a repeat.
int sort_columns(std::vector<std::vector<int>>& cols) {
  int sign = 1;
  for (auto& col : cols) {
    for (std::size_t i = 1; i < col.size(); ++i) {
      for (std::size_t j = i; j > 0 && col[j - 1] >= col[j]; --j) {
        if (col[j - 1] == col[j]) return 0;
        std::swap(col[j - 1], col[j]);
        sign = -sign;
      }
    }
  }
  return sign;
}

void add_scaled(TableauCombination& into, const TableauCombination& from, const Rational& scale) {
  for (const auto& [t, c] : from) {
    auto [it, inserted] = into.try_emplace(t, c * scale);
    if (!inserted) {
      it->second += c * scale;
      if (it->second == 0) into.erase(it);
    }
  }
}

}  // namespace

TableauCombination Straightener::straighten(const Tableau& filling) {
  auto cols = filling.columns();
  const int sign = sort_columns(cols);
  if (sign == 0) return {};
  const TableauCombination& sorted = straighten_sorted(Tableau(std::move(cols)));
  if (sign == 1) return sorted;
  TableauCombination out;
  add_scaled(out, sorted, -1);
  return out;
}

const TableauCombination& Straightener::straighten_sorted(const Tableau& t) {
  if (auto it = memo_.find(t); it != memo_.end()) return it->second;
  const auto& cols = t.columns();

  std::size_t vr = 0, vc = 0;
  bool found = false;
  for (std::size_t c = 0; c + 1 < cols.size() && !found; ++c) {
    for (std::size_t r = 0; r < cols[c + 1].size(); ++r) {
      if (cols[c][r] > cols[c + 1][r]) {
        vr = r;
        vc = c;
        found = true;
        break;
      }
    }
  }
  if (!found) return memo_.emplace(t, TableauCombination{{t, Rational(1)}}).first->second;

  // Garnir shuffle of X = column vc rows vr.. with Y = column vc+1 rows ..vr.
  std::vector<int> L(cols[vc].begin() + static_cast<std::ptrdiff_t>(vr), cols[vc].end());
  const std::size_t nx = L.size();
  L.insert(L.end(), cols[vc + 1].begin(), cols[vc + 1].begin() + static_cast<std::ptrdiff_t>(vr + 1));

  TableauCombination result;
  std::vector<char> pick(L.size(), 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(nx), 1);
  // prev_permutation over the 1/0 mask walks every nx-subset exactly once.
  do {
    bool identity = true;
    for (std::size_t i = 0; i < nx; ++i) identity = identity && pick[i];
    if (identity) continue;
    std::vector<int> order;
    for (std::size_t i = 0; i < L.size(); ++i)
      if (pick[i]) order.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!pick[i]) order.push_back(static_cast<int>(i));
    int inversions = 0;
    for (std::size_t a = 0; a < order.size(); ++a)
      for (std::size_t b = a + 1; b < order.size(); ++b)
        if (order[a] > order[b]) ++inversions;
    const int shuffle_sign = inversions % 2 == 0 ? 1 : -1;

    auto next = cols;
    next[vc].resize(vr);
    for (std::size_t i = 0; i < nx; ++i) next[vc].push_back(L[static_cast<std::size_t>(order[i])]);
    std::vector<int> right;
    for (std::size_t i = nx; i < order.size(); ++i) right.push_back(L[static_cast<std::size_t>(order[i])]);
    right.insert(right.end(), cols[vc + 1].begin() + static_cast<std::ptrdiff_t>(vr + 1), cols[vc + 1].end());
    next[vc + 1] = std::move(right);

    const int sort_sign = sort_columns(next);
    if (sort_sign == 0) continue;
    if (!(next < cols)) throw std::logic_error("straightening failed to decrease the column reading word");
    const TableauCombination& sub = straighten_sorted(Tableau(std::move(next)));
    add_scaled(result, sub, Rational(-shuffle_sign * sort_sign));
  } while (std::prev_permutation(pick.begin(), pick.end()));

  return memo_.emplace(t, std::move(result)).first->second;
}

TableauCombination straighten(const Tableau& filling) {
  Straightener s;
  return s.straighten(filling);
}

std::vector<Tableau> ssyt_enumerate(const Partition& shape, int N) {
  std::vector<Tableau> out;
  if (shape.empty()) {
    out.emplace_back();
    return out;
  }
  if (shape.length() > static_cast<std::size_t>(std::max(N, 0))) return out;
  const Partition heights = shape.conjugate();
  std::vector<std::vector<int>> rows(shape.length());
  for (std::size_t r = 0; r < shape.length(); ++r) rows[r].assign(static_cast<std::size_t>(shape[r]), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t r, std::size_t c) {
    if (r == rows.size()) {
      out.push_back(Tableau::from_rows(rows));
      return;
    }
    if (c == rows[r].size()) {
      rec(r + 1, 0);
      return;
    }
    int lo = 1;
    if (c > 0) lo = std::max(lo, rows[r][c - 1]);
    if (r > 0) lo = std::max(lo, rows[r - 1][c] + 1);
    // leave room for the strictly increasing entries below
    const int hi = N - (heights[c] - 1 - static_cast<int>(r));
    for (int v = lo; v <= hi; ++v) {
      rows[r][c] = v;
      rec(r, c + 1);
    }
  };
  rec(0, 0);
  return out;
}

namespace {

struct AddedBox {
  std::size_t row;
  std::size_t col;
};

std::vector<AddedBox> added_boxes(const Partition& shape, const std::vector<int>& target_rows) {
  std::vector<int> rows = target_rows;
  std::sort(rows.begin(), rows.end());
  std::vector<int> parts = shape.parts();
  std::vector<AddedBox> boxes;
  for (int r : rows) {
    if (r < 1) throw std::invalid_argument("pieri: target rows are 1-based");
    const auto ri = static_cast<std::size_t>(r - 1);
    if (parts.size() <= ri) parts.resize(ri + 1, 0);
    boxes.push_back({ri, static_cast<std::size_t>(parts[ri])});
    ++parts[ri];
  }
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i] > parts[i - 1])
      throw std::invalid_argument("pieri: adding boxes to rows of " + shape.to_string() + " does not give a partition");
  std::set<std::size_t> columns;
  for (const auto& b : boxes)
    if (!columns.insert(b.col).second)
      throw std::invalid_argument("pieri: two added boxes in column " + std::to_string(b.col + 1) +
                                  " (outside the multiplicity-one case)");
  return boxes;
}

}  // namespace

Partition pieri_target_shape(const Partition& shape, const std::vector<int>& target_rows) {
  std::vector<int> parts = shape.parts();
  for (const auto& b : added_boxes(shape, target_rows)) {
    if (parts.size() <= b.row) parts.resize(b.row + 1, 0);
    ++parts[b.row];
  }
  return Partition(parts);
}

Partition pi_shape(int n) {
  if (n < 2) throw std::invalid_argument("pi_shape: need n >= 2");
  std::vector<int> parts;
  for (int v = n - 1; v >= 1; --v) parts.insert(parts.end(), static_cast<std::size_t>(n + 1), v);
  return Partition(parts);
}

std::vector<int> pi_target_rows(int n) {
  if (n < 2) throw std::invalid_argument("pi_target_rows: need n >= 2");
  std::vector<int> rows;
  for (int i = 0; i < n; ++i) rows.push_back(1 + i * (n + 1));
  return rows;
}

Basis pieri_basis(const Partition& shape, const std::vector<int>& target_rows, int N) {
  const Partition target = pieri_target_shape(shape, target_rows);
  Basis basis;
  for (const auto& t : ssyt_enumerate(target, N)) basis.rows.push_back(t.label());
  for (const auto& t : ssyt_enumerate(shape, N)) basis.cols.push_back(t.label());
  return basis;
}

FlatteningMatrix pieri_flattening_matrix(const Polynomial& phi, const Partition& shape, const std::vector<int>& target_rows,
                                         int N, unsigned threads, std::string polynomial_id) {
  if (phi.num_vars() != N) throw std::invalid_argument("pieri: N must equal the number of variables of phi");
  if (static_cast<std::size_t>(phi.degree()) != target_rows.size())
    throw std::invalid_argument("pieri: degree of phi must equal the number of added boxes");
  const auto boxes = added_boxes(shape, target_rows);
  const Partition target = pieri_target_shape(shape, target_rows);

  const auto domain = ssyt_enumerate(shape, N);
  const auto codomain = ssyt_enumerate(target, N);
  std::map<Tableau, std::uint32_t> row_of;
  for (std::size_t i = 0; i < codomain.size(); ++i) row_of.emplace(codomain[i], static_cast<std::uint32_t>(i));

  // (labels of the variables with multiplicity, coefficient) per monomial
  std::vector<std::pair<std::vector<int>, Rational>> monos;
  for (const auto& [e, c] : phi.terms()) {
    std::vector<int> labels;
    for (std::size_t k = 0; k < e.size(); ++k) labels.insert(labels.end(), static_cast<std::size_t>(e[k]), static_cast<int>(k) + 1);
    monos.emplace_back(std::move(labels), c);
  }

  using Column = std::vector<std::pair<std::uint32_t, Rational>>;
  std::vector<Column> columns(domain.size());

  auto build_column = [&](std::size_t ci, Straightener& st) {
    const Tableau& T = domain[ci];
    const std::vector<int> base_content = T.content();
    std::map<std::uint32_t, Rational> acc;
    for (const auto& [labels, coeff] : monos) {
      std::vector<int> expected = base_content;
      expected.insert(expected.end(), labels.begin(), labels.end());
      std::sort(expected.begin(), expected.end());
      std::vector<int> arrangement = labels;  // sorted, so this walks all distinct arrangements
      do {
        auto cols = T.columns();
        for (std::size_t b = 0; b < boxes.size(); ++b) {
          if (cols.size() <= boxes[b].col) cols.resize(boxes[b].col + 1);
          if (cols[boxes[b].col].size() != boxes[b].row) throw std::logic_error("pieri: added box is not at a column bottom");
          cols[boxes[b].col].push_back(arrangement[b]);
        }
        for (const auto& [t, c] : st.straighten(Tableau(std::move(cols)))) {
          if (t.content() != expected) throw std::logic_error("pieri: straightening changed the content");
          auto [it, inserted] = acc.try_emplace(row_of.at(t), c * coeff);
          if (!inserted) it->second += c * coeff;
        }
      } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    }
    for (auto& [r, v] : acc)
      if (v != 0) columns[ci].emplace_back(r, std::move(v));
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(domain.size())));
  if (workers == 1) {
    Straightener st;
    for (std::size_t ci = 0; ci < domain.size(); ++ci) build_column(ci, st);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          Straightener st;
          for (std::size_t ci = w; ci < domain.size(); ci += workers) build_column(ci, st);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  FlatteningMatrix F;
  F.kind = FlatteningKind::pieri;
  F.polynomial_id = std::move(polynomial_id);
  F.n = phi.n();
  F.d = phi.degree();
  F.p = 0;
  for (const auto& t : codomain) F.basis.rows.push_back(t.label());
  for (const auto& t : domain) F.basis.cols.push_back(t.label());
  F.matrix.rows = codomain.size();
  F.matrix.cols = domain.size();
  for (std::size_t ci = 0; ci < columns.size(); ++ci)
    for (auto& [r, v] : columns[ci]) F.matrix.entries.push_back({r, static_cast<std::uint32_t>(ci), std::move(v)});
  return F;
}

}  // namespace flatrank
