#include "flatrank/matrix_cache.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace flatrank {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

}  // namespace

std::string CacheKey::filename() const {
  std::ostringstream os;
  os << to_string(kind) << '|' << polynomial << '|' << polynomial_hash << '|' << n << '|' << d << '|' << p << '|' << extra;
  return "flatrank-" + to_string(kind) + "-" + hex(fnv1a(os.str())) + ".mat";
}

std::uint64_t polynomial_fingerprint(const Polynomial& P) { return fnv1a(to_json(P).dump()); }

void write_matrix(std::ostream& os, const FlatteningMatrix& F) {
  const nlohmann::json meta = {{"kind", to_string(F.kind)},
                               {"polynomial", F.polynomial_id},
                               {"n", F.n},
                               {"d", F.d},
                               {"p", F.p},
                               {"rows", F.matrix.rows},
                               {"cols", F.matrix.cols},
                               {"nnz", F.matrix.entries.size()},
                               {"basis_hash", hex(F.basis_hash())}};
  os << meta.dump() << '\n';
  for (const auto& e : F.matrix.entries)
    os << e.row << ' ' << e.col << ' ' << e.value.get_num().get_str() << '/' << e.value.get_den().get_str() << '\n';
}

FlatteningMatrix read_matrix(std::istream& is, std::uint64_t& stored_basis_hash) {
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("matrix file: missing header");
  const auto meta = nlohmann::json::parse(header);
  FlatteningMatrix F;
  const auto kind = meta.at("kind").get<std::string>();
  if (kind == "full")
    F.kind = FlatteningKind::full;
  else if (kind == "minor")
    F.kind = FlatteningKind::minor;
  else if (kind == "pieri")
    F.kind = FlatteningKind::pieri;
  else
    throw std::runtime_error("matrix file: unknown kind '" + kind + "'");
  F.polynomial_id = meta.at("polynomial").get<std::string>();
  F.n = meta.at("n").get<int>();
  F.d = meta.at("d").get<int>();
  F.p = meta.at("p").get<int>();
  F.matrix.rows = meta.at("rows").get<std::size_t>();
  F.matrix.cols = meta.at("cols").get<std::size_t>();
  const auto nnz = meta.at("nnz").get<std::size_t>();
  stored_basis_hash = std::stoull(meta.at("basis_hash").get<std::string>(), nullptr, 16);

  F.matrix.entries.reserve(nnz);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t r = 0, c = 0;
    std::string value;
    if (!(ls >> r >> c >> value)) throw std::runtime_error("matrix file: malformed entry line '" + line + "'");
    if (r >= F.matrix.rows || c >= F.matrix.cols) throw std::runtime_error("matrix file: entry outside the declared shape");
    F.matrix.entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), parse_rational(value)});
  }
  if (F.matrix.entries.size() != nnz) throw std::runtime_error("matrix file: entry count does not match the header");
  return F;
}

MatrixCache::MatrixCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path MatrixCache::path_for(const CacheKey& key) const { return dir_ / key.filename(); }

std::optional<FlatteningMatrix> MatrixCache::load(const CacheKey& key, const Basis& basis) const {
  const auto path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::uint64_t stored = 0;
  FlatteningMatrix F = read_matrix(in, stored);
  if (stored != basis.hash() || F.matrix.rows != basis.rows.size() || F.matrix.cols != basis.cols.size())
    return std::nullopt;
  F.basis = basis;
  return F;
}

void MatrixCache::store(const CacheKey& key, const FlatteningMatrix& F) const {
  std::filesystem::create_directories(dir_);
  const auto path = path_for(key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    write_matrix(out, F);
    if (!out) throw std::runtime_error("error while writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace flatrank
