#pragma once

// On-disk cache of flattening matrices.
//
// File format: one line of JSON metadata {kind, polynomial, n, d, p, rows,
// cols, nnz, basis_hash}, then one "row col num/den" line per entry.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "flatrank/flattening.hpp"

namespace flatrank {

struct CacheKey {
  FlatteningKind kind = FlatteningKind::full;
  std::string polynomial;
  // Fingerprint of the polynomial's coefficients; 0 when the id says it all.
  std::uint64_t polynomial_hash = 0;
  int n = 0;
  int d = 0;
  int p = 0;
  // Anything else that changes the matrix (shape, target rows, N).
  std::string extra;

  std::string filename() const;
};

std::uint64_t polynomial_fingerprint(const Polynomial& P);

void write_matrix(std::ostream& os, const FlatteningMatrix& F);

// Reads a matrix written by write_matrix. The basis is left empty; the
// stored basis hash is returned through stored_basis_hash.
FlatteningMatrix read_matrix(std::istream& is, std::uint64_t& stored_basis_hash);

class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const CacheKey& key) const;

  // The cached matrix, if present and built on the same basis; the basis is
  // attached to the result.
  std::optional<FlatteningMatrix> load(const CacheKey& key, const Basis& basis) const;
  void store(const CacheKey& key, const FlatteningMatrix& F) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace flatrank
