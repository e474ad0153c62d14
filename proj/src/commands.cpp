#include "flatrank/commands.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "flatrank/flattening.hpp"
#include "flatrank/matrix_cache.hpp"
#include "flatrank/partitions.hpp"
#include "flatrank/schur_flattening.hpp"

namespace flatrank {

void RunConfig::validate() const {
  if (threads < 1) throw UsageError("--threads must be at least 1");
  if (memory_cap_bytes < kMinMemoryCap) throw UsageError("--memory-cap must be at least 256 MiB");
  if (prime && (*prime < 3 || *prime >= (std::uint64_t{1} << 32) || !is_prime(*prime)))
    throw UsageError("--prime must be an odd prime below 2^32");
  if (prime && exact) throw UsageError("--prime and --exact are mutually exclusive");
}

std::string to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::koszul_full: return "koszul_full";
    case BoundMethod::koszul_minor: return "koszul_minor";
    case BoundMethod::pieri: return "pieri";
  }
  return "?";
}

BoundMethod parse_bound_method(const std::string& s) {
  if (s == "koszul-full" || s == "koszul_full") return BoundMethod::koszul_full;
  if (s == "koszul-minor" || s == "koszul_minor") return BoundMethod::koszul_minor;
  if (s == "pieri") return BoundMethod::pieri;
  throw UsageError("unknown method '" + s + "' (expected koszul-full, koszul-minor or pieri)");
}

Polynomial resolve_polynomial(const std::string& poly, std::optional<int> n) {
  if (poly.rfind("file:", 0) == 0) {
    const std::string path = poly.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open polynomial file '" + path + "'");
    Polynomial P = polynomial_from_json(nlohmann::json::parse(in));
    if (n && *n != P.n()) throw UsageError("--n " + std::to_string(*n) + " does not match the file's n = " + std::to_string(P.n()));
    return P;
  }
  if (!n) throw UsageError("--n is required for --poly " + poly);
  if (*n < 1 || *n > 8) throw UsageError("--n must be between 1 and 8");
  if (poly == "det") return determinant_poly(*n);
  if (poly == "perm") return permanent_poly(*n);
  if (poly == "power") return variable_power(*n, {*n, *n}, *n);
  throw UsageError("unknown polynomial '" + poly + "' (expected det, perm, power or file:<path>)");
}

namespace {

std::string poly_id(const std::string& poly, int n) {
  return poly.rfind("file:", 0) == 0 ? poly : poly + std::to_string(n);
}

struct Plan {
  FlatteningKind kind;
  Basis basis;
  std::string extra;
  std::function<FlatteningMatrix()> build;
};

BigInt to_big(std::size_t x) { return BigInt(static_cast<unsigned long>(x)); }

// Exact rank of the comparison flattening; the components of power
// flattenings are tiny, so the whole-matrix dense guard is lifted.
RankCertificate exact_t(const SparseMatrix& M, const RunConfig& config) {
  RationalRankOptions ro{{config.threads, config.memory_cap_bytes}};
  ro.dense_guard = std::max(ro.dense_guard, M.rows * M.cols);
  return rank_rational(M, ro);
}

}  // namespace

nlohmann::json BoundRun::to_json(bool with_timing) const {
  nlohmann::json j = certificate.to_json(with_timing);
  j["t_source"] = t_source;
  j["rows"] = rows;
  j["cols"] = cols;
  j["nnz"] = nnz;
  j["references"] = flatrank::to_json(references);
  return j;
}

BoundRun run_bound(const BoundRequest& request, const RunConfig& config) {
  config.validate();
  const Polynomial P = resolve_polynomial(request.poly, request.n);
  const int n = P.n();
  const int e = P.degree();
  if (P.is_zero()) throw UsageError("the polynomial is zero");
  const std::string id = poly_id(request.poly, n);

  BoundMethod method = request.method.value_or(n == 3 && e == 3 ? BoundMethod::pieri
                                                : request.poly == "det" ? BoundMethod::koszul_minor
                                                                        : BoundMethod::koszul_full);
  int d = 0, p = 0;
  Plan plan;
  std::optional<SparseMatrix> t_matrix;
  BoundRun run;

  const unsigned threads = config.threads;
  switch (method) {
    case BoundMethod::pieri: {
      if (n != 3 || e != 3)
        throw UsageError("--method pieri uses the shapes pi_3 on 9 variables and needs a cubic with n = 3");
      if (request.d || request.p) throw UsageError("--d and --p do not apply to --method pieri");
      const Partition shape = pi_shape(3);
      const auto rows = pi_target_rows(3);
      plan.kind = FlatteningKind::pieri;
      plan.basis = pieri_basis(shape, rows, 9);
      plan.extra = shape.to_string() + "+rows1,5,9/N9";
      plan.build = [P, shape, rows, threads, id] { return pieri_flattening_matrix(P, shape, rows, 9, threads, id); };
      t_matrix = pieri_flattening_matrix(variable_power(3, {3, 3}, 3), shape, rows, 9, threads, "x33^3").matrix;
      run.t_source = "computed";
      break;
    }
    case BoundMethod::koszul_minor: {
      if (request.poly != "det") throw UsageError("--method koszul-minor is only defined for --poly det");
      d = request.d.value_or(n / 2);
      p = request.p.value_or(2);
      if (n < 2 || d < 1 || d > n - 1) throw UsageError("--method koszul-minor needs n >= 2 and 1 <= d <= n-1");
      if (p != 1 && p != 2) throw UsageError("--method koszul-minor supports --p 1 and --p 2");
      plan.kind = FlatteningKind::minor;
      plan.basis = minor_koszul_basis(n, d, p);
      plan.build = [n, d, p] { return minor_koszul_matrix(n, d, p); };
      run.t_source = "C(n^2-1,p)";
      break;
    }
    case BoundMethod::koszul_full: {
      d = request.d.value_or(e / 2);
      p = request.p.value_or(2);
      if (d < 1 || d > e - 1) throw UsageError("--method koszul-full needs 1 <= d <= degree-1");
      if (p < 0 || p > P.num_vars() - 1) throw UsageError("--method koszul-full needs 0 <= p <= n^2-1");
      plan.kind = FlatteningKind::full;
      plan.basis = full_koszul_basis(n, e, d, p);
      plan.build = [P, d, p, id] { return full_koszul_matrix(P, d, p, id); };
      t_matrix = full_koszul_matrix(variable_power(n, {1, 1}, e), d, p, "x11^" + std::to_string(e)).matrix;
      run.t_source = "computed";
      break;
    }
  }

  const CacheKey key{plan.kind, id, polynomial_fingerprint(P), n, d, p, plan.extra};
  std::optional<FlatteningMatrix> F;
  if (config.cache_dir) {
    MatrixCache cache(*config.cache_dir);
    run.cache_file = cache.path_for(key);
    F = cache.load(key, plan.basis);
    run.cache_hit = F.has_value();
    if (!F) {
      F = plan.build();
      cache.store(key, *F);
    }
  } else {
    F = plan.build();
  }
  if (F->basis_hash() != plan.basis.hash()) throw std::logic_error("flattening basis does not match its plan");

  const RankOptions ro{config.threads, config.memory_cap_bytes};
  RankCertificate rank;
  if (config.exact) {
    RationalRankOptions rro{ro};
    rank = rank_rational(F->matrix, rro);
  } else {
    rank = rank_mod_p(F->matrix, PrimeField(config.prime.value_or(kDefaultPrime)), ro);
  }

  BigInt t;
  std::optional<RankCertificate> t_cert;
  if (t_matrix) {
    t_cert = exact_t(*t_matrix, config);
    t = to_big(t_cert->rank);
  } else {
    t = binomial(static_cast<long>(n) * n - 1, p);
  }

  run.certificate = make_certificate(request.poly, to_string(method), n, d, p, rank, t);
  run.certificate.t_certificate = t_cert;
  run.rows = F->matrix.rows;
  run.cols = F->matrix.cols;
  run.nnz = F->matrix.entries.size();
  run.references = reference_bounds(std::max(n, 2), request.poly);
  return run;
}

DecomposeReport run_decompose(int n, int d, int p) {
  if (n < 2 || n > 20) throw UsageError("--n must be between 2 and 20");
  if (d < 1 || d > n - 1) throw UsageError("--d must satisfy 1 <= d <= n-1");
  if (p != 1 && p != 2) throw UsageError("--p must be 1 or 2");
  DecomposeReport r{n, d, p, {}, {}};
  const ModuleList image = candidate_image(n, d, p);
  const ModuleList dropped = length_dropped_image(n, d, p);
  const BigInt total = image.total_dimension(n);

  std::ostringstream os;
  os << "candidate image of det^{/\\" << p << "}_{" << d << "," << n - d << "}, n = " << n << '\n';
  nlohmann::json modules = nlohmann::json::array();
  for (const auto& m : image.entries()) {
    const BigInt da = schur_dim(m.a, n), db = schur_dim(m.b, n);
    os << "  S_" << m.a.to_string() << " A (x) S_" << m.b.to_string() << " B";
    if (m.multiplicity > 1) os << "  x" << m.multiplicity;
    os << "  dim " << da << " * " << db << " = " << BigInt(da * db * m.multiplicity) << '\n';
    modules.push_back({{"a", m.a.parts()},
                       {"b", m.b.parts()},
                       {"mult", m.multiplicity},
                       {"dim_a", to_json_number(da)},
                       {"dim_b", to_json_number(db)}});
  }
  os << "modules " << image.size() << ", total dimension " << total << '\n';
  r.json = {{"n", n}, {"d", d}, {"p", p}, {"modules", modules}, {"count", image.size()}, {"total_dim", to_json_number(total)}};
  if (p == 2 && d <= n - 2) {
    const Rational f = f_formula(n, d) * Rational(binomial(n, d) * binomial(n, d));
    os << "f(n,d) * C(n,d)^2 = " << to_string(f) << '\n';
    r.json["f_times_binomial_sq"] = to_string(f);
  }
  if (n < 5 || dropped.size() > 0) {
    std::ostringstream w;
    if (n < 5) w << "n = " << n << " is below the range n >= 5 of the general count; ";
    if (dropped.size() > 0)
      w << dropped.size() << " module(s) with a partition longer than n were dropped";
    else
      w << "no modules were dropped by the length filter";
    w << ", and the list is a candidate set whose presence in the image is not certified here";
    os << "warning: " << w.str() << '\n';
    r.json["warning"] = w.str();
  }
  r.text = os.str();
  return r;
}

}  // namespace flatrank
