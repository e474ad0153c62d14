#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "flatrank/commands.hpp"
#include "flatrank/matrix_cache.hpp"

using namespace flatrank;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("flatrank-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

TEST_SUITE("cache_cli") {
  TEST_CASE("matrix file round trip") {
    const auto F = minor_koszul_matrix(3, 1, 1);
    std::stringstream ss;
    write_matrix(ss, F);
    std::uint64_t stored = 0;
    const auto G = read_matrix(ss, stored);
    CHECK(stored == F.basis_hash());
    CHECK(G.matrix.rows == F.matrix.rows);
    CHECK(G.matrix.cols == F.matrix.cols);
    CHECK(G.matrix.content_hash() == F.matrix.content_hash());
    CHECK(G.kind == F.kind);
    CHECK(G.n == 3);
  }

  TEST_CASE("cache load checks the basis") {
    TempDir tmp;
    const MatrixCache cache(tmp.path);
    const auto F = minor_koszul_matrix(3, 1, 1);
    CacheKey key;
    key.kind = FlatteningKind::minor;
    key.polynomial = "det";
    key.n = 3;
    key.d = 1;
    key.p = 1;
    CHECK(!cache.load(key, F.basis));
    cache.store(key, F);
    CHECK(std::filesystem::exists(cache.path_for(key)));
    const auto hit = cache.load(key, F.basis);
    REQUIRE(hit);
    CHECK(hit->matrix.content_hash() == F.matrix.content_hash());
    CHECK(hit->basis.hash() == F.basis_hash());
    CHECK(!cache.load(key, minor_koszul_basis(3, 1, 2)));
    CacheKey other = key;
    other.p = 2;
    CHECK(other.filename() != key.filename());
  }

  TEST_CASE("bound runs hit the cache and reproduce the certificate") {
    TempDir tmp;
    RunConfig cfg;
    cfg.cache_dir = tmp.path;
    BoundRequest req{"det", 4, BoundMethod::koszul_minor, 2, 1};
    const auto first = run_bound(req, cfg);
    const auto second = run_bound(req, cfg);
    CHECK(!first.cache_hit);
    CHECK(second.cache_hit);
    CHECK(first.certificate.rank == 560);
    CHECK(first.certificate.t == 15);
    CHECK(first.certificate.bound == 38);
    CHECK(first.to_json(false) == second.to_json(false));
    CHECK(first.to_json(false).dump() == second.to_json(false).dump());
  }

  TEST_CASE("default method selection") {
    RunConfig cfg;
    const auto pieri = run_bound({"perm", 3, std::nullopt, std::nullopt, std::nullopt}, cfg);
    CHECK(pieri.certificate.method == "pieri");
    CHECK(pieri.certificate.rank == 934);
    CHECK(pieri.certificate.t == 70);
    CHECK(pieri.certificate.bound == 14);
    const auto minor = run_bound({"det", 4, std::nullopt, std::nullopt, 1}, cfg);
    CHECK(minor.certificate.method == "koszul_minor");
    CHECK(minor.certificate.bound == 38);
    CHECK(minor.t_source == "C(n^2-1,p)");
    const auto full = run_bound({"perm", 2, std::nullopt, std::nullopt, 1}, cfg);
    CHECK(full.certificate.method == "koszul_full");
    CHECK(full.t_source == "computed");
  }

  TEST_CASE("exact and prime options agree on det3") {
    RunConfig exact;
    exact.exact = true;
    BoundRequest req{"det", 3, BoundMethod::koszul_full, 1, 2};
    const auto a = run_bound(req, exact);
    CHECK(a.certificate.rank == 315);
    CHECK(a.certificate.t == 28);
    CHECK(a.certificate.bound == 12);
    RunConfig prime;
    prime.prime = 1000003;
    CHECK(run_bound(req, prime).certificate.rank == 315);
  }

  TEST_CASE("usage errors") {
    RunConfig cfg;
    CHECK_THROWS_AS(run_bound({"perm", 4, BoundMethod::koszul_minor, 2, 1}, cfg), UsageError);
    CHECK_THROWS_AS(run_bound({"det", 4, BoundMethod::pieri, std::nullopt, std::nullopt}, cfg), UsageError);
    CHECK_THROWS_AS(run_bound({"det", 4, BoundMethod::koszul_minor, 2, 3}, cfg), UsageError);
    CHECK_THROWS_AS(run_bound({"nonsense", 3, std::nullopt, std::nullopt, std::nullopt}, cfg), UsageError);
    CHECK_THROWS_AS(resolve_polynomial("det", 9), UsageError);
    RunConfig bad;
    bad.prime = 15;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad.prime = 2;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad.prime = 1000003;
    CHECK_NOTHROW(bad.validate());
    bad.exact = true;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    RunConfig small;
    small.memory_cap_bytes = 10 << 20;
    CHECK_THROWS_AS(small.validate(), UsageError);
    RunConfig zero;
    zero.threads = 0;
    CHECK_THROWS_AS(zero.validate(), UsageError);
    CHECK(parse_bound_method("koszul-minor") == BoundMethod::koszul_minor);
    CHECK(parse_bound_method("koszul_full") == BoundMethod::koszul_full);
    CHECK_THROWS_AS(parse_bound_method("bogus"), UsageError);
  }

  TEST_CASE("polynomial from file") {
    TempDir tmp;
    const auto path = tmp.path / "poly.json";
    std::ofstream(path) << to_json(determinant_poly(3)).dump();
    CHECK(resolve_polynomial("file:" + path.string(), std::nullopt) == determinant_poly(3));
    const auto run = run_bound({"file:" + path.string(), std::nullopt, BoundMethod::koszul_full, 1, 2}, RunConfig{});
    CHECK(run.certificate.rank == 315);
    CHECK_THROWS(resolve_polynomial("file:" + (tmp.path / "missing.json").string(), std::nullopt));
  }

  TEST_CASE("decompose reports") {
    const auto r = run_decompose(6, 3, 2);
    CHECK(r.json.at("count") == 9);
    CHECK(r.json.at("f_times_binomial_sq").get<std::string>() == r.json.at("total_dim").dump());
    CHECK(!r.json.contains("warning"));
    CHECK(run_decompose(6, 3, 1).json.at("count") == 3);
    const auto small = run_decompose(3, 1, 2);
    CHECK(small.json.contains("warning"));
    CHECK(small.text.find("warning") != std::string::npos);
    CHECK_THROWS_AS(run_decompose(6, 3, 3), UsageError);
    CHECK_THROWS_AS(run_decompose(6, 0, 2), UsageError);
  }
}
