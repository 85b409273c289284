#include <doctest.h>
#include <unistd.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sumfree::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("sumfree_test_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("count table has one row") {
    const Run r = run({"count", "--n", "20", "--m", "7", "--format", "table"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header.find("count") != std::string::npos);
    CHECK(row.find("735") != std::string::npos);
  }

  TEST_CASE("records carry the schema fields and decimal strings") {
    const Run r = run({"partitions", "--k", "8", "--ell", "3"});
    REQUIRE(r.code == 0);
    const auto rec = nlohmann::json::parse(r.out);
    CHECK(rec["schema_version"] == 1);
    CHECK(rec["op"] == "partitions");
    CHECK(rec["result"]["count"] == "2");
    for (const char* key : {"params", "elapsed_ms", "version"}) CHECK(rec.contains(key));

    const Run big = run({"partitions", "--k", "300"});
    CHECK(nlohmann::json::parse(big.out)["result"]["count"] == "9253082936723602");
  }

  TEST_CASE("csv output") {
    const Run r = run({"count", "--n", "4", "--format", "csv"});
    CHECK(r.out == "m,count\n0,1\n1,4\n2,4\n");
  }

  TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"count"}).code == 2);
    CHECK(run({"count", "--n", "4", "--format", "xml"}).code == 2);
    CHECK(run({"freiman", "--set", "1,2"}).code == 2);
    CHECK(run({"count", "--n", "40", "--budget", "100"}).code == 3);
    CHECK(run({"enumerate", "--n", "30", "--limit", "5"}).code == 3);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("cache hits replay the payload byte for byte") {
    const auto cache = temp_path("cache.jsonl");
    const Run first = run({"--cache", cache.string(), "count", "--n", "18", "--m", "5"});
    const Run second = run({"--cache", cache.string(), "count", "--n", "18", "--m", "5"});
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    const Run other = run({"--cache", cache.string(), "count", "--n", "18", "--m", "5", "--convention", "distinct"});
    CHECK(other.out != first.out);

    std::ifstream in(cache);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
      const auto rec = nlohmann::json::parse(line);
      CHECK(rec.contains("fingerprint"));
      CHECK(rec.contains("timestamp"));
      ++lines;
    }
    CHECK(lines == 2);
    CHECK_FALSE(std::filesystem::exists(cache.string() + ".tmp." + std::to_string(::getpid())));
    std::filesystem::remove(cache);
  }

  TEST_CASE("sampling records embed the seed and are reproducible") {
    const Run a = run({"--seed", "7", "sample", "--n", "12", "--m", "3", "--count", "500"});
    const Run b = run({"--seed", "7", "sample", "--n", "12", "--m", "3", "--count", "500"});
    const auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
    CHECK(ja["params"]["seed"] == 7);
    CHECK(ja["result"] == jb["result"]);
  }

  TEST_CASE("config file supplies defaults that flags override") {
    const auto cfg = temp_path("settings.ini");
    {
      std::ofstream out(cfg);
      out << "format=csv\nthreads=1\n";
    }
    const Run from_file = run({"--config", cfg.string(), "partitions", "--k", "10"});
    CHECK(from_file.out.rfind("k,count", 0) == 0);
    const Run overridden = run({"--config", cfg.string(), "partitions", "--k", "10", "--format", "records"});
    CHECK(overridden.out.front() == '{');
    std::filesystem::remove(cfg);
  }

  TEST_CASE("verify small suite passes") {
    const Run r = run({"verify", "--suite", "small", "--only", "1,2,3,8"});
    CHECK(r.code == 0);
    const auto rec = nlohmann::json::parse(r.out);
    CHECK(rec["result"]["all_pass"] == true);
    CHECK(rec["result"]["rows"].size() == 4);
  }

  TEST_CASE("list parsing") {
    CHECK(sumfree::cli::parse_int_list("{1,2,5}") == std::vector<int>{1, 2, 5});
    CHECK(sumfree::cli::parse_int_list("3 4") == std::vector<int>{3, 4});
    CHECK(sumfree::cli::parse_int_list("{}").empty());
    CHECK_THROWS_AS(sumfree::cli::parse_int_list("1,x"), std::invalid_argument);
  }
}
