#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "sumfree/bounds.hpp"
#include "sumfree/core.hpp"
#include "sumfree/enumeration.hpp"
#include "sumfree/partitions.hpp"
#include "sumfree/sampling.hpp"
#include "sumfree/sumsets.hpp"
#include "sumfree/verify.hpp"

#ifndef SUMFREE_VERSION
#define SUMFREE_VERSION "0.0.0"
#endif

namespace sumfree::cli {

using Json = nlohmann::ordered_json;

std::vector<int> parse_int_list(const std::string& text) {
  std::string cleaned;
  for (char ch : text) cleaned += (ch == '{' || ch == '}' || ch == ',') ? ' ' : ch;
  std::istringstream in(cleaned);
  std::vector<int> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    const int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad integer '" + token + "'");
    out.push_back(v);
  }
  return out;
}

namespace {

Ratio parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) return Ratio(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Ratio(std::stoll(text));
  const std::string digits = text.substr(dot + 1);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < digits.size(); ++i) den *= 10;
  const std::int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
  return Ratio(whole * den + std::stoll(digits), den);
}

IntSet set_from(const std::string& text) {
  const std::vector<int> v = parse_int_list(text);
  return IntSet::of(std::span<const int>(v));
}

Json set_json(const IntSet& s) { return s.to_string(); }

std::string dec(const BigCount& v) { return to_decimal(v); }

Json log_value_json(const LogValue& v) {
  Json j;
  j["log"] = v.is_zero() ? Json() : Json(v.log());
  j["value"] = v.to_string();
  return j;
}

unsigned parse_strata(const std::string& text) {
  unsigned fields = kStrataNone;
  std::string cleaned = text;
  for (char& ch : cleaned) ch = ch == ',' ? ' ' : ch;
  std::istringstream in(cleaned);
  std::string f;
  while (in >> f) {
    if (f == "ell") fields |= kStrataEll;
    else if (f == "k") fields |= kStrataK;
    else if (f == "a") fields |= kStrataA;
    else if (f == "odd") fields |= kStrataOdd;
    else throw std::invalid_argument("unknown stratum '" + f + "' (ell,k,a,odd)");
  }
  return fields;
}

struct Globals {
  std::string format = "records";
  int threads = 0;
  std::uint64_t budget = 0;  // 0: each operation's default
  std::uint64_t seed = 1;
  std::string cache;

  SearchOptions search() const {
    SearchOptions s;
    s.threads = threads;
    if (budget != 0) s.node_budget = budget;
    return s;
  }
  std::uint64_t partition_budget() const { return budget != 0 ? budget : kDefaultBudget; }
};

struct Outcome {
  Json params;
  std::function<Json()> compute;
};

using Action = std::function<Outcome()>;

// ---------------------------------------------------------------- rendering

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

std::vector<Json> rows_of(const Json& result) {
  if (result.contains("rows")) return {result["rows"].begin(), result["rows"].end()};
  Json flat = Json::object();
  for (const auto& [k, v] : result.items()) flat[k] = v;
  return {flat};
}

std::vector<std::string> columns_of(const std::vector<Json>& rows) {
  std::vector<std::string> cols;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.items()) {
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    }
  }
  return cols;
}

void render_csv(const Json& result, std::ostream& out) {
  const auto rows = rows_of(result);
  const auto cols = columns_of(rows);
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << quote(cols[i]);
  out << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "," : "") << quote(r.contains(cols[i]) ? cell(r[cols[i]]) : "");
    }
    out << "\n";
  }
}

void render_table(const Json& result, std::ostream& out) {
  const auto rows = rows_of(result);
  const auto cols = columns_of(rows);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : cols) width.push_back(c.size());
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      line.push_back(r.contains(cols[i]) ? cell(r[cols[i]]) : "");
      width[i] = std::max(width[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto print = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << line[i];
    }
    out << "\n";
  };
  print(cols);
  for (const auto& line : cells) print(line);
  if (result.contains("rows")) {
    for (const auto& [k, v] : result.items()) {
      if (k != "rows") out << k << ": " << cell(v) << "\n";
    }
  }
}

// ---------------------------------------------------------------- cache

class Cache {
 public:
  explicit Cache(std::filesystem::path path) : path_(std::move(path)) {}

  std::optional<Json> find(const std::string& fingerprint) const {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Json rec = Json::parse(line, nullptr, false);
      if (rec.is_discarded()) continue;
      if (rec.value("fingerprint", "") == fingerprint) return rec;
    }
    return std::nullopt;
  }

  void store(const Json& rec) const {
    std::string existing;
    {
      std::ifstream in(path_, std::ios::binary);
      existing.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    if (!existing.empty() && existing.back() != '\n') existing += '\n';
    const std::filesystem::path tmp = path_.string() + ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << existing << rec.dump() << "\n";
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, path_);
  }

 private:
  std::filesystem::path path_;
};

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json make_record(const std::string& op, const Json& params, const Json& result, double elapsed_ms) {
  Json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["op"] = op;
  rec["params"] = params;
  rec["result"] = result;
  rec["elapsed_ms"] = elapsed_ms;
  rec["version"] = SUMFREE_VERSION;
  return rec;
}

void emit(const Json& record, const std::string& format, std::ostream& out) {
  if (format == "records") out << record.dump() << "\n";
  else if (format == "csv") render_csv(record["result"], out);
  else render_table(record["result"], out);
}

// ---------------------------------------------------------------- commands

struct Registry {
  std::vector<std::pair<CLI::App*, Action>> actions;
  void add(CLI::App* sub, Action a) { actions.emplace_back(sub, std::move(a)); }
};

void add_count(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    int n = 0, m = 0;
    std::string convention = "equal", universe, stratify, method = "parallel";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("count", "Count sum-free subsets of [n]");
  sub->add_option("--n", o->n, "ground set [n]")->required()->check(CLI::Range(0, kMaxSearchN));
  auto* m_opt = sub->add_option("--m", o->m, "restrict to sets of this size")->check(CLI::NonNegativeNumber);
  sub->add_option("--convention", o->convention, "equal|distinct summands")->check(CLI::IsMember({"equal", "distinct"}));
  sub->add_option("--universe", o->universe, "restrict to a subset of [n], e.g. 1,3,5");
  sub->add_option("--stratify", o->stratify, "comma list of ell,k,a,odd");
  sub->add_option("--method", o->method, "parallel|serial|oracle")
      ->check(CLI::IsMember({"parallel", "serial", "oracle"}));
  reg.add(sub, [o, m_opt, &g] {
    CountQuery q;
    q.n = o->n;
    if (m_opt->count()) q.m = o->m;
    q.convention = Convention::parse(o->convention);
    if (!o->universe.empty()) {
      const auto v = parse_int_list(o->universe);
      q.universe = IntSet(o->n, v);
    }
    q.stratify = parse_strata(o->stratify);
    Outcome out;
    out.params = {{"n", q.n},
                  {"m", q.m ? Json(*q.m) : Json()},
                  {"convention", o->convention},
                  {"universe", q.universe ? set_json(*q.universe) : Json()},
                  {"stratify", o->stratify},
                  {"method", o->method}};
    out.compute = [o, q, &g]() -> Json {
      CountResult r;
      if (o->method == "oracle") r = count_oracle(q);
      else if (o->method == "serial") r = count_sum_free_serial(q, g.search());
      else r = count_sum_free(q, g.search());
      Json rows = Json::array();
      if (q.stratify != kStrataNone) {
        for (const auto& [key, c] : r.strata) {
          Json row;
          row["m"] = key.size;
          if (q.stratify & kStrataEll) row["ell"] = key.ell;
          if (q.stratify & kStrataK) row["k"] = half_integer_string(key.twice_k);
          if (q.stratify & kStrataA) {
            row["a"] = key.twice_a == StrataKey::kUndefined ? Json() : Json(half_integer_string(key.twice_a));
          }
          if (q.stratify & kStrataOdd) row["odd"] = key.odd == 1;
          row["count"] = dec(c);
          rows.push_back(row);
        }
      } else if (q.m) {
        rows.push_back({{"n", q.n}, {"m", *q.m}, {"convention", o->convention}, {"count", dec(r.total)}});
      } else {
        for (const auto& [m, c] : r.by_size) rows.push_back({{"m", m}, {"count", dec(c)}});
      }
      return {{"total", dec(r.total)}, {"method", to_string(r.method)}, {"rows", rows}};
    };
    return out;
  });
}

void add_enumerate(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    int n = 0, m = 0;
    std::string convention = "equal";
    std::uint64_t limit = 1'000'000;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("enumerate", "List sum-free subsets of [n]");
  sub->add_option("--n", o->n)->required()->check(CLI::Range(0, kMaxSearchN));
  auto* m_opt = sub->add_option("--m", o->m)->check(CLI::NonNegativeNumber);
  sub->add_option("--convention", o->convention)->check(CLI::IsMember({"equal", "distinct"}));
  sub->add_option("--limit", o->limit, "refuse to stream more sets than this");
  reg.add(sub, [o, m_opt, &g] {
    CountQuery q;
    q.n = o->n;
    if (m_opt->count()) q.m = o->m;
    q.convention = Convention::parse(o->convention);
    Outcome out;
    out.params = {{"n", q.n}, {"m", q.m ? Json(*q.m) : Json()}, {"convention", o->convention}};
    out.compute = [o, q, &g]() -> Json {
      Json rows = Json::array();
      enumerate_sum_free(
          q, [&](const IntSet& s) { rows.push_back({{"set", s.to_string()}}); }, o->limit, g.search());
      return {{"count", rows.size()}, {"rows", rows}};
    };
    return out;
  });
}

void add_strata(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    int n = 0, m = 0;
    std::string convention = "equal";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("strata", "Joint (ell, k) counts of sum-free m-sets");
  sub->add_option("--n", o->n)->required()->check(CLI::Range(0, kMaxSearchN));
  sub->add_option("--m", o->m)->required()->check(CLI::NonNegativeNumber);
  sub->add_option("--convention", o->convention)->check(CLI::IsMember({"equal", "distinct"}));
  reg.add(sub, [o, &g] {
    Outcome out;
    out.params = {{"n", o->n}, {"m", o->m}, {"convention", o->convention}};
    out.compute = [o, &g]() -> Json {
      const StratifiedCounts sc = stratified_counts(o->n, o->m, Convention::parse(o->convention), g.search());
      Json rows = Json::array();
      for (const auto& [c, count] : sc.joint) {
        auto it = sc.odd_only.find(c);
        rows.push_back({{"ell", c.ell},
                        {"k", half_integer_string(c.twice_k)},
                        {"count", dec(count)},
                        {"odd_only", it == sc.odd_only.end() ? "0" : dec(it->second)}});
      }
      return {{"total", dec(sc.total)}, {"rows", rows}};
    };
    return out;
  });
}

void add_window(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    int n = 0, m = 0, a = 0;
    double c = 0.05;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("window", "Sum-free probability of a random m-subset of the top window");
  sub->add_option("--n", o->n)->required()->check(CLI::Range(1, kMaxSearchN));
  sub->add_option("--m", o->m)->required()->check(CLI::PositiveNumber);
  auto* a_opt = sub->add_option("--a", o->a, "window extension (default floor(c n^2/m^2))")->check(CLI::NonNegativeNumber);
  sub->add_option("--c", o->c, "constant for the default a and the lower bound");
  reg.add(sub, [o, a_opt, &g] {
    const bool derived = a_opt->count() == 0;
    const int a = derived ? static_cast<int>(std::floor(o->c * o->n * o->n / (static_cast<double>(o->m) * o->m))) : o->a;
    Outcome out;
    out.params = {{"n", o->n}, {"m", o->m}, {"a", a}, {"c", derived ? Json(o->c) : Json()}};
    out.compute = [o, a, derived, &g]() -> Json {
      const WindowCount w = count_in_window(o->n, a, o->m, g.search());
      return {{"n", o->n},
              {"m", o->m},
              {"a", a},
              {"window", w.universe.to_string()},
              {"count", dec(w.count)},
              {"subsets", dec(w.subsets)},
              {"probability", w.probability},
              {"lower_bound", derived ? Json(std::exp(-o->c * o->n / (2.0 * o->m))) : Json()}};
    };
    return out;
  });
}

void add_partitions(CLI::App& app, Registry& reg, const Globals&) {
  struct Opts {
    int k = 0, ell = 0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("partitions", "p(k), or p*_ell(k) with --ell");
  sub->add_option("--k", o->k)->required()->check(CLI::NonNegativeNumber);
  auto* ell_opt = sub->add_option("--ell", o->ell, "number of distinct parts")->check(CLI::NonNegativeNumber);
  reg.add(sub, [o, ell_opt] {
    Outcome out;
    const bool distinct = ell_opt->count() != 0;
    out.params = {{"k", o->k}, {"ell", distinct ? Json(o->ell) : Json()}};
    out.compute = [o, distinct]() -> Json {
      if (distinct) return {{"k", o->k}, {"ell", o->ell}, {"count", dec(distinct_partition_count(o->k, o->ell))}};
      const BigCount p = partition_count(o->k);
      return {{"k", o->k},
              {"count", dec(p)},
              {"hardy_ramanujan_ratio", o->k >= 1 ? Json(hardy_ramanujan_ratio(o->k, p)) : Json()}};
    };
    return out;
  });
}

void add_restricted(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    int k = 0, ell = 0, cap = 0, universe_cap = 0, n = 0, m = 0;
    bool serial = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand(
      "restricted", "Distinct-part partitions with |S+S| and part caps, or (--n --m --cap) m-subsets of [n] with small sumset");
  auto* k_opt = sub->add_option("--k", o->k)->check(CLI::NonNegativeNumber);
  auto* ell_opt = sub->add_option("--ell", o->ell)->check(CLI::NonNegativeNumber);
  auto* cap_opt = sub->add_option("--cap", o->cap, "max |S+S|")->check(CLI::NonNegativeNumber);
  auto* ucap_opt = sub->add_option("--universe-cap", o->universe_cap, "max part")->check(CLI::NonNegativeNumber);
  auto* n_opt = sub->add_option("--n", o->n)->check(CLI::NonNegativeNumber);
  auto* m_opt = sub->add_option("--m", o->m)->check(CLI::NonNegativeNumber);
  sub->add_flag("--serial", o->serial, "use the single-threaded reference");
  n_opt->excludes(k_opt)->excludes(ell_opt)->excludes(ucap_opt);
  reg.add(sub, [=, &g] {
    Outcome out;
    if (n_opt->count()) {
      if (!m_opt->count() || !cap_opt->count()) throw std::invalid_argument("--n needs --m and --cap");
      out.params = {{"n", o->n}, {"m", o->m}, {"cap", o->cap}};
      out.compute = [o, &g]() -> Json {
        return {{"n", o->n}, {"m", o->m}, {"cap", o->cap},
                {"count", dec(count_small_sumset_sets(o->n, o->m, o->cap, g.partition_budget()))}};
      };
      return out;
    }
    if (!k_opt->count() || !ell_opt->count()) throw std::invalid_argument("restricted needs --k and --ell, or --n --m --cap");
    PartitionQuery q{o->k, o->ell, std::nullopt, std::nullopt};
    if (cap_opt->count()) q.sumset_cap = o->cap;
    if (ucap_opt->count()) q.universe_cap = o->universe_cap;
    out.params = {{"k", q.k},
                  {"ell", q.ell},
                  {"cap", q.sumset_cap ? Json(*q.sumset_cap) : Json()},
                  {"universe_cap", q.universe_cap ? Json(*q.universe_cap) : Json()}};
    out.compute = [o, q, &g]() -> Json {
      const BigCount c =
          o->serial ? count_restricted_serial(q, g.partition_budget()) : count_restricted(q, g.partition_budget());
      return {{"k", q.k}, {"ell", q.ell}, {"count", dec(c)}};
    };
    return out;
  });
}

void add_sumset(CLI::App& app, Registry& reg, const Globals&) {
  struct Opts {
    std::string a, b;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("sumset", "A+B, its span and the doubling of A");
  sub->add_option("--a", o->a, "set, e.g. 1,2,5")->required();
  auto* b_opt = sub->add_option("--b", o->b, "second set (default A)");
  reg.add(sub, [o, b_opt] {
    const IntSet a = set_from(o->a);
    const IntSet b = b_opt->count() ? set_from(o->b) : a;
    Outcome out;
    out.params = {{"a", a.to_string()}, {"b", b.to_string()}};
    out.compute = [a, b]() -> Json {
      const IntSet s = sumset(a, b);
      return {{"sumset", s.to_string()},
              {"size", s.size()},
              {"span", s.empty() ? Json() : Json(span(s))},
              {"doubling", a.empty() ? Json() : Json(doubling(a).to_string())}};
    };
    return out;
  });
}

void add_freiman(CLI::App& app, Registry& reg, const Globals&) {
  auto text = std::make_shared<std::string>();
  auto* sub = app.add_subcommand("freiman", "Shortest progression covering S when |S+S| <= 3|S|-4");
  sub->add_option("--set", *text)->required();
  reg.add(sub, [text] {
    const IntSet s = set_from(*text);
    Outcome out;
    out.params = {{"set", s.to_string()}};
    out.compute = [s]() -> Json {
      const auto cover = freiman_cover(s);
      const auto k = static_cast<std::int64_t>(s.size());
      const auto ss = static_cast<std::int64_t>(sumset(s, s).size());
      return {{"set", s.to_string()},
              {"size", k},
              {"sumset_size", ss},
              {"in_regime", ss <= 3 * k - 4},
              {"allowed_length", ss - k + 1},
              {"first", cover ? Json(cover->first) : Json()},
              {"difference", cover ? Json(cover->difference) : Json()},
              {"length", cover ? Json(cover->length) : Json()}};
    };
    return out;
  });
}

void add_bset(CLI::App& app, Registry& reg, const Globals&) {
  struct Opts {
    std::string set, delta = "0";
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("bset", "Shifts y with |(S+y) \\ (S+S)| <= delta |S|");
  sub->add_option("--set", o->set)->required();
  sub->add_option("--delta", o->delta, "rational in [0,1), e.g. 1/4");
  reg.add(sub, [o] {
    const IntSet s = set_from(o->set);
    const Ratio delta = parse_ratio(o->delta);
    Outcome out;
    out.params = {{"set", s.to_string()}, {"delta", delta.to_string()}};
    out.compute = [s, delta]() -> Json {
      const auto b = b_set({s, delta});
      const auto ss = static_cast<std::int64_t>(sumset(s, s).size());
      Json members = Json::array();
      for (auto y : b) members.push_back(y);
      return {{"members", members},
              {"size", b.size()},
              {"sumset_size", ss},
              {"bound", delta.num < delta.den ? Json(Ratio(ss * delta.den, delta.den - delta.num).to_string()) : Json()}};
    };
    return out;
  });
}

void add_janson(CLI::App& app, Registry& reg, const Globals&) {
  struct Opts {
    int n = 0, m = 0;
    std::string set;
    bool serial = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("janson", "mu, Delta and the Janson bound for the odd-pair family of S");
  sub->add_option("--n", o->n)->required()->check(CLI::PositiveNumber);
  sub->add_option("--set", o->set, "S, a subset of [n]")->required();
  sub->add_option("--m", o->m, "size of the random subset of odd numbers")->required()->check(CLI::NonNegativeNumber);
  sub->add_flag("--serial", o->serial);
  reg.add(sub, [o] {
    const auto v = parse_int_list(o->set);
    const IntSet s(o->n, v);
    Outcome out;
    out.params = {{"n", o->n}, {"set", s.to_string()}, {"m", o->m}};
    out.compute = [o, s]() -> Json {
      const JansonInput in = schur_pair_family(o->n, s, o->m);
      const JansonQuantities jq = o->serial ? janson_quantities_serial(in) : janson_quantities(in);
      return {{"family_size", in.family.size()},
              {"ground_size", in.ground_size},
              {"mu", jq.mu.is_zero() ? 0.0 : jq.mu.value()},
              {"delta", jq.delta.is_zero() ? 0.0 : jq.delta.value()},
              {"bound", log_value_json(jq.bound)}};
    };
    return out;
  });
}

void add_bounds(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    std::string theorem;
    RhsParams p;
    bool empirical = false;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("bounds", "Evaluate a bound (CEthm, S+S, S+S2, parts, conj) or C*(n,m) with --empirical");
  sub->add_option("--theorem", o->theorem);
  sub->add_option("--n", o->p.n);
  sub->add_option("--m", o->p.m);
  sub->add_option("--C", o->p.C);
  sub->add_option("--k", o->p.k);
  sub->add_option("--ell", o->p.ell);
  sub->add_option("--c", o->p.c);
  sub->add_option("--delta", o->p.delta);
  sub->add_option("--lambda", o->p.lambda);
  sub->add_option("--N", o->p.N);
  sub->add_flag("--empirical", o->empirical, "count sum-free m-subsets of [n] and report C*");
  reg.add(sub, [o, &g] {
    Outcome out;
    const RhsParams p = o->p;
    if (o->empirical) {
      const int n = static_cast<int>(p.n), m = static_cast<int>(p.m);
      out.params = {{"n", n}, {"m", m}, {"convention", "equal"}};
      out.compute = [n, m, &g]() -> Json {
        CountQuery q;
        q.n = n;
        q.m = m;
        const BigCount c = count_sum_free(q, g.search()).total;
        const auto cstar = empirical_constant(n, m, c);
        return {{"n", n},
                {"m", m},
                {"count", dec(c)},
                {"binom", dec(binomial((n + 1) / 2, m))},
                {"C_star", cstar ? Json(*cstar) : Json()}};
      };
      return out;
    }
    if (o->theorem.empty()) throw std::invalid_argument("bounds needs --theorem or --empirical");
    const Theorem t = parse_theorem(o->theorem);
    out.params = {{"theorem", std::string(theorem_name(t))}, {"n", p.n}, {"m", p.m}, {"C", p.C}, {"k", p.k},
                  {"ell", p.ell}, {"c", p.c}, {"delta", p.delta}, {"lambda", p.lambda}, {"N", p.N}};
    out.compute = [t, p]() -> Json {
      const LogValue rhs = theorem_rhs(t, p);
      return {{"theorem", std::string(theorem_name(t))},
              {"log_rhs", rhs.is_zero() ? Json() : Json(rhs.log())},
              {"rhs", rhs.to_string()}};
    };
    return out;
  });
}

void add_inequalities(CLI::App& app, Registry& reg, const Globals&) {
  struct Opts {
    long a = 0, b = 0, c = 0, d = 0;
    double ga = 0, gb = 0, constant = 2.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("inequalities", "Binomial shrink inequalities for (a,b,c,d), or the Gamma-sum bound");
  auto* a_opt = sub->add_option("--a", o->a);
  sub->add_option("--b", o->b);
  sub->add_option("--c", o->c);
  sub->add_option("--d", o->d);
  auto* ga_opt = sub->add_option("--gamma-a", o->ga, "exponent a of sum k^a e^{-bk}");
  sub->add_option("--gamma-b", o->gb, "rate b of sum k^a e^{-bk}");
  sub->add_option("--constant", o->constant, "C in sum <= C Gamma(a+1)/b^(a+1)");
  reg.add(sub, [o, a_opt, ga_opt] {
    Outcome out;
    if (ga_opt->count()) {
      out.params = {{"a", o->ga}, {"b", o->gb}, {"C", o->constant}};
      out.compute = [o]() -> Json {
        const GammaSumReport r = check_gamma_sum(o->ga, o->gb, o->constant);
        return {{"sum", r.sum}, {"gamma_term", r.gamma_term}, {"ratio", r.tightest_c}, {"pass", r.pass}};
      };
      return out;
    }
    if (!a_opt->count()) throw std::invalid_argument("inequalities needs --a --b --c --d or --gamma-a --gamma-b");
    out.params = {{"a", o->a}, {"b", o->b}, {"c", o->c}, {"d", o->d}};
    out.compute = [o]() -> Json {
      const InequalityReport r = check_binom_inequalities(o->a, o->b, o->c, o->d);
      Json rows = Json::array();
      for (const auto& line : r.lines) {
        rows.push_back({{"inequality", line.name},
                        {"log_lhs", line.lhs.is_zero() ? Json() : Json(line.lhs.log())},
                        {"log_rhs", line.rhs.is_zero() ? Json() : Json(line.rhs.log())},
                        {"pass", line.pass}});
      }
      return {{"all_pass", r.all_pass()}, {"rows", rows}};
    };
    return out;
  });
}

Json quantiles_json(const Quantiles& q) { return {{"q25", q.q25}, {"median", q.median}, {"q75", q.q75}}; }

void add_sample(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    int n = 0, m = 0, workers = 0;
    std::uint64_t count = 10'000;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("sample", "Uniform sum-free m-subsets of [n] by rejection");
  sub->add_option("--n", o->n)->required()->check(CLI::Range(1, kMaxSearchN));
  sub->add_option("--m", o->m)->required()->check(CLI::NonNegativeNumber);
  sub->add_option("--count", o->count, "number of accepted samples");
  sub->add_option("--workers", o->workers, "independent streams (default --threads, else 1)");
  reg.add(sub, [o, &g] {
    SampleOptions so;
    so.workers = o->workers > 0 ? o->workers : std::max(1, g.threads);
    Outcome out;
    out.params = {{"n", o->n}, {"m", o->m}, {"count", o->count}, {"seed", g.seed}, {"workers", so.workers}};
    out.compute = [o, so, &g]() -> Json {
      const SampleReport r = sample_uniform(o->n, o->m, o->count, g.seed, so);
      Json rows = Json::array();
      for (const auto& [c, hits] : r.histogram) {
        rows.push_back({{"ell", c.ell}, {"k", half_integer_string(c.twice_k)}, {"odd", c.odd}, {"hits", hits}});
      }
      return {{"seed", r.seed},
              {"workers", r.workers},
              {"draws", r.draws},
              {"acceptance_estimate", r.acceptance_estimate},
              {"distinct_sets", r.set_frequencies.size()},
              {"ell", quantiles_json(r.ell)},
              {"k", quantiles_json(r.k)},
              {"rows", rows}};
    };
    return out;
  });
}

void add_trend(CLI::App& app, Registry& reg, const Globals& g) {
  struct Opts {
    std::string n_list, rule = "sqrt";
    std::uint64_t count = 10'000;
    int exact_limit = 30;
    double window_factor = 4.0;
  };
  auto o = std::make_shared<Opts>();
  auto* sub = app.add_subcommand("trend", "Scaled medians of ell and k across n");
  sub->add_option("--n-list", o->n_list, "e.g. 20,30,40")->required();
  sub->add_option("--rule", o->rule, "m as a function of n: sqrt|half|fixed:K|frac:X");
  sub->add_option("--count", o->count, "samples per row when n exceeds --exact-limit");
  sub->add_option("--exact-limit", o->exact_limit, "largest n counted exactly");
  sub->add_option("--window-factor", o->window_factor, "heuristic slack relative to the first row");
  reg.add(sub, [o, &g] {
    const auto ns = parse_int_list(o->n_list);
    const MRule rule = MRule::parse(o->rule);
    TrendOptions to;
    to.exact_limit = o->exact_limit;
    to.window_factor = o->window_factor;
    to.sampling.workers = std::max(1, g.threads);
    Outcome out;
    Json n_json = Json::array();
    for (int n : ns) n_json.push_back(n);
    out.params = {{"n_list", n_json}, {"rule", rule.to_string()}, {"count", o->count}, {"seed", g.seed},
                  {"exact_limit", o->exact_limit}, {"window_factor", o->window_factor}, {"workers", to.sampling.workers}};
    out.compute = [o, ns, rule, to, &g]() -> Json {
      Json rows = Json::array();
      for (const auto& r : structure_trend(ns, rule, o->count, g.seed, to)) {
        rows.push_back({{"n", r.n},
                        {"m", r.m},
                        {"exact", r.exact},
                        {"scaled_ell_median", r.scaled_ell_median},
                        {"scaled_k_median", r.scaled_k_median},
                        {"ell_in_window", r.ell_in_window},
                        {"k_in_window", r.k_in_window}});
      }
      return {{"windows", "heuristic"}, {"rows", rows}};
    };
    return out;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration and bound checks for sum-free sets of integers"};
  app.set_version_flag("--version", SUMFREE_VERSION);
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key=value settings file; flags override it");

  Globals g;
  app.add_option("--format", g.format, "records|table|csv")->check(CLI::IsMember({"records", "table", "csv"}));
  app.add_option("--threads", g.threads, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--budget", g.budget, "search node / enumeration budget");
  app.add_option("--seed", g.seed, "random seed for sampling commands");
  app.add_option("--cache", g.cache, "JSON-lines cache file");

  Registry reg;
  add_count(app, reg, g);
  add_enumerate(app, reg, g);
  add_strata(app, reg, g);
  add_window(app, reg, g);
  add_partitions(app, reg, g);
  add_restricted(app, reg, g);
  add_sumset(app, reg, g);
  add_freiman(app, reg, g);
  add_bset(app, reg, g);
  add_janson(app, reg, g);
  add_bounds(app, reg, g);
  add_inequalities(app, reg, g);
  add_sample(app, reg, g);
  add_trend(app, reg, g);

  struct VerifyOpts {
    std::string suite = "full", tables, only;
  } vo;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria; exit 1 on any failure");
  verify->add_option("--suite", vo.suite, "small|full")->check(CLI::IsMember({"small", "full"}));
  verify->add_option("--tables", vo.tables, "directory for CSV ratio tables");
  verify->add_option("--only", vo.only, "comma list of criterion ids");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) {
      VerifyOptions opts;
      opts.suite = parse_suite(vo.suite);
      opts.threads = g.threads;
      if (!vo.tables.empty()) opts.table_dir = vo.tables;
      opts.only = parse_int_list(vo.only);
      if (g.format == "table") {
        opts.on_result = [&](const CriterionResult& r) { out << format_result_line(r) << std::endl; };
      }
      const auto results = run_verification(opts);
      bool all = true;
      Json rows = Json::array();
      for (const auto& r : results) {
        all = all && r.pass;
        rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
      }
      if (g.format != "table") {
        double total = 0;
        for (const auto& r : results) total += r.seconds;
        const Json rec = make_record("verify", {{"suite", vo.suite}, {"only", vo.only}},
                                     {{"all_pass", all}, {"rows", rows}}, std::round(total * 1e6) / 1e3);
        emit(rec, g.format, out);
      }
      return all ? kOk : kVerifyFailed;
    }

    for (const auto& [sub, action] : reg.actions) {
      if (!sub->parsed()) continue;
      const std::string op = sub->get_name();
      std::optional<Cache> cache;
      if (!g.cache.empty()) cache.emplace(g.cache);

      const Outcome o = action();
      const std::string fingerprint = op + " " + o.params.dump();
      if (cache) {
        if (auto hit = cache->find(fingerprint)) {
          emit(make_record(op, (*hit)["params"], (*hit)["result"], (*hit)["elapsed_ms"].get<double>()), g.format, out);
          return kOk;
        }
      }
      const auto start = std::chrono::steady_clock::now();
      const Json result = o.compute();
      const double ms =
          std::round(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() * 1e3) /
          1e3;
      const Json rec = make_record(op, o.params, result, ms);
      if (cache) {
        Json line;
        line["fingerprint"] = fingerprint;
        line["timestamp"] = timestamp_now();
        for (const auto& [k, v] : rec.items()) line[k] = v;
        cache->store(line);
      }
      emit(rec, g.format, out);
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InfeasibleSampling& e) {
    err << "sampling infeasible: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace sumfree::cli
