// Command-line front end for the local computation oracles.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lca/coin_tape.hpp"
#include "lca/instance.hpp"
#include "lca/isc.hpp"
#include "lca/lll.hpp"
#include "lca/mis.hpp"
#include "lca/random.hpp"
#include "lca/verify.hpp"

using namespace lca;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitFail = 2;
constexpr int kExitUsage = 3;

// Thrown for bad flag combinations found after parsing; maps to exit 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Algo { kMis, kIsc, kBroadcast, kColor, kCnf };

const std::map<std::string, Algo> kAlgoNames = {
    {"mis", Algo::kMis}, {"isc", Algo::kIsc}, {"broadcast", Algo::kBroadcast},
    {"color", Algo::kColor}, {"cnf", Algo::kCnf}};

bool on_graph(Algo a) { return a == Algo::kMis || a == Algo::kIsc || a == Algo::kBroadcast; }

struct Options {
  Algo algo = Algo::kMis;
  std::string graph_path, hyper_path, cnf_path, gen_spec;
  std::string seed_text;
  std::vector<std::uint64_t> vertices;
  std::string order = "ascending";
  std::optional<double> c, c1, c2, c3, rounds_factor;
  std::string format;
  unsigned jobs = 1;
  std::string sizes;
  std::string out_path;
  std::string solution_path;
  unsigned k = 0, d = 0;
  std::size_t queries = 1000;
  std::uint64_t stream = 1;
  std::size_t count = 16;
};

std::uint64_t parse_seed(const std::string& text) {
  std::size_t pos = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &pos, 0);
  } catch (const std::exception&) {
    throw UsageError("bad seed '" + text + "'");
  }
  if (pos != text.size()) throw UsageError("bad seed '" + text + "'");
  return value;
}

std::uint64_t resolve_seed(const Options& o) {
  if (!o.seed_text.empty()) return parse_seed(o.seed_text);
  if (const char* env = std::getenv("LCA_SEED"); env && *env) return parse_seed(env);
  return 1;
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stoull(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

// "a:b" (x4 steps), "a:b:f", or "a,b,c".
std::vector<std::size_t> parse_sizes(const std::string& text) {
  if (text.find(':') == std::string::npos) {
    auto list = parse_list(text);
    return {list.begin(), list.end()};
  }
  std::string spec = text;
  std::replace(spec.begin(), spec.end(), ':', ',');
  const auto parts = parse_list(spec);
  if (parts.size() < 2 || parts.size() > 3) throw UsageError("--sizes expects a:b or a:b:factor");
  const std::uint64_t factor = parts.size() == 3 ? parts[2] : 4;
  if (parts[0] == 0 || factor < 2 || parts[0] > parts[1]) throw UsageError("bad --sizes range " + text);
  std::vector<std::size_t> out;
  for (std::uint64_t n = parts[0]; n <= parts[1]; n *= factor) out.push_back(n);
  return out;
}

struct Instance {
  std::optional<Graph> graph;
  std::optional<Hypergraph> hyper;
  std::optional<CnfFormula> cnf;

  std::size_t entities() const {
    if (graph) return graph->size();
    if (hyper) return hyper->vertex_count();
    return cnf->var_count();
  }
};

template <typename T, typename Parse>
T read_file(const std::string& path, Parse&& parse) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse(in);
}

// Graph: n,d. Hypergraph and CNF: m,d,k,N (m = 0 picks k*k*N/2 points).
Instance generate(Algo algo, const std::string& spec, std::uint64_t seed) {
  const auto p = parse_list(spec);
  Instance inst;
  if (on_graph(algo)) {
    if (p.size() != 2) throw UsageError("--gen for graphs is n,d");
    inst.graph = gen_graph(p[0], static_cast<unsigned>(p[1]), seed);
    return inst;
  }
  if (p.size() != 4) throw UsageError("--gen for hypergraphs and formulas is m,d,k,N");
  const auto k = static_cast<unsigned>(p[2]);
  const std::size_t m = p[0] != 0 ? p[0] : std::max<std::size_t>(k, std::size_t{k} * k * p[3] / 2);
  if (algo == Algo::kColor) {
    inst.hyper = gen_hypergraph(m, p[3], k, static_cast<unsigned>(p[1]), seed);
  } else {
    inst.cnf = gen_cnf(m, p[3], k, static_cast<unsigned>(p[1]), seed);
  }
  return inst;
}

Instance load(const Options& o, std::uint64_t seed) {
  const int given = !o.graph_path.empty() + !o.hyper_path.empty() + !o.cnf_path.empty() + !o.gen_spec.empty();
  if (given != 1) throw UsageError("give exactly one of --graph, --hypergraph, --cnf, --gen");
  if (!o.gen_spec.empty()) return generate(o.algo, o.gen_spec, seed);
  Instance inst;
  if (!o.graph_path.empty()) {
    if (!on_graph(o.algo)) throw UsageError("--graph needs --algo mis, isc or broadcast");
    inst.graph = read_file<Graph>(o.graph_path, [](std::istream& in) { return parse_graph(in); });
  } else if (!o.hyper_path.empty()) {
    if (o.algo != Algo::kColor) throw UsageError("--hypergraph needs --algo color");
    inst.hyper = read_file<Hypergraph>(o.hyper_path, [](std::istream& in) { return parse_hypergraph(in); });
  } else {
    if (o.algo != Algo::kCnf) throw UsageError("--cnf needs --algo cnf");
    inst.cnf = read_file<CnfFormula>(o.cnf_path, [](std::istream& in) { return parse_cnf(in); });
  }
  return inst;
}

void check_positive(const std::optional<double>& v, const char* name) {
  if (v && !(*v > 0)) throw UsageError(std::string(name) + " must be positive");
}

MisConfig mis_config(const Options& o) {
  MisConfig c;
  if (o.c) c.cap_constant = *o.c;
  if (o.rounds_factor) c.rounds_factor = *o.rounds_factor;
  return c;
}

IscConfig isc_config(const Options& o) {
  IscConfig c;
  if (o.c) c.cap_constant = *o.c;
  if (o.rounds_factor) c.rounds_factor = *o.rounds_factor;
  return c;
}

LllConfig lll_config(const Options& o) {
  LllConfig c;
  if (o.c1) c.c1 = *o.c1;
  if (o.c2) c.c2 = *o.c2;
  if (o.c3) c.c3 = *o.c3;
  return c;
}

std::vector<VertexId> resolve_order(const std::string& text, std::size_t n) {
  if (text == "ascending") return make_order(n);
  if (text == "random") return make_order(n, 0);
  if (text.rfind("random:", 0) == 0) return make_order(n, parse_seed(text.substr(7)));
  throw UsageError("--order is ascending, random or random:SEED");
}

SweepReport run_sweep(Algo algo, const Instance& inst, std::uint64_t seed, std::span<const VertexId> order,
                      const Options& o) {
  switch (algo) {
    case Algo::kMis:
      return sweep_mis(*inst.graph, seed, order, mis_config(o));
    case Algo::kIsc:
      return sweep_isc(NeighborView::direct(*inst.graph), seed, order, isc_config(o));
    case Algo::kBroadcast:
      return sweep_isc(NeighborView::square(*inst.graph), seed, order, isc_config(o));
    case Algo::kColor:
      return sweep_coloring(*inst.hyper, seed, order, lll_config(o));
    case Algo::kCnf:
      return sweep_cnf(*inst.cnf, seed, order, lll_config(o));
  }
  return {};
}

std::string answer_text(Algo algo, const std::optional<std::int64_t>& a) {
  if (!a) return "FAIL";
  switch (algo) {
    case Algo::kMis: return *a ? "IN" : "OUT";
    case Algo::kColor: return *a ? "BLUE" : "RED";
    case Algo::kCnf: return *a ? "TRUE" : "FALSE";
    default: return std::to_string(*a);
  }
}

std::optional<Violation> run_verifier(Algo algo, const Instance& inst, const Answers& answers) {
  std::vector<std::uint8_t> bits(answers.size());
  for (std::size_t i = 0; i < answers.size(); ++i) bits[i] = answers[i].value_or(0) != 0;
  switch (algo) {
    case Algo::kMis: return verify_mis(*inst.graph, bits);
    case Algo::kIsc: return verify_isc(NeighborView::direct(*inst.graph), answers);
    case Algo::kBroadcast: return verify_broadcast(*inst.graph, answers);
    case Algo::kColor: return verify_coloring(*inst.hyper, bits);
    case Algo::kCnf: return verify_sat(*inst.cnf, bits);
  }
  return std::nullopt;
}

std::ostream& output(const Options& o, std::ofstream& file) {
  if (o.out_path.empty()) return std::cout;
  file.open(o.out_path);
  if (!file) throw UsageError("cannot write " + o.out_path);
  return file;
}

// Subcommands ----------------------------------------------------------------

int cmd_gen(const Options& o) {
  if (o.gen_spec.empty()) throw UsageError("gen needs --gen");
  const auto inst = generate(o.algo, o.gen_spec, resolve_seed(o));
  std::ofstream file;
  std::ostream& out = output(o, file);
  if (inst.graph) write_graph(out, *inst.graph);
  if (inst.hyper) write_hypergraph(out, *inst.hyper);
  if (inst.cnf) write_cnf(out, *inst.cnf);
  return kExitOk;
}

int cmd_query(const Options& o) {
  if (o.vertices.empty()) throw UsageError("query needs --vertex");
  const std::uint64_t seed = resolve_seed(o);
  const auto inst = load(o, seed);
  for (auto v : o.vertices) {
    if (v >= inst.entities()) throw UsageError("vertex " + std::to_string(v) + " out of range");
  }
  // One session for all listed vertices, queried in the given order.
  const std::vector<VertexId> order(o.vertices.begin(), o.vertices.end());
  std::optional<MisSession> mis;
  std::optional<IscSession> isc;
  std::optional<LllSession> lll;
  switch (o.algo) {
    case Algo::kMis: mis.emplace(*inst.graph, seed, mis_config(o)); break;
    case Algo::kIsc: isc.emplace(NeighborView::direct(*inst.graph), seed, isc_config(o)); break;
    case Algo::kBroadcast: isc.emplace(NeighborView::square(*inst.graph), seed, isc_config(o)); break;
    case Algo::kColor: lll.emplace(*inst.hyper, Semantics::kColoring, std::span<const std::uint8_t>{}, seed,
                                   lll_config(o)); break;
    case Algo::kCnf: lll.emplace(*inst.cnf, Semantics::kCnf, inst.cnf->polarities(), seed, lll_config(o)); break;
  }
  bool failed = false;
  json rows = json::array();
  for (VertexId v : order) {
    std::optional<std::int64_t> answer;
    std::uint64_t touched = 0;
    if (mis) {
      const auto a = mis->query(v);
      if (a != MisAnswer::kFail) answer = a == MisAnswer::kIn;
      touched = mis->last_touched();
    } else if (isc) {
      if (auto r = isc->round(v)) answer = *r;
      touched = isc->last_touched();
    } else {
      if (auto b = lll->query(v)) answer = *b;
      touched = lll->last_touched();
    }
    failed |= !answer;
    if (o.format == "json") {
      rows.push_back({{"vertex", v}, {"answer", answer_text(o.algo, answer)}, {"touched", touched}});
    } else {
      std::cout << v << ' ' << answer_text(o.algo, answer) << ' ' << touched << '\n';
    }
  }
  if (o.format == "json") std::cout << rows.dump() << '\n';
  return failed ? kExitFail : kExitOk;
}

int cmd_sweep(const Options& o) {
  const std::uint64_t seed = resolve_seed(o);
  const auto inst = load(o, seed);
  const auto order = resolve_order(o.order, inst.entities());
  const auto report = run_sweep(o.algo, inst, seed, order, o);
  const double mean_touched =
      report.touched.empty()
          ? 0.0
          : static_cast<double>(std::accumulate(report.touched.begin(), report.touched.end(), std::uint64_t{0})) /
                static_cast<double>(report.touched.size());
  std::ofstream file;
  std::ostream& out = output(o, file);
  const std::string format = o.format.empty() ? "json" : o.format;
  if (format == "json") {
    json answers = json::array();
    for (const auto& a : report.answers) answers.push_back(a ? json(*a) : json(nullptr));
    json doc = {{"seed", seed},
                {"entities", report.answers.size()},
                {"fail_count", report.fail_count},
                {"max_component", report.max_component},
                {"mean_touched", mean_touched},
                {"answers", answers}};
    out << doc.dump() << '\n';
  } else if (format == "csv") {
    out << "id,answer,touched\n";
    for (std::size_t i = 0; i < report.answers.size(); ++i) {
      out << i << ',' << answer_text(o.algo, report.answers[i]) << ',' << report.touched[i] << '\n';
    }
  } else if (format == "dimacs") {
    if (o.algo != Algo::kCnf) throw UsageError("--format dimacs needs --algo cnf");
    out << (report.fail_count ? "s UNKNOWN\n" : "s SATISFIABLE\n") << 'v';
    for (std::size_t i = 0; i < report.answers.size(); ++i) {
      out << ' ' << (report.answers[i].value_or(0) ? "" : "-") << i + 1;
    }
    out << " 0\n";
  } else {
    throw UsageError("--format for sweep is json, csv or dimacs");
  }
  std::cerr << "fail_count=" << report.fail_count << " max_component=" << report.max_component
            << " mean_touched=" << mean_touched << '\n';
  return report.fail_count ? kExitFail : kExitOk;
}

Answers read_solution(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("solution is not sweep JSON: " + std::string(e.what()));
  }
  if (!doc.contains("answers") || !doc["answers"].is_array() || doc["answers"].size() != n) {
    throw UsageError("solution needs an \"answers\" array of " + std::to_string(n) + " entries");
  }
  Answers out;
  for (const auto& a : doc["answers"]) {
    if (a.is_null()) {
      out.emplace_back();
    } else if (a.is_number_integer()) {
      out.emplace_back(a.get<std::int64_t>());
    } else {
      throw UsageError("solution answers must be integers or null");
    }
  }
  return out;
}

int cmd_verify(const Options& o) {
  const std::uint64_t seed = resolve_seed(o);
  const auto inst = load(o, seed);
  Answers answers;
  if (!o.solution_path.empty()) {
    answers = read_solution(o.solution_path, inst.entities());
  } else {
    answers = run_sweep(o.algo, inst, seed, resolve_order(o.order, inst.entities()), o).answers;
  }
  const bool failed = std::any_of(answers.begin(), answers.end(), [](const auto& a) { return !a.has_value(); });
  if (failed && o.algo != Algo::kIsc && o.algo != Algo::kBroadcast) {
    std::cout << json{{"kind", "fail"}, {"witness", json::array()}}.dump() << '\n';
    return kExitFail;
  }
  if (auto v = run_verifier(o.algo, inst, answers)) {
    std::cout << v->to_json() << '\n';
    return failed ? kExitFail : kExitViolation;
  }
  std::cout << "ok\n";
  return kExitOk;
}

int cmd_params(const Options& o) {
  if (o.algo != Algo::kColor && o.algo != Algo::kCnf) throw UsageError("params needs --algo color or cnf");
  if (o.k == 0) throw UsageError("params needs --k >= 1");
  const auto p = o.algo == Algo::kColor ? check_params(o.k, o.d) : check_params_cnf(o.k, o.d);
  if (!p) {
    std::cout << "INFEASIBLE\n";
    return kExitFail;
  }
  std::cout << p->k1 << ' ' << p->k2 << ' ' << p->k3 << '\n';
  return kExitOk;
}

struct BenchRow {
  std::size_t n = 0;
  double mean_touched = 0;
  double mean_us = 0;
  double fail_rate = 0;
};

// Graph oracles: each sampled query runs on a reset session so that its cost
// is that of a cold query. LLL oracles: sampled queries share one session.
BenchRow bench_one(const Options& o, std::size_t n, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  BenchRow row;
  row.n = n;
  std::uint64_t touched = 0;
  double micros = 0;
  std::size_t fails = 0;
  std::size_t done = 0;
  auto time_it = [&](auto&& f) {
    const auto t0 = Clock::now();
    f();
    micros += std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
  };
  if (on_graph(o.algo)) {
    const Graph g = gen_graph(n, o.d, seed);
    std::optional<MisSession> mis;
    std::optional<IscSession> isc;
    if (o.algo == Algo::kMis) mis.emplace(g, seed, mis_config(o));
    if (o.algo == Algo::kIsc) isc.emplace(NeighborView::direct(g), seed, isc_config(o));
    if (o.algo == Algo::kBroadcast) isc.emplace(NeighborView::square(g), seed, isc_config(o));
    for (std::size_t q = 0; q < o.queries; ++q) {
      const auto v = static_cast<VertexId>(uniform_below(rng, n));
      bool ok = true;
      if (mis) {
        mis->reset();
        time_it([&] { ok = mis->query(v) != MisAnswer::kFail; });
        touched += mis->last_touched();
      } else {
        isc->reset();
        time_it([&] { ok = isc->round(v).has_value(); });
        touched += isc->last_touched();
      }
      fails += !ok;
      ++done;
    }
  } else {
    if (o.k == 0) throw UsageError("bench for color/cnf needs --k");
    const std::size_t m = std::max<std::size_t>(o.k, std::size_t{o.k} * o.k * n / 2);
    std::optional<Hypergraph> h;
    std::optional<CnfFormula> f;
    std::optional<LllSession> s;
    if (o.algo == Algo::kColor) {
      h = gen_hypergraph(m, n, o.k, o.d, seed);
      s.emplace(*h, Semantics::kColoring, std::span<const std::uint8_t>{}, seed, lll_config(o));
    } else {
      f = gen_cnf(m, n, o.k, o.d, seed);
      s.emplace(*f, Semantics::kCnf, f->polarities(), seed, lll_config(o));
    }
    for (std::size_t q = 0; q < o.queries; ++q) {
      const auto x = static_cast<VertexId>(uniform_below(rng, m));
      bool ok = true;
      time_it([&] { ok = s->query(x).has_value(); });
      touched += s->last_touched();
      fails += !ok;
      ++done;
    }
  }
  if (done) {
    row.mean_touched = static_cast<double>(touched) / done;
    row.mean_us = micros / done;
    row.fail_rate = static_cast<double>(fails) / done;
  }
  return row;
}

int cmd_bench(const Options& o) {
  if (o.sizes.empty()) throw UsageError("bench needs --sizes");
  const auto sizes = parse_sizes(o.sizes);
  const std::uint64_t seed = resolve_seed(o);
  std::vector<BenchRow> rows(sizes.size());
  std::size_t next = 0;
  std::mutex lock;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard g(lock);
        if (next == sizes.size() || error) return;
        i = next++;
      }
      try {
        rows[i] = bench_one(o, sizes[i], seed);
      } catch (...) {
        std::lock_guard g(lock);
        error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::max(1u, o.jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  std::ofstream file;
  std::ostream& out = output(o, file);
  if (o.format == "json") {
    json doc = json::array();
    for (const auto& r : rows) {
      doc.push_back({{"n", r.n}, {"mean_touched_states", r.mean_touched}, {"mean_us_per_query", r.mean_us},
                     {"fail_rate", r.fail_rate}});
    }
    out << doc.dump() << '\n';
  } else {
    out << "n,mean_touched_states,mean_us_per_query,fail_rate\n";
    for (const auto& r : rows) out << r.n << ',' << r.mean_touched << ',' << r.mean_us << ',' << r.fail_rate << '\n';
  }
  return kExitOk;
}

// Key tuples and words, one per line, for cross-implementation checks.
int cmd_coins(const Options& o) {
  const std::uint64_t seed = resolve_seed(o);
  if (o.stream < 1 || o.stream > 5) throw UsageError("--stream is 1..5");
  const CoinTape tape(seed, static_cast<CoinStream>(o.stream));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < o.count; ++i) {
    const std::uint64_t entity = rng() % 100000, round = rng() % 300, epoch = rng() % 4;
    std::printf("%llu %llu %llu %llu %llu 0x%016llx\n", static_cast<unsigned long long>(seed),
                static_cast<unsigned long long>(o.stream), static_cast<unsigned long long>(entity),
                static_cast<unsigned long long>(round), static_cast<unsigned long long>(epoch),
                static_cast<unsigned long long>(tape.word(entity, round, epoch)));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local computation oracles for MIS, independent set cover, hypergraph coloring and k-CNF"};
  app.require_subcommand(1);
  Options o;
  std::string algo_name = "mis";

  auto algo_opt = [&](CLI::App* sub) {
    sub->add_option("--algo", algo_name, "mis, isc, broadcast, color or cnf")
        ->check(CLI::IsMember({"mis", "isc", "broadcast", "color", "cnf"}));
  };
  auto instance_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph_path, "graph file (n m d header, u v lines)");
    sub->add_option("--hypergraph", o.hyper_path, "hypergraph file (m N k d header)");
    sub->add_option("--cnf", o.cnf_path, "DIMACS CNF file");
    sub->add_option("--gen", o.gen_spec, "generate: n,d for graphs, m,d,k,N otherwise");
  };
  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed_text, "seed, decimal or 0x hex (default $LCA_SEED, else 1)");
  };
  auto constant_opts = [&](CLI::App* sub) {
    sub->add_option("--c", o.c, "survivor component cap constant");
    sub->add_option("--c1", o.c1, "phase-2 cap constant");
    sub->add_option("--c2", o.c2, "phase-3 cap constant");
    sub->add_option("--c3", o.c3, "retry count constant");
    sub->add_option("--rounds-factor", o.rounds_factor, "round count multiplier");
  };

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  algo_opt(gen);
  gen->add_option("--gen", o.gen_spec, "n,d for graphs, m,d,k,N otherwise")->required();
  seed_opt(gen);
  gen->add_option("--out", o.out_path, "output file (default stdout)");

  auto* query = app.add_subcommand("query", "answer single queries");
  algo_opt(query);
  instance_opts(query);
  seed_opt(query);
  constant_opts(query);
  query->add_option("--vertex", o.vertices, "vertex or variable id (repeatable)")->required();
  query->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* sweep = app.add_subcommand("sweep", "query every entity and print the solution");
  algo_opt(sweep);
  instance_opts(sweep);
  seed_opt(sweep);
  constant_opts(sweep);
  sweep->add_option("--order", o.order, "ascending, random or random:SEED");
  sweep->add_option("--format", o.format, "json, csv or dimacs");
  sweep->add_option("--out", o.out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check a solution, exit 1 on violation");
  algo_opt(verify);
  instance_opts(verify);
  seed_opt(verify);
  constant_opts(verify);
  verify->add_option("--order", o.order, "sweep order when no solution is given");
  verify->add_option("--solution", o.solution_path, "sweep JSON output to check (default: sweep now)");

  auto* params = app.add_subcommand("params", "print k1 k2 k3 or INFEASIBLE");
  algo_opt(params);
  params->add_option("--k", o.k, "constraint width")->required();
  params->add_option("--d", o.d, "dependency degree")->required();

  auto* bench = app.add_subcommand("bench", "per-query cost across a size ladder");
  algo_opt(bench);
  seed_opt(bench);
  constant_opts(bench);
  bench->add_option("--d", o.d, "degree bound")->required();
  bench->add_option("--k", o.k, "constraint width (color, cnf)");
  bench->add_option("--sizes", o.sizes, "a:b (x4 steps), a:b:factor, or a,b,c")->required();
  bench->add_option("--queries", o.queries, "sampled queries per size");
  bench->add_option("--jobs", o.jobs, "sizes benchmarked in parallel");
  bench->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", o.out_path, "output file (default stdout)");

  auto* coins = app.add_subcommand("coins", "print coin tape test vectors");
  seed_opt(coins);
  coins->add_option("--stream", o.stream, "stream tag 1..5");
  coins->add_option("--count", o.count, "number of vectors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    o.algo = kAlgoNames.at(algo_name);
    check_positive(o.c, "--c");
    check_positive(o.c1, "--c1");
    check_positive(o.c2, "--c2");
    check_positive(o.c3, "--c3");
    check_positive(o.rounds_factor, "--rounds-factor");
    if (*gen) return cmd_gen(o);
    if (*query) return cmd_query(o);
    if (*sweep) return cmd_sweep(o);
    if (*verify) return cmd_verify(o);
    if (*params) return cmd_params(o);
    if (*bench) return cmd_bench(o);
    if (*coins) return cmd_coins(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleParams& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
