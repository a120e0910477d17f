#pragma once

#include "fixgame/applications.hpp"

#include "json.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fixgame::cli {

using nlohmann::json;

// Holds a verdict for the exit code alongside the JSON report.
struct Report {
  json body;
  int code = 0;
};

// Parses a file, prefixing diagnostics with its path.
template <class T, class Parse>
T load(const std::string& path, Parse&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

// A file holding either a single fixpoint expression or a list of equations.
struct Source {
  std::string path;
  std::optional<Expr> expr;
  std::vector<DslEquation> equations;
  bool is_system() const { return !expr; }
};
Source load_source(const std::string& path);

// Models referenced by a system must outlive it, hence the pointers.
struct Frontend {
  std::string ts;
  bool relations = false;
  bool lukas = false;
  std::string pndt;
  std::int64_t grid = 0;
};

struct Loaded {
  std::unique_ptr<TransitionSystem> ts;
  std::unique_ptr<Pndt> pndt;
  EquationSystem system;
  std::size_t target = 0;
  ChainProductPtr lattice;
};

Loaded load_system(const Source& src, const Frontend& fe);

std::unique_ptr<TransitionSystem> load_ts(const std::string& path);
std::unique_ptr<Pndt> load_pndt(const std::string& path);

json element_json(const Lattice& L, const Element& e);
json real_json(const std::vector<std::string>& labels, const RealVector& v);
json decimal(const Rational& r);

// Equation index from a name or a 1-based number; default is the target.
std::size_t pick_index(const EquationSystem& sys, const std::string& spec, std::size_t fallback);

// --state s, --pair s,t, --level label=k or --basis k.
struct BasisSpec {
  std::string state, pair, level;
  long long basis = -1;
};
std::size_t pick_basis(const Loaded& in, const BasisSpec& spec);

// none, tr, sim, bisim or file:PATH, on the lattice of `in`.
std::optional<UpToFunction> make_upto(const std::string& spec, const Loaded& in);

std::vector<std::string> split(const std::string& s, char sep);

std::size_t job_count(int flag);

// Runs count independent queries on up to `jobs` threads; results keep the
// query order.
template <class R>
std::vector<R> run_queries(std::size_t count, std::size_t jobs, const std::function<R(std::size_t)>& query) {
  std::vector<std::optional<R>> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) {
      try {
        out[i] = query(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<R> res;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    res.push_back(std::move(*out[i]));
  }
  return res;
}

}  // namespace fixgame::cli
