#include "support.hpp"

#include <cstdlib>
#include <regex>

namespace fixgame::cli {

namespace {

Relation image_relation(const std::string& path, const TransitionSystem& T) {
  return load<Relation>(path, [&](const std::string& text) { return parse_relation(text, T.states, T.states); });
}

// X ↦ X ∪ R[X] on state sets.
UpToFunction image_upto(ChainProductPtr L, Relation R, std::string name) {
  const std::size_t n = L->components();
  return UpToFunction(
      L,
      [L, R, n](const Element& x) {
        Element out = x;
        for (std::size_t s = 0; s < n; ++s)
          if (x.v[s])
            for (std::size_t t = 0; t < n; ++t)
              if (R[s][t]) out.v[t] = 1;
        return out;
      },
      std::move(name));
}

// X ↦ S;X;S on relations, optionally joined with X.
UpToFunction sandwich_upto(ChainProductPtr L, Relation S, bool keep, std::string name) {
  const std::size_t n = S.size();
  return UpToFunction(
      L,
      [L, S, n, keep](const Element& x) {
        Element out = keep ? x : L->bot();
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            if (!x.v[a * n + b]) continue;
            for (std::size_t p = 0; p < n; ++p) {
              if (!S[p][a]) continue;
              for (std::size_t q = 0; q < n; ++q)
                if (S[b][q]) out.v[p * n + q] = 1;
            }
          }
        return out;
      },
      std::move(name));
}

std::int64_t level_of(const std::string& text, std::int64_t height) {
  Expr e = parse_expr(text);
  if (e.kind != Expr::Kind::number) throw InputError("level " + text + " is not a number");
  Rational r = e.number;
  // integers are levels, fractions are values
  if (text.find_first_of("./") != std::string::npos) r *= height;
  if (boost::multiprecision::denominator(r) != 1) throw InputError("level " + text + " is not on the grid");
  auto k = static_cast<std::int64_t>(boost::multiprecision::numerator(r));
  if (k < 1 || k > height) throw InputError("level " + text + " is outside 1.." + std::to_string(height));
  return k;
}

}  // namespace

Source load_source(const std::string& path) {
  std::string text = read_file(path);
  Source src;
  src.path = path;
  try {
    if (std::regex_search(text, std::regex(R"(=\s*(mu|nu)\b)")))
      src.equations = parse_system_dsl(text);
    else
      src.expr = parse_expr(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
  return src;
}

std::unique_ptr<TransitionSystem> load_ts(const std::string& path) {
  return std::make_unique<TransitionSystem>(load<TransitionSystem>(path, [](const std::string& t) { return parse_ts(t); }));
}

std::unique_ptr<Pndt> load_pndt(const std::string& path) {
  return std::make_unique<Pndt>(load<Pndt>(path, [](const std::string& t) { return parse_pndt(t); }));
}

Loaded load_system(const Source& src, const Frontend& fe) {
  Loaded in;
  try {
    if (fe.lukas) {
      if (fe.grid < 1) throw InputError("a grid resolution --grid n is required here");
      if (!fe.pndt.empty()) in.pndt = load_pndt(fe.pndt);
      if (src.expr) {
        in.system = lukas::grid_system(*src.expr, in.pndt.get(), fe.grid, &in.target);
      } else {
        in.system = lukas::grid_system_from_dsl(src.equations, in.pndt.get(), fe.grid);
        in.target = in.system.size() - 1;
      }
    } else {
      if (fe.ts.empty()) throw InputError("choose a front-end: --ts FILE [--relations] or --lukas");
      in.ts = load_ts(fe.ts);
      if (fe.relations) {
        if (src.expr) throw InputError(src.path + ": the relation front-end reads equation files");
        in.system = bisim::system_from_dsl(src.equations, *in.ts);
        in.target = in.system.size() - 1;
      } else if (src.expr) {
        auto tr = mucalc::to_system(*src.expr, *in.ts);
        in.system = std::move(tr.system);
        in.target = tr.target;
      } else {
        in.system = mucalc::system_from_dsl(src.equations, *in.ts);
        in.target = in.system.size() - 1;
      }
    }
  } catch (const ParseError& e) {
    throw InputError(src.path + ":" + e.what());
  }
  in.lattice = std::dynamic_pointer_cast<const ChainProductLattice>(in.system.lattice_ptr());
  return in;
}

json decimal(const Rational& r) { return format_rational(r); }

json element_json(const Lattice& L, const Element& e) {
  const auto* C = dynamic_cast<const ChainProductLattice*>(&L);
  if (!C) return L.format(e);
  switch (C->style()) {
    case ChainProductLattice::Style::powerset:
    case ChainProductLattice::Style::relation: {
      json out = json::array();
      for (auto j : C->members(e)) out.push_back(C->labels()[j]);
      return out;
    }
    case ChainProductLattice::Style::grid:
      return decimal(C->value(e, 0));
    case ChainProductLattice::Style::pointwise: {
      json out = json::object();
      for (std::size_t j = 0; j < C->components(); ++j) out[C->labels()[j]] = decimal(C->value(e, j));
      return out;
    }
  }
  return L.format(e);
}

json real_json(const std::vector<std::string>& labels, const RealVector& v) {
  if (labels.size() == 1 && labels[0] == "x") return decimal(v.v.at(0));
  json out = json::object();
  for (std::size_t j = 0; j < labels.size(); ++j) out[labels[j]] = decimal(v.v.at(j));
  return out;
}

std::size_t pick_index(const EquationSystem& sys, const std::string& spec, std::size_t fallback) {
  if (spec.empty()) return fallback;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (sys.equation(i).name == spec) return i;
  if (spec.find_first_not_of("0123456789") == std::string::npos) {
    std::size_t i = std::stoul(spec);
    if (i >= 1 && i <= sys.size()) return i - 1;
  }
  throw InputError("no equation " + spec);
}

std::size_t pick_basis(const Loaded& in, const BasisSpec& spec) {
  const auto& L = *in.lattice;
  using Style = ChainProductLattice::Style;
  int given = !spec.state.empty() + !spec.pair.empty() + !spec.level.empty() + (spec.basis >= 0);
  if (given != 1) throw InputError("give exactly one of --state, --pair, --level, --basis");
  if (!spec.state.empty()) {
    if (L.style() != Style::powerset) throw InputError("--state needs a state-set lattice");
    return L.basis_index(in.ts->index(spec.state), 1);
  }
  if (!spec.pair.empty()) {
    auto p = split(spec.pair, ',');
    if (L.style() != Style::relation || p.size() != 2) throw InputError("--pair s,t needs the relation front-end");
    return L.basis_index(in.ts->index(p[0]) * in.ts->size() + in.ts->index(p[1]), 1);
  }
  if (!spec.level.empty()) {
    if (L.style() != Style::grid && L.style() != Style::pointwise) throw InputError("--level needs a grid lattice");
    auto eq = spec.level.find('=');
    std::string label = eq == std::string::npos ? "x" : spec.level.substr(0, eq);
    std::string k = eq == std::string::npos ? spec.level : spec.level.substr(eq + 1);
    const auto& labels = L.labels();
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw InputError("no component " + label);
    auto j = static_cast<std::size_t>(it - labels.begin());
    return L.basis_index(j, level_of(k, L.height(j)));
  }
  if (static_cast<std::size_t>(spec.basis) >= L.basis().size())
    throw InputError("basis index " + std::to_string(spec.basis) + " is out of range");
  return static_cast<std::size_t>(spec.basis);
}

std::optional<UpToFunction> make_upto(const std::string& spec, const Loaded& in) {
  if (spec.empty() || spec == "none") return std::nullopt;
  using Style = ChainProductLattice::Style;
  auto L = in.lattice;
  if (!in.ts || !L) throw InputError("up-to techniques need a transition system");
  const bool file = spec.rfind("file:", 0) == 0;
  if (!file && spec != "tr" && spec != "sim" && spec != "bisim") throw InputError("unknown up-to technique " + spec);
  if (L->style() == Style::powerset) {
    if (spec == "tr") throw InputError("up-to transitivity applies to relations");
    if (spec == "sim") return u_sim(L, bisim::similarity(*in.ts));
    if (spec == "bisim") return u_bisim(L, bisim::bisimilarity(*in.ts));
    return image_upto(L, image_relation(spec.substr(5), *in.ts), spec);
  }
  if (spec == "tr") return u_tr(L);
  if (spec == "sim") return sandwich_upto(L, bisim::similarity(*in.ts), false, "sim");
  if (spec == "bisim") return sandwich_upto(L, bisim::bisimilarity(*in.ts), false, "bisim");
  return sandwich_upto(L, image_relation(spec.substr(5), *in.ts), true, spec);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '{' && c != '}' && c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t job_count(int flag) {
  if (flag > 0) return static_cast<std::size_t>(flag);
  if (const char* env = std::getenv("FIXGAME_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

}  // namespace fixgame::cli
