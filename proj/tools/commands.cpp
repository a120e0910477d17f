#include "commands.hpp"

#include <fstream>
#include <unordered_map>

namespace fixgame::cli {

namespace {

json flags_json(const UpToFlags& f) {
  return {{"extensive", f.extensive}, {"idempotent", f.idempotent}, {"continuous", f.continuous}, {"strict", f.strict}};
}

json condition_json(const ConditionReport& r) {
  json out = {{"holds", r.holds},
              {"exhaustive", r.exhaustive},
              {"tuples_checked", r.tuples_checked},
              {"obligations", r.obligations},
              {"obligation_failures", r.obligation_failures}};
  if (r.witness) out["witness"] = r.witness->describe();
  return out;
}

json connection_json(const std::string& name, bool insertion, const ConnectionReport& r) {
  return {{"name", name},
          {"insertion", insertion},
          {"ok", r.ok()},
          {"exhaustive", r.exhaustive},
          {"adjoint", r.adjoint},
          {"alpha_strict", r.alpha_strict},
          {"alpha_joins", r.alpha_joins},
          {"alpha_continuous", r.alpha_continuous},
          {"gamma_costrict", r.gamma_costrict},
          {"gamma_meets", r.gamma_meets},
          {"gamma_cocontinuous", r.gamma_cocontinuous},
          {"pairs_checked", r.pairs_checked},
          {"violations", r.violations}};
}

CheckLimits limits_of(const Global& g) {
  CheckLimits l;
  l.seed = g.seed;
  return l;
}

// A local check, plain or up to u on every equation.
json run_check(const EquationSystem& sys, const std::optional<UpToFunction>& u, std::size_t b, std::size_t i,
               bool trace) {
  CheckOptions opts;
  opts.trace = trace;
  CheckResult r;
  std::size_t explored = 0;
  const Lattice* L = &sys.lattice();
  std::optional<UpToCheckResult> up;
  if (u) {
    std::vector<UpToFunction> us(sys.size(), *u);
    up = up_to_check(sys, us, b, i, opts);
    r = up->result;
    const auto& by = r.stats.exists_nodes_by_index;
    for (std::size_t j = sys.size(); j < by.size(); ++j) explored += by[j];
    L = &up->transformed.lattice();
  } else {
    r = check(sys, b, i, opts);
    explored = r.stats.exists_nodes;
  }
  json assumed = json::array();
  for (const auto& a : r.assumption_log) {
    json k = json::array();
    for (auto c : a.k.k) k.push_back(c);
    assumed.push_back({{"player", to_string(a.player)}, {"pos", format_position(*L, a.pos)}, {"k", k}});
  }
  json out = {{"position", format_position(sys.lattice(), Position::exists_at(b, i))},
              {"winner", to_string(r.winner)},
              {"holds", r.winner == Player::exists},
              {"explored", explored},
              {"assumptions", assumed},
              {"stats", stats_json(r.stats)}};
  if (trace) out["trace"] = r.trace;
  return out;
}

json solution_json(const EquationSystem& sys, const std::vector<Element>& sol) {
  json eqs = json::array();
  for (std::size_t i = 0; i < sys.size(); ++i)
    eqs.push_back({{"name", sys.equation(i).name},
                   {"sign", sys.sign(i) == Sign::mu ? "mu" : "nu"},
                   {"value", element_json(sys.lattice(), sol[i])}});
  return eqs;
}

json values_json(const std::vector<std::string>& labels, const lukas::Values& v) {
  return real_json(labels, RealVector{v});
}

json evaluation_json(const lukas::Evaluation& ev) {
  json eqs = json::array();
  for (std::size_t i = 0; i < ev.names.size(); ++i)
    eqs.push_back({{"name", ev.names[i]}, {"value", values_json(ev.labels, ev.values[i])}});
  return {{"target", ev.names[ev.target]}, {"value", values_json(ev.labels, ev.values[ev.target])}, {"equations", eqs}};
}

lukas::Evaluation evaluate(const Source& src, const Pndt* N, std::int64_t grid, const std::string& eps,
                           std::size_t max_iter) {
  try {
    if (grid > 0) return src.expr ? lukas::evaluate_grid(*src.expr, N, grid) : lukas::evaluate_grid(src.equations, N, grid);
    Rational tol = parse_tolerance(eps);
    return src.expr ? lukas::evaluate_epsilon(*src.expr, N, tol, max_iter)
                    : lukas::evaluate_epsilon(src.equations, N, tol, max_iter);
  } catch (const ParseError& e) {
    throw InputError(src.path + ":" + e.what());
  }
}

Report lukas_report(const std::string& command, const lukas::Evaluation& ev, std::int64_t grid, const std::string& eps) {
  Report rep;
  rep.body = evaluation_json(ev);
  rep.body["command"] = command;
  if (grid > 0) {
    rep.body["mode"] = "grid";
    rep.body["n"] = grid;
  } else {
    rep.body["mode"] = "epsilon";
    rep.body["tolerance"] = eps;
    rep.body["converged"] = ev.converged;
    rep.body["exact"] = ev.exact;
    rep.body["iterations"] = ev.iterations;
    json approx = json::object();
    const auto& v = ev.values[ev.target];
    for (std::size_t j = 0; j < v.size(); ++j) approx[ev.labels[j]] = v[j].convert_to<double>();
    rep.body["approx"] = approx;
    if (!ev.converged) rep.code = 1;
  }
  return rep;
}

void check_mode(std::int64_t grid, const std::string& eps) {
  if ((grid > 0) == !eps.empty()) throw InputError("choose one of --grid n and --epsilon tol");
}

nfa::StateSet parse_set(const Nfa& N, const std::string& spec) {
  nfa::StateSet X = 0;
  for (const auto& q : split(spec, ','))
    if (!q.empty()) X |= nfa::StateSet{1} << N.index(q);
  return X;
}

// Elements of a grid or powerset written as in the table file.
Element parse_element(const ChainProductLattice& L, const std::string& text, SourcePos pos) {
  if (L.style() == ChainProductLattice::Style::grid) {
    Expr e;
    try {
      e = parse_expr(text, pos);
    } catch (const ParseError&) {
      throw ParseError(pos, "expected a value, got '" + text + "'");
    }
    if (e.kind != Expr::Kind::number) throw ParseError(pos, "expected a value, got '" + text + "'");
    Rational r = e.number * L.height(0);
    if (r < 0 || r > L.height(0) || boost::multiprecision::denominator(r) != 1)
      throw ParseError(pos, text + " is not on the grid");
    Element out = L.bot();
    out.v[0] = static_cast<std::int64_t>(boost::multiprecision::numerator(r));
    return out;
  }
  std::vector<std::size_t> js;
  for (const auto& s : split(text, ',')) {
    if (s.empty()) continue;
    auto it = std::find(L.labels().begin(), L.labels().end(), s);
    if (it == L.labels().end()) throw ParseError(pos, "unknown element " + s);
    js.push_back(static_cast<std::size_t>(it - L.labels().begin()));
  }
  return L.from_members(js);
}

struct Table {
  ChainProductPtr lattice;
  std::unordered_map<Element, Element, ElementHash> map;
  Element c;
};

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// lattice: grid n | powerset a b c
// map: X -> Y   (one line per element)
// c: X          (default ⊤)
Table parse_table(const std::string& text) {
  Table t;
  std::optional<std::pair<std::string, SourcePos>> c;
  std::size_t line = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string raw = text.substr(start, end - start);
    start = end + 1;
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto colon = raw.find(':');
    if (trim(raw).empty()) continue;
    if (colon == std::string::npos) throw ParseError({line, 1}, "expected 'key: value'");
    std::string key = trim(raw.substr(0, colon));
    std::string rest = raw.substr(colon + 1);
    SourcePos at{line, colon + 2};
    if (key == "lattice") {
      std::istringstream is(rest);
      std::string kind;
      is >> kind;
      if (kind == "grid") {
        std::int64_t n = 0;
        if (!(is >> n) || n < 1) throw ParseError(at, "grid needs a positive resolution");
        t.lattice = make_grid(n);
      } else if (kind == "powerset") {
        std::vector<std::string> xs;
        for (std::string x; is >> x;) xs.push_back(x);
        t.lattice = make_powerset(xs);
      } else {
        throw ParseError(at, "unknown lattice '" + kind + "'");
      }
    } else if (key == "map") {
      if (!t.lattice) throw ParseError({line, 1}, "map before lattice");
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw ParseError(at, "expected X -> Y");
      Element x = parse_element(*t.lattice, trim(rest.substr(0, arrow)), at);
      Element y = parse_element(*t.lattice, trim(rest.substr(arrow + 2)), {line, colon + arrow + 4});
      if (!t.map.emplace(x, y).second) throw ParseError(at, "element mapped twice");
    } else if (key == "c") {
      c.emplace(trim(rest), at);
    } else {
      throw ParseError({line, 1}, "unknown key '" + key + "'");
    }
  }
  if (!t.lattice) throw ParseError({1, 1}, "missing lattice line");
  t.c = c ? parse_element(*t.lattice, c->first, c->second) : t.lattice->top();
  auto all = t.lattice->elements(1u << 16);
  for (const auto& e : *all)
    if (!t.map.count(e)) throw ParseError({line, 1}, "f* is not given on " + t.lattice->format(e));
  return t;
}

}  // namespace

Rational parse_tolerance(const std::string& text) {
  auto e = text.find_first_of("eE");
  std::string mant = text.substr(0, e);
  Rational r;
  try {
    Expr x = parse_expr(mant);
    if (x.kind != Expr::Kind::number) throw InputError("bad tolerance " + text);
    r = x.number;
  } catch (const ParseError&) {
    throw InputError("bad tolerance " + text);
  }
  if (e != std::string::npos) {
    int exp = 0;
    try {
      exp = std::stoi(text.substr(e + 1));
    } catch (const std::exception&) {
      throw InputError("bad tolerance " + text);
    }
    Rational ten = 10;
    for (int k = 0; k < std::abs(exp); ++k) r = exp > 0 ? Rational(r * ten) : Rational(r / ten);
  }
  if (r <= 0) throw InputError("tolerance must be positive");
  return r;
}

Report mc_check(const McArgs& a, const Global& g) {
  Loaded in;
  in.ts = load_ts(a.ts);
  std::string text = a.formula, origin = "formula";
  if (!text.empty() && text[0] == '@') {
    origin = text.substr(1);
    text = read_file(origin);
  }
  Expr phi;
  try {
    phi = parse_expr(text);
    auto tr = mucalc::to_system(phi, *in.ts);
    in.system = std::move(tr.system);
    in.target = tr.target;
  } catch (const ParseError& e) {
    throw InputError(origin + ":" + e.what());
  }
  in.lattice = std::dynamic_pointer_cast<const ChainProductLattice>(in.system.lattice_ptr());
  if (a.engine != "local" && a.engine != "global") throw InputError("unknown engine " + a.engine);
  if (a.engine == "global" && a.upto != "none") throw InputError("up-to techniques need the local engine");
  std::vector<std::size_t> states;
  for (const auto& s : a.states) states.push_back(in.ts->index(s));

  Report rep;
  rep.body = {{"command", "mc-check"}, {"formula", to_string(phi)}, {"engine", a.engine}, {"upto", a.upto}};
  json results = json::array();
  bool all = true;
  if (a.engine == "global") {
    auto sol = solve(in.system);
    rep.body["denotation"] = element_json(*in.lattice, sol[in.target]);
    for (std::size_t j = 0; j < states.size(); ++j) {
      bool holds = sol[in.target].v[states[j]] != 0;
      all = all && holds;
      results.push_back({{"state", a.states[j]}, {"holds", holds}});
    }
  } else {
    auto u = make_upto(a.upto, in);
    auto rs = run_queries<json>(states.size(), job_count(g.jobs), [&](std::size_t j) {
      json r = run_check(in.system, u, in.lattice->basis_index(states[j], 1), in.target, a.trace);
      r["state"] = a.states[j];
      return r;
    });
    for (auto& r : rs) {
      all = all && r["holds"].get<bool>();
      results.push_back(std::move(r));
    }
  }
  rep.body["results"] = results;
  rep.body["holds"] = all;
  rep.code = all ? 0 : 1;
  return rep;
}

Report pair_check(const PairArgs& a, bisim::Kind kind, const Global&) {
  Loaded in;
  in.ts = load_ts(a.ts);
  in.system = bisim::system(*in.ts, kind);
  in.lattice = std::dynamic_pointer_cast<const ChainProductLattice>(in.system.lattice_ptr());
  const std::size_t n = in.ts->size();
  std::size_t b = in.lattice->basis_index(in.ts->index(a.s1) * n + in.ts->index(a.s2), 1);
  auto u = make_upto(a.upto, in);
  Report rep;
  rep.body = run_check(in.system, u, b, 0, a.trace);
  rep.body["command"] = kind == bisim::Kind::similarity ? "sim-check" : "bisim-check";
  rep.body["pair"] = {a.s1, a.s2};
  rep.body["upto"] = a.upto;
  rep.code = rep.body["holds"].get<bool>() ? 0 : 1;
  return rep;
}

Report nfa_equiv(const NfaArgs& a, const Global&) {
  auto N = load<Nfa>(a.nfa, [](const std::string& t) { return parse_nfa(t); });
  if (a.upto != "none" && a.upto != "congruence") throw InputError("nfa-equiv takes --upto none|congruence");
  auto X = parse_set(N, a.q1), Y = parse_set(N, a.q2);
  auto r = nfa::set_equiv(N, X, Y, a.upto == "congruence");
  Report rep;
  rep.body = {{"command", "nfa-equiv"},
              {"left", N.format_set(X)},
              {"right", N.format_set(Y)},
              {"upto", a.upto},
              {"equivalent", r.equivalent},
              {"holds", r.equivalent},
              {"stats", {{"explored", r.explored}, {"visited", r.visited}, {"stops", r.stops}}}};
  if (r.counterexample)
    rep.body["counterexample"] = {N.format_set(r.counterexample->first), N.format_set(r.counterexample->second)};
  rep.code = r.equivalent ? 0 : 1;
  return rep;
}

Report lukas_eval(const LukasArgs& a, const Global&) {
  check_mode(a.grid, a.epsilon);
  auto src = load_source(a.input);
  std::unique_ptr<Pndt> N;
  if (!a.pndt.empty()) N = load_pndt(a.pndt);
  auto ev = evaluate(src, N.get(), a.grid, a.epsilon, a.max_iter);
  return lukas_report("lukas-eval", ev, a.grid, a.epsilon);
}

Report solve_system(const SystemArgs& a, const Global&) {
  auto src = load_source(a.input);
  if (a.fe.lukas) {
    check_mode(a.fe.grid, a.epsilon);
    if (!a.epsilon.empty()) {
      std::unique_ptr<Pndt> N;
      if (!a.fe.pndt.empty()) N = load_pndt(a.fe.pndt);
      return lukas_report("solve", evaluate(src, N.get(), 0, a.epsilon, a.max_iter), 0, a.epsilon);
    }
  }
  auto in = load_system(src, a.fe);
  auto sol = solve(in.system);
  Report rep;
  rep.body = {{"command", "solve"},
              {"lattice", in.system.lattice().name()},
              {"target", in.system.equation(in.target).name},
              {"equations", solution_json(in.system, sol)}};
  return rep;
}

Report check_system(const SystemArgs& a, const Global& g) {
  auto in = load_system(load_source(a.input), a.fe);
  std::size_t i = pick_index(in.system, a.index, in.target);
  auto u = make_upto(a.upto, in);
  std::vector<BasisSpec> queries;
  if (a.states.size() > 1) {
    for (const auto& s : a.states) queries.push_back(BasisSpec{s, "", "", -1});
  } else {
    BasisSpec spec = a.basis;
    if (a.states.size() == 1) spec.state = a.states[0];
    queries.push_back(spec);
  }
  std::vector<std::size_t> bs;
  for (const auto& q : queries) bs.push_back(pick_basis(in, q));
  auto rs = run_queries<json>(bs.size(), job_count(g.jobs),
                              [&](std::size_t j) { return run_check(in.system, u, bs[j], i, a.trace); });
  if (!a.trace_file.empty()) {
    std::ofstream os(a.trace_file);
    if (!os) throw InputError("cannot write " + a.trace_file);
    os << rs.front()["trace"].dump(2) << '\n';
  }
  Report rep;
  bool all = true;
  for (const auto& r : rs) all = all && r["holds"].get<bool>();
  if (rs.size() == 1) {
    rep.body = rs.front();
  } else {
    rep.body = {{"results", rs}, {"holds", all}};
  }
  rep.body["command"] = "check";
  rep.body["index"] = in.system.equation(i).name;
  rep.body["upto"] = a.upto;
  rep.code = all ? 0 : 1;
  return rep;
}

Report game_moves(const SystemArgs& a, const Global&) {
  auto in = load_system(load_source(a.input), a.fe);
  std::size_t i = pick_index(in.system, a.index, in.target);
  BasisSpec spec = a.basis;
  if (!a.states.empty()) spec.state = a.states.front();
  std::size_t b = pick_basis(in, spec);
  const auto& L = in.system.lattice();
  auto fmt = [&](const std::vector<Position>& ps) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(format_position(L, p));
    return out;
  };
  SelectionStats st;
  auto sel = selection(in.system, b, i, {}, &st);
  Report rep;
  rep.body = {{"command", "game moves"},
              {"position", format_position(L, Position::exists_at(b, i))},
              {"selection", fmt(sel)},
              {"evaluations", st.evaluations}};
  if (a.all_moves) rep.body["moves"] = fmt(exists_moves(in.system, b, i));
  return rep;
}

Report verify_upto(const SystemArgs& a, const Global& g) {
  auto in = load_system(load_source(a.input), a.fe);
  auto u = make_upto(a.upto, in);
  if (!u) throw InputError("verify-upto needs --upto");
  std::vector<UpToFunction> us(in.system.size(), *u);
  auto limits = limits_of(g);
  auto rep_c = check_compatibility(in.system, us, limits);
  Report rep;
  rep.body = {{"command", "verify-upto"},
              {"upto", u->name()},
              {"declared", flags_json(u->declared())},
              {"verified", flags_json(u->verified())},
              {"exhaustive", u->exhaustive()},
              {"compatibility", condition_json(rep_c)},
              {"compatible", rep_c.ok()}};
  if (rep_c.ok()) {
    auto sol = solve(in.system);
    auto tsys = transform_system(in.system, us, limits);
    auto tsol = solve(tsys);
    bool agree = true;
    for (std::size_t j = 0; j < sol.size(); ++j)
      agree = agree && tsol[j] == sol[j] && tsol[j + sol.size()] == sol[j];
    rep.body["solutions_agree"] = agree;
  }
  rep.code = rep_c.ok() ? 0 : 1;
  return rep;
}

Report verify_galois(const GaloisArgs& a, const Global& g) {
  auto src = load_source(a.input);
  auto limits = limits_of(g);
  Report rep;
  rep.body["command"] = "verify-galois";
  rep.body["connection"] = a.connection;
  auto abstract_source = [&] { return a.abstract_system.empty() ? src : load_source(a.abstract_system); };
  auto wrap = [&](const std::string& path, auto&& f) {
    try {
      return f();
    } catch (const ParseError& e) {
      throw InputError(path + ":" + e.what());
    }
  };

  if (a.connection.rfind("grid-alpha:", 0) == 0) {
    std::int64_t n = 0;
    try {
      n = std::stoll(a.connection.substr(11));
    } catch (const std::exception&) {
      throw InputError("grid-alpha needs a resolution");
    }
    if (n < 1) throw InputError("grid-alpha needs a positive resolution");
    std::unique_ptr<Pndt> N;
    if (!a.pndt.empty()) N = load_pndt(a.pndt);
    std::size_t target = 0;
    RealSystem ec = wrap(src.path, [&] {
      if (src.expr) return lukas::real_system(*src.expr, N.get(), &target);
      target = src.equations.size() - 1;
      return lukas::real_system_from_dsl(src.equations, N.get());
    });
    auto asrc = abstract_source();
    EquationSystem ea = wrap(asrc.path, [&] {
      return asrc.expr ? lukas::grid_system(*asrc.expr, N.get(), n) : lukas::grid_system_from_dsl(asrc.equations, N.get(), n);
    });
    auto labels = lukas::labels(N.get());
    std::vector<RealGaloisConnection> gcs(ec.size(), grid_alpha(n, labels));
    AbstractedSystem<RealVector, Element> abs(ec, ea, gcs);
    auto tol = parse_tolerance(a.epsilon);
    auto conc = solve_epsilon(ec, tol, a.max_iter);
    auto sr = verify_solution_relation(abs, conc.values, limits);
    rep.body["concrete_tolerance"] = a.epsilon;
    rep.body["concrete_exact"] = conc.exact;
    rep.body["connection_report"] = connection_json(gcs[0].name, gcs[0].insertion, verify_connection(gcs[0], limits));
    json c = json::array(), ab = json::array(), ac = json::array();
    for (std::size_t i = 0; i < ec.size(); ++i) {
      c.push_back(real_json(labels, sr.concrete[i]));
      ab.push_back(element_json(ea.lattice(), sr.abstract[i]));
      ac.push_back(element_json(ea.lattice(), sr.alpha_concrete[i]));
    }
    rep.body["concrete"] = c;
    rep.body["abstract"] = ab;
    rep.body["alpha_concrete"] = ac;
    rep.body["sound_bound"] = element_json(ea.lattice(), sr.abstract[target]);
    rep.body["target"] = ec.equation(target).name;
    rep.body["soundness"] = {{"holds", sr.soundness.holds()},
                             {"alpha_form", condition_json(sr.soundness.alpha_form)},
                             {"gamma_form", condition_json(sr.soundness.gamma_form)}};
    rep.body["abstraction_complete"] = condition_json(sr.abstraction_completeness);
    rep.body["concretisation_complete"] = condition_json(sr.concretisation_completeness);
    rep.body["sound_inequality"] = sr.sound_inequality;
    rep.body["abstraction_inequality"] = sr.abstraction_inequality;
    rep.body["concretisation_inequality"] = sr.concretisation_inequality;
    rep.code = sr.soundness.holds() && sr.sound_inequality ? 0 : 1;
    return rep;
  }

  if (a.connection.rfind("sim:", 0) == 0) {
    if (a.ts.empty() || a.abstract_ts.empty()) throw InputError("sim connections need --ts and --abstract-ts");
    auto T = load_ts(a.ts);
    auto A = load_ts(a.abstract_ts);
    std::string rel = a.connection.substr(4);
    auto R = load<Relation>(rel, [&](const std::string& t) { return parse_relation(t, T->states, A->states); });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < R.size(); ++s)
      for (std::size_t t = 0; t < R[s].size(); ++t)
        if (R[s][t]) pairs.emplace_back(s, t);
    std::size_t target = 0;
    EquationSystem ec = wrap(src.path, [&] {
      if (!src.expr) {
        target = src.equations.size() - 1;
        return mucalc::system_from_dsl(src.equations, *T);
      }
      auto tr = mucalc::to_system(*src.expr, *T);
      target = tr.target;
      return std::move(tr.system);
    });
    auto asrc = abstract_source();
    EquationSystem ea = wrap(asrc.path, [&] {
      return asrc.expr ? mucalc::to_system(*asrc.expr, *A).system : mucalc::system_from_dsl(asrc.equations, *A);
    });
    auto LC = std::dynamic_pointer_cast<const ChainProductLattice>(ec.lattice_ptr());
    auto LA = std::dynamic_pointer_cast<const ChainProductLattice>(ea.lattice_ptr());
    std::vector<GaloisConnection> gcs(ec.size(), simulation_connection(LC, LA, pairs));
    AbstractedSystem<Element, Element> abs(ec, ea, gcs);
    auto sr = verify_solution_relation(abs, std::optional<std::vector<Element>>{}, limits);
    rep.body["connection_report"] = connection_json(gcs[0].name, gcs[0].insertion, verify_connection(gcs[0], limits));
    rep.body["concrete"] = solution_json(ec, sr.concrete);
    rep.body["abstract"] = solution_json(ea, sr.abstract);
    json ac = json::array();
    for (const auto& e : sr.alpha_concrete) ac.push_back(element_json(*LA, e));
    rep.body["alpha_concrete"] = ac;
    rep.body["sound_bound"] = element_json(*LA, sr.abstract[target]);
    rep.body["target"] = ec.equation(target).name;
    rep.body["soundness"] = {{"holds", sr.soundness.holds()},
                             {"alpha_form", condition_json(sr.soundness.alpha_form)},
                             {"gamma_form", condition_json(sr.soundness.gamma_form)}};
    rep.body["abstraction_complete"] = condition_json(sr.abstraction_completeness);
    rep.body["concretisation_complete"] = condition_json(sr.concretisation_completeness);
    rep.body["sound_inequality"] = sr.sound_inequality;
    rep.body["abstraction_inequality"] = sr.abstraction_inequality;
    rep.body["concretisation_inequality"] = sr.concretisation_inequality;
    rep.code = sr.soundness.holds() && sr.sound_inequality ? 0 : 1;
    return rep;
  }
  throw InputError("unknown connection " + a.connection + " (grid-alpha:n or sim:FILE)");
}

Report adjoint_check(const AdjointArgs& a, const Global& g) {
  auto t = load<Table>(a.table, [](const std::string& s) { return parse_table(s); });
  LatticePtr L = t.lattice;
  auto map = std::make_shared<std::unordered_map<Element, Element, ElementHash>>(t.map);
  UnaryMap fstar = [map](const Element& x) { return map->at(x); };
  auto limits = limits_of(g);
  Report rep;
  rep.body = {{"command", "adjoint-check"}, {"lattice", L->name()}, {"c", element_json(*L, t.c)}};
  MeetPreservingEquation eq;
  try {
    eq = make_meet_preserving(L, fstar, t.c, "x", limits);
  } catch (const NotMeetPreserving& e) {
    rep.body["meet_preserving"] = false;
    rep.body["error"] = e.what();
    rep.body["witness"] = e.witness();
    rep.code = 1;
    return rep;
  }
  rep.body["meet_preserving"] = true;
  json lower = json::array();
  auto all = L->elements(1u << 16);
  for (const auto& x : *all)
    lower.push_back({{"b", L->format(x)}, {"f_lower", L->format(eq.f_lower(x))}});
  rep.body["left_adjoint"] = lower;
  auto adj = verify_adjunction(eq, limits);
  rep.body["adjunction"] = {{"holds", adj.holds}, {"pairs_checked", adj.pairs_checked}};
  if (adj.witness) rep.body["adjunction"]["witness"] = {adj.witness->first, adj.witness->second};
  rep.code = adj.holds ? 0 : 1;
  if (a.from.empty()) return rep;

  Element b = parse_element(*t.lattice, a.from, {1, 1});
  auto fmt_chain = [&](const std::vector<Element>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(L->format(x));
    return out;
  };
  auto full = with_full_basis(L);
  auto eq1 = make_meet_preserving(full, fstar, t.c, "x", limits);
  auto r1 = case1_check(eq1, b, nullptr, limits);
  const auto& basis = L->basis();
  bool in_basis = std::find(basis.begin(), basis.end(), b) != basis.end();
  auto r2 = case2_check(in_basis ? eq : eq1, b, nullptr, limits);
  rep.body["from"] = L->format(b);
  rep.body["case1"] = {{"winner", to_string(r1.winner)}, {"chain", fmt_chain(r1.chain)}};
  rep.body["case2"] = {{"winner", to_string(r2.winner)},
                       {"explored", fmt_chain(r2.explored)},
                       {"visited", r2.visited},
                       {"stops", r2.stops}};
  rep.body["holds"] = r1.winner == Player::exists;
  rep.body["agree"] = r1.winner == r2.winner;
  rep.code = r1.winner == Player::exists && r1.winner == r2.winner ? 0 : 1;
  return rep;
}

}  // namespace fixgame::cli
