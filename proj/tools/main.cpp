#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace fixgame;
using namespace fixgame::cli;

namespace {

void frontend_options(CLI::App* app, SystemArgs& a, bool epsilon) {
  app->add_option("input", a.input, "equation file or single fixpoint expression")->required();
  app->add_option("--ts", a.fe.ts, "transition system; state-set semantics");
  app->add_flag("--relations", a.fe.relations, "relation semantics over the transition system");
  app->add_flag("--lukas", a.fe.lukas, "Lukasiewicz semantics");
  app->add_option("--pndt", a.fe.pndt, "probabilistic system for Lukasiewicz modalities");
  app->add_option("--grid", a.fe.grid, "grid resolution for Lukasiewicz semantics");
  if (epsilon) {
    app->add_option("--epsilon", a.epsilon, "tolerance for approximate real iteration");
    app->add_option("--max-iter", a.max_iter, "iteration bound per loop");
  }
}

void position_options(CLI::App* app, SystemArgs& a) {
  app->add_option("--state", a.states, "state, for state sets (repeatable on check)");
  app->add_option("--pair", a.basis.pair, "s,t for relations");
  app->add_option("--level", a.basis.level, "label=k for grids (k a level or a value)");
  app->add_option("--basis", a.basis.basis, "raw basis index");
  app->add_option("--index", a.index, "equation name or 1-based index (default: target)");
}

int emit(const Report& r, const Global& g) {
  std::cout << (g.compact ? r.body.dump() : r.body.dump(2)) << '\n';
  return r.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve fixpoint equation systems and check properties through fixpoint games."};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--jobs,-j", g.jobs, "worker threads for independent queries (default FIXGAME_JOBS or 1)");
  app.add_option("--seed", g.seed, "seed for sampled validations");
  app.add_flag("--compact", g.compact, "single-line JSON");

  std::function<Report()> run;

  McArgs mc;
  auto* c_mc = app.add_subcommand("mc-check", "mu-calculus model checking on a transition system");
  c_mc->add_option("ts", mc.ts)->required();
  c_mc->add_option("formula", mc.formula, "formula text, or @FILE")->required();
  c_mc->add_option("states", mc.states)->required();
  c_mc->add_option("--engine", mc.engine, "local or global");
  c_mc->add_option("--upto", mc.upto, "none, sim, bisim or file:RELATION");
  c_mc->add_flag("--trace", mc.trace);
  c_mc->callback([&] { run = [&] { return mc_check(mc, g); }; });

  PairArgs bis, sim;
  for (auto [name, args, kind] : {std::tuple{"bisim-check", &bis, bisim::Kind::bisimilarity},
                                  std::tuple{"sim-check", &sim, bisim::Kind::similarity}}) {
    auto* c = app.add_subcommand(name, kind == bisim::Kind::similarity ? "is s2 similar to s1" : "are s1, s2 bisimilar");
    c->add_option("ts", args->ts)->required();
    c->add_option("s1", args->s1)->required();
    c->add_option("s2", args->s2)->required();
    c->add_option("--upto", args->upto, "none, tr, sim, bisim or file:RELATION");
    c->add_flag("--trace", args->trace);
    c->callback([&, args = args, kind = kind] { run = [&, args, kind] { return pair_check(*args, kind, g); }; });
  }

  NfaArgs nfa;
  auto* c_nfa = app.add_subcommand("nfa-equiv", "language equivalence of NFA states or state sets");
  c_nfa->add_option("nfa", nfa.nfa)->required();
  c_nfa->add_option("q1", nfa.q1, "state or comma-separated set")->required();
  c_nfa->add_option("q2", nfa.q2)->required();
  c_nfa->add_option("--upto", nfa.upto, "none or congruence");
  c_nfa->callback([&] { run = [&] { return nfa_equiv(nfa, g); }; });

  LukasArgs lk;
  auto* c_lk = app.add_subcommand("lukas-eval", "evaluate a Lukasiewicz term");
  c_lk->add_option("term", lk.input)->required();
  c_lk->add_option("--pndt", lk.pndt);
  c_lk->add_option("--grid", lk.grid, "evaluate on the grid with n steps");
  c_lk->add_option("--epsilon", lk.epsilon, "iterate over the reals up to this tolerance");
  c_lk->add_option("--max-iter", lk.max_iter);
  c_lk->callback([&] { run = [&] { return lukas_eval(lk, g); }; });

  SystemArgs so;
  auto* c_so = app.add_subcommand("solve", "solve an equation system");
  frontend_options(c_so, so, true);
  c_so->callback([&] { run = [&] { return solve_system(so, g); }; });

  SystemArgs ck;
  auto* c_ck = app.add_subcommand("check", "local check of a basis element against one equation");
  frontend_options(c_ck, ck, false);
  position_options(c_ck, ck);
  c_ck->add_option("--upto", ck.upto, "none, tr, sim, bisim or file:RELATION");
  c_ck->add_flag("--trace", ck.trace, "include the exploration trace");
  c_ck->add_option("--trace-file", ck.trace_file, "also write the trace to FILE");
  c_ck->callback([&] {
    if (!ck.trace_file.empty()) ck.trace = true;
    run = [&] { return check_system(ck, g); };
  });

  SystemArgs gm;
  auto* c_game = app.add_subcommand("game", "inspect the fixpoint game");
  c_game->require_subcommand(1);
  auto* c_moves = c_game->add_subcommand("moves", "existential moves at a position");
  frontend_options(c_moves, gm, false);
  position_options(c_moves, gm);
  c_moves->add_flag("--all", gm.all_moves, "also list every move, not only the selection");
  c_moves->callback([&] { run = [&] { return game_moves(gm, g); }; });

  SystemArgs vu;
  auto* c_vu = app.add_subcommand("verify-upto", "compatibility of an up-to function with a system");
  frontend_options(c_vu, vu, false);
  c_vu->add_option("--upto", vu.upto, "tr, sim, bisim or file:RELATION")->required();
  c_vu->callback([&] { run = [&] { return verify_upto(vu, g); }; });

  GaloisArgs ga;
  auto* c_ga = app.add_subcommand("verify-galois", "soundness of an abstraction");
  c_ga->add_option("input", ga.input)->required();
  c_ga->add_option("--connection", ga.connection, "grid-alpha:n or sim:RELATION-FILE")->required();
  c_ga->add_option("--ts", ga.ts, "concrete transition system");
  c_ga->add_option("--abstract-ts", ga.abstract_ts);
  c_ga->add_option("--pndt", ga.pndt);
  c_ga->add_option("--abstract-system", ga.abstract_system, "abstract equations (default: same text)");
  c_ga->add_option("--epsilon", ga.epsilon, "tolerance for the concrete real solution");
  c_ga->add_option("--max-iter", ga.max_iter);
  c_ga->callback([&] { run = [&] { return verify_galois(ga, g); }; });

  AdjointArgs ad;
  auto* c_ad = app.add_subcommand("adjoint-check", "left adjoint and chain checks for a tabulated f*");
  c_ad->add_option("table", ad.table)->required();
  c_ad->add_option("--from", ad.from, "element to test against the greatest fixpoint");
  c_ad->callback([&] { run = [&] { return adjoint_check(ad, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return emit(run(), g);
  } catch (const Incompatible& e) {
    std::cerr << "fixgame: " << e.what() << '\n';
    if (e.report().witness) std::cerr << "  " << e.report().witness->describe() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "fixgame: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fixgame: " << e.what() << '\n';
    return 2;
  }
}
